#include "limitops/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "limitops/errors.hpp"
#include "limitops/parallel.hpp"

namespace limitops
{

namespace
{

const std::vector<std::string> kTopKeys = {"task",   "space", "operator", "projection", "sequences",
                                           "params", "seed",  "threads",  "output"};

// Parameters accepted per task, with defaults.
Json taskDefaults(const std::string &task)
{
  const Json limits = {{"radii", {4, 8, 16}}, {"tol", 0.02}};
  const Json schedule = {25, 50, 100, 200};
  if (task == "geometry")
  {
    return {{"rMax", 8}, {"probeRadius", 0}};
  }
  if (task == "covering")
  {
    return {{"r", 1}, {"scopeRadius", 20}};
  }
  if (task == "partition")
  {
    return {{"t", 0.5}, {"p", 2}, {"scopeRadius", nullptr}};
  }
  if (task == "bdo-diagnostic")
  {
    return {{"tGrid", {0.1, 0.05, 0.025}}, {"p", 2}, {"scopeRadius", 50}};
  }
  if (task == "limits" || task == "compactness")
  {
    return limits;
  }
  if (task == "fredholm")
  {
    Json j = limits;
    j["windowSchedule"] = schedule;
    j["tau"] = 0.05;
    j["p"] = 2;
    return j;
  }
  if (task == "essential-spectrum")
  {
    Json j = limits;
    j["windowSchedule"] = schedule;
    j["tau"] = 0.05;
    j["pitch"] = 0.02;
    j["halfWidth"] = 0;
    j["thetaGrid"] = 2048;
    j["method"] = "auto";
    return j;
  }
  if (task == "ess-norm")
  {
    Json j = limits;
    j["windowSchedule"] = schedule;
    return j;
  }
  throw InputError("unknown task '" + task + "'");
}

bool needsOperator(const std::string &task)
{
  return task == "bdo-diagnostic" || task == "limits" || task == "compactness" ||
         task == "fredholm" || task == "essential-spectrum" || task == "ess-norm";
}

bool needsSequences(const std::string &task)
{
  return task == "limits" || task == "compactness" || task == "fredholm" ||
         task == "essential-spectrum" || task == "ess-norm";
}

std::vector<double> doubles(const Json &j, const std::string &key)
{
  if (!j.at(key).is_array())
  {
    throw InputError("params." + key + " must be a list of numbers");
  }
  std::vector<double> v;
  for (const auto &e : j.at(key))
  {
    if (!e.is_number())
    {
      throw InputError("params." + key + " must be a list of numbers");
    }
    v.push_back(e.get<double>());
  }
  return v;
}

double num(const Json &j, const std::string &key)
{
  if (!j.at(key).is_number())
  {
    throw InputError("params." + key + " must be a number");
  }
  return j.at(key).get<double>();
}

LimitOptions limitOptions(const Json &params)
{
  LimitOptions o;
  o.radii = doubles(params, "radii");
  o.tol = num(params, "tol");
  if (o.radii.empty())
  {
    throw InputError("params.radii must be nonempty");
  }
  return o;
}

std::string fmt(double x)
{
  if (!std::isfinite(x))
  {
    return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string pointCsv(const Point &p)
{
  std::string s;
  for (int i = 0; i < p.size(); i++)
  {
    s += (i ? " " : "") + std::to_string(p[i]);
  }
  return s;
}

struct TaskResult
{
  Json result;
  std::string csv;
  bool divergentOnly = false;
  bool usesSequences = false;
};

TaskResult runGeometry(const Space &space, const Json &params)
{
  const Window probe(space, space.basepoint().size() ? space.basepoint() : Point::zeros(space.coords()),
                     num(params, "probeRadius"));
  const auto prof = geometryProfile(space, num(params, "rMax"), probe);
  TaskResult t;
  t.result = {{"space", toJson(space)}, {"profile", toJson(prof)}};
  t.csv = "r,maxBallSize\n";
  for (const auto &e : prof)
  {
    t.csv += std::to_string(e.r) + "," + std::to_string(e.maxBallSize) + "\n";
  }
  return t;
}

TaskResult runCovering(const Space &space, const Json &params)
{
  const Window scope(space, space.basepoint().size() ? space.basepoint() : Point::zeros(space.coords()),
                     num(params, "scopeRadius"));
  const auto cov = buildCovering(space, scope, num(params, "r"));
  const auto rep = checkCovering(space, cov);
  TaskResult t;
  t.result = toJson(cov, rep);
  t.csv = "cell,point\n";
  for (std::size_t j = 0; j < cov.cells.size(); j++)
  {
    for (const auto &x : cov.cells[j])
    {
      t.csv += std::to_string(j) + "," + pointCsv(x) + "\n";
    }
  }
  return t;
}

TaskResult runPartition(const Space &space, Json &params)
{
  const double tt = num(params, "t");
  const double p = num(params, "p");
  const Point center = Point::zeros(space.coords());
  // The support diameter only depends on t and the space, so probe it on a unit scope.
  const double rt = buildPartition(space, tt, p, Ball{center, 1}).supportDiameter();
  if (params.at("scopeRadius").is_null())
  {
    params["scopeRadius"] = 4 * rt;
  }
  const double radius = num(params, "scopeRadius");
  const auto part = buildPartition(space, tt, p, Ball{center, radius});
  const Window scope(space, center, radius);
  double sumError = 0;
  double maxRho = 0;
  double maxPhi = 0;
  std::size_t pairs = 0;
  for (const auto &x : scope.points())
  {
    double s = 0;
    for (const auto &term : part.termsAt(x))
    {
      s += term.rho;
    }
    sumError = std::max(sumError, std::abs(s - 1));
    if (space.dist(center, x) > radius - part.margin())
    {
      continue;
    }
    for (const auto &y : space.closedBall(x, 1 / tt))
    {
      maxRho = std::max(maxRho, rhoVariation(part, x, y));
      maxPhi = std::max(maxPhi, phiVariation(part, x, y));
      pairs++;
    }
  }
  TaskResult t;
  t.result = partitionToJson(part, scope);
  t.result["report"] = {{"maxSumError", toJson(sumError)},
                        {"maxRhoVariation", toJson(maxRho)},
                        {"maxPhiVariation", toJson(maxPhi)},
                        {"pairsChecked", pairs},
                        {"variationBelowT", maxRho < tt && maxPhi < tt}};
  t.csv = "j,point,rho\n";
  for (const auto &k : part.indicesMeeting(scope.ball()))
  {
    for (const auto &x : part.supportWithin(k, scope))
    {
      t.csv += pointCsv(k) + "," + pointCsv(x) + "," + fmt(part.rho(k, x)) + "\n";
    }
  }
  return t;
}

TaskResult runBdo(const OperatorExpr &a, const Json &params)
{
  const Space &s = a.space();
  const Window scope(s, Point::zeros(s.coords()), num(params, "scopeRadius"));
  const auto d = bdoDiagnostic(a, doubles(params, "tGrid"), scope, num(params, "p"));
  TaskResult t;
  t.result = toJson(d);
  t.csv = "t,lower,upper,ratio\n";
  for (std::size_t i = 0; i < d.t.size(); i++)
  {
    t.csv += fmt(d.t[i]) + "," + fmt(d.values[i].lower) + "," + fmt(d.values[i].upper) + "," +
             fmt(d.ratios[i]) + "\n";
  }
  return t;
}

TaskResult runLimits(const OperatorExpr &a, const std::vector<LimitSequence> &seqs,
                     const Json &params)
{
  const auto o = limitOptions(params);
  std::vector<LimitResult> res(seqs.size());
  parallelFor(seqs.size(), [&](std::size_t i) { res[i] = limitOperator(a, seqs[i], o.radii, o.tol); });
  TaskResult t;
  t.usesSequences = true;
  t.divergentOnly = true;
  Json entries = Json::array();
  t.csv = "label,index,exact,validRadius,radius,measuredGap,recordedGap\n";
  for (const auto &r : res)
  {
    if (const auto *d = std::get_if<DivergenceReport>(&r))
    {
      entries.push_back({{"label", d->label}, {"divergence", toJson(*d)}});
      t.csv += d->label + ",divergent,,,," + fmt(d->gap) + ",\n";
      continue;
    }
    t.divergentOnly = false;
    const auto &l = std::get<LimitOperator>(r);
    entries.push_back(toJson(l));
    for (const auto &c : l.certificate)
    {
      t.csv += l.label + "," + std::to_string(c.index) + "," + (l.exact ? "true" : "false") + "," +
               fmt(l.validRadius) + "," + fmt(c.radius) + "," + fmt(c.measuredGap) + "," +
               fmt(c.recordedGap) + "\n";
    }
  }
  t.result = {{"limits", entries}, {"caveat", kFamilyCaveat}};
  return t;
}

TaskResult runCompactness(const OperatorExpr &a, const std::vector<LimitSequence> &seqs,
                          const Json &params)
{
  const auto rep = compactnessTest(a, seqs, limitOptions(params));
  TaskResult t;
  t.usesSequences = true;
  t.divergentOnly = rep.verdict == "divergent";
  t.result = toJson(rep);
  t.csv = "label,radius,gap\n";
  const auto radii = doubles(params, "radii");
  for (const auto &e : rep.entries)
  {
    for (std::size_t i = 0; i < e.gaps.size(); i++)
    {
      t.csv += e.label + "," + fmt(radii[i]) + "," + fmt(e.gaps[i]) + "\n";
    }
  }
  return t;
}

TaskResult runFredholm(const OperatorExpr &a, const SubspaceProjection &proj,
                       const std::vector<LimitSequence> &seqs, const Json &params)
{
  FredholmOptions o;
  o.limits = limitOptions(params);
  o.windowSchedule = doubles(params, "windowSchedule");
  o.tau = num(params, "tau");
  o.p = num(params, "p");
  const auto rep = fredholmTest(a, proj, seqs, o);
  TaskResult t;
  t.usesSequences = true;
  t.divergentOnly = rep.verdict == "divergent";
  t.result = toJson(rep);
  t.csv = "label,verdict,nuUpper,nuStarUpper,margin\n";
  for (const auto &e : rep.entries)
  {
    if (e.divergent || !e.note.empty())
    {
      t.csv += e.label + "," + (e.divergent ? "divergent" : "inconclusive") + ",,,\n";
      continue;
    }
    t.csv += e.label + "," + toString(e.estimate.verdict) + "," + fmt(e.estimate.nuUpper) + "," +
             fmt(e.estimate.nuStarUpper) + "," + fmt(e.estimate.margin) + "\n";
  }
  return t;
}

TaskResult runSpectrum(const OperatorExpr &a, const SubspaceProjection &proj,
                       const std::vector<LimitSequence> &seqs, const Json &params)
{
  SpectrumOptions o;
  o.limits = limitOptions(params);
  o.windowSchedule = doubles(params, "windowSchedule");
  o.tau = num(params, "tau");
  o.pitch = num(params, "pitch");
  o.halfWidth = num(params, "halfWidth");
  o.thetaGrid = static_cast<int>(num(params, "thetaGrid"));
  if (!params.at("method").is_string())
  {
    throw InputError("params.method must be a string");
  }
  o.method = spectrumMethodFromString(params.at("method").get<std::string>());
  const auto rep = essentialSpectrumEstimate(a, proj, seqs, o);
  TaskResult t;
  t.usesSequences = true;
  t.divergentOnly = std::all_of(rep.entries.begin(), rep.entries.end(),
                                [](const LimitSpectrumEntry &e) { return e.divergent; });
  t.result = toJson(rep);
  t.csv = "re,im,indicator,source\n";
  for (const auto &p : rep.cloud.points)
  {
    t.csv += fmt(p.z.real()) + "," + fmt(p.z.imag()) + "," + fmt(p.indicator) + "," + p.source + "\n";
  }
  return t;
}

TaskResult runEssNorm(const OperatorExpr &a, const SubspaceProjection &proj,
                      const std::vector<LimitSequence> &seqs, const Json &params)
{
  const auto rep = essNormEstimate(a, proj, seqs, doubles(params, "windowSchedule"), limitOptions(params));
  TaskResult t;
  t.usesSequences = true;
  t.divergentOnly = std::all_of(rep.entries.begin(), rep.entries.end(),
                                [](const EssNormEntry &e) { return e.divergent; });
  t.result = toJson(rep);
  t.csv = "label,lower,upper\n";
  for (const auto &e : rep.entries)
  {
    t.csv += e.label + "," + (e.divergent ? "divergent," : fmt(e.lower) + "," + fmt(e.upper)) + "\n";
  }
  return t;
}

}  // namespace

RunOutcome run(const std::string &task, const Json &config, const CliOverrides &overrides)
{
  const auto start = std::chrono::steady_clock::now();
  requireKeys(config, kTopKeys, "config");
  if (config.contains("task") && config.at("task") != task)
  {
    throw InputError("config task '" + config.at("task").dump() + "' does not match '" + task + "'");
  }
  Json params = taskDefaults(task);
  if (config.contains("params"))
  {
    std::vector<std::string> allowed;
    for (const auto &[k, v] : params.items())
    {
      allowed.push_back(k);
    }
    requireKeys(config.at("params"), allowed, "params (task " + task + ")");
    for (const auto &[k, v] : config.at("params").items())
    {
      params[k] = v;
    }
  }
  RunOutcome out;
  std::uint64_t seed = 0;
  if (config.contains("seed"))
  {
    const Json &js = config.at("seed");
    if (!js.is_number_integer() || (!js.is_number_unsigned() && js.get<std::int64_t>() < 0))
    {
      throw InputError("seed must be a nonnegative integer");
    }
    seed = config.at("seed").get<std::uint64_t>();
  }
  seed = overrides.seed.value_or(seed);
  int threads = 1;
  if (config.contains("threads"))
  {
    if (!config.at("threads").is_number_integer())
    {
      throw InputError("threads must be an integer");
    }
    threads = config.at("threads").get<int>();
  }
  threads = overrides.threads.value_or(threads);
  out.format = "json";
  if (config.contains("output"))
  {
    const Json &o = config.at("output");
    requireKeys(o, {"dir", "format"}, "output");
    if (o.contains("dir"))
    {
      out.outDir = o.at("dir").get<std::string>();
    }
    if (o.contains("format"))
    {
      out.format = o.at("format").get<std::string>();
    }
  }
  out.format = overrides.format.value_or(out.format);
  out.outDir = overrides.outDir.value_or(out.outDir);
  if (out.format != "json" && out.format != "csv")
  {
    throw InputError("format must be 'json' or 'csv'");
  }
  setThreadCount(threads);

  ParseContext ctx;
  if (!config.contains("space"))
  {
    throw InputError("config needs a 'space'");
  }
  ctx.space = spaceFromJson(config.at("space"));
  ctx.seed = seed;
  const Predicate y = config.contains("projection") ? predicateFromJson(config.at("projection"))
                                                     : Predicate::all();
  ctx.projection = makeProjection(ctx.space, y);

  Json resolved;
  resolved["task"] = task;
  resolved["space"] = toJson(ctx.space);
  std::optional<OperatorExpr> op;
  if (needsOperator(task))
  {
    if (!config.contains("operator"))
    {
      throw InputError("task " + task + " needs an 'operator'");
    }
    op = operatorFromJson(config.at("operator"), ctx);
    resolved["operator"] = toJson(*op);
    resolved["projection"] = toJson(y);
  }
  else if (config.contains("operator") || config.contains("projection"))
  {
    throw InputError("task " + task + " takes no operator or projection");
  }
  std::vector<LimitSequence> seqs;
  if (needsSequences(task))
  {
    if (!config.contains("sequences"))
    {
      throw InputError("task " + task + " needs 'sequences'");
    }
    seqs = sequencesFromJson(config.at("sequences"));
    Json sj = Json::array();
    for (const auto &s : seqs)
    {
      sj.push_back(toJson(s));
    }
    resolved["sequences"] = sj;
  }
  else if (config.contains("sequences"))
  {
    throw InputError("task " + task + " takes no sequences");
  }

  TaskResult tr;
  if (task == "geometry")
  {
    tr = runGeometry(ctx.space, params);
  }
  else if (task == "covering")
  {
    tr = runCovering(ctx.space, params);
  }
  else if (task == "partition")
  {
    tr = runPartition(ctx.space, params);
  }
  else if (task == "bdo-diagnostic")
  {
    tr = runBdo(*op, params);
  }
  else if (task == "limits")
  {
    tr = runLimits(*op, seqs, params);
  }
  else if (task == "compactness")
  {
    tr = runCompactness(*op, seqs, params);
  }
  else if (task == "fredholm")
  {
    tr = runFredholm(*op, *ctx.projection, seqs, params);
  }
  else if (task == "essential-spectrum")
  {
    tr = runSpectrum(*op, *ctx.projection, seqs, params);
  }
  else
  {
    tr = runEssNorm(*op, *ctx.projection, seqs, params);
  }
  resolved["params"] = params;
  resolved["seed"] = seed;
  resolved["format"] = out.format;

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.exitCode = tr.divergentOnly ? 2 : 0;
  out.document["schemaVersion"] = kSchemaVersion;
  out.document["task"] = task;
  out.document["config"] = resolved;
  out.document["result"] = tr.result;
  if (tr.usesSequences)
  {
    out.document["caveat"] = kFamilyCaveat;
  }
  out.document["exitCode"] = out.exitCode;
  out.document["runtime"] = {{"threads", threads}, {"wallSeconds", wall}};
  if (out.format == "csv")
  {
    out.csv = "# schemaVersion " + std::to_string(kSchemaVersion) + "\n# config " + resolved.dump() +
              "\n" + (tr.usesSequences ? "# caveat " + kFamilyCaveat + "\n" : "") + tr.csv;
  }
  return out;
}

Json configSchema()
{
  static const char *kSchema = R"JSON({
  "$schema": "https://json-schema.org/draft/2020-12/schema",
  "title": "limitops job",
  "type": "object",
  "additionalProperties": false,
  "required": ["space"],
  "properties": {
    "task": {"enum": ["geometry", "covering", "partition", "bdo-diagnostic", "limits",
                      "compactness", "fredholm", "essential-spectrum", "ess-norm"]},
    "space": {"$ref": "#/$defs/space"},
    "operator": {"$ref": "#/$defs/operator"},
    "projection": {"$ref": "#/$defs/predicate"},
    "sequences": {"type": "array", "items": {"$ref": "#/$defs/sequence"}},
    "params": {"$ref": "#/$defs/params"},
    "seed": {"type": "integer", "minimum": 0},
    "threads": {"type": "integer", "minimum": 1},
    "output": {
      "type": "object", "additionalProperties": false,
      "properties": {"dir": {"type": "string"}, "format": {"enum": ["json", "csv"]}}
    }
  },
  "$defs": {
    "point": {"oneOf": [{"type": "integer"},
                        {"type": "array", "items": {"type": "integer"}, "minItems": 1, "maxItems": 4}]},
    "complex": {"oneOf": [{"type": "number"},
                          {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}]},
    "numbers": {"type": "array", "items": {"type": "number"}},
    "space": {
      "type": "object", "additionalProperties": false,
      "properties": {
        "kind": {"enum": ["lattice", "graph"]},
        "dim": {"type": "integer", "minimum": 1, "maximum": 3},
        "metric": {"enum": ["l1", "linf"]},
        "fiber": {"type": "integer", "minimum": 1},
        "adjacency": {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
        "basepoint": {"$ref": "#/$defs/point"}
      }
    },
    "field": {"oneOf": [
      {"$ref": "#/$defs/complex"},
      {"type": "object", "additionalProperties": false, "required": ["kind", "value"],
       "properties": {"kind": {"const": "constant"}, "value": {"$ref": "#/$defs/complex"}}},
      {"type": "object", "additionalProperties": false, "required": ["kind", "period", "table"],
       "properties": {"kind": {"const": "periodic"},
                      "period": {"type": "array", "items": {"type": "integer", "minimum": 1}},
                      "table": {"type": "array", "items": {"$ref": "#/$defs/complex"}},
                      "offset": {"$ref": "#/$defs/point"}}},
      {"type": "object", "additionalProperties": false, "required": ["kind", "expr"],
       "properties": {"kind": {"const": "expression"}, "expr": {"type": "string"},
                      "bound": {"type": "number"}, "offset": {"$ref": "#/$defs/point"}}},
      {"type": "object", "additionalProperties": false, "required": ["kind", "entries"],
       "properties": {"kind": {"const": "table"},
                      "entries": {"type": "array", "items": {"type": "array", "minItems": 2, "maxItems": 2}},
                      "tail": {"$ref": "#/$defs/complex"}, "offset": {"$ref": "#/$defs/point"}}},
      {"type": "object", "additionalProperties": false, "required": ["kind"],
       "properties": {"kind": {"const": "random"}, "seed": {"type": "integer", "minimum": 0},
                      "bound": {"type": "number", "minimum": 0}, "offset": {"$ref": "#/$defs/point"}}}
    ]},
    "predicate": {
      "type": "object", "additionalProperties": false, "required": ["predicate"],
      "properties": {
        "predicate": {"enum": ["all", "none", "halfspace", "sublattice", "explicit", "expression"]},
        "normal": {"$ref": "#/$defs/numbers"},
        "offset": {},
        "modulus": {"type": "array", "items": {"type": "integer", "minimum": 1}},
        "residue": {"type": "array", "items": {"type": "integer"}},
        "points": {"type": "array", "items": {"$ref": "#/$defs/point"}},
        "expr": {"type": "string"}
      }
    },
    "operator": {
      "type": "object", "additionalProperties": false, "required": ["op"],
      "properties": {
        "op": {"enum": ["band", "identity", "zero", "shift", "laplacian", "mult", "project",
                        "compress", "sum", "product", "adjoint", "minusScalar", "scale"]},
        "stencil": {"type": "array", "items": {
          "type": "object", "additionalProperties": false, "required": ["offset", "coeff"],
          "properties": {"offset": {"$ref": "#/$defs/point"}, "coeff": {"$ref": "#/$defs/field"}}}},
        "axis": {"type": "integer", "minimum": 0},
        "field": {"$ref": "#/$defs/field"},
        "y": {"$ref": "#/$defs/predicate"},
        "terms": {"type": "array", "items": {"$ref": "#/$defs/operator"}},
        "factors": {"type": "array", "items": {"$ref": "#/$defs/operator"}},
        "of": {"$ref": "#/$defs/operator"},
        "z": {"$ref": "#/$defs/complex"},
        "c": {"$ref": "#/$defs/complex"}
      }
    },
    "sequence": {
      "type": "object", "additionalProperties": false, "required": ["label", "kind"],
      "properties": {
        "label": {"type": "string"},
        "kind": {"enum": ["ray", "explicit", "subsequence"]},
        "v": {"$ref": "#/$defs/point"},
        "w": {"$ref": "#/$defs/point"},
        "budget": {"type": "integer", "minimum": 2},
        "points": {"type": "array", "items": {"$ref": "#/$defs/point"}},
        "parent": {"type": "string"},
        "indices": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "rule": {
          "type": "object", "additionalProperties": false, "required": ["kind"],
          "properties": {"kind": {"enum": ["arithmetic", "level"]},
                         "a": {"type": "integer", "minimum": 1}, "b": {"type": "integer", "minimum": 0},
                         "expr": {"type": "string"}, "target": {"$ref": "#/$defs/complex"}}
        }
      }
    },
    "params": {
      "type": "object", "additionalProperties": false,
      "properties": {
        "rMax": {"type": "number"}, "probeRadius": {"type": "number"},
        "r": {"type": "number"}, "scopeRadius": {"type": ["number", "null"]},
        "t": {"type": "number"}, "p": {"type": "number"}, "tGrid": {"$ref": "#/$defs/numbers"},
        "radii": {"$ref": "#/$defs/numbers"}, "tol": {"type": "number"},
        "windowSchedule": {"$ref": "#/$defs/numbers"}, "tau": {"type": "number"},
        "pitch": {"type": "number"}, "halfWidth": {"type": "number"},
        "thetaGrid": {"type": "integer", "minimum": 1},
        "method": {"enum": ["auto", "symbolOracle", "floquet", "nuGrid"]}
      }
    }
  }
})JSON";
  return Json::parse(kSchema);
}

int cliMain(int argc, char **argv)
{
  CLI::App app{"Limit operators, Fredholm tests and essential spectra of band operators"};
  app.require_subcommand(0, 1);
  bool printSchema = false;
  std::string configPath;
  std::optional<std::string> outDir;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<std::string> format;
  app.add_flag("--print-schema", printSchema, "Print the config JSON schema and exit");
  app.add_option("--config", configPath, "Job config (JSON)");
  app.add_option("--out", outDir, "Output directory");
  app.add_option("--seed", seed, "Default seed for random fields");
  app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  for (const auto &t : kTasks)
  {
    app.add_subcommand(t, "Run the " + t + " task")->fallthrough();
  }
  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  if (printSchema)
  {
    std::cout << configSchema().dump(2) << "\n";
    return 0;
  }
  const auto subs = app.get_subcommands();
  if (subs.empty())
  {
    std::cerr << "error: a task subcommand is required\n" << app.help();
    return 1;
  }
  const std::string task = subs.front()->get_name();
  try
  {
    if (configPath.empty())
    {
      throw InputError("--config is required");
    }
    std::ifstream in(configPath);
    if (!in)
    {
      throw InputError("cannot read config '" + configPath + "'");
    }
    Json config;
    try
    {
      config = Json::parse(in);
    }
    catch (const Json::parse_error &e)
    {
      throw InputError(std::string("config is not valid JSON: ") + e.what());
    }
    CliOverrides ov{seed, threads, format, outDir};
    const RunOutcome res = run(task, config, ov);
    const std::string body = res.format == "csv" ? res.csv : res.document.dump(2) + "\n";
    if (res.outDir.empty())
    {
      std::cout << body;
    }
    else
    {
      std::filesystem::create_directories(res.outDir);
      const auto path = std::filesystem::path(res.outDir) / (task + "." + res.format);
      std::ofstream f(path);
      if (!f)
      {
        throw InputError("cannot write '" + path.string() + "'");
      }
      f << body;
      std::cerr << "wrote " << path.string() << "\n";
    }
    if (res.exitCode == 2)
    {
      std::cerr << "every limit along the declared sequences diverged\n";
    }
    return res.exitCode;
  }
  catch (const InputError &e)
  {
    std::cerr << "input error: " << e.what() << "\n";
  }
  catch (const UnsupportedError &e)
  {
    std::cerr << "unsupported: " << e.what() << "\n";
  }
  catch (const TruncationError &e)
  {
    std::cerr << "truncation: " << e.what() << "\n";
  }
  catch (const Json::exception &e)
  {
    std::cerr << "input error: " << e.what() << "\n";
  }
  return 1;
}

}  // namespace limitops
