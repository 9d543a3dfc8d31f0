#include "limitops/serialize.hpp"

#include <cmath>
#include <set>

#include "limitops/errors.hpp"

namespace limitops
{

namespace
{

std::string kindName(const Json &j, const std::string &key, const std::string &where)
{
  if (!j.contains(key) || !j.at(key).is_string())
  {
    throw InputError(where + ": missing string field '" + key + "'");
  }
  return j.at(key).get<std::string>();
}

double number(const Json &j, const std::string &where)
{
  if (!j.is_number())
  {
    throw InputError(where + ": expected a number");
  }
  return j.get<double>();
}

std::int64_t integer(const Json &j, const std::string &where)
{
  if (!j.is_number_integer())
  {
    throw InputError(where + ": expected an integer");
  }
  return j.get<std::int64_t>();
}

template <class T>
std::vector<T> list(const Json &j, const std::string &where)
{
  if (!j.is_array())
  {
    throw InputError(where + ": expected an array");
  }
  std::vector<T> out;
  for (const auto &e : j)
  {
    if constexpr (std::is_same_v<T, std::int64_t>)
    {
      out.push_back(integer(e, where));
    }
    else
    {
      out.push_back(number(e, where));
    }
  }
  return out;
}

Json pointList(const std::vector<Point> &pts)
{
  Json a = Json::array();
  for (const auto &p : pts)
  {
    a.push_back(toJson(p));
  }
  return a;
}

Json doubleList(const std::vector<double> &v)
{
  Json a = Json::array();
  for (double x : v)
  {
    a.push_back(toJson(x));
  }
  return a;
}

Json complexList(const std::vector<Complex> &v)
{
  Json a = Json::array();
  for (auto z : v)
  {
    a.push_back(toJson(z));
  }
  return a;
}

}  // namespace

void requireKeys(const Json &j, const std::vector<std::string> &allowed, const std::string &where)
{
  if (!j.is_object())
  {
    throw InputError(where + ": expected an object");
  }
  for (const auto &[k, v] : j.items())
  {
    if (std::find(allowed.begin(), allowed.end(), k) == allowed.end())
    {
      throw InputError(where + ": unknown field '" + k + "'");
    }
  }
}

Space spaceFromJson(const Json &j)
{
  requireKeys(j, {"kind", "dim", "metric", "fiber", "adjacency", "basepoint"}, "space");
  const std::string kind = j.value("kind", std::string("lattice"));
  if (kind == "lattice")
  {
    if (j.contains("adjacency"))
    {
      throw InputError("space: adjacency is only valid for graphs");
    }
    const int dim = static_cast<int>(integer(j.value("dim", Json(1)), "space.dim"));
    const std::string m = j.value("metric", std::string("linf"));
    Metric metric;
    if (m == "linf")
    {
      metric = Metric::LInf;
    }
    else if (m == "l1")
    {
      metric = Metric::L1;
    }
    else
    {
      throw InputError("space.metric must be 'l1' or 'linf'");
    }
    const int fiber = static_cast<int>(integer(j.value("fiber", Json(1)), "space.fiber"));
    if (j.contains("basepoint") && pointFromJson(j.at("basepoint")) != Point::zeros(dim + (fiber > 1)))
    {
      throw InputError("space.basepoint of a lattice must be the origin");
    }
    return Space::lattice(dim, metric, fiber);
  }
  if (kind == "graph")
  {
    if (j.contains("dim") || j.contains("metric") || j.contains("fiber"))
    {
      throw InputError("space: dim, metric and fiber are only valid for lattices");
    }
    if (!j.contains("adjacency") || !j.at("adjacency").is_array())
    {
      throw InputError("space.adjacency must be a list of neighbor lists");
    }
    std::vector<std::vector<std::int64_t>> adj;
    for (const auto &row : j.at("adjacency"))
    {
      adj.push_back(list<std::int64_t>(row, "space.adjacency"));
    }
    const std::int64_t base = j.contains("basepoint") ? pointFromJson(j.at("basepoint"))[0] : 0;
    return Space::graph(std::move(adj), base);
  }
  throw InputError("space.kind must be 'lattice' or 'graph'");
}

Point pointFromJson(const Json &j)
{
  if (j.is_number_integer())
  {
    return Point{j.get<std::int64_t>()};
  }
  const auto v = list<std::int64_t>(j, "point");
  if (v.empty() || v.size() > static_cast<std::size_t>(kMaxCoords))
  {
    throw InputError("point must have 1 to " + std::to_string(kMaxCoords) + " coordinates");
  }
  return Point(std::span<const std::int64_t>(v));
}

Complex complexFromJson(const Json &j)
{
  if (j.is_number())
  {
    return {j.get<double>(), 0.0};
  }
  if (j.is_array() && j.size() == 2)
  {
    return {number(j[0], "complex"), number(j[1], "complex")};
  }
  throw InputError("complex value must be a number or [re, im]");
}

CoefficientField fieldFromJson(const Json &j, const ParseContext &ctx)
{
  if (j.is_number() || j.is_array())
  {
    return CoefficientField::constant(complexFromJson(j));
  }
  const std::string kind = kindName(j, "kind", "field");
  CoefficientField f;
  if (kind == "constant")
  {
    requireKeys(j, {"kind", "value"}, "field");
    f = CoefficientField::constant(complexFromJson(j.at("value")));
  }
  else if (kind == "periodic")
  {
    requireKeys(j, {"kind", "period", "table", "offset"}, "field");
    std::vector<Complex> table;
    for (const auto &e : j.at("table"))
    {
      table.push_back(complexFromJson(e));
    }
    f = CoefficientField::periodic(list<std::int64_t>(j.at("period"), "field.period"), table);
  }
  else if (kind == "expression")
  {
    requireKeys(j, {"kind", "expr", "bound", "offset"}, "field");
    std::optional<double> bound;
    if (j.contains("bound"))
    {
      bound = number(j.at("bound"), "field.bound");
    }
    f = CoefficientField::expression(Expression::parse(kindName(j, "expr", "field")), bound);
  }
  else if (kind == "table")
  {
    requireKeys(j, {"kind", "entries", "tail", "offset"}, "field");
    std::map<Point, Complex> entries;
    for (const auto &e : j.at("entries"))
    {
      if (!e.is_array() || e.size() != 2)
      {
        throw InputError("field.entries must hold [point, value] pairs");
      }
      entries[pointFromJson(e[0])] = complexFromJson(e[1]);
    }
    f = CoefficientField::table(entries, j.contains("tail") ? complexFromJson(j.at("tail")) : 0.0);
  }
  else if (kind == "random")
  {
    requireKeys(j, {"kind", "seed", "bound", "offset"}, "field");
    const std::uint64_t seed =
        j.contains("seed") ? static_cast<std::uint64_t>(integer(j.at("seed"), "field.seed")) : ctx.seed;
    f = CoefficientField::random(seed, number(j.value("bound", Json(1.0)), "field.bound"));
  }
  else
  {
    throw InputError("unknown field kind '" + kind + "'");
  }
  if (j.contains("offset"))
  {
    f = f.translated(pointFromJson(j.at("offset")));
  }
  return f;
}

Predicate predicateFromJson(const Json &j)
{
  const std::string kind = kindName(j, "predicate", "projection");
  if (kind == "all")
  {
    requireKeys(j, {"predicate"}, "projection");
    return Predicate::all();
  }
  if (kind == "none")
  {
    requireKeys(j, {"predicate"}, "projection");
    return Predicate::none();
  }
  if (kind == "halfspace")
  {
    requireKeys(j, {"predicate", "normal", "offset"}, "projection");
    return Predicate::halfspace(list<double>(j.at("normal"), "projection.normal"),
                                number(j.value("offset", Json(0.0)), "projection.offset"));
  }
  if (kind == "sublattice")
  {
    requireKeys(j, {"predicate", "modulus", "residue"}, "projection");
    const auto m = list<std::int64_t>(j.at("modulus"), "projection.modulus");
    const auto r = j.contains("residue") ? list<std::int64_t>(j.at("residue"), "projection.residue")
                                         : std::vector<std::int64_t>(m.size(), 0);
    return Predicate::sublattice(m, r);
  }
  if (kind == "explicit")
  {
    requireKeys(j, {"predicate", "points"}, "projection");
    std::set<Point> pts;
    for (const auto &p : j.at("points"))
    {
      pts.insert(pointFromJson(p));
    }
    return Predicate::explicitSet(pts);
  }
  if (kind == "expression")
  {
    requireKeys(j, {"predicate", "expr", "offset"}, "projection");
    Predicate y = Predicate::expression(Expression::parse(kindName(j, "expr", "projection")));
    if (j.contains("offset"))
    {
      y = y.translated(pointFromJson(j.at("offset")));
    }
    return y;
  }
  throw InputError("unknown predicate '" + kind + "'");
}

OperatorExpr operatorFromJson(const Json &j, const ParseContext &ctx)
{
  const std::string op = kindName(j, "op", "operator");
  const Space &s = ctx.space;
  const auto children = [&](const std::string &key)
  {
    if (!j.contains(key) || !j.at(key).is_array() || j.at(key).empty())
    {
      throw InputError("operator '" + op + "' needs a nonempty list '" + key + "'");
    }
    std::vector<OperatorExpr> out;
    for (const auto &c : j.at(key))
    {
      out.push_back(operatorFromJson(c, ctx));
    }
    return out;
  };
  const auto of = [&]()
  {
    if (!j.contains("of"))
    {
      throw InputError("operator '" + op + "' needs 'of'");
    }
    return operatorFromJson(j.at("of"), ctx);
  };
  if (op == "band")
  {
    requireKeys(j, {"op", "stencil"}, "operator");
    std::vector<StencilEntry> st;
    for (const auto &e : j.at("stencil"))
    {
      requireKeys(e, {"offset", "coeff"}, "stencil entry");
      st.push_back({pointFromJson(e.at("offset")), fieldFromJson(e.at("coeff"), ctx)});
    }
    return OperatorExpr::band(BandOperator(s, std::move(st)));
  }
  if (op == "identity" || op == "zero" || op == "laplacian")
  {
    requireKeys(j, {"op"}, "operator");
    return op == "identity" ? OperatorExpr::identity(s)
                            : (op == "zero" ? OperatorExpr::zero(s) : laplacian(s));
  }
  if (op == "shift")
  {
    requireKeys(j, {"op", "axis"}, "operator");
    return shiftOperator(s, static_cast<int>(integer(j.value("axis", Json(0)), "operator.axis")));
  }
  if (op == "mult")
  {
    requireKeys(j, {"op", "field"}, "operator");
    return OperatorExpr::multiplication(s, fieldFromJson(j.at("field"), ctx));
  }
  if (op == "project")
  {
    requireKeys(j, {"op", "y"}, "operator");
    return OperatorExpr::projection(s, predicateFromJson(j.at("y")));
  }
  if (op == "compress")
  {
    requireKeys(j, {"op", "of"}, "operator");
    if (!ctx.projection)
    {
      throw InputError("operator 'compress' needs a projection");
    }
    return compress(of(), *ctx.projection);
  }
  if (op == "sum")
  {
    requireKeys(j, {"op", "terms"}, "operator");
    return OperatorExpr::sum(children("terms"));
  }
  if (op == "product")
  {
    requireKeys(j, {"op", "factors"}, "operator");
    return OperatorExpr::product(children("factors"));
  }
  if (op == "adjoint")
  {
    requireKeys(j, {"op", "of"}, "operator");
    return OperatorExpr::adjoint(of());
  }
  if (op == "minusScalar")
  {
    requireKeys(j, {"op", "of", "z"}, "operator");
    return OperatorExpr::minusScalar(of(), complexFromJson(j.at("z")));
  }
  if (op == "scale")
  {
    requireKeys(j, {"op", "of", "c"}, "operator");
    return OperatorExpr::scale(of(), complexFromJson(j.at("c")));
  }
  throw InputError("unknown operator '" + op + "'");
}

std::vector<LimitSequence> sequencesFromJson(const Json &j)
{
  if (!j.is_array())
  {
    throw InputError("sequences must be a list");
  }
  std::vector<LimitSequence> out;
  std::map<std::string, std::size_t> byLabel;
  for (const auto &e : j)
  {
    const std::string kind = kindName(e, "kind", "sequence");
    const std::string label = kindName(e, "label", "sequence");
    if (byLabel.count(label))
    {
      throw InputError("duplicate sequence label '" + label + "'");
    }
    if (kind == "ray")
    {
      requireKeys(e, {"label", "kind", "v", "w", "budget"}, "sequence");
      const Point v = pointFromJson(e.at("v"));
      const Point w = e.contains("w") ? pointFromJson(e.at("w")) : Point::zeros(v.size());
      out.push_back(LimitSequence::ray(label, v, w, e.contains("budget") ? integer(e.at("budget"), "budget") : kIndexBudget));
    }
    else if (kind == "explicit")
    {
      requireKeys(e, {"label", "kind", "points"}, "sequence");
      std::vector<Point> pts;
      for (const auto &p : e.at("points"))
      {
        pts.push_back(pointFromJson(p));
      }
      out.push_back(LimitSequence::explicitPoints(label, pts));
    }
    else if (kind == "subsequence")
    {
      requireKeys(e, {"label", "kind", "parent", "indices", "rule"}, "sequence");
      const std::string parent = kindName(e, "parent", "sequence");
      auto it = byLabel.find(parent);
      if (it == byLabel.end())
      {
        throw InputError("subsequence parent '" + parent + "' must be declared earlier");
      }
      SubsequenceRule rule;
      if (e.contains("indices") == e.contains("rule"))
      {
        throw InputError("subsequence needs exactly one of 'indices' or 'rule'");
      }
      if (e.contains("indices"))
      {
        rule.kind = SubsequenceRule::Kind::Indices;
        rule.indices = list<std::int64_t>(e.at("indices"), "sequence.indices");
      }
      else
      {
        const Json &r = e.at("rule");
        const std::string rk = kindName(r, "kind", "sequence.rule");
        if (rk == "arithmetic")
        {
          requireKeys(r, {"kind", "a", "b"}, "sequence.rule");
          rule.kind = SubsequenceRule::Kind::Arithmetic;
          rule.a = integer(r.value("a", Json(1)), "rule.a");
          rule.b = integer(r.value("b", Json(0)), "rule.b");
        }
        else if (rk == "level")
        {
          requireKeys(r, {"kind", "expr", "target"}, "sequence.rule");
          rule.kind = SubsequenceRule::Kind::Level;
          rule.expr = Expression::parse(kindName(r, "expr", "sequence.rule"));
          rule.target = complexFromJson(r.at("target"));
        }
        else
        {
          throw InputError("unknown subsequence rule '" + rk + "'");
        }
      }
      out.push_back(LimitSequence::subsequence(label, out[it->second], rule));
    }
    else
    {
      throw InputError("unknown sequence kind '" + kind + "'");
    }
    byLabel[label] = out.size() - 1;
  }
  return out;
}

Json toJson(double x)
{
  if (std::isnan(x))
  {
    return "nan";
  }
  if (std::isinf(x))
  {
    return x > 0 ? "inf" : "-inf";
  }
  return x;
}

Json toJson(const Space &s)
{
  Json j;
  if (s.isLattice())
  {
    j["kind"] = "lattice";
    j["dim"] = s.dim();
    j["metric"] = s.metric() == Metric::L1 ? "l1" : "linf";
    j["fiber"] = s.fiber();
  }
  else
  {
    j["kind"] = "graph";
    j["adjacency"] = s.adjacency();
  }
  j["basepoint"] = toJson(s.basepoint().size() > 0 ? s.basepoint() : Point::zeros(s.coords()));
  return j;
}

Json toJson(const Point &p)
{
  return p.toVector();
}

Json toJson(Complex z)
{
  if (z.imag() == 0)
  {
    return toJson(z.real());
  }
  return Json::array({toJson(z.real()), toJson(z.imag())});
}

Json toJson(const CoefficientField &f)
{
  Json j;
  switch (f.kind())
  {
    case FieldKind::Constant:
      j["kind"] = "constant";
      j["value"] = toJson(f.constantValue());
      return j;
    case FieldKind::Periodic:
      j["kind"] = "periodic";
      j["period"] = f.period();
      j["table"] = complexList(f.periodTable());
      break;
    case FieldKind::Expression:
      j["kind"] = "expression";
      j["expr"] = f.expr().source();
      if (f.declaredBound())
      {
        j["bound"] = *f.declaredBound();
      }
      break;
    case FieldKind::Table:
    {
      j["kind"] = "table";
      Json entries = Json::array();
      for (const auto &[p, v] : f.tableEntries())
      {
        entries.push_back(Json::array({toJson(p), toJson(v)}));
      }
      j["entries"] = entries;
      j["tail"] = toJson(f.tail());
      break;
    }
    case FieldKind::SeededRandom:
      j["kind"] = "random";
      j["seed"] = f.seed();
      j["bound"] = f.bound();
      break;
  }
  if (f.offset().size() > 0 && f.offset() != Point::zeros(f.offset().size()))
  {
    j["offset"] = toJson(f.offset());
  }
  return j;
}

Json toJson(const Predicate &y)
{
  Json j;
  switch (y.kind())
  {
    case PredicateKind::All:
      j["predicate"] = "all";
      break;
    case PredicateKind::None:
      j["predicate"] = "none";
      break;
    case PredicateKind::Halfspace:
      j["predicate"] = "halfspace";
      j["normal"] = y.normal();
      j["offset"] = y.halfspaceOffset();
      break;
    case PredicateKind::Sublattice:
      j["predicate"] = "sublattice";
      j["modulus"] = y.modulus();
      j["residue"] = y.residue();
      break;
    case PredicateKind::Explicit:
      j["predicate"] = "explicit";
      j["points"] = pointList({y.points().begin(), y.points().end()});
      break;
    case PredicateKind::Expression:
      j["predicate"] = "expression";
      j["expr"] = y.expr().source();
      if (y.offset().size() > 0 && y.offset() != Point::zeros(y.offset().size()))
      {
        j["offset"] = toJson(y.offset());
      }
      break;
  }
  return j;
}

Json toJson(const OperatorExpr &a)
{
  Json j;
  const auto kids = [&]()
  {
    Json arr = Json::array();
    for (const auto &c : a.children())
    {
      arr.push_back(toJson(c));
    }
    return arr;
  };
  switch (a.kind())
  {
    case ExprKind::Band:
    {
      j["op"] = "band";
      Json st = Json::array();
      for (const auto &e : a.bandOperator().stencil())
      {
        st.push_back({{"offset", toJson(e.offset)}, {"coeff", toJson(e.coeff)}});
      }
      j["stencil"] = st;
      break;
    }
    case ExprKind::Multiplication:
      j["op"] = "mult";
      j["field"] = toJson(a.field());
      break;
    case ExprKind::Projection:
      j["op"] = "project";
      j["y"] = toJson(a.predicate());
      break;
    case ExprKind::Identity:
      j["op"] = "identity";
      break;
    case ExprKind::Zero:
      j["op"] = "zero";
      break;
    case ExprKind::Sum:
      j["op"] = "sum";
      j["terms"] = kids();
      break;
    case ExprKind::Product:
      j["op"] = "product";
      j["factors"] = kids();
      break;
    case ExprKind::Adjoint:
      j["op"] = "adjoint";
      j["of"] = toJson(a.children().at(0));
      break;
    case ExprKind::MinusScalar:
      j["op"] = "minusScalar";
      j["of"] = toJson(a.children().at(0));
      j["z"] = toJson(a.scalar());
      break;
    case ExprKind::Scale:
      j["op"] = "scale";
      j["of"] = toJson(a.children().at(0));
      j["c"] = toJson(a.scalar());
      break;
  }
  return j;
}

Json toJson(const LimitSequence &s)
{
  Json j;
  j["label"] = s.label();
  switch (s.kind())
  {
    case SequenceKind::Ray:
      j["kind"] = "ray";
      j["v"] = toJson(s.direction());
      j["w"] = toJson(s.offset());
      j["budget"] = s.budget();
      break;
    case SequenceKind::Explicit:
      j["kind"] = "explicit";
      j["points"] = pointList(s.points());
      break;
    case SequenceKind::Subsequence:
    {
      j["kind"] = "subsequence";
      j["parent"] = s.parent().label();
      const auto &r = s.rule();
      switch (r.kind)
      {
        case SubsequenceRule::Kind::Indices:
          j["indices"] = r.indices;
          break;
        case SubsequenceRule::Kind::Arithmetic:
          j["rule"] = {{"kind", "arithmetic"}, {"a", r.a}, {"b", r.b}};
          break;
        case SubsequenceRule::Kind::Level:
          j["rule"] = {{"kind", "level"}, {"expr", r.expr.source()}, {"target", toJson(r.target)}};
          break;
      }
      if (r.kind != SubsequenceRule::Kind::Arithmetic)
      {
        j["resolvedIndices"] = s.parentIndices();
      }
      break;
    }
  }
  return j;
}

Json toJson(const NormInterval &n)
{
  return {{"lower", toJson(n.lower)}, {"upper", toJson(n.upper)}, {"exact", n.exact()}};
}

Json toJson(const DivergenceReport &d)
{
  return {{"label", d.label}, {"reason", d.reason}, {"n1", d.n1},          {"n2", d.n2},
          {"radius", toJson(d.radius)}, {"gap", toJson(d.gap)}, {"tol", toJson(d.tol)}};
}

Json toJson(const LimitOperator &l)
{
  Json cert = Json::array();
  for (const auto &c : l.certificate)
  {
    cert.push_back({{"radius", toJson(c.radius)},
                    {"index", c.index},
                    {"measuredGap", toJson(c.measuredGap)},
                    {"recordedGap", toJson(c.recordedGap)}});
  }
  return {{"label", l.label},
          {"index", l.index},
          {"point", toJson(l.point)},
          {"exact", l.exact},
          {"validRadius", toJson(l.validRadius)},
          {"methods", l.methods},
          {"operator", toJson(l.op)},
          {"certificate", cert}};
}

Json toJson(const Covering &c, const CoveringReport &r)
{
  Json cells = Json::array();
  for (std::size_t j = 0; j < c.cells.size(); j++)
  {
    cells.push_back(Json::array({j, pointList(c.cells[j])}));
  }
  return {{"r", toJson(c.r)},
          {"scopeCenter", toJson(c.scope.center())},
          {"scopeRadius", toJson(c.scope.radius())},
          {"netPoints", pointList(c.netPoints)},
          {"cells", cells},
          {"report",
           {{"disjoint", r.disjoint},
            {"covers", r.covers},
            {"netInsideCells", r.netInsideCells},
            {"maxDiameter", toJson(r.maxDiameter)},
            {"diameterBound", toJson(4 * c.r)},
            {"maxNeighborCount", r.maxNeighborCount},
            {"neighborBound", r.neighborBound},
            {"margin", toJson(r.margin)}}}};
}

Json toJson(const std::vector<GeometryEntry> &g)
{
  Json a = Json::array();
  for (const auto &e : g)
  {
    a.push_back({{"r", e.r}, {"maxBallSize", e.maxBallSize}});
  }
  return a;
}

Json toJson(const BdoDiagnostic &b)
{
  Json vals = Json::array();
  for (const auto &v : b.values)
  {
    vals.push_back(toJson(v));
  }
  return {{"t", doubleList(b.t)},
          {"values", vals},
          {"ratios", doubleList(b.ratios)},
          {"fittedC", toJson(b.fittedC)},
          {"fittedExponent", toJson(b.fittedExponent)},
          {"maxRatioSpread", toJson(b.maxRatioSpread)},
          {"classification", b.classification}};
}

Json toJson(const InvertibilityEstimate &e)
{
  Json steps = Json::array();
  for (const auto &s : e.steps)
  {
    steps.push_back({{"radius", toJson(s.radius)},
                     {"columns", s.columns},
                     {"nu", toJson(s.nu)},
                     {"nuStar", toJson(s.nuStar)},
                     {"nuUpper", toJson(s.nuUpper)},
                     {"nuStarUpper", toJson(s.nuStarUpper)}});
  }
  return {{"verdict", toString(e.verdict)},
          {"tau", toJson(e.tau)},
          {"nuUpper", toJson(e.nuUpper)},
          {"nuStarUpper", toJson(e.nuStarUpper)},
          {"margin", toJson(e.margin)},
          {"lastRelativeChange", toJson(e.lastRelativeChange)},
          {"windows", steps}};
}

Json toJson(const CompactnessReport &r)
{
  Json entries = Json::array();
  for (const auto &e : r.entries)
  {
    Json j{{"label", e.label}};
    if (e.divergent)
    {
      j["divergence"] = toJson(e.divergence);
    }
    else
    {
      j["gaps"] = doubleList(e.gaps);
      j["limit"] = toJson(e.limit);
    }
    entries.push_back(j);
  }
  return {{"verdict", r.verdict}, {"maxGap", toJson(r.maxGap)}, {"entries", entries}, {"caveat", r.caveat}};
}

Json toJson(const FredholmReport &r)
{
  Json entries = Json::array();
  for (const auto &e : r.entries)
  {
    Json j{{"label", e.label}};
    if (e.divergent)
    {
      j["divergence"] = toJson(e.divergence);
    }
    else
    {
      j["schedule"] = doubleList(e.schedule);
      if (!e.note.empty())
      {
        j["note"] = e.note;
      }
      else
      {
        j["estimate"] = toJson(e.estimate);
      }
      j["limit"] = toJson(e.limit);
    }
    entries.push_back(j);
  }
  return {{"verdict", r.verdict},
          {"minMargin", toJson(r.minMargin)},
          {"inverseNormEstimate", toJson(r.inverseNormEstimate)},
          {"entries", entries},
          {"rationale", r.rationale},
          {"caveat", r.caveat}};
}

Json toJson(const EssNormReport &r)
{
  Json entries = Json::array();
  for (const auto &e : r.entries)
  {
    Json j{{"label", e.label}};
    if (e.divergent)
    {
      j["divergence"] = toJson(e.divergence);
    }
    else
    {
      j["lower"] = toJson(e.lower);
      j["upper"] = toJson(e.upper);
    }
    entries.push_back(j);
  }
  return {{"estimate", toJson(r.estimate)}, {"entries", entries}, {"caveat", r.caveat}};
}

Json toJson(const SpectrumEstimate &s)
{
  Json pts = Json::array();
  Json src = Json::array();
  for (const auto &p : s.points)
  {
    pts.push_back(Json::array({toJson(p.z.real()), toJson(p.z.imag()), toJson(p.indicator)}));
    src.push_back(p.source);
  }
  return {{"method", s.method},
          {"tau", toJson(s.tau)},
          {"pitch", toJson(s.pitch)},
          {"halfWidth", toJson(s.halfWidth)},
          {"limitOperatorLabel", s.limitLabel},
          {"evaluations", s.evaluations},
          {"points", pts},
          {"sources", src}};
}

Json toJson(const EssentialSpectrumReport &r)
{
  Json entries = Json::array();
  for (const auto &e : r.entries)
  {
    Json j{{"label", e.label}};
    if (e.divergent)
    {
      j["divergence"] = toJson(e.divergence);
    }
    else if (e.skipped)
    {
      j["note"] = e.note;
      j["limitMethods"] = e.limitMethods;
    }
    else
    {
      j["method"] = e.method;
      j["limitMethods"] = e.limitMethods;
      if (e.method == "nuGrid")
      {
        j["windowRadius"] = toJson(e.windowRadius);
      }
      j["cloudSize"] = e.cloudSize;
      j["evaluations"] = e.evaluations;
    }
    entries.push_back(j);
  }
  return {{"cloud", toJson(r.cloud)}, {"entries", entries}, {"caveat", r.caveat}};
}

Json partitionToJson(const PartitionOfUnity &part, const Window &scope)
{
  Json fns = Json::array();
  for (const auto &k : part.indicesMeeting(scope.ball()))
  {
    const auto support = part.supportWithin(k, scope);
    Json vals = Json::array();
    for (const auto &x : support)
    {
      vals.push_back(part.rho(k, x));
    }
    fns.push_back(Json::array({toJson(k), pointList(support), vals}));
  }
  return {{"t", toJson(part.t())},
          {"p", toJson(part.p())},
          {"pitch", part.pitch()},
          {"supportDiameter", toJson(part.supportDiameter())},
          {"functions", fns}};
}

}  // namespace limitops
