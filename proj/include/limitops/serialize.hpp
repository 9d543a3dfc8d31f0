#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "limitops/covering.hpp"
#include "limitops/fredholm.hpp"
#include "limitops/norms.hpp"
#include "limitops/partition.hpp"
#include "limitops/spectrum.hpp"

namespace limitops
{

using Json = nlohmann::ordered_json;

// Shared state while reading a job description.
struct ParseContext
{
  Space space = Space::lattice(1);
  std::uint64_t seed = 0;  // default seed for random fields
  std::optional<SubspaceProjection> projection;
};

// Throws InputError naming the first key of j not in allowed.
void requireKeys(const Json &j, const std::vector<std::string> &allowed, const std::string &where);

Space spaceFromJson(const Json &j);
Point pointFromJson(const Json &j);
Complex complexFromJson(const Json &j);
CoefficientField fieldFromJson(const Json &j, const ParseContext &ctx);
Predicate predicateFromJson(const Json &j);
OperatorExpr operatorFromJson(const Json &j, const ParseContext &ctx);
// Sequences may refer to earlier entries of the same list by label.
std::vector<LimitSequence> sequencesFromJson(const Json &j);

Json toJson(double x);  // non-finite values become "inf", "-inf" or "nan"
Json toJson(const Space &s);
Json toJson(const Point &p);
Json toJson(Complex z);
Json toJson(const CoefficientField &f);
Json toJson(const Predicate &y);
Json toJson(const OperatorExpr &a);
Json toJson(const LimitSequence &s);
Json toJson(const NormInterval &n);
Json toJson(const DivergenceReport &d);
Json toJson(const LimitOperator &l);
Json toJson(const Covering &c, const CoveringReport &r);
Json toJson(const std::vector<GeometryEntry> &g);
Json toJson(const BdoDiagnostic &b);
Json toJson(const InvertibilityEstimate &e);
Json toJson(const CompactnessReport &r);
Json toJson(const FredholmReport &r);
Json toJson(const EssNormReport &r);
Json toJson(const SpectrumEstimate &s);
Json toJson(const EssentialSpectrumReport &r);

// Functions meeting the partition scope as (j, support, values) records.
Json partitionToJson(const PartitionOfUnity &part, const Window &scope);

}  // namespace limitops
