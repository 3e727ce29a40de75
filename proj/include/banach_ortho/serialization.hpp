#pragma once

#include <json.hpp>

#include "banach_ortho/function_spaces.hpp"
#include "banach_ortho/numerical_range.hpp"
#include "banach_ortho/operator_geometry.hpp"

// JSON wire formats. Complex vectors and functionals are flat arrays with
// interleaved re/im parts; matrix entries are numbers (real) or [re, im]
// pairs; p = infinity is the string "inf".

namespace bjo {

using json = nlohmann::json;

json space_to_json(const SpaceDescriptor& s);
SpaceDescriptor space_from_json(const json& j);

json vector_to_json(const Vector& v, Field f);
Vector vector_from_json(const json& j, Field f, int dim);

json functional_to_json(const Functional& v, Field f);
Functional functional_from_json(const json& j, Field f, int dim);

json scalar_to_json(Scalar z, Field f);
Scalar scalar_from_json(const json& j);

json operator_to_json(const OperatorDescriptor& T);
OperatorDescriptor operator_from_json(const json& j);

json polygon_to_json(const ConvexPolygon& p);
json range_to_json(const RangeEstimate& est);
json verdict_to_json(const OrthoVerdict& v, Field f);
json certificate_to_json(const HullCertificate& c);

json sampled_function_to_json(const SampledFunction& f);
SampledFunction sampled_function_from_json(const json& j);

json blaschke_to_json(const BlaschkeParams& b);
BlaschkeParams blaschke_from_json(const json& j);

FiniteMetricSpace metric_from_json(const json& j);

}  // namespace bjo
