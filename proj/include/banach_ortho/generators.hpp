#pragma once

#include "banach_ortho/function_spaces.hpp"
#include "banach_ortho/operator_geometry.hpp"

// Deterministic random instance generators shared by the property suites and
// the acceptance runner.

namespace bjo::gen {

// Families: "l2r", "l2c", "l1r", "l1c", "linfr", "linfc", "l3r", "poly3".
SpaceDescriptor space_family(const std::string& name, int dim, Rng& rng);
const std::vector<std::string>& vector_families();

Vector random_vector(const SpaceDescriptor& space, Rng& rng);
Vector random_unit_vector(const SpaceDescriptor& space, Rng& rng);

// Unit vector whose support-face geometry is well conditioned: coordinates
// are either exactly degenerate (zero for l1, tied maxima for linf) or
// separated by a fixed margin, so tolerance bands around the numerical range
// stay narrow. Used by the range cross-validation instances.
Vector well_conditioned_unit(const SpaceDescriptor& space, Rng& rng, double margin = 0.05);

// A direction y with x BJ-orthogonal to y, built from a support functional:
// y = w - phi(w) * x/||x|| has phi(y) = 0.
Vector orthogonal_direction(const SpaceDescriptor& space, const Vector& x, Rng& rng);

OperatorDescriptor random_operator(const SpaceDescriptor& X, const SpaceDescriptor& Y, Rng& rng);

// For Hilbert spaces: adjusts A so that <Tx1, Ax1> = 0 at the top singular
// vector x1 of T, producing a pair with T orthogonal to A.
OperatorDescriptor make_orthogonal_to(const OperatorDescriptor& T, const OperatorDescriptor& A0);

BlaschkeParams random_blaschke(Rng& rng, int max_degree);

// Random trigonometric sample on a circle grid with values in Y; multi_bump
// shapes the norm profile to create several attainment points.
SampledFunction random_circle_function(const SpaceDescriptor& Y, int grid, Rng& rng,
                                       bool multi_bump);

// Shifts g by alpha*f so that the C(K,Y) orthogonality criterion holds.
SampledFunction shift_to_orthogonal(const SampledFunction& f, const SampledFunction& g);

FiniteMetricSpace random_metric(int points, Rng& rng);

}  // namespace bjo::gen
