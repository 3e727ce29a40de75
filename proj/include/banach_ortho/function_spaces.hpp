#pragma once

#include "banach_ortho/orthogonality.hpp"

namespace bjo {

// A function on a finite grid with values in a described codomain. Adjacency
// gives the grid a topology for connectedness checks: a cycle (circle), a
// path, or none (plain bounded functions on an index set).
struct SampledFunction {
  enum class Adjacency { Circle, Path, None } adjacency = Adjacency::None;
  std::vector<std::string> labels;  // optional, one per grid point
  std::vector<Vector> values;
  SpaceDescriptor codomain;
};

SampledFunction make_sampled(SampledFunction::Adjacency adj, std::vector<Vector> values,
                             SpaceDescriptor codomain);

double sup_norm(const SampledFunction& f);

struct AttainmentBand {
  std::vector<std::size_t> indices;  // grid points within eta of the sup norm
  bool connected = false;            // under the declared adjacency
  int components = 0;
};
AttainmentBand attainment_set_f(const SampledFunction& f, double eta);

// BJ-orthogonality in C(K,Y) via the extreme-point value set
// {y*(g(t)) : y*(f(t)) = ||f||}, band-relaxed on the grid.
OrthoVerdict c_orthogonal(const SampledFunction& f, const SampledFunction& g,
                          const DeltaLadder& ladder = {}, double tol = kDefaultTol);

// Pointwise directional consequence of orthogonality when the attainment set
// is connected: for every direction mu some attaining t has
// f(t) directionally orthogonal to g(t). Violations are counted; a
// disconnected band makes the statement inapplicable and is reported.
struct ConnectedAttainmentReport {
  bool applicable = false;     // orthogonal pair with connected band
  bool orthogonal = false;     // the c_orthogonal decision
  AttainmentBand band;
  int directions_checked = 0;
  int violations = 0;
  std::vector<double> failed_directions;  // angles with no pointwise witness
  // real-field variant: a single attaining t with f(t) BJ-orthogonal to g(t)
  std::optional<std::size_t> single_point_witness;
};
ConnectedAttainmentReport attainment_directional_check(const SampledFunction& f,
                                                       const SampledFunction& g,
                                                       int mu_grid = 360,
                                                       double tol = 1e-5,
                                                       double eta = 1e-6);

// Finite Blaschke products: z^k * prod |a_j|/a_j * (z - a_j)/(1 - conj(a_j) z).
struct BlaschkeParams {
  int k = 0;
  std::vector<Scalar> zeros;  // 0 < |a_j| < 1
};

Scalar blaschke_eval(const BlaschkeParams& params, Scalar z);

// Orthogonality of two Blaschke products in the disk algebra: for every
// direction mu some circle point z0 has Re(mu * conj(Bn(z0)) Bm(z0)) = 0.
// Sign changes are bracketed between grid points and refined by bisection;
// the hull criterion on {conj(Bn)Bm} is cross-checked.
struct BlaschkeOrthogonality {
  OrthoVerdict verdict;             // decision from the directional search
  bool hull_decision = false;       // zero_in_conv cross-check
  int directions_failed = 0;
};
BlaschkeOrthogonality blaschke_orthogonal(const BlaschkeParams& bn, const BlaschkeParams& bm,
                                          int circle_grid = 720, int mu_grid = 360,
                                          double tol = 1e-9);

// Disk-algebra orthogonality from boundary samples: hull of
// {theta g(s) : theta f(s) within eta of ||f||} over the circle grid and a
// phase grid, band-laddered.
OrthoVerdict disk_algebra_orthogonal(const std::vector<Scalar>& f_samples,
                                     const std::vector<Scalar>& g_samples,
                                     const DeltaLadder& ladder = {}, int theta_grid = 360,
                                     double tol = kDefaultTol);

// A finite pointed metric space; point 0 is the base point.
struct FiniteMetricSpace {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> dist;
  std::size_t base = 0;
};
void validate_metric(const FiniteMetricSpace& m);

// A map into Y with F(base) = 0, given by its values at the points.
struct LipschitzMap {
  std::vector<Vector> values;
  SpaceDescriptor codomain;
};

double lipschitz_norm(const FiniteMetricSpace& m, const LipschitzMap& F);

// Orthogonality in the Lipschitz norm via difference-quotient functionals:
// values theta * y*((G(s)-G(t))/d(s,t)) over pairs where the F-quotient is
// within the band of the Lipschitz norm.
OrthoVerdict lip_orthogonal(const FiniteMetricSpace& m, const LipschitzMap& F,
                            const LipschitzMap& G, const DeltaLadder& ladder = {},
                            double tol = kDefaultTol);

}  // namespace bjo
