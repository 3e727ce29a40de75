#pragma once

#include "banach_ortho/scalar_geometry.hpp"
#include "banach_ortho/spaces.hpp"

namespace bjo {

// Certified decision for an orthogonality question.
//
// For definition-level tests the margin is inf_lambda ||x + lambda y|| - ||x||
// computed on normalized inputs and scaled back by ||x||, so decisions are
// invariant under scaling of x and y and `tol` acts relative to ||x||. For
// hull-based tests the margin is minus the distance from 0 to the value hull.
struct OrthoVerdict {
  bool decision = false;
  double margin = 0.0;
  std::optional<Scalar> lambda_star;
  std::optional<Functional> witness;
  std::optional<Vector> witness_vector;  // attainment point, when the test produces one
  bool exhaustive = true;
  std::string note;
  std::vector<double> rung_distances;  // hull distance to 0 per ladder rung
  std::optional<HullCertificate> certificate;
};

struct LambdaMinimum {
  Scalar lambda{0.0, 0.0};
  double value = 0.0;  // min over lambda of norm(x + lambda y)
};

// Strictly decreasing band widths shared by all limit-surrogate tests,
// default 2^-k for k = 3..20.
struct DeltaLadder {
  std::vector<double> deltas;
  static DeltaLadder standard(int k_lo = 3, int k_hi = 20);
};

// Minimizes lambda -> norm_fn(x + lambda y) over the scalar field. The map is
// convex, so golden-section search (real) and coordinate alternation with a
// Nelder-Mead polish (complex) find the global minimum.
LambdaMinimum minimize_norm_lambda(const NormFn& norm_fn, const Vector& x, const Vector& y,
                                   Field field, double radius, double lambda_tol = 1e-10);

// Same restricted to real multiples of a fixed unit scalar gamma.
LambdaMinimum minimize_norm_lambda_directional(const NormFn& norm_fn, const Vector& x,
                                               const Vector& y, Scalar gamma, double radius,
                                               double lambda_tol = 1e-10);

// x is Birkhoff-James orthogonal to y: ||x + lambda y|| >= ||x|| for all
// scalars lambda. x = 0 or y = 0 decide true with margin 0.
OrthoVerdict bj_orthogonal(const SpaceDescriptor& space, const Vector& x, const Vector& y,
                           double tol = kDefaultTol);

// Orthogonality in the direction of the unit scalar gamma: the inequality is
// required only along real multiples of gamma*y.
OrthoVerdict directional_orthogonal(const SpaceDescriptor& space, const Vector& x, const Vector& y,
                                    Scalar gamma, double tol = kDefaultTol);

// A norm-one functional phi with phi(x) = ||x|| and |phi(y)| <= tol*||y||,
// when x is BJ-orthogonal to y; nullopt otherwise. On faces that are only
// sampled the search may fail even for orthogonal pairs; that outcome is
// "unknown" and reported through the bool flag.
struct WitnessResult {
  std::optional<Functional> functional;
  bool unknown = false;  // sampled face, no certificate either way
  std::optional<HullCertificate> certificate;
};
WitnessResult james_witness(const SpaceDescriptor& space, const Vector& x, const Vector& y,
                            double tol = kDefaultTol);

// Functional with phi(x) = gamma*||x|| and Re phi(y) = 0 certifying
// directional orthogonality.
WitnessResult directional_witness(const SpaceDescriptor& space, const Vector& x, const Vector& y,
                                  Scalar gamma, double tol = kDefaultTol);

struct BestApproximation {
  Scalar lambda{0.0, 0.0};
  Vector residual;
};

// Best approximation of x in span{y}: the minimizer of ||x - lambda y||.
// The residual is BJ-orthogonal to y.
BestApproximation best_approximation(const SpaceDescriptor& space, const Vector& x,
                                     const Vector& y);

}  // namespace bjo
