#pragma once

#include <Eigen/Dense>

#include "banach_ortho/numerical_range.hpp"

namespace bjo {

// A bounded operator between two described spaces. The matrix acts on
// coordinates: (Tx)_i = sum_j m(i,j) x_j.
struct OperatorDescriptor {
  SpaceDescriptor domain;
  SpaceDescriptor codomain;
  Eigen::MatrixXcd m;

  OperatorDescriptor(SpaceDescriptor dom, SpaceDescriptor cod, Eigen::MatrixXcd mat);
  Vector apply(const Vector& x) const;
  bool square() const { return m.rows() == m.cols(); }
};

Eigen::VectorXcd to_eigen(const Vector& v);
Vector from_eigen(const Eigen::VectorXcd& v);

// Flattens an operator into a vector of the operator-norm space (row-major).
Vector flatten(const OperatorDescriptor& T);
OperatorDescriptor unflatten(const SpaceDescriptor& domain, const SpaceDescriptor& codomain,
                             const Vector& v);

struct OperatorNormResult {
  double value = 0.0;
  Vector witness;   // unit vector attaining (or nearly attaining) the norm
  bool exact = false;  // closed-form / enumerated path vs ascent lower bound
};

// Operator norm with exact paths for l1 domains (column rule), Hilbert
// domain+codomain (SVD), real linf / polytope domains (ball vertex
// enumeration); multi-start conditional-gradient ascent otherwise.
OperatorNormResult operator_norm(const OperatorDescriptor& T);

// Unit vectors with ||Tx|| >= ||T|| - eta. Exhaustive descriptions: Hilbert
// top singular subspace, l1 maximal columns, enumerable ball vertices.
struct AttainmentSample {
  std::vector<Vector> members;
  double eta = 0.0;
  bool exhaustive = false;
  // Hilbert only: orthonormal basis of the top singular subspace
  std::vector<Vector> subspace_basis;
};
AttainmentSample attainment_set(const OperatorDescriptor& T, double eta = 1e-9, int budget = 64,
                                std::uint64_t seed = 1);

// The space (L(X,Y), operator norm) as a descriptor over flattened matrices,
// so vector-level orthogonality and smoothness tests apply to operators
// verbatim. Support functionals are sampled from near-attaining pairs.
SpaceDescriptor operator_space(const SpaceDescriptor& domain, const SpaceDescriptor& codomain);

// General BJ-orthogonality test: band-filtered value sets
// {y*(Ax) : Re y*(Tx) > ||T||(1-delta)} over sampled (x, y*) pairs, decided by
// the zero-in-hull certificate on the tightest rung.
OrthoVerdict op_bj_general(const OperatorDescriptor& T, const OperatorDescriptor& A,
                           const DeltaLadder& ladder = {}, int budget = 256,
                           std::uint64_t seed = 1, double tol = kDefaultTol);

// Extreme-point form: pairs from ext(B_X) x ext(B_{Y*}) with y*(Tx) = ||T||.
OrthoVerdict op_bj_extreme(const OperatorDescriptor& T, const OperatorDescriptor& A,
                           double tol = kDefaultTol);

// Hilbert-space criterion: T is orthogonal to A iff some norm-attaining x has
// <Tx, Ax> = 0. Decision via the field of values of the compressed matrix on
// the top singular subspace; witness by direct minimization.
OrthoVerdict bhatia_semrl(const OperatorDescriptor& T, const OperatorDescriptor& A,
                          double tol = kDefaultTol);

// Sequential (band) form: minimize |<Tx, Ax>| over ||Tx|| >= ||T|| - eta for
// a ladder of eta; coincides with the attainment form as eta -> 0.
OrthoVerdict bs_sequential(const OperatorDescriptor& T, const OperatorDescriptor& A,
                           int budget = 512, std::uint64_t seed = 1, double tol = kDefaultTol);

struct StatePair {
  Vector x;        // unit vector
  Functional xstar;  // unit functional with xstar(x) = 1
};

struct VRadiusResult {
  double value = 0.0;
  bool exhaustive = false;
  std::optional<StatePair> witness;
};

// Numerical radius v(T) = sup |x*(Tx)| over states. Exact rotation-trick path
// on Hilbert spaces, exhaustive vertex-pair evaluation on enumerable spaces,
// sampled ascent otherwise.
VRadiusResult v_radius(const OperatorDescriptor& T);

// Orthogonality with respect to the numerical radius seminorm.
OrthoVerdict v_orthogonal(const OperatorDescriptor& T, const OperatorDescriptor& A,
                          const DeltaLadder& ladder = {}, int budget = 256, std::uint64_t seed = 1,
                          double tol = kDefaultTol);

// Numerical radius of T with respect to a norm-one operator G:
// sup |y*(Tx)| over pairs with Re y*(Gx) > 1 - delta, smallest rung.
double v_with_respect_to(const OperatorDescriptor& G, const OperatorDescriptor& T,
                         const DeltaLadder& ladder = {}, int budget = 512, std::uint64_t seed = 1);

struct NumericalIndexResult {
  double upper = 1.0;              // min over searched T of v(T)/||T||
  OperatorDescriptor witness;      // minimizer found
  std::optional<double> grid_lower;  // min of v/||.|| over an entry grid (enumerable spaces)
  int grid_points = 0;
};

struct IndexBudget {
  int restarts = 64;
  int grid_per_entry = 5;  // entry grid resolution for the certified bound
};

// Estimates n(X) = inf v(T) over norm-one T. The upper bound comes from
// multi-start entry descent; for small real spaces with exhaustive v the
// entry-grid minimum is reported separately and never conflated with it.
NumericalIndexResult numerical_index(const SpaceDescriptor& X, const IndexBudget& budget = {},
                                     std::uint64_t seed = 1);

// Sufficient smoothness condition: some attaining x0 has Tx0 smooth in Y and
// the attainment is unique up to a unimodular factor.
struct SmoothOperatorReport {
  bool applies = false;
  std::string reason;
  std::optional<Vector> x0;
  SmoothnessReport image_smooth;
  // sampled cross-check on the operator-norm descriptor
  std::optional<SmoothnessReport> operator_space_smooth;
};
SmoothOperatorReport smooth_operator_sufficient(const OperatorDescriptor& T);

// Builds T = x0* (.) u0 for a strongly exposed x0 and smooth u0 orthogonal to
// A x0; such a T is smooth and BJ-orthogonal to A.
struct RankOneReport {
  bool ok = false;
  std::vector<std::string> failed_hypotheses;
  std::optional<OperatorDescriptor> T;
  std::optional<OrthoVerdict> orthogonal_to_A;
  std::optional<SmoothOperatorReport> smooth;
};
RankOneReport rank_one_orthogonal_smooth(const OperatorDescriptor& A, const Vector& x0,
                                         const Functional& x0star, const Vector& u0,
                                         double tol = kDefaultTol);

// Searches for the obstruction to G being a spear operator: a strongly
// exposed x0 and a smooth u0 orthogonal to G x0. When found, the rank-one
// construction provides a probe T with v_G(T) < ||T|| - tol. Reports
// "no obstruction found" otherwise; never certifies spear-ness.
struct SpearObstructionReport {
  bool obstruction_found = false;
  std::string note;
  std::optional<Vector> x0;
  std::optional<Vector> u0;
  std::optional<OperatorDescriptor> probe;
  double v_G_probe = 0.0;
  double probe_norm = 0.0;
  double spear_display_gap = 0.0;  // max_theta ||G + theta T|| - (1 + ||T||)
};
SpearObstructionReport spear_obstruction_check(const SpaceDescriptor& X, const SpaceDescriptor& Y,
                                               const OperatorDescriptor& G, int budget = 64,
                                               std::uint64_t seed = 1, double tol = kDefaultTol);

}  // namespace bjo
