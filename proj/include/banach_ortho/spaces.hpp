#pragma once

#include <memory>
#include <optional>
#include <variant>

#include "banach_ortho/common.hpp"

namespace bjo {

// Norm-one functionals supporting a vector u: each member phi satisfies
// dual_norm(phi) = 1 and phi(u) = ||u|| within tolerance. `exhaustive` is true
// when the list provably generates the whole face (finite extreme enumeration
// or a smooth point); complex faces with free phase coordinates are grid
// discretizations and report their arc error instead.
struct SupportSample {
  std::vector<Functional> members;
  bool exhaustive = false;
  double grid_error = 0.0;
};

struct SmoothnessReport {
  bool smooth = false;
  double face_diameter = 0.0;
  bool exhaustive = false;
};

using NormFn = std::function<double(const Vector&)>;
using SupportFn = std::function<SupportSample(const Vector&, int /*budget*/)>;

// A finite-dimensional normed (or seminormed) space descriptor. Immutable
// after construction; all operations are pure.
class SpaceDescriptor {
 public:
  struct PNorm {
    double p;  // in [1, inf]
  };
  struct WeightedP {
    double p;
    std::vector<double> weights;  // strictly positive
  };
  struct Polytope {
    std::vector<Functional> dual_points;  // extreme points of the dual ball (up to scalars)
    bool seminorm_ok = false;             // internal kinds may skip the spanning check
  };
  // Escape hatch for norms computed elsewhere (operator norms, sampled
  // numerical-radius seminorms). Enumeration-based operations report
  // capability errors unless a support sampler is provided.
  struct Custom {
    std::string label;
    NormFn norm;
    SupportFn support;  // may be null
  };

  static SpaceDescriptor lp(Field f, int dim, double p);
  static SpaceDescriptor weighted_lp(Field f, int dim, double p, std::vector<double> weights);
  static SpaceDescriptor polytope(Field f, int dim, std::vector<Functional> dual_points,
                                  bool seminorm_ok = false);
  static SpaceDescriptor custom(Field f, int dim, std::string label, NormFn norm,
                                SupportFn support = nullptr);

  Field field() const { return field_; }
  int dim() const { return dim_; }
  const std::string& label() const { return label_; }

  double norm(const Vector& x) const;
  double dual_norm(const Functional& phi) const;

  // The face of the dual ball generated by u (scaled so phi(u) = ||u||).
  SupportSample support_functionals(const Vector& u, int budget = 64) const;

  SmoothnessReport is_smooth_point(const Vector& x, double tol = kSmoothTol) const;

  // True for strongly exposed points of the unit ball; requires ||x|| = 1
  // within sphere_tol.
  bool is_strongly_exposed(const Vector& x, double sphere_tol = 1e-9) const;

  // (Discretized) extreme points of the dual ball. circle_grid controls the
  // phase discretization in the complex case.
  std::vector<Functional> dual_extreme_points(int circle_grid = 64,
                                              std::size_t max_count = 500000) const;

  // Extreme points of the primal unit ball where enumerable.
  std::vector<Vector> ball_extreme_points(int circle_grid = 24,
                                          std::size_t max_count = 500000) const;

  bool dual_enumerable() const;
  bool ball_enumerable() const;

  // A ball vector x with phi(x) = dual_norm(phi); exact for p-norm and real
  // polytope kinds.
  Vector norming_point(const Functional& phi) const;

  bool is_pnorm(double* p = nullptr) const;
  bool is_hilbert() const;  // p == 2 (weights allowed)
  bool is_polytope() const;
  bool is_custom() const;
  const Custom* custom_kind() const;
  const Polytope* polytope_kind() const;

  // Diagonal rescaling that turns a weighted space into the plain one;
  // identity for other kinds.
  std::vector<double> weight_scale() const;

 private:
  SpaceDescriptor() = default;
  void validate_vector(const std::vector<Scalar>& c) const;

  Field field_ = Field::Real;
  int dim_ = 0;
  std::string label_;
  std::variant<PNorm, WeightedP, Polytope, Custom> kind_{PNorm{2.0}};
  std::vector<Vector> ball_vertices_;  // cached for real polytopes
};

// Conjugate exponent with the 1 <-> inf convention.
double conjugate_exponent(double p);

// p-norm of a coordinate list.
double lp_norm(const std::vector<Scalar>& c, double p);

// Enumerates vertices of {x in R^n : |psi_j(x)| <= 1} by active-set
// combinations; real field only.
std::vector<Vector> polytope_ball_vertices(const std::vector<Functional>& dual_points, int dim);

}  // namespace bjo
