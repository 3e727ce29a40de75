#pragma once

#include "banach_ortho/orthogonality.hpp"

namespace bjo {

// Two-sided approximation of the numerical range V(Z,u,z) = {phi(z) : phi a
// state at u}. `inner` collects points certified (at the working tolerance)
// to belong to V; `outer` is a convex set containing V up to the relaxed
// tolerance. Both are convex and inner is contained in outer.
struct RangeEstimate {
  ConvexPolygon inner;
  ConvexPolygon outer;
  enum class Method { Scan, Extreme, DeltaLadder } method = Method::Scan;
  struct Params {
    int angles = 96;
    double radial_tol = 1e-6;
    double tol = kDefaultTol;
    double grid_error = 0.0;
    bool exhaustive = false;
  } params;
  // delta-ladder diagnostics: one hull per rung, shrinking with delta
  std::vector<double> deltas;
  std::vector<ConvexPolygon> rungs;
};

struct ScanGrid {
  int angles = 96;
  double radial_tol = 1e-6;
};

// A concrete sampling of a one-norming subset of the dual sphere.
struct FunctionalSampler {
  std::vector<Functional> functionals;
  bool exact = false;  // members are exact support functionals of u
};

// V via the orthogonality characterization: alpha is in V(Z,u,z) iff
// u is BJ-orthogonal to z - alpha*u. Polar grid around a state value seed,
// radial bisection per ray.
RangeEstimate range_scan(const SpaceDescriptor& space, const Vector& u, const Vector& z,
                         const ScanGrid& grid = {}, double tol = kDefaultTol);

// V as the hull of {phi(z)} over the extreme points of the face at u;
// exhaustive where the face enumeration is, grid-limited in the complex case.
RangeEstimate range_extreme(const SpaceDescriptor& space, const Vector& u, const Vector& z);

// V via band filtering of a one-norming sampler: per rung the hull of
// {psi(z)*conj(psi(u)) : |psi(u)| > 1 - delta}. Outer bound at the widest
// band, tightest hull at the narrowest.
RangeEstimate range_delta(const SpaceDescriptor& space, const Vector& u, const Vector& z,
                          const FunctionalSampler& sampler, const DeltaLadder& ladder = {});

// Exact support-functional sampler where enumerable, otherwise quasi-random
// unit functionals augmented with duality maps near u.
FunctionalSampler default_sampler(const SpaceDescriptor& space, const Vector& u, int budget = 512,
                                  std::uint64_t seed = 1);

struct RadiusEstimate {
  double lower = 0.0;  // attained by a certified state value
  double upper = 0.0;  // bound from the outer range estimate, capped at ||z||
  bool exhaustive = false;

  double value() const { return upper; }
};

// Numerical radius v(Z,u,z) = max modulus over V(Z,u,z).
RadiusEstimate numerical_radius(const SpaceDescriptor& space, const Vector& u, const Vector& z,
                                double tol = kDefaultTol);

struct VertexReport {
  bool vertex = false;
  bool exhaustive = false;        // rank certificate on an enumerated face
  std::optional<Vector> kernel_witness;  // z != 0 with v_u(z) ~ 0 when not a vertex
};

// u is a vertex iff v(Z,u,.) is positive definite.
VertexReport is_vertex(const SpaceDescriptor& space, const Vector& u, int probe_budget = 64,
                       std::uint64_t seed = 1, double tol = kDefaultTol);

struct SpearReport {
  bool spear = false;
  bool exhaustive = false;
  std::optional<Vector> worst_probe;
  double worst_gap = 0.0;  // min over probes of max_theta ||u+theta z|| - (1+||z||)
};

// u is a spear vector iff max_theta ||u + theta z|| = 1 + ||z|| for every z.
// Exhaustive for real spaces with enumerable dual faces (via the v_u ball),
// sampled otherwise; false is certified by the worst probe.
SpearReport is_spear_vector(const SpaceDescriptor& space, const Vector& u, int probe_budget = 64,
                            std::uint64_t seed = 1, double tol = kDefaultTol);

// The space (Z, v_u). When the face of u is exhaustively enumerable the
// seminorm is represented exactly as a polytope kind and every orthogonality
// and smoothness operation applies to it verbatim; otherwise the norm is a
// sampled callback and `exact` is false.
struct VuSpace {
  SpaceDescriptor space;
  bool exact = false;
  SupportSample face;
};
VuSpace vu_space(const SpaceDescriptor& base, const Vector& u);

double vu_seminorm(const SpaceDescriptor& base, const Vector& u, const Vector& z);

// Checks the vertex obstruction: if z is smooth in (Z, v_u) for a vertex u,
// then z is not BJ-orthogonal to u in (Z, v_u). A violation (smooth and
// orthogonal) is a test failure; precondition failures are reported, not
// thrown.
struct VuObstructionReport {
  bool preconditions_ok = false;
  std::string precondition_note;
  VertexReport vertex;
  SmoothnessReport smooth;
  OrthoVerdict orthogonal;
  bool violation = false;
};
VuObstructionReport vu_obstruction_check(const SpaceDescriptor& base, const Vector& u,
                                         const Vector& z, double tol = kDefaultTol);

}  // namespace bjo
