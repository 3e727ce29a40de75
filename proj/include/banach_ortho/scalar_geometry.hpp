#pragma once

#include <optional>

#include "banach_ortho/common.hpp"

namespace bjo {

// A finite set of scalars over the field; the real case is tagged so that
// hull computations stay on the line instead of the plane.
struct ScalarSet {
  Field field = Field::Complex;
  std::vector<Scalar> points;
};

// Convex polygon given by its counter-clockwise vertex list. Degenerate
// cases are allowed: one vertex (a point) or two (a segment / real interval).
struct ConvexPolygon {
  std::vector<Scalar> vertices;

  bool empty() const { return vertices.empty(); }
};

// Certificate for a zero-in-convex-hull decision. An inside certificate
// carries at most three support points (two over the reals) with convex
// weights whose combination reconstructs the hull point nearest to 0; its
// modulus is at most the decision tolerance. An outside certificate carries
// a unit scalar mu and a strictly positive gap with Re(mu*a) < -gap for all
// points a of the input set.
struct HullCertificate {
  enum class Kind { Inside, Outside } kind = Kind::Outside;
  // inside
  std::vector<Scalar> support_points;
  std::vector<std::size_t> support_indices;  // positions in the input set
  std::vector<double> weights;
  // outside
  Scalar mu{1.0, 0.0};
  double gap = 0.0;
  // shared
  double hull_distance = 0.0;  // distance from 0 to the convex hull

  bool inside() const { return kind == Kind::Inside; }
};

struct DirectionalSupportResult {
  bool exists = false;
  Scalar witness{0.0, 0.0};
  std::size_t witness_index = 0;
};

// Decides whether 0 lies within distance tol of conv(set) and certifies the
// answer either way. Ties at exactly tol report inside.
HullCertificate zero_in_conv(const ScalarSet& set, double tol);

// True iff some a in the set has Re(mu*a) >= 0; requires |mu| = 1 within 1e-12.
DirectionalSupportResult directional_support(const ScalarSet& set, Scalar mu);

// Minimal counter-clockwise vertex polygon (interval endpoints for the real
// field); collinear interior points are dropped.
ConvexPolygon conv_hull(const ScalarSet& set);

// Symmetric Hausdorff distance between two convex polygons.
double hull_hausdorff(const ConvexPolygon& p, const ConvexPolygon& q);

// Euclidean distance from a point to a convex polygon (0 when inside).
double polygon_distance(const ConvexPolygon& poly, Scalar point);

bool polygon_contains(const ConvexPolygon& poly, Scalar point, double tol = 1e-9);

// Largest pairwise vertex distance.
double polygon_diameter(const ConvexPolygon& poly);

double polygon_max_modulus(const ConvexPolygon& poly);

// Verifies a certificate against the set it was issued for, with the decision
// tolerance it was issued at. Used by tests and the certificate suites.
bool verify_certificate(const ScalarSet& set, const HullCertificate& cert, double tol,
                        std::string* why = nullptr);

}  // namespace bjo
