#include "banach_ortho/scalar_geometry.hpp"

#include <numeric>

namespace bjo {

namespace {

double cross(Scalar o, Scalar a, Scalar b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) -
         (a.imag() - o.imag()) * (b.real() - o.real());
}

void validate(const ScalarSet& set) {
  if (set.points.empty()) throw DomainError("scalar set must be non-empty");
  for (auto p : set.points)
    if (!is_finite(p)) throw DomainError("scalar set contains a non-finite point");
}

double set_scale(const ScalarSet& set) {
  double m = 0.0;
  for (auto p : set.points) m = std::max(m, std::abs(p));
  return m;
}

// The separating direction is normalized from a vector of length ~dist, so
// its rounding error can reach eps*scale/dist; deriving the gap from the
// actual dot products keeps Re(mu*a) < -gap strict under re-verification.
void finalize_outside(HullCertificate& cert, const ScalarSet& set) {
  cert.kind = HullCertificate::Kind::Outside;
  double re_min = kInfinity;
  for (auto a : set.points) re_min = std::min(re_min, -(cert.mu * a).real());
  if (!(re_min > 0.0))
    throw DiagnosticError("separating direction lost to roundoff");
  cert.gap = re_min * (1.0 - 1e-12);
}

// Monotone chain keeping the map back to input indices.
struct IndexedHull {
  std::vector<Scalar> v;
  std::vector<std::size_t> idx;
};

IndexedHull indexed_hull(const std::vector<Scalar>& pts) {
  const std::size_t n = pts.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (pts[a].real() != pts[b].real()) return pts[a].real() < pts[b].real();
    return pts[a].imag() < pts[b].imag();
  });
  // dedup identical points
  std::vector<std::size_t> uniq;
  for (auto i : order)
    if (uniq.empty() || std::abs(pts[i] - pts[uniq.back()]) > 0.0) uniq.push_back(i);

  double scale = 0.0;
  for (auto p : pts) scale = std::max(scale, std::abs(p));
  const double eps = 1e-12 * std::max(1.0, scale * scale);

  if (uniq.size() <= 2) {
    IndexedHull h;
    for (auto i : uniq) {
      h.v.push_back(pts[i]);
      h.idx.push_back(i);
    }
    return h;
  }

  std::vector<std::size_t> hull;
  // lower chain
  for (auto i : uniq) {
    while (hull.size() >= 2 && cross(pts[hull[hull.size() - 2]], pts[hull.back()], pts[i]) <= eps)
      hull.pop_back();
    hull.push_back(i);
  }
  // upper chain
  std::size_t lower_count = hull.size() + 1;
  for (auto it = uniq.rbegin() + 1; it != uniq.rend(); ++it) {
    while (hull.size() >= lower_count &&
           cross(pts[hull[hull.size() - 2]], pts[hull.back()], pts[*it]) <= eps)
      hull.pop_back();
    hull.push_back(*it);
  }
  hull.pop_back();  // last point equals the first

  IndexedHull h;
  for (auto i : hull) {
    h.v.push_back(pts[i]);
    h.idx.push_back(i);
  }
  if (h.v.size() < 3) {
    // collinear input collapsed by the chain: return extreme segment
    IndexedHull seg;
    seg.v = {pts[uniq.front()], pts[uniq.back()]};
    seg.idx = {uniq.front(), uniq.back()};
    if (std::abs(seg.v[0] - seg.v[1]) == 0.0) {
      seg.v.pop_back();
      seg.idx.pop_back();
    }
    return seg;
  }
  return h;
}

double point_segment_distance(Scalar p, Scalar a, Scalar b, double* t_out = nullptr) {
  Scalar ab = b - a;
  double len2 = std::norm(ab);
  if (len2 == 0.0) {
    if (t_out) *t_out = 0.0;
    return std::abs(p - a);
  }
  double t = ((p.real() - a.real()) * ab.real() + (p.imag() - a.imag()) * ab.imag()) / len2;
  t = std::clamp(t, 0.0, 1.0);
  if (t_out) *t_out = t;
  return std::abs(p - (a + t * ab));
}

bool strictly_inside(const std::vector<Scalar>& hull, Scalar p, double eps) {
  if (hull.size() < 3) return false;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    Scalar a = hull[i], b = hull[(i + 1) % hull.size()];
    if (cross(a, b, p) < -eps) return false;
  }
  return true;
}

}  // namespace

ConvexPolygon conv_hull(const ScalarSet& set) {
  validate(set);
  if (set.field == Field::Real) {
    double lo = set.points[0].real(), hi = lo;
    for (auto p : set.points) {
      lo = std::min(lo, p.real());
      hi = std::max(hi, p.real());
    }
    ConvexPolygon poly;
    poly.vertices.push_back(Scalar(lo, 0.0));
    if (hi > lo) poly.vertices.push_back(Scalar(hi, 0.0));
    return poly;
  }
  auto h = indexed_hull(set.points);
  return ConvexPolygon{h.v};
}

double polygon_distance(const ConvexPolygon& poly, Scalar p) {
  if (poly.empty()) throw DomainError("empty polygon");
  if (poly.vertices.size() == 1) return std::abs(p - poly.vertices[0]);
  double scale = polygon_max_modulus(poly) + std::abs(p);
  if (strictly_inside(poly.vertices, p, 1e-14 * std::max(1.0, scale * scale))) return 0.0;
  double best = kInfinity;
  for (std::size_t i = 0; i < poly.vertices.size(); ++i) {
    Scalar a = poly.vertices[i];
    Scalar b = poly.vertices[(i + 1) % poly.vertices.size()];
    if (poly.vertices.size() == 2 && i == 1) break;
    best = std::min(best, point_segment_distance(p, a, b));
  }
  return best;
}

bool polygon_contains(const ConvexPolygon& poly, Scalar point, double tol) {
  return polygon_distance(poly, point) <= tol;
}

double polygon_diameter(const ConvexPolygon& poly) {
  double d = 0.0;
  for (std::size_t i = 0; i < poly.vertices.size(); ++i)
    for (std::size_t j = i + 1; j < poly.vertices.size(); ++j)
      d = std::max(d, std::abs(poly.vertices[i] - poly.vertices[j]));
  return d;
}

double polygon_max_modulus(const ConvexPolygon& poly) {
  double m = 0.0;
  for (auto v : poly.vertices) m = std::max(m, std::abs(v));
  return m;
}

double hull_hausdorff(const ConvexPolygon& p, const ConvexPolygon& q) {
  if (p.empty() || q.empty()) throw DomainError("empty polygon");
  // For convex sets the sup over one set of the distance to the other is
  // attained at a vertex.
  double h = 0.0;
  for (auto v : p.vertices) h = std::max(h, polygon_distance(q, v));
  for (auto v : q.vertices) h = std::max(h, polygon_distance(p, v));
  return h;
}

DirectionalSupportResult directional_support(const ScalarSet& set, Scalar mu) {
  validate(set);
  if (std::abs(std::abs(mu) - 1.0) > 1e-12) throw DomainError("direction mu must be unimodular");
  DirectionalSupportResult res;
  double best = -kInfinity;
  for (std::size_t i = 0; i < set.points.size(); ++i) {
    double re = (mu * set.points[i]).real();
    if (re > best) {
      best = re;
      res.witness = set.points[i];
      res.witness_index = i;
    }
  }
  res.exists = best >= 0.0;
  return res;
}

HullCertificate zero_in_conv(const ScalarSet& set, double tol) {
  validate(set);
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");

  HullCertificate cert;

  if (set.field == Field::Real) {
    std::size_t imin = 0, imax = 0;
    for (std::size_t i = 0; i < set.points.size(); ++i) {
      if (set.points[i].real() < set.points[imin].real()) imin = i;
      if (set.points[i].real() > set.points[imax].real()) imax = i;
    }
    double lo = set.points[imin].real(), hi = set.points[imax].real();
    double dist = (lo <= 0.0 && hi >= 0.0) ? 0.0 : std::min(std::abs(lo), std::abs(hi));
    cert.hull_distance = dist;
    if (dist <= tol) {
      cert.kind = HullCertificate::Kind::Inside;
      if (lo <= 0.0 && hi >= 0.0) {
        if (hi == lo) {  // the set is {0}
          cert.support_points = {set.points[imin]};
          cert.support_indices = {imin};
          cert.weights = {1.0};
        } else {
          double wa = hi / (hi - lo);
          cert.support_points = {set.points[imin], set.points[imax]};
          cert.support_indices = {imin, imax};
          cert.weights = {wa, 1.0 - wa};
        }
      } else {
        // 0 within tol of one endpoint
        std::size_t inear = std::abs(lo) <= std::abs(hi) ? imin : imax;
        cert.support_points = {set.points[inear]};
        cert.support_indices = {inear};
        cert.weights = {1.0};
      }
    } else {
      cert.mu = lo > 0.0 ? Scalar(-1.0, 0.0) : Scalar(1.0, 0.0);
      finalize_outside(cert, set);
    }
    return cert;
  }

  auto hull = indexed_hull(set.points);
  const double scale = set_scale(set);

  auto nearest_on_boundary = [&](Scalar p, std::size_t* ia, std::size_t* ib, double* t) {
    double best = kInfinity;
    std::size_t n = hull.v.size();
    std::size_t edges = n >= 3 ? n : n - 1;
    for (std::size_t i = 0; i < edges; ++i) {
      Scalar a = hull.v[i], b = hull.v[(i + 1) % n];
      double ti;
      double d = point_segment_distance(p, a, b, &ti);
      if (d < best) {
        best = d;
        *ia = i;
        *ib = (i + 1) % n;
        *t = ti;
      }
    }
    return best;
  };

  if (hull.v.size() == 1) {
    double dist = std::abs(hull.v[0]);
    cert.hull_distance = dist;
    if (dist <= tol) {
      cert.kind = HullCertificate::Kind::Inside;
      cert.support_points = {hull.v[0]};
      cert.support_indices = {hull.idx[0]};
      cert.weights = {1.0};
    } else {
      cert.mu = -std::conj(hull.v[0]) / dist;
      finalize_outside(cert, set);
    }
    return cert;
  }

  bool inside_strict = strictly_inside(hull.v, Scalar(0.0), 1e-14 * std::max(1.0, scale * scale));

  if (inside_strict) {
    cert.kind = HullCertificate::Kind::Inside;
    cert.hull_distance = 0.0;
    // Fan triangulation from vertex 0; barycentric solve on the triangle
    // containing the origin.
    Scalar v0 = hull.v[0];
    for (std::size_t i = 1; i + 1 < hull.v.size(); ++i) {
      Scalar v1 = hull.v[i], v2 = hull.v[i + 1];
      double det = (v1.real() - v0.real()) * (v2.imag() - v0.imag()) -
                   (v2.real() - v0.real()) * (v1.imag() - v0.imag());
      if (std::abs(det) < 1e-300) continue;
      double l1 = ((-v0.real()) * (v2.imag() - v0.imag()) - (v2.real() - v0.real()) * (-v0.imag())) / det;
      double l2 = ((v1.real() - v0.real()) * (-v0.imag()) - (-v0.real()) * (v1.imag() - v0.imag())) / det;
      double l0 = 1.0 - l1 - l2;
      double slack = 1e-12;
      if (l0 >= -slack && l1 >= -slack && l2 >= -slack) {
        l0 = std::max(l0, 0.0);
        l1 = std::max(l1, 0.0);
        l2 = std::max(l2, 0.0);
        double s = l0 + l1 + l2;
        cert.support_points = {v0, v1, v2};
        cert.support_indices = {hull.idx[0], hull.idx[i], hull.idx[i + 1]};
        cert.weights = {l0 / s, l1 / s, l2 / s};
        return cert;
      }
    }
    // numerically on the boundary: fall through to the edge certificate
  }

  std::size_t ia = 0, ib = 0;
  double t = 0.0;
  double dist = nearest_on_boundary(Scalar(0.0), &ia, &ib, &t);
  if (inside_strict) dist = 0.0;
  cert.hull_distance = dist;

  if (dist <= tol) {
    cert.kind = HullCertificate::Kind::Inside;
    if (t <= 0.0 || std::abs(hull.v[ia] - hull.v[ib]) == 0.0) {
      cert.support_points = {hull.v[ia]};
      cert.support_indices = {hull.idx[ia]};
      cert.weights = {1.0};
    } else if (t >= 1.0) {
      cert.support_points = {hull.v[ib]};
      cert.support_indices = {hull.idx[ib]};
      cert.weights = {1.0};
    } else {
      cert.support_points = {hull.v[ia], hull.v[ib]};
      cert.support_indices = {hull.idx[ia], hull.idx[ib]};
      cert.weights = {1.0 - t, t};
    }
  } else {
    Scalar nearest = hull.v[ia] + t * (hull.v[ib] - hull.v[ia]);
    cert.mu = -std::conj(nearest) / std::abs(nearest);
    finalize_outside(cert, set);
  }
  return cert;
}

bool verify_certificate(const ScalarSet& set, const HullCertificate& cert, double tol,
                        std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  const double scale = set_scale(set);
  if (cert.inside()) {
    if (cert.weights.size() != cert.support_points.size() || cert.weights.empty())
      return fail("inside certificate without weights");
    if (cert.weights.size() > (set.field == Field::Real ? 2u : 3u))
      return fail("too many support points");
    double sum = 0.0;
    Scalar combo = 0.0;
    for (std::size_t k = 0; k < cert.weights.size(); ++k) {
      if (cert.weights[k] < -1e-15) return fail("negative weight");
      if (cert.support_indices.size() == cert.weights.size()) {
        std::size_t i = cert.support_indices[k];
        if (i >= set.points.size()) return fail("support index out of range");
        if (std::abs(set.points[i] - cert.support_points[k]) > 1e-9 * (1.0 + scale))
          return fail("support point does not match indexed set element");
      }
      sum += cert.weights[k];
      combo += cert.weights[k] * cert.support_points[k];
    }
    if (std::abs(sum - 1.0) > 1e-12) return fail("weights do not sum to 1");
    // The combination reconstructs the hull point nearest to 0, so its
    // modulus is bounded by the decision tolerance plus roundoff.
    if (std::abs(combo) > tol + 1e-9 * (1.0 + scale)) return fail("combination too far from 0");
    return true;
  }
  if (!(cert.gap > 0.0)) return fail("outside certificate needs positive gap");
  if (std::abs(std::abs(cert.mu) - 1.0) > 1e-9) return fail("mu not unimodular");
  for (auto a : set.points)
    if ((cert.mu * a).real() >= -cert.gap) return fail("separation violated");
  return true;
}

}  // namespace bjo
