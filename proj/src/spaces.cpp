#include "banach_ortho/spaces.hpp"

#include <Eigen/Dense>

namespace bjo {

namespace {

constexpr double kZeroCoord = 1e-13;

Eigen::MatrixXcd rows_to_matrix(const std::vector<Functional>& rows, int dim) {
  Eigen::MatrixXcd m(rows.size(), dim);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < dim; ++j) m(i, j) = rows[i][j];
  return m;
}

int matrix_rank(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  auto sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  double thresh = sv(0) * 1e-10;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > thresh) ++r;
  return r;
}

std::vector<Scalar> circle_grid_points(int g) {
  std::vector<Scalar> pts(g);
  for (int k = 0; k < g; ++k) {
    double a = 2.0 * M_PI * k / g;
    pts[k] = Scalar(std::cos(a), std::sin(a));
  }
  return pts;
}

}  // namespace

double conjugate_exponent(double p) {
  if (p == 1.0) return kInfinity;
  if (p == kInfinity) return 1.0;
  return p / (p - 1.0);
}

double lp_norm(const std::vector<Scalar>& c, double p) {
  if (p == kInfinity) {
    double m = 0.0;
    for (auto v : c) m = std::max(m, std::abs(v));
    return m;
  }
  if (p == 1.0) {
    double s = 0.0;
    for (auto v : c) s += std::abs(v);
    return s;
  }
  if (p == 2.0) return euclidean_norm(c);
  double s = 0.0;
  for (auto v : c) s += std::pow(std::abs(v), p);
  return std::pow(s, 1.0 / p);
}

std::vector<Vector> polytope_ball_vertices(const std::vector<Functional>& dual_points, int dim) {
  const int J = int(dual_points.size());
  Eigen::MatrixXd A(J, dim);
  for (int j = 0; j < J; ++j)
    for (int i = 0; i < dim; ++i) A(j, i) = dual_points[j][i].real();

  std::vector<Vector> vertices;
  std::vector<std::vector<double>> keys;

  auto try_active_set = [&](const std::vector<int>& comb) {
    for (int mask = 0; mask < (1 << dim); ++mask) {
      Eigen::MatrixXd M(dim, dim);
      Eigen::VectorXd rhs = Eigen::VectorXd::Ones(dim);
      for (int r = 0; r < dim; ++r) {
        double s = (mask >> r) & 1 ? -1.0 : 1.0;
        M.row(r) = s * A.row(comb[r]);
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
      if (!lu.isInvertible()) continue;
      Eigen::VectorXd x = lu.solve(rhs);
      bool feasible = true;
      for (int j = 0; j < J && feasible; ++j)
        if (std::abs(A.row(j).dot(x)) > 1.0 + 1e-9) feasible = false;
      if (!feasible) continue;
      std::vector<double> key(dim);
      for (int i = 0; i < dim; ++i) key[i] = x(i);
      bool dup = false;
      for (auto& k2 : keys) {
        double d = 0.0;
        for (int i = 0; i < dim; ++i) d = std::max(d, std::abs(k2[i] - key[i]));
        if (d < 1e-8) {
          dup = true;
          break;
        }
      }
      if (dup) continue;
      keys.push_back(key);
      Vector v(dim);
      for (int i = 0; i < dim; ++i) v[i] = x(i);
      vertices.push_back(std::move(v));
    }
  };

  std::vector<int> comb(dim);
  std::function<void(int, int)> enumerate = [&](int start, int depth) {
    if (depth == dim) {
      try_active_set(comb);
      return;
    }
    for (int j = start; j + (dim - depth - 1) < J; ++j) {
      comb[depth] = j;
      enumerate(j + 1, depth + 1);
    }
  };
  enumerate(0, 0);
  return vertices;
}

// ---------------------------------------------------------------------------
// Factories
// ---------------------------------------------------------------------------

SpaceDescriptor SpaceDescriptor::lp(Field f, int dim, double p) {
  if (dim <= 0) throw DomainError("dimension must be positive");
  if (!(p >= 1.0)) throw DomainError("p must be in [1, inf]");
  SpaceDescriptor s;
  s.field_ = f;
  s.dim_ = dim;
  s.kind_ = PNorm{p};
  s.label_ = "l" + (p == kInfinity ? std::string("inf") : std::to_string(p)) + "^" +
             std::to_string(dim) + (f == Field::Real ? "(R)" : "(C)");
  return s;
}

SpaceDescriptor SpaceDescriptor::weighted_lp(Field f, int dim, double p,
                                             std::vector<double> weights) {
  if (dim <= 0) throw DomainError("dimension must be positive");
  if (!(p >= 1.0)) throw DomainError("p must be in [1, inf]");
  if (int(weights.size()) != dim) throw DomainError("weight count must match dimension");
  for (double w : weights)
    if (!(w > 0.0) || !std::isfinite(w)) throw DomainError("weights must be strictly positive");
  SpaceDescriptor s;
  s.field_ = f;
  s.dim_ = dim;
  s.kind_ = WeightedP{p, std::move(weights)};
  s.label_ = "weighted-l" + (p == kInfinity ? std::string("inf") : std::to_string(p));
  return s;
}

SpaceDescriptor SpaceDescriptor::polytope(Field f, int dim, std::vector<Functional> dual_points,
                                          bool seminorm_ok) {
  if (dim <= 0) throw DomainError("dimension must be positive");
  if (dual_points.empty()) throw DomainError("polytope needs at least one dual point");
  for (auto& phi : dual_points) {
    if (int(phi.dim()) != dim) throw DomainError("dual point dimension mismatch");
    if (!all_finite(phi.c)) throw DomainError("dual point with non-finite entry");
    if (f == Field::Real && !all_real(phi.c, 0.0))
      throw DomainError("real polytope dual points must be real");
  }
  if (!seminorm_ok) {
    if (matrix_rank(rows_to_matrix(dual_points, dim)) < dim)
      throw DomainError("polytope dual points must span the dual space");
  }
  SpaceDescriptor s;
  s.field_ = f;
  s.dim_ = dim;
  s.label_ = "polytope^" + std::to_string(dim);
  if (f == Field::Real && matrix_rank(rows_to_matrix(dual_points, dim)) == dim)
    s.ball_vertices_ = polytope_ball_vertices(dual_points, dim);
  s.kind_ = Polytope{std::move(dual_points), seminorm_ok};
  return s;
}

SpaceDescriptor SpaceDescriptor::custom(Field f, int dim, std::string label, NormFn norm,
                                        SupportFn support) {
  if (dim <= 0) throw DomainError("dimension must be positive");
  if (!norm) throw DomainError("custom space needs a norm callback");
  SpaceDescriptor s;
  s.field_ = f;
  s.dim_ = dim;
  s.label_ = std::move(label);
  s.kind_ = Custom{s.label_, std::move(norm), std::move(support)};
  return s;
}

void SpaceDescriptor::validate_vector(const std::vector<Scalar>& c) const {
  if (int(c.size()) != dim_) throw DomainError("dimension mismatch for space " + label_);
}

bool SpaceDescriptor::is_pnorm(double* p) const {
  if (auto* k = std::get_if<PNorm>(&kind_)) {
    if (p) *p = k->p;
    return true;
  }
  if (auto* k = std::get_if<WeightedP>(&kind_)) {
    if (p) *p = k->p;
    return true;
  }
  return false;
}

bool SpaceDescriptor::is_hilbert() const {
  double p = 0.0;
  return is_pnorm(&p) && p == 2.0;
}

bool SpaceDescriptor::is_polytope() const { return std::holds_alternative<Polytope>(kind_); }
bool SpaceDescriptor::is_custom() const { return std::holds_alternative<Custom>(kind_); }
const SpaceDescriptor::Custom* SpaceDescriptor::custom_kind() const {
  return std::get_if<Custom>(&kind_);
}
const SpaceDescriptor::Polytope* SpaceDescriptor::polytope_kind() const {
  return std::get_if<Polytope>(&kind_);
}

std::vector<double> SpaceDescriptor::weight_scale() const {
  std::vector<double> d(dim_, 1.0);
  if (auto* k = std::get_if<WeightedP>(&kind_)) {
    for (int i = 0; i < dim_; ++i)
      d[i] = k->p == kInfinity ? k->weights[i] : std::pow(k->weights[i], 1.0 / k->p);
  }
  return d;
}

// ---------------------------------------------------------------------------
// Norm and dual norm
// ---------------------------------------------------------------------------

double SpaceDescriptor::norm(const Vector& x) const {
  validate_vector(x.c);
  if (auto* k = std::get_if<PNorm>(&kind_)) return lp_norm(x.c, k->p);
  if (auto* k = std::get_if<WeightedP>(&kind_)) {
    auto d = weight_scale();
    std::vector<Scalar> scaled(x.c);
    for (int i = 0; i < dim_; ++i) scaled[i] *= d[i];
    return lp_norm(scaled, k->p);
  }
  if (auto* k = std::get_if<Polytope>(&kind_)) {
    double m = 0.0;
    for (auto& phi : k->dual_points) {
      Scalar s = 0.0;
      for (int i = 0; i < dim_; ++i) s += phi[i] * x.c[i];
      m = std::max(m, std::abs(s));
    }
    return m;
  }
  return std::get<Custom>(kind_).norm(x);
}

double SpaceDescriptor::dual_norm(const Functional& phi) const {
  validate_vector(phi.c);
  if (auto* k = std::get_if<PNorm>(&kind_)) return lp_norm(phi.c, conjugate_exponent(k->p));
  if (auto* k = std::get_if<WeightedP>(&kind_)) {
    auto d = weight_scale();
    std::vector<Scalar> scaled(phi.c);
    for (int i = 0; i < dim_; ++i) scaled[i] /= d[i];
    return lp_norm(scaled, conjugate_exponent(k->p));
  }
  if (is_polytope()) {
    if (field_ != Field::Real || ball_vertices_.empty())
      throw CapabilityError("dual norm supported only for spanning real polytopes");
    double m = 0.0;
    for (auto& v : ball_vertices_) m = std::max(m, std::abs(phi(v)));
    return m;
  }
  throw CapabilityError("dual norm unavailable for custom space " + label_);
}

// ---------------------------------------------------------------------------
// Support functionals (the face of the dual ball at u)
// ---------------------------------------------------------------------------

SupportSample SpaceDescriptor::support_functionals(const Vector& u, int budget) const {
  validate_vector(u.c);
  if (!all_finite(u.c)) throw DomainError("vector with non-finite entry");
  double nu = norm(u);
  if (nu <= 0.0) throw DomainError("support functionals of the zero vector");

  if (auto* k = std::get_if<WeightedP>(&kind_)) {
    auto d = weight_scale();
    Vector scaled(u.dim());
    for (int i = 0; i < dim_; ++i) scaled[i] = u[i] * d[i];
    auto plain = lp(field_, dim_, k->p).support_functionals(scaled, budget);
    for (auto& phi : plain.members)
      for (int i = 0; i < dim_; ++i) phi[i] *= d[i];
    return plain;
  }

  if (auto* k = std::get_if<PNorm>(&kind_)) {
    const double p = k->p;
    if (p > 1.0 && p != kInfinity) {
      // duality map: the unique support functional of a smooth point
      Functional phi(dim_);
      for (int i = 0; i < dim_; ++i) {
        double a = std::abs(u[i]);
        phi[i] = a == 0.0 ? Scalar(0.0)
                          : std::conj(sign_of(u[i])) * std::pow(a, p - 1.0) / std::pow(nu, p - 1.0);
      }
      return SupportSample{{phi}, true, 0.0};
    }
    if (p == kInfinity) {
      SupportSample s;
      s.exhaustive = true;
      for (int i = 0; i < dim_; ++i) {
        if (std::abs(u[i]) >= nu * (1.0 - 1e-12)) {
          Functional phi(dim_);
          phi[i] = std::conj(sign_of(u[i]));
          s.members.push_back(std::move(phi));
        }
      }
      return s;
    }
    // p == 1: fixed coordinates carry the conjugate sign; zero coordinates
    // are free over {+-1} (real) or the circle (complex, discretized).
    std::vector<int> free_coords;
    Functional base(dim_);
    for (int i = 0; i < dim_; ++i) {
      if (std::abs(u[i]) <= kZeroCoord * nu)
        free_coords.push_back(i);
      else
        base[i] = std::conj(sign_of(u[i]));
    }
    SupportSample s;
    if (free_coords.empty()) {
      s.members.push_back(base);
      s.exhaustive = true;
      return s;
    }
    if (field_ == Field::Real) {
      if (free_coords.size() > 16) throw CapabilityError("too many free face coordinates");
      for (std::size_t mask = 0; mask < (1u << free_coords.size()); ++mask) {
        Functional phi = base;
        for (std::size_t b = 0; b < free_coords.size(); ++b)
          phi[free_coords[b]] = (mask >> b) & 1 ? -1.0 : 1.0;
        s.members.push_back(std::move(phi));
      }
      s.exhaustive = true;
      return s;
    }
    int g = 16;
    while (std::pow(double(g), double(free_coords.size())) > std::max(budget, 256) && g > 4) g /= 2;
    auto circle = circle_grid_points(g);
    std::vector<std::size_t> counter(free_coords.size(), 0);
    while (true) {
      Functional phi = base;
      for (std::size_t b = 0; b < free_coords.size(); ++b) phi[free_coords[b]] = circle[counter[b]];
      s.members.push_back(std::move(phi));
      std::size_t b = 0;
      while (b < counter.size() && ++counter[b] == std::size_t(g)) counter[b++] = 0;
      if (b == counter.size()) break;
    }
    s.exhaustive = false;
    s.grid_error = 2.0 * M_PI / g;
    return s;
  }

  if (auto* k = std::get_if<Polytope>(&kind_)) {
    SupportSample s;
    s.exhaustive = true;
    for (auto& psi : k->dual_points) {
      Scalar val = psi(u);
      if (std::abs(val) >= nu * (1.0 - 1e-9)) {
        Functional phi = std::conj(sign_of(val)) * psi;
        s.members.push_back(std::move(phi));
      }
    }
    if (s.members.empty()) throw DiagnosticError("no dual point attains the polytope norm");
    return s;
  }

  auto& ck = std::get<Custom>(kind_);
  if (ck.support) return ck.support(u, budget);
  throw CapabilityError("support functionals unavailable for custom space " + label_);
}

SmoothnessReport SpaceDescriptor::is_smooth_point(const Vector& x, double tol) const {
  if (norm(x) <= 0.0) throw DomainError("smoothness of the zero vector");
  auto face = support_functionals(x, 256);
  SmoothnessReport r;
  r.exhaustive = face.exhaustive;
  double d = 0.0;
  for (std::size_t i = 0; i < face.members.size(); ++i)
    for (std::size_t j = i + 1; j < face.members.size(); ++j)
      d = std::max(d, coord_distance(face.members[i], face.members[j]));
  r.face_diameter = d;
  r.smooth = d <= tol;
  return r;
}

bool SpaceDescriptor::is_strongly_exposed(const Vector& x, double sphere_tol) const {
  double nx = norm(x);
  if (std::abs(nx - 1.0) > sphere_tol) throw DomainError("point not on the unit sphere");

  if (auto* k = std::get_if<WeightedP>(&kind_)) {
    auto d = weight_scale();
    Vector scaled(x.dim());
    for (int i = 0; i < dim_; ++i) scaled[i] = x[i] * d[i];
    return lp(field_, dim_, k->p).is_strongly_exposed(scaled, sphere_tol * 4.0 + 1e-9);
  }
  if (auto* k = std::get_if<PNorm>(&kind_)) {
    const double p = k->p;
    if (p > 1.0 && p != kInfinity) return true;  // uniformly convex
    if (p == 1.0) {
      int nonzero = 0;
      for (int i = 0; i < dim_; ++i)
        if (std::abs(x[i]) > 1e-9) ++nonzero;
      return nonzero == 1;
    }
    for (int i = 0; i < dim_; ++i)
      if (std::abs(x[i]) < 1.0 - 1e-9) return false;
    return true;
  }
  if (is_polytope()) {
    if (field_ != Field::Real || ball_vertices_.empty())
      throw CapabilityError("strong exposure decided only for spanning real polytopes");
    for (auto& v : ball_vertices_) {
      double d = 0.0;
      for (int i = 0; i < dim_; ++i) d = std::max(d, std::abs(x[i] - v[i]));
      if (d < 1e-9) return true;
    }
    return false;
  }
  throw CapabilityError("strong exposure unavailable for custom space " + label_);
}

bool SpaceDescriptor::dual_enumerable() const {
  double p = 0.0;
  if (is_pnorm(&p)) return p == 1.0 || p == kInfinity;
  return is_polytope();
}

bool SpaceDescriptor::ball_enumerable() const {
  double p = 0.0;
  if (is_pnorm(&p)) {
    if (p == 1.0) return true;
    if (p == kInfinity) return field_ == Field::Real ? dim_ <= 16 : dim_ <= 4;
    return false;
  }
  if (is_polytope()) return field_ == Field::Real && !ball_vertices_.empty();
  return false;
}

std::vector<Functional> SpaceDescriptor::dual_extreme_points(int circle_grid,
                                                             std::size_t max_count) const {
  if (auto* k = std::get_if<WeightedP>(&kind_)) {
    auto pts = lp(field_, dim_, k->p).dual_extreme_points(circle_grid, max_count);
    auto d = weight_scale();
    for (auto& phi : pts)
      for (int i = 0; i < dim_; ++i) phi[i] *= d[i];
    return pts;
  }
  double p = 0.0;
  if (is_pnorm(&p)) {
    if (p == kInfinity) {
      // dual is l1: extreme points are unimodular multiples of basis functionals
      std::vector<Functional> out;
      if (field_ == Field::Real) {
        for (int i = 0; i < dim_; ++i) {
          out.push_back(Functional::basis(dim_, i));
          out.push_back(Scalar(-1.0) * Functional::basis(dim_, i));
        }
      } else {
        for (auto theta : circle_grid_points(circle_grid))
          for (int i = 0; i < dim_; ++i) out.push_back(theta * Functional::basis(dim_, i));
      }
      return out;
    }
    if (p == 1.0) {
      // dual is linf: sign vectors / phase tuples
      std::vector<Functional> out;
      if (field_ == Field::Real) {
        if (dim_ > 20 || (std::size_t(1) << dim_) > max_count)
          throw CapabilityError("too many dual extreme points to enumerate");
        for (std::size_t mask = 0; mask < (std::size_t(1) << dim_); ++mask) {
          Functional phi(dim_);
          for (int i = 0; i < dim_; ++i) phi[i] = (mask >> i) & 1 ? -1.0 : 1.0;
          out.push_back(std::move(phi));
        }
        return out;
      }
      double count = std::pow(double(circle_grid), double(dim_));
      if (count > double(max_count))
        throw CapabilityError("phase grid too large; lower the circle grid");
      auto circle = circle_grid_points(circle_grid);
      std::vector<std::size_t> counter(dim_, 0);
      while (true) {
        Functional phi(dim_);
        for (int i = 0; i < dim_; ++i) phi[i] = circle[counter[i]];
        out.push_back(std::move(phi));
        int b = 0;
        while (b < dim_ && ++counter[b] == std::size_t(circle_grid)) counter[b++] = 0;
        if (b == dim_) break;
      }
      return out;
    }
    throw CapabilityError("dual extreme points not enumerable for p = " + std::to_string(p));
  }
  if (auto* k = std::get_if<Polytope>(&kind_)) {
    std::vector<Functional> out;
    if (field_ == Field::Real) {
      for (auto& psi : k->dual_points) {
        out.push_back(psi);
        out.push_back(Scalar(-1.0) * psi);
      }
    } else {
      for (auto theta : circle_grid_points(circle_grid))
        for (auto& psi : k->dual_points) out.push_back(theta * psi);
    }
    return out;
  }
  throw CapabilityError("dual extreme points unavailable for custom space " + label_);
}

std::vector<Vector> SpaceDescriptor::ball_extreme_points(int circle_grid,
                                                         std::size_t max_count) const {
  if (auto* k = std::get_if<WeightedP>(&kind_)) {
    auto pts = lp(field_, dim_, k->p).ball_extreme_points(circle_grid, max_count);
    auto d = weight_scale();
    for (auto& v : pts)
      for (int i = 0; i < dim_; ++i) v[i] /= d[i];
    return pts;
  }
  double p = 0.0;
  if (is_pnorm(&p)) {
    if (p == 1.0) {
      std::vector<Vector> out;
      if (field_ == Field::Real) {
        for (int i = 0; i < dim_; ++i) {
          out.push_back(Vector::basis(dim_, i));
          out.push_back(Scalar(-1.0) * Vector::basis(dim_, i));
        }
      } else {
        for (auto theta : circle_grid_points(circle_grid))
          for (int i = 0; i < dim_; ++i) out.push_back(theta * Vector::basis(dim_, i));
      }
      return out;
    }
    if (p == kInfinity) {
      std::vector<Vector> out;
      if (field_ == Field::Real) {
        if (dim_ > 16) throw CapabilityError("sign enumeration limited to dimension 16");
        for (std::size_t mask = 0; mask < (std::size_t(1) << dim_); ++mask) {
          Vector v(dim_);
          for (int i = 0; i < dim_; ++i) v[i] = (mask >> i) & 1 ? -1.0 : 1.0;
          out.push_back(std::move(v));
        }
        return out;
      }
      double count = std::pow(double(circle_grid), double(dim_));
      if (count > double(max_count))
        throw CapabilityError("phase grid too large; lower the circle grid");
      auto circle = circle_grid_points(circle_grid);
      std::vector<std::size_t> counter(dim_, 0);
      while (true) {
        Vector v(dim_);
        for (int i = 0; i < dim_; ++i) v[i] = circle[counter[i]];
        out.push_back(std::move(v));
        int b = 0;
        while (b < dim_ && ++counter[b] == std::size_t(circle_grid)) counter[b++] = 0;
        if (b == dim_) break;
      }
      return out;
    }
    throw CapabilityError("unit ball extreme points not enumerable for p = " + std::to_string(p));
  }
  if (is_polytope()) {
    if (field_ == Field::Real && !ball_vertices_.empty()) return ball_vertices_;
    throw CapabilityError("ball extreme points supported only for spanning real polytopes");
  }
  throw CapabilityError("ball extreme points unavailable for custom space " + label_);
}

Vector SpaceDescriptor::norming_point(const Functional& phi) const {
  validate_vector(phi.c);
  if (auto* k = std::get_if<WeightedP>(&kind_)) {
    auto d = weight_scale();
    Functional psi(dim_);
    for (int i = 0; i < dim_; ++i) psi[i] = phi[i] / d[i];
    Vector y = lp(field_, dim_, k->p).norming_point(psi);
    for (int i = 0; i < dim_; ++i) y[i] /= d[i];
    return y;
  }
  double p = 0.0;
  if (is_pnorm(&p)) {
    const double q = conjugate_exponent(p);
    Vector x(dim_);
    if (q == kInfinity) {  // p == 1
      int best = 0;
      for (int i = 1; i < dim_; ++i)
        if (std::abs(phi[i]) > std::abs(phi[best])) best = i;
      x[best] = std::conj(sign_of(phi[best]));
      return x;
    }
    if (q == 1.0) {  // p == inf
      for (int i = 0; i < dim_; ++i) x[i] = std::conj(sign_of(phi[i]));
      return x;
    }
    double nq = lp_norm(phi.c, q);
    if (nq == 0.0) return x;
    for (int i = 0; i < dim_; ++i) {
      double a = std::abs(phi[i]);
      x[i] = a == 0.0 ? Scalar(0.0)
                      : std::conj(sign_of(phi[i])) * std::pow(a, q - 1.0) / std::pow(nq, q - 1.0);
    }
    return x;
  }
  if (is_polytope() && field_ == Field::Real && !ball_vertices_.empty()) {
    double best = -1.0;
    const Vector* arg = nullptr;
    for (auto& v : ball_vertices_) {
      double a = std::abs(phi(v));
      if (a > best) {
        best = a;
        arg = &v;
      }
    }
    Vector x = *arg;
    Scalar s = std::conj(sign_of(phi(x)));
    for (auto& xi : x.c) xi *= s;
    return x;
  }
  throw CapabilityError("norming point unavailable for space " + label_);
}

}  // namespace bjo
