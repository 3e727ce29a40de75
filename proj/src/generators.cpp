#include "banach_ortho/generators.hpp"

namespace bjo::gen {

const std::vector<std::string>& vector_families() {
  static const std::vector<std::string> fams = {"l2r", "l2c", "l1r", "linfr", "l3r", "poly3"};
  return fams;
}

SpaceDescriptor space_family(const std::string& name, int dim, Rng& rng) {
  if (name == "l2r") return SpaceDescriptor::lp(Field::Real, dim, 2.0);
  if (name == "l2c") return SpaceDescriptor::lp(Field::Complex, dim, 2.0);
  if (name == "l1r") return SpaceDescriptor::lp(Field::Real, dim, 1.0);
  if (name == "l1c") return SpaceDescriptor::lp(Field::Complex, dim, 1.0);
  if (name == "linfr") return SpaceDescriptor::lp(Field::Real, dim, kInfinity);
  if (name == "linfc") return SpaceDescriptor::lp(Field::Complex, dim, kInfinity);
  if (name == "l3r") return SpaceDescriptor::lp(Field::Real, dim, 3.0);
  if (name == "l15r") return SpaceDescriptor::lp(Field::Real, dim, 1.5);
  if (name == "poly3") {
    // random spanning functional list, normalized rows
    std::vector<Functional> pts;
    for (int i = 0; i < dim; ++i) {
      Functional e = Functional::basis(dim, i);
      pts.push_back(e);
    }
    for (int k = 0; k < 2 * dim; ++k) {
      Functional phi(dim);
      for (int i = 0; i < dim; ++i) phi[i] = rng.normal();
      double n = euclidean_norm(phi.c);
      for (auto& c : phi.c) c /= n;
      pts.push_back(std::move(phi));
    }
    return SpaceDescriptor::polytope(Field::Real, dim, std::move(pts));
  }
  throw DomainError("unknown space family " + name);
}

Vector random_vector(const SpaceDescriptor& space, Rng& rng) {
  return rng.vector(space.field(), std::size_t(space.dim()));
}

Vector random_unit_vector(const SpaceDescriptor& space, Rng& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    Vector v = random_vector(space, rng);
    double n = space.norm(v);
    if (n > 1e-9) return (1.0 / n) * v;
  }
  return Vector::basis(space.dim(), 0);
}

Vector well_conditioned_unit(const SpaceDescriptor& space, Rng& rng, double margin) {
  double p = 0.0;
  for (int attempt = 0; attempt < 64; ++attempt) {
    Vector u = random_unit_vector(space, rng);
    if (space.is_pnorm(&p) && p == 1.0) {
      // snap small coordinates to exact zeros
      for (auto& c : u.c)
        if (std::abs(c) < margin) c = 0.0;
    } else if (space.is_pnorm(&p) && p == kInfinity) {
      // snap near-maximal coordinates to exact ties
      double m = 0.0;
      for (auto c : u.c) m = std::max(m, std::abs(c));
      for (auto& c : u.c)
        if (std::abs(c) > (1.0 - margin) * m) c = sign_of(c) * m;
    }
    double n = space.norm(u);
    if (n > margin) return (1.0 / n) * u;
  }
  return Vector::basis(space.dim(), 0);
}

Vector orthogonal_direction(const SpaceDescriptor& space, const Vector& x, Rng& rng) {
  double nx = space.norm(x);
  if (nx <= 0.0) throw DomainError("x must be nonzero");
  Vector xh = (1.0 / nx) * x;
  auto face = space.support_functionals(xh);
  const Functional& phi = face.members.front();
  for (int attempt = 0; attempt < 64; ++attempt) {
    Vector w = random_vector(space, rng);
    Vector y = w - phi(w) * xh;
    if (space.norm(y) > 1e-9) return y;
  }
  throw DiagnosticError("failed to build an orthogonal direction");
}

OperatorDescriptor random_operator(const SpaceDescriptor& X, const SpaceDescriptor& Y, Rng& rng) {
  Eigen::MatrixXcd m(Y.dim(), X.dim());
  for (int i = 0; i < Y.dim(); ++i)
    for (int j = 0; j < X.dim(); ++j) m(i, j) = rng.scalar(X.field());
  return OperatorDescriptor(X, Y, std::move(m));
}

OperatorDescriptor make_orthogonal_to(const OperatorDescriptor& T, const OperatorDescriptor& A0) {
  if (!T.domain.is_hilbert() || !T.codomain.is_hilbert())
    throw CapabilityError("orthogonal pair construction needs Hilbert spaces");
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(T.m, Eigen::ComputeFullV);
  Eigen::VectorXcd x1 = svd.matrixV().col(0);
  Eigen::VectorXcd tx = T.m * x1;
  Eigen::VectorXcd ax = A0.m * x1;
  Scalar inner = (tx.adjoint() * ax)(0, 0);  // <Ax, Tx> conjugate-linear in Tx
  double denom = tx.squaredNorm();
  Scalar c = inner / denom;
  Eigen::MatrixXcd m = A0.m - c * T.m;
  return OperatorDescriptor(A0.domain, A0.codomain, std::move(m));
}

BlaschkeParams random_blaschke(Rng& rng, int max_degree) {
  BlaschkeParams b;
  b.k = int(rng.integer(std::uint64_t(max_degree + 1)));
  int zeros = int(rng.integer(std::uint64_t(max_degree + 1 - b.k)));
  for (int i = 0; i < zeros; ++i) {
    double r = 0.15 + 0.7 * rng.uniform();
    double a = 2.0 * M_PI * rng.uniform();
    b.zeros.push_back(Scalar(r * std::cos(a), r * std::sin(a)));
  }
  if (b.k == 0 && b.zeros.empty()) b.k = 1;
  return b;
}

SampledFunction random_circle_function(const SpaceDescriptor& Y, int grid, Rng& rng,
                                       bool multi_bump) {
  // smooth trigonometric coordinates; multi_bump doubles the frequency so the
  // profile repeats and the attainment band splits into antipodal components
  const int modes = 3;
  std::vector<std::vector<Scalar>> coef(Y.dim(), std::vector<Scalar>(2 * modes + 1));
  for (int d = 0; d < Y.dim(); ++d)
    for (auto& c : coef[d]) c = rng.scalar(Y.field());
  double phase = 2.0 * M_PI * rng.uniform();
  int freq = multi_bump ? 2 : 1;

  std::vector<Vector> values(grid, Vector(Y.dim()));
  for (int t = 0; t < grid; ++t) {
    double a = freq * 2.0 * M_PI * t / grid;
    for (int d = 0; d < Y.dim(); ++d) {
      Scalar v = coef[d][0];
      for (int k = 1; k <= modes; ++k)
        v += coef[d][2 * k - 1] * std::cos(k * a) + coef[d][2 * k] * std::sin(k * a);
      values[t][d] = v * (1.1 + 0.5 * std::cos(a - phase));
    }
  }
  return make_sampled(SampledFunction::Adjacency::Circle, std::move(values), Y);
}

SampledFunction shift_to_orthogonal(const SampledFunction& f, const SampledFunction& g) {
  // On the attainment band the criterion set for g - alpha*f is the set for g
  // shifted by -alpha*||f||; centering it at 0 makes the pair orthogonal.
  double nf = sup_norm(f);
  const auto& Y = f.codomain;
  std::vector<Scalar> vals;
  for (std::size_t t = 0; t < f.values.size(); ++t) {
    double nft = Y.norm(f.values[t]);
    if (nft < nf * (1.0 - 1e-9)) continue;
    auto face = Y.support_functionals((1.0 / nft) * f.values[t], 8);
    for (auto& ystar : face.members) vals.push_back(ystar(g.values[t]));
  }
  if (vals.empty()) throw DiagnosticError("no attainment values to center");
  auto hull = conv_hull(ScalarSet{Y.field(), vals});
  Scalar centroid(0.0, 0.0);
  for (auto v : hull.vertices) centroid += v;
  centroid /= double(hull.vertices.size());
  Scalar alpha = centroid / nf;
  SampledFunction out = g;
  for (std::size_t t = 0; t < g.values.size(); ++t) out.values[t] = g.values[t] - alpha * f.values[t];
  return out;
}

FiniteMetricSpace random_metric(int points, Rng& rng) {
  // random points in the plane with the Euclidean metric: axioms hold
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i < points; ++i) pts.emplace_back(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
  FiniteMetricSpace m;
  m.dist.assign(points, std::vector<double>(points, 0.0));
  for (int i = 0; i < points; ++i)
    for (int j = 0; j < points; ++j) {
      double dx = pts[i].first - pts[j].first, dy = pts[i].second - pts[j].second;
      m.dist[i][j] = std::sqrt(dx * dx + dy * dy);
    }
  // merge near-duplicate points by re-drawing
  for (int i = 0; i < points; ++i)
    for (int j = i + 1; j < points; ++j)
      if (m.dist[i][j] < 1e-3) return random_metric(points, rng);
  m.base = 0;
  return m;
}

}  // namespace bjo::gen
