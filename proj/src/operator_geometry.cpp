#include "banach_ortho/operator_geometry.hpp"

namespace bjo {

namespace {

Eigen::MatrixXcd diag_scale(const std::vector<double>& d) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

Eigen::MatrixXcd diag_scale_inv(const std::vector<double>& d) {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = 1.0 / d[i];
  return m;
}

// Rescales weighted-p spaces to plain ones; the matrix becomes Dc T Dd^{-1}.
Eigen::MatrixXcd plain_matrix(const OperatorDescriptor& T) {
  return diag_scale(T.codomain.weight_scale()) * T.m * diag_scale_inv(T.domain.weight_scale());
}

Functional first_support(const SpaceDescriptor& space, const Vector& w) {
  return space.support_functionals(w, 8).members.front();
}

double lambda_max_hermitian(const Eigen::MatrixXcd& H, Eigen::VectorXcd* vec = nullptr) {
  if (H.rows() == 2 && !vec) {
    double a = H(0, 0).real(), d = H(1, 1).real();
    double off = std::abs(H(0, 1));
    return 0.5 * (a + d) + std::sqrt(0.25 * (a - d) * (a - d) + off * off);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
  int last = int(H.rows()) - 1;
  if (vec) *vec = es.eigenvectors().col(last);
  return es.eigenvalues()(last);
}

}  // namespace

OperatorDescriptor::OperatorDescriptor(SpaceDescriptor dom, SpaceDescriptor cod,
                                       Eigen::MatrixXcd mat)
    : domain(std::move(dom)), codomain(std::move(cod)), m(std::move(mat)) {
  if (m.rows() != codomain.dim() || m.cols() != domain.dim())
    throw DomainError("operator matrix shape does not match the spaces");
  if (!m.allFinite()) throw DomainError("operator matrix with non-finite entry");
  if (domain.field() != codomain.field())
    throw DomainError("domain and codomain must share the scalar field");
}

Vector OperatorDescriptor::apply(const Vector& x) const {
  if (int(x.dim()) != domain.dim()) throw DomainError("operator/vector dimension mismatch");
  Vector y(m.rows());
  for (int i = 0; i < m.rows(); ++i) {
    Scalar s = 0.0;
    for (int j = 0; j < m.cols(); ++j) s += m(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Eigen::VectorXcd to_eigen(const Vector& v) {
  Eigen::VectorXcd e(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) e(i) = v[i];
  return e;
}

Vector from_eigen(const Eigen::VectorXcd& e) {
  Vector v(e.size());
  for (int i = 0; i < e.size(); ++i) v[i] = e(i);
  return v;
}

Vector flatten(const OperatorDescriptor& T) {
  Vector v(T.m.rows() * T.m.cols());
  for (int i = 0; i < T.m.rows(); ++i)
    for (int j = 0; j < T.m.cols(); ++j) v[i * T.m.cols() + j] = T.m(i, j);
  return v;
}

OperatorDescriptor unflatten(const SpaceDescriptor& domain, const SpaceDescriptor& codomain,
                             const Vector& v) {
  if (int(v.dim()) != domain.dim() * codomain.dim())
    throw DomainError("flattened operator has wrong dimension");
  Eigen::MatrixXcd m(codomain.dim(), domain.dim());
  for (int i = 0; i < codomain.dim(); ++i)
    for (int j = 0; j < domain.dim(); ++j) m(i, j) = v[i * domain.dim() + j];
  return OperatorDescriptor(domain, codomain, std::move(m));
}

// ---------------------------------------------------------------------------
// Operator norm and attainment
// ---------------------------------------------------------------------------

OperatorNormResult operator_norm(const OperatorDescriptor& T) {
  OperatorNormResult res;
  const auto& X = T.domain;
  const auto& Y = T.codomain;

  if (X.is_hilbert() && Y.is_hilbert()) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(plain_matrix(T), Eigen::ComputeFullV);
    res.value = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    Eigen::VectorXcd v1 = svd.matrixV().col(0);
    auto ddom = X.weight_scale();
    Vector x = from_eigen(v1);
    for (int i = 0; i < X.dim(); ++i) x[i] /= ddom[i];
    res.witness = x;
    res.exact = true;
    return res;
  }

  double p = 0.0;
  if (X.is_pnorm(&p) && p == 1.0) {
    // column rule: the norm is attained at a rescaled basis vector
    auto d = X.weight_scale();
    double best = -1.0;
    int arg = 0;
    for (int j = 0; j < X.dim(); ++j) {
      Vector ej = (Scalar(1.0 / d[j])) * Vector::basis(X.dim(), j);
      double v = Y.norm(T.apply(ej));
      if (v > best) {
        best = v;
        arg = j;
      }
    }
    res.value = best;
    res.witness = (Scalar(1.0 / d[arg])) * Vector::basis(X.dim(), arg);
    res.exact = true;
    return res;
  }

  if (X.field() == Field::Real && X.ball_enumerable()) {
    double best = -1.0;
    Vector argv;
    for (auto& v : X.ball_extreme_points()) {
      double val = Y.norm(T.apply(v));
      if (val > best) {
        best = val;
        argv = v;
      }
    }
    res.value = best;
    res.witness = argv;
    res.exact = true;
    return res;
  }

  // multi-start conditional-gradient ascent of ||Tx|| over the unit ball;
  // each step maximizes the current linearization exactly
  SphereSampler sampler(X.field(), X.dim(), 7);
  std::vector<Vector> starts;
  for (int i = 0; i < X.dim(); ++i) starts.push_back(Vector::basis(X.dim(), i));
  for (int k = 0; k < 12; ++k) starts.push_back(sampler.next());
  double best = -1.0;
  Vector argv = Vector::basis(X.dim(), 0);
  for (auto& s : starts) {
    double ns = X.norm(s);
    if (ns <= 1e-14) continue;
    Vector x = (1.0 / ns) * s;
    double val = Y.norm(T.apply(x));
    for (int it = 0; it < 60; ++it) {
      Vector w = T.apply(x);
      double nw = Y.norm(w);
      if (nw <= 1e-14) break;
      Functional psi;
      Functional phi(X.dim());
      try {
        psi = first_support(Y, (1.0 / nw) * w);
        for (int j = 0; j < X.dim(); ++j) {
          Scalar s2 = 0.0;
          for (int i = 0; i < Y.dim(); ++i) s2 += psi[i] * T.m(i, j);
          phi[j] = s2;
        }
        Vector xn = X.norming_point(phi);
        double vn = Y.norm(T.apply(xn));
        if (vn <= val + 1e-14) break;
        x = xn;
        val = vn;
      } catch (const CapabilityError&) {
        break;
      }
    }
    if (val > best) {
      best = val;
      argv = x;
    }
  }
  res.value = best;
  res.witness = argv;
  res.exact = false;
  return res;
}

AttainmentSample attainment_set(const OperatorDescriptor& T, double eta, int budget,
                                std::uint64_t seed) {
  auto nrm = operator_norm(T);
  if (nrm.value <= 0.0) throw DomainError("attainment set of the zero operator");
  AttainmentSample out;
  out.eta = eta;
  const auto& X = T.domain;
  const auto& Y = T.codomain;

  if (X.is_hilbert() && Y.is_hilbert()) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(plain_matrix(T), Eigen::ComputeFullV);
    auto sv = svd.singularValues();
    auto ddom = X.weight_scale();
    for (int k = 0; k < sv.size(); ++k) {
      if (sv(k) < nrm.value * (1.0 - 1e-10)) break;
      Vector x = from_eigen(svd.matrixV().col(k));
      for (int i = 0; i < X.dim(); ++i) x[i] /= ddom[i];
      out.subspace_basis.push_back(x);
    }
    // representatives: basis directions and balanced mixtures
    for (auto& b : out.subspace_basis) {
      out.members.push_back(b);
      if (X.field() == Field::Real) out.members.push_back(Scalar(-1.0) * b);
    }
    Rng rng(seed);
    for (int k = 0; k < budget && out.subspace_basis.size() > 1; ++k) {
      Vector mix(X.dim());
      for (auto& b : out.subspace_basis) {
        Scalar c = rng.scalar(X.field());
        for (int i = 0; i < X.dim(); ++i) mix[i] += c * b[i];
      }
      double n = X.norm(mix);
      if (n > 1e-12) out.members.push_back((1.0 / n) * mix);
    }
    out.exhaustive = true;
    return out;
  }

  double p = 0.0;
  if (X.is_pnorm(&p) && p == 1.0) {
    auto d = X.weight_scale();
    for (int j = 0; j < X.dim(); ++j) {
      Vector ej = (Scalar(1.0 / d[j])) * Vector::basis(X.dim(), j);
      if (Y.norm(T.apply(ej)) >= nrm.value - eta) {
        out.members.push_back(ej);
        if (X.field() == Field::Real)
          out.members.push_back(Scalar(-1.0) * ej);
        else
          out.members.push_back(Scalar(0.0, 1.0) * ej);
      }
    }
    out.exhaustive = true;
    return out;
  }

  if (X.field() == Field::Real && X.ball_enumerable()) {
    for (auto& v : X.ball_extreme_points())
      if (Y.norm(T.apply(v)) >= nrm.value - eta) out.members.push_back(v);
    out.exhaustive = false;  // band faces may contain non-vertex points
    if (!out.members.empty()) return out;
  }

  // sampled ascent: keep distinct near-attaining points
  out.members.push_back(nrm.witness);
  SphereSampler sampler(X.field(), X.dim(), seed);
  for (int k = 0; k < budget; ++k) {
    Vector x = sampler.next();
    double nx = X.norm(x);
    if (nx <= 1e-12) continue;
    x = (1.0 / nx) * x;
    if (Y.norm(T.apply(x)) >= nrm.value - eta) out.members.push_back(x);
  }
  out.exhaustive = false;
  return out;
}

// ---------------------------------------------------------------------------
// The operator space as a plain descriptor
// ---------------------------------------------------------------------------

SpaceDescriptor operator_space(const SpaceDescriptor& domain, const SpaceDescriptor& codomain) {
  auto dom = std::make_shared<SpaceDescriptor>(domain);
  auto cod = std::make_shared<SpaceDescriptor>(codomain);
  NormFn norm = [dom, cod](const Vector& v) {
    return operator_norm(unflatten(*dom, *cod, v)).value;
  };
  SupportFn support = [dom, cod](const Vector& v, int budget) {
    OperatorDescriptor T = unflatten(*dom, *cod, v);
    auto nrm = operator_norm(T);
    if (nrm.value <= 0.0) throw DomainError("support functionals of the zero operator");
    auto att = attainment_set(T, 1e-9, std::max(8, budget / 4), 11);
    SupportSample s;
    s.exhaustive = false;
    for (auto& x : att.members) {
      Vector w = T.apply(x);
      double nw = cod->norm(w);
      if (nw < nrm.value * (1.0 - 1e-9)) continue;
      SupportSample face;
      try {
        face = cod->support_functionals((1.0 / nw) * w, 4);
      } catch (const CapabilityError&) {
        continue;
      }
      int used = 0;
      for (auto& ystar : face.members) {
        // phi(B) = y*(Bx), flattened row-major
        Functional phi(dom->dim() * cod->dim());
        for (int i = 0; i < cod->dim(); ++i)
          for (int j = 0; j < dom->dim(); ++j) phi[i * dom->dim() + j] = ystar[i] * x[j];
        s.members.push_back(std::move(phi));
        if (++used >= 4) break;
      }
      if (s.members.size() >= std::size_t(std::max(16, budget))) break;
    }
    if (s.members.empty()) throw DiagnosticError("no attaining pair for the operator face");
    return s;
  };
  std::string label = "L(" + domain.label() + "," + codomain.label() + ")";
  return SpaceDescriptor::custom(domain.field(), domain.dim() * codomain.dim(), label, norm,
                                 support);
}

// ---------------------------------------------------------------------------
// Orthogonality with respect to the operator norm
// ---------------------------------------------------------------------------

namespace {

struct PairSample {
  std::vector<Vector> xs;
  std::vector<Functional> ystars;  // parallel to xs
  std::vector<double> scores;      // Re y*(T x)
  std::vector<Scalar> values;      // y*(A x)
};

// Near-attaining (x, y*) pairs for T, with values of A recorded alongside.
PairSample collect_pairs(const OperatorDescriptor& T, const OperatorDescriptor& A, int budget,
                         std::uint64_t seed) {
  const auto& X = T.domain;
  const auto& Y = T.codomain;
  PairSample out;
  std::vector<Vector> xs;
  auto att = attainment_set(T, 0.25, std::max(16, budget / 4), seed);
  xs.insert(xs.end(), att.members.begin(), att.members.end());
  try {
    auto ext = X.ball_extreme_points(16, 4096);
    for (std::size_t i = 0; i < ext.size() && i < 64; ++i) xs.push_back(ext[i]);
  } catch (const CapabilityError&) {
  }
  SphereSampler sampler(X.field(), X.dim(), seed ^ 0x51ull);
  for (int k = 0; k < budget; ++k) {
    Vector x = sampler.next();
    double n = X.norm(x);
    if (n > 1e-12) xs.push_back((1.0 / n) * x);
  }

  std::vector<Functional> dual_ext;
  try {
    dual_ext = Y.dual_extreme_points(16, 4096);
    if (dual_ext.size() > 64) dual_ext.resize(64);
  } catch (const CapabilityError&) {
  }

  for (auto& x : xs) {
    Vector tx = T.apply(x);
    double ntx = Y.norm(tx);
    Vector ax = A.apply(x);
    if (ntx > 1e-14) {
      try {
        auto face = Y.support_functionals((1.0 / ntx) * tx, 4);
        int used = 0;
        for (auto& ystar : face.members) {
          out.xs.push_back(x);
          out.ystars.push_back(ystar);
          out.scores.push_back((ystar(tx)).real());
          out.values.push_back(ystar(ax));
          if (++used >= 4) break;
        }
      } catch (const CapabilityError&) {
      } catch (const DiagnosticError&) {
      }
    }
    for (auto& ystar : dual_ext) {
      out.xs.push_back(x);
      out.ystars.push_back(ystar);
      out.scores.push_back((ystar(tx)).real());
      out.values.push_back(ystar(ax));
    }
  }
  return out;
}

OrthoVerdict ladder_verdict(Field field, const std::vector<double>& scores,
                            const std::vector<Scalar>& values, double top,
                            const DeltaLadder& ladder_in, double tol) {
  DeltaLadder ladder = ladder_in;
  if (ladder.deltas.empty()) ladder = DeltaLadder::standard(4, 14);
  OrthoVerdict v;
  v.exhaustive = false;
  std::vector<Scalar> last_rung;
  for (double d : ladder.deltas) {
    std::vector<Scalar> rung;
    for (std::size_t i = 0; i < scores.size(); ++i)
      if (scores[i] > top * (1.0 - d)) rung.push_back(values[i]);
    if (rung.empty()) {
      if (last_rung.empty())
        throw DiagnosticError("empty rung: sampler found no near-attaining pairs");
      break;
    }
    auto cert = zero_in_conv(ScalarSet{field, rung}, tol);
    v.rung_distances.push_back(cert.hull_distance);
    last_rung = std::move(rung);
  }
  auto cert = zero_in_conv(ScalarSet{field, last_rung}, tol);
  v.decision = cert.inside();
  v.margin = -cert.hull_distance;
  v.certificate = cert;
  return v;
}

}  // namespace

OrthoVerdict op_bj_general(const OperatorDescriptor& T, const OperatorDescriptor& A,
                           const DeltaLadder& ladder, int budget, std::uint64_t seed, double tol) {
  auto nT = operator_norm(T);
  if (nT.value <= 0.0) throw DomainError("T must be nonzero");
  auto nA = operator_norm(A);
  OrthoVerdict v;
  if (nA.value <= 0.0) {
    v.decision = true;
    v.note = "A = 0";
    return v;
  }
  OperatorDescriptor Th(T.domain, T.codomain, T.m / nT.value);
  OperatorDescriptor Ah(A.domain, A.codomain, A.m / nA.value);
  auto pairs = collect_pairs(Th, Ah, budget, seed);
  v = ladder_verdict(T.domain.field(), pairs.scores, pairs.values, 1.0, ladder, tol);
  v.margin *= nA.value;
  return v;
}

OrthoVerdict op_bj_extreme(const OperatorDescriptor& T, const OperatorDescriptor& A, double tol) {
  const auto& X = T.domain;
  const auto& Y = T.codomain;
  if (!X.ball_enumerable() || !Y.dual_enumerable())
    throw CapabilityError("extreme-point test needs enumerable ball and dual extremes");
  auto nA = operator_norm(A);
  OrthoVerdict v;
  if (nA.value <= 0.0) {
    v.decision = true;
    v.note = "A = 0";
    return v;
  }
  auto xs = X.ball_extreme_points();
  auto duals = Y.dual_extreme_points();
  // the operator norm over these spaces is exactly the max over the pair grid
  double top = 0.0;
  std::vector<std::pair<std::size_t, std::size_t>> idx;
  std::vector<Scalar> tvals;
  for (std::size_t a = 0; a < xs.size(); ++a) {
    Vector tx = T.apply(xs[a]);
    for (std::size_t b = 0; b < duals.size(); ++b) {
      Scalar tv = duals[b](tx);
      top = std::max(top, std::abs(tv));
      idx.emplace_back(a, b);
      tvals.push_back(tv);
    }
  }
  if (top <= 0.0) throw DomainError("T must be nonzero");
  std::vector<Scalar> values;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (std::abs(tvals[k]) < top * (1.0 - 1e-9)) continue;
    // rotate x so that y*(Tx) = ||T|| exactly; the value rotates alongside
    Scalar phase = std::conj(sign_of(tvals[k]));
    values.push_back(phase * duals[idx[k].second](A.apply(xs[idx[k].first])) / nA.value);
  }
  if (values.empty()) throw DiagnosticError("no attaining extreme pair");
  auto cert = zero_in_conv(ScalarSet{X.field(), values}, tol);
  v.decision = cert.inside();
  v.margin = -cert.hull_distance * nA.value;
  v.certificate = cert;
  v.exhaustive = X.field() == Field::Real;
  return v;
}

// ---------------------------------------------------------------------------
// Hilbert-space criteria
// ---------------------------------------------------------------------------

namespace {

void require_hilbert(const OperatorDescriptor& T) {
  if (!T.domain.is_hilbert() || !T.codomain.is_hilbert())
    throw CapabilityError("this criterion requires Hilbert domain and codomain");
}

// Distance from 0 to the field of values {c* K c : |c| = 1} via the support
// function h(theta) = lambda_max(Herm(e^{i theta} K)).
double fov_distance(const Eigen::MatrixXcd& K, bool complex_field) {
  if (K.rows() == 1) return std::abs(K(0, 0));
  if (!complex_field) {
    Eigen::MatrixXcd S = 0.5 * (K + K.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(S);
    double lo = es.eigenvalues()(0), hi = es.eigenvalues()(es.eigenvalues().size() - 1);
    if (lo <= 0.0 && hi >= 0.0) return 0.0;
    return std::min(std::abs(lo), std::abs(hi));
  }
  auto h = [&](double theta) {
    Eigen::MatrixXcd R = Scalar(std::cos(theta), std::sin(theta)) * K;
    return lambda_max_hermitian(0.5 * (R + R.adjoint()));
  };
  const int g = 720;
  double hmin = kInfinity, arg = 0.0;
  for (int k = 0; k < g; ++k) {
    double th = 2.0 * M_PI * k / g;
    double v = h(th);
    if (v < hmin) {
      hmin = v;
      arg = th;
    }
  }
  auto m = golden_section_minimize(h, arg - 2.0 * M_PI / g, arg + 2.0 * M_PI / g, 1e-10);
  hmin = std::min(hmin, m.value);
  return std::max(0.0, -hmin);
}

// Direct minimization of |c* K c| over the unit sphere for a witness.
Eigen::VectorXcd fov_zero_witness(const Eigen::MatrixXcd& K, bool complex_field) {
  const int r = int(K.rows());
  if (r == 1) return Eigen::VectorXcd::Ones(1);
  int params = complex_field ? 2 * r : r;
  auto unpack = [&](const std::vector<double>& t) {
    Eigen::VectorXcd c(r);
    for (int i = 0; i < r; ++i)
      c(i) = complex_field ? Scalar(t[2 * i], t[2 * i + 1]) : Scalar(t[i], 0.0);
    double n = c.norm();
    if (n < 1e-14)
      c = Eigen::VectorXcd::Unit(r, 0);
    else
      c /= n;
    return c;
  };
  auto objective = [&](const std::vector<double>& t) {
    Eigen::VectorXcd c = unpack(t);
    return std::abs(Scalar(c.adjoint() * (K * c)));
  };
  Rng rng(3);
  MinimumND best;
  best.value = kInfinity;
  for (int s = 0; s < 12; ++s) {
    std::vector<double> start(params);
    for (auto& t : start) t = rng.normal();
    auto m = nelder_mead_minimize(objective, start, 0.5, 1e-14, 500);
    if (m.value < best.value) best = m;
  }
  return unpack(best.x);
}

}  // namespace

OrthoVerdict bhatia_semrl(const OperatorDescriptor& T, const OperatorDescriptor& A, double tol) {
  require_hilbert(T);
  require_hilbert(A);
  auto nT = operator_norm(T);
  auto nA = operator_norm(A);
  if (nT.value <= 0.0) throw DomainError("T must be nonzero");
  OrthoVerdict v;
  if (nA.value <= 0.0) {
    v.decision = true;
    v.note = "A = 0";
    return v;
  }
  Eigen::MatrixXcd Tp = plain_matrix(T) / nT.value;
  Eigen::MatrixXcd Ap = plain_matrix(A) / nA.value;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Tp, Eigen::ComputeFullV);
  auto sv = svd.singularValues();
  int r = 0;
  while (r < sv.size() && sv(r) >= sv(0) * (1.0 - 1e-10)) ++r;
  Eigen::MatrixXcd Q = svd.matrixV().leftCols(r);
  Eigen::MatrixXcd K = Q.adjoint() * (Ap.adjoint() * Tp) * Q;

  bool complex_field = T.domain.field() == Field::Complex;
  double dist = fov_distance(K, complex_field);
  v.decision = dist <= tol;
  v.margin = -dist * nA.value * nT.value;
  v.exhaustive = true;
  v.rung_distances = {dist};
  if (v.decision) {
    Eigen::VectorXcd c = fov_zero_witness(K, complex_field);
    Eigen::VectorXcd x = Q * c;
    auto ddom = T.domain.weight_scale();
    Vector w = from_eigen(x);
    for (int i = 0; i < T.domain.dim(); ++i) w[i] /= ddom[i];
    v.witness_vector = w;
    v.note = "witness attains ||Tx|| = ||T|| and <Tx,Ax> ~ 0";
  }
  return v;
}

OrthoVerdict bs_sequential(const OperatorDescriptor& T, const OperatorDescriptor& A, int budget,
                           std::uint64_t seed, double tol) {
  require_hilbert(T);
  require_hilbert(A);
  auto nT = operator_norm(T);
  auto nA = operator_norm(A);
  if (nT.value <= 0.0) throw DomainError("T must be nonzero");
  OrthoVerdict v;
  if (nA.value <= 0.0) {
    v.decision = true;
    v.note = "A = 0";
    return v;
  }
  Eigen::MatrixXcd Tp = plain_matrix(T) / nT.value;
  Eigen::MatrixXcd Ap = plain_matrix(A) / nA.value;
  const int n = int(Tp.cols());
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(Tp, Eigen::ComputeFullV);
  auto sv = svd.singularValues();
  Eigen::MatrixXcd V = svd.matrixV();
  Eigen::MatrixXcd K = V.adjoint() * (Ap.adjoint() * Tp) * V;
  bool complex_field = T.domain.field() == Field::Complex;
  int params = complex_field ? 2 * n : n;

  auto band_norm = [&](const Eigen::VectorXcd& c) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += sv(i) * sv(i) * std::norm(c(i));
    return std::sqrt(s);
  };
  auto unpack = [&](const std::vector<double>& t) {
    Eigen::VectorXcd c(n);
    for (int i = 0; i < n; ++i)
      c(i) = complex_field ? Scalar(t[2 * i], t[2 * i + 1]) : Scalar(t[i], 0.0);
    double nn = c.norm();
    if (nn < 1e-14)
      c = Eigen::VectorXcd::Unit(n, 0);
    else
      c /= nn;
    return c;
  };

  Rng rng(seed);
  DeltaLadder etas = DeltaLadder::standard(4, 14);
  double final_min = kInfinity;
  for (double eta : etas.deltas) {
    double floor_val = std::max(0.0, 1.0 - eta);
    auto objective = [&](const std::vector<double>& t) {
      Eigen::VectorXcd c = unpack(t);
      double band = band_norm(c);
      double penalty = std::max(0.0, floor_val - band);
      return std::abs(Scalar(c.adjoint() * (K * c))) + 100.0 * penalty * penalty;
    };
    double best = kInfinity;
    int starts = std::max(6, budget / 64);
    for (int s = 0; s < starts; ++s) {
      std::vector<double> start(params, 0.0);
      // blend the top direction with noise, projected into the band
      start[0] = 1.0;
      for (auto& t : start) t += 0.3 * rng.normal();
      auto m = nelder_mead_minimize(objective, start, 0.35, 1e-13, 400);
      Eigen::VectorXcd c = unpack(m.x);
      if (band_norm(c) >= floor_val - 1e-9)
        best = std::min(best, std::abs(Scalar(c.adjoint() * (K * c))));
    }
    v.rung_distances.push_back(best);
    final_min = best;
  }
  v.decision = final_min <= tol;
  v.margin = -final_min * nA.value * nT.value;
  v.exhaustive = false;
  v.note = "band ladder minima in rung_distances, eta = 2^-4..2^-14";
  return v;
}

// ---------------------------------------------------------------------------
// Numerical radius
// ---------------------------------------------------------------------------

namespace {

void require_square(const OperatorDescriptor& T) {
  if (!T.square() || T.domain.dim() != T.codomain.dim())
    throw DomainError("numerical radius needs a square operator on a single space");
}

}  // namespace

VRadiusResult v_radius(const OperatorDescriptor& T) {
  require_square(T);
  const auto& X = T.domain;
  VRadiusResult res;

  if (X.is_hilbert()) {
    Eigen::MatrixXcd M = plain_matrix(T);
    if (X.field() == Field::Real) {
      Eigen::MatrixXcd S = 0.5 * (M + M.adjoint());
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(S);
      double lo = es.eigenvalues()(0), hi = es.eigenvalues()(es.eigenvalues().size() - 1);
      res.value = std::max(std::abs(lo), std::abs(hi));
      Eigen::VectorXcd c =
          std::abs(lo) > std::abs(hi) ? es.eigenvectors().col(0)
                                      : es.eigenvectors().col(es.eigenvalues().size() - 1);
      StatePair w;
      w.x = from_eigen(c);
      Functional xs(X.dim());
      for (int i = 0; i < X.dim(); ++i) xs[i] = std::conj(c(i));
      w.xstar = xs;
      res.witness = w;
    } else {
      const int g = 360;
      double best = -kInfinity, arg = 0.0;
      for (int k = 0; k < g; ++k) {
        double th = 2.0 * M_PI * k / g;
        Eigen::MatrixXcd R = Scalar(std::cos(th), std::sin(th)) * M;
        double v = lambda_max_hermitian(0.5 * (R + R.adjoint()));
        if (v > best) {
          best = v;
          arg = th;
        }
      }
      auto m = golden_section_minimize(
          [&](double th) {
            Eigen::MatrixXcd R = Scalar(std::cos(th), std::sin(th)) * M;
            return -lambda_max_hermitian(0.5 * (R + R.adjoint()));
          },
          arg - 2.0 * M_PI / g, arg + 2.0 * M_PI / g, 1e-11);
      double theta = m.x;
      Eigen::MatrixXcd R = Scalar(std::cos(theta), std::sin(theta)) * M;
      Eigen::VectorXcd c;
      res.value = std::max(best, lambda_max_hermitian(0.5 * (R + R.adjoint()), &c));
      StatePair w;
      w.x = from_eigen(c);
      Functional xs(X.dim());
      for (int i = 0; i < X.dim(); ++i) xs[i] = std::conj(c(i));
      w.xstar = xs;
      res.witness = w;
    }
    res.exhaustive = true;  // rotation trick is exact up to the refined grid
    return res;
  }

  double p = 0.0;
  if (X.field() == Field::Complex && X.is_pnorm(&p) && (p == 1.0 || p == kInfinity)) {
    // closed forms: phases of the free dual coordinates align with the
    // off-diagonal entries
    double best = -1.0;
    int arg = 0;
    for (int k = 0; k < X.dim(); ++k) {
      double s = 0.0;
      for (int i = 0; i < X.dim(); ++i) {
        if (i == k) continue;
        s += std::abs(p == 1.0 ? T.m(i, k) : T.m(k, i));
      }
      s += std::abs(T.m(k, k));
      if (s > best) {
        best = s;
        arg = k;
      }
    }
    res.value = best;
    res.exhaustive = true;
    StatePair w;
    if (p == 1.0) {
      w.x = Vector::basis(X.dim(), arg);
      Functional xs(X.dim());
      Scalar lead = sign_of(T.m(arg, arg));
      xs[arg] = 1.0;
      for (int i = 0; i < X.dim(); ++i)
        if (i != arg) xs[i] = lead * std::conj(sign_of(T.m(i, arg)));
      w.xstar = xs;
    } else {
      Vector x(X.dim());
      Scalar lead = sign_of(T.m(arg, arg));
      x[arg] = 1.0;
      for (int j = 0; j < X.dim(); ++j)
        if (j != arg) x[j] = lead * std::conj(sign_of(T.m(arg, j)));
      w.x = x;
      Functional xs(X.dim());
      xs[arg] = 1.0;
      w.xstar = xs;
    }
    res.witness = w;
    return res;
  }

  if (X.field() == Field::Real && X.dim() == 2 && X.is_pnorm(&p) && p > 1.0 && p != kInfinity) {
    bool plain = true;
    for (double wv : X.weight_scale())
      if (wv != 1.0) plain = false;
    if (plain) {
      // one-parameter sphere: maximize |J(x_t)(T x_t)| over the angle
      auto sgnpow = [&](double v) {
        return v == 0.0 ? 0.0 : (v > 0 ? 1.0 : -1.0) * std::pow(std::abs(v), p - 1.0);
      };
      auto state_value = [&](double t) {
        double c = std::cos(t), s = std::sin(t);
        double n = std::pow(std::pow(std::abs(c), p) + std::pow(std::abs(s), p), 1.0 / p);
        double x0 = c / n, x1 = s / n;
        double tx0 = (T.m(0, 0) * x0 + T.m(0, 1) * x1).real();
        double tx1 = (T.m(1, 0) * x0 + T.m(1, 1) * x1).real();
        return std::abs(sgnpow(x0) * tx0 + sgnpow(x1) * tx1);
      };
      const int g = 720;
      double best = -1.0, arg = 0.0;
      for (int k = 0; k < g; ++k) {
        double t = M_PI * k / g;  // states repeat under x -> -x
        double v = state_value(t);
        if (v > best) {
          best = v;
          arg = t;
        }
      }
      auto polish = golden_section_minimize([&](double t) { return -state_value(t); },
                                            arg - M_PI / g, arg + M_PI / g, 1e-12);
      if (-polish.value > best) {
        best = -polish.value;
        arg = polish.x;
      }
      res.value = best;
      res.exhaustive = false;  // grid-and-polish scan of the state circle
      double c = std::cos(arg), s = std::sin(arg);
      double n = std::pow(std::pow(std::abs(c), p) + std::pow(std::abs(s), p), 1.0 / p);
      Vector x(2);
      x[0] = c / n;
      x[1] = s / n;
      StatePair w{x, X.support_functionals(x).members.front()};
      res.witness = w;
      return res;
    }
  }

  if (X.field() == Field::Real && X.ball_enumerable() && X.dual_enumerable()) {
    // vertex pairs: extreme states (x a ball vertex, x* a face extreme)
    double best = -1.0;
    StatePair bw;
    for (auto& v : X.ball_extreme_points()) {
      auto face = X.support_functionals(v);
      for (auto& xs : face.members) {
        double val = std::abs(xs(T.apply(v)));
        if (val > best) {
          best = val;
          bw = StatePair{v, xs};
        }
      }
    }
    res.value = best;
    res.exhaustive = true;
    res.witness = bw;
    return res;
  }

  // sampled states (x, duality map of x) with ascent polish
  SphereSampler sampler(X.field(), X.dim(), 17);
  double best = -1.0;
  StatePair bw;
  auto eval_state = [&](const Vector& x0) {
    double nx = X.norm(x0);
    if (nx <= 1e-12) return;
    Vector x = (1.0 / nx) * x0;
    SupportSample face;
    try {
      face = X.support_functionals(x, 4);
    } catch (...) {
      return;
    }
    for (auto& xs : face.members) {
      double val = std::abs(xs(T.apply(x)));
      if (val > best) {
        best = val;
        bw = StatePair{x, xs};
      }
    }
  };
  for (int i = 0; i < X.dim(); ++i) eval_state(Vector::basis(X.dim(), i));
  for (int k = 0; k < 512; ++k) eval_state(sampler.next());
  // Nelder-Mead polish on sphere coordinates
  bool complex_field = X.field() == Field::Complex;
  int params = complex_field ? 2 * X.dim() : X.dim();
  auto objective = [&](const std::vector<double>& t) {
    Vector x(X.dim());
    for (int i = 0; i < X.dim(); ++i)
      x[i] = complex_field ? Scalar(t[2 * i], t[2 * i + 1]) : Scalar(t[i], 0.0);
    double nx = X.norm(x);
    if (nx < 1e-12) return 0.0;
    x = (1.0 / nx) * x;
    try {
      auto f = X.support_functionals(x, 1);
      return -std::abs(f.members.front()(T.apply(x)));
    } catch (...) {
      return 0.0;
    }
  };
  std::vector<double> start(params, 0.0);
  for (int i = 0; i < X.dim(); ++i) {
    start[complex_field ? 2 * i : i] = bw.x.dim() ? bw.x[i].real() : 0.0;
    if (complex_field) start[2 * i + 1] = bw.x.dim() ? bw.x[i].imag() : 0.0;
  }
  auto m = nelder_mead_minimize(objective, start, 0.2, 1e-13, 400);
  if (-m.value > best) {
    best = -m.value;
    Vector x(X.dim());
    for (int i = 0; i < X.dim(); ++i)
      x[i] = complex_field ? Scalar(m.x[2 * i], m.x[2 * i + 1]) : Scalar(m.x[i], 0.0);
    double nx = X.norm(x);
    x = (1.0 / nx) * x;
    bw = StatePair{x, X.support_functionals(x, 1).members.front()};
  }
  res.value = best;
  res.exhaustive = false;
  res.witness = bw;
  return res;
}

namespace {

// States (x, x*) with their T- and A-values for the v-orthogonality ladder.
void collect_states(const OperatorDescriptor& T, const OperatorDescriptor& A, int budget,
                    std::uint64_t seed, std::vector<double>& scores, std::vector<Scalar>& values) {
  const auto& X = T.domain;
  auto push_state = [&](const Vector& x, const Functional& xs) {
    Scalar tv = xs(T.apply(x));
    Scalar av = xs(A.apply(x));
    scores.push_back(std::abs(tv));
    values.push_back(av * std::conj(tv));
  };
  auto push_vector = [&](const Vector& x0) {
    double nx = X.norm(x0);
    if (nx <= 1e-12) return;
    Vector x = (1.0 / nx) * x0;
    try {
      auto face = X.support_functionals(x, 4);
      int used = 0;
      for (auto& xs : face.members) {
        push_state(x, xs);
        if (++used >= 8) break;
      }
    } catch (...) {
    }
  };

  if (X.field() == Field::Real && X.ball_enumerable() && X.dual_enumerable()) {
    for (auto& v : X.ball_extreme_points()) {
      auto face = X.support_functionals(v);
      for (auto& xs : face.members) push_state(v, xs);
    }
  }
  auto vr = v_radius(T);
  if (vr.witness) push_state(vr.witness->x, vr.witness->xstar);
  for (int i = 0; i < X.dim(); ++i) push_vector(Vector::basis(X.dim(), i));
  SphereSampler sampler(X.field(), X.dim(), seed);
  for (int k = 0; k < budget; ++k) push_vector(sampler.next());
}

}  // namespace

OrthoVerdict v_orthogonal(const OperatorDescriptor& T, const OperatorDescriptor& A,
                          const DeltaLadder& ladder, int budget, std::uint64_t seed, double tol) {
  require_square(T);
  require_square(A);
  auto vT = v_radius(T);
  auto nA = operator_norm(A);
  OrthoVerdict v;
  if (vT.value <= tol * std::max(1.0, operator_norm(T).value)) {
    v.decision = true;
    v.note = "degenerate: v(T) ~ 0, T lies in the seminorm kernel";
    return v;
  }
  if (nA.value <= 0.0) {
    v.decision = true;
    v.note = "A = 0";
    return v;
  }
  OperatorDescriptor Th(T.domain, T.codomain, T.m / vT.value);
  OperatorDescriptor Ah(A.domain, A.codomain, A.m / nA.value);
  std::vector<double> scores;
  std::vector<Scalar> values;
  collect_states(Th, Ah, budget, seed, scores, values);
  v = ladder_verdict(T.domain.field(), scores, values, 1.0, ladder, tol);
  v.exhaustive = T.domain.field() == Field::Real && T.domain.ball_enumerable() &&
                 T.domain.dual_enumerable();
  v.margin *= nA.value * vT.value;
  return v;
}

double v_with_respect_to(const OperatorDescriptor& G, const OperatorDescriptor& T,
                         const DeltaLadder& ladder_in, int budget, std::uint64_t seed) {
  auto nG = operator_norm(G);
  if (std::abs(nG.value - 1.0) > 1e-6) throw DomainError("G must have norm one");
  auto pairs = collect_pairs(G, T, budget, seed);
  DeltaLadder ladder = ladder_in;
  if (ladder.deltas.empty()) ladder = DeltaLadder::standard(4, 14);
  double result = 0.0;
  bool any = false;
  for (double d : ladder.deltas) {
    double sup = -1.0;
    for (std::size_t i = 0; i < pairs.scores.size(); ++i)
      if (pairs.scores[i] > 1.0 - d) sup = std::max(sup, std::abs(pairs.values[i]));
    if (sup < 0.0) break;
    result = sup;
    any = true;
  }
  if (!any) throw DiagnosticError("no states found for v_G");
  return result;
}

// ---------------------------------------------------------------------------
// Numerical index
// ---------------------------------------------------------------------------

NumericalIndexResult numerical_index(const SpaceDescriptor& X, const IndexBudget& budget,
                                     std::uint64_t seed) {
  const int n = X.dim();
  const bool complex_field = X.field() == Field::Complex;
  auto make_op = [&](const std::vector<double>& t) {
    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        int k = i * n + j;
        m(i, j) = complex_field ? Scalar(t[2 * k], t[2 * k + 1]) : Scalar(t[k], 0.0);
      }
    return OperatorDescriptor(X, X, m);
  };
  const int params = (complex_field ? 2 : 1) * n * n;
  auto ratio = [&](const std::vector<double>& t) {
    auto T = make_op(t);
    double nrm = operator_norm(T).value;
    if (nrm < 1e-9) return 2.0;  // worse than any true ratio
    return v_radius(T).value / nrm;
  };

  Rng rng(seed);
  std::vector<double> best_t(params, 0.0);
  best_t[0] = 1.0;
  double best = ratio(best_t);
  for (int r = 0; r < budget.restarts; ++r) {
    std::vector<double> t(params);
    for (auto& ti : t) ti = rng.normal();
    double val = ratio(t);
    // compass search over matrix entries
    double h = 0.5;
    int sweeps = 0;
    while (h > 1e-5 && sweeps++ < 400) {
      bool improved = false;
      for (int k = 0; k < params; ++k) {
        for (double s : {h, -h}) {
          auto t2 = t;
          t2[k] += s;
          double v2 = ratio(t2);
          if (v2 < val - 1e-10 * (1.0 + std::abs(val))) {
            t = t2;
            val = v2;
            improved = true;
          }
        }
      }
      if (!improved) h *= 0.5;
    }
    if (val < best) {
      best = val;
      best_t = t;
    }
  }
  auto polished = nelder_mead_minimize(ratio, best_t, 0.05, 1e-13, 600);
  if (polished.value < best) {
    best = polished.value;
    best_t = polished.x;
  }

  NumericalIndexResult out{best, make_op(best_t), std::nullopt, 0};
  // re-certify the witness through the exact radius path
  {
    auto& T = out.witness;
    double nrm = operator_norm(T).value;
    if (nrm > 1e-9) out.upper = v_radius(T).value / nrm;
  }

  // entry-grid bound for small real spaces with exhaustive v evaluation
  if (!complex_field && n <= 3 &&
      (X.is_hilbert() || (X.ball_enumerable() && X.dual_enumerable()))) {
    int g = std::max(2, budget.grid_per_entry);
    if (n == 3) g = std::min(g, 3);
    std::vector<double> t(n * n, -1.0);
    double lo = kInfinity;
    int count = 0;
    std::function<void(int)> walk = [&](int k) {
      if (k == n * n) {
        double r = ratio(t);
        if (r <= 1.0 + 1e-12) {  // skip near-zero operators reported as 2
          lo = std::min(lo, r);
          ++count;
        }
        return;
      }
      for (int i = 0; i < g; ++i) {
        t[k] = -1.0 + 2.0 * i / (g - 1);
        walk(k + 1);
      }
    };
    walk(0);
    if (count > 0) {
      out.grid_lower = lo;
      out.grid_points = count;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Smoothness of operators and the rank-one construction
// ---------------------------------------------------------------------------

SmoothOperatorReport smooth_operator_sufficient(const OperatorDescriptor& T) {
  SmoothOperatorReport rep;
  auto nrm = operator_norm(T);
  if (nrm.value <= 0.0) {
    rep.reason = "zero operator";
    return rep;
  }
  const auto& X = T.domain;
  const auto& Y = T.codomain;
  std::optional<Vector> x0;
  std::string reason;

  if (X.is_hilbert() && Y.is_hilbert()) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(plain_matrix(T));
    auto sv = svd.singularValues();
    if (sv.size() >= 2 && sv(0) - sv(1) <= 1e-8 * sv(0))
      reason = "top singular value is not simple";
    else
      x0 = attainment_set(T, 1e-12, 4, 1).members.front();
  }
  double p = 0.0;
  if (!x0 && X.is_pnorm(&p) && p == 1.0) {
    auto d = X.weight_scale();
    double best = -1.0, second = -1.0;
    int arg = 0;
    for (int j = 0; j < X.dim(); ++j) {
      double v = Y.norm(T.apply((Scalar(1.0 / d[j])) * Vector::basis(X.dim(), j)));
      if (v > best) {
        second = best;
        best = v;
        arg = j;
      } else {
        second = std::max(second, v);
      }
    }
    if (best - second <= 1e-8 * best)
      reason = "no unique maximal column";
    else
      x0 = (Scalar(1.0 / d[arg])) * Vector::basis(X.dim(), arg);
  }
  if (!x0) {
    // rank-one operators attain exactly at the norming point of their row
    // functional; uniqueness holds on strictly convex domains
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(T.m);
    auto sv = svd.singularValues();
    bool rank_one = sv.size() < 2 || sv(1) <= 1e-12 * sv(0);
    double pd = 0.0;
    bool strictly_convex = X.is_pnorm(&pd) && pd > 1.0 && pd != kInfinity;
    if (rank_one && strictly_convex) {
      int i0 = 0;
      double bestrow = -1.0;
      for (int i = 0; i < Y.dim(); ++i) {
        double r = T.m.row(i).norm();
        if (r > bestrow) {
          bestrow = r;
          i0 = i;
        }
      }
      Functional phi(X.dim());
      for (int j = 0; j < X.dim(); ++j) phi[j] = T.m(i0, j);
      x0 = X.norming_point(phi);
    } else if (reason.empty()) {
      reason = rank_one ? "domain attainment not provably unique" : "no exact uniqueness path";
    }
  }

  if (!x0) {
    rep.reason = reason;
    return rep;
  }
  rep.x0 = *x0;
  Vector tx = T.apply(*x0);
  rep.image_smooth = Y.is_smooth_point(tx);
  if (!rep.image_smooth.smooth) {
    rep.reason = "Tx0 is not a smooth point of the codomain";
    return rep;
  }
  rep.applies = true;
  try {
    auto opspace = operator_space(X, Y);
    rep.operator_space_smooth = opspace.is_smooth_point(flatten(T));
  } catch (const std::exception&) {
  }
  return rep;
}

RankOneReport rank_one_orthogonal_smooth(const OperatorDescriptor& A, const Vector& x0,
                                         const Functional& x0star, const Vector& u0, double tol) {
  RankOneReport rep;
  const auto& X = A.domain;
  const auto& Y = A.codomain;

  try {
    if (!X.is_strongly_exposed(x0)) rep.failed_hypotheses.push_back("x0 not strongly exposed");
  } catch (const std::exception& e) {
    rep.failed_hypotheses.push_back(std::string("strong exposure unverifiable: ") + e.what());
  }
  try {
    if (std::abs(X.dual_norm(x0star) - 1.0) > 1e-7)
      rep.failed_hypotheses.push_back("x0* is not norm-one");
  } catch (const CapabilityError&) {
  }
  if (std::abs(x0star(x0) - Scalar(1.0)) > 1e-7)
    rep.failed_hypotheses.push_back("x0*(x0) != 1");
  double nu0 = Y.norm(u0);
  if (nu0 <= 0.0) {
    rep.failed_hypotheses.push_back("u0 = 0");
    return rep;
  }
  Vector u0h = (1.0 / nu0) * u0;
  if (!Y.is_smooth_point(u0h).smooth) rep.failed_hypotheses.push_back("u0 not smooth");
  Vector ax0 = A.apply(x0);
  auto orth = bj_orthogonal(Y, u0h, ax0, tol);
  if (!orth.decision) rep.failed_hypotheses.push_back("u0 not orthogonal to A x0");
  if (!rep.failed_hypotheses.empty()) return rep;

  Eigen::MatrixXcd m(Y.dim(), X.dim());
  for (int i = 0; i < Y.dim(); ++i)
    for (int j = 0; j < X.dim(); ++j) m(i, j) = u0h[i] * x0star[j];
  rep.T = OperatorDescriptor(X, Y, std::move(m));
  rep.orthogonal_to_A = op_bj_general(*rep.T, A);
  rep.smooth = smooth_operator_sufficient(*rep.T);
  rep.ok = rep.orthogonal_to_A->decision && rep.smooth->applies;
  if (!rep.ok) {
    if (!rep.orthogonal_to_A->decision)
      rep.failed_hypotheses.push_back("constructed T failed the orthogonality check");
    if (!rep.smooth->applies)
      rep.failed_hypotheses.push_back("constructed T failed the smoothness check");
  }
  return rep;
}

namespace {

// Strongly exposed candidates with their exposing functionals.
std::vector<std::pair<Vector, Functional>> strongly_exposed_candidates(const SpaceDescriptor& X,
                                                                       int budget,
                                                                       std::uint64_t seed) {
  std::vector<std::pair<Vector, Functional>> out;
  double p = 0.0;
  if (X.is_pnorm(&p) && p > 1.0 && p != kInfinity) {
    // every sphere point is strongly exposed by its duality map
    SphereSampler sampler(X.field(), X.dim(), seed);
    for (int i = 0; i < X.dim(); ++i) {
      Vector e = Vector::basis(X.dim(), i);
      out.emplace_back(e, X.support_functionals(e).members.front());
    }
    for (int k = 0; k < std::min(budget, 8); ++k) {
      Vector x = sampler.next();
      double nx = X.norm(x);
      if (nx <= 1e-12) continue;
      x = (1.0 / nx) * x;
      out.emplace_back(x, X.support_functionals(x).members.front());
    }
    return out;
  }
  if (X.is_pnorm(&p) && p == 1.0) {
    for (int i = 0; i < X.dim(); ++i)
      out.emplace_back(Vector::basis(X.dim(), i), Functional::basis(X.dim(), i));
    return out;
  }
  if (X.field() == Field::Real && X.ball_enumerable()) {
    auto vertices = X.ball_extreme_points();
    auto duals = X.dual_extreme_points();
    for (auto& v : vertices) {
      // average of the active signed dual extremes strictly exposes a
      // nondegenerate vertex
      Functional f(X.dim());
      int active = 0;
      for (auto& psi : duals) {
        Scalar val = psi(v);
        if (std::abs(val - Scalar(1.0)) < 1e-9) {
          for (int i = 0; i < X.dim(); ++i) f[i] += psi[i];
          ++active;
        }
      }
      if (active == 0) continue;
      for (int i = 0; i < X.dim(); ++i) f[i] /= double(active);
      // strictness over the remaining vertices
      bool strict = true;
      for (auto& w : vertices) {
        double dvw = 0.0;
        for (int i = 0; i < X.dim(); ++i) dvw = std::max(dvw, std::abs(v[i] - w[i]));
        if (dvw < 1e-9) continue;
        if (f(w).real() > 1.0 - 1e-9) strict = false;
      }
      if (strict) out.emplace_back(v, f);
      if (int(out.size()) >= budget) break;
    }
    return out;
  }
  return out;
}

std::optional<Vector> find_smooth_orthogonal(const SpaceDescriptor& Y, const Vector& w, int budget,
                                             std::uint64_t seed, double tol) {
  double nw = Y.norm(w);
  auto try_candidate = [&](const Vector& cand) -> std::optional<Vector> {
    double nc = Y.norm(cand);
    if (nc <= 1e-9) return std::nullopt;
    Vector ch = (1.0 / nc) * cand;
    try {
      if (!Y.is_smooth_point(ch).smooth) return std::nullopt;
    } catch (const std::exception&) {
      return std::nullopt;
    }
    if (nw > 0.0 && !bj_orthogonal(Y, ch, w, tol).decision) return std::nullopt;
    return ch;
  };
  if (nw == 0.0) {
    for (int i = 0; i < Y.dim(); ++i) {
      auto c = try_candidate(Vector::basis(Y.dim(), i));
      if (c) return c;
    }
  }
  Rng rng(seed);
  SphereSampler sampler(Y.field(), Y.dim(), seed ^ 0xabcdull);
  for (int k = 0; k < std::max(budget, 16); ++k) {
    Vector v = k < Y.dim() ? Vector::basis(Y.dim(), k) : sampler.next();
    // the best-approximation residual is orthogonal to w by construction
    Vector r = nw == 0.0 ? v : best_approximation(Y, v, w).residual;
    auto c = try_candidate(r);
    if (c) return c;
    // smooth perturbation retry for polyhedral codomains
    Vector rp = r + (Scalar(0.01) * rng.scalar(Y.field())) * Vector::basis(Y.dim(), int(rng.integer(Y.dim())));
    if (nw > 0.0) rp = best_approximation(Y, rp, w).residual;
    c = try_candidate(rp);
    if (c) return c;
  }
  return std::nullopt;
}

}  // namespace

SpearObstructionReport spear_obstruction_check(const SpaceDescriptor& X, const SpaceDescriptor& Y,
                                               const OperatorDescriptor& G, int budget,
                                               std::uint64_t seed, double tol) {
  auto nG = operator_norm(G);
  if (std::abs(nG.value - 1.0) > 1e-6) throw DomainError("G must have norm one");
  SpearObstructionReport rep;
  auto candidates = strongly_exposed_candidates(X, budget, seed);
  if (candidates.empty()) {
    rep.note = "no strongly exposed candidates available for this domain";
    return rep;
  }
  for (auto& [x0, x0star] : candidates) {
    Vector w = G.apply(x0);
    auto u0 = find_smooth_orthogonal(Y, w, budget, seed, tol);
    if (!u0) continue;
    auto built = rank_one_orthogonal_smooth(G, x0, x0star, *u0, tol);
    if (!built.ok) continue;
    rep.obstruction_found = true;
    rep.x0 = x0;
    rep.u0 = *u0;
    rep.probe = built.T;
    rep.probe_norm = operator_norm(*built.T).value;
    try {
      rep.v_G_probe = v_with_respect_to(G, *built.T);
    } catch (const DiagnosticError&) {
      rep.v_G_probe = 0.0;
    }
    // spear display deficit at the probe certifies that G is not a spear
    auto display = [&](double theta) {
      Eigen::MatrixXcd m = G.m + Scalar(std::cos(theta), std::sin(theta)) * built.T->m;
      return operator_norm(OperatorDescriptor(X, Y, m)).value;
    };
    double best = 0.0;
    if (X.field() == Field::Real) {
      best = std::max(display(0.0), display(M_PI));
    } else {
      double arg = 0.0;
      for (int k = 0; k < 64; ++k) {
        double th = 2.0 * M_PI * k / 64;
        double v = display(th);
        if (v > best) {
          best = v;
          arg = th;
        }
      }
      auto m = golden_section_minimize([&](double th) { return -display(th); },
                                       arg - M_PI / 32, arg + M_PI / 32, 1e-9);
      best = std::max(best, -m.value);
    }
    rep.spear_display_gap = best - (1.0 + rep.probe_norm);
    rep.note = "obstruction found";
    return rep;
  }
  rep.note = "no obstruction found among candidates";
  return rep;
}

}  // namespace bjo
