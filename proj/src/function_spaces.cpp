#include "banach_ortho/function_spaces.hpp"

#include <set>

namespace bjo {

SampledFunction make_sampled(SampledFunction::Adjacency adj, std::vector<Vector> values,
                             SpaceDescriptor codomain) {
  SampledFunction f{adj, {}, std::move(values), std::move(codomain)};
  if (f.values.empty()) throw DomainError("sampled function needs a non-empty grid");
  for (auto& v : f.values) {
    if (int(v.dim()) != f.codomain.dim()) throw DomainError("sampled value dimension mismatch");
    if (!all_finite(v.c)) throw DomainError("sampled value with non-finite entry");
  }
  return f;
}

double sup_norm(const SampledFunction& f) {
  if (f.values.empty()) throw DomainError("sampled function needs a non-empty grid");
  double m = 0.0;
  for (auto& v : f.values) m = std::max(m, f.codomain.norm(v));
  return m;
}

AttainmentBand attainment_set_f(const SampledFunction& f, double eta) {
  double nf = sup_norm(f);
  if (nf <= 0.0) throw DomainError("attainment set of the zero function");
  AttainmentBand band;
  const std::size_t n = f.values.size();
  std::vector<bool> in_band(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    if (f.codomain.norm(f.values[i]) >= nf - eta) {
      in_band[i] = true;
      band.indices.push_back(i);
    }
  }
  // connected components under the declared adjacency
  if (f.adjacency == SampledFunction::Adjacency::None) {
    band.components = int(band.indices.size());
    band.connected = band.indices.size() <= 1;
    return band;
  }
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!in_band[i] || comp[i] >= 0) continue;
    // walk the chain in both directions
    std::vector<std::size_t> stack{i};
    comp[i] = ncomp;
    while (!stack.empty()) {
      std::size_t a = stack.back();
      stack.pop_back();
      std::vector<std::size_t> nbrs;
      if (a + 1 < n) nbrs.push_back(a + 1);
      if (a > 0) nbrs.push_back(a - 1);
      if (f.adjacency == SampledFunction::Adjacency::Circle) {
        if (a == 0) nbrs.push_back(n - 1);
        if (a + 1 == n) nbrs.push_back(0);
      }
      for (auto b : nbrs)
        if (in_band[b] && comp[b] < 0) {
          comp[b] = ncomp;
          stack.push_back(b);
        }
    }
    ++ncomp;
  }
  band.components = ncomp;
  band.connected = ncomp == 1;
  return band;
}

OrthoVerdict c_orthogonal(const SampledFunction& f, const SampledFunction& g,
                          const DeltaLadder& ladder_in, double tol) {
  if (f.values.size() != g.values.size()) throw DomainError("grid size mismatch");
  double nf = sup_norm(f);
  if (nf <= 0.0) throw DomainError("f must be nonzero");
  double ng = sup_norm(g);
  OrthoVerdict v;
  if (ng <= 0.0) {
    v.decision = true;
    v.note = "g = 0";
    return v;
  }
  const auto& Y = f.codomain;
  // value set per grid point: y*(g(t)) over face extremes of f(t), with
  // scores ||f(t)|| feeding the band ladder
  std::vector<double> scores;
  std::vector<Scalar> values;
  for (std::size_t t = 0; t < f.values.size(); ++t) {
    double nft = Y.norm(f.values[t]);
    if (nft <= 1e-14 * nf) continue;
    SupportSample face;
    try {
      face = Y.support_functionals((1.0 / nft) * f.values[t], 16);
    } catch (const CapabilityError&) {
      throw CapabilityError("codomain must expose support functionals");
    }
    for (auto& ystar : face.members) {
      scores.push_back(nft);
      values.push_back(ystar(g.values[t]) / ng);
    }
  }
  DeltaLadder ladder = ladder_in;
  if (ladder.deltas.empty()) ladder = DeltaLadder::standard(4, 14);
  std::vector<Scalar> last;
  for (double d : ladder.deltas) {
    std::vector<Scalar> rung;
    for (std::size_t i = 0; i < scores.size(); ++i)
      if (scores[i] >= nf * (1.0 - d)) rung.push_back(values[i]);
    if (rung.empty()) break;
    auto cert = zero_in_conv(ScalarSet{Y.field(), rung}, tol);
    v.rung_distances.push_back(cert.hull_distance);
    last = std::move(rung);
  }
  if (last.empty()) throw DiagnosticError("empty attainment band");
  auto cert = zero_in_conv(ScalarSet{Y.field(), last}, tol);
  v.decision = cert.inside();
  v.margin = -cert.hull_distance * ng;
  v.certificate = cert;
  v.exhaustive = false;
  return v;
}

ConnectedAttainmentReport attainment_directional_check(const SampledFunction& f,
                                                       const SampledFunction& g, int mu_grid,
                                                       double tol, double eta) {
  ConnectedAttainmentReport rep;
  rep.band = attainment_set_f(f, eta);
  rep.orthogonal = c_orthogonal(f, g).decision;
  if (!rep.band.connected) return rep;  // statement inapplicable on the grid
  if (!rep.orthogonal) return rep;      // implication vacuous
  rep.applicable = true;
  const auto& Y = f.codomain;

  if (Y.field() == Field::Real) {
    rep.directions_checked = 1;
    for (auto t : rep.band.indices) {
      if (Y.norm(g.values[t]) <= tol ||
          bj_orthogonal(Y, f.values[t], g.values[t], tol).decision) {
        rep.single_point_witness = t;
        break;
      }
    }
    if (!rep.single_point_witness) {
      rep.violations = 1;
      rep.failed_directions.push_back(0.0);
    }
    return rep;
  }

  rep.directions_checked = mu_grid;
  for (int k = 0; k < mu_grid; ++k) {
    double ang = 2.0 * M_PI * k / mu_grid;
    Scalar mu(std::cos(ang), std::sin(ang));
    bool found = false;
    for (auto t : rep.band.indices) {
      if (Y.norm(g.values[t]) <= tol ||
          directional_orthogonal(Y, f.values[t], g.values[t], mu, tol).decision) {
        found = true;
        break;
      }
    }
    if (!found) {
      ++rep.violations;
      rep.failed_directions.push_back(ang);
    }
  }
  return rep;
}

Scalar blaschke_eval(const BlaschkeParams& params, Scalar z) {
  if (params.k < 0) throw DomainError("Blaschke exponent k must be nonnegative");
  for (auto a : params.zeros) {
    double m = std::abs(a);
    if (!(m > 0.0) || !(m < 1.0)) throw DomainError("Blaschke zeros need 0 < |a| < 1");
  }
  if (std::abs(z) > 1.0 + 1e-12) throw DomainError("Blaschke products are evaluated on the disk");
  Scalar out = std::pow(z, params.k);
  for (auto a : params.zeros) out *= (std::abs(a) / a) * (z - a) / (Scalar(1.0) - std::conj(a) * z);
  return out;
}

BlaschkeOrthogonality blaschke_orthogonal(const BlaschkeParams& bn, const BlaschkeParams& bm,
                                          int circle_grid, int mu_grid, double tol) {
  BlaschkeOrthogonality out;
  // h(z) = conj(Bn(z)) Bm(z) is continuous and unimodular on the circle
  std::vector<Scalar> h(circle_grid);
  std::vector<double> ang(circle_grid);
  for (int i = 0; i < circle_grid; ++i) {
    ang[i] = 2.0 * M_PI * i / circle_grid;
    Scalar z(std::cos(ang[i]), std::sin(ang[i]));
    h[i] = std::conj(blaschke_eval(bn, z)) * blaschke_eval(bm, z);
  }
  auto h_at = [&](double a) {
    Scalar z(std::cos(a), std::sin(a));
    return std::conj(blaschke_eval(bn, z)) * blaschke_eval(bm, z);
  };

  int failed = 0;
  for (int k = 0; k < mu_grid; ++k) {
    double mu_ang = 2.0 * M_PI * k / mu_grid;
    Scalar mu(std::cos(mu_ang), std::sin(mu_ang));
    bool found = false;
    for (int i = 0; i < circle_grid && !found; ++i) {
      double va = (mu * h[i]).real();
      if (std::abs(va) <= tol) {
        found = true;
        break;
      }
      int j = (i + 1) % circle_grid;
      double vb = (mu * h[j]).real();
      if (va * vb < 0.0) {
        // bracketed sign change: bisect the angle
        double lo = ang[i], hi = ang[i] + 2.0 * M_PI / circle_grid;
        double flo = va;
        for (int it = 0; it < 60; ++it) {
          double mid = 0.5 * (lo + hi);
          double fm = (mu * h_at(mid)).real();
          if (std::abs(fm) <= tol) break;
          if (flo * fm < 0.0)
            hi = mid;
          else {
            lo = mid;
            flo = fm;
          }
        }
        if (std::abs((mu * h_at(0.5 * (lo + hi))).real()) <= std::max(tol, 1e-12)) found = true;
      }
    }
    if (!found) ++failed;
  }
  out.directions_failed = failed;
  out.verdict.decision = failed == 0;
  out.verdict.exhaustive = false;
  out.verdict.margin = failed == 0 ? 0.0 : -double(failed) / mu_grid;

  auto cert = zero_in_conv(ScalarSet{Field::Complex, h}, kDefaultTol);
  out.hull_decision = cert.inside();
  out.verdict.certificate = cert;
  out.verdict.note = out.hull_decision == out.verdict.decision
                         ? "directional search agrees with the hull criterion"
                         : "directional search and hull criterion disagree";
  return out;
}

OrthoVerdict disk_algebra_orthogonal(const std::vector<Scalar>& f_samples,
                                     const std::vector<Scalar>& g_samples,
                                     const DeltaLadder& ladder_in, int theta_grid, double tol) {
  if (f_samples.size() != g_samples.size() || f_samples.empty())
    throw DomainError("boundary samples must align");
  double nf = 0.0, ng = 0.0;
  for (auto v : f_samples) nf = std::max(nf, std::abs(v));
  for (auto v : g_samples) ng = std::max(ng, std::abs(v));
  if (nf <= 0.0) throw DomainError("f must be nonzero");
  OrthoVerdict v;
  if (ng <= 0.0) {
    v.decision = true;
    v.note = "g = 0";
    return v;
  }
  // exact phases theta_s = conj(sign f(s)) meet the band condition
  // theta f(s) = |f(s)|; a theta grid adds the off-phase members
  std::vector<double> scores;
  std::vector<Scalar> values;
  for (std::size_t s = 0; s < f_samples.size(); ++s) {
    Scalar theta = std::conj(sign_of(f_samples[s]));
    scores.push_back((theta * f_samples[s]).real());
    values.push_back(theta * g_samples[s] / ng);
  }
  for (int k = 0; k < theta_grid; ++k) {
    double a = 2.0 * M_PI * k / theta_grid;
    Scalar theta(std::cos(a), std::sin(a));
    for (std::size_t s = 0; s < f_samples.size(); ++s) {
      double sc = (theta * f_samples[s]).real();
      if (sc >= nf * 0.5) {
        scores.push_back(sc);
        values.push_back(theta * g_samples[s] / ng);
      }
    }
  }
  DeltaLadder ladder = ladder_in;
  if (ladder.deltas.empty()) ladder = DeltaLadder::standard(4, 14);
  std::vector<Scalar> last;
  for (double d : ladder.deltas) {
    std::vector<Scalar> rung;
    for (std::size_t i = 0; i < scores.size(); ++i)
      if (scores[i] >= nf * (1.0 - d)) rung.push_back(values[i]);
    if (rung.empty()) break;
    auto cert = zero_in_conv(ScalarSet{Field::Complex, rung}, tol);
    v.rung_distances.push_back(cert.hull_distance);
    last = std::move(rung);
  }
  if (last.empty()) throw DiagnosticError("empty band: no sample attains the sup norm");
  auto cert = zero_in_conv(ScalarSet{Field::Complex, last}, tol);
  v.decision = cert.inside();
  v.margin = -cert.hull_distance * ng;
  v.certificate = cert;
  v.exhaustive = false;
  return v;
}

void validate_metric(const FiniteMetricSpace& m) {
  const std::size_t n = m.dist.size();
  if (n == 0) throw DomainError("metric space must be non-empty");
  if (m.base >= n) throw DomainError("base point out of range");
  for (auto& row : m.dist)
    if (row.size() != n) throw DomainError("distance matrix must be square");
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(m.dist[i][i]) > 1e-12) throw DomainError("nonzero diagonal distance");
    for (std::size_t j = 0; j < n; ++j) {
      if (!(m.dist[i][j] >= 0.0) || !std::isfinite(m.dist[i][j]))
        throw DomainError("invalid distance entry");
      if (i != j && m.dist[i][j] <= 0.0) throw DomainError("distinct points at distance 0");
      if (std::abs(m.dist[i][j] - m.dist[j][i]) > 1e-12) throw DomainError("asymmetric distances");
      for (std::size_t k = 0; k < n; ++k)
        if (m.dist[i][j] > m.dist[i][k] + m.dist[k][j] + 1e-12)
          throw DomainError("triangle inequality violated");
    }
  }
}

double lipschitz_norm(const FiniteMetricSpace& m, const LipschitzMap& F) {
  validate_metric(m);
  const std::size_t n = m.dist.size();
  if (F.values.size() != n) throw DomainError("map values must cover the metric space");
  if (F.codomain.norm(F.values[m.base]) > 1e-12)
    throw DomainError("Lipschitz maps must vanish at the base point");
  double best = 0.0;
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = s + 1; t < n; ++t)
      best = std::max(best, F.codomain.norm(F.values[s] - F.values[t]) / m.dist[s][t]);
  return best;
}

OrthoVerdict lip_orthogonal(const FiniteMetricSpace& m, const LipschitzMap& F,
                            const LipschitzMap& G, const DeltaLadder& ladder_in, double tol) {
  double nF = lipschitz_norm(m, F);
  if (nF <= 0.0) throw DomainError("F must be nonzero");
  double nG = lipschitz_norm(m, G);
  OrthoVerdict v;
  if (nG <= 0.0) {
    v.decision = true;
    v.note = "G = 0";
    return v;
  }
  const auto& Y = F.codomain;
  const std::size_t n = m.dist.size();
  // difference-quotient molecules: score |y*(dF)|, value theta*y*(dG) with the
  // phase rotating the F-quotient onto the positive axis
  std::vector<double> scores;
  std::vector<Scalar> values;
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t t = 0; t < n; ++t) {
      if (s == t) continue;
      Vector dF = (Scalar(1.0 / m.dist[s][t])) * (F.values[s] - F.values[t]);
      Vector dG = (Scalar(1.0 / m.dist[s][t])) * (G.values[s] - G.values[t]);
      double ndF = Y.norm(dF);
      std::vector<Functional> ystars;
      if (ndF > 1e-14) {
        try {
          auto face = Y.support_functionals((1.0 / ndF) * dF, 8);
          for (auto& ys : face.members) {
            ystars.push_back(ys);
            if (ystars.size() >= 8) break;
          }
        } catch (const CapabilityError&) {
          throw CapabilityError("codomain must expose support functionals");
        }
      }
      for (auto& ystar : ystars) {
        Scalar fv = ystar(dF);
        Scalar theta = std::conj(sign_of(fv));
        scores.push_back((theta * fv).real());
        values.push_back(theta * ystar(dG) / nG);
      }
    }
  }
  DeltaLadder ladder = ladder_in;
  if (ladder.deltas.empty()) ladder = DeltaLadder::standard(4, 14);
  std::vector<Scalar> last;
  for (double d : ladder.deltas) {
    std::vector<Scalar> rung;
    for (std::size_t i = 0; i < scores.size(); ++i)
      if (scores[i] >= nF * (1.0 - d)) rung.push_back(values[i]);
    if (rung.empty()) break;
    auto cert = zero_in_conv(ScalarSet{Y.field(), rung}, tol);
    v.rung_distances.push_back(cert.hull_distance);
    last = std::move(rung);
  }
  if (last.empty()) throw DiagnosticError("empty band: no pair attains the Lipschitz norm");
  auto cert = zero_in_conv(ScalarSet{Y.field(), last}, tol);
  v.decision = cert.inside();
  v.margin = -cert.hull_distance * nG;
  v.certificate = cert;
  v.exhaustive = false;
  return v;
}

}  // namespace bjo
