#include "banach_ortho/numerical_range.hpp"

namespace bjo {

namespace {

ConvexPolygon hull_of(Field field, const std::vector<Scalar>& pts) {
  ScalarSet s{field, pts};
  return conv_hull(s);
}

// Margin of u against z - alpha*u; alpha is in V exactly when this is >= 0.
double membership_margin(const SpaceDescriptor& space, const Vector& u, const Vector& z,
                         Scalar alpha) {
  Vector w = z - alpha * u;
  double nw = space.norm(w);
  if (nw == 0.0) return 0.0;
  Vector wh = (1.0 / nw) * w;
  NormFn nf = [&space](const Vector& v) { return space.norm(v); };
  auto m = minimize_norm_lambda(nf, u, wh, space.field(), 2.0);
  return m.value - 1.0;
}

}  // namespace

RangeEstimate range_scan(const SpaceDescriptor& space, const Vector& u, const Vector& z,
                         const ScanGrid& grid, double tol) {
  if (std::abs(space.norm(u) - 1.0) > 1e-9) throw DomainError("u must be a unit vector");
  const double nz = space.norm(z);

  RangeEstimate est;
  est.method = RangeEstimate::Method::Scan;
  est.params.angles = grid.angles;
  est.params.radial_tol = grid.radial_tol;
  est.params.tol = tol;

  // Seed with a state value: phi(z) lies in V for every support functional
  // phi of u, and V is contained in the disk |alpha| <= ||z|| around 0.
  Scalar seed(0.0, 0.0);
  bool have_seed = false;
  try {
    auto face = space.support_functionals(u);
    if (!face.members.empty()) {
      seed = face.members.front()(z);
      have_seed = true;
    }
  } catch (const CapabilityError&) {
  } catch (const DiagnosticError&) {
  }
  if (!have_seed) {
    // coarse search for the best membership margin
    double best = -kInfinity;
    const int g = 12;
    for (int i = 0; i <= g; ++i)
      for (int j = 0; j <= g; ++j) {
        Scalar a(nz * (2.0 * i / g - 1.0), space.field() == Field::Real ? 0.0 : nz * (2.0 * j / g - 1.0));
        if (space.field() == Field::Real && j > 0) continue;
        double m = membership_margin(space, u, z, a);
        if (m > best) {
          best = m;
          seed = a;
        }
      }
  }
  if (membership_margin(space, u, z, seed) < -tol) {
    // polish the seed: V is nonempty, so a state value must verify
    auto m2 = nelder_mead_minimize(
        [&](const std::vector<double>& t) {
          return -membership_margin(space, u, z, Scalar(t[0], t[1]));
        },
        {seed.real(), seed.imag()}, 0.1 * (nz + 1.0), 1e-12, 200);
    seed = Scalar(m2.x[0], space.field() == Field::Real ? 0.0 : m2.x[1]);
  }

  const double reach = 2.0 * nz + grid.radial_tol + 1.0;  // |alpha - seed| bound
  auto ray_radius = [&](Scalar dir, double band) {
    // largest t with margin(seed + t*dir) >= -band, by bisection
    double lo = 0.0, hi = reach;
    if (membership_margin(space, u, z, seed + hi * dir) >= -band) return hi;
    while (hi - lo > grid.radial_tol) {
      double mid = 0.5 * (lo + hi);
      if (membership_margin(space, u, z, seed + mid * dir) >= -band)
        lo = mid;
      else
        hi = mid;
    }
    return lo;
  };

  std::vector<Scalar> inner_pts, outer_pts;
  inner_pts.push_back(seed);
  outer_pts.push_back(seed);
  if (space.field() == Field::Real) {
    for (double s : {1.0, -1.0}) {
      Scalar dir(s, 0.0);
      inner_pts.push_back(seed + ray_radius(dir, tol) * dir);
      outer_pts.push_back(seed + ray_radius(dir, 2.0 * tol) * dir);
    }
  } else {
    const int n = grid.angles;
    std::vector<Scalar> in_r(n), out_r(n);
    parallel_for_indices(std::size_t(n), [&](std::size_t k) {
      double a = 2.0 * M_PI * double(k) / n;
      Scalar dir(std::cos(a), std::sin(a));
      in_r[k] = seed + ray_radius(dir, tol) * dir;
      out_r[k] = seed + ray_radius(dir, 2.0 * tol) * dir;
    });
    inner_pts.insert(inner_pts.end(), in_r.begin(), in_r.end());
    outer_pts.insert(outer_pts.end(), out_r.begin(), out_r.end());
  }
  est.inner = hull_of(space.field(), inner_pts);
  est.outer = hull_of(space.field(), outer_pts);
  return est;
}

RangeEstimate range_extreme(const SpaceDescriptor& space, const Vector& u, const Vector& z) {
  if (std::abs(space.norm(u) - 1.0) > 1e-9) throw DomainError("u must be a unit vector");
  auto face = space.support_functionals(u);
  RangeEstimate est;
  est.method = RangeEstimate::Method::Extreme;
  est.params.exhaustive = face.exhaustive;
  est.params.grid_error = face.grid_error;
  std::vector<Scalar> vals;
  vals.reserve(face.members.size());
  for (auto& phi : face.members) vals.push_back(phi(z));
  est.inner = hull_of(space.field(), vals);
  est.outer = est.inner;
  return est;
}

RangeEstimate range_delta(const SpaceDescriptor& space, const Vector& u, const Vector& z,
                          const FunctionalSampler& sampler, const DeltaLadder& ladder_in) {
  if (std::abs(space.norm(u) - 1.0) > 1e-9) throw DomainError("u must be a unit vector");
  DeltaLadder ladder = ladder_in;
  if (ladder.deltas.empty()) ladder = DeltaLadder::standard();
  for (std::size_t i = 1; i < ladder.deltas.size(); ++i)
    if (!(ladder.deltas[i] < ladder.deltas[i - 1]))
      throw DomainError("delta ladder must be strictly decreasing");

  std::vector<Scalar> values(sampler.functionals.size());
  std::vector<double> weights(sampler.functionals.size());
  for (std::size_t i = 0; i < sampler.functionals.size(); ++i) {
    const auto& psi = sampler.functionals[i];
    Scalar pu = psi(u);
    weights[i] = std::abs(pu);
    values[i] = psi(z) * std::conj(pu);
  }

  RangeEstimate est;
  est.method = RangeEstimate::Method::DeltaLadder;
  for (double d : ladder.deltas) {
    std::vector<Scalar> rung;
    for (std::size_t i = 0; i < values.size(); ++i)
      if (weights[i] > 1.0 - d) rung.push_back(values[i]);
    if (rung.empty())
      throw DiagnosticError("empty rung at delta = " + std::to_string(d) +
                            ": sampler found no near-support functionals");
    est.deltas.push_back(d);
    est.rungs.push_back(hull_of(space.field(), rung));
  }
  est.outer = est.rungs.front();
  est.inner = est.rungs.back();
  est.params.exhaustive = sampler.exact;
  return est;
}

FunctionalSampler default_sampler(const SpaceDescriptor& space, const Vector& u, int budget,
                                  std::uint64_t seed) {
  FunctionalSampler s;
  try {
    auto face = space.support_functionals(u, budget);
    s.functionals = face.members;
    if (face.exhaustive) {
      s.exact = true;
      return s;
    }
  } catch (const CapabilityError&) {
  }
  // quasi-random unit functionals: duality maps of sphere samples plus
  // perturbations of u keep every band populated
  SphereSampler sphere(space.field(), std::size_t(space.dim()), seed);
  Rng rng(seed ^ 0x9e3779b97f4a7c15ull);
  auto push_duality = [&](const Vector& w) {
    double nw = space.norm(w);
    if (nw <= 1e-12) return;
    Vector wh = (1.0 / nw) * w;
    try {
      auto f = space.support_functionals(wh, 8);
      for (auto& phi : f.members) {
        s.functionals.push_back(phi);
        if (int(s.functionals.size()) >= 4 * budget) return;
      }
    } catch (const CapabilityError&) {
    } catch (const DiagnosticError&) {
    }
  };
  push_duality(u);
  for (int i = 0; i < budget; ++i) {
    Vector q = sphere.next();
    push_duality(q);
    double eps = std::pow(2.0, -double(rng.integer(20)));
    Vector w = u + (eps * Scalar(1.0)) * q;
    push_duality(w);
  }
  s.exact = false;
  return s;
}

RadiusEstimate numerical_radius(const SpaceDescriptor& space, const Vector& u, const Vector& z,
                                double tol) {
  if (std::abs(space.norm(u) - 1.0) > 1e-9) throw DomainError("u must be a unit vector");
  const double nz = space.norm(z);
  RadiusEstimate r;
  if (nz == 0.0) return r;
  try {
    auto face = space.support_functionals(u, 512);
    double m = 0.0;
    for (auto& phi : face.members) m = std::max(m, std::abs(phi(z)));
    r.lower = m;
    r.upper = face.exhaustive ? m : nz;
    r.exhaustive = face.exhaustive;
    if (face.exhaustive) return r;
  } catch (const CapabilityError&) {
  } catch (const DiagnosticError&) {
  }
  auto est = range_scan(space, u, z, ScanGrid{}, tol);
  r.lower = std::max(r.lower, polygon_max_modulus(est.inner));
  // states have dual norm one, so v <= ||z|| regardless of scan slack
  r.upper = std::min(polygon_max_modulus(est.outer), nz);
  r.exhaustive = false;
  return r;
}

namespace {

// Rank certificate: v_u vanishes somewhere iff the face functionals fail to
// span the dual, and a kernel vector is an explicit witness.
std::optional<Vector> face_kernel_vector(const SupportSample& face, int dim, Field field) {
  const std::size_t J = face.members.size();
  // Gaussian elimination on the J x dim system phi_j(z) = 0
  std::vector<std::vector<Scalar>> rows(J, std::vector<Scalar>(dim));
  for (std::size_t j = 0; j < J; ++j)
    for (int i = 0; i < dim; ++i) rows[j][i] = face.members[j][i];
  std::vector<int> pivot_cols;
  std::size_t rank = 0;
  for (int col = 0; col < dim && rank < J; ++col) {
    std::size_t best = rank;
    for (std::size_t r = rank; r < J; ++r)
      if (std::abs(rows[r][col]) > std::abs(rows[best][col])) best = r;
    if (std::abs(rows[best][col]) < 1e-10) continue;
    std::swap(rows[rank], rows[best]);
    for (std::size_t r = 0; r < J; ++r) {
      if (r == rank) continue;
      Scalar f = rows[r][col] / rows[rank][col];
      for (int c = col; c < dim; ++c) rows[r][c] -= f * rows[rank][c];
    }
    pivot_cols.push_back(col);
    ++rank;
  }
  if (int(rank) >= dim) return std::nullopt;
  // free column -> kernel vector
  std::vector<bool> is_pivot(dim, false);
  for (int c : pivot_cols) is_pivot[c] = true;
  int free_col = 0;
  while (free_col < dim && is_pivot[free_col]) ++free_col;
  Vector kernel(dim);
  kernel[free_col] = 1.0;
  for (std::size_t r = 0; r < rank; ++r) {
    int pc = pivot_cols[r];
    kernel[pc] = -rows[r][free_col] / rows[r][pc];
  }
  (void)field;
  return kernel;
}

}  // namespace

VertexReport is_vertex(const SpaceDescriptor& space, const Vector& u, int probe_budget,
                       std::uint64_t seed, double tol) {
  if (std::abs(space.norm(u) - 1.0) > 1e-9) throw DomainError("u must be a unit vector");
  VertexReport rep;
  SupportSample face;
  bool have_face = false;
  try {
    face = space.support_functionals(u, 512);
    have_face = true;
  } catch (const CapabilityError&) {
  }
  if (have_face && face.exhaustive) {
    auto kernel = face_kernel_vector(face, space.dim(), space.field());
    rep.exhaustive = true;
    if (kernel) {
      rep.vertex = false;
      rep.kernel_witness = *kernel;
    } else {
      rep.vertex = true;
    }
    return rep;
  }
  // sampled probes: basis vectors plus random directions
  Rng rng(seed);
  auto check = [&](const Vector& z) {
    double v = numerical_radius(space, u, z, tol).lower;
    return v > tol * std::max(1.0, space.norm(z));
  };
  for (int i = 0; i < space.dim(); ++i) {
    Vector e = Vector::basis(space.dim(), i);
    if (!check(e)) {
      rep.kernel_witness = e;
      return rep;
    }
  }
  for (int k = 0; k < probe_budget; ++k) {
    Vector z = rng.vector(space.field(), space.dim());
    if (!check(z)) {
      rep.kernel_witness = z;
      return rep;
    }
  }
  rep.vertex = true;
  rep.exhaustive = false;
  return rep;
}

namespace {

double max_theta_norm(const SpaceDescriptor& space, const Vector& u, const Vector& z) {
  if (space.field() == Field::Real) {
    return std::max(space.norm(u + z), space.norm(u - z));
  }
  double best = 0.0;
  double best_angle = 0.0;
  const int g = 64;
  for (int k = 0; k < g; ++k) {
    double a = 2.0 * M_PI * k / g;
    double v = space.norm(u + Scalar(std::cos(a), std::sin(a)) * z);
    if (v > best) {
      best = v;
      best_angle = a;
    }
  }
  auto m = golden_section_minimize(
      [&](double a) { return -space.norm(u + Scalar(std::cos(a), std::sin(a)) * z); },
      best_angle - 2.0 * M_PI / g, best_angle + 2.0 * M_PI / g, 1e-10);
  return std::max(best, -m.value);
}

}  // namespace

SpearReport is_spear_vector(const SpaceDescriptor& space, const Vector& u, int probe_budget,
                            std::uint64_t seed, double tol) {
  if (std::abs(space.norm(u) - 1.0) > 1e-9) throw DomainError("u must be a unit vector");
  SpearReport rep;
  rep.worst_gap = kInfinity;

  auto consider = [&](const Vector& z) {
    double nz = space.norm(z);
    if (nz <= 1e-12) return true;
    Vector zh = (1.0 / nz) * z;
    double gap = max_theta_norm(space, u, zh) - 2.0;
    if (gap < rep.worst_gap) {
      rep.worst_gap = gap;
      rep.worst_probe = zh;
    }
    return gap >= -tol;
  };

  // Exhaustive route for real spaces with enumerable faces: u is a spear
  // exactly when the v_u unit ball (a polytope spanned by the face) sits
  // inside the unit ball of the space, which is decided on its vertices.
  if (space.field() == Field::Real) {
    SupportSample face;
    bool have_face = false;
    try {
      face = space.support_functionals(u, 512);
      have_face = face.exhaustive;
    } catch (const CapabilityError&) {
    }
    if (have_face) {
      auto kernel = face_kernel_vector(face, space.dim(), space.field());
      if (kernel) {
        rep.spear = false;
        rep.exhaustive = true;
        consider(*kernel);
        return rep;
      }
      auto vertices = polytope_ball_vertices(face.members, space.dim());
      rep.exhaustive = true;
      rep.spear = true;
      for (auto& w : vertices) {
        if (space.norm(w) > 1.0 + tol) {
          rep.spear = false;
          consider(w);
        }
      }
      if (rep.spear) rep.worst_gap = 0.0;
      return rep;
    }
  }

  // sampled probes
  rep.spear = true;
  for (int i = 0; i < space.dim(); ++i)
    if (!consider(Vector::basis(space.dim(), i))) rep.spear = false;
  try {
    auto extremes = space.ball_extreme_points(16, 4096);
    for (auto& v : extremes)
      if (!consider(v)) rep.spear = false;
  } catch (const CapabilityError&) {
  }
  Rng rng(seed);
  for (int k = 0; k < probe_budget; ++k)
    if (!consider(rng.vector(space.field(), space.dim()))) rep.spear = false;
  rep.exhaustive = false;
  return rep;
}

VuSpace vu_space(const SpaceDescriptor& base, const Vector& u) {
  double nu = base.norm(u);
  if (std::abs(nu - 1.0) > 1e-9) throw DomainError("u must be a unit vector");
  SupportSample face;
  bool have_face = false;
  try {
    face = base.support_functionals(u, 512);
    have_face = true;
  } catch (const CapabilityError&) {
  }
  if (have_face && !face.members.empty()) {
    // v_u(z) = max over the face of |phi(z)|, attained at face extremes:
    // exactly a polytope (semi)norm generated by the face members
    return VuSpace{
        SpaceDescriptor::polytope(base.field(), base.dim(), face.members, /*seminorm_ok=*/true),
        face.exhaustive, face};
  }
  auto base_copy = std::make_shared<SpaceDescriptor>(base);
  auto u_copy = std::make_shared<Vector>(u);
  return VuSpace{SpaceDescriptor::custom(base.field(), base.dim(), "v_u on " + base.label(),
                                         [base_copy, u_copy](const Vector& z) {
                                           return numerical_radius(*base_copy, *u_copy, z).upper;
                                         }),
                 false, SupportSample{}};
}

double vu_seminorm(const SpaceDescriptor& base, const Vector& u, const Vector& z) {
  return numerical_radius(base, u, z).value();
}

VuObstructionReport vu_obstruction_check(const SpaceDescriptor& base, const Vector& u,
                                         const Vector& z, double tol) {
  VuObstructionReport rep;
  double nu = base.norm(u);
  if (std::abs(nu - 1.0) > 1e-9) {
    rep.precondition_note = "u is not a unit vector";
    return rep;
  }
  if (base.norm(z) == 0.0) {
    rep.precondition_note = "z = 0";
    return rep;
  }
  rep.vertex = is_vertex(base, u);
  if (!rep.vertex.vertex) {
    rep.precondition_note = "u is not a vertex";
    return rep;
  }
  auto vu = vu_space(base, u);
  rep.smooth = vu.space.is_smooth_point(z);
  rep.orthogonal = bj_orthogonal(vu.space, z, u, tol);
  rep.preconditions_ok = true;
  rep.violation = rep.smooth.smooth && rep.orthogonal.decision;
  return rep;
}

}  // namespace bjo
