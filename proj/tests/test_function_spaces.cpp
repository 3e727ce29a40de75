#include <doctest.h>

#include "banach_ortho/function_spaces.hpp"
#include "banach_ortho/generators.hpp"

using namespace bjo;

namespace {

Vector rv(std::initializer_list<double> v) {
  Vector x;
  for (double c : v) x.c.push_back(Scalar(c, 0.0));
  return x;
}

SampledFunction circle_frame(int grid) {
  // f(t) = (cos t, sin t) on the circle into the Euclidean plane
  auto Y = SpaceDescriptor::lp(Field::Real, 2, 2.0);
  std::vector<Vector> values;
  for (int i = 0; i < grid; ++i) {
    double a = 2 * M_PI * i / grid;
    values.push_back(rv({std::cos(a), std::sin(a)}));
  }
  return make_sampled(SampledFunction::Adjacency::Circle, std::move(values), Y);
}

}  // namespace

TEST_CASE("sup norm basics") {
  auto Y = SpaceDescriptor::lp(Field::Real, 2, 2.0);
  std::vector<Vector> constant(5, rv({0.6, 0.8}));
  auto f = make_sampled(SampledFunction::Adjacency::Path, constant, Y);
  CHECK(sup_norm(f) == doctest::Approx(1.0));

  auto frame = circle_frame(64);
  CHECK(sup_norm(frame) == doctest::Approx(1.0));

  Rng rng(3);
  std::vector<Vector> vals;
  for (int i = 0; i < 20; ++i) vals.push_back(rng.vector(Field::Real, 2));
  auto g = make_sampled(SampledFunction::Adjacency::None, vals, Y);
  double m = 0;
  for (auto& v : vals) m = std::max(m, Y.norm(v));
  CHECK(sup_norm(g) == doctest::Approx(m));
}

TEST_CASE("attainment bands and connectedness") {
  auto Y = SpaceDescriptor::lp(Field::Real, 2, 2.0);
  // unique peak
  std::vector<Vector> vals;
  for (int i = 0; i < 40; ++i) {
    double a = 2 * M_PI * i / 40;
    double env = 1.0 + 0.5 * std::cos(a);
    vals.push_back(rv({env, 0}));
  }
  auto f = make_sampled(SampledFunction::Adjacency::Circle, vals, Y);
  auto band = attainment_set_f(f, 1e-9);
  CHECK(band.indices.size() == 1);
  CHECK(band.connected);

  // constant norm: whole circle, connected through the wrap-around
  auto frame = circle_frame(64);
  auto whole = attainment_set_f(frame, 1e-9);
  CHECK(whole.indices.size() == 64);
  CHECK(whole.connected);

  // two equal bumps: disconnected
  std::vector<Vector> two;
  for (int i = 0; i < 80; ++i) {
    double a = 2 * M_PI * i / 80;
    two.push_back(rv({1.0 + 0.5 * std::cos(2 * a), 0.01}));
  }
  auto g = make_sampled(SampledFunction::Adjacency::Circle, two, Y);
  auto bands = attainment_set_f(g, 1e-9);
  CHECK(!bands.connected);
  CHECK(bands.components == 2);
}

TEST_CASE("continuous-function orthogonality: rotating frame") {
  // g(t) = (-sin t, cos t) is pointwise orthogonal to f(t) = (cos t, sin t)
  auto Y = SpaceDescriptor::lp(Field::Real, 2, 2.0);
  auto f = circle_frame(90);
  std::vector<Vector> gv;
  for (int i = 0; i < 90; ++i) {
    double a = 2 * M_PI * i / 90;
    gv.push_back(rv({-std::sin(a), std::cos(a)}));
  }
  auto g = make_sampled(SampledFunction::Adjacency::Circle, gv, Y);
  CHECK(c_orthogonal(f, g).decision);
  CHECK(!c_orthogonal(f, f).decision);
}

TEST_CASE("two grid points over the reals reduce to the sup-norm plane") {
  auto R1 = SpaceDescriptor::lp(Field::Real, 1, 2.0);
  auto linf2 = SpaceDescriptor::lp(Field::Real, 2, kInfinity);
  Rng rng(7);
  int informative = 0;
  for (int i = 0; i < 60; ++i) {
    Vector x = rng.vector(Field::Real, 2), y = rng.vector(Field::Real, 2);
    if (i % 2 == 1) {
      // plant an orthogonal pair now and then
      x = gen::random_unit_vector(linf2, rng);
      y = gen::orthogonal_direction(linf2, x, rng);
    }
    auto fx = make_sampled(SampledFunction::Adjacency::None,
                           {Vector{{x[0]}}, Vector{{x[1]}}}, R1);
    auto gy = make_sampled(SampledFunction::Adjacency::None,
                           {Vector{{y[0]}}, Vector{{y[1]}}}, R1);
    if (linf2.norm(x) < 1e-6 || linf2.norm(y) < 1e-6) continue;
    auto vec = bj_orthogonal(linf2, x, y);
    if (std::abs(vec.margin) > 1e-9 && std::abs(vec.margin) < 1e-4) continue;
    auto fun = c_orthogonal(fx, gy);
    CHECK(vec.decision == fun.decision);
    ++informative;
  }
  CHECK(informative >= 50);
}

TEST_CASE("connected attainment: every direction has a pointwise witness") {
  auto f = circle_frame(90);
  std::vector<Vector> gv;
  for (int i = 0; i < 90; ++i) {
    double a = 2 * M_PI * i / 90;
    gv.push_back(rv({-std::sin(a), std::cos(a)}));
  }
  auto g = make_sampled(SampledFunction::Adjacency::Circle, gv,
                        SpaceDescriptor::lp(Field::Real, 2, 2.0));
  auto rep = attainment_directional_check(f, g, 90);
  CHECK(rep.applicable);
  CHECK(rep.violations == 0);
  CHECK(rep.single_point_witness.has_value());  // real field: single-point form
}

TEST_CASE("connected attainment: vacuous for non-orthogonal pairs, skipped when disconnected") {
  auto Y = SpaceDescriptor::lp(Field::Real, 2, 2.0);
  auto f = circle_frame(60);
  auto rep = attainment_directional_check(f, f, 60);
  CHECK(!rep.applicable);
  CHECK(rep.orthogonal == false);

  std::vector<Vector> two;
  for (int i = 0; i < 60; ++i) {
    double a = 2 * M_PI * i / 60;
    two.push_back(rv({1.0 + 0.5 * std::cos(2 * a), 0.0}));
  }
  auto h = make_sampled(SampledFunction::Adjacency::Circle, two, Y);
  auto rep2 = attainment_directional_check(h, f, 60);
  CHECK(!rep2.applicable);
  CHECK(!rep2.band.connected);
}

TEST_CASE("randomized connected-attainment suite has no violations") {
  Rng rng(11);
  auto Y2 = SpaceDescriptor::lp(Field::Real, 2, 2.0);
  auto Yinf = SpaceDescriptor::lp(Field::Real, 2, kInfinity);
  int applicable = 0, skipped = 0;
  for (int i = 0; i < 30; ++i) {
    const auto& Y = i % 2 == 0 ? Y2 : Yinf;
    auto f = gen::random_circle_function(Y, 120, rng, i % 3 == 0);
    auto g = gen::shift_to_orthogonal(f, gen::random_circle_function(Y, 120, rng, false));
    auto rep = attainment_directional_check(f, g, 60);
    if (!rep.band.connected) {
      ++skipped;
      continue;
    }
    if (rep.applicable) {
      CHECK(rep.violations == 0);
      ++applicable;
    }
  }
  CHECK(applicable >= 15);
  CHECK(applicable + skipped <= 30);
}

TEST_CASE("Blaschke evaluation") {
  BlaschkeParams rot{1, {}};
  CHECK(std::abs(blaschke_eval(rot, Scalar(0, 1)) - Scalar(0, 1)) < 1e-15);

  BlaschkeParams single{0, {Scalar(0.5, 0)}};
  CHECK(std::abs(blaschke_eval(single, Scalar(0.5, 0))) < 1e-15);

  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    auto b = gen::random_blaschke(rng, 4);
    for (int k = 0; k < 50; ++k) {
      double a = 2 * M_PI * k / 50;
      CHECK(std::abs(blaschke_eval(b, Scalar(std::cos(a), std::sin(a)))) ==
            doctest::Approx(1.0).epsilon(1e-12));
    }
    // strictly inside the disk the modulus drops below one
    double inner = std::abs(blaschke_eval(b, Scalar(0.3 * rng.uniform(), 0.3 * rng.uniform())));
    CHECK(inner < 1.0 + 1e-12);
  }
  CHECK_THROWS_AS(blaschke_eval(BlaschkeParams{0, {Scalar(1.5, 0)}}, Scalar(0, 0)), DomainError);
  CHECK_THROWS_AS(blaschke_eval(rot, Scalar(2, 0)), DomainError);
}

TEST_CASE("Blaschke orthogonality: z against z^2, and self against self") {
  BlaschkeParams z1{1, {}};
  BlaschkeParams z2{2, {}};
  auto r = blaschke_orthogonal(z1, z2);
  CHECK(r.verdict.decision);
  CHECK(r.hull_decision);

  auto same = blaschke_orthogonal(z1, z1);
  CHECK(!same.verdict.decision);
  CHECK(!same.hull_decision);
}

TEST_CASE("Blaschke criterion agrees with sup-norm minimization on random pairs") {
  Rng rng(17);
  int informative = 0;
  for (int i = 0; i < 20; ++i) {
    auto bn = gen::random_blaschke(rng, 4);
    auto bm = gen::random_blaschke(rng, 4);
    auto crit = blaschke_orthogonal(bn, bm);
    const int grid = 720;
    Vector fn(grid), fm(grid);
    for (int k = 0; k < grid; ++k) {
      double a = 2 * M_PI * k / grid;
      Scalar z(std::cos(a), std::sin(a));
      fn[k] = blaschke_eval(bn, z);
      fm[k] = blaschke_eval(bm, z);
    }
    NormFn supn = [](const Vector& w) {
      double m = 0;
      for (auto v : w.c) m = std::max(m, std::abs(v));
      return m;
    };
    auto m = minimize_norm_lambda(supn, fn, fm, Field::Complex, 2.0);
    double margin = m.value - 1.0;
    if (std::abs(margin) > 1e-9 && std::abs(margin) < 1e-4) continue;
    bool defn = margin >= -1e-6;
    CHECK_MESSAGE(crit.verdict.decision == defn, "margin=" << margin);
    ++informative;
  }
  CHECK(informative >= 16);
}

TEST_CASE("disk algebra: the constant against the rotation") {
  const int grid = 360;
  std::vector<Scalar> f(grid, Scalar(1, 0)), g(grid);
  for (int k = 0; k < grid; ++k) {
    double a = 2 * M_PI * k / grid;
    g[k] = Scalar(std::cos(a), std::sin(a));
  }
  CHECK(disk_algebra_orthogonal(f, g).decision);
  CHECK(!disk_algebra_orthogonal(f, f).decision);
}

TEST_CASE("disk algebra criterion agrees with the Blaschke criterion") {
  Rng rng(19);
  const int grid = 720;
  for (int i = 0; i < 10; ++i) {
    auto bn = gen::random_blaschke(rng, 3);
    auto bm = gen::random_blaschke(rng, 3);
    std::vector<Scalar> f(grid), g(grid);
    for (int k = 0; k < grid; ++k) {
      double a = 2 * M_PI * k / grid;
      Scalar z(std::cos(a), std::sin(a));
      f[k] = blaschke_eval(bn, z);
      g[k] = blaschke_eval(bm, z);
    }
    auto alg = disk_algebra_orthogonal(f, g);
    auto crit = blaschke_orthogonal(bn, bm);
    if (std::abs(alg.margin) > 1e-9 && std::abs(alg.margin) < 1e-4) continue;
    CHECK(alg.decision == crit.hull_decision);
  }
}

TEST_CASE("Lipschitz norms") {
  auto R1 = SpaceDescriptor::lp(Field::Real, 1, 2.0);
  FiniteMetricSpace two;
  two.dist = {{0, 1}, {1, 0}};
  two.base = 0;
  LipschitzMap ident{{Vector{{Scalar(0.0)}}, Vector{{Scalar(1.0)}}}, R1};
  CHECK(lipschitz_norm(two, ident) == doctest::Approx(1.0));

  LipschitzMap scaled{{Vector{{Scalar(0.0)}}, Vector{{Scalar(-3.0)}}}, R1};
  CHECK(lipschitz_norm(two, scaled) == doctest::Approx(3.0));

  // brute pair enumeration is the definition
  Rng rng(23);
  auto Y = SpaceDescriptor::lp(Field::Real, 2, 2.0);
  auto metric = gen::random_metric(5, rng);
  LipschitzMap F{{}, Y};
  for (std::size_t i = 0; i < 5; ++i)
    F.values.push_back(i == metric.base ? Vector(2) : rng.vector(Field::Real, 2));
  double brute = 0;
  for (std::size_t s = 0; s < 5; ++s)
    for (std::size_t t = 0; t < 5; ++t)
      if (s != t)
        brute = std::max(brute, Y.norm(F.values[s] - F.values[t]) / metric.dist[s][t]);
  CHECK(lipschitz_norm(metric, F) == doctest::Approx(brute));

  LipschitzMap bad{{Vector{{Scalar(1.0)}}, Vector{{Scalar(0.0)}}}, R1};
  CHECK_THROWS_AS(lipschitz_norm(two, bad), DomainError);
}

TEST_CASE("Lipschitz orthogonality: self fails, scalar two-point case is exact") {
  auto R1 = SpaceDescriptor::lp(Field::Real, 1, 2.0);
  FiniteMetricSpace two;
  two.dist = {{0, 1}, {1, 0}};
  two.base = 0;
  LipschitzMap F{{Vector{{Scalar(0.0)}}, Vector{{Scalar(1.0)}}}, R1};
  CHECK(!lip_orthogonal(two, F, F).decision);
  // on one pair the value set is {+-G'(quotient)}: orthogonal iff it is 0
  LipschitzMap G{{Vector{{Scalar(0.0)}}, Vector{{Scalar(0.5)}}}, R1};
  CHECK(!lip_orthogonal(two, F, G).decision);
  LipschitzMap Z{{Vector{{Scalar(0.0)}}, Vector{{Scalar(0.0)}}}, R1};
  CHECK(lip_orthogonal(two, F, Z).decision);
}

TEST_CASE("Lipschitz criterion agrees with the definition-level minimization") {
  Rng rng(29);
  auto Y = SpaceDescriptor::lp(Field::Real, 2, 2.0);
  int informative = 0;
  for (int i = 0; i < 25; ++i) {
    auto metric = gen::random_metric(4, rng);
    const std::size_t n = metric.dist.size();
    LipschitzMap F{{}, Y}, G{{}, Y};
    for (std::size_t t = 0; t < n; ++t) {
      F.values.push_back(t == metric.base ? Vector(2) : rng.vector(Field::Real, 2));
      G.values.push_back(t == metric.base ? Vector(2) : rng.vector(Field::Real, 2));
    }
    double nF = lipschitz_norm(metric, F), nG = lipschitz_norm(metric, G);
    if (nF < 1e-6 || nG < 1e-6) continue;
    auto crit = lip_orthogonal(metric, F, G);
    // flatten and minimize the Lipschitz norm of F + lambda G directly
    NormFn lip = [&](const Vector& w) {
      LipschitzMap H{{}, Y};
      for (std::size_t t = 0; t < n; ++t)
        H.values.push_back(Vector{{w[2 * t], w[2 * t + 1]}});
      return lipschitz_norm(metric, H);
    };
    Vector fw(2 * n), gw(2 * n);
    for (std::size_t t = 0; t < n; ++t)
      for (int d = 0; d < 2; ++d) {
        fw[2 * t + d] = F.values[t][d];
        gw[2 * t + d] = G.values[t][d];
      }
    auto m = minimize_norm_lambda(lip, fw, gw, Field::Real, 2.0 * nF / nG);
    double margin = (m.value - nF) / nF;
    if (std::abs(margin) > 1e-9 && std::abs(margin) < 1e-4) continue;
    CHECK(crit.decision == (margin >= -1e-6));
    ++informative;
  }
  CHECK(informative >= 20);
}

TEST_CASE("metric validation rejects broken inputs") {
  FiniteMetricSpace bad;
  bad.dist = {{0, 1}, {2, 0}};
  CHECK_THROWS_AS(validate_metric(bad), DomainError);
  FiniteMetricSpace tri;
  tri.dist = {{0, 1, 5}, {1, 0, 1}, {5, 1, 0}};  // 5 > 1 + 1
  CHECK_THROWS_AS(validate_metric(tri), DomainError);
}
