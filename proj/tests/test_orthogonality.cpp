#include <doctest.h>

#include "banach_ortho/generators.hpp"
#include "banach_ortho/orthogonality.hpp"

using namespace bjo;

namespace {

Vector rv(std::initializer_list<double> v) {
  Vector x;
  for (double c : v) x.c.push_back(Scalar(c, 0.0));
  return x;
}

}  // namespace

TEST_CASE("Hilbert basics") {
  auto l2 = SpaceDescriptor::lp(Field::Real, 2, 2.0);
  auto v = bj_orthogonal(l2, rv({1, 0}), rv({0, 1}));
  CHECK(v.decision);
  CHECK(std::abs(*v.lambda_star) < 1e-6);

  auto w = bj_orthogonal(l2, rv({1, 0}), rv({1, 0}));
  CHECK(!w.decision);
  CHECK(w.margin == doctest::Approx(-1.0).epsilon(1e-8));
  CHECK(std::abs(*w.lambda_star - Scalar(-1.0)) < 1e-6);
}

TEST_CASE("sup-norm diagonal pair is orthogonal") {
  // ||(1,1) + t(1,-1)||_inf = max(|1+t|, |1-t|) >= 1
  auto linf = SpaceDescriptor::lp(Field::Real, 2, kInfinity);
  Vector x = rv({1, 1}), y = rv({1, -1});
  // 1-D grid oracle over the minimizer interval
  double grid_min = kInfinity;
  for (int i = 0; i <= 10000; ++i) {
    double t = -2.0 + 4.0 * i / 10000;
    grid_min = std::min(grid_min, linf.norm(x + Scalar(t) * y));
  }
  CHECK(grid_min >= 1.0 - 1e-12);
  auto v = bj_orthogonal(linf, x, y);
  CHECK(v.decision);
  CHECK(std::abs(v.margin) < 1e-9);
}

TEST_CASE("zero vectors decide true") {
  auto l2 = SpaceDescriptor::lp(Field::Real, 2, 2.0);
  CHECK(bj_orthogonal(l2, rv({0, 0}), rv({1, 2})).decision);
  CHECK(bj_orthogonal(l2, rv({1, 2}), rv({0, 0})).decision);
}

TEST_CASE("directional orthogonality on complex scalars") {
  // x = 1, y = i: ||1 + t*i|| = sqrt(1+t^2) >= 1, but lambda = -i kills it
  auto c1 = SpaceDescriptor::lp(Field::Complex, 1, 2.0);
  Vector x, y;
  x.c = {Scalar(1, 0)};
  y.c = {Scalar(0, 1)};
  CHECK(directional_orthogonal(c1, x, y, Scalar(1, 0)).decision);
  auto full = bj_orthogonal(c1, x, y);
  CHECK(!full.decision);
  CHECK(full.margin == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("real field: directional at gamma = 1 coincides with the full test") {
  Rng rng(3);
  auto l1 = SpaceDescriptor::lp(Field::Real, 3, 1.0);
  for (int i = 0; i < 200; ++i) {
    Vector x = rng.vector(Field::Real, 3), y = rng.vector(Field::Real, 3);
    if (l1.norm(x) < 1e-6) continue;
    auto a = bj_orthogonal(l1, x, y);
    auto b = directional_orthogonal(l1, x, y, Scalar(1, 0));
    if (std::abs(a.margin) < 2e-7 * l1.norm(x)) continue;
    CHECK(a.decision == b.decision);
  }
}

TEST_CASE("complex: orthogonal iff directionally orthogonal in every direction") {
  Rng rng(5);
  auto l2 = SpaceDescriptor::lp(Field::Complex, 2, 2.0);
  int informative = 0;
  for (int i = 0; i < 40; ++i) {
    Vector x = gen::random_unit_vector(l2, rng);
    Vector y = i % 2 == 0 ? rng.vector(Field::Complex, 2) : gen::orthogonal_direction(l2, x, rng);
    auto full = bj_orthogonal(l2, x, y);
    if (std::abs(full.margin) > 1e-9 && std::abs(full.margin) < 3e-7) continue;
    bool all = true;
    for (int k = 0; k < 90; ++k) {
      double a = 2 * M_PI * k / 90;
      if (!directional_orthogonal(l2, x, y, Scalar(std::cos(a), std::sin(a))).decision) {
        all = false;
        break;
      }
    }
    CHECK(full.decision == all);
    ++informative;
  }
  CHECK(informative >= 30);
}

TEST_CASE("james witness on the Hilbert axis pair") {
  auto l2 = SpaceDescriptor::lp(Field::Real, 2, 2.0);
  auto w = james_witness(l2, rv({1, 0}), rv({0, 1}));
  REQUIRE(w.functional.has_value());
  CHECK(std::abs((*w.functional)[0] - Scalar(1.0)) < 1e-9);
  CHECK(std::abs((*w.functional)[1]) < 1e-9);
}

TEST_CASE("james witness combines sup-norm face corners with Caratheodory weights") {
  auto linf = SpaceDescriptor::lp(Field::Real, 2, kInfinity);
  auto w = james_witness(linf, rv({1, 1}), rv({1, -1}));
  REQUIRE(w.functional.has_value());
  const auto& phi = *w.functional;
  // phi = (1/2, 1/2): the only face combination killing y
  CHECK(std::abs(phi[0] - Scalar(0.5)) < 1e-9);
  CHECK(std::abs(phi[1] - Scalar(0.5)) < 1e-9);
  CHECK(linf.dual_norm(phi) == doctest::Approx(1.0));
  CHECK(std::abs(phi(rv({1, 1})) - Scalar(1.0)) < 1e-9);
  CHECK(std::abs(phi(rv({1, -1}))) < 1e-9);
}

TEST_CASE("no witness for a non-orthogonal pair, and the margin says why") {
  auto l2 = SpaceDescriptor::lp(Field::Real, 2, 2.0);
  auto verdict = bj_orthogonal(l2, rv({1, 0}), rv({1, 0.2}));
  CHECK(!verdict.decision);
  CHECK(verdict.margin < -1e-7);
  auto w = james_witness(l2, rv({1, 0}), rv({1, 0.2}));
  CHECK(!w.functional.has_value());
  CHECK(!w.unknown);
}

TEST_CASE("Fact-of-James equivalence across space families") {
  Rng rng(17);
  for (auto& fam : gen::vector_families()) {
    int informative = 0;
    for (int i = 0; i < 60; ++i) {
      auto space = gen::space_family(fam, 3, rng);
      Vector x = gen::random_unit_vector(space, rng);
      Vector y;
      if (i % 3 == 0)
        y = gen::random_vector(space, rng);
      else if (i % 3 == 1)
        y = gen::orthogonal_direction(space, x, rng);
      else
        y = gen::orthogonal_direction(space, x, rng) + Scalar(2e-3) * x;
      auto verdict = bj_orthogonal(space, x, y);
      auto wit = james_witness(space, x, y);
      if (wit.unknown) continue;
      if (std::abs(verdict.margin) > 1e-9 && std::abs(verdict.margin) < 3e-7) continue;
      CHECK_MESSAGE(verdict.decision == wit.functional.has_value(),
                    fam << " margin=" << verdict.margin);
      ++informative;
    }
    CHECK(informative >= 50);
  }
}

TEST_CASE("Hilbert specialization: BJ-orthogonality is inner-product orthogonality") {
  Rng rng(23);
  auto l2 = SpaceDescriptor::lp(Field::Complex, 3, 2.0);
  for (int i = 0; i < 100; ++i) {
    Vector x = rng.vector(Field::Complex, 3), y = rng.vector(Field::Complex, 3);
    double nx = l2.norm(x), ny = l2.norm(y);
    if (nx < 1e-6 || ny < 1e-6) continue;
    Scalar inner = 0.0;
    for (int k = 0; k < 3; ++k) inner += x[k] * std::conj(y[k]);
    bool ip_orth = std::abs(inner) <= 1e-7 * nx * ny;
    if (std::abs(std::abs(inner) - 1e-7 * nx * ny) < 5e-8 * nx * ny) continue;
    CHECK(bj_orthogonal(l2, x, y).decision == ip_orth);
  }
}

TEST_CASE("homogeneity of the decision") {
  Rng rng(29);
  auto l1 = SpaceDescriptor::lp(Field::Real, 3, 1.0);
  for (int i = 0; i < 50; ++i) {
    Vector x = gen::random_unit_vector(l1, rng);
    Vector y = i % 2 == 0 ? gen::random_vector(l1, rng) : gen::orthogonal_direction(l1, x, rng);
    double a = std::exp(rng.normal()), b = std::exp(rng.normal());
    auto v1 = bj_orthogonal(l1, x, y);
    auto v2 = bj_orthogonal(l1, Scalar(a) * x, Scalar(b) * y);
    if (std::abs(v1.margin) > 1e-9 && std::abs(v1.margin) < 3e-7) continue;
    CHECK(v1.decision == v2.decision);
    CHECK(v2.margin == doctest::Approx(a * v1.margin).epsilon(1e-5).scale(1.0));
  }
}

TEST_CASE("best approximation: least squares on Hilbert space") {
  Rng rng(31);
  auto l2 = SpaceDescriptor::lp(Field::Real, 3, 2.0);
  for (int i = 0; i < 50; ++i) {
    Vector x = rng.vector(Field::Real, 3), y = rng.vector(Field::Real, 3);
    if (l2.norm(y) < 1e-6) continue;
    auto b = best_approximation(l2, x, y);
    double xy = 0.0, yy = 0.0;
    for (int k = 0; k < 3; ++k) {
      xy += x[k].real() * y[k].real();
      yy += y[k].real() * y[k].real();
    }
    CHECK(b.lambda.real() == doctest::Approx(xy / yy).epsilon(1e-7));
    auto res = bj_orthogonal(l2, b.residual, y);
    if (l2.norm(b.residual) > 1e-6) CHECK(res.margin >= -1e-6);
  }
}

TEST_CASE("best approximation: collinear input and the l1 kink") {
  auto l2 = SpaceDescriptor::lp(Field::Real, 2, 2.0);
  auto b = best_approximation(l2, rv({2, 4}), rv({1, 2}));
  CHECK(l2.norm(b.residual) < 1e-8);

  // minimize |1 - t| + 1 over t: attained at t = 1, residual (0,1)
  auto l1 = SpaceDescriptor::lp(Field::Real, 2, 1.0);
  auto c = best_approximation(l1, rv({1, 1}), rv({1, 0}));
  CHECK(c.lambda.real() == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(c.residual[0]) < 1e-6);
  CHECK(std::abs(c.residual[1] - Scalar(1.0)) < 1e-9);
}

TEST_CASE("residual orthogonality across families") {
  Rng rng(37);
  for (auto& fam : gen::vector_families()) {
    auto space = gen::space_family(fam, 3, rng);
    for (int i = 0; i < 25; ++i) {
      Vector x = gen::random_vector(space, rng), y = gen::random_vector(space, rng);
      if (space.norm(y) < 1e-6) continue;
      auto b = best_approximation(space, x, y);
      if (space.norm(b.residual) < 1e-8) continue;
      auto v = bj_orthogonal(space, b.residual, y);
      CHECK(v.margin >= -1e-5 * std::max(1.0, space.norm(b.residual)));
    }
  }
}

TEST_CASE("directional witness certifies the directional verdicts") {
  auto c1 = SpaceDescriptor::lp(Field::Complex, 1, 2.0);
  Vector x, y;
  x.c = {Scalar(1, 0)};
  y.c = {Scalar(0, 1)};
  auto w = directional_witness(c1, x, y, Scalar(1, 0));
  REQUIRE(w.functional.has_value());
  // x*(x) = gamma ||x|| = 1 and Re x*(y) = Re(i) = 0
  CHECK(std::abs((*w.functional)(x) - Scalar(1.0)) < 1e-9);
  CHECK(std::abs(((*w.functional)(y)).real()) < 1e-9);

  Rng rng(41);
  auto l2 = SpaceDescriptor::lp(Field::Complex, 2, 2.0);
  for (int i = 0; i < 40; ++i) {
    Vector a = gen::random_unit_vector(l2, rng);
    Vector b = rng.vector(Field::Complex, 2);
    double ang = 2 * M_PI * rng.uniform();
    Scalar gamma(std::cos(ang), std::sin(ang));
    auto verdict = directional_orthogonal(l2, a, b, gamma);
    if (std::abs(verdict.margin) > 1e-9 && std::abs(verdict.margin) < 3e-7) continue;
    auto dw = directional_witness(l2, a, b, gamma);
    if (dw.unknown) continue;
    CHECK(verdict.decision == dw.functional.has_value());
  }
}

TEST_CASE("right-additivity holds at smooth points and can fail at corners") {
  Rng rng(47);
  // smooth space: x orthogonal to y and to z forces x orthogonal to y + z
  auto l3 = SpaceDescriptor::lp(Field::Real, 3, 3.0);
  for (int i = 0; i < 30; ++i) {
    Vector x = gen::random_unit_vector(l3, rng);
    Vector y = gen::orthogonal_direction(l3, x, rng);
    Vector z = gen::orthogonal_direction(l3, x, rng);
    REQUIRE(bj_orthogonal(l3, x, y).decision);
    REQUIRE(bj_orthogonal(l3, x, z).decision);
    CHECK(bj_orthogonal(l3, x, y + z).decision);
  }
  // sup-norm corner: (1,1) is orthogonal to (1,-1) and to (-1,1) separately,
  // and also to their sum 0, but different face functionals witness each;
  // a genuine additivity failure needs three directions
  auto linf = SpaceDescriptor::lp(Field::Real, 2, kInfinity);
  Vector x{Scalar(1), Scalar(1)};
  Vector y{Scalar(1), Scalar(-1)};
  Vector z{Scalar(-0.2), Scalar(1.5)};
  CHECK(bj_orthogonal(linf, x, y).decision);
  CHECK(bj_orthogonal(linf, x, z).decision);
  // y + z = (0.8, 0.5): both coordinates shrink together, so not orthogonal
  CHECK(!bj_orthogonal(linf, x, y + z).decision);
  CHECK(!linf.is_smooth_point(x).smooth);
}

TEST_CASE("minimizer value matches a dense lambda grid") {
  Rng rng(43);
  for (auto fam : {"l2c", "l1r", "linfr"}) {
    auto space = gen::space_family(fam, 2, rng);
    for (int i = 0; i < 10; ++i) {
      Vector x = gen::random_unit_vector(space, rng);
      Vector y = gen::random_unit_vector(space, rng);
      NormFn nf = [&](const Vector& w) { return space.norm(w); };
      auto m = minimize_norm_lambda(nf, x, y, space.field(), 2.0);
      double best = kInfinity;
      Vector work;
      if (space.field() == Field::Real) {
        for (int k = 0; k <= 40000; ++k) {
          double t = -2.0 + 4.0 * k / 40000;
          axpy_into(x, Scalar(t, 0), y, work);
          best = std::min(best, space.norm(work));
        }
      } else {
        for (int a = 0; a <= 250; ++a)
          for (int b = 0; b <= 250; ++b) {
            Scalar l(-2.0 + 4.0 * a / 250, -2.0 + 4.0 * b / 250);
            axpy_into(x, l, y, work);
            best = std::min(best, space.norm(work));
          }
      }
      CHECK(m.value <= best + 1e-6);
    }
  }
}
