#include <doctest.h>

#include "banach_ortho/generators.hpp"
#include "banach_ortho/operator_geometry.hpp"

using namespace bjo;

namespace {

Eigen::MatrixXcd mat2(double a, double b, double c, double d) {
  Eigen::MatrixXcd m(2, 2);
  m << a, b, c, d;
  return m;
}

Vector rv(std::initializer_list<double> v) {
  Vector x;
  for (double c : v) x.c.push_back(Scalar(c, 0.0));
  return x;
}

const SpaceDescriptor l2r2 = SpaceDescriptor::lp(Field::Real, 2, 2.0);
const SpaceDescriptor l2c2 = SpaceDescriptor::lp(Field::Complex, 2, 2.0);
const SpaceDescriptor l1r2 = SpaceDescriptor::lp(Field::Real, 2, 1.0);
const SpaceDescriptor linfr2 = SpaceDescriptor::lp(Field::Real, 2, kInfinity);

}  // namespace

TEST_CASE("operator norms on exact paths") {
  auto l23 = SpaceDescriptor::lp(Field::Real, 3, 2.0);
  OperatorDescriptor id3(l23, l23, Eigen::MatrixXcd::Identity(3, 3));
  CHECK(operator_norm(id3).value == doctest::Approx(1.0));

  OperatorDescriptor diag(l2r2, l2r2, mat2(1, 0, 0, 2));
  auto r = operator_norm(diag);
  CHECK(r.value == doctest::Approx(2.0));
  CHECK(r.exact);
  CHECK(std::abs(std::abs(r.witness[1]) - 1.0) < 1e-9);

  // l1 -> linf column rule: both columns have sup norm 1
  OperatorDescriptor T(l1r2, linfr2, mat2(1, 1, 1, -1));
  auto c = operator_norm(T);
  CHECK(c.value == doctest::Approx(1.0));
  CHECK(c.exact);
  // sphere-sampling cross-check stays below the column bound
  Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    Vector x = rng.vector(Field::Real, 2);
    double nx = l1r2.norm(x);
    if (nx < 1e-9) continue;
    CHECK(linfr2.norm(T.apply(x)) / nx <= c.value + 1e-9);
  }
}

TEST_CASE("ascent fallback is a tight lower bound on l3 -> l3") {
  auto l33 = SpaceDescriptor::lp(Field::Real, 3, 3.0);
  Rng rng(5);
  for (int i = 0; i < 5; ++i) {
    auto T = gen::random_operator(l33, l33, rng);
    auto r = operator_norm(T);
    CHECK(!r.exact);
    // witness certifies the value as attained
    CHECK(l33.norm(T.apply(r.witness)) == doctest::Approx(r.value).epsilon(1e-9));
    // no sampled direction beats it
    SphereSampler sampler(Field::Real, 3, 55 + i);
    for (int k = 0; k < 2000; ++k) {
      Vector x = sampler.next();
      CHECK(l33.norm(T.apply(x)) / l33.norm(x) <= r.value + 1e-6);
    }
  }
}

TEST_CASE("attainment sets") {
  OperatorDescriptor diag(l2r2, l2r2, mat2(2, 0, 0, 1));
  auto a = attainment_set(diag);
  CHECK(a.exhaustive);
  CHECK(a.subspace_basis.size() == 1);
  CHECK(std::abs(std::abs(a.members.front()[0]) - 1.0) < 1e-9);

  OperatorDescriptor eye(l2r2, l2r2, mat2(1, 0, 0, 1));
  auto b = attainment_set(eye);
  CHECK(b.exhaustive);
  CHECK(b.subspace_basis.size() == 2);

  OperatorDescriptor T(l1r2, linfr2, mat2(1, 1, 1, -1));
  auto c = attainment_set(T);
  CHECK(c.exhaustive);
  CHECK(c.members.size() == 4);  // +-e1, +-e2 all attain
}

TEST_CASE("general orthogonality test on Hilbert diagonals") {
  OperatorDescriptor T(l2r2, l2r2, mat2(1, 0, 0, 0));
  OperatorDescriptor A(l2r2, l2r2, mat2(0, 0, 0, 1));
  auto v = op_bj_general(T, A, {}, 128, 1);
  CHECK(v.decision);

  auto w = op_bj_general(T, T, {}, 128, 1);
  CHECK(!w.decision);
  CHECK(w.margin < -0.5);
}

TEST_CASE("general test matches the definition-level test on the operator space") {
  Rng rng(7);
  struct Case {
    SpaceDescriptor X, Y;
  };
  std::vector<Case> cases = {{l2r2, l2r2}, {l1r2, linfr2}};
  for (auto& cs : cases) {
    auto opspace = operator_space(cs.X, cs.Y);
    int informative = 0, agree = 0;
    for (int i = 0; i < 200; ++i) {
      auto T = gen::random_operator(cs.X, cs.Y, rng);
      auto A = gen::random_operator(cs.X, cs.Y, rng);
      auto general = op_bj_general(T, A, {}, 192, 100 + i);
      auto defn = bj_orthogonal(opspace, flatten(T), flatten(A));
      double nT = operator_norm(T).value;
      if (std::abs(defn.margin) < 1e-4 * nT) continue;  // boundary band
      if (std::abs(general.margin) < 1e-4 * operator_norm(A).value) continue;
      ++informative;
      if (general.decision == defn.decision) ++agree;
    }
    CHECK(informative >= 160);
    CHECK(double(agree) / informative >= 0.99);
  }
}

TEST_CASE("extreme-pair test: identity vs swap on l1 -> linf") {
  OperatorDescriptor T(l1r2, linfr2, mat2(1, 0, 0, 1));
  OperatorDescriptor A(l1r2, linfr2, mat2(0, 1, 1, 0));
  // full enumeration oracle: pairs (x, y*) over {+-e_j} x {+-e_k*} with
  // y*(Tx) = 1 give values y*(Ax)
  auto xs = l1r2.ball_extreme_points();
  auto ys = linfr2.dual_extreme_points();
  std::vector<Scalar> values;
  for (auto& x : xs)
    for (auto& y : ys)
      if (std::abs(y(T.apply(x)) - Scalar(1.0)) < 1e-12) values.push_back(y(A.apply(x)));
  REQUIRE(!values.empty());
  auto oracle = zero_in_conv(ScalarSet{Field::Real, values}, 1e-9);

  auto v = op_bj_extreme(T, A);
  CHECK(v.decision == oracle.inside());
  CHECK(v.decision);  // swap kills the diagonal pairs

  auto w = op_bj_extreme(T, T);
  CHECK(!w.decision);
}

TEST_CASE("extreme and general tests agree on random polytope-norm pairs") {
  Rng rng(11);
  int informative = 0;
  for (int i = 0; i < 40; ++i) {
    auto T = gen::random_operator(l1r2, linfr2, rng);
    auto A = gen::random_operator(l1r2, linfr2, rng);
    auto e = op_bj_extreme(T, A);
    auto g = op_bj_general(T, A, {}, 192, 200 + i);
    double nA = operator_norm(A).value;
    if (std::abs(e.margin) < 1e-4 * nA || std::abs(g.margin) < 1e-4 * nA) continue;
    CHECK(e.decision == g.decision);
    ++informative;
  }
  CHECK(informative >= 32);
}

TEST_CASE("Hilbert criterion: diag(1,-1) against the identity") {
  OperatorDescriptor T(l2r2, l2r2, mat2(1, 0, 0, 1));
  OperatorDescriptor A(l2r2, l2r2, mat2(1, 0, 0, -1));
  auto v = bhatia_semrl(T, A);
  CHECK(v.decision);
  REQUIRE(v.witness_vector.has_value());
  // the witness x has ||Tx|| = ||T|| and <Tx, Ax> = 0
  auto& x = *v.witness_vector;
  CHECK(l2r2.norm(T.apply(x)) == doctest::Approx(1.0).epsilon(1e-8));
  Scalar inner = 0.0;
  Vector tx = T.apply(x), ax = A.apply(x);
  for (int k = 0; k < 2; ++k) inner += tx[k] * std::conj(ax[k]);
  CHECK(std::abs(inner) < 1e-6);

  CHECK(!bhatia_semrl(T, T).decision);
  CHECK_THROWS_AS(bhatia_semrl(OperatorDescriptor(l1r2, linfr2, mat2(1, 0, 0, 1)),
                               OperatorDescriptor(l1r2, linfr2, mat2(0, 1, 1, 0))),
                  CapabilityError);
}

TEST_CASE("band form agrees with the attainment form for small bands") {
  Rng rng(13);
  auto H = SpaceDescriptor::lp(Field::Complex, 2, 2.0);
  int informative = 0;
  for (int i = 0; i < 14; ++i) {
    auto T = gen::random_operator(H, H, rng);
    auto A0 = gen::random_operator(H, H, rng);
    auto A = i % 2 == 0 ? A0 : gen::make_orthogonal_to(T, A0);
    auto exact = bhatia_semrl(T, A);
    auto seq = bs_sequential(T, A, 384, 300 + i);
    double scale = operator_norm(T).value * operator_norm(A).value;
    // skip only the fragile zone around the decision threshold; a margin
    // near zero is a solid "orthogonal"
    double d = std::abs(exact.margin) / scale;
    if (d > 1e-9 && d < 1e-4) continue;
    CHECK(exact.decision == seq.decision);
    ++informative;
  }
  CHECK(informative >= 12);
}

TEST_CASE("band minima track the attainment form on a near-degenerate gap") {
  // T = diag(1, 1-eps), A = e2 (x) e2*: the attainment point e1 lies in every
  // band and kills <Tx, Ax>, so all rung minima vanish
  OperatorDescriptor T(l2r2, l2r2, mat2(1, 0, 0, 0.99));
  OperatorDescriptor A(l2r2, l2r2, mat2(0, 0, 0, 1));
  auto exact = bhatia_semrl(T, A);
  CHECK(exact.decision);
  auto seq = bs_sequential(T, A, 384, 5);
  CHECK(seq.decision);
  REQUIRE(!seq.rung_distances.empty());
  for (double m : seq.rung_distances) CHECK(m < 1e-6);
}

TEST_CASE("numerical radius: identity, real skew, complex skew") {
  OperatorDescriptor eye(l2r2, l2r2, mat2(1, 0, 0, 1));
  CHECK(v_radius(eye).value == doctest::Approx(1.0));

  OperatorDescriptor skew(l2r2, l2r2, mat2(0, 1, -1, 0));
  CHECK(v_radius(skew).value == doctest::Approx(0.0).epsilon(1e-10));

  OperatorDescriptor skewc(l2c2, l2c2, mat2(0, 1, -1, 0));
  CHECK(v_radius(skewc).value == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("numerical radius on polytope spaces matches the spear identity") {
  // on l1^2 and linf^2 the radius equals the operator norm pointwise
  Rng rng(17);
  for (int i = 0; i < 20; ++i) {
    auto T1 = gen::random_operator(l1r2, l1r2, rng);
    auto r1 = v_radius(T1);
    CHECK(r1.exhaustive);
    CHECK(r1.value == doctest::Approx(operator_norm(T1).value).epsilon(1e-9));
    auto T2 = gen::random_operator(linfr2, linfr2, rng);
    CHECK(v_radius(T2).value == doctest::Approx(operator_norm(T2).value).epsilon(1e-9));
  }
}

TEST_CASE("radius is bounded by the operator norm and witnesses verify") {
  Rng rng(19);
  for (auto fam : {"l2r", "l2c", "l1r", "linfr", "l3r"}) {
    auto X = gen::space_family(fam, 2, rng);
    for (int i = 0; i < 8; ++i) {
      auto T = gen::random_operator(X, X, rng);
      auto r = v_radius(T);
      CHECK(r.value <= operator_norm(T).value + 1e-7);
      if (r.witness) {
        auto& w = *r.witness;
        CHECK(X.norm(w.x) == doctest::Approx(1.0).epsilon(1e-7));
        CHECK(std::abs(w.xstar(w.x) - Scalar(1.0)) < 1e-7);
        CHECK(std::abs(w.xstar(T.apply(w.x))) == doctest::Approx(r.value).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("radius orthogonality: range of diag(1,-1) against the identity") {
  OperatorDescriptor T(l2c2, l2c2, mat2(1, 0, 0, 1));
  OperatorDescriptor A(l2c2, l2c2, mat2(1, 0, 0, -1));
  auto v = v_orthogonal(T, A, {}, 256, 1);
  CHECK(v.decision);
  auto w = v_orthogonal(T, T, {}, 256, 1);
  CHECK(!w.decision);
}

TEST_CASE("radius orthogonality matches the definition on the radius seminorm") {
  Rng rng(23);
  for (auto fam : {"l2r", "l1r"}) {
    auto X = gen::space_family(fam, 2, rng);
    auto vnorm = [X](const Vector& w) { return v_radius(unflatten(X, X, w)).value; };
    auto vspace = SpaceDescriptor::custom(X.field(), 4, "v-seminorm", vnorm);
    int informative = 0;
    for (int i = 0; i < 25; ++i) {
      auto T = gen::random_operator(X, X, rng);
      auto A = gen::random_operator(X, X, rng);
      if (v_radius(T).value < 1e-3) continue;
      auto hull = v_orthogonal(T, A, {}, 192, 400 + i);
      auto defn = bj_orthogonal(vspace, flatten(T), flatten(A));
      double scale = v_radius(A).value;
      if (std::abs(hull.margin) < 1e-4 * scale || std::abs(defn.margin) < 1e-4) continue;
      CHECK(hull.decision == defn.decision);
      ++informative;
    }
    CHECK(informative >= 18);
  }
}

TEST_CASE("numerical index of the real Euclidean plane is zero (skew witness)") {
  IndexBudget budget;
  budget.restarts = 24;
  auto r = numerical_index(l2r2, budget, 7);
  CHECK(r.upper <= 1e-6);
}

TEST_CASE("numerical index of l1 and linf planes is one") {
  IndexBudget budget;
  budget.restarts = 16;
  for (auto space : {l1r2, linfr2}) {
    auto r = numerical_index(space, budget, 7);
    CHECK(r.upper >= 1.0 - 1e-3);
    CHECK(r.upper <= 1.0 + 1e-9);
    REQUIRE(r.grid_lower.has_value());
    CHECK(*r.grid_lower >= 1.0 - 1e-3);
  }
}

TEST_CASE("numerical index of the complex Euclidean plane is one half") {
  IndexBudget budget;
  budget.restarts = 24;
  auto r = numerical_index(l2c2, budget, 11);
  CHECK(r.upper <= 0.51);
  // certify the witness through the rotation-trick radius
  double ratio = v_radius(r.witness).value / operator_norm(r.witness).value;
  CHECK(ratio >= 0.49);
  CHECK(ratio <= 0.51);
}

TEST_CASE("smooth-operator sufficient condition") {
  OperatorDescriptor diag(l2r2, l2r2, mat2(2, 0, 0, 1));
  auto rep = smooth_operator_sufficient(diag);
  CHECK(rep.applies);
  REQUIRE(rep.x0.has_value());
  CHECK(std::abs(std::abs((*rep.x0)[0]) - 1.0) < 1e-9);
  if (rep.operator_space_smooth) CHECK(rep.operator_space_smooth->smooth);

  OperatorDescriptor eye(l2r2, l2r2, mat2(1, 0, 0, 1));
  auto rep2 = smooth_operator_sufficient(eye);
  CHECK(!rep2.applies);  // attainment not unique up to phase
  auto opspace_check = operator_space(l2r2, l2r2).is_smooth_point(flatten(eye), kSmoothTol);
  CHECK(!opspace_check.smooth);
}

TEST_CASE("rank-one construction: T = e2 (x) e1* is smooth and orthogonal to the identity") {
  OperatorDescriptor eye(l2r2, l2r2, mat2(1, 0, 0, 1));
  auto rep = rank_one_orthogonal_smooth(eye, rv({1, 0}), Functional{Scalar(1), Scalar(0)},
                                        rv({0, 1}));
  REQUIRE(rep.ok);
  CHECK(rep.T->m(1, 0) == Scalar(1.0));
  CHECK(rep.orthogonal_to_A->decision);
  CHECK(rep.smooth->applies);
  // hand check: ||T + lambda I|| >= ||(T + lambda I) e1|| = ||e2 + lambda e1|| >= 1
  auto opspace = operator_space(l2r2, l2r2);
  CHECK(bj_orthogonal(opspace, flatten(*rep.T), flatten(eye)).decision);
}

TEST_CASE("rank-one construction reports failed hypotheses") {
  OperatorDescriptor eye(l2r2, l2r2, mat2(1, 0, 0, 1));
  // u0 not orthogonal to A x0 = e1
  auto rep = rank_one_orthogonal_smooth(eye, rv({1, 0}), Functional{Scalar(1), Scalar(0)},
                                        rv({1, 0.3}));
  CHECK(!rep.ok);
  REQUIRE(!rep.failed_hypotheses.empty());
}

TEST_CASE("rank-one construction on smooth p-norm domains") {
  auto l3 = SpaceDescriptor::lp(Field::Real, 2, 3.0);
  Rng rng(29);
  int ok_count = 0;
  for (int i = 0; i < 10; ++i) {
    auto A = gen::random_operator(l3, l3, rng);
    Vector x0 = gen::random_unit_vector(l3, rng);
    Functional x0star = l3.support_functionals(x0).members.front();
    Vector w = A.apply(x0);
    if (l3.norm(w) < 1e-6) continue;
    Vector u0 = best_approximation(l3, gen::random_vector(l3, rng), w).residual;
    if (l3.norm(u0) < 1e-6) continue;
    u0 = (1.0 / l3.norm(u0)) * u0;
    auto rep = rank_one_orthogonal_smooth(A, x0, x0star, u0);
    if (rep.ok) ++ok_count;
  }
  CHECK(ok_count >= 8);
}

TEST_CASE("spear obstruction for the identity on the Euclidean plane") {
  OperatorDescriptor eye(l2r2, l2r2, mat2(1, 0, 0, 1));
  auto rep = spear_obstruction_check(l2r2, l2r2, eye, 16, 3);
  REQUIRE(rep.obstruction_found);
  CHECK(rep.v_G_probe < rep.probe_norm - 0.3);
  CHECK(rep.spear_display_gap < -1e-3);
}

TEST_CASE("no obstruction reported for the identity on the sup-norm plane") {
  OperatorDescriptor eye(linfr2, linfr2, mat2(1, 0, 0, 1));
  auto rep = spear_obstruction_check(linfr2, linfr2, eye, 16, 3);
  CHECK(!rep.obstruction_found);
  CHECK(rep.note == "no obstruction found among candidates");
}

TEST_CASE("obstructions always exist into smooth codomains of dimension two") {
  Rng rng(31);
  auto Y = SpaceDescriptor::lp(Field::Real, 2, 3.0);
  for (auto fam : {"l2r", "l1r", "l3r"}) {
    auto X = gen::space_family(fam, 2, rng);
    for (int i = 0; i < 3; ++i) {
      auto G0 = gen::random_operator(X, Y, rng);
      double n = operator_norm(G0).value;
      if (n < 1e-6) continue;
      OperatorDescriptor G(X, Y, G0.m / n);
      auto rep = spear_obstruction_check(X, Y, G, 16, 100 + i);
      CHECK(rep.obstruction_found);
      if (rep.obstruction_found) CHECK(rep.spear_display_gap < -1e-4);
    }
  }
}
