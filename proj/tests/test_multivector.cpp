#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "geocalc/multivector.hpp"

using namespace geocalc;

namespace {

const Signature kEuclid2{2, 0};
const Signature kEuclid3{3, 0};
const Signature kLorentz{1, 3};
const Domain kDom({"t", "p"}, {{{0.2, 2.9}}, {{0.2, 6.0}}});

Multivector th(Signature s, int i) { return Multivector::basis(s, i); }
Multivector one(Signature s) {
  return Multivector::scalar(s, Expr::integer(1));
}

bool same(const Multivector& a, const Multivector& b) {
  return mv_num_equal(a, b, kDom);
}

// deterministic small random forms with trig coefficients over (t,p)
Multivector rand_hom(Signature s, int grade, unsigned seed) {
  Multivector out(s);
  unsigned state = seed * 747796405u + 2891336453u;
  auto next = [&state]() {
    state = state * 747796405u + 2891336453u;
    return (state >> 16) % 7;
  };
  for (uint32_t m = 0; m < (1u << s.n()); ++m) {
    if (std::popcount(m) != grade) continue;
    Expr c = Expr::rational(static_cast<long long>(next()) - 3, 1 + next() % 3);
    c = c + Expr::rational(static_cast<long long>(next()) - 3, 2) *
                (next() % 2 ? Expr::sin(Expr::coord("t"))
                            : Expr::cos(Expr::coord("p")));
    out.accumulate(m, c);
  }
  return out;
}

}  // namespace

TEST_CASE("wedge basics") {
  auto t1 = th(kEuclid2, 0), t2 = th(kEuclid2, 1);
  CHECK(same(t1.wedge(t2), Multivector::blade(kEuclid2, 0b11, Expr::integer(1))));
  CHECK(t1.wedge(t1).is_structural_zero());
  // (theta1 + theta2) ^ (theta1 - theta2) = -2 theta1^theta2
  auto a = t1 + t2, b = t1 - t2;
  CHECK(same(a.wedge(b),
             Multivector::blade(kEuclid2, 0b11, Expr::integer(-2))));
}

TEST_CASE("wedge graded commutativity and associativity") {
  for (unsigned seed = 0; seed < 6; ++seed) {
    for (int r = 0; r <= 2; ++r)
      for (int s = 0; s <= 2; ++s) {
        auto A = rand_hom(kEuclid3, r, seed), B = rand_hom(kEuclid3, s, seed + 7);
        auto lhs = A.wedge(B);
        auto rhs = B.wedge(A);
        CHECK(same(lhs, (r * s) % 2 ? -rhs : rhs));
      }
    auto A = rand_hom(kEuclid3, 1, seed), B = rand_hom(kEuclid3, 1, seed + 3),
         C = rand_hom(kEuclid3, 1, seed + 5);
    CHECK(same(A.wedge(B.wedge(C)), A.wedge(B).wedge(C)));
  }
}

TEST_CASE("scalar product golden values") {
  CHECK(th(kEuclid2, 0).scalar_product(th(kEuclid2, 0)).eval({}) ==
        doctest::Approx(1.0));
  CHECK(th(kEuclid2, 0).scalar_product(th(kEuclid2, 1)).is_zero());
  // (theta0 ^ theta1).(theta0 ^ theta1) = eta00*eta11 = -1 in Cl(1,3)
  auto b01 = th(kLorentz, 0).wedge(th(kLorentz, 1));
  CHECK(b01.scalar_product(b01).eval({}) == doctest::Approx(-1.0));
  // different grades give zero
  CHECK(one(kEuclid2).scalar_product(th(kEuclid2, 0)).is_zero());
}

TEST_CASE("left contraction golden values") {
  auto t1 = th(kEuclid2, 0), t2 = th(kEuclid2, 1);
  auto b12 = t1.wedge(t2);
  CHECK(same(t1.left_contract(b12), t2));
  CHECK(same(t2.left_contract(b12), -t1));
  // scalar acts by multiplication
  auto three = Multivector::scalar(kEuclid2, Expr::integer(3));
  CHECK(same(three.left_contract(t1), t1.scaled(Expr::integer(3))));
  // grade r > s vanishes
  CHECK(b12.left_contract(t1).is_structural_zero());
}

TEST_CASE("right contraction golden values") {
  auto t1 = th(kEuclid3, 0), t2 = th(kEuclid3, 1), t3 = th(kEuclid3, 2);
  auto b12 = t1.wedge(t2);
  CHECK(same(b12.right_contract(t2), t1));
  CHECK(b12.right_contract(t3).is_structural_zero());
  auto A = rand_hom(kEuclid3, 2, 5);
  CHECK(same(A.right_contract(one(kEuclid3)), A));
}

TEST_CASE("contraction duality (B_s _| A_r) = (-1)^{s(r-s)} (A_r |_ B_s)") {
  for (unsigned seed = 0; seed < 8; ++seed)
    for (int r = 0; r <= 3; ++r)
      for (int s = 0; s <= r; ++s) {
        auto A = rand_hom(kEuclid3, r, seed), B = rand_hom(kEuclid3, s, seed + 11);
        auto lhs = B.left_contract(A);
        auto rhs = A.right_contract(B);
        CHECK(same(lhs, (s * (r - s)) % 2 ? -rhs : rhs));
      }
}

TEST_CASE("clifford product golden values") {
  // spacelike square in Cl(1,3)
  auto sp = th(kLorentz, 1);
  CHECK(sp.clifford(sp).scalar_part().eval({}) == doctest::Approx(-1.0));
  // orthogonal generators multiply into the wedge
  auto t1 = th(kEuclid2, 0), t2 = th(kEuclid2, 1);
  CHECK(same(t1.clifford(t2), t1.wedge(t2)));
  // (theta1 theta2)^2 = -1 in Cl(2,0)
  auto b = t1.wedge(t2);
  CHECK(b.clifford(b).scalar_part().eval({}) == doctest::Approx(-1.0));
  // anticommutator gives the metric
  for (int a = 0; a < 4; ++a)
    for (int bb = 0; bb < 4; ++bb) {
      auto anti = th(kLorentz, a).clifford(th(kLorentz, bb)) +
                  th(kLorentz, bb).clifford(th(kLorentz, a));
      double want = (a == bb) ? 2.0 * kLorentz.eta(a) : 0.0;
      CHECK(anti.scalar_part().eval({}) == doctest::Approx(want));
      CHECK(anti.grade_project(2).is_structural_zero());
    }
}

TEST_CASE("clifford associativity on random elements") {
  for (unsigned seed = 0; seed < 5; ++seed) {
    auto A = rand_hom(kLorentz, 1, seed) + rand_hom(kLorentz, 2, seed + 1);
    auto B = rand_hom(kLorentz, 0, seed + 2) + rand_hom(kLorentz, 3, seed + 3);
    auto C = rand_hom(kLorentz, 1, seed + 4);
    CHECK(same(A.clifford(B).clifford(C), A.clifford(B.clifford(C))));
  }
}

TEST_CASE("reversion and grade projection") {
  auto t1 = th(kEuclid2, 0), t2 = th(kEuclid2, 1);
  auto b = t1.wedge(t2);
  CHECK(same(b.reversion(), -b));
  CHECK(same(t1.reversion(), t1));
  auto A = one(kEuclid2) + t1 + b;
  CHECK(same(A.reversion().reversion(), A));
  CHECK(same(A.grade_project(1), t1));
  CHECK(A.grade_project(3).is_structural_zero());
  CHECK(t1.clifford(t2).grade_project(0).is_structural_zero());
  // sum of projections reassembles the element
  Multivector back(kEuclid2);
  for (int r = 0; r <= 2; ++r) back = back + A.grade_project(r);
  CHECK(same(back, A));
}

TEST_CASE("hodge star golden values") {
  auto tau2 = Multivector::pseudoscalar(kEuclid2);
  CHECK(same(one(kEuclid2).hodge_star(tau2), tau2));
  CHECK(same(th(kEuclid2, 0).wedge(th(kEuclid2, 1)).hodge_star(tau2),
             one(kEuclid2)));
  CHECK(tau2.hodge_star(tau2).scalar_part().eval({}) == doctest::Approx(1.0));

  auto tau4 = Multivector::pseudoscalar(kLorentz);
  CHECK(tau4.hodge_star(tau4).scalar_part().eval({}) ==
        doctest::Approx(-1.0));  // *tau = sign g
  // *theta^0 = theta^1^theta^2^theta^3 (expansion of the reversed product)
  CHECK(same(th(kLorentz, 0).hodge_star(tau4),
             th(kLorentz, 1).wedge(th(kLorentz, 2)).wedge(th(kLorentz, 3))));
}

TEST_CASE("hodge inverse round trips") {
  auto tau2 = Multivector::pseudoscalar(kEuclid2);
  CHECK(same(tau2.hodge_inverse(tau2), one(kEuclid2)));
  CHECK(same(th(kEuclid2, 0).hodge_star(tau2).hodge_inverse(tau2),
             th(kEuclid2, 0)));
  auto tau4 = Multivector::pseudoscalar(kLorentz);
  auto b01 = th(kLorentz, 0).wedge(th(kLorentz, 1));
  CHECK(same(b01.hodge_star(tau4).hodge_inverse(tau4), b01));
  for (unsigned seed = 0; seed < 4; ++seed)
    for (int r = 0; r <= 4; ++r) {
      auto A = rand_hom(kLorentz, r, seed);
      CHECK(same(A.hodge_star(tau4).hodge_inverse(tau4), A));
    }
}

TEST_CASE("identity suite: a B = a _| B + a ^ B and half-commutators") {
  for (Signature sig : {kEuclid3, kLorentz}) {
    auto tau = Multivector::pseudoscalar(sig);
    for (unsigned seed = 0; seed < 6; ++seed) {
      auto a = rand_hom(sig, 1, seed);
      for (int s = 0; s <= sig.n(); ++s) {
        auto B = rand_hom(sig, s, seed + 17 + s);
        auto aB = a.clifford(B);
        CHECK(same(aB, a.left_contract(B) + a.wedge(B)));
        auto Ba = B.clifford(a);
        auto half = Expr::rational(1, 2);
        auto signedBa = (s % 2) ? -Ba : Ba;
        CHECK(same(a.left_contract(B), (aB - signedBa).scaled(half)));
        CHECK(same(a.wedge(B), (aB + signedBa).scaled(half)));
      }
    }
  }
}

TEST_CASE("identity suite: A_r . B_r = <rev(A) B>_0") {
  for (unsigned seed = 0; seed < 6; ++seed)
    for (int r = 0; r <= 3; ++r) {
      auto A = rand_hom(kEuclid3, r, seed), B = rand_hom(kEuclid3, r, seed + 23);
      Expr lhs = A.scalar_product(B);
      Expr rhs = A.reversion().clifford(B).scalar_part();
      CHECK(num_equal(lhs, rhs, kDom));
      CHECK(num_equal(lhs, B.scalar_product(A), kDom));
    }
}

TEST_CASE("identity suite: T54 and T50") {
  for (Signature sig : {kEuclid3, kLorentz}) {
    for (unsigned seed = 0; seed < 5; ++seed) {
      auto a = rand_hom(sig, 1, seed);
      for (int r = 0; r <= 2; ++r)
        for (int s = 0; s <= 2; ++s) {
          auto X = rand_hom(sig, r, seed + 31 + r);
          auto Y = rand_hom(sig, s, seed + 41 + s);
          // a _| (X ^ Y) = (a _| X) ^ Y + X-hat ^ (a _| Y)
          auto lhs = a.left_contract(X.wedge(Y));
          auto rhs = a.left_contract(X).wedge(Y) +
                     X.grade_involution().wedge(a.left_contract(Y));
          CHECK(same(lhs, rhs));
          // A _| (B _| C) = (A ^ B) _| C
          auto C = rand_hom(sig, 3, seed + 51);
          CHECK(same(X.left_contract(Y.left_contract(C)),
                     X.wedge(Y).left_contract(C)));
        }
    }
  }
}

TEST_CASE("identity suite: hodge relations") {
  for (Signature sig : {kEuclid2, kEuclid3, kLorentz}) {
    auto tau = Multivector::pseudoscalar(sig);
    int n = sig.n();
    for (unsigned seed = 0; seed < 4; ++seed)
      for (int r = 0; r <= n; ++r)
        for (int s = 0; s <= n; ++s) {
          auto A = rand_hom(sig, r, seed + r), B = rand_hom(sig, s, seed + 61 + s);
          if (r == s)
            CHECK(same(A.wedge(B.hodge_star(tau)), B.wedge(A.hodge_star(tau))));
          if (r + s == n) {
            // symmetric only up to (-1)^{rs}: already false for two 1-forms
            // in Cl(2,0), theta1.(*theta2) = -1 but theta2.(*theta1) = +1
            Expr lhs = A.scalar_product(B.hodge_star(tau));
            Expr rhs = B.scalar_product(A.hodge_star(tau));
            CHECK(num_equal(lhs, (r * s) % 2 ? -rhs : rhs, kDom));
          }
          if (r <= s) {
            auto lhs = A.wedge(B.hodge_star(tau));
            auto rhs = A.reversion().left_contract(B).hodge_star(tau);
            CHECK(same(lhs, (r * (s - 1)) % 2 ? -rhs : rhs));
          }
          if (r + s <= n) {
            auto lhs = A.left_contract(B.hodge_star(tau));
            auto rhs = A.reversion().wedge(B).hodge_star(tau);
            CHECK(same(lhs, (r * s) % 2 ? -rhs : rhs));
          }
        }
  }
}

TEST_CASE("signature mismatch is rejected") {
  CHECK_THROWS_AS(th(kEuclid2, 0).wedge(th(kEuclid3, 0)), SignatureError);
  CHECK_THROWS_AS(th(kEuclid2, 0).clifford(th(kLorentz, 0)), SignatureError);
  CHECK_THROWS_AS(one(kEuclid2).hodge_star(th(kEuclid2, 0)), SignatureError);
}
