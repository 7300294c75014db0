#include "doctest.h"
#include "generators.hpp"

#include "brokenlines/rep_space.hpp"

using namespace bl;

namespace {

const ExtReal kInf = ExtReal::pos_inf();

RepPoint gaps(std::initializer_list<ExtReal> g) {
  std::vector<ExtReal> v(g);
  return rep_from_gaps(v);
}

}  // namespace

TEST_CASE("extended reals") {
  CHECK(ExtReal(3) + kInf == kInf);
  CHECK(kInf + ExtReal(Rational(-7, 2)) == kInf);
  CHECK(ExtReal(Rational(1, 2)) + ExtReal(Rational(1, 3)) == ExtReal(Rational(5, 6)));
  CHECK_THROWS_AS(kInf + ExtReal::neg_inf(), DomainError);
  CHECK(ExtReal::neg_inf() < ExtReal(-1000));
  CHECK(ExtReal(1000) < kInf);
  CHECK(ExtReal::parse("-6/4") == ExtReal(Rational(-3, 2)));
  CHECK(ExtReal(Rational(-3, 2)).to_string() == "-3/2");
  CHECK(kInf.to_string() == "+inf");
  CHECK(format_rational(Rational(4)) == "4/1");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
}

TEST_CASE("rep_from_gaps") {
  auto single = rep_from_gaps({});
  CHECK(single.size() == 1);
  CHECK(single(0, 0) == ExtReal(0));
  CHECK(gaps({kInf})(0, 1).is_pos_inf());
  auto a = gaps({1, 2});
  CHECK(a(0, 2) == ExtReal(3));
  CHECK_FALSE(validate(a).has_value());
  CHECK_THROWS_AS(a(2, 0), std::out_of_range);
}

TEST_CASE("validate reports the first violation") {
  RepPoint bad(LinPreorder::chain(3), std::vector<ExtReal>(9));
  bad.set(0, 1, 1);
  bad.set(1, 2, 1);
  bad.set(0, 2, 3);
  auto v = validate(bad);
  REQUIRE(v.has_value());
  CHECK(v->kind == RepViolation::Kind::Cocycle);
  CHECK(v->i == 0);
  CHECK(v->j == 1);
  CHECK(v->k == 2);

  RepPoint inf_on_equiv(LinPreorder::indiscrete(2), std::vector<ExtReal>(4));
  inf_on_equiv.set(0, 1, kInf);
  auto w = validate(inf_on_equiv);
  REQUIRE(w.has_value());
  CHECK(w->kind == RepViolation::Kind::Finiteness);

  RepPoint diag(LinPreorder::chain(1), {ExtReal(1)});
  CHECK(validate(diag)->kind == RepViolation::Kind::Diagonal);

  RepPoint neg(LinPreorder::chain(2), std::vector<ExtReal>(4));
  neg.set(0, 1, ExtReal::neg_inf());
  CHECK(validate(neg)->kind == RepViolation::Kind::NegativeInfinity);
}

TEST_CASE("stratum_of") {
  CHECK(stratum_of(gaps({1, 2, 3})).is_indiscrete());
  CHECK(stratum_of(gaps({kInf, kInf, kInf})).is_discrete());
  CHECK(stratum_of(gaps({kInf, 1, kInf})).class_ids() == std::vector<int>{0, 1, 1, 2});
}

TEST_CASE("chart coordinates") {
  auto a = gaps({Rational(1, 2), kInf, 3});
  auto en = a.base().enumeration();
  auto chart = chart_coordinates(a, en);
  CHECK(chart.coords == std::vector<ExtReal>{ExtReal(Rational(1, 2)), kInf, ExtReal(3)});
  CHECK(chart.finite_forced == std::vector<bool>{false, false, false});

  auto ind = LinPreorder::indiscrete(2);
  RepPoint b = rep_from_chart(ind, std::vector<int>{0, 1}, std::vector<ExtReal>{ExtReal(-2)});
  CHECK(b(1, 0) == ExtReal(2));
  auto cb = chart_coordinates(b, std::vector<int>{0, 1});
  CHECK(cb.coords.size() == 1);
  CHECK(cb.finite_forced == std::vector<bool>{true});
  CHECK_THROWS_AS(rep_from_chart(ind, std::vector<int>{0, 1}, std::vector<ExtReal>{kInf}), std::invalid_argument);

  // Not nondecreasing.
  CHECK_THROWS_AS(chart_coordinates(a, std::vector<int>{1, 0, 2, 3}), std::invalid_argument);
}

TEST_CASE("chart roundtrip on [n] (property)") {
  gen::Rng rng(1);
  for (int n = 0; n <= 6; ++n) {
    for (int t = 0; t < 40; ++t) {
      std::vector<ExtReal> g;
      for (int i = 0; i < n; ++i) g.push_back(gen::coin(rng) ? kInf : ExtReal(gen::grid_value(rng)));
      auto a = rep_from_gaps(g);
      CHECK_FALSE(validate(a).has_value());
      auto en = a.base().enumeration();
      CHECK(chart_coordinates(a, en).coords == g);
    }
  }
}

TEST_CASE("random points on random preorders are valid and chart-stable (property)") {
  gen::Rng rng(2);
  for (int t = 0; t < 300; ++t) {
    auto base = gen::preorder(rng, gen::uniform(rng, 1, 5));
    auto a = gen::rep_point(rng, base);
    REQUIRE_FALSE(validate(a).has_value());
    auto en = base.enumeration();
    auto c = chart_coordinates(a, en);
    CHECK(rep_from_chart(base, en, c.coords) == a);
    // Finite-distance classes are convex in the preorder.
    auto cls = finite_distance_classes(a);
    for (int i = 0; i < base.size(); ++i) {
      for (int j = 0; j < base.size(); ++j) {
        for (int k = 0; k < base.size(); ++k) {
          if (base.leq(i, j) && base.leq(j, k) && cls[i] == cls[k]) CHECK(cls[j] == cls[i]);
        }
      }
    }
  }
}

TEST_CASE("strata: exactly one K_E, U_E order-reversing, stratum dimension") {
  gen::Rng rng(3);
  for (int n = 1; n <= 5; ++n) {
    auto lattice = enumerate_convex_equivalences(LinOrder::standard(n));
    for (const auto& e : lattice.relations) {
      for (int s = 0; s < 100; ++s) {
        auto a = sample_stratum(e, rng);
        auto label = stratum_of(a);
        CHECK_FALSE(ConvexEquiv::check(label.base(), label.class_ids()).has_value());
        CHECK(label == e);
        CHECK(finite_coordinate_count(a) == n - e.num_classes());
        int strata = 0;
        for (const auto& f : lattice.relations) strata += in_stratum(a, f);
        CHECK(strata == 1);
        for (auto [x, y] : lattice.refinement) {
          // E_x ⊆ E_y, so U_{E_y} ⊆ U_{E_x}.
          if (in_open_set(a, lattice.relations[y])) CHECK(in_open_set(a, lattice.relations[x]));
        }
      }
    }
  }
}

TEST_CASE("pullback_rep") {
  auto a = gaps({Rational(3, 2), kInf});
  CHECK(pullback_rep(OrderMorphism::identity(a.base()), a) == a);
  // [2] -> [1] merging 1 and 2: gaps (alpha-gap, 0).
  auto b = gaps({Rational(5, 2)});
  OrderMorphism f{LinPreorder::chain(3), LinPreorder::chain(2), {0, 1, 1}};
  auto pb = pullback_rep(f, b);
  auto en = pb.base().enumeration();
  CHECK(chart_coordinates(pb, en).coords == std::vector<ExtReal>{ExtReal(Rational(5, 2)), ExtReal(0)});

  gen::Rng rng(4);
  for (int t = 0; t < 200; ++t) {
    int n = gen::uniform(rng, 1, 5), m = gen::uniform(rng, 1, n), k = gen::uniform(rng, 1, m);
    auto g1 = gen::surjection(rng, n, m), g2 = gen::surjection(rng, m, k);
    auto alpha = gen::rep_point(rng, LinPreorder::chain(k));
    auto beta = pullback_rep(g2, alpha);
    CHECK_FALSE(validate(beta).has_value());
    CHECK(pullback_rep(compose(g2, g1), alpha) == pullback_rep(g1, beta));
  }
}

TEST_CASE("phi membership and the product law") {
  auto a = gaps({1, kInf});
  auto base = LinOrder::standard(3);
  CHECK(phi_membership(a, ConvexEquiv::indiscrete(base)));
  CHECK_FALSE(phi_membership(a, ConvexEquiv::discrete(base)));
  CHECK(phi_membership(gaps({kInf, kInf}), ConvexEquiv::discrete(base)));

  // Enumerated small cases: glue(alpha, beta) ∈ Φ(I ⋆ J, ≃_I ⊔ ≃_J).
  gen::Rng rng(6);
  for (int i = 1; i <= 3; ++i) {
    for (int j = 1; j <= 3; ++j) {
      auto li = enumerate_convex_equivalences(LinOrder::standard(i));
      auto lj = enumerate_convex_equivalences(LinOrder::standard(j));
      for (const auto& ei : li.relations) {
        for (const auto& ej : lj.relations) {
          // Φ(I, ≃) is the union of the strata K_F with F ⊆ ≃.
          for (const auto& fi : li.relations) {
            if (!fi.refines(ei)) continue;
            for (const auto& fj : lj.relations) {
              if (!fj.refines(ej)) continue;
              auto alpha = sample_stratum(fi, rng);
              auto beta = sample_stratum(fj, rng);
              REQUIRE(phi_membership(alpha, ei));
              REQUIRE(phi_membership(beta, ej));
              auto glued = glue(alpha, beta);
              CHECK_FALSE(validate(glued).has_value());
              std::vector<int> cls(ei.class_ids());
              for (int c : ej.class_ids()) cls.push_back(c + ei.num_classes());
              ConvexEquiv star(LinOrder::standard(i + j), cls);
              CHECK(phi_membership(glued, star));
              for (int x = 0; x < i; ++x) {
                for (int y = i; y < i + j; ++y) CHECK(glued(x, y).is_pos_inf());
              }
            }
          }
        }
      }
    }
  }
}
