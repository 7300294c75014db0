#include <algorithm>
#include <set>

#include "doctest.h"
#include "generators.hpp"

#include "brokenlines/sheaf.hpp"

using namespace bl;

namespace {

/// The composite of applying merges to positions 0..n.
std::vector<int> composite(int n, const std::vector<int>& merges) {
  std::vector<int> map(n + 1);
  for (int p = 0; p <= n; ++p) map[p] = p;
  for (int k : merges) {
    for (int& v : map) {
      if (v > k) --v;
    }
  }
  return map;
}

long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

std::vector<GlobalSheaf> test_sheaves(gen::Rng& rng, int truncation) {
  std::vector<GlobalSheaf> out;
  for (const auto& a : {nilpotent3_algebra(), matrix2_algebra(), rational_algebra(), zero_algebra(2)}) {
    out.push_back(algebra_global_sheaf(a, truncation));
  }
  for (int r = 0; r < 3; ++r) out.push_back(random_global_sheaf(truncation, 3, rng));
  return out;
}

}  // namespace

TEST_CASE("merge presentations") {
  CHECK(merge_normal_form({0, 1, 2}).empty());
  CHECK(merge_normal_form({0, 0}) == std::vector<int>{0});
  CHECK_THROWS_AS(merge_normal_form({0, 2}), std::invalid_argument);
  CHECK_THROWS_AS(merge_normal_form({1, 1}), std::invalid_argument);
  gen::Rng rng(50);
  for (int t = 0; t < 100; ++t) {
    const int n = gen::uniform(rng, 1, 6), m = gen::uniform(rng, 1, n);
    auto f = gen::surjection(rng, n, m);
    auto nf = merge_normal_form(f.map);
    CHECK(composite(n - 1, nf) == f.map);
    auto all = all_merge_sequences(f.map);
    CHECK(static_cast<long>(all.size()) == factorial(n - m));
    std::set<std::vector<int>> distinct(all.begin(), all.end());
    CHECK(distinct.size() == all.size());
    CHECK(distinct.count(nf) == 1);
    for (const auto& s : all) CHECK(composite(n - 1, s) == f.map);
  }
}

TEST_CASE("global sheaf construction validates shapes and exchange relations") {
  CHECK_THROWS_AS(GlobalSheaf({}, {}), SheafError);
  CHECK_THROWS_AS(GlobalSheaf({1, 1}, {{Matrix(1, 2)}}), SheafError);
  // Two different merges [2] -> [1] on V_2 = Q^2 violate gen(1,0) gen(2,0) = gen(1,0) gen(2,1).
  auto sum = Matrix::from_rows({{1, 1}});
  auto s0 = Matrix::from_rows({{1, 0}, {0, 0}}), s1 = Matrix::from_rows({{0, 0}, {0, 1}});
  CHECK_THROWS_AS(GlobalSheaf({1, 2, 2}, {{sum}, {s0, s1}}), SheafError);
  CHECK_NOTHROW(GlobalSheaf({1, 2, 2}, {{sum}, {s0, s0}}));
}

TEST_CASE("apply_surjection") {
  auto f = algebra_global_sheaf(nilpotent3_algebra(), 4);
  auto id = OrderMorphism::identity(LinPreorder::chain(3));
  CHECK(apply_surjection(f, id).is_identity());
  OrderMorphism one{LinPreorder::chain(2), LinPreorder::chain(1), {0, 0}};
  CHECK(apply_surjection(f, one) == f.gen(1, 0));
  CHECK(f.gen(1, 0) == nilpotent3_algebra().multiplication());
  CHECK(apply_merges(f, 2, {0, 0}) == apply_merges(f, 2, {1, 0}));
}

TEST_CASE("apply_surjection is a functor (property)") {
  gen::Rng rng(51);
  for (const auto& f : test_sheaves(rng, 4)) {
    for (int t = 0; t < 60; ++t) {
      int a = gen::uniform(rng, 1, 5), b = gen::uniform(rng, 1, a), c = gen::uniform(rng, 1, b);
      auto g1 = gen::surjection(rng, a, b), g2 = gen::surjection(rng, b, c);
      CHECK(apply_surjection(f, compose(g2, g1)) == apply_surjection(f, g2) * apply_surjection(f, g1));
      CHECK(apply_surjection(f, OrderMorphism::identity(g1.source)).is_identity());
      for (const auto& s : all_merge_sequences(g1.map)) CHECK(apply_merges(f, a - 1, s) == apply_surjection(f, g1));
    }
  }
}

TEST_CASE("constructible sheaves from global ones") {
  gen::Rng rng(52);
  for (const auto& f : test_sheaves(rng, 4)) {
    for (int n = 1; n <= 5; ++n) {
      auto base = LinOrder::standard(n);
      auto cs = global_to_constructible(f, base);
      CHECK_FALSE(check_functoriality(cs).has_value());
      auto disc = cs.index_of(ConvexEquiv::discrete(base));
      auto ind = cs.index_of(ConvexEquiv::indiscrete(base));
      CHECK(cs.values[disc] == f.dim(n - 1));
      CHECK(cs.values[ind] == f.dim(0));
      for (std::size_t e = 0; e < cs.conv.relations.size(); ++e) {
        CHECK(cs.values[e] == f.dim(cs.conv.relations[e].num_classes() - 1));
      }
      if (n == 2) CHECK(cs.restrict(disc, ind) == f.gen(1, 0));
      // Stalks at the extreme points.
      std::vector<ExtReal> finite(n - 1, ExtReal(1)), infinite(n - 1, ExtReal::pos_inf());
      CHECK(stalk(cs, rep_from_gaps(finite)) == cs.values[ind]);
      CHECK(stalk(cs, rep_from_gaps(infinite)) == f.dim(n - 1));
    }
  }
}

TEST_CASE("pullback squares commute") {
  gen::Rng rng(53);
  for (const auto& f : test_sheaves(rng, 3)) {
    for (int a = 1; a <= 4; ++a) {
      for (int b = 1; b <= a; ++b) {
        for (const auto& m : enumerate_surjections(LinOrder::standard(a), LinOrder::standard(b))) {
          CHECK(pullback_square_check(f, m).empty());
        }
      }
    }
  }
}

TEST_CASE("evaluation on families") {
  for (const auto& a : {nilpotent3_algebra(), matrix2_algebra(), rational_algebra()}) {
    auto f = algebra_global_sheaf(a, 1);
    auto ev = evaluate_on_family(f, easybreak_family());
    const int d = a.dim();
    std::vector<int> dims;
    for (const auto& s : ev.stalks) dims.push_back(s.dim);
    CHECK(dims == std::vector<int>{d, d, d, d * d});
    REQUIRE(ev.edges.size() == 3);
    CHECK(ev.edges[0].map->is_identity());
    CHECK(ev.edges[1].map->is_identity());
    CHECK(ev.edges[2].from == "t=0");
    CHECK(*ev.edges[2].map == a.multiplication());
    CHECK(ev.incomparable.empty());
  }

  SampledFamily constant{LinPreorder::chain(3), {}, {{"a", "b"}, {"b", "c"}}, {}};
  for (const char* id : {"a", "b", "c"}) {
    std::vector<ExtReal> g{ExtReal(1), ExtReal::pos_inf()};
    constant.samples.push_back(Sample{id, rep_from_gaps(g)});
  }
  auto ev = evaluate_on_family(algebra_global_sheaf(matrix2_algebra(), 2), constant);
  for (const auto& s : ev.stalks) CHECK(s.dim == 16);
  for (const auto& e : ev.edges) CHECK(e.map->is_identity());
}

TEST_CASE("edge maps along random paths compose (property)") {
  gen::Rng rng(54);
  for (int t = 0; t < 40; ++t) {
    const int n = gen::uniform(rng, 2, 4);
    auto f = random_global_sheaf(n - 1, 3, rng);
    auto fam = random_family(n, 6, rng);
    for (std::size_t s = 0; s + 1 < fam.samples.size(); ++s) fam.edges.emplace_back(fam.samples[s].id, fam.samples[s + 1].id);
    auto ev = evaluate_on_family(f, fam);
    auto cs = global_to_constructible(f, LinOrder(fam.index));
    auto index_of = [&](const std::string& id) {
      return cs.index_of(stratum_of(fam.samples[fam.find(id)].alpha));
    };
    for (std::size_t k = 0; k < ev.edges.size(); ++k) {
      const auto& e = ev.edges[k];
      if (!e.map) continue;
      CHECK(*e.map == cs.restrict(index_of(e.from), index_of(e.to)));
      if (k + 1 < ev.edges.size() && ev.edges[k + 1].map && ev.edges[k + 1].from == e.to) {
        const auto& next = ev.edges[k + 1];
        CHECK(*next.map * *e.map == cs.restrict(index_of(e.from), index_of(next.to)));
      }
    }
    CHECK(ev.incomparable.size() == static_cast<std::size_t>(std::count_if(
                                        ev.edges.begin(), ev.edges.end(), [](const auto& e) { return !e.map; })));
  }
}
