#include <set>

#include "doctest.h"
#include "generators.hpp"

#include "brokenlines/tw.hpp"

using namespace bl;

namespace {

using CatPtr = std::shared_ptr<const TwCategory>;

CatPtr category(int n) { return std::make_shared<const TwCategory>(n); }

TwObject object(std::vector<int> cls) { return TwObject{static_cast<int>(cls.size()), std::move(cls)}; }

/// All maps filtered by the definition of a morphism of Tw(LinOrd).
int brute_force_hom_count(const TwObject& x, const TwObject& y) {
  int count = 0;
  std::vector<int> f(x.n, 0);
  while (true) {
    bool monotone = true, onto = true, reflects = true;
    for (int i = 0; i + 1 < x.n; ++i) monotone = monotone && f[i] <= f[i + 1];
    std::set<int> image(f.begin(), f.end());
    onto = static_cast<int>(image.size()) == y.n;
    for (int i = 0; i < x.n; ++i) {
      for (int j = 0; j < x.n; ++j) {
        if (y.cls[f[i]] == y.cls[f[j]] && x.cls[i] != x.cls[j]) reflects = false;
      }
    }
    count += monotone && onto && reflects;
    int p = 0;
    while (p < x.n && ++f[p] == y.n) f[p++] = 0;
    if (p == x.n) break;
  }
  return count;
}

int merge_from_sharp2(const TwCategory& cat) { return cat.find_morphism(cat.sharp(2), cat.point(), {0, 0}); }

}  // namespace

TEST_CASE("objects and morphisms of the truncated category") {
  CHECK(category(1)->size() == 1);
  auto c2 = category(2);
  CHECK(c2->size() == 3);
  CHECK(c2->find_object(object({0, 1})) >= 0);
  CHECK(c2->find_object(object({0, 0})) >= 0);
  CHECK(c2->find_object(object({0})) >= 0);
  CHECK(c2->find_object(object({1, 0})) == -1);
  for (int n = 1; n <= 4; ++n) {
    auto cat = category(n);
    int expected = 0;
    for (int k = 1; k <= n; ++k) expected += 1 << (k - 1);
    CHECK(cat->size() == expected);
    for (int x = 0; x < cat->size(); ++x) {
      for (int y = 0; y < cat->size(); ++y) {
        CHECK(static_cast<int>(cat->hom(x, y).size()) == brute_force_hom_count(cat->object(x), cat->object(y)));
      }
      // The comparison arrow from the sharp object exists for every relation.
      const int c = cat->comparison(x);
      CHECK(cat->morphism(c).source == cat->sharp(cat->object(x).n));
      CHECK(cat->morphism(c).target == x);
    }
  }
}

TEST_CASE("composition is closed, associative and unital") {
  auto cat = category(4);
  gen::Rng rng(60);
  const int count = static_cast<int>(cat->morphisms().size());
  for (int t = 0; t < 500; ++t) {
    int f = gen::uniform(rng, 0, count - 1);
    const auto& hom_g = cat->hom(cat->morphism(f).target, gen::uniform(rng, 0, cat->size() - 1));
    if (hom_g.empty()) continue;
    int g = hom_g[gen::uniform(rng, 0, static_cast<int>(hom_g.size()) - 1)];
    int gf = cat->compose(g, f);
    const auto& m = cat->morphism(gf);
    CHECK(is_tw_morphism(cat->object(m.source), cat->object(m.target), m.map));
    CHECK(cat->compose(g, cat->compose(f, cat->identity(cat->morphism(f).source))) == gf);
    CHECK(cat->compose(cat->identity(cat->morphism(g).target), gf) == gf);
    for (int h : cat->hom(cat->morphism(g).target, cat->point())) {
      CHECK(cat->compose(h, gf) == cat->compose(cat->compose(h, g), f));
    }
  }
}

TEST_CASE("concatenation of decorated orders") {
  CHECK(tw_star(object({0}), object({0})) == object({0, 1}));
  // (I ⋆ J)^♯ has one class, I^♯ ⋆ J^♯ has two.
  CHECK(tw_star(object({0, 0}), object({0})).num_classes() == 2);
  auto cat = category(4);
  for (int x = 0; x < cat->size(); ++x) {
    for (int y = 0; y < cat->size(); ++y) {
      const auto xy = tw_star(cat->object(x), cat->object(y));
      CHECK_FALSE(ConvexEquiv::check(LinOrder::standard(xy.n), xy.cls).has_value());
      CHECK(xy.num_classes() == cat->object(x).num_classes() + cat->object(y).num_classes());
      if (xy.n <= 4) CHECK(cat->star(x, y) == cat->find_object(xy));
      else CHECK(cat->star(x, y) == -1);
      for (int z = 0; z < cat->size(); ++z) {
        CHECK(tw_star(tw_star(cat->object(x), cat->object(y)), cat->object(z)) ==
              tw_star(cat->object(x), tw_star(cat->object(y), cat->object(z))));
      }
    }
  }
  CHECK_FALSE(check_sharp_adjunction(*cat).has_value());
}

TEST_CASE("algebra_to_functor: worked actions") {
  auto cat = category(3);
  const int merge = merge_from_sharp2(*cat);
  REQUIRE(merge >= 0);

  auto zero = algebra_to_functor(zero_algebra(1), cat);
  for (int m = 0; m < static_cast<int>(cat->morphisms().size()); ++m) {
    const auto& mor = cat->morphism(m);
    bool injective = std::set<int>(mor.map.begin(), mor.map.end()).size() == mor.map.size();
    if (!injective) CHECK(zero.action(m).is_zero());
  }

  auto q = algebra_to_functor(rational_algebra(), cat);
  CHECK(q.action(merge) == Matrix::from_rows({{1}}));

  auto nil = algebra_to_functor(nilpotent3_algebra(), cat);
  const auto& act = nil.action(merge);
  // Basis 0 = e12, 1 = e13, 2 = e23; e12 ⊗ e23 has index 0 * 3 + 2.
  CHECK(act.at(1, 0 * 3 + 2) == 1);
  for (int k = 0; k < 3; ++k) CHECK(act.at(k, 2 * 3 + 0) == 0);

  for (const auto& a : {zero_algebra(1), rational_algebra(), nilpotent3_algebra(), matrix2_algebra()}) {
    auto f = algebra_to_functor(a, cat);
    CHECK_FALSE(validate_functor(f).has_value());
    CHECK_FALSE(validate_lax(f).has_value());
    CHECK(is_fun0(f));
    CHECK(factorizable_check(f));
  }

  std::vector<Rational> c(8);
  c[(1 * 2 + 0) * 2 + 0] = 1;
  c[(0 * 2 + 1) * 2 + 0] = 1;
  CHECK_THROWS_AS(algebra_to_functor(NonunitalAlgebra(2, c), cat), TwError);
}

TEST_CASE("roundtrips between algebras and functors") {
  auto cat = category(3);
  for (const auto& a : {zero_algebra(1), rational_algebra(), nilpotent3_algebra(), matrix2_algebra()}) {
    auto f = algebra_to_functor(a, cat);
    CHECK(functor_to_algebra(f) == a);
    CHECK(reverse_roundtrip(f).ok());
  }
  CHECK(functor_to_algebra(constant_functor(cat, 1)) == rational_algebra());

  // A change of basis on every object leaves the algebra's isomorphism class.
  gen::Rng rng(61);
  auto f = algebra_to_functor(nilpotent3_algebra(), cat);
  std::vector<Matrix> p;
  for (int x = 0; x < cat->size(); ++x) {
    Matrix m = Matrix::identity(f.value(x));
    for (int i = 0; i + 1 < f.value(x); ++i) m.at(i, i + 1) = gen::signed_value(rng);
    p.push_back(m);
  }
  auto g = conjugate_functor(f, p);
  CHECK_FALSE(validate_functor(g).has_value());
  CHECK_FALSE(validate_lax(g).has_value());
  CHECK(is_fun0(g));
  auto b = functor_to_algebra(g);
  CHECK_FALSE(validate_algebra(b).has_value());
  CHECK(reverse_roundtrip(g).ok());
  // b is a ≅ a via p[pt]: the recovered multiplication is conjugate.
  const int pt = cat->point();
  auto pinv = *inverse(p[pt]);
  CHECK(b.multiplication() == p[pt] * nilpotent3_algebra().multiplication() * tensor(pinv, pinv));

  p[pt] = Matrix(3, 3);
  CHECK_THROWS_AS(conjugate_functor(f, p), TwError);
}

TEST_CASE("functors outside Fun0 or with bad lax data are rejected") {
  auto cat = category(3);
  auto one = constant_functor(cat, 1);
  auto oo = day_convolution(one, one);
  CHECK_FALSE(is_fun0(oo));
  CHECK_THROWS_AS(functor_to_algebra(oo), TwError);

  auto f = algebra_to_functor(matrix2_algebra(), cat);
  auto planted = f;
  const int pt = cat->point();
  planted.monoidal[pt * cat->size() + pt] = Matrix(16, 16);
  CHECK_FALSE(factorizable_check(planted));
  auto scaled = f;
  scaled.monoidal[pt * cat->size() + pt] = scale(2, Matrix::identity(16));
  CHECK(validate_lax(scaled).has_value());
}

TEST_CASE("Day convolution: worked examples and the decomposition oracle") {
  auto cat = category(4);
  auto one = constant_functor(cat, 1);
  auto oo = day_convolution(one, one);
  CHECK(oo.value(cat->discrete(3)) == 2);
  CHECK(oo.value(cat->point()) == 0);
  for (int n = 2; n <= 4; ++n) CHECK(oo.value(cat->sharp(n)) == 0);
  auto ooo = day_convolution(oo, one);
  CHECK(ooo.value(cat->discrete(3)) == 1);
  CHECK(day_convolution(one, oo).value(cat->discrete(3)) == 1);

  auto nil = algebra_to_functor(nilpotent3_algebra(), cat);
  auto nn = day_convolution(nil, nil);
  CHECK_FALSE(validate_functor(nn).has_value());
  CHECK_FALSE(factorizable_check(nn));
  for (int x = 0; x < cat->size(); ++x) {
    // Cuts between consecutive classes, counted directly.
    const auto& obj = cat->object(x);
    int expected = 0;
    for (int cut = 1; cut < obj.num_classes(); ++cut) {
      int lower = 0;
      while (lower < obj.n && obj.cls[lower] < cut) ++lower;
      expected += nil.value(cat->discrete(lower)) * nil.value(cat->discrete(obj.n - lower));
    }
    CHECK(nn.value(x) == expected);
    int offset = 0;
    for (const auto& s : day_layout(nil, nil, x)) {
      CHECK(s.offset == offset);
      offset += s.dim;
    }
    CHECK(offset == nn.value(x));
  }
}

TEST_CASE("Day associativity") {
  auto cat = category(4);
  auto zero = algebra_to_functor(zero_algebra(0), cat);
  auto one = constant_functor(cat, 1);
  auto nil = algebra_to_functor(nilpotent3_algebra(), cat);
  auto z = day_assoc_check(zero, one, one);
  CHECK(z.ok());
  auto lhs = day_convolution(day_convolution(zero, one), one);
  for (int x = 0; x < cat->size(); ++x) CHECK(lhs.value(x) == 0);
  CHECK(day_assoc_check(one, one, one).ok());
  auto r = day_assoc_check(nil, nil, nil);
  CHECK(r.ok());
  CHECK(r.objects_checked == cat->size());
  CHECK(day_assoc_check(nil, one, nil).ok());
}
