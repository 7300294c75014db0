#include "brokenlines/tw.hpp"

#include <bit>

namespace bl {

bool is_tw_morphism(const TwObject& x, const TwObject& y, const std::vector<int>& map) {
  if (static_cast<int>(map.size()) != x.n || map.empty() || map.front() != 0 || map.back() != y.n - 1) {
    return false;
  }
  for (std::size_t i = 1; i < map.size(); ++i) {
    if (map[i] != map[i - 1] && map[i] != map[i - 1] + 1) return false;
  }
  // Classes are intervals, so the condition reduces to adjacent pairs.
  for (int i = 1; i < x.n; ++i) {
    if (y.cls[map[i - 1]] == y.cls[map[i]] && x.cls[i - 1] != x.cls[i]) return false;
  }
  return true;
}

TwObject tw_star(const TwObject& x, const TwObject& y) {
  TwObject out{x.n + y.n, x.cls};
  for (int c : y.cls) out.cls.push_back(c + x.num_classes());
  return out;
}

TwCategory::TwCategory(int truncation) : n_(truncation) {
  if (truncation < 1) throw std::invalid_argument("truncation must be at least 1");
  for (int n = 1; n <= n_; ++n) {
    for (unsigned cuts = 0; cuts < (1u << (n - 1)); ++cuts) {
      TwObject x{n, ConvexEquiv::from_cuts(n, cuts).class_ids()};
      object_index_[x] = static_cast<int>(objects_.size());
      objects_.push_back(std::move(x));
    }
  }
  const int count = size();
  hom_.assign(static_cast<std::size_t>(count) * count, {});
  for (int x = 0; x < count; ++x) {
    for (int y = 0; y < count; ++y) {
      const int a = objects_[x].n, b = objects_[y].n;
      if (b > a) continue;
      // A monotone surjection [a] -> [b] is a choice of b-1 step positions.
      for (unsigned steps = 0; steps < (1u << (a - 1)); ++steps) {
        if (std::popcount(steps) != b - 1) continue;
        std::vector<int> map(a, 0);
        for (int i = 1; i < a; ++i) map[i] = map[i - 1] + ((steps >> (i - 1)) & 1u ? 1 : 0);
        if (!is_tw_morphism(objects_[x], objects_[y], map)) continue;
        int idx = static_cast<int>(morphisms_.size());
        morphism_index_[{x, y, map}] = idx;
        morphisms_.push_back(TwMorphism{x, y, std::move(map)});
        hom_[x * count + y].push_back(idx);
      }
    }
  }
}

int TwCategory::find_object(const TwObject& x) const {
  auto it = object_index_.find(x);
  return it == object_index_.end() ? -1 : it->second;
}

int TwCategory::find_morphism(int source, int target, const std::vector<int>& map) const {
  auto it = morphism_index_.find({source, target, map});
  return it == morphism_index_.end() ? -1 : it->second;
}

int TwCategory::identity(int x) const {
  std::vector<int> map(objects_.at(x).n);
  for (int i = 0; i < static_cast<int>(map.size()); ++i) map[i] = i;
  return find_morphism(x, x, map);
}

int TwCategory::compose(int g, int f) const {
  const auto& mf = morphisms_.at(f);
  const auto& mg = morphisms_.at(g);
  if (mf.target != mg.source) throw std::invalid_argument("compose: morphisms are not composable");
  std::vector<int> map(mf.map.size());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = mg.map[mf.map[i]];
  int idx = find_morphism(mf.source, mg.target, map);
  if (idx < 0) throw TwError("composite is not a morphism of Tw");
  return idx;
}

int TwCategory::star(int x, int y) const {
  if (objects_.at(x).n + objects_.at(y).n > n_) return -1;
  return find_object(tw_star(objects_[x], objects_[y]));
}

int TwCategory::star_morphism(int f, int g) const {
  const auto& mf = morphisms_.at(f);
  const auto& mg = morphisms_.at(g);
  int src = star(mf.source, mg.source), tgt = star(mf.target, mg.target);
  if (src < 0 || tgt < 0) return -1;
  std::vector<int> map = mf.map;
  for (int v : mg.map) map.push_back(v + objects_[mf.target].n);
  return find_morphism(src, tgt, map);
}

int TwCategory::sharp(int n) const { return find_object(TwObject{n, std::vector<int>(n, 0)}); }

int TwCategory::discrete(int n) const {
  std::vector<int> cls(n);
  for (int i = 0; i < n; ++i) cls[i] = i;
  return find_object(TwObject{n, std::move(cls)});
}

int TwCategory::comparison(int x) const {
  const int n = objects_.at(x).n;
  std::vector<int> map(n);
  for (int i = 0; i < n; ++i) map[i] = i;
  return find_morphism(sharp(n), x, map);
}

const Matrix& TwFunctor::mult(int x, int y) const {
  const auto& m = monoidal.at(static_cast<std::size_t>(x) * cat->size() + y);
  if (!m) throw TwError("no monoidal data for this pair");
  return *m;
}

std::optional<std::string> validate_functor(const TwFunctor& f) {
  const auto& cat = *f.cat;
  if (static_cast<int>(f.values.size()) != cat.size()) return "one value per object expected";
  if (f.actions.size() != cat.morphisms().size()) return "one action per morphism expected";
  for (std::size_t m = 0; m < f.actions.size(); ++m) {
    const auto& mor = cat.morphism(static_cast<int>(m));
    if (f.actions[m].rows() != f.value(mor.target) || f.actions[m].cols() != f.value(mor.source)) {
      return "action " + std::to_string(m) + " has the wrong shape";
    }
  }
  for (int x = 0; x < cat.size(); ++x) {
    if (!f.action(cat.identity(x)).is_identity()) return "identity of object " + std::to_string(x) + " is not preserved";
  }
  for (int x = 0; x < cat.size(); ++x) {
    for (int y = 0; y < cat.size(); ++y) {
      for (int fm : cat.hom(x, y)) {
        for (int z = 0; z < cat.size(); ++z) {
          for (int gm : cat.hom(y, z)) {
            if (!(f.action(gm) * f.action(fm) == f.action(cat.compose(gm, fm)))) {
              return "composition fails for morphisms " + std::to_string(gm) + " after " + std::to_string(fm);
            }
          }
        }
      }
    }
  }
  return std::nullopt;
}

std::optional<std::string> validate_lax(const TwFunctor& f) {
  const auto& cat = *f.cat;
  if (!f.has_monoidal()) return "no monoidal data";
  for (int x = 0; x < cat.size(); ++x) {
    for (int y = 0; y < cat.size(); ++y) {
      int xy = cat.star(x, y);
      if (xy < 0) continue;
      const auto& m = f.mult(x, y);
      if (m.rows() != f.value(xy) || m.cols() != f.value(x) * f.value(y)) {
        return "m(" + std::to_string(x) + "," + std::to_string(y) + ") has the wrong shape";
      }
    }
  }
  const int nm = static_cast<int>(cat.morphisms().size());
  for (int a = 0; a < nm; ++a) {
    for (int b = 0; b < nm; ++b) {
      int ab = cat.star_morphism(a, b);
      if (ab < 0) continue;
      const auto& ma = cat.morphism(a);
      const auto& mb = cat.morphism(b);
      Matrix lhs = f.mult(ma.target, mb.target) * tensor(f.action(a), f.action(b));
      Matrix rhs = f.action(ab) * f.mult(ma.source, mb.source);
      if (!(lhs == rhs)) return "m is not natural at morphisms " + std::to_string(a) + ", " + std::to_string(b);
    }
  }
  for (int x = 0; x < cat.size(); ++x) {
    for (int y = 0; y < cat.size(); ++y) {
      int xy = cat.star(x, y);
      if (xy < 0) continue;
      for (int z = 0; z < cat.size(); ++z) {
        int xyz = cat.star(xy, z);
        if (xyz < 0) continue;
        int yz = cat.star(y, z);
        Matrix lhs = f.mult(xy, z) * tensor(f.mult(x, y), Matrix::identity(f.value(z)));
        Matrix rhs = f.mult(x, yz) * tensor(Matrix::identity(f.value(x)), f.mult(y, z));
        if (!(lhs == rhs)) {
          return "m is not associative at " + std::to_string(x) + ", " + std::to_string(y) + ", " + std::to_string(z);
        }
      }
    }
  }
  return std::nullopt;
}

bool is_fun0(const TwFunctor& f) {
  for (int x = 0; x < f.cat->size(); ++x) {
    if (!inverse(f.action(f.cat->comparison(x)))) return false;
  }
  return true;
}

namespace {

std::vector<std::optional<Matrix>> identity_monoidal(const TwCategory& cat, const std::vector<int>& values) {
  std::vector<std::optional<Matrix>> m(static_cast<std::size_t>(cat.size()) * cat.size());
  for (int x = 0; x < cat.size(); ++x) {
    for (int y = 0; y < cat.size(); ++y) {
      if (int xy = cat.star(x, y); xy >= 0) m[x * cat.size() + y] = Matrix::identity(values[xy]);
    }
  }
  return m;
}

int ipow(int base, int e) {
  int r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

}  // namespace

TwFunctor algebra_to_functor(const NonunitalAlgebra& a, std::shared_ptr<const TwCategory> cat) {
  if (auto v = validate_algebra(a)) throw TwError("algebra is not associative: " + v->message);
  const int d = a.dim();
  const Matrix one = Matrix::identity(d);
  // iterated[k]: A^{⊗k} -> A, bracketed from the left.
  std::vector<Matrix> iterated{Matrix(), one};
  const Matrix mu = a.multiplication();
  for (int k = 2; k <= cat->truncation(); ++k) iterated.push_back(mu * tensor(iterated[k - 1], one));

  TwFunctor f{cat, {}, {}, {}};
  for (const auto& x : cat->objects()) f.values.push_back(ipow(d, x.n));
  for (const auto& m : cat->morphisms()) {
    Matrix act = Matrix::identity(1);
    int start = 0;
    const int n = static_cast<int>(m.map.size());
    for (int i = 1; i <= n; ++i) {
      if (i == n || m.map[i] != m.map[i - 1]) {
        act = tensor(act, iterated[i - start]);
        start = i;
      }
    }
    f.actions.push_back(std::move(act));
  }
  f.monoidal = identity_monoidal(*cat, f.values);
  return f;
}

TwFunctor constant_functor(std::shared_ptr<const TwCategory> cat, int dim) {
  TwFunctor f{cat, std::vector<int>(cat->size(), dim), {}, {}};
  for (std::size_t m = 0; m < cat->morphisms().size(); ++m) f.actions.push_back(Matrix::identity(dim));
  std::vector<std::optional<Matrix>> mono(static_cast<std::size_t>(cat->size()) * cat->size());
  for (int x = 0; x < cat->size(); ++x) {
    for (int y = 0; y < cat->size(); ++y) {
      if (cat->star(x, y) < 0) continue;
      // dim ⊗ dim -> dim: the identity when dim = 1, a projection otherwise.
      Matrix m(dim, dim * dim);
      for (int i = 0; i < dim; ++i) m.at(i, i * dim + i) = 1;
      mono[x * cat->size() + y] = m;
    }
  }
  f.monoidal = std::move(mono);
  return f;
}

NonunitalAlgebra functor_to_algebra(const TwFunctor& f) {
  const auto& cat = *f.cat;
  if (cat.truncation() < 3) throw TwError("functor_to_algebra needs truncation >= 3");
  if (!f.has_monoidal()) throw TwError("functor carries no monoidal data");
  const int pt = cat.point();
  const int d = f.value(pt);
  const Matrix one = Matrix::identity(d);

  const int sharp2 = cat.sharp(2), disc2 = cat.discrete(2);
  auto c2 = inverse(f.action(cat.comparison(disc2)));
  if (!c2) throw TwError("F(I^♯) -> F(I, discrete) is not invertible at |I| = 2");
  const int merge2 = cat.find_morphism(sharp2, pt, {0, 0});
  Matrix mu = f.action(merge2) * *c2 * f.mult(pt, pt);
  NonunitalAlgebra a = NonunitalAlgebra::from_multiplication(mu);
  if (auto v = validate_algebra(a)) throw TwError("recovered multiplication is not associative: " + v->message);

  const int sharp3 = cat.sharp(3), disc3 = cat.discrete(3);
  auto c3 = inverse(f.action(cat.comparison(disc3)));
  if (!c3) throw TwError("F(I^♯) -> F(I, discrete) is not invertible at |I| = 3");
  const int merge3 = cat.find_morphism(sharp3, pt, {0, 0, 0});
  Matrix ternary = f.action(merge3) * *c3 * f.mult(disc2, pt) * tensor(f.mult(pt, pt), one);
  if (!(ternary == mu * tensor(mu, one))) {
    throw TwError("ternary product read off F disagrees with the iterated binary product");
  }
  return a;
}

NaturalIsoReport reverse_roundtrip(const TwFunctor& f) {
  NaturalIsoReport report;
  const auto& cat = *f.cat;
  NonunitalAlgebra a = functor_to_algebra(f);
  TwFunctor g = algebra_to_functor(a, f.cat);
  const int d = a.dim();
  const Matrix one = Matrix::identity(d);

  // iterated[n]: A^{⊗n} -> F(discrete n) through the monoidal data.
  std::vector<Matrix> iterated{Matrix(), one};
  for (int n = 2; n <= cat.truncation(); ++n) {
    iterated.push_back(f.mult(cat.discrete(n - 1), cat.point()) * tensor(iterated[n - 1], one));
  }
  std::vector<std::optional<Matrix>> disc_inv(cat.truncation() + 1);
  for (int n = 1; n <= cat.truncation(); ++n) disc_inv[n] = inverse(f.action(cat.comparison(cat.discrete(n))));

  for (int x = 0; x < cat.size(); ++x) {
    const int n = cat.object(x).n;
    if (!disc_inv[n]) {
      report.failures.push_back("comparison at discrete " + std::to_string(n) + " is singular");
      report.components.push_back(Matrix());
      continue;
    }
    Matrix eta = f.action(cat.comparison(x)) * *disc_inv[n] * iterated[n];
    if (!inverse(eta)) report.failures.push_back("η is not invertible at object " + std::to_string(x));
    report.components.push_back(std::move(eta));
  }
  if (!report.ok()) return report;

  for (int m = 0; m < static_cast<int>(cat.morphisms().size()); ++m) {
    const auto& mor = cat.morphism(m);
    if (!(f.action(m) * report.components[mor.source] == report.components[mor.target] * g.action(m))) {
      report.failures.push_back("η is not natural at morphism " + std::to_string(m));
    }
  }
  for (int x = 0; x < cat.size(); ++x) {
    for (int y = 0; y < cat.size(); ++y) {
      int xy = cat.star(x, y);
      if (xy < 0) continue;
      Matrix lhs = report.components[xy] * g.mult(x, y);
      Matrix rhs = f.mult(x, y) * tensor(report.components[x], report.components[y]);
      if (!(lhs == rhs)) {
        report.failures.push_back("η is not monoidal at " + std::to_string(x) + ", " + std::to_string(y));
      }
    }
  }
  return report;
}

TwFunctor conjugate_functor(const TwFunctor& f, const std::vector<Matrix>& p) {
  const auto& cat = *f.cat;
  std::vector<Matrix> pinv;
  for (int x = 0; x < cat.size(); ++x) {
    auto inv = inverse(p.at(x));
    if (!inv || p[x].rows() != f.value(x)) throw TwError("change of basis is singular or misshapen");
    pinv.push_back(std::move(*inv));
  }
  TwFunctor out{f.cat, f.values, {}, {}};
  for (int m = 0; m < static_cast<int>(cat.morphisms().size()); ++m) {
    const auto& mor = cat.morphism(m);
    out.actions.push_back(p[mor.target] * f.action(m) * pinv[mor.source]);
  }
  if (f.has_monoidal()) {
    out.monoidal.resize(f.monoidal.size());
    for (int x = 0; x < cat.size(); ++x) {
      for (int y = 0; y < cat.size(); ++y) {
        int xy = cat.star(x, y);
        if (xy < 0) continue;
        out.monoidal[x * cat.size() + y] = p[xy] * f.mult(x, y) * tensor(pinv[x], pinv[y]);
      }
    }
  }
  return out;
}

std::vector<DaySummand> day_layout(const TwFunctor& f, const TwFunctor& g, int x) {
  const auto& cat = *f.cat;
  const auto& obj = cat.object(x);
  std::vector<DaySummand> out;
  int offset = 0;
  for (int k = 1; k < obj.num_classes(); ++k) {
    int s = 0;
    while (obj.cls[s] < k) ++s;
    TwObject lower{s, std::vector<int>(obj.cls.begin(), obj.cls.begin() + s)};
    TwObject upper{obj.n - s, {}};
    for (int i = s; i < obj.n; ++i) upper.cls.push_back(obj.cls[i] - k);
    int lo = cat.find_object(lower), up = cat.find_object(upper);
    int dim = f.value(lo) * g.value(up);
    out.push_back(DaySummand{k, lo, up, offset, dim});
    offset += dim;
  }
  return out;
}

TwFunctor day_convolution(const TwFunctor& f, const TwFunctor& g) {
  if (f.cat != g.cat) throw TwError("Day convolution needs functors on the same category");
  const auto& cat = *f.cat;
  TwFunctor out{f.cat, {}, {}, {}};
  std::vector<std::vector<DaySummand>> layouts;
  for (int x = 0; x < cat.size(); ++x) {
    layouts.push_back(day_layout(f, g, x));
    int dim = 0;
    for (const auto& s : layouts.back()) dim += s.dim;
    out.values.push_back(dim);
  }
  for (const auto& mor : cat.morphisms()) {
    const auto& ty = cat.object(mor.target);
    Matrix act(out.values[mor.target], out.values[mor.source]);
    for (const auto& s : layouts[mor.source]) {
      const int split = cat.object(s.lower).n;
      // The image of a ≃-invariant lower set is a ≃-invariant lower set.
      const int image_cut = ty.cls[mor.map[split - 1]] + 1;
      if (ty.cls[mor.map[split]] != image_cut) throw TwError("image of a decomposition is not a decomposition");
      const auto& t = layouts[mor.target][image_cut - 1];
      const int tsplit = cat.object(t.lower).n;
      std::vector<int> m0(mor.map.begin(), mor.map.begin() + split);
      std::vector<int> m1;
      for (int i = split; i < static_cast<int>(mor.map.size()); ++i) m1.push_back(mor.map[i] - tsplit);
      int f0 = cat.find_morphism(s.lower, t.lower, m0);
      int f1 = cat.find_morphism(s.upper, t.upper, m1);
      if (f0 < 0 || f1 < 0) throw TwError("restriction of a morphism to a decomposition is not a morphism");
      Matrix block = tensor(f.action(f0), g.action(f1));
      for (int i = 0; i < block.rows(); ++i) {
        for (const auto& [j, x] : block.row(i)) {
          if (sgn(x) != 0) act.at(t.offset + i, s.offset + j) = x;
        }
      }
    }
    out.actions.push_back(std::move(act));
  }
  out.monoidal.resize(static_cast<std::size_t>(cat.size()) * cat.size());
  for (int x = 0; x < cat.size(); ++x) {
    for (int y = 0; y < cat.size(); ++y) {
      if (int xy = cat.star(x, y); xy >= 0) {
        out.monoidal[x * cat.size() + y] = Matrix(out.values[xy], out.values[x] * out.values[y]);
      }
    }
  }
  return out;
}

DayAssocReport day_assoc_check(const TwFunctor& f, const TwFunctor& g, const TwFunctor& h) {
  DayAssocReport report;
  const auto& cat = *f.cat;
  TwFunctor fg = day_convolution(f, g);
  TwFunctor left = day_convolution(fg, h);
  TwFunctor gh = day_convolution(g, h);
  TwFunctor right = day_convolution(f, gh);

  // perm[x][i]: position in right(x) of the basis vector i of left(x).
  std::vector<std::vector<int>> perm(cat.size());
  for (int x = 0; x < cat.size(); ++x) {
    ++report.objects_checked;
    if (left.value(x) != right.value(x)) {
      report.failures.push_back("dimensions differ at object " + std::to_string(x));
      continue;
    }
    auto& p = perm[x];
    p.assign(left.value(x), -1);
    auto outer_r = day_layout(f, gh, x);
    for (const auto& s : day_layout(fg, h, x)) {
      const int dh = h.value(s.upper);
      for (const auto& s2 : day_layout(f, g, s.lower)) {
        // Triple decomposition: cuts s2.cut < s.cut of x.
        const auto& t = outer_r.at(s2.cut - 1);
        const DaySummand t2 = day_layout(g, h, t.upper).at(s.cut - s2.cut - 1);
        if (t.lower != s2.lower || t2.lower != s2.upper || t2.upper != s.upper) {
          report.failures.push_back("triple decompositions do not match at object " + std::to_string(x));
          continue;
        }
        const int df = f.value(s2.lower), dg = g.value(s2.upper), dgh = gh.value(t.upper);
        for (int a = 0; a < df; ++a) {
          for (int b = 0; b < dg; ++b) {
            for (int c = 0; c < dh; ++c) {
              int lpos = s.offset + (s2.offset + a * dg + b) * dh + c;
              int rpos = t.offset + a * dgh + t2.offset + b * dh + c;
              p[lpos] = rpos;
            }
          }
        }
      }
    }
    std::vector<char> hit(p.size(), 0);
    for (int r : p) {
      if (r < 0 || hit[r]) {
        report.failures.push_back("reindexing is not a bijection at object " + std::to_string(x));
        break;
      }
      hit[r] = 1;
    }
  }
  if (!report.ok()) return report;

  for (int m = 0; m < static_cast<int>(cat.morphisms().size()); ++m) {
    ++report.morphisms_checked;
    const auto& mor = cat.morphism(m);
    const auto& lm = left.action(m);
    const auto& rm = right.action(m);
    const auto& px = perm[mor.source];
    const auto& py = perm[mor.target];
    bool same = lm.nonzeros() == rm.nonzeros();
    for (int i = 0; i < lm.rows() && same; ++i) {
      for (const auto& [j, x] : lm.row(i)) {
        if (x != rm.at(py[i], px[j])) {
          same = false;
          break;
        }
      }
    }
    if (!same) report.failures.push_back("reindexing does not intertwine morphism " + std::to_string(m));
  }
  return report;
}

bool factorizable_check(const TwFunctor& f) {
  if (!f.has_monoidal()) return false;
  const auto& cat = *f.cat;
  for (int a = 1; a < cat.truncation(); ++a) {
    for (int b = 1; a + b <= cat.truncation(); ++b) {
      if (!inverse(f.mult(cat.discrete(a), cat.discrete(b)))) return false;
    }
  }
  return true;
}

std::optional<std::string> check_sharp_adjunction(const TwCategory& cat) {
  for (int n = 1; n <= cat.truncation(); ++n) {
    const int s = cat.sharp(n);
    for (int y = 0; y < cat.size(); ++y) {
      const int b = cat.object(y).n;
      // Monotone surjections [n] -> [b]: choose b-1 of the n-1 steps.
      long expected = 0;
      for (unsigned steps = 0; steps < (1u << (n - 1)); ++steps) expected += std::popcount(steps) == b - 1;
      if (b > n) expected = 0;
      if (static_cast<long>(cat.hom(s, y).size()) != expected) {
        return "Hom(I^♯, y) differs from Hom_LinOrd(I, U y) for n=" + std::to_string(n) + ", y=" + std::to_string(y);
      }
    }
  }
  for (int y = 0; y < cat.size(); ++y) {
    // Counit (U y)^♯ -> y and unit I -> U(I^♯) are identity maps.
    if (cat.comparison(y) < 0) return "counit missing at object " + std::to_string(y);
  }
  return std::nullopt;
}

}  // namespace bl
