#include "brokenlines/sheaf.hpp"

namespace bl {

GlobalSheaf::GlobalSheaf(std::vector<int> dims, std::vector<std::vector<Matrix>> gens)
    : dims_(std::move(dims)), gens_(std::move(gens)) {
  if (dims_.empty()) throw SheafError("a global sheaf needs at least V_0");
  for (int d : dims_) {
    if (d < 0) throw SheafError("negative dimension");
  }
  const int big_n = truncation();
  if (static_cast<int>(gens_.size()) != big_n) throw SheafError("expected generators for n = 1..N");
  for (int n = 1; n <= big_n; ++n) {
    if (static_cast<int>(gens_[n - 1].size()) != n) {
      throw SheafError("expected " + std::to_string(n) + " generators out of V_" + std::to_string(n));
    }
    for (int k = 0; k < n; ++k) {
      const auto& g = gens_[n - 1][k];
      if (g.rows() != dims_[n - 1] || g.cols() != dims_[n]) {
        throw SheafError("gen(" + std::to_string(n) + "," + std::to_string(k) + ") has the wrong shape");
      }
    }
  }
  for (int n = 2; n <= big_n; ++n) {
    for (int i = 0; i < n - 1; ++i) {
      for (int j = i; j < n - 1; ++j) {
        if (!(gen(n - 1, j) * gen(n, i) == gen(n - 1, i) * gen(n, j + 1))) {
          throw SheafError("exchange relation fails at n=" + std::to_string(n) + ", i=" + std::to_string(i) +
                           ", j=" + std::to_string(j));
        }
      }
    }
  }
}

namespace {

void check_surjection_positions(const std::vector<int>& map) {
  if (map.empty() || map.front() != 0) throw std::invalid_argument("not a monotone surjection onto [m]");
  for (std::size_t p = 1; p < map.size(); ++p) {
    if (map[p] != map[p - 1] && map[p] != map[p - 1] + 1) {
      throw std::invalid_argument("not a monotone surjection onto [m]");
    }
  }
}

std::vector<int> drop(const std::vector<int>& g, int k) {
  std::vector<int> out = g;
  out.erase(out.begin() + k + 1);
  return out;
}

void collect_sequences(const std::vector<int>& g, std::vector<int>& prefix, std::vector<std::vector<int>>& out) {
  bool any = false;
  for (std::size_t k = 0; k + 1 < g.size(); ++k) {
    if (g[k] != g[k + 1]) continue;
    any = true;
    prefix.push_back(static_cast<int>(k));
    collect_sequences(drop(g, static_cast<int>(k)), prefix, out);
    prefix.pop_back();
  }
  if (!any) out.push_back(prefix);
}

}  // namespace

std::vector<int> merge_normal_form(const std::vector<int>& map) {
  check_surjection_positions(map);
  std::vector<int> g = map, seq;
  while (true) {
    int k = -1;
    for (int p = static_cast<int>(g.size()) - 2; p >= 0; --p) {
      if (g[p] == g[p + 1]) {
        k = p;
        break;
      }
    }
    if (k < 0) return seq;
    seq.push_back(k);
    g = drop(g, k);
  }
}

std::vector<std::vector<int>> all_merge_sequences(const std::vector<int>& map) {
  check_surjection_positions(map);
  std::vector<std::vector<int>> out;
  std::vector<int> prefix;
  collect_sequences(map, prefix, out);
  return out;
}

Matrix apply_merges(const GlobalSheaf& f, int n, const std::vector<int>& merges) {
  Matrix m = Matrix::identity(f.dim(n));
  int cur = n;
  for (int k : merges) {
    m = f.gen(cur, k) * m;
    --cur;
  }
  return m;
}

Matrix apply_surjection(const GlobalSheaf& f, const OrderMorphism& map) {
  if (auto e = map.check()) throw std::invalid_argument(*e);
  LinOrder source(map.source), target(map.target);
  if (source.size() > f.truncation() + 1) throw std::invalid_argument("source exceeds the truncation");
  std::vector<int> g(source.size());
  for (int p = 0; p < source.size(); ++p) g[p] = target.rank(map.map[source.at(p)]);
  return apply_merges(f, source.size() - 1, merge_normal_form(g));
}

GlobalSheaf algebra_global_sheaf(const NonunitalAlgebra& a, int truncation) {
  if (auto v = validate_algebra(a)) throw SheafError("algebra is not associative: " + v->message);
  const int d = a.dim();
  const Matrix mu = a.multiplication();
  const Matrix one = Matrix::identity(d);
  std::vector<int> dims;
  std::vector<std::vector<Matrix>> gens;
  for (int n = 0; n <= truncation; ++n) {
    int dim = 1;
    for (int i = 0; i <= n; ++i) dim *= d;
    dims.push_back(dim);
    if (n == 0) continue;
    std::vector<Matrix> row;
    for (int k = 0; k < n; ++k) {
      row.push_back(tensor(tensor(tensor_power(one, k), mu), tensor_power(one, n - 1 - k)));
    }
    gens.push_back(std::move(row));
  }
  return GlobalSheaf(std::move(dims), std::move(gens));
}

GlobalSheaf random_global_sheaf(int truncation, int max_dim, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim_pick(1, max_dim), entry(-2, 2);
  std::vector<int> dims;
  for (int n = 0; n <= truncation; ++n) dims.push_back(dim_pick(rng));
  std::vector<std::vector<Matrix>> gens;
  for (int n = 1; n <= truncation; ++n) {
    Matrix m(dims[n - 1], dims[n]);
    for (int r = 0; r < m.rows(); ++r) {
      for (int c = 0; c < m.cols(); ++c) m.at(r, c) = entry(rng);
    }
    gens.emplace_back(n, m);
  }
  return GlobalSheaf(std::move(dims), std::move(gens));
}

int ConstructibleSheaf::index_of(const ConvexEquiv& e) const {
  for (std::size_t i = 0; i < conv.relations.size(); ++i) {
    if (conv.relations[i] == e) return static_cast<int>(i);
  }
  return -1;
}

const Matrix& ConstructibleSheaf::restrict(int from, int to) const {
  const auto& m = restriction.at(from).at(to);
  if (!m) throw std::invalid_argument("no restriction: the relations are not nested");
  return *m;
}

std::optional<std::string> check_functoriality(const ConstructibleSheaf& s) {
  const int count = static_cast<int>(s.conv.relations.size());
  for (int a = 0; a < count; ++a) {
    const auto& id = s.restriction[a][a];
    if (!id || !(*id == Matrix::identity(s.values[a]))) {
      return "restriction along E ⊆ E is not the identity at relation " + std::to_string(a);
    }
  }
  for (int a = 0; a < count; ++a) {
    for (int b = 0; b < count; ++b) {
      if (!s.restriction[a][b]) continue;
      const auto& ab = *s.restriction[a][b];
      if (ab.rows() != s.values[b] || ab.cols() != s.values[a]) return "restriction has the wrong shape";
      for (int c = 0; c < count; ++c) {
        if (!s.restriction[b][c]) continue;
        if (!s.restriction[a][c]) return "refinement is not transitive";
        if (!(*s.restriction[b][c] * ab == *s.restriction[a][c])) {
          return "restrictions do not compose along " + std::to_string(a) + " ⊆ " + std::to_string(b) + " ⊆ " +
                 std::to_string(c);
        }
      }
    }
  }
  return std::nullopt;
}

ConstructibleSheaf global_to_constructible(const GlobalSheaf& f, const LinOrder& base) {
  if (base.size() > f.truncation() + 1) throw std::invalid_argument("order exceeds the truncation");
  ConstructibleSheaf s{base, enumerate_convex_equivalences(base), {}, {}};
  const int count = static_cast<int>(s.conv.relations.size());
  for (const auto& e : s.conv.relations) s.values.push_back(f.dim(e.num_classes() - 1));
  s.restriction.assign(count, std::vector<std::optional<Matrix>>(count));
  for (auto [a, b] : s.conv.refinement) {
    const auto& e = s.conv.relations[a];
    const auto& e2 = s.conv.relations[b];
    std::vector<int> q(e.num_classes());
    for (int i = 0; i < base.size(); ++i) q[e.class_of(i)] = e2.class_of(i);
    OrderMorphism m{LinPreorder::chain(e.num_classes()), LinPreorder::chain(e2.num_classes()), q};
    s.restriction[a][b] = apply_surjection(f, m);
  }
  return s;
}

std::vector<std::string> pullback_square_check(const GlobalSheaf& f, const OrderMorphism& map) {
  if (auto e = map.check()) throw std::invalid_argument(*e);
  LinOrder source(map.source), target(map.target);
  auto on_i = global_to_constructible(f, source);
  auto on_j = global_to_constructible(f, target);
  std::vector<std::string> failures;
  const int count = static_cast<int>(on_j.conv.relations.size());
  std::vector<int> pre(count);
  for (int a = 0; a < count; ++a) {
    const auto& e = on_j.conv.relations[a];
    std::vector<int> cls(source.size());
    for (int i = 0; i < source.size(); ++i) cls[i] = e.class_of(map.map[i]);
    pre[a] = on_i.index_of(ConvexEquiv(source, cls));
    if (pre[a] < 0) {
      failures.push_back("preimage of relation " + std::to_string(a) + " is missing");
      continue;
    }
    if (on_i.values[pre[a]] != on_j.values[a]) failures.push_back("values differ at relation " + std::to_string(a));
  }
  if (!failures.empty()) return failures;
  for (auto [a, b] : on_j.conv.refinement) {
    const auto& lifted = on_i.restriction[pre[a]][pre[b]];
    if (!lifted) {
      failures.push_back("preimages of " + std::to_string(a) + " ⊆ " + std::to_string(b) + " are not nested");
    } else if (!(*lifted == on_j.restrict(a, b))) {
      failures.push_back("square does not commute at " + std::to_string(a) + " ⊆ " + std::to_string(b));
    }
  }
  return failures;
}

int stalk(const ConstructibleSheaf& s, const RepPoint& alpha) {
  int idx = s.index_of(stratum_of(alpha));
  if (idx < 0) throw std::invalid_argument("stalk: point does not live on the sheaf's base");
  return s.values[idx];
}

FamilyEvaluation evaluate_on_family(const GlobalSheaf& f, const SampledFamily& fam) {
  LinOrder base(fam.index);
  auto s = global_to_constructible(f, base);
  FamilyEvaluation out;
  std::vector<int> idx;
  for (const auto& sample : fam.samples) {
    auto e = stratum_of(sample.alpha);
    int i = s.index_of(e);
    idx.push_back(i);
    out.stalks.push_back({sample.id, e.class_ids(), s.values[i]});
  }
  for (const auto& [from, to] : fam.edges) {
    int a = fam.find(from), b = fam.find(to);
    if (a < 0 || b < 0) throw std::invalid_argument("edge names an unknown sample");
    if (s.restriction[idx[a]][idx[b]]) {
      out.edges.push_back({from, to, s.restriction[idx[a]][idx[b]]});
    } else if (s.restriction[idx[b]][idx[a]]) {
      out.edges.push_back({to, from, s.restriction[idx[b]][idx[a]]});
    } else {
      out.edges.push_back({from, to, std::nullopt});
      out.incomparable.push_back(from + " -- " + to);
    }
  }
  return out;
}

}  // namespace bl
