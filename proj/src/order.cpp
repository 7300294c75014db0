#include "brokenlines/order.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace bl {

// ---------------------------------------------------------------------------
// LinPreorder

std::optional<std::string> LinPreorder::check(const std::vector<int>& rank) {
  if (rank.empty()) return "a linear preorder must be nonempty";
  const int n = static_cast<int>(rank.size());
  std::vector<char> seen(n, 0);
  int max_rank = -1;
  for (int r : rank) {
    if (r < 0 || r >= n) return "rank out of range: " + std::to_string(r);
    seen[r] = 1;
    max_rank = std::max(max_rank, r);
  }
  for (int r = 0; r <= max_rank; ++r) {
    if (!seen[r]) return "rank image is not an initial segment (missing " + std::to_string(r) + ")";
  }
  return std::nullopt;
}

LinPreorder::LinPreorder(std::vector<int> rank) : rank_(std::move(rank)) {
  if (auto err = check(rank_)) throw std::invalid_argument(*err);
  num_classes_ = *std::max_element(rank_.begin(), rank_.end()) + 1;
}

LinPreorder LinPreorder::chain(int n) {
  if (n < 1) throw std::invalid_argument("chain: n must be positive");
  std::vector<int> r(n);
  std::iota(r.begin(), r.end(), 0);
  return LinPreorder(std::move(r));
}

LinPreorder LinPreorder::indiscrete(int n) {
  if (n < 1) throw std::invalid_argument("indiscrete: n must be positive");
  return LinPreorder(std::vector<int>(n, 0));
}

std::vector<std::vector<int>> LinPreorder::classes() const {
  std::vector<std::vector<int>> out(num_classes_);
  for (int i = 0; i < size(); ++i) out[rank_[i]].push_back(i);
  return out;
}

std::vector<int> LinPreorder::enumeration() const {
  std::vector<int> e(size());
  std::iota(e.begin(), e.end(), 0);
  std::stable_sort(e.begin(), e.end(), [&](int a, int b) { return rank_[a] < rank_[b]; });
  return e;
}

// ---------------------------------------------------------------------------
// LinOrder

LinOrder::LinOrder(LinPreorder p) : pre_(std::move(p)) {
  if (!pre_.is_linear_order()) throw std::invalid_argument("rank vector is not injective");
  order_ = pre_.enumeration();
}

// ---------------------------------------------------------------------------
// OrderMorphism

std::optional<std::string> OrderMorphism::check() const {
  if (static_cast<int>(map.size()) != source.size()) return "map size differs from source size";
  for (int v : map) {
    if (v < 0 || v >= target.size()) return "map value out of range";
  }
  for (int i = 0; i < source.size(); ++i) {
    for (int j = 0; j < source.size(); ++j) {
      if (source.leq(i, j) && !target.leq(map[i], map[j])) {
        return "not nondecreasing at (" + std::to_string(i) + "," + std::to_string(j) + ")";
      }
    }
  }
  std::vector<char> hit(target.num_classes(), 0);
  for (int v : map) hit[target.rank(v)] = 1;
  for (int c = 0; c < target.num_classes(); ++c) {
    if (!hit[c]) return "not essentially surjective: class " + std::to_string(c) + " missed";
  }
  return std::nullopt;
}

OrderMorphism OrderMorphism::identity(const LinPreorder& p) {
  std::vector<int> m(p.size());
  std::iota(m.begin(), m.end(), 0);
  return OrderMorphism{p, p, std::move(m)};
}

OrderMorphism compose(const OrderMorphism& g, const OrderMorphism& f) {
  if (!(f.target == g.source)) throw std::invalid_argument("compose: morphisms are not composable");
  std::vector<int> m(f.map.size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = g.map[f.map[i]];
  return OrderMorphism{f.source, g.target, std::move(m)};
}

// ---------------------------------------------------------------------------
// ConvexEquiv

std::optional<std::string> ConvexEquiv::check(const LinOrder& base, const std::vector<int>& cls) {
  if (static_cast<int>(cls.size()) != base.size()) return "class vector size differs from base size";
  // Walking the order, class ids must be nondecreasing and step by at most one,
  // which is exactly convexity plus canonical numbering.
  for (int pos = 0; pos < base.size(); ++pos) {
    int c = cls[base.at(pos)];
    if (pos == 0) {
      if (c != 0) return "first class must have id 0";
      continue;
    }
    int prev = cls[base.at(pos - 1)];
    if (c == prev) continue;
    if (c != prev + 1) {
      return c < prev ? "class is not convex" : "class ids are not consecutive";
    }
  }
  return std::nullopt;
}

ConvexEquiv::ConvexEquiv(LinOrder base, std::vector<int> cls)
    : base_(std::move(base)), cls_(std::move(cls)) {
  if (auto err = check(base_, cls_)) throw std::invalid_argument(*err);
  num_classes_ = *std::max_element(cls_.begin(), cls_.end()) + 1;
}

ConvexEquiv ConvexEquiv::discrete(const LinOrder& base) {
  std::vector<int> cls(base.size());
  for (int i = 0; i < base.size(); ++i) cls[i] = base.rank(i);
  return ConvexEquiv(base, std::move(cls));
}

ConvexEquiv ConvexEquiv::indiscrete(const LinOrder& base) {
  return ConvexEquiv(base, std::vector<int>(base.size(), 0));
}

ConvexEquiv ConvexEquiv::from_cuts(int n, unsigned cuts) {
  std::vector<int> cls(n, 0);
  for (int i = 1; i < n; ++i) cls[i] = cls[i - 1] + ((cuts >> (i - 1)) & 1u ? 1 : 0);
  return ConvexEquiv(LinOrder::standard(n), std::move(cls));
}

bool ConvexEquiv::refines(const ConvexEquiv& other) const {
  if (!(base_ == other.base_)) return false;
  // Convex classes: comparing neighbours in the order suffices.
  for (int pos = 1; pos < size(); ++pos) {
    int a = base_.at(pos - 1), b = base_.at(pos);
    if (cls_[a] == cls_[b] && other.cls_[a] != other.cls_[b]) return false;
  }
  return true;
}

std::vector<std::vector<int>> ConvexEquiv::classes() const {
  std::vector<std::vector<int>> out(num_classes_);
  for (int pos = 0; pos < size(); ++pos) out[cls_[base_.at(pos)]].push_back(base_.at(pos));
  return out;
}

OrderMorphism ConvexEquiv::projection() const {
  return OrderMorphism{base_.preorder(), LinPreorder::chain(num_classes_), cls_};
}

// ---------------------------------------------------------------------------
// Amalgams

namespace {

// i <=_I i' implies i <=_K i' and every K-class meets the image.
std::optional<std::string> check_inclusion(const LinOrder& part, int offset, const LinPreorder& k,
                                           const char* name) {
  for (int a = 0; a < part.size(); ++a) {
    for (int b = 0; b < part.size(); ++b) {
      if (part.leq(a, b) && !k.leq(a + offset, b + offset)) {
        return std::string("inclusion of ") + name + " is not nondecreasing";
      }
    }
  }
  std::vector<char> hit(k.num_classes(), 0);
  for (int a = 0; a < part.size(); ++a) hit[k.rank(a + offset)] = 1;
  if (std::find(hit.begin(), hit.end(), 0) != hit.end()) {
    return std::string("inclusion of ") + name + " is not essentially surjective";
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::string> Amalgam::check() const {
  if (preorder.size() != left.size() + right.size()) return "amalgam size differs from |I| + |J|";
  if (auto e = check_inclusion(left, 0, preorder, "I")) return e;
  return check_inclusion(right, left.size(), preorder, "J");
}

bool amalgam_leq(const Amalgam& a, const Amalgam& b) {
  const int n = a.preorder.size();
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (a.preorder.leq(x, y) && !b.preorder.leq(x, y)) return false;
    }
  }
  return true;
}

Amalgam amalgam_join(const Amalgam& a, const Amalgam& b) {
  const int n = a.preorder.size();
  std::vector<std::vector<char>> rel(n, std::vector<char>(n, 0));
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) rel[x][y] = a.preorder.leq(x, y) || b.preorder.leq(x, y);
  }
  for (int k = 0; k < n; ++k) {
    for (int x = 0; x < n; ++x) {
      if (!rel[x][k]) continue;
      for (int y = 0; y < n; ++y) {
        if (rel[k][y]) rel[x][y] = 1;
      }
    }
  }
  // A total preorder: the rank of x is the number of distinct classes strictly below it.
  std::vector<int> below(n, 0);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (rel[y][x] && !rel[x][y]) ++below[x];
    }
  }
  std::vector<int> distinct = below;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<int> rank(n);
  for (int x = 0; x < n; ++x) {
    rank[x] = static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), below[x]) -
                               distinct.begin());
  }
  return Amalgam{a.left, a.right, LinPreorder(std::move(rank))};
}

int AmalgamPoset::index_of(const LinPreorder& p) const {
  for (std::size_t i = 0; i < amalgams.size(); ++i) {
    if (amalgams[i].preorder == p) return static_cast<int>(i);
  }
  return -1;
}

// ---------------------------------------------------------------------------
// Enumeration

std::vector<LinPreorder> enumerate_linear_preorders(int n) {
  if (n < 1) throw std::invalid_argument("enumerate_linear_preorders: n must be positive");
  std::vector<LinPreorder> out;
  std::vector<int> r(n, 0);
  // Odometer over {0..n-1}^n in lexicographic order, keeping valid rank vectors.
  while (true) {
    if (!LinPreorder::check(r)) out.emplace_back(r);
    int pos = n - 1;
    while (pos >= 0 && r[pos] == n - 1) r[pos--] = 0;
    if (pos < 0) break;
    ++r[pos];
  }
  return out;
}

std::pair<LinOrder, OrderMorphism> quotient(const LinPreorder& p) {
  LinOrder q = LinOrder::standard(p.num_classes());
  return {q, OrderMorphism{p, q.preorder(), p.ranks()}};
}

std::vector<OrderMorphism> enumerate_surjections(const LinOrder& source, const LinOrder& target) {
  std::vector<OrderMorphism> out;
  const int n = source.size(), m = target.size();
  if (n < m) return out;
  std::vector<int> map(n, 0);
  while (true) {
    OrderMorphism f{source.preorder(), target.preorder(), map};
    if (f.is_valid()) out.push_back(std::move(f));
    int pos = n - 1;
    while (pos >= 0 && map[pos] == m - 1) map[pos--] = 0;
    if (pos < 0) break;
    ++map[pos];
  }
  return out;
}

ConvLattice enumerate_convex_equivalences(const LinOrder& order) {
  // Brute force over restricted growth strings (all set partitions), keeping
  // the convex ones.
  const int n = order.size();
  ConvLattice out;
  std::vector<int> rgs(n, 0);
  auto emit = [&]() {
    std::vector<int> cls(n);
    // Renumber classes by order of first appearance along the linear order.
    std::map<int, int> relabel;
    for (int pos = 0; pos < n; ++pos) {
      int label = order.at(pos);
      auto [it, inserted] = relabel.try_emplace(rgs[label], static_cast<int>(relabel.size()));
      cls[label] = it->second;
    }
    if (!ConvexEquiv::check(order, cls)) out.relations.emplace_back(order, std::move(cls));
  };
  std::vector<int> maxes(n, 0);
  while (true) {
    emit();
    int pos = n - 1;
    while (pos > 0 && rgs[pos] == maxes[pos - 1] + 1) --pos;
    if (pos <= 0) break;
    ++rgs[pos];
    maxes[pos] = std::max(maxes[pos - 1], rgs[pos]);
    for (int k = pos + 1; k < n; ++k) {
      rgs[k] = 0;
      maxes[k] = maxes[pos];
    }
  }
  std::sort(out.relations.begin(), out.relations.end(), [](const ConvexEquiv& a, const ConvexEquiv& b) {
    if (a.num_classes() != b.num_classes()) return a.num_classes() > b.num_classes();
    return a.class_ids() < b.class_ids();
  });
  for (std::size_t a = 0; a < out.relations.size(); ++a) {
    for (std::size_t b = 0; b < out.relations.size(); ++b) {
      if (out.relations[a].refines(out.relations[b])) {
        out.refinement.emplace_back(static_cast<int>(a), static_cast<int>(b));
      }
    }
  }
  return out;
}

AmalgamPoset enumerate_amalgams(const LinOrder& left, const LinOrder& right) {
  AmalgamPoset out;
  for (auto& p : enumerate_linear_preorders(left.size() + right.size())) {
    Amalgam k{left, right, p};
    if (k.is_valid()) out.amalgams.push_back(std::move(k));
  }
  const int count = static_cast<int>(out.amalgams.size());
  for (int a = 0; a < count; ++a) {
    for (int b = 0; b < count; ++b) {
      if (amalgam_leq(out.amalgams[a], out.amalgams[b])) out.order.emplace_back(a, b);
    }
  }
  out.join.assign(count, std::vector<int>(count, -1));
  for (int a = 0; a < count; ++a) {
    for (int b = a; b < count; ++b) {
      int j = out.index_of(amalgam_join(out.amalgams[a], out.amalgams[b]).preorder);
      out.join[a][b] = out.join[b][a] = j;
    }
  }
  return out;
}

LinOrder concatenate_orders(const LinOrder& first, const LinOrder& second) {
  std::vector<int> rank;
  rank.reserve(first.size() + second.size());
  for (int i = 0; i < first.size(); ++i) rank.push_back(first.rank(i));
  for (int j = 0; j < second.size(); ++j) rank.push_back(first.size() + second.rank(j));
  return LinOrder(std::move(rank));
}

LinPreorder concatenate_preorders(const LinPreorder& first, const LinPreorder& second) {
  std::vector<int> rank = first.ranks();
  for (int r : second.ranks()) rank.push_back(first.num_classes() + r);
  return LinPreorder(std::move(rank));
}

}  // namespace bl
