#include "brokenlines/rep_space.hpp"

#include <stdexcept>

namespace bl {

RepPoint::RepPoint(LinPreorder base, std::vector<ExtReal> table)
    : base_(std::move(base)), table_(std::move(table)) {
  const std::size_t n = static_cast<std::size_t>(base_.size());
  if (table_.size() != n * n) throw std::invalid_argument("RepPoint: table must be n*n");
}

const ExtReal& RepPoint::operator()(int i, int j) const {
  if (!base_.leq(i, j)) throw std::out_of_range("RepPoint: pair is not comparable");
  return table_[static_cast<std::size_t>(i) * size() + j];
}

void RepPoint::set(int i, int j, ExtReal v) {
  if (!base_.leq(i, j)) throw std::out_of_range("RepPoint: pair is not comparable");
  table_[static_cast<std::size_t>(i) * size() + j] = std::move(v);
}

bool operator==(const RepPoint& a, const RepPoint& b) {
  if (!(a.base_ == b.base_)) return false;
  const int n = a.size();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (a.base_.leq(i, j) && !(a(i, j) == b(i, j))) return false;
    }
  }
  return true;
}

std::optional<RepViolation> validate(const RepPoint& alpha) {
  using K = RepViolation::Kind;
  const auto& p = alpha.base();
  const int n = alpha.size();
  for (int i = 0; i < n; ++i) {
    if (!(alpha(i, i) == ExtReal(0))) {
      return RepViolation{K::Diagonal, i, i, i, "alpha(i,i) != 0"};
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!p.leq(i, j)) continue;
      if (alpha(i, j).is_neg_inf()) return RepViolation{K::NegativeInfinity, i, j, j, "value -inf"};
      if (p.equiv(i, j) && !alpha(i, j).is_finite()) {
        return RepViolation{K::Finiteness, i, j, j, "infinite value on an =_I pair"};
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!p.leq(i, j)) continue;
      for (int k = 0; k < n; ++k) {
        if (!p.leq(j, k)) continue;
        if (!(alpha(i, j) + alpha(j, k) == alpha(i, k))) {
          return RepViolation{K::Cocycle, i, j, k, "alpha(i,j) + alpha(j,k) != alpha(i,k)"};
        }
      }
    }
  }
  return std::nullopt;
}

namespace {

void check_enumeration(const LinPreorder& base, std::span<const int> e) {
  const int n = base.size();
  if (static_cast<int>(e.size()) != n) throw std::invalid_argument("enumeration has wrong length");
  std::vector<char> seen(n, 0);
  for (int x : e) {
    if (x < 0 || x >= n || seen[x]) throw std::invalid_argument("enumeration is not a bijection");
    seen[x] = 1;
  }
  for (int m = 1; m < n; ++m) {
    if (!base.leq(e[m - 1], e[m])) throw std::invalid_argument("enumeration is not nondecreasing");
  }
}

}  // namespace

RepPoint rep_from_chart(const LinPreorder& base, std::span<const int> enumeration,
                        std::span<const ExtReal> coords) {
  check_enumeration(base, enumeration);
  const int n = base.size();
  if (static_cast<int>(coords.size()) != n - 1) throw std::invalid_argument("expected n-1 coordinates");
  for (int m = 0; m + 1 < n; ++m) {
    if (coords[m].is_neg_inf()) throw std::invalid_argument("coordinate is -inf");
    if (base.leq(enumeration[m + 1], enumeration[m]) && !coords[m].is_finite()) {
      throw std::invalid_argument("coordinate " + std::to_string(m) + " must be finite");
    }
  }
  std::vector<ExtReal> table(static_cast<std::size_t>(n) * n);
  RepPoint alpha(base, std::move(table));
  for (int a = 0; a < n; ++a) {
    ExtReal acc(0);
    alpha.set(enumeration[a], enumeration[a], ExtReal(0));
    for (int b = a + 1; b < n; ++b) {
      acc = acc + coords[b - 1];
      int i = enumeration[a], j = enumeration[b];
      alpha.set(i, j, acc);
      // Going backwards is only allowed inside an =_I class, where acc is finite.
      if (base.leq(j, i)) alpha.set(j, i, -acc);
    }
  }
  return alpha;
}

RepPoint rep_from_gaps(std::span<const ExtReal> gaps) {
  const int n = static_cast<int>(gaps.size()) + 1;
  auto base = LinPreorder::chain(n);
  auto e = base.enumeration();
  return rep_from_chart(base, e, gaps);
}

ChartCoordinates chart_coordinates(const RepPoint& alpha, std::span<const int> enumeration) {
  check_enumeration(alpha.base(), enumeration);
  ChartCoordinates out;
  for (std::size_t m = 1; m < enumeration.size(); ++m) {
    out.coords.push_back(alpha(enumeration[m - 1], enumeration[m]));
    out.finite_forced.push_back(alpha.base().leq(enumeration[m], enumeration[m - 1]));
  }
  return out;
}

std::vector<int> finite_distance_classes(const RepPoint& alpha) {
  // Along a nondecreasing enumeration, consecutive elements share a class iff
  // their gap is finite; the cocycle law makes this the full relation.
  const auto e = alpha.base().enumeration();
  std::vector<int> cls(alpha.size(), 0);
  int c = 0;
  for (std::size_t m = 1; m < e.size(); ++m) {
    if (!alpha(e[m - 1], e[m]).is_finite()) ++c;
    cls[e[m]] = c;
  }
  return cls;
}

ConvexEquiv stratum_of(const RepPoint& alpha) {
  LinOrder order(alpha.base());
  return ConvexEquiv(order, finite_distance_classes(alpha));
}

bool in_stratum(const RepPoint& alpha, const ConvexEquiv& e) { return stratum_of(alpha) == e; }

bool in_open_set(const RepPoint& alpha, const ConvexEquiv& e) { return e.refines(stratum_of(alpha)); }

RepPoint pullback_rep(const OrderMorphism& f, const RepPoint& alpha) {
  if (!(f.target == alpha.base())) throw std::invalid_argument("pullback_rep: base mismatch");
  const int n = f.source.size();
  RepPoint beta(f.source, std::vector<ExtReal>(static_cast<std::size_t>(n) * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (f.source.leq(i, j)) beta.set(i, j, alpha(f.map[i], f.map[j]));
    }
  }
  return beta;
}

bool phi_membership(const RepPoint& alpha, const ConvexEquiv& rel) {
  const int n = alpha.size();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (alpha.base().leq(i, j) && alpha(i, j).is_finite() && !rel.related(i, j)) return false;
    }
  }
  return true;
}

RepPoint glue(const RepPoint& alpha, const RepPoint& beta) {
  LinPreorder cat = concatenate_preorders(alpha.base(), beta.base());
  const int a = alpha.size(), n = a + beta.size();
  RepPoint out(cat, std::vector<ExtReal>(static_cast<std::size_t>(n) * n));
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (!cat.leq(x, y)) continue;
      if (x < a && y < a) out.set(x, y, alpha(x, y));
      else if (x >= a && y >= a) out.set(x, y, beta(x - a, y - a));
      else out.set(x, y, ExtReal::pos_inf());
    }
  }
  return out;
}

const std::vector<Rational>& gap_grid() {
  static const std::vector<Rational> grid = [] {
    std::vector<Rational> g;
    for (int k = 1; k <= 10; ++k) g.emplace_back(k, 2);
    for (auto& q : g) q.canonicalize();
    return g;
  }();
  return grid;
}

RepPoint sample_stratum(const ConvexEquiv& e, std::mt19937_64& rng) {
  const auto& grid = gap_grid();
  std::uniform_int_distribution<std::size_t> pick(0, grid.size() - 1);
  const auto& order = e.base();
  std::vector<ExtReal> gaps;
  for (int pos = 1; pos < order.size(); ++pos) {
    if (e.related(order.at(pos - 1), order.at(pos))) gaps.emplace_back(grid[pick(rng)]);
    else gaps.push_back(ExtReal::pos_inf());
  }
  return rep_from_chart(order.preorder(), order.elements_in_order(), gaps);
}

int finite_coordinate_count(const RepPoint& alpha) {
  auto e = alpha.base().enumeration();
  int count = 0;
  for (const auto& c : chart_coordinates(alpha, e).coords) count += c.is_finite() ? 1 : 0;
  return count;
}

}  // namespace bl
