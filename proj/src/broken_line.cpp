#include "brokenlines/broken_line.hpp"

#include <stdexcept>

namespace bl {

LinePoint canonicalize(const BrokenLine& line, LinePoint x) {
  if (x.t.is_pos_inf() && x.a < line.m) return LinePoint{x.a + 1, ExtReal::neg_inf()};
  return x;
}

void check_point(const BrokenLine& line, const LinePoint& x) {
  if (line.m < 1) throw std::invalid_argument("broken line needs m >= 1");
  if (x.a < 1 || x.a > line.m) throw std::invalid_argument("component out of range");
  if (x.t.is_pos_inf() && x.a < line.m) throw std::invalid_argument("point is not in canonical form");
}

LinePoint initial_point(const BrokenLine&) { return LinePoint{1, ExtReal::neg_inf()}; }
LinePoint terminal_point(const BrokenLine& line) { return LinePoint{line.m, ExtReal::pos_inf()}; }

std::strong_ordering compare(const BrokenLine& line, const LinePoint& x, const LinePoint& y) {
  check_point(line, x);
  check_point(line, y);
  if (auto c = x.a <=> y.a; c != 0) return c;
  return x.t <=> y.t;
}

LinePoint translate(const BrokenLine& line, const Rational& t, const LinePoint& x) {
  check_point(line, x);
  if (x.is_fixed()) return x;
  return LinePoint{x.a, x.t + ExtReal(t)};
}

ExtReal translation_distance(const BrokenLine& line, const LinePoint& x, const LinePoint& y) {
  check_point(line, x);
  check_point(line, y);
  if (x.is_fixed()) throw DomainError("translation distance from a fixed point");
  if (y.a == x.a) {
    // y = (a, -inf) lies below every point of x's component.
    return y.t + (-x.t);
  }
  return y.a > x.a ? ExtReal::pos_inf() : ExtReal::neg_inf();
}

LinePoint Concatenation::embed_right(const LinePoint& y) const {
  return canonicalize(line, LinePoint{y.a + left_m, y.t});
}

Concatenation concatenate(const BrokenLine& left, const BrokenLine& right) {
  return Concatenation{BrokenLine{left.m + right.m}, left.m};
}

BrokenLine standard_concatenation(int copies) {
  if (copies < 1) throw std::invalid_argument("need at least one copy");
  return BrokenLine{copies};
}

LinePoint LineIso::apply(const LinePoint& x) const {
  if (x.is_fixed()) return x;
  return LinePoint{x.a, x.t + ExtReal(shifts.at(x.a - 1))};
}

LineIso compose(const LineIso& g, const LineIso& f) {
  if (g.m() != f.m()) throw std::invalid_argument("compose: component counts differ");
  LineIso out = f;
  for (int a = 0; a < f.m(); ++a) out.shifts[a] += g.shifts[a];
  return out;
}

LineIso inverse(const LineIso& f) {
  LineIso out = f;
  for (auto& s : out.shifts) s = -s;
  return out;
}

std::optional<int> hom_set(const BrokenLine& source, const BrokenLine& target) {
  if (source.m != target.m) return std::nullopt;
  return source.m;
}

std::optional<LineIso> marked_iso(const MarkedLine& source, const MarkedLine& target) {
  if (!hom_set(source.line, target.line) || source.marks.size() != target.marks.size()) {
    return std::nullopt;
  }
  const int m = source.line.m;
  std::vector<std::optional<Rational>> shift(m);
  for (std::size_t i = 0; i < source.marks.size(); ++i) {
    const auto& x = source.marks[i];
    const auto& y = target.marks[i];
    if (x.is_fixed() || y.is_fixed() || x.a != y.a) return std::nullopt;
    Rational s = y.t.value() - x.t.value();
    auto& slot = shift[x.a - 1];
    if (slot && *slot != s) return std::nullopt;
    slot = s;
  }
  LineIso iso;
  for (auto& s : shift) {
    if (!s) throw std::invalid_argument("marked_iso: an unmarked component leaves the shift undetermined");
    iso.shifts.push_back(*s);
  }
  return iso;
}

MarkedLine fiber_over(const RepPoint& alpha) {
  const auto cls = finite_distance_classes(alpha);
  const auto& base = alpha.base();
  const int n = alpha.size();
  int m = 0;
  for (int c : cls) m = std::max(m, c + 1);
  std::vector<int> basepoint(m, -1);
  for (int i = 0; i < n; ++i) {
    int& b = basepoint[cls[i]];
    if (b < 0 || base.less(b, i) || (base.equiv(b, i) && i > b)) b = i;
  }
  MarkedLine out{BrokenLine{m}, {}};
  for (int i = 0; i < n; ++i) {
    out.marks.push_back(LinePoint{cls[i] + 1, -alpha(i, basepoint[cls[i]])});
  }
  return out;
}

RepPoint extract_alpha(const BrokenLine& line, std::span<const LinePoint> marks,
                       const LinPreorder& base) {
  const int n = base.size();
  if (static_cast<int>(marks.size()) != n) throw std::invalid_argument("extract_alpha: mark count");
  RepPoint alpha(base, std::vector<ExtReal>(static_cast<std::size_t>(n) * n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (base.leq(i, j)) alpha.set(i, j, translation_distance(line, marks[i], marks[j]));
    }
  }
  return alpha;
}

}  // namespace bl
