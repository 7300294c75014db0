#pragma once

// Broken lines up to isomorphism: a concatenation of m copies of [-inf, inf]
// with the translation action of R on each copy.

#include <compare>
#include <optional>
#include <span>
#include <vector>

#include "brokenlines/rational.hpp"
#include "brokenlines/rep_space.hpp"

namespace bl {

struct BrokenLine {
  int m = 1;

  /// Fixed points: (1,-inf), (2,-inf), ..., (m,-inf), (m,+inf).
  int fixed_point_count() const { return m + 1; }
  friend bool operator==(const BrokenLine&, const BrokenLine&) = default;
};

/// Component a (1-based) and coordinate t. Canonical form never uses (a, +inf)
/// for a < m; that point is written (a+1, -inf).
struct LinePoint {
  int a = 1;
  ExtReal t;

  bool is_fixed() const { return !t.is_finite(); }
  friend bool operator==(const LinePoint&, const LinePoint&) = default;
};

LinePoint canonicalize(const BrokenLine& line, LinePoint x);
/// Throws std::invalid_argument if x is not a canonical point of `line`.
void check_point(const BrokenLine& line, const LinePoint& x);

LinePoint initial_point(const BrokenLine& line);
LinePoint terminal_point(const BrokenLine& line);

std::strong_ordering compare(const BrokenLine& line, const LinePoint& x, const LinePoint& y);

/// The action of t on x. Fixed points do not move.
LinePoint translate(const BrokenLine& line, const Rational& t, const LinePoint& x);

/// d(x, y): the time to flow from x to y, +inf if y is beyond x's component and
/// -inf if it is before. Throws DomainError when x is a fixed point.
ExtReal translation_distance(const BrokenLine& line, const LinePoint& x, const LinePoint& y);

struct Concatenation {
  BrokenLine line;
  LinePoint embed_left(const LinePoint& x) const { return x; }
  LinePoint embed_right(const LinePoint& y) const;
  int left_m = 1;
};

/// L ⋆ L': the terminal point of L is glued to the initial point of L'.
Concatenation concatenate(const BrokenLine& left, const BrokenLine& right);

/// The standard line concatenated with itself `copies` times.
BrokenLine standard_concatenation(int copies);

/// An isomorphism of broken lines with the same m: translation by shifts[a-1]
/// on component a.
struct LineIso {
  std::vector<Rational> shifts;

  int m() const { return static_cast<int>(shifts.size()); }
  static LineIso identity(int m) { return LineIso{std::vector<Rational>(m)}; }
  LinePoint apply(const LinePoint& x) const;
  friend bool operator==(const LineIso&, const LineIso&) = default;
};

/// g after f.
LineIso compose(const LineIso& g, const LineIso& f);
LineIso inverse(const LineIso& f);

/// Hom(L, L') is empty unless the component counts agree, in which case it is
/// a torsor for Q^m; this returns m or nullopt.
std::optional<int> hom_set(const BrokenLine& source, const BrokenLine& target);

/// A broken line with one mark per element of an index set.
struct MarkedLine {
  BrokenLine line;
  std::vector<LinePoint> marks;
  friend bool operator==(const MarkedLine&, const MarkedLine&) = default;
};

/// The unique iso carrying marks onto marks, if any. Requires every component
/// of the source to be marked (so the shift vector is determined).
std::optional<LineIso> marked_iso(const MarkedLine& source, const MarkedLine& target);

/// The fiber of the universal family over alpha, with its canonical marks.
/// Components are the finite-distance classes; in each class the basepoint is a
/// maximal element (largest label among ties) and i sits at -alpha(i, basepoint).
MarkedLine fiber_over(const RepPoint& alpha);

/// alpha(i, j) = d(mark_i, mark_j) for i <= j.
RepPoint extract_alpha(const BrokenLine& line, std::span<const LinePoint> marks,
                       const LinPreorder& base);

}  // namespace bl
