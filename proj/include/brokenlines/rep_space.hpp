#pragma once

// Points of Rep(I, BR+): additive cocycles on the comparable pairs of a
// linear preorder, valued in (-inf, inf]. Exact rationals throughout.

#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "brokenlines/order.hpp"
#include "brokenlines/rational.hpp"

namespace bl {

/// A function on pairs i <=_I j. The full table is stored so that malformed
/// hand-built points can be represented and rejected by validate().
class RepPoint {
 public:
  /// Unchecked: `table` is row-major n*n; entries for pairs with i !<= j are ignored.
  RepPoint(LinPreorder base, std::vector<ExtReal> table);

  const LinPreorder& base() const { return base_; }
  int size() const { return base_.size(); }

  /// alpha(i, j); throws std::out_of_range unless i <=_I j.
  const ExtReal& operator()(int i, int j) const;
  void set(int i, int j, ExtReal v);

  friend bool operator==(const RepPoint& a, const RepPoint& b);

 private:
  LinPreorder base_;
  std::vector<ExtReal> table_;
};

struct RepViolation {
  enum class Kind { Diagonal, NegativeInfinity, Cocycle, Finiteness };
  Kind kind;
  int i = 0, j = 0, k = 0;
  std::string message;
};

/// Checks alpha(i,i) = 0, values in (-inf, inf], the cocycle law on every
/// triple i <= j <= k, and finiteness on =_I pairs. Reports the first violation.
std::optional<RepViolation> validate(const RepPoint& alpha);

/// The point of Rep([n], BR+) with alpha(i-1, i) = gaps[i-1]; [n] has n+1 elements.
RepPoint rep_from_gaps(std::span<const ExtReal> gaps);

/// General chart inverse: `enumeration` lists I nondecreasingly and `coords[m]`
/// is alpha(enumeration[m], enumeration[m+1]). Throws std::invalid_argument on a
/// bad enumeration or an infinite coordinate where finiteness is forced.
RepPoint rep_from_chart(const LinPreorder& base, std::span<const int> enumeration,
                        std::span<const ExtReal> coords);

struct ChartCoordinates {
  std::vector<ExtReal> coords;
  /// finite_forced[m] iff enumeration[m+1] <=_I enumeration[m].
  std::vector<bool> finite_forced;
};

/// Throws std::invalid_argument unless `enumeration` is a nondecreasing listing of I.
ChartCoordinates chart_coordinates(const RepPoint& alpha, std::span<const int> enumeration);

/// Classes of the relation "finite distance apart", numbered along the preorder.
/// Works for any base preorder.
std::vector<int> finite_distance_classes(const RepPoint& alpha);

/// E(alpha); the base must be a linear order.
ConvexEquiv stratum_of(const RepPoint& alpha);

/// alpha ∈ K_E.
bool in_stratum(const RepPoint& alpha, const ConvexEquiv& e);
/// alpha ∈ U_E, i.e. E ⊆ E(alpha).
bool in_open_set(const RepPoint& alpha, const ConvexEquiv& e);

/// beta(i, i') = alpha(f(i), f(i')).
RepPoint pullback_rep(const OrderMorphism& f, const RepPoint& alpha);

/// alpha ∈ Φ(I, ≃): alpha(i,j) < inf implies i ≃ j.
bool phi_membership(const RepPoint& alpha, const ConvexEquiv& rel);

/// The point on I ⋆ J restricting to alpha and beta, with cross values +inf.
RepPoint glue(const RepPoint& alpha, const RepPoint& beta);

/// {1/2, 1, 3/2, ..., 5}: the deterministic grid for finite gaps.
const std::vector<Rational>& gap_grid();

/// A point of K_E on a standard order: gaps inside classes drawn from the
/// grid, +inf between classes.
RepPoint sample_stratum(const ConvexEquiv& e, std::mt19937_64& rng);

/// Number of finite chart coordinates along the natural enumeration.
int finite_coordinate_count(const RepPoint& alpha);

}  // namespace bl
