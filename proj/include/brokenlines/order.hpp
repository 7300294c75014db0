#pragma once

// Finite linear preorders, linear orders, monotone maps between them,
// convex equivalence relations and amalgams.
//
// Every preorder lives on the canonical label set {0, ..., n-1} and is stored
// as a rank vector: i <= j iff rank[i] <= rank[j]. The image of the rank
// vector is always an initial segment {0, ..., k-1} of the naturals, which
// makes equality of preorders plain vector equality.

#include <compare>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace bl {

class LinPreorder {
 public:
  /// Throws std::invalid_argument unless `rank` is a valid canonical rank vector.
  explicit LinPreorder(std::vector<int> rank);

  /// Returns a description of the first problem, or nullopt when valid.
  static std::optional<std::string> check(const std::vector<int>& rank);

  /// 0 < 1 < ... < n-1.
  static LinPreorder chain(int n);
  /// All n elements equivalent.
  static LinPreorder indiscrete(int n);

  int size() const { return static_cast<int>(rank_.size()); }
  int num_classes() const { return num_classes_; }
  int rank(int i) const { return rank_[i]; }
  const std::vector<int>& ranks() const { return rank_; }

  bool leq(int i, int j) const { return rank_[i] <= rank_[j]; }
  bool less(int i, int j) const { return rank_[i] < rank_[j]; }
  bool equiv(int i, int j) const { return rank_[i] == rank_[j]; }
  bool is_linear_order() const { return num_classes_ == size(); }

  /// The =-classes, listed in increasing order; labels ascending in a class.
  std::vector<std::vector<int>> classes() const;

  /// Labels sorted by (rank, label): a nondecreasing enumeration.
  std::vector<int> enumeration() const;

  friend bool operator==(const LinPreorder&, const LinPreorder&) = default;
  friend auto operator<=>(const LinPreorder& a, const LinPreorder& b) {
    return a.rank_ <=> b.rank_;
  }

 private:
  std::vector<int> rank_;
  int num_classes_ = 0;
};

/// A linear preorder whose rank vector is a permutation.
class LinOrder {
 public:
  explicit LinOrder(LinPreorder p);
  explicit LinOrder(std::vector<int> rank) : LinOrder(LinPreorder(std::move(rank))) {}
  static LinOrder standard(int n) { return LinOrder(LinPreorder::chain(n)); }

  int size() const { return pre_.size(); }
  int rank(int i) const { return pre_.rank(i); }
  bool leq(int i, int j) const { return pre_.leq(i, j); }
  bool less(int i, int j) const { return pre_.less(i, j); }
  /// Label at position `pos` (0 = minimum).
  int at(int pos) const { return order_[pos]; }
  const std::vector<int>& elements_in_order() const { return order_; }
  const LinPreorder& preorder() const { return pre_; }

  friend bool operator==(const LinOrder& a, const LinOrder& b) { return a.pre_ == b.pre_; }

 private:
  LinPreorder pre_;
  std::vector<int> order_;
};

/// A nondecreasing, essentially surjective map of linear preorders.
struct OrderMorphism {
  LinPreorder source;
  LinPreorder target;
  std::vector<int> map;

  std::optional<std::string> check() const;
  bool is_valid() const { return !check().has_value(); }
  static OrderMorphism identity(const LinPreorder& p);

  friend bool operator==(const OrderMorphism&, const OrderMorphism&) = default;
};

/// g after f. Throws std::invalid_argument when f.target != g.source.
OrderMorphism compose(const OrderMorphism& g, const OrderMorphism& f);

/// An equivalence relation on a linear order whose classes are intervals.
/// `cls[i]` is the index of i's class; classes are numbered in increasing order.
class ConvexEquiv {
 public:
  ConvexEquiv(LinOrder base, std::vector<int> cls);
  static std::optional<std::string> check(const LinOrder& base, const std::vector<int>& cls);

  static ConvexEquiv discrete(const LinOrder& base);
  static ConvexEquiv indiscrete(const LinOrder& base);
  /// On the standard order of size n: bit c-1 of `cuts` set means a class
  /// boundary between positions c-1 and c.
  static ConvexEquiv from_cuts(int n, unsigned cuts);

  const LinOrder& base() const { return base_; }
  int size() const { return base_.size(); }
  int num_classes() const { return num_classes_; }
  int class_of(int i) const { return cls_[i]; }
  const std::vector<int>& class_ids() const { return cls_; }
  bool related(int i, int j) const { return cls_[i] == cls_[j]; }
  bool is_discrete() const { return num_classes_ == size(); }
  bool is_indiscrete() const { return num_classes_ == 1; }

  /// this ⊆ other as relations (this is finer).
  bool refines(const ConvexEquiv& other) const;
  std::vector<std::vector<int>> classes() const;
  /// The quotient surjection onto the standard order on the classes.
  OrderMorphism projection() const;

  friend bool operator==(const ConvexEquiv& a, const ConvexEquiv& b) {
    return a.base_ == b.base_ && a.cls_ == b.cls_;
  }

 private:
  LinOrder base_;
  std::vector<int> cls_;
  int num_classes_ = 0;
};

/// A linear preorder on I ⊔ J whose inclusions of I and J are nondecreasing
/// and essentially surjective. Labels: I keeps 0..|I|-1, J becomes |I|..|I|+|J|-1.
struct Amalgam {
  LinOrder left;
  LinOrder right;
  LinPreorder preorder;

  std::optional<std::string> check() const;
  bool is_valid() const { return !check().has_value(); }
  int left_size() const { return left.size(); }
  int right_size() const { return right.size(); }
};

/// K <= K' iff the identity map K -> K' is nondecreasing.
bool amalgam_leq(const Amalgam& a, const Amalgam& b);
/// Least upper bound: transitive closure of the union of the two relations.
Amalgam amalgam_join(const Amalgam& a, const Amalgam& b);

struct ConvLattice {
  std::vector<ConvexEquiv> relations;
  /// (a, b) whenever relations[a] refines relations[b], including a == b.
  std::vector<std::pair<int, int>> refinement;
};

struct AmalgamPoset {
  std::vector<Amalgam> amalgams;
  /// (a, b) whenever amalgams[a] <= amalgams[b], including a == b.
  std::vector<std::pair<int, int>> order;
  /// join[a][b] is the index of amalgams[a] ∨ amalgams[b].
  std::vector<std::vector<int>> join;
  int index_of(const LinPreorder& p) const;
};

/// All linear preorders on {0..n-1}, sorted lexicographically by rank vector.
/// Throws std::invalid_argument for n < 1.
std::vector<LinPreorder> enumerate_linear_preorders(int n);

/// The linear order on =-classes and the projection onto it.
std::pair<LinOrder, OrderMorphism> quotient(const LinPreorder& p);

/// All monotone surjections I -> J (empty when |I| < |J|).
std::vector<OrderMorphism> enumerate_surjections(const LinOrder& source, const LinOrder& target);

ConvLattice enumerate_convex_equivalences(const LinOrder& order);

AmalgamPoset enumerate_amalgams(const LinOrder& left, const LinOrder& right);

/// Disjoint union with every element of `first` below every element of `second`.
/// Labels of `second` are shifted by |first|.
LinOrder concatenate_orders(const LinOrder& first, const LinOrder& second);
/// Same, for preorders: every class of `first` lies below every class of `second`.
LinPreorder concatenate_preorders(const LinPreorder& first, const LinPreorder& second);

}  // namespace bl
