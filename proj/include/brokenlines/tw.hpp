#pragma once

// The category Tw(LinOrd) truncated at orders with at most N elements, functors
// out of it with lax monoidal data for concatenation, Day convolution, and the
// passage between such functors and nonunital associative algebras.

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "brokenlines/linalg.hpp"
#include "brokenlines/order.hpp"

namespace bl {

class TwError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A pair (I, ≃) with I the standard order on n elements and ≃ convex,
/// stored by class ids.
struct TwObject {
  int n;
  std::vector<int> cls;

  int num_classes() const { return cls.empty() ? 0 : cls.back() + 1; }
  ConvexEquiv relation() const { return ConvexEquiv(LinOrder::standard(n), cls); }
  friend auto operator<=>(const TwObject&, const TwObject&) = default;
  friend bool operator==(const TwObject&, const TwObject&) = default;
};

/// A monotone surjection f with f(i) ≃ f(i') implying i ≃ i'.
struct TwMorphism {
  int source;
  int target;
  std::vector<int> map;
};

bool is_tw_morphism(const TwObject& x, const TwObject& y, const std::vector<int>& map);

/// (I ⋆ J, ≃_I ⊔ ≃_J): no identifications across the cut.
TwObject tw_star(const TwObject& x, const TwObject& y);

class TwCategory {
 public:
  explicit TwCategory(int truncation);

  int truncation() const { return n_; }
  const std::vector<TwObject>& objects() const { return objects_; }
  const std::vector<TwMorphism>& morphisms() const { return morphisms_; }
  const TwObject& object(int x) const { return objects_.at(x); }
  const TwMorphism& morphism(int f) const { return morphisms_.at(f); }

  /// -1 when absent.
  int find_object(const TwObject& x) const;
  int find_morphism(int source, int target, const std::vector<int>& map) const;

  const std::vector<int>& hom(int x, int y) const { return hom_.at(x * size() + y); }
  int size() const { return static_cast<int>(objects_.size()); }

  int identity(int x) const;
  /// g ∘ f.
  int compose(int g, int f) const;
  /// Index of x ⋆ y, or -1 beyond the truncation.
  int star(int x, int y) const;
  /// f ⋆ g : x ⋆ y -> x' ⋆ y', or -1 beyond the truncation.
  int star_morphism(int f, int g) const;

  int sharp(int n) const;
  int discrete(int n) const;
  int point() const { return discrete(1); }
  /// The identity map I^♯ -> (I, ≃).
  int comparison(int x) const;

 private:
  int n_;
  std::vector<TwObject> objects_;
  std::vector<TwMorphism> morphisms_;
  std::map<TwObject, int> object_index_;
  std::map<std::tuple<int, int, std::vector<int>>, int> morphism_index_;
  std::vector<std::vector<int>> hom_;
};

/// A functor on the truncated category with values in Q-vector spaces and
/// optional lax monoidal data m(x, y): F(x) ⊗ F(y) -> F(x ⋆ y).
struct TwFunctor {
  std::shared_ptr<const TwCategory> cat;
  std::vector<int> values;
  std::vector<Matrix> actions;
  /// Indexed x * cat->size() + y; set whenever x ⋆ y is within the truncation.
  std::vector<std::optional<Matrix>> monoidal;

  int value(int x) const { return values.at(x); }
  const Matrix& action(int f) const { return actions.at(f); }
  const Matrix& mult(int x, int y) const;
  bool has_monoidal() const { return !monoidal.empty(); }
};

/// Shapes, identities and composition. Returns the first failure.
std::optional<std::string> validate_functor(const TwFunctor& f);
/// Naturality of m and its associativity (associators are identities).
std::optional<std::string> validate_lax(const TwFunctor& f);
/// F(I^♯) -> F(I, ≃) invertible for every object.
bool is_fun0(const TwFunctor& f);

/// F(I, ≃) = A^{⊗|I|}; f acts by multiplying each fiber in order; m is the identity.
TwFunctor algebra_to_functor(const NonunitalAlgebra& a, std::shared_ptr<const TwCategory> cat);

/// Dimension d everywhere with identity actions; m sends e_i ⊗ e_j to δ_ij e_i,
/// which is the identity when d = 1.
TwFunctor constant_functor(std::shared_ptr<const TwCategory> cat, int dim = 1);

/// The algebra F(pt) with multiplication F(merge) ∘ F(c)^{-1} ∘ m(pt, pt), where
/// merge: ({0<1}, indiscrete) -> pt and c: ({0<1}, indiscrete) -> ({0<1}, discrete).
/// Throws TwError if F is not in Fun0 at size 2, if m(pt, pt) is singular, if
/// the result is not associative, or if the ternary product read off F at
/// size 3 disagrees.
NonunitalAlgebra functor_to_algebra(const TwFunctor& f);

struct NaturalIsoReport {
  std::vector<Matrix> components;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// η_x : G(x) = A^{⊗n} -> F(x) for G = algebra_to_functor(functor_to_algebra(F)),
/// built from F's monoidal data and comparison maps; checks invertibility,
/// naturality against every morphism, and compatibility with m.
NaturalIsoReport reverse_roundtrip(const TwFunctor& f);

/// P_y F(f) P_x^{-1} with monoidal data transported along P. Throws TwError on
/// a singular P_x.
TwFunctor conjugate_functor(const TwFunctor& f, const std::vector<Matrix>& p);

struct DaySummand {
  int cut;     // number of ≃-classes in the lower part
  int lower;   // object index of the lower part
  int upper;   // object index of the upper part
  int offset;  // position of the summand in (F ⊛ G)(x)
  int dim;
};

/// Summands of (F ⊛ G)(x), one per cut between ≃-classes, lower cut first.
std::vector<DaySummand> day_layout(const TwFunctor& f, const TwFunctor& g, int x);

/// (F ⊛ G)(I, ≃) = ⊕ over cuts I = I_0 ⋆ I_1 between classes of F(I_0) ⊗ G(I_1).
/// The result carries zero lax monoidal data.
TwFunctor day_convolution(const TwFunctor& f, const TwFunctor& g);

struct DayAssocReport {
  int objects_checked = 0;
  int morphisms_checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Reindexes ((F ⊛ G) ⊛ H)(x) against (F ⊛ (G ⊛ H))(x) by triple decompositions
/// and checks the bijection intertwines every action entry by entry.
DayAssocReport day_assoc_check(const TwFunctor& f, const TwFunctor& g, const TwFunctor& h);

/// Every m((I, discrete), (J, discrete)) is invertible.
bool factorizable_check(const TwFunctor& f);

/// Hom(I^♯, (J, ≃)) equals the set of all monotone surjections I -> J for every
/// pair of objects, and the unit and counit are identities.
std::optional<std::string> check_sharp_adjunction(const TwCategory& cat);

}  // namespace bl
