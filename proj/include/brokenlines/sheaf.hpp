#pragma once

// Sheaves on the moduli of broken lines, in the combinatorial model:
// a global sheaf is a functor on finite nonempty linear orders and monotone
// surjections, presented by adjacent merges; a constructible sheaf on
// broken^I is a functor on the poset Conv(I).
//
// Variance: restriction goes from finer to coarser relations, value(E) ->
// value(E') for E ⊆ E'. The all-finite point sits in the indiscrete stratum
// and receives maps from every other stratum.

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "brokenlines/family.hpp"
#include "brokenlines/linalg.hpp"
#include "brokenlines/order.hpp"
#include "brokenlines/rep_space.hpp"

namespace bl {

class SheafError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// V_n = F([n]) for n = 0..N, where [n] = {0 < ... < n}, and gen(n, k): V_n -> V_{n-1}
/// the image of the merge s_k of k and k+1.
class GlobalSheaf {
 public:
  /// gens[n-1][k] is gen(n, k). Throws SheafError on bad shapes or when an
  /// exchange relation gen(s_j) gen(s_i) = gen(s_i) gen(s_{j+1}), i <= j, fails.
  GlobalSheaf(std::vector<int> dims, std::vector<std::vector<Matrix>> gens);

  int truncation() const { return static_cast<int>(dims_.size()) - 1; }
  int dim(int n) const { return dims_.at(n); }
  const std::vector<int>& dims() const { return dims_; }
  const Matrix& gen(int n, int k) const { return gens_.at(n - 1).at(k); }

 private:
  std::vector<int> dims_;
  std::vector<std::vector<Matrix>> gens_;
};

/// Adjacent merges s_k, applied left to right, whose composite is the monotone
/// surjection `map` on positions [n] -> [m]; the normal form merges the
/// rightmost collapsible pair first.
std::vector<int> merge_normal_form(const std::vector<int>& map);
/// Every sequence of adjacent merges with composite `map`.
std::vector<std::vector<int>> all_merge_sequences(const std::vector<int>& map);
/// gen(s_{k_r}) ... gen(s_{k_1}) starting from V_n.
Matrix apply_merges(const GlobalSheaf& f, int n, const std::vector<int>& merges);

/// F(f) for a monotone surjection between linear orders with at most N+1
/// elements, via the normal form.
Matrix apply_surjection(const GlobalSheaf& f, const OrderMorphism& map);

/// V_n = A^{⊗(n+1)}, gen(n, k) multiplies tensor factors k and k+1.
GlobalSheaf algebra_global_sheaf(const NonunitalAlgebra& a, int truncation);
/// Random dims <= max_dim; gen(n, k) = M_n independent of k, entries in {-2..2}.
GlobalSheaf random_global_sheaf(int truncation, int max_dim, std::mt19937_64& rng);

struct ConstructibleSheaf {
  LinOrder base;
  ConvLattice conv;
  std::vector<int> values;
  /// restriction[a][b] is set when conv.relations[a] refines conv.relations[b].
  std::vector<std::vector<std::optional<Matrix>>> restriction;

  int index_of(const ConvexEquiv& e) const;
  const Matrix& restrict(int from, int to) const;
};

/// Identity and composition laws over all of Conv(I); returns the first failure.
std::optional<std::string> check_functoriality(const ConstructibleSheaf& s);

/// value(E) = F(I/E); restriction along E ⊆ E' is F of the quotient I/E -> I/E'.
ConstructibleSheaf global_to_constructible(const GlobalSheaf& f, const LinOrder& base);

/// For f: I -> J and E ⊆ E' in Conv(J) with preimages Ē ⊆ Ē' in Conv(I): the
/// constructible sheaves of F on I and J agree on these values and restrictions.
/// Returns one message per failure.
std::vector<std::string> pullback_square_check(const GlobalSheaf& f, const OrderMorphism& map);

/// value(stratum_of(alpha)).
int stalk(const ConstructibleSheaf& s, const RepPoint& alpha);

struct FamilyEvaluation {
  struct Stalk {
    std::string id;
    std::vector<int> stratum;
    int dim;
  };
  struct Edge {
    std::string from, to;  // the map runs from the finer stratum to the coarser one
    std::optional<Matrix> map;
  };
  std::vector<Stalk> stalks;
  std::vector<Edge> edges;
  std::vector<std::string> incomparable;
};

/// Stalks of F along the samples and cospecialization maps along the edges.
FamilyEvaluation evaluate_on_family(const GlobalSheaf& f, const SampledFamily& fam);

}  // namespace bl
