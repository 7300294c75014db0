#pragma once

// Points of the fiber product of broken^I and broken^J over the moduli of
// broken lines: one broken line carrying an I-section and a J-section.

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "brokenlines/broken_line.hpp"
#include "brokenlines/order.hpp"
#include "brokenlines/rep_space.hpp"

namespace bl {

struct Configuration {
  BrokenLine line;
  std::vector<LinePoint> i_marks;
  std::vector<LinePoint> j_marks;
};

/// Checks both mark families are sections of the line.
std::optional<std::string> validate_configuration(const Configuration& c, const LinOrder& left,
                                                  const LinOrder& right);

/// K_s on I ⊔ J: a <= b iff d(a, b) != -inf.
Amalgam k_of(const Configuration& c, const LinOrder& left, const LinOrder& right);

/// K <= K_s. Throws std::invalid_argument if K is not an amalgam of the
/// configuration's index sets.
bool u_membership(const Configuration& c, const Amalgam& k);

/// The fiber over a point of Rep(K, BR+), with marks split into I and J.
Configuration config_from_rep(const Amalgam& k, const RepPoint& alpha);

/// (K_s, alpha) with alpha(a, b) = d(mark_a, mark_b) on K_s.
std::pair<Amalgam, RepPoint> encode_configuration(const Configuration& c, const LinOrder& left,
                                                  const LinOrder& right);

/// Points of Rep(K, BR+): forced-finite coordinates from the gap grid, and for
/// each subset of the between-class coordinates set to +inf, `per_stratum`
/// draws of the remaining ones.
std::vector<RepPoint> sample_amalgam_points(const Amalgam& k, int per_stratum, std::mt19937_64& rng);

struct JoinReport {
  int amalgams = 0;
  long pairs_checked = 0;
  long configurations = 0;
  int distinct_k = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// U_{K ∨ K'} = U_K ∩ U_{K'} on sampled configurations, plus covering (every
/// configuration lies in some U_K), validity of every K_s, and least-upper-bound
/// property of the join on the whole poset.
JoinReport verify_join_identity(int left_size, int right_size, int per_stratum, std::uint64_t seed);

}  // namespace bl
