#pragma once

// Families of broken lines over a finite set of sample points, with an
// optional discrete path structure (edges and declared limit samples).

#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "brokenlines/broken_line.hpp"
#include "brokenlines/order.hpp"
#include "brokenlines/rep_space.hpp"

namespace bl {

struct Sample {
  std::string id;
  RepPoint alpha;
};

struct SampledFamily {
  LinPreorder index;
  std::vector<Sample> samples;
  /// Consecutive samples along a path.
  std::vector<std::pair<std::string, std::string>> edges;
  /// Samples that are limits of their neighbours (the closure side of an edge).
  std::vector<std::string> limits;

  int find(const std::string& id) const;
};

/// Per-sample fibers with their I-sections, aligned with SampledFamily::samples.
struct BuiltFamily {
  SampledFamily family;
  std::vector<MarkedLine> fibers;
};

class FamilyError : public std::invalid_argument {
 public:
  FamilyError(std::string sample_id, RepViolation violation);
  const std::string& sample_id() const { return sample_id_; }
  const RepViolation& violation() const { return violation_; }

 private:
  std::string sample_id_;
  RepViolation violation_;
};

/// Throws FamilyError for the first invalid sample, std::invalid_argument when
/// a sample lives on a different index.
BuiltFamily build_family(SampledFamily family);

/// Clauses of an I-section on a single fiber: marks are interior points,
/// d(mark_i, mark_j) > -inf for i <= j, and every component carries a mark.
std::optional<std::string> validate_section(const MarkedLine& fiber, const LinPreorder& index);

/// alpha_s(i, j) = d(sigma_i(s), sigma_j(s)), one RepPoint per fiber.
std::vector<RepPoint> extract_alpha(const BuiltFamily& built);

/// Fibers over pairs (s, t), ids "s|t", index I ⋆ J, concatenated sections.
BuiltFamily concat_families(const BuiltFamily& left, const BuiltFamily& right);

struct AxiomViolation {
  enum class Kind { Section, Semicontinuity, Continuity, UnknownSample };
  Kind kind;
  std::string from, to;
  std::string message;
};

struct AxiomReport {
  int edges_checked = 0;
  int fibers_checked = 0;
  std::vector<AxiomViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Sampled shadows of the recognition axioms along declared edges:
/// each fiber carries a valid section; along an edge into a declared limit the
/// limit's stratum refines the other end's, along other edges strata agree;
/// finite coordinates on both ends differ by less than delta.
AxiomReport check_axioms_on_path(const BuiltFamily& built, const Rational& delta = Rational(1, 100));

const char* to_string(AxiomViolation::Kind k);

/// Samples alpha_t on I = [1] at t = 1, 1/2, 1/4, 0 with gap -log_2 t, a path
/// with its last sample declared as the limit.
SampledFamily easybreak_family();

/// `count` samples on a linear order of size n, each drawn from a random stratum
/// on the gap grid, ids "s0", "s1", ...; no edges.
SampledFamily random_family(int n, int count, std::mt19937_64& rng);

}  // namespace bl
