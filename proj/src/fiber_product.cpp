#include "brokenlines/fiber_product.hpp"

#include <algorithm>
#include <stdexcept>

#include "brokenlines/family.hpp"

namespace bl {

namespace {

std::vector<LinePoint> all_marks(const Configuration& c) {
  std::vector<LinePoint> marks = c.i_marks;
  marks.insert(marks.end(), c.j_marks.begin(), c.j_marks.end());
  return marks;
}

}  // namespace

std::optional<std::string> validate_configuration(const Configuration& c, const LinOrder& left,
                                                  const LinOrder& right) {
  if (auto e = validate_section(MarkedLine{c.line, c.i_marks}, left.preorder())) return "I-marks: " + *e;
  if (auto e = validate_section(MarkedLine{c.line, c.j_marks}, right.preorder())) return "J-marks: " + *e;
  return std::nullopt;
}

Amalgam k_of(const Configuration& c, const LinOrder& left, const LinOrder& right) {
  if (auto e = validate_configuration(c, left, right)) throw std::invalid_argument(*e);
  // Marks are interior, so d(a, b) != -inf iff a's component is at most b's.
  std::vector<int> rank;
  for (const auto& x : all_marks(c)) rank.push_back(x.a - 1);
  return Amalgam{left, right, LinPreorder(std::move(rank))};
}

bool u_membership(const Configuration& c, const Amalgam& k) {
  if (auto e = k.check()) throw std::invalid_argument("not an amalgam: " + *e);
  if (static_cast<int>(c.i_marks.size()) != k.left_size() ||
      static_cast<int>(c.j_marks.size()) != k.right_size()) {
    throw std::invalid_argument("amalgam sizes differ from the configuration");
  }
  return amalgam_leq(k, k_of(c, k.left, k.right));
}

Configuration config_from_rep(const Amalgam& k, const RepPoint& alpha) {
  if (!(alpha.base() == k.preorder)) throw std::invalid_argument("RepPoint does not live on the amalgam");
  auto fiber = fiber_over(alpha);
  Configuration c{fiber.line, {}, {}};
  c.i_marks.assign(fiber.marks.begin(), fiber.marks.begin() + k.left_size());
  c.j_marks.assign(fiber.marks.begin() + k.left_size(), fiber.marks.end());
  return c;
}

std::pair<Amalgam, RepPoint> encode_configuration(const Configuration& c, const LinOrder& left,
                                                  const LinOrder& right) {
  Amalgam k = k_of(c, left, right);
  RepPoint alpha = extract_alpha(c.line, all_marks(c), k.preorder);
  return {std::move(k), std::move(alpha)};
}

std::vector<RepPoint> sample_amalgam_points(const Amalgam& k, int per_stratum, std::mt19937_64& rng) {
  const auto& p = k.preorder;
  const auto e = p.enumeration();
  const auto& grid = gap_grid();
  std::uniform_int_distribution<std::size_t> pick(0, grid.size() - 1);
  // Between-class slots of the chart along e.
  std::vector<int> free_slots;
  for (std::size_t m = 1; m < e.size(); ++m) {
    if (p.less(e[m - 1], e[m])) free_slots.push_back(static_cast<int>(m - 1));
  }
  std::vector<RepPoint> out;
  const unsigned strata = 1u << free_slots.size();
  for (unsigned mask = 0; mask < strata; ++mask) {
    for (int s = 0; s < per_stratum; ++s) {
      std::vector<ExtReal> coords;
      for (std::size_t m = 1; m < e.size(); ++m) coords.emplace_back(grid[pick(rng)]);
      for (std::size_t b = 0; b < free_slots.size(); ++b) {
        if ((mask >> b) & 1u) coords[free_slots[b]] = ExtReal::pos_inf();
      }
      out.push_back(rep_from_chart(p, e, coords));
    }
  }
  return out;
}

JoinReport verify_join_identity(int left_size, int right_size, int per_stratum, std::uint64_t seed) {
  JoinReport report;
  const auto left = LinOrder::standard(left_size);
  const auto right = LinOrder::standard(right_size);
  const auto poset = enumerate_amalgams(left, right);
  const int count = static_cast<int>(poset.amalgams.size());
  report.amalgams = count;
  std::vector<std::vector<char>> leq(count, std::vector<char>(count, 0));
  for (auto [a, b] : poset.order) leq[a][b] = 1;

  // Least upper bound on the whole poset.
  for (int a = 0; a < count; ++a) {
    for (int b = 0; b < count; ++b) {
      int j = poset.join[a][b];
      if (j < 0) {
        report.violations.push_back("join of " + std::to_string(a) + " and " + std::to_string(b) +
                                    " is not an amalgam");
        continue;
      }
      if (!leq[a][j] || !leq[b][j]) {
        report.violations.push_back("join of " + std::to_string(a) + " and " + std::to_string(b) +
                                    " is not an upper bound");
      }
      for (int u = 0; u < count; ++u) {
        if (leq[a][u] && leq[b][u] && !leq[j][u]) {
          report.violations.push_back("join of " + std::to_string(a) + " and " + std::to_string(b) +
                                      " is not below upper bound " + std::to_string(u));
        }
      }
    }
  }

  // Membership of every sampled configuration in every U_a, evaluated directly.
  std::mt19937_64 rng(seed);
  std::vector<char> seen_k(count, 0);
  for (int k = 0; k < count; ++k) {
    for (const auto& alpha : sample_amalgam_points(poset.amalgams[k], per_stratum, rng)) {
      ++report.configurations;
      auto c = config_from_rep(poset.amalgams[k], alpha);
      auto ks = k_of(c, left, right);
      if (auto e = ks.check()) {
        report.violations.push_back("K_s is not an amalgam: " + *e);
        continue;
      }
      const int s = poset.index_of(ks.preorder);
      if (s < 0) {
        report.violations.push_back("K_s missing from the enumeration");
        continue;
      }
      if (!u_membership(c, poset.amalgams[k])) {
        report.violations.push_back("configuration from Rep(K) lies outside U_K");
      }
      seen_k[s] = 1;
      std::vector<char> mem(count);
      bool covered = false;
      for (int a = 0; a < count; ++a) {
        mem[a] = u_membership(c, poset.amalgams[a]);
        covered = covered || mem[a];
        if (mem[a] != leq[a][s]) {
          report.violations.push_back("membership in U_" + std::to_string(a) + " is not decided by K_s = " +
                                      std::to_string(s));
        }
      }
      if (!covered) report.violations.push_back("configuration with K_s = " + std::to_string(s) + " is uncovered");
      for (int a = 0; a < count; ++a) {
        for (int b = a; b < count; ++b) {
          ++report.pairs_checked;
          int j = poset.join[a][b];
          if (j >= 0 && mem[j] != (mem[a] && mem[b])) {
            report.violations.push_back("U_{K v K'} != U_K ∩ U_K' at K=" + std::to_string(a) +
                                        ", K'=" + std::to_string(b) + ", K_s=" + std::to_string(s));
          }
        }
      }
    }
  }
  for (char seen : seen_k) report.distinct_k += seen;
  return report;
}

}  // namespace bl
