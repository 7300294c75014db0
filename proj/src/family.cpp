#include "brokenlines/family.hpp"

#include <algorithm>
#include <tuple>

namespace bl {

int SampledFamily::find(const std::string& id) const {
  for (std::size_t s = 0; s < samples.size(); ++s) {
    if (samples[s].id == id) return static_cast<int>(s);
  }
  return -1;
}

FamilyError::FamilyError(std::string sample_id, RepViolation violation)
    : std::invalid_argument("sample " + sample_id + ": " + violation.message),
      sample_id_(std::move(sample_id)),
      violation_(std::move(violation)) {}

BuiltFamily build_family(SampledFamily family) {
  BuiltFamily out{std::move(family), {}};
  for (const auto& s : out.family.samples) {
    if (!(s.alpha.base() == out.family.index)) {
      throw std::invalid_argument("sample " + s.id + " lives on a different index");
    }
    if (auto v = validate(s.alpha)) throw FamilyError(s.id, *v);
    out.fibers.push_back(fiber_over(s.alpha));
  }
  return out;
}

std::optional<std::string> validate_section(const MarkedLine& fiber, const LinPreorder& index) {
  const int n = index.size();
  if (static_cast<int>(fiber.marks.size()) != n) return "mark count differs from |I|";
  std::vector<char> hit(fiber.line.m, 0);
  for (int i = 0; i < n; ++i) {
    const auto& x = fiber.marks[i];
    if (x.a < 1 || x.a > fiber.line.m) return "mark " + std::to_string(i) + " is off the line";
    if (x.is_fixed()) return "mark " + std::to_string(i) + " is a fixed point";
    hit[x.a - 1] = 1;
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (index.leq(i, j) && translation_distance(fiber.line, fiber.marks[i], fiber.marks[j]).is_neg_inf()) {
        return "d(mark " + std::to_string(i) + ", mark " + std::to_string(j) + ") = -inf";
      }
    }
  }
  for (int a = 0; a < fiber.line.m; ++a) {
    if (!hit[a]) return "component " + std::to_string(a + 1) + " carries no mark";
  }
  return std::nullopt;
}

std::vector<RepPoint> extract_alpha(const BuiltFamily& built) {
  std::vector<RepPoint> out;
  for (const auto& f : built.fibers) out.push_back(extract_alpha(f.line, f.marks, built.family.index));
  return out;
}

BuiltFamily concat_families(const BuiltFamily& left, const BuiltFamily& right) {
  BuiltFamily out{SampledFamily{concatenate_preorders(left.family.index, right.family.index), {}, {}, {}},
                  {}};
  for (std::size_t s = 0; s < left.fibers.size(); ++s) {
    for (std::size_t t = 0; t < right.fibers.size(); ++t) {
      const auto& fs = left.fibers[s];
      const auto& ft = right.fibers[t];
      auto cat = concatenate(fs.line, ft.line);
      MarkedLine fiber{cat.line, {}};
      for (const auto& x : fs.marks) fiber.marks.push_back(cat.embed_left(x));
      for (const auto& y : ft.marks) fiber.marks.push_back(cat.embed_right(y));
      auto alpha = extract_alpha(fiber.line, fiber.marks, out.family.index);
      out.family.samples.push_back(
          Sample{left.family.samples[s].id + "|" + right.family.samples[t].id, std::move(alpha)});
      out.fibers.push_back(std::move(fiber));
    }
  }
  return out;
}

namespace {

// cls_a finer than cls_b as equivalence relations.
bool finer(const std::vector<int>& a, const std::vector<int>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (a[i] == a[j] && b[i] != b[j]) return false;
    }
  }
  return true;
}

}  // namespace

AxiomReport check_axioms_on_path(const BuiltFamily& built, const Rational& delta) {
  using K = AxiomViolation::Kind;
  AxiomReport report;
  const auto& fam = built.family;
  const auto& index = fam.index;
  for (std::size_t s = 0; s < built.fibers.size(); ++s) {
    ++report.fibers_checked;
    const auto& f = built.fibers[s];
    if (f.line.m < 1 || f.line.fixed_point_count() != f.line.m + 1) {
      report.violations.push_back({K::Section, fam.samples[s].id, fam.samples[s].id, "malformed fiber"});
    }
    if (auto err = validate_section(f, index)) {
      report.violations.push_back({K::Section, fam.samples[s].id, fam.samples[s].id, *err});
    }
  }
  auto is_limit = [&](const std::string& id) {
    return std::find(fam.limits.begin(), fam.limits.end(), id) != fam.limits.end();
  };
  for (const auto& [from, to] : fam.edges) {
    int a = fam.find(from), b = fam.find(to);
    if (a < 0 || b < 0) {
      report.violations.push_back({K::UnknownSample, from, to, "edge names an unknown sample"});
      continue;
    }
    ++report.edges_checked;
    const auto& alpha = fam.samples[a].alpha;
    const auto& beta = fam.samples[b].alpha;
    auto ea = finite_distance_classes(alpha);
    auto eb = finite_distance_classes(beta);
    bool la = is_limit(from), lb = is_limit(to);
    if (lb && !la) {
      if (!finer(eb, ea)) {
        report.violations.push_back({K::Semicontinuity, from, to, "stratum of the limit does not refine its neighbour's"});
      }
    } else if (la && !lb) {
      if (!finer(ea, eb)) {
        report.violations.push_back({K::Semicontinuity, from, to, "stratum of the limit does not refine its neighbour's"});
      }
    } else if (ea != eb) {
      report.violations.push_back({K::Semicontinuity, from, to, "stratum jumps along an edge with no declared limit"});
    }
    const int n = index.size();
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (!index.leq(i, j) || !alpha(i, j).is_finite() || !beta(i, j).is_finite()) continue;
        Rational diff = abs(alpha(i, j).value() - beta(i, j).value());
        if (diff >= delta) {
          report.violations.push_back({K::Continuity, from, to,
                                       "coordinate (" + std::to_string(i) + "," + std::to_string(j) +
                                           ") moves by " + format_rational(diff)});
        }
      }
    }
  }
  std::stable_sort(report.violations.begin(), report.violations.end(),
                   [](const AxiomViolation& x, const AxiomViolation& y) {
                     return std::tie(x.from, x.to) < std::tie(y.from, y.to);
                   });
  return report;
}

const char* to_string(AxiomViolation::Kind k) {
  switch (k) {
    case AxiomViolation::Kind::Section: return "section";
    case AxiomViolation::Kind::Semicontinuity: return "semicontinuity";
    case AxiomViolation::Kind::Continuity: return "continuity";
    case AxiomViolation::Kind::UnknownSample: return "unknown-sample";
  }
  return "?";
}

SampledFamily easybreak_family() {
  // -log t in units of log 2 keeps the coordinates rational.
  SampledFamily fam{LinPreorder::chain(2), {}, {}, {}};
  const std::vector<std::pair<std::string, ExtReal>> pts = {
      {"t=1", ExtReal(0)}, {"t=1/2", ExtReal(1)}, {"t=1/4", ExtReal(2)}, {"t=0", ExtReal::pos_inf()}};
  for (const auto& [id, gap] : pts) {
    std::vector<ExtReal> g{gap};
    fam.samples.push_back(Sample{id, rep_from_gaps(g)});
  }
  fam.edges = {{"t=1", "t=1/2"}, {"t=1/2", "t=1/4"}, {"t=1/4", "t=0"}};
  fam.limits = {"t=0"};
  return fam;
}

SampledFamily random_family(int n, int count, std::mt19937_64& rng) {
  SampledFamily fam{LinPreorder::chain(n), {}, {}, {}};
  std::uniform_int_distribution<unsigned> cut(0, (1u << (n - 1)) - 1);
  for (int s = 0; s < count; ++s) {
    auto e = ConvexEquiv::from_cuts(n, cut(rng));
    fam.samples.push_back(Sample{"s" + std::to_string(s), sample_stratum(e, rng)});
  }
  return fam;
}

}  // namespace bl
