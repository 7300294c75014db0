#include "brokenlines/json_io.hpp"

#include <stdexcept>

namespace bl::io {

Json to_json(const ExtReal& x) {
  if (x.is_finite()) return Json{{"fin", format_rational(x.value())}};
  return x.is_pos_inf() ? "inf" : "-inf";
}

Json to_json(const LinPreorder& p) { return Json{{"n", p.size()}, {"rank", p.ranks()}}; }

Json to_json(const OrderMorphism& f) {
  return Json{{"source", to_json(f.source)}, {"target", to_json(f.target)}, {"map", f.map}};
}

Json to_json(const ConvexEquiv& e) { return Json{{"base", to_json(e.base().preorder())}, {"classes", e.class_ids()}}; }

Json to_json(const Amalgam& k) {
  return Json{{"left", k.left.preorder().ranks()}, {"right", k.right.preorder().ranks()}, {"rank", k.preorder.ranks()}};
}

Json to_json(const RepPoint& alpha) {
  auto en = alpha.base().enumeration();
  auto chart = chart_coordinates(alpha, en);
  Json gaps = Json::array();
  for (const auto& c : chart.coords) gaps.push_back(to_json(c));
  return Json{{"base", to_json(alpha.base())}, {"enumeration", en}, {"gaps", gaps}};
}

Json to_json(const BrokenLine& line) { return Json{{"m", line.m}}; }

Json to_json(const LinePoint& x) { return Json{{"a", x.a}, {"t", x.t.to_string()}}; }

Json to_json(const MarkedLine& fiber) {
  Json marks = Json::array();
  for (const auto& mk : fiber.marks) marks.push_back(to_json(mk));
  return Json{{"line", to_json(fiber.line)}, {"marks", marks}};
}

Json to_json(const Matrix& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(format_rational(m.at(r, c)));
    rows.push_back(row);
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

Json to_json(const NonunitalAlgebra& a) {
  Json c = Json::array();
  const int d = a.dim();
  for (int k = 0; k < d; ++k) {
    Json slice = Json::array();
    for (int i = 0; i < d; ++i) {
      Json row = Json::array();
      for (int j = 0; j < d; ++j) row.push_back(format_rational(a.c(k, i, j)));
      slice.push_back(row);
    }
    c.push_back(slice);
  }
  return Json{{"dim", d}, {"c", c}};
}

Json to_json(const GlobalSheaf& f) {
  Json gens = Json::object();
  for (int n = 1; n <= f.truncation(); ++n) {
    for (int k = 0; k < n; ++k) gens[std::to_string(n) + "," + std::to_string(k)] = to_json(f.gen(n, k));
  }
  return Json{{"N", f.truncation()}, {"V", f.dims()}, {"gen", gens}};
}

Json to_json(const SampledFamily& fam) {
  Json samples = Json::array();
  for (const auto& s : fam.samples) {
    Json rep = to_json(s.alpha);
    samples.push_back(Json{{"id", s.id}, {"gaps", rep["gaps"]}});
  }
  Json edges = Json::array();
  for (const auto& [a, b] : fam.edges) edges.push_back(Json::array({a, b}));
  return Json{{"index", to_json(fam.index)}, {"samples", samples}, {"edges", edges}, {"limits", fam.limits}};
}

Json to_json(const FamilyEvaluation& ev) {
  Json stalks = Json::array();
  for (const auto& s : ev.stalks) stalks.push_back(Json{{"id", s.id}, {"stratum", s.stratum}, {"dim", s.dim}});
  Json edges = Json::array();
  for (const auto& e : ev.edges) {
    Json j{{"from", e.from}, {"to", e.to}};
    j["map"] = e.map ? to_json(*e.map) : Json(nullptr);
    edges.push_back(j);
  }
  return Json{{"stalks", stalks}, {"edges", edges}, {"incomparable", ev.incomparable}};
}

Json to_json(const TwObject& x) { return Json{{"n", x.n}, {"classes", x.cls}}; }

ExtReal ext_from_json(const Json& j) {
  if (j.is_number_integer()) return ExtReal(j.get<long>());
  if (j.is_object()) return ExtReal(parse_rational(j.at("fin").get<std::string>()));
  if (!j.is_string()) throw std::invalid_argument("expected {\"fin\": \"p/q\"}, \"inf\" or \"-inf\"");
  const auto text = j.get<std::string>();
  if (text == "inf") return ExtReal::pos_inf();
  return ExtReal::parse(text);
}

LinPreorder preorder_from_json(const Json& j) {
  auto rank = j.at("rank").get<std::vector<int>>();
  if (j.contains("n") && j.at("n").get<std::size_t>() != rank.size()) {
    throw std::invalid_argument("preorder size does not match its rank vector");
  }
  return LinPreorder(std::move(rank));
}

RepPoint rep_from_json(const Json& j) {
  LinPreorder base = preorder_from_json(j.at("base"));
  std::vector<ExtReal> gaps;
  for (const auto& c : j.at("gaps")) gaps.push_back(ext_from_json(c));
  auto en = j.contains("enumeration") ? j.at("enumeration").get<std::vector<int>>() : base.enumeration();
  return rep_from_chart(base, en, gaps);
}

Matrix matrix_from_json(const Json& j) {
  Matrix m(j.at("rows").get<int>(), j.at("cols").get<int>());
  const auto& entries = j.at("entries");
  if (static_cast<int>(entries.size()) != m.rows()) throw std::invalid_argument("matrix row count mismatch");
  for (int r = 0; r < m.rows(); ++r) {
    if (static_cast<int>(entries[r].size()) != m.cols()) throw std::invalid_argument("matrix column count mismatch");
    for (int c = 0; c < m.cols(); ++c) {
      const auto& e = entries[r][c];
      m.at(r, c) = e.is_string() ? parse_rational(e.get<std::string>()) : Rational(e.get<long>());
    }
  }
  return m;
}

NonunitalAlgebra algebra_from_json(const Json& j) {
  const int d = j.at("dim").get<int>();
  if (d < 0) throw std::invalid_argument("negative dimension");
  const auto& cj = j.at("c");
  auto sized = [d](const Json& a) { return a.is_array() && static_cast<int>(a.size()) == d; };
  if (!sized(cj)) throw std::invalid_argument("structure constants must be a dim x dim x dim array");
  std::vector<Rational> c;
  c.reserve(static_cast<std::size_t>(d) * d * d);
  for (const auto& slice : cj) {
    if (!sized(slice)) throw std::invalid_argument("structure constants must be a dim x dim x dim array");
    for (const auto& row : slice) {
      if (!sized(row)) throw std::invalid_argument("structure constants must be a dim x dim x dim array");
      for (const auto& v : row) c.push_back(v.is_string() ? parse_rational(v.get<std::string>()) : Rational(v.get<long>()));
    }
  }
  return NonunitalAlgebra(d, std::move(c));
}

GlobalSheaf global_sheaf_from_json(const Json& j) {
  auto dims = j.at("V").get<std::vector<int>>();
  if (j.contains("N") && j.at("N").get<std::size_t>() + 1 != dims.size()) {
    throw std::invalid_argument("N does not match the number of dimensions");
  }
  std::vector<std::vector<Matrix>> gens;
  for (int n = 1; n < static_cast<int>(dims.size()); ++n) {
    std::vector<Matrix> row;
    for (int k = 0; k < n; ++k) row.push_back(matrix_from_json(j.at("gen").at(std::to_string(n) + "," + std::to_string(k))));
    gens.push_back(std::move(row));
  }
  return GlobalSheaf(std::move(dims), std::move(gens));
}

SampledFamily family_from_json(const Json& j) {
  SampledFamily fam{preorder_from_json(j.at("index")), {}, {}, {}};
  for (const auto& s : j.at("samples")) {
    Json rep{{"base", j.at("index")}, {"gaps", s.at("gaps")}};
    fam.samples.push_back({s.at("id").get<std::string>(), rep_from_json(rep)});
  }
  if (j.contains("edges")) {
    for (const auto& e : j.at("edges")) fam.edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
  }
  if (j.contains("limits")) fam.limits = j.at("limits").get<std::vector<std::string>>();
  return fam;
}

Json morse_report(const morse::Surface& s, const std::vector<morse::CriticalPoint>& crits,
                  const std::vector<morse::BrokenTrajectory>& trajectories, const morse::MorseConfig& cfg) {
  Json cj = Json::array();
  for (const auto& c : crits) {
    cj.push_back(Json{{"point", {c.p.x, c.p.y, c.p.z}},
                      {"param", {c.param[0], c.param[1]}},
                      {"height", c.h},
                      {"grad_norm", c.grad_norm},
                      {"index", c.index}});
  }
  Json tj = Json::array();
  for (const auto& t : trajectories) {
    auto report = morse::validate_trajectory(s, crits, t, cfg);
    auto [line, alpha] = morse::trajectory_to_line(t);
    tj.push_back(Json{{"criticals", t.criticals},
                      {"intermediate", t.intermediate_count()},
                      {"components", line.m},
                      {"rep_point", to_json(alpha)},
                      {"endpoint_error", report.endpoint_error},
                      {"reparam_residual", report.reparam_residual},
                      {"invariance_error", report.invariance_error},
                      {"valid", report.ok()}});
  }
  return Json{{"surface", s.name()},
              {"criticals", cj},
              {"euler_characteristic", morse::euler_characteristic(crits)},
              {"trajectories", tj}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace bl::io
