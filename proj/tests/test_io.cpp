#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "generators.hpp"

#include "brokenlines/acceptance.hpp"
#include "brokenlines/config.hpp"
#include "brokenlines/json_io.hpp"

using namespace bl;
using io::Json;

namespace {

template <class T>
std::string text(const T& x) {
  return io::dump(io::to_json(x));
}

}  // namespace

TEST_CASE("extended reals in JSON") {
  CHECK(io::to_json(ExtReal(Rational(3, 2))) == Json{{"fin", "3/2"}});
  CHECK(io::to_json(ExtReal::pos_inf()) == Json("inf"));
  CHECK(io::to_json(ExtReal::neg_inf()) == Json("-inf"));
  CHECK(io::ext_from_json(Json(4)) == ExtReal(4));
  CHECK(io::ext_from_json(Json{{"fin", "-1/3"}}) == ExtReal(Rational(-1, 3)));
  CHECK(io::ext_from_json(Json("inf")).is_pos_inf());
  CHECK(io::ext_from_json(Json("+inf")).is_pos_inf());
  CHECK(io::ext_from_json(Json("-inf")).is_neg_inf());
  CHECK_THROWS(io::ext_from_json(Json::array()));
  CHECK_THROWS(io::ext_from_json(Json("x")));
}

TEST_CASE("preorders and points of Rep round-trip") {
  gen::Rng rng(70);
  for (int t = 0; t < 300; ++t) {
    const int n = gen::uniform(rng, 1, 6);
    auto p = gen::preorder(rng, n);
    CHECK(io::preorder_from_json(io::to_json(p)) == p);
    auto alpha = gen::rep_point(rng, p);
    auto back = io::rep_from_json(io::to_json(alpha));
    CHECK(back == alpha);
    CHECK(text(back) == text(alpha));
  }
  CHECK_THROWS(io::preorder_from_json(Json{{"n", 3}, {"rank", {0, 1}}}));
}

TEST_CASE("matrices and algebras round-trip") {
  gen::Rng rng(71);
  for (int t = 0; t < 50; ++t) {
    Matrix m(gen::uniform(rng, 0, 4), gen::uniform(rng, 0, 4));
    for (int r = 0; r < m.rows(); ++r) {
      for (int c = 0; c < m.cols(); ++c) {
        if (gen::coin(rng)) m.at(r, c) = gen::signed_value(rng);
      }
    }
    CHECK(io::matrix_from_json(io::to_json(m)) == m);
  }
  CHECK(io::matrix_from_json(Json{{"rows", 1}, {"cols", 2}, {"entries", {{1, "2/4"}}}}) ==
        Matrix::from_rows({{1, Rational(1, 2)}}));
  CHECK_THROWS(io::matrix_from_json(Json{{"rows", 2}, {"cols", 1}, {"entries", {{1}}}}));

  for (const auto& a : {zero_algebra(2), rational_algebra(), nilpotent3_algebra(), matrix2_algebra()}) {
    CHECK(io::algebra_from_json(io::to_json(a)) == a);
  }
  // e_0 e_0 = e_0 on a line.
  CHECK(io::algebra_from_json(Json{{"dim", 1}, {"c", {{{"1"}}}}}) == rational_algebra());
  CHECK_THROWS(io::algebra_from_json(Json{{"dim", 2}, {"c", {{{1}}}}}));
  CHECK_THROWS(io::algebra_from_json(Json{{"dim", -1}, {"c", Json::array()}}));
}

TEST_CASE("global sheaves round-trip") {
  gen::Rng rng(72);
  for (int t = 0; t < 10; ++t) {
    auto f = random_global_sheaf(gen::uniform(rng, 1, 3), 3, rng);
    auto back = io::global_sheaf_from_json(io::to_json(f));
    CHECK(back.dims() == f.dims());
    CHECK(text(back) == text(f));
  }
  auto f = algebra_global_sheaf(nilpotent3_algebra(), 3);
  auto j = io::to_json(f);
  j["N"] = 5;
  CHECK_THROWS(io::global_sheaf_from_json(j));
}

TEST_CASE("families round-trip") {
  auto easy = easybreak_family();
  auto back = io::family_from_json(io::to_json(easy));
  REQUIRE(back.samples.size() == easy.samples.size());
  for (std::size_t i = 0; i < easy.samples.size(); ++i) {
    CHECK(back.samples[i].id == easy.samples[i].id);
    CHECK(back.samples[i].alpha == easy.samples[i].alpha);
  }
  CHECK(back.edges == easy.edges);
  CHECK(back.limits == easy.limits);
  gen::Rng rng(73);
  auto fam = random_family(3, 6, rng);
  CHECK(text(io::family_from_json(io::to_json(fam))) == text(fam));
}

TEST_CASE("output is byte-identical for a fixed seed") {
  auto run = [](std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Json j = Json::array();
    j.push_back(io::to_json(random_family(3, 5, rng)));
    j.push_back(io::to_json(random_global_sheaf(3, 2, rng)));
    return io::dump(j);
  };
  CHECK(run(5) == run(5));
  CHECK(run(5) != run(6));
  CHECK(io::dump(Json{{"b", 1}, {"a", 2}}) == "{\n  \"a\": 2,\n  \"b\": 1\n}\n");
}

TEST_CASE("configuration") {
  RunConfig cfg;
  apply_setting(cfg, "truncation", "3");
  apply_setting(cfg, "seed", "99");
  apply_setting(cfg, "tol_reparam", "2e-6");
  CHECK(cfg.truncation == 3);
  CHECK(cfg.seed == 99u);
  CHECK(cfg.morse.tol_reparam == 2e-6);
  CHECK_THROWS_AS(apply_setting(cfg, "nonsense", "1"), std::invalid_argument);
  CHECK_THROWS_AS(apply_setting(cfg, "truncation", "three"), std::invalid_argument);

  namespace fs = std::filesystem;
  auto path = fs::temp_directory_path() / "brokenlines_test_config.txt";
  {
    std::ofstream out(path);
    out << "# comment\nmax_order = 5   # trailing\n\nout_dir = somewhere\n";
  }
  ::unsetenv("BROKENLINES_OUT");
  auto loaded = load_config(path.string());
  CHECK(loaded.max_order == 5);
  CHECK(loaded.out_dir == "somewhere");
  ::setenv("BROKENLINES_OUT", "elsewhere", 1);
  CHECK(load_config(path.string()).out_dir == "elsewhere");
  ::unsetenv("BROKENLINES_OUT");
  {
    std::ofstream out(path);
    out << "truncation = 0\n";
  }
  CHECK_THROWS_AS(load_config(path.string()), std::invalid_argument);
  {
    std::ofstream out(path);
    out << "truncation 3\n";
  }
  CHECK_THROWS_AS(load_config(path.string()), std::invalid_argument);
  fs::remove(path);
  CHECK_THROWS_AS(load_config(path.string()), std::invalid_argument);
  CHECK(load_config("").truncation == RunConfig{}.truncation);
}

TEST_CASE("acceptance report lines") {
  acceptance::CriterionResult r{3, "fiber-product covering", true, 1.234, 30, "ok"};
  CHECK(r.pass());
  CHECK(acceptance::format_line(r).rfind("[PASS] 3 fiber-product covering", 0) == 0);
  r.seconds = 31;
  CHECK_FALSE(r.pass());
  CHECK(acceptance::format_line(r).rfind("[FAIL]", 0) == 0);
  auto j = acceptance::to_json(r);
  CHECK_FALSE(j.contains("seconds"));
  CHECK(acceptance::criterion_ids() == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9});
  CHECK_THROWS_AS(acceptance::run_criterion(10, RunConfig{}), std::invalid_argument);
}
