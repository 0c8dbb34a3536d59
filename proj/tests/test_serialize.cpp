#include <doctest.h>

#include <regex>
#include <stack>

#include "qobjex/error.hpp"
#include "qobjex/mgrid.hpp"
#include "qobjex/serialize.hpp"
#include "qobjex/svg.hpp"
#include "support.hpp"

using namespace qobjex;

namespace {

// Tag nesting check: every element closes in order, one root.
bool well_formed(const std::string& xml) {
  std::stack<std::string> open;
  int roots = 0;
  std::size_t pos = 0;
  while ((pos = xml.find('<', pos)) != std::string::npos) {
    const std::size_t end = xml.find('>', pos);
    if (end == std::string::npos) return false;
    const std::string tag = xml.substr(pos + 1, end - pos - 1);
    pos = end + 1;
    if (tag.empty() || tag[0] == '?' || tag[0] == '!') continue;
    if (tag[0] == '/') {
      if (open.empty() || open.top() != tag.substr(1)) return false;
      open.pop();
      continue;
    }
    const std::string name = tag.substr(0, tag.find_first_of(" /"));
    if (open.empty()) ++roots;
    if (tag.back() != '/') open.push(name);
  }
  return open.empty() && roots == 1;
}

}  // namespace

TEST_CASE("state JSON round trips") {
  std::mt19937 rng(17);
  const PureState psi = testing::random_pure(rng, 3);
  const AnyState back = state_from_json(Json::parse(to_json(psi).dump()));
  REQUIRE(std::holds_alternative<PureState>(back));
  CHECK((std::get<PureState>(back).amplitudes() - psi.amplitudes()).norm() == 0.0);
  const DensityMatrix rho = testing::random_mixed(rng, 2, 2);
  const DensityMatrix rho_back = density_from_json(Json::parse(to_json(rho).dump()));
  CHECK((rho_back.matrix() - rho.matrix()).norm() == 0.0);
  CHECK(to_json(rho)["dims"] == Json::array({2, 2}));
}

TEST_CASE("state JSON is row-major") {
  const Json j = Json::parse(R"({"kind":"density","dims":[2],"re":[0.5,0.25,0.25,0.5],"im":[0,-0.1,0.1,0]})");
  const DensityMatrix rho = density_from_json(j);
  CHECK(rho.matrix()(0, 1) == Complex(0.25, -0.1));
  CHECK(rho.matrix()(1, 0) == Complex(0.25, 0.1));
}

TEST_CASE("malformed state JSON") {
  CHECK_THROWS_AS(state_from_json(Json::parse(R"({"kind":"pure","dims":[2],"re":[1],"im":[0]})")), InputError);
  CHECK_THROWS_AS(state_from_json(Json::parse(R"({"kind":"mixed","dims":[2],"re":[1,0],"im":[0,0]})")), InputError);
  CHECK_THROWS_AS(state_from_json(Json::parse(R"({"dims":[2],"re":[1,0],"im":[0,0]})")), InputError);
  CHECK_THROWS_AS(state_from_json(Json::parse(R"({"kind":"pure","dims":[2],"re":[1,0],"im":[0]})")), InputError);
  CHECK_THROWS_AS(state_from_json(Json::parse(R"({"kind":"pure","dims":"2","re":[1,0],"im":[0,0]})")), InputError);
  CHECK_THROWS_AS(read_state_file(std::string(QOBJEX_FIXTURES) + "/states/malformed.json"), InputError);
  CHECK_THROWS_AS(read_state_file("/nonexistent/state.json"), InputError);
}

TEST_CASE("state fixtures load") {
  const AnyState bell = read_state_file(std::string(QOBJEX_FIXTURES) + "/states/bell.json");
  CHECK(std::holds_alternative<PureState>(bell));
  const AnyState traced = read_state_file(std::string(QOBJEX_FIXTURES) + "/states/ghz_k2_N3_group_traced.json");
  REQUIRE(std::holds_alternative<DensityMatrix>(traced));
  CHECK(std::abs(von_neumann_entropy(std::get<DensityMatrix>(traced)) - 1.0) < 1e-10);
}

TEST_CASE("spec and mask JSON") {
  const EncodingSpec spec{Family::w, 3, 8, 0.25};
  const Json j = to_json(spec);
  CHECK(j.dump() == R"({"family":"w","k":3,"N":8,"p":0.25})");
  CHECK(spec_from_json(j) == spec);
  CHECK(spec_from_json(Json::parse(R"({"family":"ghz","k":2,"N":3})")).p == 0.5);
  CHECK_THROWS_AS(spec_from_json(Json::parse(R"({"family":"ghz","k":0,"N":3})")), InputError);
  CHECK(to_json(FractionMask(spec, {5, 2}))["positions"] == Json::array({2, 5}));
}

TEST_CASE("report JSON") {
  const ObjectivityReport r = consensus({Family::ghz, 4, 40, 0.5});
  const Json j = to_json(r);
  CHECK(j["redundancy"] == 40);
  CHECK(j["consensus"] == 1);
  CHECK(j["m0"] == 88);
  CHECK(j["threshold"] == 0.99);
  CHECK(j["curve"]["acc_is_bound"] == false);
  const Json none = to_json(consensus({Family::ghz, 2, 2, 0.5}, 1.5));
  CHECK(none["crossing_found"] == false);
  CHECK(none["f0"].is_null());
}

TEST_CASE("curve CSV") {
  const std::vector<long> m{0, 2, 4};
  const MICurve c = mi_curve({Family::ghz, 2, 2, 0.5}, m);
  CHECK(to_csv(c) == "m,f,qmi_over_S,acc_over_S\n0,0,0,0\n2,0.5,1,0.7777777777777777\n4,1,2,1\n");
  CHECK(to_csv(c) == to_csv(mi_curve({Family::ghz, 2, 2, 0.5}, m)));
}

TEST_CASE("real formatting reads back exactly") {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 200; ++i) {
    const double x = u(rng);
    CHECK(std::strtod(format_real(x).c_str(), nullptr) == x);
  }
  CHECK(format_real(0.5) == "0.5");
  CHECK(format_real(1.0 / 3.0) == "0.3333333333333333");
}

TEST_CASE("m grids") {
  CHECK(parse_m_grid("all", 3, 0) == std::vector<long>{0, 1, 2, 3});
  CHECK(parse_m_grid("2:8:3", 10, 0) == std::vector<long>{2, 5, 8});
  CHECK(parse_m_grid("1:3", 10, 0) == std::vector<long>{1, 2, 3});
  CHECK(parse_m_grid("9,1,4,4", 10, 0) == std::vector<long>{1, 4, 9});
  CHECK_THROWS_AS(parse_m_grid("11", 10, 0), InputError);
  CHECK_THROWS_AS(parse_m_grid("a:b", 10, 0), InputError);
  CHECK_THROWS_AS(parse_m_grid("3:1", 10, 0), InputError);
  CHECK_THROWS_AS(parse_m_grid("1:2:0", 10, 0), InputError);

  const std::vector<long> grid = auto_m_grid(5120, 1248);
  CHECK(grid.front() == 0);
  CHECK(grid.back() == 5120);
  CHECK(std::is_sorted(grid.begin(), grid.end()));
  CHECK(std::adjacent_find(grid.begin(), grid.end()) == grid.end());
  for (long m = 0; m <= 200; ++m) CHECK(std::binary_search(grid.begin(), grid.end(), m));
  for (long m = 1223; m <= 1273; ++m) CHECK(std::binary_search(grid.begin(), grid.end(), m));
  CHECK(grid.size() < 600);
  CHECK(auto_m_grid(12, 0) == parse_m_grid("all", 12, 0));
}

TEST_CASE("SVG is self-contained and well formed") {
  SvgChart chart;
  chart.title = "a < b & c";
  chart.threshold = 0.99;
  chart.series.push_back({"one", palette_color(0), false, {{0, 0}, {0.5, 0.7}, {1, 1}}});
  chart.series.push_back({"two \"quoted\"", palette_color(1), true, {{0, 0}, {1, 1}}});
  chart.markers.push_back({0.5, palette_color(0)});
  const std::string svg = render_svg(chart);
  CHECK(well_formed(svg));
  CHECK(svg.find("href") == std::string::npos);
  CHECK(svg.find("a &lt; b &amp; c") != std::string::npos);
  CHECK(svg == render_svg(chart));
}
