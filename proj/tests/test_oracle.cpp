#include <doctest.h>

#include <fstream>

#include "qobjex/error.hpp"
#include "qobjex/oracle.hpp"
#include "qobjex/serialize.hpp"

using namespace qobjex;

namespace {

Json load_fixture(const std::string& name) {
  std::ifstream in(std::string(QOBJEX_FIXTURES) + "/oracle/" + name);
  REQUIRE(in.good());
  return Json::parse(in);
}

}  // namespace

TEST_CASE("dense mask spot values") {
  const EncodingSpec fig{Family::ghz, 4, 3, 0.5};
  CHECK(std::abs(brute_force_mask_mi(fig, FractionMask(fig, {0, 1, 2, 3})) - 1.0) < 1e-10);
  const EncodingSpec small{Family::ghz, 2, 2, 0.5};
  CHECK(std::abs(brute_force_mask_mi(small, FractionMask(small, {0, 1, 2})) - 2.0) < 1e-10);
  CHECK(brute_force_mask_mi(small, FractionMask(small, {})) == 0.0);
}

TEST_CASE("dense averages") {
  const EncodingSpec small{Family::ghz, 2, 2, 0.5};
  CHECK(std::abs(brute_force_avg_mi(small, 2) - 1.0) < 1e-10);
  for (const EncodingSpec& s : {small, EncodingSpec{Family::w, 3, 2, 0.3}, EncodingSpec{Family::ghz, 3, 2, 0.2}}) {
    const BruteForceOracle o(s);
    CHECK(std::abs(o.avg_mi_bits(s.env_qubits()) - 2.0 * s.system_entropy()) < 1e-10);
  }
  const EncodingSpec w{Family::w, 3, 2, 0.5};
  const CurveEvaluator eval(w);
  const BruteForceOracle o(w);
  for (long m = 0; m <= 6; ++m) CHECK(std::abs(o.avg_mi_bits(m) - eval.at(m).qmi_over_S) < 1e-9);
}

TEST_CASE("oracle size cap") {
  CHECK_THROWS_AS(BruteForceOracle({Family::ghz, 2, 7, 0.5}), SizeCapError);
  CHECK_NOTHROW(BruteForceOracle({Family::ghz, 13, 1, 0.5}));
}

TEST_CASE("GHZ classifier equals dense QMI on every mask") {
  for (int k = 1; k <= 3; ++k) {
    for (long N = 1; N <= 3; ++N) {
      for (double p : {0.5, 1.0 / 3.0}) {
        const OracleReport r = run_oracle({Family::ghz, k, N, p});
        CHECK(r.max_mask_deviation < 1e-9);
        CHECK(r.max_average_deviation < 1e-9);
        CHECK(static_cast<long>(r.masks.size()) == (1L << (k * N)));
      }
    }
  }
}

TEST_CASE("W formula equals the exhaustive dense average") {
  for (long N : {2L, 3L}) {
    const OracleReport r = run_oracle({Family::w, 3, N, 0.5});
    CHECK(r.max_mask_deviation < 1e-9);
    CHECK(r.max_average_deviation < 1e-9);
  }
}

TEST_CASE("oracle rows are in lexicographic mask order") {
  const OracleReport r = run_oracle({Family::ghz, 2, 2, 0.5});
  REQUIRE(r.masks.size() == 16);
  CHECK(r.masks[0].mask.empty());
  CHECK(r.masks[1].mask == std::vector<int>{0});
  CHECK(r.masks[5].mask == std::vector<int>{0, 1});
  CHECK(r.masks[6].mask == std::vector<int>{0, 2});
  CHECK(r.masks[15].mask == std::vector<int>{0, 1, 2, 3});
  CHECK(r.masks[5].case_label == "a_or_b");
  CHECK(r.masks[15].case_label == "both");
}

TEST_CASE("oracle sampling is seeded") {
  const OracleReport a = run_oracle({Family::ghz, 2, 3, 0.5}, {5, 42});
  const OracleReport b = run_oracle({Family::ghz, 2, 3, 0.5}, {5, 42});
  REQUIRE(a.masks.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) CHECK(a.masks[i].mask == b.masks[i].mask);
  CHECK(a.averages.size() == 7);
}

TEST_CASE("dense P(rho, n)") {
  for (long N = 1; N <= 6; ++N) CHECK(brute_force_p_rho_n({Family::ghz, 1, N, 0.5}, N).value == 1.0);
  CHECK(brute_force_p_rho_n({Family::ghz, 2, 2, 0.5}, 2).value == 1.0);
  const PartitionProbability quarter = brute_force_p_rho_n({Family::ghz, 4, 2, 0.5}, 4);
  CHECK(quarter.value >= 0.0);
  CHECK(quarter.value < 1.0);
  CHECK_THROWS_AS(brute_force_p_rho_n({Family::ghz, 2, 3, 0.5}, 4), InputError);
  CHECK_THROWS_AS(brute_force_p_rho_n({Family::ghz, 13, 1, 0.5}, 1), SizeCapError);
}

TEST_CASE("dense and analytic P(rho, n) agree for GHZ") {
  for (int k = 1; k <= 4; ++k) {
    for (long N = 1; N * k <= 8; ++N) {
      const EncodingSpec s{Family::ghz, k, N, 0.5};
      for (long n = 1; n <= N * k; ++n) {
        if ((N * k) % n != 0) continue;
        const PartitionProbability a = p_rho_n(s, n);
        const PartitionProbability d = brute_force_p_rho_n(s, n);
        CHECK(a.qualifying == d.qualifying);
        CHECK(a.total == d.total);
      }
    }
  }
}

TEST_CASE("frozen oracle fixtures match the analytic path") {
  for (const char* name :
       {"ghz_k2_N2_p0.5.json", "ghz_k2_N3_p0.3333.json", "w_k3_N2_p0.5.json", "w_k3_N3_p0.5.json"}) {
    const Json j = load_fixture(name);
    const EncodingSpec spec = spec_from_json(j.at("spec"));
    const CurveEvaluator eval(spec);
    for (const Json& row : j.at("averages")) {
      const long m = row.at("m").get<long>();
      CHECK(std::abs(eval.at(m).qmi_over_S - row.at("oracle_qmi_over_S").get<double>()) < 1e-9);
    }
    for (const Json& row : j.at("masks")) {
      const FractionMask mask(spec, row.at("mask").get<std::vector<int>>());
      CHECK(std::abs(eval.fraction_qmi_over_S(count_vector(mask)) - row.at("qmi_over_S").get<double>()) < 1e-9);
    }
  }
}
