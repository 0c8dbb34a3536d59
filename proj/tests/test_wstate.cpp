#include <doctest.h>

#include "qobjex/error.hpp"
#include "qobjex/objectivity.hpp"
#include "qobjex/oracle.hpp"

using namespace qobjex;

namespace {

// Exhaustive dense averages (bits, S = 1) from an independent numpy
// simulation of the k = 3 W encoding at p = 1/2, m = 1..Nk.
const std::vector<double> kDenseN2{0.0, 0.34548426588667547, 1.0, 1.654515734113324, 2.0, 2.0};
const std::vector<double> kDenseN3{0.0, 0.1352130207431875, 0.4163754813376945, 0.7970787909807521, 1.2029212090192476,
                                   1.583624518662305, 1.8647869792568115, 2.0, 2.0};

}  // namespace

TEST_CASE("W remnant data read off the dense pair") {
  const WStateMI w(0.5, 4);
  CHECK(w.pair_weight() == doctest::Approx(2.0 / 3.0));
  CHECK(w.pair_overlap() == doctest::Approx(0.25));
  CHECK(w.single_vacuum_weight() == doctest::Approx(2.0 / 3.0));
  CHECK(w.h_prime(0) < 1e-15);
  CHECK(w.h_tilde(0) < 1e-15);
  CHECK_THROWS_AS(w.h_prime(5), InputError);
}

TEST_CASE("W count-vector cases") {
  const double p = 0.5;
  const WFractionMI both = w_mi_from_counts(CountVector({1, 0, 0, 1}), p);
  CHECK(both.qmi_over_S == doctest::Approx(1.0));
  const WFractionMI nothing = w_mi_from_counts(CountVector({1, 1, 0, 0}), p);
  CHECK(nothing.qmi_over_S < 1e-12);
  const WFractionMI full = w_mi_from_counts(CountVector({0, 0, 0, 3}), p);
  CHECK(full.qmi_over_S == doctest::Approx(2.0));
  CHECK(full.acc_upper_over_S == doctest::Approx(1.0));
  // One group traced, two groups missing one qubit each: numpy reference.
  const WFractionMI two_pairs = w_mi_from_counts(CountVector({1, 0, 2, 0}), p);
  CHECK(std::abs(two_pairs.qmi_over_S - 0.784760945504043) < 1e-9);
}

TEST_CASE("single kept W qubits do not change the traced-group case") {
  const EncodingSpec spec{Family::w, 3, 3, 0.5};
  const BruteForceOracle oracle(spec);
  // group 0 traced; group 2 keeps two qubits; group 1 keeps zero or one.
  const double without = oracle.mask_mi_bits(FractionMask(spec, {6, 7}));
  const double with_single = oracle.mask_mi_bits(FractionMask(spec, {3, 6, 7}));
  CHECK(std::abs(without - with_single) < 1e-12);
  CHECK(std::abs(w_mi_from_counts(CountVector({2, 0, 1, 0}), 0.5).qmi_over_S - without) < 1e-9);
  CHECK(std::abs(w_mi_from_counts(CountVector({1, 1, 1, 0}), 0.5).qmi_over_S - with_single) < 1e-9);
}

TEST_CASE("W averages match the numpy reference") {
  for (long m = 1; m <= 6; ++m)
    CHECK(std::abs(w_avg_mi({Family::w, 3, 2, 0.5}, m).qmi_over_S - kDenseN2[static_cast<std::size_t>(m - 1)]) < 1e-9);
  for (long m = 1; m <= 9; ++m)
    CHECK(std::abs(w_avg_mi({Family::w, 3, 3, 0.5}, m).qmi_over_S - kDenseN3[static_cast<std::size_t>(m - 1)]) < 1e-9);
}

TEST_CASE("W averages at the endpoints") {
  for (long N : {1L, 4L, 16L}) {
    const EncodingSpec spec{Family::w, 3, N, 0.5};
    const WFractionMI full = w_avg_mi(spec, 3 * N);
    CHECK(full.qmi_over_S == doctest::Approx(2.0));
    CHECK(full.acc_upper_over_S == doctest::Approx(1.0));
    CHECK(std::abs(w_avg_mi(spec, 0).qmi_over_S) < 1e-15);
  }
}

TEST_CASE("W formulas need k = 3") {
  CHECK_THROWS_AS(w_mi_from_counts(CountVector({1, 0, 0, 0, 1}), 0.5), UnsupportedError);
  CHECK_THROWS_AS(w_avg_mi({Family::w, 4, 2, 0.5}, 2), UnsupportedError);
  CHECK_THROWS_AS(w_avg_mi({Family::w, 2, 2, 0.5}, 2), UnsupportedError);
}

TEST_CASE("W formula holds away from p = 1/2") {
  for (double p : {1.0 / 3.0, 0.2, 0.85}) {
    const EncodingSpec spec{Family::w, 3, 2, p};
    const OracleReport r = run_oracle(spec);
    CHECK(r.max_mask_deviation < 1e-9);
    CHECK(r.max_average_deviation < 1e-9);
  }
}
