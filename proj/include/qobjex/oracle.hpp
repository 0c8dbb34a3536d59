#ifndef QOBJEX_ORACLE_HPP
#define QOBJEX_ORACLE_HPP

// Brute-force ground truth by dense simulation of the full encoded state.
// Masks are visited in lexicographic order of their sorted environment
// positions, so a failing row can be reproduced from its index.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qobjex/encodings.hpp"
#include "qobjex/objectivity.hpp"

namespace qobjex {

inline constexpr int kOracleQubitCap = 14;

/// Builds the encoded state once and evaluates fractions of it.
class BruteForceOracle {
 public:
  /// Throws SizeCapError beyond kOracleQubitCap total qubits.
  explicit BruteForceOracle(EncodingSpec spec);

  const EncodingSpec& spec() const { return spec_; }
  const PureState& state() const { return state_; }
  double system_entropy_bits() const { return system_entropy_; }

  double mask_mi_bits(const FractionMask& mask) const;
  /// Exhaustive average over all C(Nk, m) masks, pairwise-summed.
  double avg_mi_bits(long m) const;
  AccessCertificate certify(const FractionMask& mask, const Tolerances& tol = {}) const;
  PartitionProbability p_rho_n(long n, const Tolerances& tol = {}) const;

 private:
  EncodingSpec spec_;
  PureState state_;
  double system_entropy_;
};

double brute_force_mask_mi(const EncodingSpec& spec, const FractionMask& mask);
double brute_force_avg_mi(const EncodingSpec& spec, long m);
PartitionProbability brute_force_p_rho_n(const EncodingSpec& spec, long n, const Tolerances& tol = {});

struct OracleMaskRow {
  std::vector<int> mask;  // environment positions
  std::string case_label;  // GHZ case or W count vector
  double qmi_bits = 0.0;
  double qmi_over_S = 0.0;
  double analytic_over_S = 0.0;
};

struct OracleAverageRow {
  long m = 0;
  double oracle_qmi_over_S = 0.0;
  double analytic_qmi_over_S = 0.0;
  double analytic_acc_over_S = 0.0;
  double deviation = 0.0;
};

struct OracleReport {
  EncodingSpec spec;
  std::vector<OracleMaskRow> masks;
  std::vector<OracleAverageRow> averages;
  double max_mask_deviation = 0.0;
  double max_average_deviation = 0.0;
};

struct OracleOptions {
  /// Number of per-mask rows to keep, drawn uniformly without replacement;
  /// 0 keeps every mask. Averages are always exhaustive.
  long samples = 0;
  std::uint64_t seed = 1;
};

OracleReport run_oracle(const EncodingSpec& spec, const OracleOptions& options = {});

}  // namespace qobjex

#endif  // QOBJEX_ORACLE_HPP
