#include "qobjex/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>

#include "qobjex/error.hpp"
#include "qobjex/partitions.hpp"

namespace qobjex {

namespace {

PureState build_capped(const EncodingSpec& spec) {
  spec.validate();
  if (spec.total_qubits() > kOracleQubitCap) {
    throw SizeCapError("oracle is limited to " + std::to_string(kOracleQubitCap) + " qubits; " + describe(spec) +
                       " has " + std::to_string(spec.total_qubits()));
  }
  return build_encoded_state(spec);
}

double pairwise_sum(const double* v, std::size_t n) {
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

}  // namespace

BruteForceOracle::BruteForceOracle(EncodingSpec spec)
    : spec_(spec), state_(build_capped(spec)), system_entropy_(entanglement_entropy(state_, IndexSet{0})) {}

double BruteForceOracle::mask_mi_bits(const FractionMask& mask) const {
  if (!(mask.spec() == spec_)) throw InputError("mask belongs to a different spec");
  if (mask.size() == 0) return 0.0;
  return quantum_mutual_information(state_, IndexSet{0}, mask.global_qubits());
}

double BruteForceOracle::avg_mi_bits(long m) const {
  const long env = spec_.env_qubits();
  if (m < 0 || m > env) throw InputError("kept count m must lie in [0, N*k]");
  std::vector<double> values;
  for_each_combination(static_cast<int>(env), static_cast<int>(m), [&](std::span<const int> pos) {
    values.push_back(mask_mi_bits(FractionMask(spec_, std::vector<int>(pos.begin(), pos.end()))));
  });
  return pairwise_sum(values.data(), values.size()) / static_cast<double>(values.size());
}

AccessCertificate BruteForceOracle::certify(const FractionMask& mask, const Tolerances& tol) const {
  if (!(mask.spec() == spec_)) throw InputError("mask belongs to a different spec");
  return certify_fraction(state_, 0, mask.global_qubits(), tol);
}

PartitionProbability BruteForceOracle::p_rho_n(long n, const Tolerances& tol) const {
  const long env = spec_.env_qubits();
  if (n < 1 || env % n != 0) {
    throw InputError("P(rho, n) needs n to divide N*k; got n = " + std::to_string(n) + ", N*k = " +
                     std::to_string(env));
  }
  if (env > kPartitionEnvCap) {
    throw SizeCapError("oracle P(rho, n) is limited to " + std::to_string(kPartitionEnvCap) + " environment qubits");
  }
  std::unordered_map<unsigned, bool> memo;
  long qualifying = 0;
  const long total = for_each_equal_partition(static_cast<int>(env), static_cast<int>(n), [&](const BlockLabels& l) {
    for (const auto& block : blocks_of(l, static_cast<int>(n))) {
      unsigned key = 0;
      for (int q : block) key |= 1u << q;
      auto it = memo.find(key);
      if (it == memo.end()) it = memo.emplace(key, certify(FractionMask(spec_, block), tol).qualifies).first;
      if (!it->second) return;
    }
    ++qualifying;
  });
  return {BigCount(qualifying), BigCount(total), static_cast<double>(qualifying) / static_cast<double>(total)};
}

double brute_force_mask_mi(const EncodingSpec& spec, const FractionMask& mask) {
  return BruteForceOracle(spec).mask_mi_bits(mask);
}

double brute_force_avg_mi(const EncodingSpec& spec, long m) { return BruteForceOracle(spec).avg_mi_bits(m); }

PartitionProbability brute_force_p_rho_n(const EncodingSpec& spec, long n, const Tolerances& tol) {
  return BruteForceOracle(spec).p_rho_n(n, tol);
}

OracleReport run_oracle(const EncodingSpec& spec, const OracleOptions& options) {
  if (options.samples < 0) throw InputError("sample count must be non-negative");
  const BruteForceOracle oracle(spec);
  const CurveEvaluator eval(spec);
  const double s = oracle.system_entropy_bits();
  const long env = spec.env_qubits();

  OracleReport report;
  report.spec = spec;
  for (long m = 0; m <= env; ++m) {
    std::vector<double> values;
    for_each_combination(static_cast<int>(env), static_cast<int>(m), [&](std::span<const int> pos) {
      const FractionMask mask(spec, std::vector<int>(pos.begin(), pos.end()));
      const CountVector cv = count_vector(mask);
      OracleMaskRow row;
      row.mask = mask.positions();
      row.qmi_bits = oracle.mask_mi_bits(mask);
      row.qmi_over_S = row.qmi_bits / s;
      row.analytic_over_S = eval.fraction_qmi_over_S(cv);
      row.case_label = spec.family == Family::ghz ? std::string(to_string(classify_ghz_fraction(cv).kind))
                                                   : cv.to_string();
      report.max_mask_deviation = std::max(report.max_mask_deviation, std::abs(row.qmi_over_S - row.analytic_over_S));
      values.push_back(row.qmi_over_S);
      report.masks.push_back(std::move(row));
    });
    const CurvePoint pt = eval.at(m);
    OracleAverageRow avg;
    avg.m = m;
    avg.oracle_qmi_over_S = pairwise_sum(values.data(), values.size()) / static_cast<double>(values.size());
    avg.analytic_qmi_over_S = pt.qmi_over_S;
    avg.analytic_acc_over_S = pt.acc_over_S;
    avg.deviation = std::abs(avg.oracle_qmi_over_S - avg.analytic_qmi_over_S);
    report.max_average_deviation = std::max(report.max_average_deviation, avg.deviation);
    report.averages.push_back(avg);
  }

  const auto total = static_cast<long>(report.masks.size());
  if (options.samples > 0 && options.samples < total) {
    std::mt19937_64 rng(options.seed);
    std::vector<long> idx(static_cast<std::size_t>(total));
    for (long i = 0; i < total; ++i) idx[static_cast<std::size_t>(i)] = i;
    std::vector<long> chosen;
    std::sample(idx.begin(), idx.end(), std::back_inserter(chosen), options.samples, rng);
    std::vector<OracleMaskRow> kept;
    for (long i : chosen) kept.push_back(std::move(report.masks[static_cast<std::size_t>(i)]));
    report.masks = std::move(kept);
  }
  return report;
}

}  // namespace qobjex
