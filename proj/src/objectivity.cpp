#include "qobjex/objectivity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

#include "qobjex/error.hpp"
#include "qobjex/partitions.hpp"

namespace qobjex {

void Tolerances::validate() const {
  auto in_unit = [](double x) { return x > 0.0 && x < 1.0; };
  if (!in_unit(epsilon) || !in_unit(delta) || !in_unit(numeric_tol)) {
    throw InputError("tolerances epsilon, delta and numeric_tol must lie in (0, 1)");
  }
}

double binary_entropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double entropy_two_state_mixture(double p, double d) {
  if (!(p > 0.0 && p < 1.0)) throw InputError("mixture weight p must lie in (0, 1)");
  if (!(d >= 0.0 && d <= 1.0)) throw InputError("squared overlap d must lie in [0, 1]");
  const double disc = std::max(0.0, 1.0 - 4.0 * p * (1.0 - p) * (1.0 - d));
  return binary_entropy(0.5 * (1.0 + std::sqrt(disc)));
}

GhzAverage ghz_avg_mi(const FactorialTable& table, const EncodingSpec& spec, long m) {
  spec.validate();
  if (spec.family != Family::ghz) throw InputError("ghz_avg_mi applied to a W encoding");
  const long N = spec.N;
  const long k = spec.k;
  if (m < 0 || m > N * k) throw InputError("kept count m must lie in [0, N*k]");
  const BigCount total = count_total(table, N, k, m);
  const BigCount na = count_condition_A(table, N, k, m);
  const BigCount nb = count_condition_B(table, N, k, m);
  Ratio pa(na, total);
  Ratio pb(nb, total);
  const double qmi = to_double(na + nb, total);
  const BigCount acc_num = (na + nb) * total - na * nb;
  const double acc = to_double(acc_num, total * total);
  return {std::move(pa), std::move(pb), qmi, acc};
}

GhzAverage ghz_avg_mi(const EncodingSpec& spec, long m) {
  return ghz_avg_mi(FactorialTable(spec.env_qubits()), spec, m);
}

void MICurve::check_invariants() const {
  constexpr double slack = 1e-12;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& pt = points[i];
    if (pt.acc_over_S > pt.qmi_over_S + slack) throw Error("curve point has acc > qmi at m=" + std::to_string(pt.m));
    if (pt.acc_over_S < -slack || pt.acc_over_S > 1.0 + slack) {
      throw Error("curve point has acc outside [0, 1] at m=" + std::to_string(pt.m));
    }
    if (i > 0 && !(pt.f > points[i - 1].f)) throw Error("curve fractions are not strictly increasing");
  }
}

CurveEvaluator::CurveEvaluator(EncodingSpec spec, FractionSampling sampling)
    : spec_(spec), table_((spec.validate(), spec.env_qubits())) {
  if (sampling != FractionSampling::equiprobable) throw UnsupportedError("only equiprobable fraction sampling");
  if (spec_.family == Family::w) {
    if (spec_.k != 3) {
      throw UnsupportedError("W encodings are supported for k = 3 only (got k = " + std::to_string(spec_.k) + ")");
    }
    w_.emplace(spec_.p, spec_.N);
  }
}

double CurveEvaluator::fraction_qmi_over_S(const CountVector& cv) const {
  if (w_) return (*w_)(cv).qmi_over_S;
  return classify_ghz_fraction(cv).qmi_over_S;
}

double CurveEvaluator::fraction_acc_over_S(const CountVector& cv) const {
  if (w_) return (*w_)(cv).acc_upper_over_S;
  return classify_ghz_fraction(cv).acc_over_S;
}

CurvePoint CurveEvaluator::at(long m) const {
  const long env = spec_.env_qubits();
  if (m < 0 || m > env) throw InputError("kept count m must lie in [0, N*k]");
  const double f = static_cast<double>(m) / static_cast<double>(env);
  if (!w_) {
    const GhzAverage avg = ghz_avg_mi(table_, spec_, m);
    return {m, f, avg.qmi_over_S, avg.acc_over_S};
  }
  const BigCount total = count_total(table_, spec_.N, spec_.k, m);
  double qmi = 0.0;
  double acc = 0.0;
  for_each_count_vector(spec_.N, spec_.k, m, [&](const CountVector& cv) {
    const double weight = to_double(partition_weight(table_, cv), total);
    const WFractionMI mi = (*w_)(cv);
    qmi += weight * mi.qmi_over_S;
    acc += weight * mi.acc_upper_over_S;
  });
  return {m, f, qmi, std::min(acc, qmi)};
}

MICurve mi_curve(const EncodingSpec& spec, std::span<const long> m_values, FractionSampling sampling) {
  const CurveEvaluator eval(spec, sampling);
  for (std::size_t i = 1; i < m_values.size(); ++i) {
    if (m_values[i] <= m_values[i - 1]) throw InputError("m values must be strictly increasing");
  }
  MICurve curve{spec, eval.acc_is_bound(), {}};
  curve.points.reserve(m_values.size());
  for (long m : m_values) curve.points.push_back(eval.at(m));
  curve.check_invariants();
  return curve;
}

long redundancy_by_construction(const EncodingSpec& spec) {
  spec.validate();
  return spec.family == Family::ghz ? std::max<long>(spec.N, spec.k) : spec.N;
}

ObjectivityReport consensus(const EncodingSpec& spec, double threshold, const Tolerances& tol) {
  tol.validate();
  if (!(threshold > 0.0)) throw InputError("threshold must be positive");
  const CurveEvaluator eval(spec);
  const long env = spec.env_qubits();
  std::map<long, CurvePoint> probes;
  auto acc_at = [&](long m) {
    auto it = probes.find(m);
    if (it == probes.end()) it = probes.emplace(m, eval.at(m)).first;
    return it->second.acc_over_S;
  };

  ObjectivityReport report;
  report.spec = spec;
  report.redundancy = redundancy_by_construction(spec);
  report.threshold = threshold;

  if (acc_at(env) >= threshold) {
    long lo = 1;
    long hi = env;
    while (lo < hi) {
      const long mid = lo + (hi - lo) / 2;
      if (acc_at(mid) >= threshold) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    report.crossing_found = true;
    report.m0 = lo;
    report.f0 = static_cast<double>(lo) / static_cast<double>(env);
    report.consensus = env / lo;
  }

  report.curve = MICurve{spec, eval.acc_is_bound(), {}};
  for (const auto& [m, pt] : probes) report.curve.points.push_back(pt);
  const auto& pts = report.curve.points;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].acc_over_S + tol.numeric_tol < pts[i - 1].acc_over_S) {
      throw Error("accessible curve is not monotone in m for " + describe(spec) + "; bisection invalid");
    }
  }
  report.curve.check_invariants();
  return report;
}

PartitionProbability p_rho_n(const EncodingSpec& spec, long n, const Tolerances& tol, PartitionCounting counting) {
  spec.validate();
  tol.validate();
  const long env = spec.env_qubits();
  if (n < 1 || env % n != 0) {
    throw InputError("P(rho, n) needs n to divide the environment size (f = 1/n); got n = " + std::to_string(n) +
                     ", N*k = " + std::to_string(env));
  }
  if (env > kPartitionEnvCap) {
    throw SizeCapError("P(rho, n) enumerates partitions only up to " + std::to_string(kPartitionEnvCap) +
                       " environment qubits");
  }
  const CurveEvaluator eval(spec);
  const double needed = 1.0 - tol.epsilon - tol.numeric_tol;
  std::unordered_map<unsigned, bool> memo;
  auto block_ok = [&](const std::vector<int>& block) {
    unsigned key = 0;
    for (int q : block) key |= 1u << q;
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    const bool ok = eval.fraction_acc_over_S(count_vector(FractionMask(spec, block))) >= needed;
    memo.emplace(key, ok);
    return ok;
  };
  long qualifying = 0;
  auto visit = [&](const BlockLabels& labels) {
    for (const auto& block : blocks_of(labels, static_cast<int>(n))) {
      if (!block_ok(block)) return;
    }
    ++qualifying;
  };
  const long total = counting == PartitionCounting::unordered
                         ? for_each_equal_partition(static_cast<int>(env), static_cast<int>(n), visit)
                         : for_each_ordered_equal_partition(static_cast<int>(env), static_cast<int>(n), visit);
  return {BigCount(qualifying), BigCount(total), static_cast<double>(qualifying) / static_cast<double>(total)};
}

long consensus_from_partitions(const EncodingSpec& spec, const Tolerances& tol) {
  const long env = spec.env_qubits();
  for (long n = env; n >= 1; --n) {
    if (env % n != 0) continue;
    if (p_rho_n(spec, n, tol).value >= 1.0 - tol.delta) return n;
  }
  return 0;
}

bool qd_check(const MICurve& curve, double f, const Tolerances& tol) {
  tol.validate();
  for (const auto& pt : curve.points) {
    if (std::abs(pt.f - f) <= 1e-12) return pt.acc_over_S >= 1.0 - tol.epsilon - tol.numeric_tol;
  }
  throw InputError("fraction f = " + std::to_string(f) + " is not on the curve grid");
}

}  // namespace qobjex
