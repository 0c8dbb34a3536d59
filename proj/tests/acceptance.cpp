// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qobjex/encodings.hpp"
#include "qobjex/exactcount.hpp"
#include "qobjex/objectivity.hpp"
#include "qobjex/oracle.hpp"

using namespace qobjex;

namespace {

// Tolerances pinned for the acceptance run.
constexpr double kOracleTol = 1e-9;
constexpr double kSpotTol = 1e-10;
constexpr double kPropertyTol = 1e-12;
constexpr double kThreshold = 0.99;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (!pass) detail << "; ";
      else detail.str("");
      pass = false;
      detail << what;
    }
  }
};

std::string spec_label(const EncodingSpec& s) { return describe(s); }

Outcome fig3_consensus() {
  Outcome o;
  const long want[] = {1, 2, 4};
  const long Ns[] = {40, 160, 1280};
  long got[3];
  for (int i = 0; i < 3; ++i) {
    got[i] = consensus({Family::ghz, 4, Ns[i], 0.5}, kThreshold).consensus;
    o.require(got[i] == want[i], "ghz k=4 N=" + std::to_string(Ns[i]) + " consensus " + std::to_string(got[i]) +
                                     ", expected " + std::to_string(want[i]));
  }
  o.require(got[0] < got[1] && got[1] < got[2], "consensus not increasing in N");
  if (o.pass) o.detail << "ghz k=4 N=40,160,1280 consensus " << got[0] << "," << got[1] << "," << got[2];
  return o;
}

Outcome fig4_consensus() {
  Outcome o;
  const long Ns[] = {8, 32, 128};
  const long want_w[] = {1, 3, 6};
  const long want_ghz[] = {1, 2, 3};
  std::ostringstream got;
  for (int i = 0; i < 3; ++i) {
    const long w = consensus({Family::w, 3, Ns[i], 0.5}, kThreshold).consensus;
    const long g = consensus({Family::ghz, 3, Ns[i], 0.5}, kThreshold).consensus;
    got << " N=" << Ns[i] << " w=" << w << " ghz=" << g;
    o.require(w == want_w[i], "w k=3 N=" + std::to_string(Ns[i]) + " consensus " + std::to_string(w) +
                                  ", expected " + std::to_string(want_w[i]));
    o.require(g == want_ghz[i], "ghz k=3 N=" + std::to_string(Ns[i]) + " consensus " + std::to_string(g) +
                                    ", expected " + std::to_string(want_ghz[i]));
  }
  if (o.pass) o.detail << "k=3" << got.str();
  else o.detail << " (got" << got.str() << ")";
  return o;
}

Outcome ghz_oracle() {
  Outcome o;
  double worst_mask = 0.0, worst_avg = 0.0;
  int specs = 0;
  for (double p : {0.5, 1.0 / 3.0})
    for (int k = 1; k <= 3; ++k)
      for (long N = 1; N <= 3; ++N) {
        const EncodingSpec spec{Family::ghz, k, N, p};
        const OracleReport r = run_oracle(spec);
        worst_mask = std::max(worst_mask, r.max_mask_deviation);
        worst_avg = std::max(worst_avg, r.max_average_deviation);
        o.require(r.max_mask_deviation < kOracleTol && r.max_average_deviation < kOracleTol,
                  spec_label(spec) + " deviates from dense QMI");
        ++specs;
      }
  char buf[160];
  std::snprintf(buf, sizeof buf, " (%d specs, max mask deviation %.2e, max average deviation %.2e)", specs,
                worst_mask, worst_avg);
  o.detail << (o.pass ? "GHZ classifier and averages match dense oracle" : "") << buf;
  return o;
}

Outcome w_oracle() {
  Outcome o;
  double worst = 0.0;
  for (long N : {2L, 3L}) {
    const EncodingSpec spec{Family::w, 3, N, 0.5};
    const BruteForceOracle oracle(spec);
    for (long m = 0; m <= spec.env_qubits(); ++m) {
      const double dense = oracle.avg_mi_bits(m) / oracle.system_entropy_bits();
      const double dev = std::abs(dense - w_avg_mi(spec, m).qmi_over_S);
      worst = std::max(worst, dev);
      o.require(dev < kOracleTol, spec_label(spec) + " m=" + std::to_string(m) + " deviates");
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, " (k=3 N=2,3 every m, max deviation %.2e)", worst);
  o.detail << (o.pass ? "W averages match exhaustive dense average" : "") << buf;
  return o;
}

Outcome counting_identities() {
  Outcome o;
  long weight_checks = 0, subset_checks = 0;
  for (int k = 1; k <= 4; ++k)
    for (long N = 1; N <= 32; ++N) {
      const long env = N * k;
      std::vector<long> ms{0, 1, 2, env / 4, env / 3, env / 2, (2 * env) / 3, env - 1, env};
      for (long m : ms) {
        if (m < 0 || m > env) continue;
        BigCount sum = 0;
        for_each_count_vector(N, k, m, [&](const CountVector& cv) { sum += partition_weight(cv); });
        o.require(sum == binomial(env, m), "weight sum != C(Nk,m) at N=" + std::to_string(N) +
                                               " k=" + std::to_string(k) + " m=" + std::to_string(m));
        ++weight_checks;
      }
    }
  for (int k = 1; k <= 4; ++k)
    for (long N = 1; N <= 4; ++N) {
      const int env = static_cast<int>(N * k);
      std::vector<long> na(env + 1, 0), nb(env + 1, 0);
      const unsigned group = (1u << k) - 1;
      for (unsigned mask = 0; mask < (1u << env); ++mask) {
        bool a = false, b = true;
        for (long g = 0; g < N; ++g) {
          const unsigned bits = (mask >> (g * k)) & group;
          a = a || bits == group;
          b = b && bits != 0;
        }
        const int m = std::popcount(mask);
        na[m] += a;
        nb[m] += b;
      }
      for (long m = 0; m <= env; ++m) {
        o.require(count_condition_A(N, k, m) == na[m] && count_condition_B(N, k, m) == nb[m],
                  "condition counts differ at N=" + std::to_string(N) + " k=" + std::to_string(k) +
                      " m=" + std::to_string(m));
        ++subset_checks;
      }
    }
  if (o.pass)
    o.detail << weight_checks << " weight sums equal C(Nk,m), " << subset_checks
             << " condition counts equal subset enumeration";
  return o;
}

Outcome spot_values() {
  Outcome o;
  const PureState psi = build_encoded_state({Family::ghz, 2, 2, 0.5});
  // System 0, environment 1..4; trace qubit 4.
  const double mi = quantum_mutual_information(psi, {0}, {1, 2, 3});
  o.require(std::abs(mi - 2.0) < kSpotTol, "one traced qubit: I = " + std::to_string(mi));
  const DensityMatrix traced = partial_trace(build_encoded_state({Family::ghz, 2, 3, 0.5}), {0, 3, 4, 5, 6});
  const double s = von_neumann_entropy(traced);
  o.require(std::abs(s - 1.0) < kSpotTol, "one traced group: S = " + std::to_string(s));
  char buf[128];
  std::snprintf(buf, sizeof buf, "I(S:E_f) = %.12f bits, S(traced-group state) = %.12f bits", mi, s);
  if (o.pass) o.detail << buf;
  return o;
}

Outcome property_suite() {
  Outcome o;
  std::vector<EncodingSpec> specs;
  for (int k = 1; k <= 4; ++k)
    for (long N : {1L, 2L, 3L, 4L, 5L, 8L, 16L, 32L, 40L}) specs.push_back({Family::ghz, k, N, 0.5});
  for (int k = 2; k <= 3; ++k)
    for (long N : {3L, 8L}) specs.push_back({Family::ghz, k, N, 1.0 / 3.0});
  for (long N : {1L, 2L, 3L, 8L, 16L, 32L}) specs.push_back({Family::w, 3, N, 0.5});
  for (long N : {2L, 8L}) specs.push_back({Family::w, 3, N, 0.3});

  long points = 0;
  for (const EncodingSpec& spec : specs) {
    const std::string label = spec_label(spec);
    const CurveEvaluator eval(spec);
    double prev = -1.0;
    for (long m = 0; m <= spec.env_qubits(); ++m) {
      const CurvePoint pt = eval.at(m);
      o.require(pt.acc_over_S <= pt.qmi_over_S + kPropertyTol, label + " acc > qmi at m=" + std::to_string(m));
      o.require(pt.acc_over_S <= 1.0 + kPropertyTol, label + " acc > S at m=" + std::to_string(m));
      o.require(pt.acc_over_S >= prev - kPropertyTol, label + " acc decreases at m=" + std::to_string(m));
      prev = pt.acc_over_S;
      ++points;
    }
    const ObjectivityReport r = consensus(spec, kThreshold);
    o.require(r.consensus <= r.redundancy, label + " consensus exceeds redundancy");
  }
  for (long N : {160L, 1280L}) {
    const ObjectivityReport r = consensus({Family::ghz, 4, N, 0.5}, kThreshold);
    o.require(r.consensus <= r.redundancy, "ghz k=4 N=" + std::to_string(N) + " consensus exceeds redundancy");
  }

  long partition_checks = 0;
  std::vector<EncodingSpec> small;
  for (int k = 1; k <= 4; ++k)
    for (long N = 1; N * k <= 8; ++N) small.push_back({Family::ghz, k, N, 0.5});
  small.push_back({Family::w, 3, 1, 0.5});
  small.push_back({Family::w, 3, 2, 0.5});
  for (const EncodingSpec& spec : small)
    for (long n = 1; n <= spec.env_qubits(); ++n) {
      if (spec.env_qubits() % n != 0) continue;
      const PartitionProbability u = p_rho_n(spec, n, {}, PartitionCounting::unordered);
      const PartitionProbability d = p_rho_n(spec, n, {}, PartitionCounting::ordered);
      o.require(u.qualifying * d.total == d.qualifying * u.total,
                spec_label(spec) + " P(rho," + std::to_string(n) + ") depends on block order");
      ++partition_checks;
    }
  if (o.pass)
    o.detail << specs.size() << " specs, " << points << " curve points; " << partition_checks
             << " ordered/unordered P(rho,n) pairs agree";
  return o;
}

Outcome hierarchy_break() {
  Outcome o;
  const EncodingSpec spec{Family::ghz, 2, 3, 0.5};
  const DensityMatrix traced = partial_trace(build_encoded_state(spec), {0, 3, 4, 5, 6});
  const SbsVerdict sbs = sbs_check(traced, 0, {{1, 2}, {3, 4}});
  o.require(sbs.pass, "traced-group state fails SBS: " + sbs.witness);
  const std::vector<long> all{0, 1, 2, 3, 4, 5, 6};
  const MICurve curve = mi_curve(spec, all);
  const double f = 1.0 / 3.0;
  const bool qd = qd_check(curve, f, {1.0 - kThreshold, 0.01, 1e-9});
  o.require(!qd, "qd_check at f=1/3 passes");
  if (o.pass)
    o.detail << "SBS holds for the traced-group state, QD fails at f=1/3 (acc " << curve.points[2].acc_over_S
             << " S)";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"consensus for ghz k=4", fig3_consensus},
      {"consensus for k=3 w and ghz", fig4_consensus},
      {"ghz oracle equivalence", ghz_oracle},
      {"w oracle equivalence", w_oracle},
      {"counting identities", counting_identities},
      {"spot values", spot_values},
      {"property suite", property_suite},
      {"sbs without qd", hierarchy_break},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail.str("");
      o.detail << "exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %zu (%s): %s [%.2fs]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.str().c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
