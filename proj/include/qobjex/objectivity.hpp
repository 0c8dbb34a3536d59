#ifndef QOBJEX_OBJECTIVITY_HPP
#define QOBJEX_OBJECTIVITY_HPP

// Objectivity metrics for GHZ/W-encoded states: averaged (accessible)
// mutual-information curves, consensus, P(rho, n), SBS and QD checks, and a
// small-scale redundancy search.
//
// Mutual informations are reported in units of the system entropy S(rho_S)
// unless a name says bits.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qobjex/densesim.hpp"
#include "qobjex/encodings.hpp"
#include "qobjex/exactcount.hpp"

namespace qobjex {

/// Slack for "I_acc ~ S" (epsilon), "P ~ 1" (delta) and matrix checks.
struct Tolerances {
  double epsilon = 0.01;
  double delta = 0.01;
  double numeric_tol = 1e-9;

  void validate() const;
};

inline constexpr double kDefaultThreshold = 0.99;

/// Largest environment for which equal-block partitions are enumerated.
inline constexpr int kPartitionEnvCap = 12;

/// How observers sample fractions of a given size. Only uniform sampling is
/// implemented.
enum class FractionSampling { equiprobable };

double binary_entropy(double p);

/// Entropy in bits of p|u><u| + (1-p)|v><v| with |<u|v>|^2 = d.
double entropy_two_state_mixture(double p, double d);

// --- GHZ encodings ---------------------------------------------------------

struct GhzAverage {
  Ratio p_a;  // probability that some group is fully kept
  Ratio p_b;  // probability that every group is touched
  double qmi_over_S;  // p_a + p_b
  double acc_over_S;  // p_a + p_b - p_a p_b
};

GhzAverage ghz_avg_mi(const EncodingSpec& spec, long m);
GhzAverage ghz_avg_mi(const FactorialTable& table, const EncodingSpec& spec, long m);

// --- W encodings (k = 3) ---------------------------------------------------

struct WFractionMI {
  double qmi_over_S;
  double acc_upper_over_S;  // min(qmi, 1): an upper bound on accessible MI
};

/// Count-vector formula for the QMI of a fraction of a k = 3 W encoding.
///
/// For each partially kept group the environment splits into a branch where
/// the excitation sits in the kept qubits and one where it was traced out.
/// Two-qubit remnants leave records with squared overlap pair_overlap(); a
/// fully traced-out pair leaves vacuum coherence vacuum_coherence(). Both,
/// and the branch weights, are read off the dense W pair at construction.
/// Single kept qubits carry no record and one traced qubit keeps full
/// coherence, so only b = n_2 and c = n_1 matter:
///   I/bits = S + (n_3 >= 1 ? S : H'(b)) - (n_0 >= 1 ? S : H~(c)).
class WStateMI {
 public:
  /// Tables H'(0..max_groups), H~(0..max_groups). Throws UnsupportedError if
  /// the dense W pair does not have the structure above.
  WStateMI(double p, long max_groups);

  WFractionMI operator()(const CountVector& cv) const;

  double p() const { return p_; }
  double pair_weight() const { return pair_weight_; }
  double pair_overlap() const { return pair_overlap_; }
  double single_vacuum_weight() const { return single_vacuum_weight_; }
  double vacuum_coherence() const { return vacuum_coherence_; }
  /// Expected mixture entropy of b two-qubit remnants, bits.
  double h_prime(long b) const;
  /// Expected coherent-branch entropy left by c single kept qubits, bits.
  double h_tilde(long c) const;

 private:
  double p_;
  double system_entropy_;
  double pair_weight_ = 0.0;
  double pair_overlap_ = 0.0;
  double single_vacuum_weight_ = 0.0;
  double vacuum_coherence_ = 0.0;
  std::vector<double> h_prime_;
  std::vector<double> h_tilde_;
};

WFractionMI w_mi_from_counts(const CountVector& cv, double p);
WFractionMI w_avg_mi(const EncodingSpec& spec, long m);

// --- curves and consensus --------------------------------------------------

struct CurvePoint {
  long m;
  double f;
  double qmi_over_S;
  double acc_over_S;
};

struct MICurve {
  EncodingSpec spec;
  bool acc_is_bound = false;  // true for W: acc column is min(qmi, 1)
  std::vector<CurvePoint> points;

  /// acc <= qmi, 0 <= acc <= 1 (1e-12 slack), f strictly increasing.
  void check_invariants() const;
};

/// Per-m averaged QMI and accessible MI for one spec.
class CurveEvaluator {
 public:
  explicit CurveEvaluator(EncodingSpec spec, FractionSampling sampling = FractionSampling::equiprobable);

  const EncodingSpec& spec() const { return spec_; }
  bool acc_is_bound() const { return spec_.family == Family::w; }
  CurvePoint at(long m) const;
  /// Classifier for a single fraction.
  double fraction_acc_over_S(const CountVector& cv) const;
  double fraction_qmi_over_S(const CountVector& cv) const;

 private:
  EncodingSpec spec_;
  FactorialTable table_;
  std::optional<WStateMI> w_;
};

/// m_values strictly increasing within [0, N*k].
MICurve mi_curve(const EncodingSpec& spec, std::span<const long> m_values,
                 FractionSampling sampling = FractionSampling::equiprobable);

struct ObjectivityReport {
  EncodingSpec spec;
  long redundancy = 0;
  long consensus = 0;
  bool crossing_found = false;
  double threshold = kDefaultThreshold;
  long m0 = 0;     // minimal m with acc >= threshold (0 if none)
  double f0 = 0.0;
  MICurve curve;   // points probed by the search, sorted by m
};

/// GHZ: max(N, k), since the N groups and the k columns (one qubit from
/// every group) both partition the environment into full records. W: N.
long redundancy_by_construction(const EncodingSpec& spec);

/// Bisection for the minimal m with acc(m) >= threshold; consensus =
/// floor(N*k / m0). Throws Error if the probed curve is not monotone.
ObjectivityReport consensus(const EncodingSpec& spec, double threshold = kDefaultThreshold,
                            const Tolerances& tol = {});

/// Exhaustive P(rho, n) over equal-block partitions.
struct PartitionProbability {
  BigCount qualifying;
  BigCount total;
  double value;
};

enum class PartitionCounting { unordered, ordered };

/// Fraction of equal-block n-partitions whose every block has
/// acc >= (1 - epsilon) S, using the count-vector classifiers.
PartitionProbability p_rho_n(const EncodingSpec& spec, long n, const Tolerances& tol = {},
                             PartitionCounting counting = PartitionCounting::unordered);

/// Largest n dividing N*k with P(rho, n) >= 1 - delta (1 always qualifies).
long consensus_from_partitions(const EncodingSpec& spec, const Tolerances& tol = {});

/// True iff acc(f) >= 1 - epsilon; f must be a curve point.
bool qd_check(const MICurve& curve, double f, const Tolerances& tol = {});

// --- SBS -------------------------------------------------------------------

enum class SbsClause { none, system_coherence, not_product, overlapping_records };

std::string_view to_string(SbsClause clause);

struct SbsVerdict {
  bool pass = false;
  SbsClause violated = SbsClause::none;
  std::string witness;
  double violation = 0.0;  // size of the offending quantity
};

/// Checks the broadcast form sum_i p_i |i><i| (x) (x)_j R_i^j against the
/// given partition of the non-system subsystems. The system basis is the
/// eigenbasis of rho_S; when rho_S is degenerate the computational basis is
/// tried first, then (for a qubit) X and Y. A failing verdict reports the
/// eigenbasis or computational-basis witness.
SbsVerdict sbs_check(const DensityMatrix& rho, int system_index, const std::vector<IndexSet>& partition,
                     const Tolerances& tol = {});

// --- accessibility certificates and redundancy -----------------------------

struct AccessCertificate {
  double system_entropy_bits = 0.0;
  double qmi_bits = 0.0;
  /// H(q) for a system measurement whose conditional fraction states are
  /// mutually orthogonal (capped at S), 0 if no tried basis works.
  double certified_bits = 0.0;
  bool qualifies = false;   // qmi and certified both >= (1 - epsilon) S
  bool discordant = false;  // qmi qualifies but no certificate
};

/// Tries the computational, X, Y and rho_S eigenbases on the system.
AccessCertificate certify_fraction(const PureState& psi, int system_index, const IndexSet& fraction,
                                   const Tolerances& tol = {});

struct RedundancyResult {
  long redundancy = 0;
  std::vector<IndexSet> witness;  // a partition achieving it
  long discordant_fractions = 0;  // subsets flagged as discordant
};

/// Largest n such that some partition of the environment into n fractions
/// has every fraction certified. At most kPartitionEnvCap environment qubits.
RedundancyResult search_redundancy(const PureState& psi, int system_index, const Tolerances& tol = {});

}  // namespace qobjex

#endif  // QOBJEX_OBJECTIVITY_HPP
