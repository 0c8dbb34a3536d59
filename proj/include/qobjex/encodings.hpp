#ifndef QOBJEX_ENCODINGS_HPP
#define QOBJEX_ENCODINGS_HPP

// GHZ- and W-encoded system-environment states and the classification of
// environment fractions by how many qubits of each group they keep.
//
// Layout: qubit 0 is the system; environment qubit (group g, slot s) is
// global qubit 1 + g*k + s. Fraction masks use environment-local positions
// g*k + s in [0, N*k).

#include <string>
#include <string_view>
#include <vector>

#include "qobjex/count_vector.hpp"
#include "qobjex/densesim.hpp"

namespace qobjex {

enum class Family { ghz, w };

std::string_view to_string(Family family);
Family parse_family(std::string_view text);

struct EncodingSpec {
  Family family = Family::ghz;
  int k = 1;     // group size
  long N = 1;    // group count
  double p = 0.5;

  /// Throws InputError: k >= 1 (>= 2 for W), N >= 1, p in (0, 1).
  void validate() const;

  long env_qubits() const { return N * k; }
  long total_qubits() const { return 1 + N * k; }
  /// S(rho_S) = h(p) in bits.
  double system_entropy() const;

  friend bool operator==(const EncodingSpec&, const EncodingSpec&) = default;
};

std::string describe(const EncodingSpec& spec);

/// Global qubit index of environment qubit (group, slot).
int env_qubit_index(const EncodingSpec& spec, long group, int slot);

struct StatePair {
  PureState plus;
  PureState minus;
};

/// (|0...0> +- |1...1>)/sqrt(2) on k qubits.
StatePair build_ghz_pair(int k);

/// W_+ = sum_j |e_j>/sqrt(k), W_- = sum_j w^j |e_j>/sqrt(k), w = exp(2 pi i/k),
/// where e_j has its excitation at bit j counted from the least significant
/// qubit (so k = 3 gives |001> + w|010> + w^2|100>).
StatePair build_w_pair(int k);

StatePair build_pair(Family family, int k);

/// sqrt(p)|0> (x) chi_+^N + sqrt(1-p)|1> (x) chi_-^N.
PureState build_encoded_state(const EncodingSpec& spec);

/// Subset of environment qubits kept by an observer.
class FractionMask {
 public:
  /// positions: environment-local indices, any order, no repeats.
  FractionMask(EncodingSpec spec, std::vector<int> positions);

  static FractionMask full(const EncodingSpec& spec);

  const EncodingSpec& spec() const { return spec_; }
  /// Sorted environment-local positions.
  const std::vector<int>& positions() const { return positions_; }
  long size() const { return static_cast<long>(positions_.size()); }
  double fraction() const;
  /// Global qubit indices (1 + position).
  IndexSet global_qubits() const;

 private:
  EncodingSpec spec_;
  std::vector<int> positions_;
};

CountVector count_vector(const FractionMask& mask);

enum class GhzCase { none, a_or_b, both };

std::string_view to_string(GhzCase c);

struct GhzClassification {
  GhzCase kind;
  bool condition_a;  // some group fully kept
  bool condition_b;  // every group touched
  double qmi_over_S;
  double acc_over_S;
};

/// Case analysis for GHZ encodings on the count vector alone.
GhzClassification classify_ghz_fraction(const CountVector& cv);
/// Same, rejecting masks of W encodings.
GhzClassification classify_ghz_fraction(const FractionMask& mask);

}  // namespace qobjex

#endif  // QOBJEX_ENCODINGS_HPP
