#ifndef QOBJEX_DENSESIM_HPP
#define QOBJEX_DENSESIM_HPP

// Dense state-vector / density-matrix core for small exact computations.
//
// Subsystems are indexed big-endian: subsystem 0 is the most significant
// digit of the composite basis index.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace qobjex {

using Complex = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;
using Dims = std::vector<int>;
using IndexSet = std::vector<int>;

/// Hard upper bound on the number of qubits of any dense construction.
inline constexpr int kDenseQubitCap = 22;

/// Effective cap: kDenseQubitCap, lowered (never raised) by QOBJEX_MAX_QUBITS.
int max_dense_qubits();

/// Throws SizeCapError naming the cap if `qubits` exceeds max_dense_qubits().
void check_dense_size(int qubits, std::string_view what);

/// Normalized amplitude vector over a list of subsystems.
class PureState {
 public:
  /// Validates dimensions and normalization (1e-12).
  PureState(Dims dims, ComplexVector amplitudes);

  static PureState basis(Dims dims, std::size_t index);

  const Dims& dims() const { return dims_; }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  int num_subsystems() const { return static_cast<int>(dims_.size()); }
  std::size_t dimension() const { return static_cast<std::size_t>(amplitudes_.size()); }

 private:
  struct Unchecked {};
  PureState(Unchecked, Dims dims, ComplexVector amplitudes);

  friend PureState tensor(const PureState&, const PureState&);
  friend PureState permute_subsystems(const PureState&, std::span<const int>);

  Dims dims_;
  ComplexVector amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite matrix over a list of subsystems.
class DensityMatrix {
 public:
  /// Validates shape, hermiticity (1e-12), trace (1e-12) and spectrum (>= -1e-10).
  DensityMatrix(Dims dims, ComplexMatrix matrix);

  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(Dims dims);

  const Dims& dims() const { return dims_; }
  const ComplexMatrix& matrix() const { return matrix_; }
  int num_subsystems() const { return static_cast<int>(dims_.size()); }
  std::size_t dimension() const { return static_cast<std::size_t>(matrix_.rows()); }

  /// Builds without the eigenvalue check; for results of trace-preserving maps.
  static DensityMatrix trusted(Dims dims, ComplexMatrix matrix);

 private:
  struct Unchecked {};
  DensityMatrix(Unchecked, Dims dims, ComplexMatrix matrix);

  Dims dims_;
  ComplexMatrix matrix_;
};

using AnyState = std::variant<PureState, DensityMatrix>;

std::size_t total_dimension(const Dims& dims);

PureState tensor(const PureState& a, const PureState& b);
DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b);
/// Throws InputError when the operands are of different kinds.
AnyState tensor(const AnyState& a, const AnyState& b);

/// Reorders subsystems: result subsystem i is input subsystem order[i].
PureState permute_subsystems(const PureState& psi, std::span<const int> order);
DensityMatrix permute_subsystems(const DensityMatrix& rho, std::span<const int> order);

/// Reduced state on `keep` (sorted, original order preserved). Empty keep
/// gives the 1x1 state with dims = [].
DensityMatrix partial_trace(const DensityMatrix& rho, const IndexSet& keep);
DensityMatrix partial_trace(const PureState& psi, const IndexSet& keep);

/// Partial trace of an arbitrary operator (need not be a state).
ComplexMatrix partial_trace_operator(const ComplexMatrix& op, const Dims& dims, const IndexSet& keep);

/// Entropy in bits of a probability spectrum; entries below 1e-12 count as 0.
double entropy_of_spectrum(const Eigen::VectorXd& eigenvalues);

double von_neumann_entropy(const DensityMatrix& rho);

/// Von Neumann entropy of the reduced state of a pure state on `part`,
/// evaluated on whichever side of the cut is smaller.
double entanglement_entropy(const PureState& psi, const IndexSet& part);

/// S(A) + S(B) - S(AB) in bits. Parts must be disjoint.
double quantum_mutual_information(const DensityMatrix& rho, const IndexSet& part_a, const IndexSet& part_b);
double quantum_mutual_information(const PureState& psi, const IndexSet& part_a, const IndexSet& part_b);

double purity(const DensityMatrix& rho);

/// 0.5 * ||a - b||_1 for Hermitian a, b.
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

/// Eigenvalues of a Hermitian matrix in ascending order.
Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& m);

namespace detail {

/// For each composite index, the local index within every part of a split
/// of the subsystems into `parts` (each part sorted; together a partition of
/// all subsystems). Part-local indices are big-endian in the part's order.
struct SubsystemSplit {
  std::vector<std::size_t> part_dims;
  std::vector<std::vector<std::size_t>> local;  // local[part][composite]
};
SubsystemSplit split_subsystems(const Dims& dims, const std::vector<IndexSet>& parts);

/// Validates and sorts a subsystem index set; throws InputError.
IndexSet normalize_index_set(const IndexSet& set, int num_subsystems, std::string_view what);

IndexSet complement(const IndexSet& set, int num_subsystems);

/// Amplitudes reshaped to a (part x rest) matrix.
ComplexMatrix bipartite_matrix(const PureState& psi, const IndexSet& part);

}  // namespace detail

}  // namespace qobjex

#endif  // QOBJEX_DENSESIM_HPP
