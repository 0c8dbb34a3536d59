#include "qobjex/densesim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>

#include "qobjex/error.hpp"

namespace qobjex {

namespace {

constexpr double kNormTol = 1e-12;
constexpr double kHermitianTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kNegativeEigTol = 1e-10;
constexpr double kZeroEigenvalue = 1e-12;

void check_dims(const Dims& dims) {
  for (int d : dims) {
    if (d < 1) throw InputError("subsystem dimension must be >= 1, got " + std::to_string(d));
  }
}

int qubit_equivalent(const Dims& dims) {
  double bits = 0.0;
  for (int d : dims) bits += std::log2(static_cast<double>(d));
  return static_cast<int>(std::ceil(bits - 1e-9));
}

double max_hermitian_defect(const ComplexMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

std::vector<int> checked_permutation(std::span<const int> order, int n) {
  std::vector<int> perm(order.begin(), order.end());
  std::vector<int> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  std::vector<int> identity(static_cast<std::size_t>(n));
  std::iota(identity.begin(), identity.end(), 0);
  if (sorted != identity) throw InputError("subsystem order is not a permutation");
  return perm;
}

// new_index[i] for composite index i under the subsystem permutation.
std::vector<std::size_t> permuted_indices(const Dims& dims, const std::vector<int>& order) {
  Dims new_dims(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) new_dims[i] = dims[static_cast<std::size_t>(order[i])];
  // position of old subsystem q in the new ordering
  std::vector<std::size_t> new_pos(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) new_pos[static_cast<std::size_t>(order[i])] = i;
  std::vector<std::size_t> new_stride(order.size(), 1);
  for (std::size_t i = order.size(); i-- > 1;) {
    new_stride[i - 1] = new_stride[i] * static_cast<std::size_t>(new_dims[i]);
  }
  const std::size_t total = total_dimension(dims);
  std::vector<std::size_t> out(total);
  std::vector<int> digit(dims.size(), 0);
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t idx = 0;
    for (std::size_t q = 0; q < dims.size(); ++q) {
      idx += static_cast<std::size_t>(digit[q]) * new_stride[new_pos[q]];
    }
    out[i] = idx;
    for (std::size_t q = dims.size(); q-- > 0;) {
      if (++digit[q] < dims[q]) break;
      digit[q] = 0;
    }
  }
  return out;
}

}  // namespace

int max_dense_qubits() {
  int cap = kDenseQubitCap;
  if (const char* env = std::getenv("QOBJEX_MAX_QUBITS")) {
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value >= 1 && value < cap) cap = static_cast<int>(value);
  }
  return cap;
}

void check_dense_size(int qubits, std::string_view what) {
  const int cap = max_dense_qubits();
  if (qubits > cap) {
    throw SizeCapError(std::string(what) + " needs " + std::to_string(qubits) +
                       " qubits, above the dense cap of " + std::to_string(cap) + " qubits");
  }
}

std::size_t total_dimension(const Dims& dims) {
  std::size_t d = 1;
  for (int x : dims) d *= static_cast<std::size_t>(x);
  return d;
}

PureState::PureState(Dims dims, ComplexVector amplitudes)
    : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {
  check_dims(dims_);
  check_dense_size(qubit_equivalent(dims_), "pure state");
  if (static_cast<std::size_t>(amplitudes_.size()) != total_dimension(dims_)) {
    throw InputError("amplitude count " + std::to_string(amplitudes_.size()) +
                     " does not match product of dims " + std::to_string(total_dimension(dims_)));
  }
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > kNormTol) {
    throw InputError("state is not normalized: norm = " + std::to_string(norm));
  }
}

PureState::PureState(Unchecked, Dims dims, ComplexVector amplitudes)
    : dims_(std::move(dims)), amplitudes_(std::move(amplitudes)) {}

PureState PureState::basis(Dims dims, std::size_t index) {
  const std::size_t d = total_dimension(dims);
  if (index >= d) throw InputError("basis index out of range");
  ComplexVector v = ComplexVector::Zero(static_cast<Eigen::Index>(d));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return PureState(std::move(dims), std::move(v));
}

DensityMatrix::DensityMatrix(Dims dims, ComplexMatrix matrix)
    : DensityMatrix(Unchecked{}, std::move(dims), std::move(matrix)) {
  check_dims(dims_);
  const auto d = static_cast<Eigen::Index>(total_dimension(dims_));
  if (matrix_.rows() != d || matrix_.cols() != d) {
    throw InputError("density matrix shape does not match product of dims");
  }
  if (max_hermitian_defect(matrix_) > kHermitianTol) throw InputError("density matrix is not Hermitian");
  const double tr = matrix_.trace().real();
  if (std::abs(tr - 1.0) > kTraceTol) throw InputError("density matrix trace is " + std::to_string(tr));
  if (d > 0 && hermitian_eigenvalues(matrix_).minCoeff() < -kNegativeEigTol) {
    throw InputError("density matrix has a negative eigenvalue");
  }
}

DensityMatrix::DensityMatrix(Unchecked, Dims dims, ComplexMatrix matrix)
    : dims_(std::move(dims)), matrix_(std::move(matrix)) {}

DensityMatrix DensityMatrix::trusted(Dims dims, ComplexMatrix matrix) {
  const auto d = static_cast<Eigen::Index>(total_dimension(dims));
  if (matrix.rows() != d || matrix.cols() != d) throw InputError("density matrix shape mismatch");
  return DensityMatrix(Unchecked{}, std::move(dims), std::move(matrix));
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  const auto& a = psi.amplitudes();
  return trusted(psi.dims(), a * a.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(Dims dims) {
  check_dims(dims);
  const auto d = static_cast<Eigen::Index>(total_dimension(dims));
  return trusted(std::move(dims), ComplexMatrix::Identity(d, d) / static_cast<double>(d));
}

PureState tensor(const PureState& a, const PureState& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  check_dense_size(qubit_equivalent(dims), "tensor product");
  const auto& x = a.amplitudes();
  const auto& y = b.amplitudes();
  ComplexVector out(x.size() * y.size());
  for (Eigen::Index i = 0; i < x.size(); ++i) out.segment(i * y.size(), y.size()) = x(i) * y;
  return PureState(PureState::Unchecked{}, std::move(dims), std::move(out));
}

DensityMatrix tensor(const DensityMatrix& a, const DensityMatrix& b) {
  Dims dims = a.dims();
  dims.insert(dims.end(), b.dims().begin(), b.dims().end());
  const auto& x = a.matrix();
  const auto& y = b.matrix();
  ComplexMatrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  return DensityMatrix::trusted(std::move(dims), std::move(out));
}

AnyState tensor(const AnyState& a, const AnyState& b) {
  if (a.index() != b.index()) throw InputError("cannot tensor a pure state with a density matrix");
  if (const auto* pa = std::get_if<PureState>(&a)) return tensor(*pa, std::get<PureState>(b));
  return tensor(std::get<DensityMatrix>(a), std::get<DensityMatrix>(b));
}

PureState permute_subsystems(const PureState& psi, std::span<const int> order) {
  const auto perm = checked_permutation(order, psi.num_subsystems());
  const auto map = permuted_indices(psi.dims(), perm);
  ComplexVector out(psi.amplitudes().size());
  for (std::size_t i = 0; i < map.size(); ++i) {
    out(static_cast<Eigen::Index>(map[i])) = psi.amplitudes()(static_cast<Eigen::Index>(i));
  }
  Dims dims(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) dims[i] = psi.dims()[static_cast<std::size_t>(perm[i])];
  return PureState(PureState::Unchecked{}, std::move(dims), std::move(out));
}

DensityMatrix permute_subsystems(const DensityMatrix& rho, std::span<const int> order) {
  const auto perm = checked_permutation(order, rho.num_subsystems());
  const auto map = permuted_indices(rho.dims(), perm);
  const auto d = static_cast<Eigen::Index>(map.size());
  ComplexMatrix out(d, d);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      out(static_cast<Eigen::Index>(map[static_cast<std::size_t>(i)]),
          static_cast<Eigen::Index>(map[static_cast<std::size_t>(j)])) = rho.matrix()(i, j);
    }
  }
  Dims dims(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) dims[i] = rho.dims()[static_cast<std::size_t>(perm[i])];
  return DensityMatrix::trusted(std::move(dims), std::move(out));
}

ComplexMatrix partial_trace_operator(const ComplexMatrix& op, const Dims& dims, const IndexSet& keep) {
  const int n = static_cast<int>(dims.size());
  const IndexSet kept = detail::normalize_index_set(keep, n, "partial trace keep set");
  const IndexSet traced = detail::complement(kept, n);
  const auto split = detail::split_subsystems(dims, {kept, traced});
  const std::size_t kd = split.part_dims[0];
  const std::size_t td = split.part_dims[1];
  if (static_cast<std::size_t>(op.rows()) != kd * td || op.rows() != op.cols()) {
    throw InputError("operator shape does not match dims");
  }
  std::vector<std::size_t> composite(kd * td);
  for (std::size_t i = 0; i < composite.size(); ++i) {
    composite[split.local[0][i] * td + split.local[1][i]] = i;
  }
  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(kd), static_cast<Eigen::Index>(kd));
  for (std::size_t a = 0; a < kd; ++a) {
    for (std::size_t b = 0; b < kd; ++b) {
      Complex sum = 0.0;
      for (std::size_t t = 0; t < td; ++t) {
        sum += op(static_cast<Eigen::Index>(composite[a * td + t]),
                  static_cast<Eigen::Index>(composite[b * td + t]));
      }
      out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = sum;
    }
  }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const IndexSet& keep) {
  const IndexSet kept = detail::normalize_index_set(keep, rho.num_subsystems(), "partial trace keep set");
  Dims dims;
  for (int q : kept) dims.push_back(rho.dims()[static_cast<std::size_t>(q)]);
  return DensityMatrix::trusted(std::move(dims), partial_trace_operator(rho.matrix(), rho.dims(), kept));
}

DensityMatrix partial_trace(const PureState& psi, const IndexSet& keep) {
  const IndexSet kept = detail::normalize_index_set(keep, psi.num_subsystems(), "partial trace keep set");
  const ComplexMatrix m = detail::bipartite_matrix(psi, kept);
  Dims dims;
  for (int q : kept) dims.push_back(psi.dims()[static_cast<std::size_t>(q)]);
  return DensityMatrix::trusted(std::move(dims), m * m.adjoint());
}

Eigen::VectorXd hermitian_eigenvalues(const ComplexMatrix& m) {
  if (m.size() == 0) return Eigen::VectorXd();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw Error("Hermitian eigensolver failed");
  return solver.eigenvalues();
}

double entropy_of_spectrum(const Eigen::VectorXd& eigenvalues) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const double lambda = eigenvalues(i);
    if (lambda > kZeroEigenvalue) s -= lambda * std::log2(lambda);
  }
  return std::max(s, 0.0);
}

double von_neumann_entropy(const DensityMatrix& rho) {
  if (max_hermitian_defect(rho.matrix()) > kHermitianTol) {
    throw InputError("entropy of a non-Hermitian matrix");
  }
  return entropy_of_spectrum(hermitian_eigenvalues(rho.matrix()));
}

double entanglement_entropy(const PureState& psi, const IndexSet& part) {
  const IndexSet kept = detail::normalize_index_set(part, psi.num_subsystems(), "entropy subsystem set");
  if (kept.empty() || static_cast<int>(kept.size()) == psi.num_subsystems()) return 0.0;
  const ComplexMatrix m = detail::bipartite_matrix(psi, kept);
  const ComplexMatrix gram = m.rows() <= m.cols() ? ComplexMatrix(m * m.adjoint()) : ComplexMatrix(m.adjoint() * m);
  return entropy_of_spectrum(hermitian_eigenvalues(gram));
}

namespace {

IndexSet checked_union(const IndexSet& a, const IndexSet& b, int n) {
  const IndexSet sa = detail::normalize_index_set(a, n, "mutual information part A");
  const IndexSet sb = detail::normalize_index_set(b, n, "mutual information part B");
  IndexSet both;
  std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(both));
  if (!both.empty()) throw InputError("mutual information parts overlap");
  IndexSet u;
  std::set_union(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(u));
  return u;
}

}  // namespace

double quantum_mutual_information(const DensityMatrix& rho, const IndexSet& part_a, const IndexSet& part_b) {
  const IndexSet ab = checked_union(part_a, part_b, rho.num_subsystems());
  const double value = von_neumann_entropy(partial_trace(rho, part_a)) +
                       von_neumann_entropy(partial_trace(rho, part_b)) -
                       von_neumann_entropy(partial_trace(rho, ab));
  return std::max(value, 0.0);
}

double quantum_mutual_information(const PureState& psi, const IndexSet& part_a, const IndexSet& part_b) {
  const IndexSet ab = checked_union(part_a, part_b, psi.num_subsystems());
  const double value = entanglement_entropy(psi, part_a) + entanglement_entropy(psi, part_b) -
                       entanglement_entropy(psi, ab);
  return std::max(value, 0.0);
}

double purity(const DensityMatrix& rho) {
  return (rho.matrix() * rho.matrix()).trace().real();
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw InputError("trace distance shape mismatch");
  const ComplexMatrix diff = a - b;
  const ComplexMatrix herm = 0.5 * (diff + diff.adjoint());
  return 0.5 * hermitian_eigenvalues(herm).cwiseAbs().sum();
}

namespace detail {

SubsystemSplit split_subsystems(const Dims& dims, const std::vector<IndexSet>& parts) {
  const std::size_t n = dims.size();
  std::vector<int> owner(n, -1);
  std::vector<std::size_t> local_stride(n, 1);
  SubsystemSplit split;
  split.part_dims.assign(parts.size(), 1);
  for (std::size_t p = 0; p < parts.size(); ++p) {
    const auto& part = parts[p];
    for (std::size_t i = part.size(); i-- > 0;) {
      const auto q = static_cast<std::size_t>(part[i]);
      if (q >= n || owner[q] != -1) throw InputError("subsystem split is not a partition");
      owner[q] = static_cast<int>(p);
      local_stride[q] = split.part_dims[p];
      split.part_dims[p] *= static_cast<std::size_t>(dims[q]);
    }
  }
  for (int o : owner) {
    if (o == -1) throw InputError("subsystem split does not cover all subsystems");
  }
  const std::size_t total = total_dimension(dims);
  split.local.assign(parts.size(), std::vector<std::size_t>(total, 0));
  std::vector<int> digit(n, 0);
  std::vector<std::size_t> current(parts.size(), 0);
  for (std::size_t i = 0; i < total; ++i) {
    for (std::size_t p = 0; p < parts.size(); ++p) split.local[p][i] = current[p];
    // odometer increment, least significant subsystem last
    for (std::size_t q = n; q-- > 0;) {
      const auto p = static_cast<std::size_t>(owner[q]);
      if (++digit[q] < dims[q]) {
        current[p] += local_stride[q];
        break;
      }
      current[p] -= static_cast<std::size_t>(dims[q] - 1) * local_stride[q];
      digit[q] = 0;
    }
  }
  return split;
}

IndexSet normalize_index_set(const IndexSet& set, int num_subsystems, std::string_view what) {
  IndexSet out = set;
  std::sort(out.begin(), out.end());
  for (int q : out) {
    if (q < 0 || q >= num_subsystems) {
      throw InputError(std::string(what) + ": subsystem index " + std::to_string(q) + " out of range");
    }
  }
  if (std::adjacent_find(out.begin(), out.end()) != out.end()) {
    throw InputError(std::string(what) + ": repeated subsystem index");
  }
  return out;
}

IndexSet complement(const IndexSet& set, int num_subsystems) {
  IndexSet out;
  std::size_t j = 0;
  for (int q = 0; q < num_subsystems; ++q) {
    if (j < set.size() && set[j] == q) {
      ++j;
    } else {
      out.push_back(q);
    }
  }
  return out;
}

ComplexMatrix bipartite_matrix(const PureState& psi, const IndexSet& part) {
  const IndexSet rest = complement(part, psi.num_subsystems());
  const auto split = split_subsystems(psi.dims(), {part, rest});
  ComplexMatrix m(static_cast<Eigen::Index>(split.part_dims[0]), static_cast<Eigen::Index>(split.part_dims[1]));
  const auto& a = psi.amplitudes();
  for (std::size_t i = 0; i < split.local[0].size(); ++i) {
    m(static_cast<Eigen::Index>(split.local[0][i]), static_cast<Eigen::Index>(split.local[1][i])) =
        a(static_cast<Eigen::Index>(i));
  }
  return m;
}

}  // namespace detail

}  // namespace qobjex
