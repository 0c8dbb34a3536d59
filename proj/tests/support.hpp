#ifndef QOBJEX_TESTS_SUPPORT_HPP
#define QOBJEX_TESTS_SUPPORT_HPP

// Helpers shared by the unit tests: seeded random states and a reference
// partial trace written with explicit index loops, independent of densesim.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "qobjex/densesim.hpp"

namespace qobjex::testing {

inline ComplexVector random_vector(std::mt19937& rng, std::size_t dim) {
  std::normal_distribution<double> g;
  ComplexVector v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(g(rng), g(rng));
  return v / v.norm();
}

inline PureState random_pure(std::mt19937& rng, int qubits) {
  return PureState(Dims(static_cast<std::size_t>(qubits), 2), random_vector(rng, std::size_t{1} << qubits));
}

inline DensityMatrix random_mixed(std::mt19937& rng, int qubits, int rank) {
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << qubits);
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  double total = 0.0;
  std::vector<double> w(static_cast<std::size_t>(rank));
  for (auto& x : w) total += (x = u(rng));
  for (int r = 0; r < rank; ++r) {
    const ComplexVector v = random_vector(rng, static_cast<std::size_t>(dim));
    m += (w[static_cast<std::size_t>(r)] / total) * v * v.adjoint();
  }
  m = 0.5 * (m + m.adjoint()).eval();
  return DensityMatrix(Dims(static_cast<std::size_t>(qubits), 2), m);
}

/// Haar-ish random 2x2 unitary from a QR decomposition.
inline ComplexMatrix random_unitary(std::mt19937& rng, int dim) {
  std::normal_distribution<double> g;
  ComplexMatrix a(dim, dim);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) a(r, c) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<ComplexMatrix> qr(a);
  return qr.householderQ();
}

/// Kronecker product of per-qubit unitaries, qubit 0 most significant.
inline ComplexMatrix local_unitary(std::mt19937& rng, int qubits) {
  ComplexMatrix u = ComplexMatrix::Identity(1, 1);
  for (int q = 0; q < qubits; ++q) {
    const ComplexMatrix v = random_unitary(rng, 2);
    ComplexMatrix next(u.rows() * 2, u.cols() * 2);
    for (Eigen::Index r = 0; r < u.rows(); ++r)
      for (Eigen::Index c = 0; c < u.cols(); ++c) next.block(r * 2, c * 2, 2, 2) = u(r, c) * v;
    u = next;
  }
  return u;
}

/// Partial trace over qubits by direct summation on bit patterns.
inline ComplexMatrix reference_partial_trace(const ComplexMatrix& rho, int qubits, const std::vector<int>& keep) {
  const int nk = static_cast<int>(keep.size());
  const std::size_t dk = std::size_t{1} << nk;
  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(dk), static_cast<Eigen::Index>(dk));
  const std::size_t dim = std::size_t{1} << qubits;
  auto bit = [&](std::size_t idx, int q) { return (idx >> (qubits - 1 - q)) & 1u; };
  auto kept_index = [&](std::size_t idx) {
    std::size_t r = 0;
    for (int q : keep) r = (r << 1) | bit(idx, q);
    return r;
  };
  auto traced_equal = [&](std::size_t a, std::size_t b) {
    for (int q = 0; q < qubits; ++q) {
      bool kept = false;
      for (int kq : keep) kept = kept || kq == q;
      if (!kept && bit(a, q) != bit(b, q)) return false;
    }
    return true;
  };
  for (std::size_t a = 0; a < dim; ++a)
    for (std::size_t b = 0; b < dim; ++b)
      if (traced_equal(a, b))
        out(static_cast<Eigen::Index>(kept_index(a)), static_cast<Eigen::Index>(kept_index(b))) +=
            rho(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
  return out;
}

inline double reference_entropy(const ComplexMatrix& rho) {
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(rho);
  double s = 0.0;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    const double x = solver.eigenvalues()(i).real();
    if (x > 1e-13) s -= x * std::log2(x);
  }
  return s;
}

}  // namespace qobjex::testing

#endif
