#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "qobjex/error.hpp"
#include "qobjex/objectivity.hpp"

namespace qobjex {

namespace {

double shannon_bits(const std::vector<double>& q) {
  double h = 0.0;
  for (double x : q) {
    if (x > 1e-15) h -= x * std::log2(x);
  }
  return h;
}

std::vector<ComplexMatrix> system_bases(const PureState& psi, int system_index) {
  const int ds = psi.dims()[static_cast<std::size_t>(system_index)];
  std::vector<ComplexMatrix> bases{ComplexMatrix::Identity(ds, ds)};
  if (ds == 2) {
    const double r = 1.0 / std::numbers::sqrt2;
    ComplexMatrix x(2, 2);
    x << r, r, r, -r;
    ComplexMatrix y(2, 2);
    y << r, r, Complex(0, r), Complex(0, -r);
    bases.push_back(x);
    bases.push_back(y);
  }
  const DensityMatrix rho_s = partial_trace(psi, IndexSet{system_index});
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho_s.matrix());
  bases.push_back(solver.eigenvectors());
  return bases;
}

}  // namespace

AccessCertificate certify_fraction(const PureState& psi, int system_index, const IndexSet& fraction,
                                   const Tolerances& tol) {
  tol.validate();
  const int n = psi.num_subsystems();
  if (system_index < 0 || system_index >= n) throw InputError("system index out of range");
  const IndexSet frac = detail::normalize_index_set(fraction, n, "fraction");
  if (std::find(frac.begin(), frac.end(), system_index) != frac.end()) {
    throw InputError("fraction contains the system subsystem");
  }

  AccessCertificate cert;
  cert.system_entropy_bits = entanglement_entropy(psi, IndexSet{system_index});
  cert.qmi_bits = frac.empty() ? 0.0 : quantum_mutual_information(psi, IndexSet{system_index}, frac);
  const double s = cert.system_entropy_bits;
  const double needed = (1.0 - tol.epsilon) * s - tol.numeric_tol;

  std::vector<int> order{system_index};
  order.insert(order.end(), frac.begin(), frac.end());
  for (int q : detail::complement(order, n)) order.push_back(q);
  const PureState arranged = permute_subsystems(psi, order);
  const int ds = arranged.dims()[0];
  Eigen::Index df = 1;
  for (std::size_t i = 1; i <= frac.size(); ++i) df *= arranged.dims()[i];
  const Eigen::Index dr = static_cast<Eigen::Index>(arranged.dimension()) / (ds * df);

  // a[s](r, f) = <s, f, r | psi>.
  std::vector<ComplexMatrix> a;
  for (int sidx = 0; sidx < ds; ++sidx) {
    a.push_back(Eigen::Map<const ComplexMatrix>(arranged.amplitudes().data() + sidx * df * dr, dr, df));
  }

  for (const ComplexMatrix& basis : system_bases(psi, system_index)) {
    std::vector<ComplexMatrix> branch;
    std::vector<double> weight;
    for (int b = 0; b < ds; ++b) {
      ComplexMatrix acc = ComplexMatrix::Zero(dr, df);
      for (int sidx = 0; sidx < ds; ++sidx) acc += std::conj(basis(sidx, b)) * a[static_cast<std::size_t>(sidx)];
      weight.push_back(acc.squaredNorm());
      branch.push_back(std::move(acc));
    }
    // Records: fraction-side states when the fraction is smaller, otherwise
    // rest-side Grams; both give tr(R_i R_j) for unnormalised R.
    bool orthogonal = true;
    for (int i = 0; i < ds && orthogonal; ++i) {
      if (weight[static_cast<std::size_t>(i)] <= tol.numeric_tol) continue;
      for (int j = i + 1; j < ds && orthogonal; ++j) {
        if (weight[static_cast<std::size_t>(j)] <= tol.numeric_tol) continue;
        const auto& bi = branch[static_cast<std::size_t>(i)];
        const auto& bj = branch[static_cast<std::size_t>(j)];
        double overlap;
        if (df <= dr) {
          const ComplexMatrix ri = bi.transpose() * bi.conjugate();
          const ComplexMatrix rj = bj.transpose() * bj.conjugate();
          overlap = (ri * rj).trace().real();
        } else {
          overlap = (bi.conjugate() * bj.transpose()).squaredNorm();
        }
        overlap /= weight[static_cast<std::size_t>(i)] * weight[static_cast<std::size_t>(j)];
        orthogonal = overlap <= tol.numeric_tol;
      }
    }
    if (orthogonal) cert.certified_bits = std::max(cert.certified_bits, std::min(shannon_bits(weight), s));
  }

  const bool qmi_ok = cert.qmi_bits >= needed;
  cert.qualifies = qmi_ok && cert.certified_bits >= needed;
  cert.discordant = qmi_ok && !cert.qualifies;
  return cert;
}

RedundancyResult search_redundancy(const PureState& psi, int system_index, const Tolerances& tol) {
  const int n = psi.num_subsystems();
  if (system_index < 0 || system_index >= n) throw InputError("system index out of range");
  const IndexSet env = detail::complement(IndexSet{system_index}, n);
  const int ne = static_cast<int>(env.size());
  if (ne > kPartitionEnvCap) {
    throw SizeCapError("redundancy search is limited to " + std::to_string(kPartitionEnvCap) +
                       " environment subsystems (got " + std::to_string(ne) + ")");
  }
  RedundancyResult result;
  if (ne == 0) return result;

  const unsigned full = (1u << ne) - 1u;
  std::vector<char> ok(full + 1u, 0);
  for (unsigned mask = 1; mask <= full; ++mask) {
    IndexSet frac;
    for (int i = 0; i < ne; ++i) {
      if (mask & (1u << i)) frac.push_back(env[static_cast<std::size_t>(i)]);
    }
    const AccessCertificate cert = certify_fraction(psi, system_index, frac, tol);
    ok[mask] = cert.qualifies ? 1 : 0;
    if (cert.discordant) ++result.discordant_fractions;
  }

  // best[mask]: most certified fractions exactly covering mask (-1: none).
  std::vector<int> best(full + 1u, -1);
  std::vector<unsigned> choice(full + 1u, 0);
  best[0] = 0;
  for (unsigned mask = 1; mask <= full; ++mask) {
    const unsigned low = mask & (~mask + 1u);
    const unsigned rest = mask ^ low;
    for (unsigned sub = rest;; sub = (sub - 1u) & rest) {
      const unsigned piece = sub | low;
      const int tail = best[mask ^ piece];
      if (ok[piece] && tail >= 0 && tail + 1 > best[mask]) {
        best[mask] = tail + 1;
        choice[mask] = piece;
      }
      if (sub == 0) break;
    }
  }

  if (best[full] <= 0) return result;
  result.redundancy = best[full];
  for (unsigned mask = full; mask != 0; mask ^= choice[mask]) {
    IndexSet frac;
    for (int i = 0; i < ne; ++i) {
      if (choice[mask] & (1u << i)) frac.push_back(env[static_cast<std::size_t>(i)]);
    }
    result.witness.push_back(std::move(frac));
  }
  return result;
}

}  // namespace qobjex
