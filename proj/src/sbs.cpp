#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "qobjex/error.hpp"
#include "qobjex/objectivity.hpp"

namespace qobjex {

std::string_view to_string(SbsClause clause) {
  switch (clause) {
    case SbsClause::none: return "none";
    case SbsClause::system_coherence: return "system coherence";
    case SbsClause::not_product: return "not product";
    case SbsClause::overlapping_records: return "overlapping records";
  }
  return "unknown";
}

namespace {

// Partition as (sorted) fractions of the non-system subsystems, checked for
// coverage and disjointness.
std::vector<IndexSet> validate_partition(const std::vector<IndexSet>& partition, int n, int system_index) {
  if (partition.empty()) throw InputError("SBS partition must contain at least one fraction");
  std::vector<int> owner(static_cast<std::size_t>(n), -1);
  std::vector<IndexSet> out;
  for (std::size_t j = 0; j < partition.size(); ++j) {
    if (partition[j].empty()) throw InputError("SBS partition has an empty fraction");
    IndexSet frac = detail::normalize_index_set(partition[j], n, "SBS fraction");
    for (int q : frac) {
      if (q == system_index) throw InputError("SBS partition contains the system subsystem");
      if (owner[static_cast<std::size_t>(q)] >= 0) {
        throw InputError("SBS partition fractions overlap at subsystem " + std::to_string(q));
      }
      owner[static_cast<std::size_t>(q)] = static_cast<int>(j);
    }
    out.push_back(std::move(frac));
  }
  for (int q = 0; q < n; ++q) {
    if (q != system_index && owner[static_cast<std::size_t>(q)] < 0) {
      throw InputError("SBS partition does not cover subsystem " + std::to_string(q));
    }
  }
  return out;
}

}  // namespace

namespace {

// Clauses (i)-(iii) with the system rotated into `basis` (columns).
SbsVerdict check_in_basis(const DensityMatrix& arranged, const std::vector<IndexSet>& local_fracs,
                          const ComplexMatrix& basis, double eps) {
  const int ds = arranged.dims()[0];
  const Dims env_dims(arranged.dims().begin() + 1, arranged.dims().end());
  const auto de = static_cast<Eigen::Index>(total_dimension(env_dims));
  const ComplexMatrix& m = arranged.matrix();
  auto rotated_block = [&](int i, int j) {
    ComplexMatrix out = ComplexMatrix::Zero(de, de);
    for (int a = 0; a < ds; ++a) {
      for (int b = 0; b < ds; ++b) {
        const Complex c = std::conj(basis(a, i)) * basis(b, j);
        if (std::abs(c) == 0.0) continue;
        out += c * m.block(a * de, b * de, de, de);
      }
    }
    return out;
  };

  for (int i = 0; i < ds; ++i) {
    for (int j = i + 1; j < ds; ++j) {
      const double off = rotated_block(i, j).cwiseAbs().maxCoeff();
      if (off > eps) {
        std::ostringstream w;
        w << "system coherence: off-diagonal block (" << i << "," << j << ") has entry of size " << off;
        return {false, SbsClause::system_coherence, w.str(), off};
      }
    }
  }

  // Conditional environment states for branches with non-negligible weight.
  std::vector<int> branches;
  std::vector<DensityMatrix> conditional;
  for (int i = 0; i < ds; ++i) {
    ComplexMatrix block = rotated_block(i, i);
    const double weight = block.trace().real();
    if (weight <= eps) continue;
    branches.push_back(i);
    conditional.push_back(DensityMatrix::trusted(env_dims, block / weight));
  }

  // records[b][j]: marginal of branch b on fraction j.
  std::vector<std::vector<DensityMatrix>> records;
  for (std::size_t b = 0; b < conditional.size(); ++b) {
    std::vector<DensityMatrix> marg;
    for (const auto& local : local_fracs) marg.push_back(partial_trace(conditional[b], local));
    DensityMatrix product = marg[0];
    for (std::size_t j = 1; j < marg.size(); ++j) product = tensor(product, marg[j]);
    const double dist = trace_distance(conditional[b].matrix(), product.matrix());
    if (dist > eps) {
      std::ostringstream w;
      w << "not product: branch " << branches[b] << " is at trace distance " << dist
        << " from the product of its fraction marginals";
      return {false, SbsClause::not_product, w.str(), dist};
    }
    records.push_back(std::move(marg));
  }

  for (std::size_t j = 0; j < local_fracs.size(); ++j) {
    for (std::size_t a = 0; a < records.size(); ++a) {
      for (std::size_t b = a + 1; b < records.size(); ++b) {
        const double overlap = (records[a][j].matrix() * records[b][j].matrix()).trace().real();
        if (overlap > eps) {
          std::ostringstream w;
          w << "overlapping records: fraction " << j << " has tr(R_" << branches[a] << " R_" << branches[b]
            << ") = " << overlap;
          return {false, SbsClause::overlapping_records, w.str(), overlap};
        }
      }
    }
  }
  return {true, SbsClause::none, "", 0.0};
}

}  // namespace

SbsVerdict sbs_check(const DensityMatrix& rho, int system_index, const std::vector<IndexSet>& partition,
                     const Tolerances& tol) {
  tol.validate();
  const int n = rho.num_subsystems();
  if (system_index < 0 || system_index >= n) throw InputError("system index out of range");
  const std::vector<IndexSet> fractions = validate_partition(partition, n, system_index);
  const double eps = tol.numeric_tol;

  // System first, then fractions in order.
  std::vector<int> order{system_index};
  std::vector<IndexSet> local_fracs;
  for (const auto& frac : fractions) {
    IndexSet local(frac.size());
    std::iota(local.begin(), local.end(), static_cast<int>(order.size()) - 1);
    local_fracs.push_back(std::move(local));
    order.insert(order.end(), frac.begin(), frac.end());
  }
  const DensityMatrix arranged = permute_subsystems(rho, order);
  const int ds = arranged.dims()[0];

  const DensityMatrix rho_s = partial_trace(arranged, IndexSet{0});
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho_s.matrix());
  const Eigen::VectorXd& evals = solver.eigenvalues();
  bool degenerate = false;
  for (int i = 1; i < ds; ++i) degenerate = degenerate || (evals(i) - evals(i - 1) <= eps);
  if (!degenerate) return check_in_basis(arranged, local_fracs, solver.eigenvectors(), eps);

  // Degenerate rho_S fixes no pointer basis: try Z, then X and Y for a qubit.
  std::vector<ComplexMatrix> bases{ComplexMatrix::Identity(ds, ds)};
  if (ds == 2) {
    const double r = 1.0 / std::sqrt(2.0);
    ComplexMatrix x(2, 2);
    x << r, r, r, -r;
    ComplexMatrix y(2, 2);
    y << r, r, Complex(0, r), Complex(0, -r);
    bases.push_back(x);
    bases.push_back(y);
  }
  SbsVerdict first;
  for (std::size_t b = 0; b < bases.size(); ++b) {
    SbsVerdict v = check_in_basis(arranged, local_fracs, bases[b], eps);
    if (v.pass) return v;
    if (b == 0) first = std::move(v);
  }
  return first;
}

}  // namespace qobjex
