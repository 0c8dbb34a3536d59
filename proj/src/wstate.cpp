#include <algorithm>
#include <cmath>

#include "qobjex/error.hpp"
#include "qobjex/objectivity.hpp"
#include "qobjex/partitions.hpp"

namespace qobjex {

namespace {

constexpr int kWGroupSize = 3;
constexpr double kStructureTol = 1e-12;

// Sector data of tr_T(|w_a><w_b|) for one kept subset K of a W group: the
// kept-excitation part and the vacuum |0_K><0_K| coefficient.
struct RemnantSectors {
  double kept_weight;       // <u_+|u_+>
  double record_overlap;    // |<u_+|u_->|^2 / (|u_+|^2 |u_-|^2)
  double vacuum_weight;     // gamma_++
  double vacuum_coherence;  // |gamma_+-|^2 / (gamma_++ gamma_--)
};

RemnantSectors remnant_sectors(const StatePair& pair, const IndexSet& kept) {
  const Dims& dims = pair.plus.dims();
  const auto& a = pair.plus.amplitudes();
  const auto& b = pair.minus.amplitudes();
  const ComplexMatrix xpp = partial_trace_operator(a * a.adjoint(), dims, kept);
  const ComplexMatrix xmm = partial_trace_operator(b * b.adjoint(), dims, kept);
  const ComplexMatrix xpm = partial_trace_operator(a * b.adjoint(), dims, kept);
  // index 0 of the kept register is |0...0>, the vacuum sector
  const Complex gpp = xpp(0, 0);
  const Complex gmm = xmm(0, 0);
  const Complex gpm = xpm(0, 0);
  const double upp = (xpp.trace() - gpp).real();
  const double umm = (xmm.trace() - gmm).real();
  const Complex upm = xpm.trace() - gpm;
  RemnantSectors out{};
  out.kept_weight = upp;
  out.record_overlap = upp > 0.0 ? std::norm(upm) / (upp * umm) : 0.0;
  out.vacuum_weight = gpp.real();
  out.vacuum_coherence = gpp.real() > 0.0 ? std::norm(gpm) / (gpp.real() * gmm.real()) : 0.0;
  return out;
}

// Sector data shared by every kept subset of size j; throws when it depends
// on which qubits are kept.
RemnantSectors uniform_sectors(const StatePair& pair, int j) {
  std::optional<RemnantSectors> first;
  for_each_combination(kWGroupSize, j, [&](std::span<const int> subset) {
    const RemnantSectors s = remnant_sectors(pair, IndexSet(subset.begin(), subset.end()));
    if (!first) {
      first = s;
      return;
    }
    if (std::abs(s.kept_weight - first->kept_weight) > kStructureTol ||
        std::abs(s.record_overlap - first->record_overlap) > kStructureTol ||
        std::abs(s.vacuum_weight - first->vacuum_weight) > kStructureTol ||
        std::abs(s.vacuum_coherence - first->vacuum_coherence) > kStructureTol) {
      throw UnsupportedError("W remnant sectors depend on which qubits are kept");
    }
  });
  return *first;
}

double clamp_unit(double x) { return std::clamp(x, 0.0, 1.0); }

double log_binomial_pmf(long n, long y, double q) {
  const double log_choose = std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(y) + 1.0) -
                            std::lgamma(static_cast<double>(n - y) + 1.0);
  return log_choose + static_cast<double>(y) * std::log(q) + static_cast<double>(n - y) * std::log1p(-q);
}

// E_Y[T(p, factor^Y)] for Y ~ Binomial(n, q).
double expected_mixture_entropy(double p, long n, double q, double factor) {
  double sum = 0.0;
  for (long y = 0; y <= n; ++y) {
    const double weight = std::exp(log_binomial_pmf(n, y, q));
    sum += weight * entropy_two_state_mixture(p, clamp_unit(std::pow(factor, static_cast<double>(y))));
  }
  return sum;
}

}  // namespace

WStateMI::WStateMI(double p, long max_groups) : p_(p), system_entropy_(binary_entropy(p)) {
  if (!(p > 0.0 && p < 1.0)) throw InputError("branch weight p must lie in (0, 1)");
  if (max_groups < 0) throw InputError("max_groups must be non-negative");
  const StatePair pair = build_w_pair(kWGroupSize);
  const RemnantSectors single = uniform_sectors(pair, 1);
  const RemnantSectors two = uniform_sectors(pair, 2);
  // a lone kept qubit holds no record; one traced qubit keeps full coherence
  if (std::abs(single.record_overlap - 1.0) > kStructureTol || std::abs(two.vacuum_coherence - 1.0) > kStructureTol) {
    throw UnsupportedError("W pair structure does not reduce to two-qubit and one-qubit remnant counts");
  }
  pair_weight_ = clamp_unit(two.kept_weight);
  pair_overlap_ = clamp_unit(two.record_overlap);
  single_vacuum_weight_ = clamp_unit(single.vacuum_weight);
  vacuum_coherence_ = clamp_unit(single.vacuum_coherence);

  h_prime_.resize(static_cast<std::size_t>(max_groups) + 1);
  h_tilde_.resize(static_cast<std::size_t>(max_groups) + 1);
  for (long n = 0; n <= max_groups; ++n) {
    h_prime_[static_cast<std::size_t>(n)] = expected_mixture_entropy(p_, n, pair_weight_, pair_overlap_);
    h_tilde_[static_cast<std::size_t>(n)] = expected_mixture_entropy(p_, n, single_vacuum_weight_, vacuum_coherence_);
  }
}

double WStateMI::h_prime(long b) const {
  if (b < 0 || b >= static_cast<long>(h_prime_.size())) throw InputError("H' argument outside precomputed range");
  return h_prime_[static_cast<std::size_t>(b)];
}

double WStateMI::h_tilde(long c) const {
  if (c < 0 || c >= static_cast<long>(h_tilde_.size())) throw InputError("H~ argument outside precomputed range");
  return h_tilde_[static_cast<std::size_t>(c)];
}

WFractionMI WStateMI::operator()(const CountVector& cv) const {
  if (cv.k() != kWGroupSize) {
    throw UnsupportedError("W mutual information is implemented for k = 3 only (got k = " + std::to_string(cv.k()) +
                           ")");
  }
  const double s = system_entropy_;
  const bool full_group_kept = cv[3] >= 1;
  const bool full_group_traced = cv[0] >= 1;
  const double fraction_term = full_group_kept ? s : h_prime(cv[2]);
  const double joint_term = full_group_traced ? s : h_tilde(cv[1]);
  const double qmi = std::max(0.0, (s + fraction_term - joint_term) / s);
  return {qmi, std::min(qmi, 1.0)};
}

WFractionMI w_mi_from_counts(const CountVector& cv, double p) {
  if (cv.k() != kWGroupSize) {
    throw UnsupportedError("W mutual information is implemented for k = 3 only (got k = " + std::to_string(cv.k()) +
                           ")");
  }
  return WStateMI(p, cv.groups())(cv);
}

WFractionMI w_avg_mi(const EncodingSpec& spec, long m) {
  const CurvePoint point = CurveEvaluator(spec).at(m);
  return {point.qmi_over_S, point.acc_over_S};
}

}  // namespace qobjex
