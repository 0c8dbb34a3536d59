#include "qobjex/encodings.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qobjex/error.hpp"

namespace qobjex {

CountVector::CountVector(std::vector<long> counts) : counts_(std::move(counts)) {
  if (counts_.size() < 2) throw InputError("count vector needs k + 1 >= 2 entries");
  for (long n : counts_) {
    if (n < 0) throw InputError("count vector entries must be non-negative");
  }
}

long CountVector::groups() const {
  long total = 0;
  for (long n : counts_) total += n;
  return total;
}

long CountVector::kept() const {
  long total = 0;
  for (std::size_t j = 0; j < counts_.size(); ++j) total += static_cast<long>(j) * counts_[j];
  return total;
}

void CountVector::check_consistent(long N, long m) const {
  if (groups() != N || kept() != m) {
    throw InputError("count vector " + to_string() + " inconsistent with N=" + std::to_string(N) +
                     ", m=" + std::to_string(m));
  }
}

std::string CountVector::to_string() const {
  std::ostringstream out;
  out << '(';
  for (std::size_t j = 0; j < counts_.size(); ++j) out << (j ? "," : "") << counts_[j];
  out << ')';
  return out.str();
}

std::string_view to_string(Family family) { return family == Family::ghz ? "ghz" : "w"; }

Family parse_family(std::string_view text) {
  if (text == "ghz" || text == "GHZ") return Family::ghz;
  if (text == "w" || text == "W") return Family::w;
  throw InputError("unknown encoding family '" + std::string(text) + "' (expected ghz or w)");
}

void EncodingSpec::validate() const {
  if (k < 1) throw InputError("group size k must be >= 1");
  if (family == Family::w && k < 2) throw InputError("W encoding needs group size k >= 2");
  if (N < 1) throw InputError("group count N must be >= 1");
  if (!(p > 0.0 && p < 1.0)) throw InputError("branch weight p must lie in (0, 1)");
}

double EncodingSpec::system_entropy() const {
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

std::string describe(const EncodingSpec& spec) {
  std::ostringstream out;
  out << to_string(spec.family) << " k=" << spec.k << " N=" << spec.N << " p=" << spec.p;
  return out.str();
}

int env_qubit_index(const EncodingSpec& spec, long group, int slot) {
  if (group < 0 || group >= spec.N || slot < 0 || slot >= spec.k) {
    throw InputError("environment qubit (group, slot) out of range");
  }
  return static_cast<int>(1 + group * spec.k + slot);
}

StatePair build_ghz_pair(int k) {
  if (k < 1) throw InputError("GHZ pair needs k >= 1");
  check_dense_size(k, "GHZ pair");
  const Dims dims(static_cast<std::size_t>(k), 2);
  const auto d = static_cast<Eigen::Index>(total_dimension(dims));
  const double amp = 1.0 / std::sqrt(2.0);
  ComplexVector plus = ComplexVector::Zero(d);
  ComplexVector minus = ComplexVector::Zero(d);
  plus(0) = amp;
  plus(d - 1) = amp;
  minus(0) = amp;
  minus(d - 1) = -amp;
  return {PureState(dims, plus), PureState(dims, minus)};
}

StatePair build_w_pair(int k) {
  if (k < 2) throw InputError("W pair needs k >= 2");
  check_dense_size(k, "W pair");
  const Dims dims(static_cast<std::size_t>(k), 2);
  const auto d = static_cast<Eigen::Index>(total_dimension(dims));
  const double amp = 1.0 / std::sqrt(static_cast<double>(k));
  ComplexVector plus = ComplexVector::Zero(d);
  ComplexVector minus = ComplexVector::Zero(d);
  for (int j = 0; j < k; ++j) {
    const Eigen::Index idx = Eigen::Index{1} << j;
    const double angle = 2.0 * std::numbers::pi * j / k;
    plus(idx) = amp;
    minus(idx) = amp * Complex(std::cos(angle), std::sin(angle));
  }
  return {PureState(dims, plus), PureState(dims, minus)};
}

StatePair build_pair(Family family, int k) {
  return family == Family::ghz ? build_ghz_pair(k) : build_w_pair(k);
}

PureState build_encoded_state(const EncodingSpec& spec) {
  spec.validate();
  check_dense_size(static_cast<int>(std::min<long>(spec.total_qubits(), 1L << 20)), "encoded state " + describe(spec));
  const StatePair pair = build_pair(spec.family, spec.k);
  ComplexVector branch0 = ComplexVector::Ones(1);
  ComplexVector branch1 = ComplexVector::Ones(1);
  for (long g = 0; g < spec.N; ++g) {
    const auto& a = pair.plus.amplitudes();
    const auto& b = pair.minus.amplitudes();
    ComplexVector next0(branch0.size() * a.size());
    ComplexVector next1(branch1.size() * b.size());
    for (Eigen::Index i = 0; i < branch0.size(); ++i) {
      next0.segment(i * a.size(), a.size()) = branch0(i) * a;
      next1.segment(i * b.size(), b.size()) = branch1(i) * b;
    }
    branch0 = std::move(next0);
    branch1 = std::move(next1);
  }
  ComplexVector amplitudes(2 * branch0.size());
  amplitudes.head(branch0.size()) = std::sqrt(spec.p) * branch0;
  amplitudes.tail(branch1.size()) = std::sqrt(1.0 - spec.p) * branch1;
  amplitudes.normalize();
  return PureState(Dims(static_cast<std::size_t>(spec.total_qubits()), 2), std::move(amplitudes));
}

FractionMask::FractionMask(EncodingSpec spec, std::vector<int> positions)
    : spec_(spec), positions_(std::move(positions)) {
  spec_.validate();
  std::sort(positions_.begin(), positions_.end());
  if (std::adjacent_find(positions_.begin(), positions_.end()) != positions_.end()) {
    throw InputError("fraction mask repeats a position");
  }
  if (!positions_.empty() && (positions_.front() < 0 || positions_.back() >= spec_.env_qubits())) {
    throw InputError("fraction mask position out of range");
  }
}

FractionMask FractionMask::full(const EncodingSpec& spec) {
  std::vector<int> all(static_cast<std::size_t>(spec.env_qubits()));
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  return FractionMask(spec, std::move(all));
}

double FractionMask::fraction() const {
  return static_cast<double>(size()) / static_cast<double>(spec_.env_qubits());
}

IndexSet FractionMask::global_qubits() const {
  IndexSet out(positions_.size());
  for (std::size_t i = 0; i < positions_.size(); ++i) out[i] = positions_[i] + 1;
  return out;
}

CountVector count_vector(const FractionMask& mask) {
  const auto& spec = mask.spec();
  std::vector<long> per_group(static_cast<std::size_t>(spec.N), 0);
  for (int pos : mask.positions()) ++per_group[static_cast<std::size_t>(pos / spec.k)];
  std::vector<long> counts(static_cast<std::size_t>(spec.k) + 1, 0);
  for (long c : per_group) ++counts[static_cast<std::size_t>(c)];
  return CountVector(std::move(counts));
}

std::string_view to_string(GhzCase c) {
  switch (c) {
    case GhzCase::none:
      return "none";
    case GhzCase::a_or_b:
      return "a_or_b";
    case GhzCase::both:
      return "both";
  }
  return "none";
}

GhzClassification classify_ghz_fraction(const CountVector& cv) {
  const bool a = cv[cv.k()] >= 1;
  const bool b = cv[0] == 0;
  if (a && b) return {GhzCase::both, a, b, 2.0, 1.0};
  if (a || b) return {GhzCase::a_or_b, a, b, 1.0, 1.0};
  return {GhzCase::none, a, b, 0.0, 0.0};
}

GhzClassification classify_ghz_fraction(const FractionMask& mask) {
  if (mask.spec().family != Family::ghz) {
    throw InputError("GHZ classification applied to a W encoding; use the W count-vector formula");
  }
  return classify_ghz_fraction(count_vector(mask));
}

}  // namespace qobjex
