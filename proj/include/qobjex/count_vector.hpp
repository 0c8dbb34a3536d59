#ifndef QOBJEX_COUNT_VECTOR_HPP
#define QOBJEX_COUNT_VECTOR_HPP

#include <string>
#include <vector>

namespace qobjex {

/// (n_0, ..., n_k): number of groups of size k with exactly j qubits kept.
class CountVector {
 public:
  /// counts.size() = k + 1 >= 2; all entries non-negative.
  explicit CountVector(std::vector<long> counts);

  int k() const { return static_cast<int>(counts_.size()) - 1; }
  long operator[](int j) const { return counts_[static_cast<std::size_t>(j)]; }
  const std::vector<long>& counts() const { return counts_; }

  /// Sum of n_j: the number of groups N.
  long groups() const;
  /// Sum of j * n_j: the number of kept qubits m.
  long kept() const;

  /// Throws InputError unless groups() == N and kept() == m.
  void check_consistent(long N, long m) const;

  std::string to_string() const;

  friend bool operator==(const CountVector&, const CountVector&) = default;

 private:
  std::vector<long> counts_;
};

}  // namespace qobjex

#endif  // QOBJEX_COUNT_VECTOR_HPP
