#ifndef QOBJEX_EXACTCOUNT_HPP
#define QOBJEX_EXACTCOUNT_HPP

// Exact counting of environment fractions: binomials, inclusion-exclusion
// counts for "some group fully kept" (A) and "every group touched" (B), and
// multinomial weights of count vectors.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "qobjex/count_vector.hpp"

namespace qobjex {

using BigCount = mpz_class;

/// Exact non-negative fraction with a double view accurate to > 50 bits.
class Ratio {
 public:
  /// 0 <= numerator <= denominator, denominator > 0.
  Ratio(BigCount numerator, BigCount denominator);

  const BigCount& numerator() const { return numerator_; }
  const BigCount& denominator() const { return denominator_; }
  double value() const { return value_; }

  /// a*b exactly.
  friend Ratio operator*(const Ratio& a, const Ratio& b);

 private:
  BigCount numerator_;
  BigCount denominator_;
  double value_;
};

/// num/den rounded toward zero to ~64 significant bits, via scaled integer division.
double to_double(const BigCount& numerator, const BigCount& denominator);

/// C(n, r); 0 when r < 0, r > n or n < 0.
BigCount binomial(long n, long r);

/// Factorials 0!..max_n!, built once and read-only afterwards.
class FactorialTable {
 public:
  explicit FactorialTable(long max_n);

  long max_n() const { return static_cast<long>(factorials_.size()) - 1; }
  const BigCount& factorial(long n) const;
  /// Factorial ratio; 0 outside 0 <= r <= n. Throws InputError if n > max_n.
  BigCount binomial(long n, long r) const;
  /// (sum parts)! / prod(parts!).
  BigCount multinomial(std::span<const long> parts) const;

 private:
  std::vector<BigCount> factorials_;
};

/// C(N*k, m): number of m-subsets of the environment.
BigCount count_total(const FactorialTable& table, long N, long k, long m);

/// m-subsets containing at least one full group:
/// sum_{j=1..N} (-1)^(1+j) C(N,j) C(Nk - jk, m - jk).
BigCount count_condition_A(const FactorialTable& table, long N, long k, long m);
BigCount count_condition_A(long N, long k, long m);

/// m-subsets leaving at least one group empty:
/// sum_{j=1..N} (-1)^(1+j) C(N,j) C(Nk - jk, m).
BigCount count_condition_B_complement(const FactorialTable& table, long N, long k, long m);

/// m-subsets touching every group.
BigCount count_condition_B(const FactorialTable& table, long N, long k, long m);
BigCount count_condition_B(long N, long k, long m);

/// Number of m-subsets with count vector cv:
/// multinomial(N; n_0..n_k) * prod_j C(k, j)^n_j.
BigCount partition_weight(const FactorialTable& table, const CountVector& cv);
BigCount partition_weight(const CountVector& cv);

/// Visits every (n_0..n_k) with sum n_j = N and sum j n_j = m exactly once,
/// in descending lexicographic order of (n_0, n_1, ..., n_k).
void for_each_count_vector(long N, int k, long m, const std::function<void(const CountVector&)>& visit);
std::vector<CountVector> enumerate_count_vectors(long N, int k, long m);

}  // namespace qobjex

#endif  // QOBJEX_EXACTCOUNT_HPP
