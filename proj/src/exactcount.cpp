#include "qobjex/exactcount.hpp"

#include <cmath>

#include "qobjex/error.hpp"

namespace qobjex {

namespace {

void check_range(long N, long k, long m) {
  if (N < 1 || k < 1) throw InputError("counting needs N >= 1 and k >= 1");
  if (m < 0 || m > N * k) throw InputError("kept count m must lie in [0, N*k]");
}

}  // namespace

double to_double(const BigCount& numerator, const BigCount& denominator) {
  if (sgn(denominator) <= 0) throw InputError("ratio denominator must be positive");
  if (sgn(numerator) == 0) return 0.0;
  const long num_bits = static_cast<long>(mpz_sizeinbase(numerator.get_mpz_t(), 2));
  const long den_bits = static_cast<long>(mpz_sizeinbase(denominator.get_mpz_t(), 2));
  // quotient keeps >= 64 significant bits
  const long shift = 64 + den_bits - num_bits;
  BigCount scaled = numerator;
  if (shift > 0) {
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), static_cast<mp_bitcnt_t>(shift));
  } else if (shift < 0) {
    mpz_fdiv_q_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), static_cast<mp_bitcnt_t>(-shift));
  }
  BigCount quotient;
  mpz_tdiv_q(quotient.get_mpz_t(), scaled.get_mpz_t(), denominator.get_mpz_t());
  long exponent = 0;
  const double mantissa = mpz_get_d_2exp(&exponent, quotient.get_mpz_t());
  return std::ldexp(mantissa, static_cast<int>(exponent - shift));
}

Ratio::Ratio(BigCount numerator, BigCount denominator)
    : numerator_(std::move(numerator)), denominator_(std::move(denominator)) {
  if (sgn(denominator_) <= 0) throw InputError("ratio denominator must be positive");
  if (sgn(numerator_) < 0 || numerator_ > denominator_) throw InputError("ratio must lie in [0, 1]");
  value_ = to_double(numerator_, denominator_);
}

Ratio operator*(const Ratio& a, const Ratio& b) {
  return Ratio(a.numerator_ * b.numerator_, a.denominator_ * b.denominator_);
}

BigCount binomial(long n, long r) {
  BigCount out = 0;
  if (n < 0 || r < 0 || r > n) return out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(r));
  return out;
}

FactorialTable::FactorialTable(long max_n) {
  if (max_n < 0) throw InputError("factorial table size must be non-negative");
  factorials_.reserve(static_cast<std::size_t>(max_n) + 1);
  factorials_.emplace_back(1);
  for (long n = 1; n <= max_n; ++n) factorials_.push_back(factorials_.back() * n);
}

const BigCount& FactorialTable::factorial(long n) const {
  if (n < 0 || n > max_n()) {
    throw InputError("factorial " + std::to_string(n) + " outside memo table of size " + std::to_string(max_n()));
  }
  return factorials_[static_cast<std::size_t>(n)];
}

BigCount FactorialTable::binomial(long n, long r) const {
  if (n < 0 || r < 0 || r > n) return BigCount(0);
  BigCount denom = factorial(r) * factorial(n - r);
  BigCount out;
  mpz_divexact(out.get_mpz_t(), factorial(n).get_mpz_t(), denom.get_mpz_t());
  return out;
}

BigCount FactorialTable::multinomial(std::span<const long> parts) const {
  long total = 0;
  BigCount denom = 1;
  for (long part : parts) {
    if (part < 0) throw InputError("multinomial parts must be non-negative");
    total += part;
    denom *= factorial(part);
  }
  BigCount out;
  mpz_divexact(out.get_mpz_t(), factorial(total).get_mpz_t(), denom.get_mpz_t());
  return out;
}

BigCount count_total(const FactorialTable& table, long N, long k, long m) {
  check_range(N, k, m);
  return table.binomial(N * k, m);
}

BigCount count_condition_A(const FactorialTable& table, long N, long k, long m) {
  check_range(N, k, m);
  BigCount sum = 0;
  for (long j = 1; j <= N && j * k <= m; ++j) {
    BigCount term = table.binomial(N, j) * table.binomial(N * k - j * k, m - j * k);
    if (j % 2 == 1) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return sum;
}

BigCount count_condition_A(long N, long k, long m) {
  return count_condition_A(FactorialTable(N * k), N, k, m);
}

BigCount count_condition_B_complement(const FactorialTable& table, long N, long k, long m) {
  check_range(N, k, m);
  BigCount sum = 0;
  for (long j = 1; j <= N && N * k - j * k >= m; ++j) {
    BigCount term = table.binomial(N, j) * table.binomial(N * k - j * k, m);
    if (j % 2 == 1) {
      sum += term;
    } else {
      sum -= term;
    }
  }
  return sum;
}

BigCount count_condition_B(const FactorialTable& table, long N, long k, long m) {
  return count_total(table, N, k, m) - count_condition_B_complement(table, N, k, m);
}

BigCount count_condition_B(long N, long k, long m) {
  return count_condition_B(FactorialTable(N * k), N, k, m);
}

BigCount partition_weight(const FactorialTable& table, const CountVector& cv) {
  const int k = cv.k();
  BigCount weight = table.multinomial(cv.counts());
  for (int j = 0; j <= k; ++j) {
    if (cv[j] == 0) continue;
    BigCount factor;
    mpz_pow_ui(factor.get_mpz_t(), table.binomial(k, j).get_mpz_t(), static_cast<unsigned long>(cv[j]));
    weight *= factor;
  }
  return weight;
}

BigCount partition_weight(const CountVector& cv) {
  return partition_weight(FactorialTable(std::max<long>(cv.groups(), cv.k())), cv);
}

namespace {

// Fill counts[j..k] with `groups` groups holding `qubits` kept qubits.
void count_vectors_from(std::vector<long>& counts, int j, long groups, long qubits,
                        const std::function<void(const CountVector&)>& visit) {
  const int k = static_cast<int>(counts.size()) - 1;
  if (j == k) {
    if (qubits == groups * k) {
      counts[static_cast<std::size_t>(k)] = groups;
      visit(CountVector(counts));
      counts[static_cast<std::size_t>(k)] = 0;
    }
    return;
  }
  for (long n = groups; n >= 0; --n) {
    const long rest_groups = groups - n;
    const long rest_qubits = qubits - n * j;
    if (rest_qubits < 0) continue;
    // remaining groups hold between j+1 and k qubits each
    if (rest_qubits < rest_groups * (j + 1) || rest_qubits > rest_groups * k) continue;
    counts[static_cast<std::size_t>(j)] = n;
    count_vectors_from(counts, j + 1, rest_groups, rest_qubits, visit);
    counts[static_cast<std::size_t>(j)] = 0;
  }
}

}  // namespace

void for_each_count_vector(long N, int k, long m, const std::function<void(const CountVector&)>& visit) {
  if (N < 1 || k < 1) throw InputError("count vectors need N >= 1 and k >= 1");
  if (m < 0 || m > N * k) return;
  std::vector<long> counts(static_cast<std::size_t>(k) + 1, 0);
  count_vectors_from(counts, 0, N, m, visit);
}

std::vector<CountVector> enumerate_count_vectors(long N, int k, long m) {
  std::vector<CountVector> out;
  for_each_count_vector(N, k, m, [&](const CountVector& cv) { out.push_back(cv); });
  return out;
}

}  // namespace qobjex
