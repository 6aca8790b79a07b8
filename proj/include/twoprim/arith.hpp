#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace twoprim {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

struct PrimeFactor {
  u64 prime = 0;
  unsigned multiplicity = 0;

  friend bool operator==(const PrimeFactor&, const PrimeFactor&) = default;
};

/// Prime factorization of `value`, primes strictly ascending.
struct Factorization {
  u64 value = 1;
  std::vector<PrimeFactor> factors;

  std::size_t distinct() const { return factors.size(); }
  bool divides_prime(u64 p) const;
};

// Deterministic Miller-Rabin, valid for every 64-bit input.
bool is_prime(u64 n);

Factorization factorize(u64 n);

// Factorization of a*b from the factorizations of a and b. Overflow is the
// caller's concern.
Factorization merge(const Factorization& a, const Factorization& b);

int mobius(const Factorization& fact);
u64 euler_phi(const Factorization& fact);

/// W(R) = 2^omega(R).
u64 num_squarefree_divisors(const Factorization& fact);

/// c_{R,a} = 2^j / (p_1 ... p_j)^{1/a}, taken over the distinct primes p_i of
/// R with p_i <= 2^a. Satisfies W(R) <= c_{R,a} * R^{1/a}.
double w_bound_constant(const Factorization& fact, unsigned a);

/// Supremum of c_{R,a} over all R: the product over every prime p <= 2^a.
double w_bound_supremum(unsigned a);

/// Product of the distinct odd primes of the input.
u64 squarefree_odd_radical(const Factorization& fact);

/// All positive divisors, ascending.
std::vector<u64> divisors(const Factorization& fact);

/// Square-free divisors, ascending.
std::vector<u64> squarefree_divisors(const Factorization& fact);

/// Restriction of a factorization to a divisor d of its value.
Factorization factorization_of_divisor(const Factorization& fact, u64 d);

u64 gcd(u64 a, u64 b);
u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 base, u64 exp, u64 m);

/// q = p^k with everything the criteria and the field construction need
/// about q^2 - 1.
struct PrimePowerCtx {
  u64 p = 0;
  unsigned k = 0;
  u64 q = 0;
  Factorization fact_q2m1;
  unsigned two_adic_d = 0;  // q^2 - 1 = 2^d * odd_part
  u64 odd_part = 1;
  u64 rprime = 1;  // square-free part of odd_part
  unsigned t_q = 0;

  u64 group_order() const { return q * q - 1; }
};

/// Context for q = p^k. Requires p prime, k >= 1 and q < 2^32.
PrimePowerCtx make_prime_power_ctx(u64 p, unsigned k);

/// Context for q if q is an odd prime power below 2^32.
std::optional<PrimePowerCtx> odd_prime_power_ctx(u64 q);

/// (p, k) with q = p^k, if q is a prime power.
std::optional<std::pair<u64, unsigned>> as_prime_power(u64 q);

/// Every odd prime power in [lo, hi], ascending. Requires 3 <= lo <= hi < 2^32.
std::vector<PrimePowerCtx> enumerate_odd_prime_powers(u64 lo, u64 hi);

/// The n-th prime, 1-based (nth_prime(1) == 2).
u64 nth_prime(unsigned n);

}  // namespace twoprim
