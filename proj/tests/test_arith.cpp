#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "twoprim/arith.hpp"
#include "twoprim/reference.hpp"

using namespace twoprim;

namespace {

u64 reassemble(const Factorization& f) {
  u64 v = 1;
  for (const auto& pf : f.factors) {
    for (unsigned i = 0; i < pf.multiplicity; ++i) v *= pf.prime;
  }
  return v;
}

void check_invariants(const Factorization& f) {
  CHECK(reassemble(f) == f.value);
  for (std::size_t i = 0; i < f.factors.size(); ++i) {
    CHECK(is_prime(f.factors[i].prime));
    CHECK(f.factors[i].multiplicity >= 1);
    if (i) CHECK(f.factors[i - 1].prime < f.factors[i].prime);
  }
}

}  // namespace

TEST_CASE("factorize examples") {
  CHECK(factorize(48).factors == std::vector<PrimeFactor>{{2, 4}, {3, 1}});
  CHECK(factorize(1).factors.empty());

  const u64 n = 3541ull * 3541 - 1;
  CHECK(n == 12538680);
  const Factorization f = factorize(n);
  check_invariants(f);
  const auto expected = oracle::trial_division(n);
  REQUIRE(f.factors.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(f.factors[i].prime == expected[i].first);
    CHECK(f.factors[i].multiplicity == expected[i].second);
  }
  CHECK_THROWS_AS(factorize(0), std::invalid_argument);
}

TEST_CASE("factorize reassembles every n up to 10^6 into sieve primes") {
  const auto prime = oracle::eratosthenes(1'000'000);
  for (u64 n = 1; n <= 1'000'000; ++n) {
    const Factorization f = factorize(n);
    u64 v = 1;
    bool ok = true;
    for (const auto& pf : f.factors) {
      ok = ok && prime[pf.prime];
      for (unsigned i = 0; i < pf.multiplicity; ++i) v *= pf.prime;
    }
    if (!ok || v != n) FAIL("bad factorization of " << n);
  }
}

TEST_CASE("factorize handles large 64-bit inputs") {
  // products of two primes above the trial-division range
  const u64 p1 = 4294967291ull, p2 = 4294967279ull, p3 = 1000003ull;
  check_invariants(factorize(p1 * p2));
  CHECK(factorize(p1 * p2).factors == std::vector<PrimeFactor>{{p2, 1}, {p1, 1}});
  CHECK(factorize(p3 * p3 * 7).factors == std::vector<PrimeFactor>{{7, 1}, {p3, 2}});
  CHECK(factorize(18446744073709551615ull).factors.size() == 7);  // 2^64 - 1

  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) check_invariants(factorize(rng() | 1));
}

TEST_CASE("is_prime agrees with a sieve and rejects strong pseudoprimes") {
  const auto prime = oracle::eratosthenes(200'000);
  for (u64 n = 0; n <= 200'000; ++n) {
    if (is_prime(n) != prime[n]) FAIL("is_prime mismatch at " << n);
  }
  CHECK(is_prime(2305843009213693951ull));  // 2^61 - 1
  CHECK(is_prime(18446744073709551557ull));  // largest 64-bit prime
  CHECK_FALSE(is_prime(3215031751ull));
  CHECK_FALSE(is_prime(3825123056546413051ull));
  CHECK_FALSE(is_prime(561));
}

TEST_CASE("mobius and euler_phi") {
  CHECK(mobius(factorize(1)) == 1);
  CHECK(mobius(factorize(6)) == 1);
  CHECK(mobius(factorize(12)) == 0);
  CHECK(mobius(factorize(30)) == -1);
  CHECK(euler_phi(factorize(1)) == 1);
  CHECK(euler_phi(factorize(48)) == 16);
  // independently: prod (p - 1) p^{e-1} over the trial-division factors
  CHECK(euler_phi(factorize(12538680 / 2)) == 1224960);

  for (u64 n = 1; n <= 10'000; ++n) {
    const Factorization f = factorize(n);
    long mu_sum = 0;
    u64 phi_sum = 0;
    for (u64 d : divisors(f)) {
      const Factorization df = factorize(d);
      mu_sum += mobius(df);
      phi_sum += euler_phi(df);
    }
    if (mu_sum != (n == 1 ? 1 : 0) || phi_sum != n) FAIL("divisor sums fail at " << n);
  }
}

TEST_CASE("square-free divisor count and radical") {
  CHECK(num_squarefree_divisors(factorize(1)) == 1);
  CHECK(num_squarefree_divisors(factorize(48)) == 4);
  // q = 101: enumerate square-free divisors of 10200 directly
  u64 count = 0;
  for (u64 d = 1; d <= 10200; ++d) {
    if (10200 % d) continue;
    bool sf = true;
    for (u64 p = 2; p * p <= d; ++p) sf = sf && d % (p * p) != 0;
    count += sf;
  }
  CHECK(count == 16);
  CHECK(num_squarefree_divisors(factorize(10200)) == count);
  CHECK(squarefree_divisors(factorize(10200)).size() == count);

  CHECK(squarefree_odd_radical(factorize(48)) == 3);
  CHECK(squarefree_odd_radical(factorize(8)) == 1);
  CHECK(squarefree_odd_radical(factorize(10200)) == 255);
}

TEST_CASE("w_bound_constant") {
  CHECK(w_bound_constant(factorize(1), 8) == 1.0);
  CHECK(w_bound_constant(factorize(30), 2) == doctest::Approx(4.0 / std::sqrt(6.0)).epsilon(1e-12));
  CHECK(w_bound_supremum(8) < 4514.7);
  CHECK(w_bound_supremum(8) > 4514.6);
  CHECK_THROWS_AS(w_bound_constant(factorize(6), 0), std::invalid_argument);

  std::mt19937_64 rng(42);
  std::uniform_int_distribution<u64> dist(1, u64{1} << 50);
  for (int i = 0; i < 100'000; ++i) {
    const Factorization f = factorize(dist(rng));
    const double bound = w_bound_constant(f, 8) * std::pow(static_cast<double>(f.value), 1.0 / 8);
    if (static_cast<double>(num_squarefree_divisors(f)) > bound * (1 + 1e-12)) {
      FAIL("W(R) bound violated for R=" << f.value);
    }
  }
}

TEST_CASE("enumerate_odd_prime_powers") {
  auto qs = [](u64 lo, u64 hi) {
    std::vector<u64> out;
    for (const auto& c : enumerate_odd_prime_powers(lo, hi)) out.push_back(c.q);
    return out;
  };
  CHECK(qs(3, 30) == std::vector<u64>{3, 5, 7, 9, 11, 13, 17, 19, 23, 25, 27, 29});
  CHECK(qs(121, 125) == std::vector<u64>{121, 125});
  CHECK(qs(3, 3) == std::vector<u64>{3});
  CHECK(qs(14, 16).empty());
  CHECK_THROWS_AS(enumerate_odd_prime_powers(2, 10), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_odd_prime_powers(10, 9), std::invalid_argument);

  // sieve-based enumeration over a smaller interval
  const auto prime = oracle::eratosthenes(100'000);
  std::vector<u64> expected;
  for (u64 n = 3; n <= 100'000; n += 2) {
    const auto f = oracle::trial_division(n);
    if (f.size() == 1 && prime[f[0].first]) expected.push_back(n);
  }
  CHECK(qs(3, 100'000) == expected);

  CHECK(enumerate_odd_prime_powers(3, reference::kScanHi).size() ==
        reference::kOddPrimePowersInScan);
}

TEST_CASE("PrimePowerCtx invariants") {
  for (const auto& ctx : enumerate_odd_prime_powers(3, 20'000)) {
    const u64 n = ctx.q * ctx.q - 1;
    CHECK(ctx.fact_q2m1.value == n);
    CHECK(reassemble(ctx.fact_q2m1) == n);
    CHECK(ctx.two_adic_d >= 3);
    CHECK(ctx.odd_part % 2 == 1);
    CHECK(ctx.rprime % 2 == 1);
    CHECK(n % ctx.rprime == 0);
    CHECK(mobius(factorize(ctx.rprime)) != 0);
    CHECK(ctx.t_q == ctx.fact_q2m1.factors.size());
    const u64 square_part = ctx.odd_part / ctx.rprime;
    CHECK(ctx.rprime * square_part * (u64{1} << ctx.two_adic_d) == n);
  }
  const auto c = make_prime_power_ctx(3, 4);
  CHECK(c.q == 81);
  CHECK(c.p == 3);
  CHECK(c.k == 4);
  CHECK_THROWS_AS(make_prime_power_ctx(4, 1), std::invalid_argument);
  CHECK_THROWS_AS(make_prime_power_ctx(3, 0), std::invalid_argument);
  CHECK_THROWS(make_prime_power_ctx(65537, 2));
  CHECK_FALSE(odd_prime_power_ctx(15).has_value());
  CHECK_FALSE(odd_prime_power_ctx(16).has_value());
  CHECK(odd_prime_power_ctx(3541).has_value());
}

TEST_CASE("nth_prime") {
  CHECK(nth_prime(1) == 2);
  CHECK(nth_prime(2) == 3);
  CHECK(nth_prime(14) == 43);
  CHECK_THROWS(nth_prime(0));
}
