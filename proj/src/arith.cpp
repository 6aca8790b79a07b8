#include "twoprim/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace twoprim {
namespace {

constexpr u64 kTrialLimit = 1'000'000;

std::vector<u64> sieve_primes(u64 limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<u64> primes;
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

const std::vector<u64>& small_primes() {
  static const std::vector<u64> primes = sieve_primes(kTrialLimit);
  return primes;
}

bool miller_rabin_witness(u64 n, u64 a, u64 d, unsigned s) {
  u64 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (unsigned r = 1; r < s; ++r) {
    x = mulmod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

// Brent's variant of Pollard rho. n is odd, composite, and has no factor
// below the trial-division limit.
u64 pollard_rho(u64 n) {
  for (u64 c = 1;; ++c) {
    auto f = [&](u64 x) { return (mulmod(x, x, n) + c) % n; };
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    constexpr u64 kBatch = 128;
    for (u64 r = 1; g == 1; r <<= 1) {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      for (u64 k = 0; k < r && g == 1; k += kBatch) {
        ys = y;
        for (u64 i = 0; i < std::min(kBatch, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = gcd(q, n);
      }
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_large(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  u64 d = pollard_rho(n);
  split_large(d, out);
  split_large(n / d, out);
}

}  // namespace

bool Factorization::divides_prime(u64 p) const {
  return std::any_of(factors.begin(), factors.end(),
                     [p](const PrimeFactor& f) { return f.prime == p; });
}

u64 gcd(u64 a, u64 b) { return std::gcd(a, b); }

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are a proven deterministic set below 2^64.
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (miller_rabin_witness(n, a, d, s)) return false;
  }
  return true;
}

Factorization factorize(u64 n) {
  if (n == 0) throw std::invalid_argument("factorize: n must be positive");
  Factorization out;
  out.value = n;
  u64 rest = n;
  for (u64 p : small_primes()) {
    if (p * p > rest) break;
    // A prime cofactor would otherwise cost a full sweep of the table.
    if (p == 1009 && is_prime(rest)) break;
    if (rest % p) continue;
    unsigned e = 0;
    do {
      rest /= p;
      ++e;
    } while (rest % p == 0);
    out.factors.push_back({p, e});
  }
  if (rest == 1) return out;

  std::vector<u64> big;
  split_large(rest, big);
  std::sort(big.begin(), big.end());
  for (std::size_t i = 0; i < big.size();) {
    std::size_t j = i;
    while (j < big.size() && big[j] == big[i]) ++j;
    out.factors.push_back({big[i], static_cast<unsigned>(j - i)});
    i = j;
  }
  return out;
}

Factorization merge(const Factorization& a, const Factorization& b) {
  Factorization out;
  out.value = a.value * b.value;
  auto ia = a.factors.begin();
  auto ib = b.factors.begin();
  while (ia != a.factors.end() || ib != b.factors.end()) {
    if (ib == b.factors.end() || (ia != a.factors.end() && ia->prime < ib->prime)) {
      out.factors.push_back(*ia++);
    } else if (ia == a.factors.end() || ib->prime < ia->prime) {
      out.factors.push_back(*ib++);
    } else {
      out.factors.push_back({ia->prime, ia->multiplicity + ib->multiplicity});
      ++ia;
      ++ib;
    }
  }
  return out;
}

int mobius(const Factorization& fact) {
  for (const auto& f : fact.factors) {
    if (f.multiplicity > 1) return 0;
  }
  return fact.factors.size() % 2 ? -1 : 1;
}

u64 euler_phi(const Factorization& fact) {
  u64 phi = 1;
  for (const auto& f : fact.factors) {
    phi *= f.prime - 1;
    for (unsigned i = 1; i < f.multiplicity; ++i) phi *= f.prime;
  }
  return phi;
}

u64 num_squarefree_divisors(const Factorization& fact) {
  return u64{1} << fact.factors.size();
}

double w_bound_constant(const Factorization& fact, unsigned a) {
  if (a == 0) throw std::invalid_argument("w_bound_constant: a must be positive");
  const double limit = std::ldexp(1.0, static_cast<int>(a));
  double c = 1.0;
  for (const auto& f : fact.factors) {
    if (static_cast<double>(f.prime) > limit) break;
    c *= 2.0 / std::pow(static_cast<double>(f.prime), 1.0 / a);
  }
  return c;
}

double w_bound_supremum(unsigned a) {
  // Every prime p <= 2^a contributes a factor 2 / p^{1/a} >= 1.
  Factorization all;
  for (u64 p : small_primes()) {
    if (p > (u64{1} << a)) break;
    all.factors.push_back({p, 1});
  }
  return w_bound_constant(all, a);
}

u64 squarefree_odd_radical(const Factorization& fact) {
  u64 r = 1;
  for (const auto& f : fact.factors) {
    if (f.prime != 2) r *= f.prime;
  }
  return r;
}

std::vector<u64> divisors(const Factorization& fact) {
  std::vector<u64> out{1};
  for (const auto& f : fact.factors) {
    const std::size_t n = out.size();
    u64 pk = 1;
    for (unsigned e = 1; e <= f.multiplicity; ++e) {
      pk *= f.prime;
      for (std::size_t i = 0; i < n; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<u64> squarefree_divisors(const Factorization& fact) {
  std::vector<u64> out{1};
  for (const auto& f : fact.factors) {
    const std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) out.push_back(out[i] * f.prime);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Factorization factorization_of_divisor(const Factorization& fact, u64 d) {
  if (d == 0 || fact.value % d != 0) {
    throw std::invalid_argument("factorization_of_divisor: not a divisor");
  }
  Factorization out;
  out.value = d;
  for (const auto& f : fact.factors) {
    unsigned e = 0;
    while (d % f.prime == 0) {
      d /= f.prime;
      ++e;
    }
    if (e) out.factors.push_back({f.prime, e});
  }
  return out;
}

PrimePowerCtx make_prime_power_ctx(u64 p, unsigned k) {
  if (!is_prime(p) || k == 0) {
    throw std::invalid_argument("make_prime_power_ctx: need prime p and k >= 1");
  }
  PrimePowerCtx ctx;
  ctx.p = p;
  ctx.k = k;
  ctx.q = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (ctx.q > (u64{1} << 32) / p) throw std::out_of_range("make_prime_power_ctx: q >= 2^32");
    ctx.q *= p;
  }
  if (ctx.q >= (u64{1} << 32)) throw std::out_of_range("make_prime_power_ctx: q >= 2^32");
  // q^2 - 1 = (q - 1)(q + 1); each half is cheap to factor on its own.
  ctx.fact_q2m1 = merge(factorize(ctx.q - 1), factorize(ctx.q + 1));
  ctx.odd_part = ctx.fact_q2m1.value;
  while (ctx.odd_part % 2 == 0) {
    ctx.odd_part /= 2;
    ++ctx.two_adic_d;
  }
  ctx.rprime = squarefree_odd_radical(ctx.fact_q2m1);
  ctx.t_q = static_cast<unsigned>(ctx.fact_q2m1.distinct());
  return ctx;
}

std::optional<std::pair<u64, unsigned>> as_prime_power(u64 q) {
  if (q < 2) return std::nullopt;
  const Factorization f = factorize(q);
  if (f.factors.size() != 1) return std::nullopt;
  return std::pair{f.factors[0].prime, f.factors[0].multiplicity};
}

std::optional<PrimePowerCtx> odd_prime_power_ctx(u64 q) {
  if (q < 3 || q % 2 == 0 || q >= (u64{1} << 32)) return std::nullopt;
  auto pk = as_prime_power(q);
  if (!pk) return std::nullopt;
  return make_prime_power_ctx(pk->first, pk->second);
}

std::vector<PrimePowerCtx> enumerate_odd_prime_powers(u64 lo, u64 hi) {
  if (lo < 3 || lo > hi || hi >= (u64{1} << 32)) {
    throw std::invalid_argument("enumerate_odd_prime_powers: need 3 <= lo <= hi < 2^32");
  }
  const u64 root = static_cast<u64>(std::sqrt(static_cast<double>(hi))) + 1;
  const std::vector<u64> base = sieve_primes(root);

  std::vector<std::pair<u64, unsigned>> found;  // (p, k)
  // Higher powers come from primes up to sqrt(hi).
  for (u64 p : base) {
    if (p == 2) continue;
    u64 pk = p;
    for (unsigned k = 1; pk <= hi; ++k) {
      if (pk >= lo && k >= 2) found.emplace_back(p, k);
      if (pk > hi / p) break;
      pk *= p;
    }
  }
  // Primes in [lo, hi] by a segmented sieve.
  constexpr u64 kSegment = u64{1} << 20;
  std::vector<bool> composite;
  for (u64 start = lo; start <= hi; start += kSegment) {
    const u64 end = std::min(hi, start + kSegment - 1);
    composite.assign(end - start + 1, false);
    for (u64 p : base) {
      if (p * p > end) break;
      u64 first = std::max(p * p, (start + p - 1) / p * p);
      for (u64 m = first; m <= end; m += p) composite[m - start] = true;
    }
    for (u64 n = start; n <= end; ++n) {
      if (n % 2 == 1 && !composite[n - start] && n > 1) found.emplace_back(n, 1);
    }
    if (end == hi) break;
  }
  std::vector<PrimePowerCtx> out;
  out.reserve(found.size());
  for (auto [p, k] : found) out.push_back(make_prime_power_ctx(p, k));
  std::sort(out.begin(), out.end(),
            [](const PrimePowerCtx& a, const PrimePowerCtx& b) { return a.q < b.q; });
  return out;
}

u64 nth_prime(unsigned n) {
  if (n == 0) throw std::invalid_argument("nth_prime: index is 1-based");
  const auto& primes = small_primes();
  if (n > primes.size()) throw std::out_of_range("nth_prime: index too large");
  return primes[n - 1];
}

}  // namespace twoprim
