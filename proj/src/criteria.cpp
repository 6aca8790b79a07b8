#include "twoprim/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "parallel.hpp"

namespace twoprim {
namespace {

// W(R) for R | q^2 - 1, counted against the known factorization.
double W(const PrimePowerCtx& ctx, u64 R) {
  unsigned t = 0;
  for (const auto& f : ctx.fact_q2m1.factors) {
    if (R % f.prime == 0) ++t;
  }
  return std::ldexp(1.0, static_cast<int>(t));
}

// (q + 1) > 4 (w_main * sqrt q - w_minus * (sqrt q - 1) * branch)
ConditionResult compare(u64 q, double w_main, double w_minus) {
  const double sq = std::sqrt(static_cast<double>(q));
  const double branch = q % 4 == 1 ? 0.5 : 1.0;
  const double lhs = static_cast<double>(q) + 1.0;
  const double rhs = 4.0 * (w_main * sq - w_minus * (sq - 1.0) * branch);
  const double margin = lhs - rhs;
  return {margin > kGuardBand * lhs, margin};
}

void require_odd(const PrimePowerCtx& ctx) {
  if (ctx.q % 2 == 0) throw std::invalid_argument("criteria: q must be odd");
}

}  // namespace

std::string_view stage_name(Stage stage) {
  switch (stage) {
    case Stage::BasicPass: return "BasicPass";
    case Stage::SievePass: return "SievePass";
    case Stage::Exception: return "Exception";
    case Stage::EliminatedByPrimeCount: return "EliminatedByPrimeCount";
  }
  return "?";
}

u64 prime_part_dividing(u64 squarefree_r, u64 n) { return gcd(squarefree_r, n); }

ConditionResult basic_condition(const PrimePowerCtx& ctx, u64 R, u64 R1) {
  require_odd(ctx);
  if (R == 0 || ctx.rprime % R != 0) {
    throw std::invalid_argument("basic_condition: R must divide R'");
  }
  return compare(ctx.q, W(ctx, R), W(ctx, R1));
}

SieveDecomposition make_decomposition(const PrimePowerCtx& ctx, std::vector<u64> sieve_primes) {
  SieveDecomposition dec;
  dec.kk = ctx.rprime;
  dec.epsilon = 1.0;
  dec.epsilon_prime = 1.0;
  for (u64 p : sieve_primes) {
    if (dec.kk % p != 0) throw std::invalid_argument("make_decomposition: prime not in R'");
    dec.kk /= p;
    dec.epsilon -= 1.0 / static_cast<double>(p);
    if ((ctx.q + 1) % p == 0) {
      ++dec.r;
      dec.epsilon_prime -= 1.0 / static_cast<double>(p);
    }
  }
  dec.k1 = prime_part_dividing(dec.kk, ctx.q + 1);
  dec.s = static_cast<unsigned>(sieve_primes.size());
  dec.sieve_primes = std::move(sieve_primes);
  return dec;
}

ConditionResult sieve_condition(const PrimePowerCtx& ctx, const SieveDecomposition& dec) {
  require_odd(ctx);
  if (!(dec.epsilon > 0.0)) throw std::invalid_argument("sieve_condition: epsilon must be positive");
  const double s = dec.s;
  const double r = dec.r;
  const double w_main = W(ctx, dec.kk) * ((s - 1.0) / dec.epsilon + 2.0);
  const double w_minus =
      W(ctx, dec.k1) * ((r - 1.0 + dec.epsilon_prime) / dec.epsilon + 1.0);
  return compare(ctx.q, w_main, w_minus);
}

std::vector<SieveDecomposition> greedy_decompose(const PrimePowerCtx& ctx) {
  std::vector<u64> remaining;
  for (const auto& f : ctx.fact_q2m1.factors) {
    if (f.prime != 2) remaining.push_back(f.prime);
  }
  std::vector<SieveDecomposition> out;
  if (remaining.empty()) {
    out.push_back(make_decomposition(ctx, {}));
    return out;
  }
  std::vector<u64> chosen;
  double epsilon = 1.0;
  while (!remaining.empty()) {
    const u64 p = remaining.back();
    if (!(epsilon - 1.0 / static_cast<double>(p) > 0.0)) break;
    epsilon -= 1.0 / static_cast<double>(p);
    remaining.pop_back();
    chosen.push_back(p);
    out.push_back(make_decomposition(ctx, chosen));
  }
  return out;
}

bool algorithm1(unsigned t1, unsigned t2) {
  if (t1 < 2 || t1 > t2) throw std::invalid_argument("algorithm1: need 2 <= t1 <= t2");
  // Step 1: greedy epsilon over p(t1), p(t1 - 1), ...; p(0) does not exist.
  unsigned s = 0;
  double eps1 = 1.0;
  while (s <= t1 && t1 - s >= 1 && eps1 - 1.0 / static_cast<double>(nth_prime(t1 - s)) > 0.0) {
    ++s;
    eps1 -= 1.0 / static_cast<double>(nth_prime(t1 - s + 1));
  }
  // Step 2
  const long double base = 2.0L * std::ldexp(1.0L, static_cast<int>(t2) - static_cast<int>(s)) *
                           ((static_cast<long double>(s) - 1.0L) / eps1 + 2.0L);
  const long double q1 = base * base;
  const long double bound = q1 * q1 - 1.0L;
  // Step 3: most distinct primes of an integer <= q1^2 - 1.
  unsigned c = 1;
  long double primorial = 2.0L * 3.0L;
  while (primorial <= bound) {
    ++c;
    primorial *= static_cast<long double>(nth_prime(c + 1));
  }
  // Step 4
  return c <= t1;
}

CriterionVerdict evaluate(const PrimePowerCtx& ctx) {
  CriterionVerdict v;
  v.q = ctx.q;
  const ConditionResult basic =
      basic_condition(ctx, ctx.rprime, prime_part_dividing(ctx.rprime, ctx.q + 1));
  v.margin = basic.margin;
  if (basic.holds) {
    v.stage = Stage::BasicPass;
    return v;
  }
  bool first = true;
  for (auto& dec : greedy_decompose(ctx)) {
    const ConditionResult res = sieve_condition(ctx, dec);
    if (res.holds) {
      v.stage = Stage::SievePass;
      v.margin = res.margin;
      v.decomposition = std::move(dec);
      return v;
    }
    // Exceptions report the attempt that came closest.
    if (first || res.margin > v.margin) v.margin = res.margin;
    first = false;
  }
  v.stage = ctx.t_q >= 10 ? Stage::EliminatedByPrimeCount : Stage::Exception;
  return v;
}

std::vector<CriterionVerdict> scan_interval(u64 lo, u64 hi, unsigned threads) {
  const std::vector<PrimePowerCtx> ctxs = enumerate_odd_prime_powers(lo, hi);
  std::vector<CriterionVerdict> out(ctxs.size());
  parallel_for(ctxs.size(), threads, [&](std::size_t i) { out[i] = evaluate(ctxs[i]); });
  return out;
}

PrimeCountCutoff prime_count_cutoff_details() {
  constexpr unsigned kCutoff = 14;
  PrimeCountCutoff out;
  out.w_supremum = w_bound_supremum(8);
  if (!(out.w_supremum < kWBoundConstant)) {
    throw std::logic_error("prime_count_cutoff: c_{R,8} bound exceeded");
  }
  out.q0 = std::pow(2.0 * kWBoundConstant, 4.0);

  // For q >= q0: W(q^2 - 1) <= d (q^2 - 1)^{1/8} < d q^{1/4} <= sqrt(q) / 2.
  const double chain = kWBoundConstant * std::pow(out.q0, 0.25);
  if (!(std::sqrt(out.q0) >= 2.0 * chain * (1.0 - kGuardBand))) {
    throw std::logic_error("prime_count_cutoff: W bound chain fails at q0");
  }

  const long double limit = static_cast<long double>(out.q0) * out.q0 - 1.0L;
  long double primorial = 1.0L;
  unsigned t = 0;
  while (primorial * static_cast<long double>(nth_prime(t + 1)) <= limit) {
    primorial *= static_cast<long double>(nth_prime(t + 1));
    ++t;
  }
  out.max_prime_count_below_q0 = t;
  for (unsigned tt = kCutoff; tt <= t; ++tt) {
    if (!algorithm1(tt, tt)) throw std::logic_error("prime_count_cutoff: algorithm1 fails");
  }
  out.cutoff = kCutoff;
  return out;
}

unsigned prime_count_cutoff() { return prime_count_cutoff_details().cutoff; }

}  // namespace twoprim
