#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "twoprim/arith.hpp"

namespace twoprim {

// Relative guard band for inequalities evaluated in double precision: the
// left side must exceed the right side by this fraction of q + 1.
inline constexpr double kGuardBand = 1e-9;

// Bound on c_{R,8} over all R.
inline constexpr double kWBoundConstant = 4514.7;

struct ConditionResult {
  bool holds = false;
  double margin = 0.0;  // (q + 1) - right side
};

/// Split R' = kk * p_1 ... p_s used by the sieving criterion.
struct SieveDecomposition {
  u64 kk = 1;
  u64 k1 = 1;  // part of kk dividing q + 1
  std::vector<u64> sieve_primes;
  unsigned s = 0;
  unsigned r = 0;  // sieve primes dividing q + 1
  double epsilon = 1.0;
  double epsilon_prime = 1.0;
};

enum class Stage { BasicPass, SievePass, Exception, EliminatedByPrimeCount };

std::string_view stage_name(Stage stage);

struct CriterionVerdict {
  u64 q = 0;
  Stage stage = Stage::Exception;
  std::optional<SieveDecomposition> decomposition;
  double margin = 0.0;
};

/// Product of the primes of the square-free R that divide n.
u64 prime_part_dividing(u64 squarefree_r, u64 n);

/// Non-sieved sufficient condition for R | R'. R1 is the product of the
/// primes of R dividing q + 1. Throws std::invalid_argument for even q or R
/// not dividing R'.
ConditionResult basic_condition(const PrimePowerCtx& ctx, u64 R, u64 R1);

/// Builds the decomposition of R' whose sieve primes are `sieve_primes`.
SieveDecomposition make_decomposition(const PrimePowerCtx& ctx, std::vector<u64> sieve_primes);

/// Sieving condition. Throws std::invalid_argument when epsilon <= 0.
ConditionResult sieve_condition(const PrimePowerCtx& ctx, const SieveDecomposition& dec);

/// Moves the largest remaining prime of R' into the sieve set one at a time,
/// stopping when the primes run out or epsilon would drop to zero or below.
/// Returns every prefix with s >= 1, or the single s = 0 split when R' = 1.
std::vector<SieveDecomposition> greedy_decompose(const PrimePowerCtx& ctx);

/// Settles t1 <= t(q) <= t2 when it returns true. Requires 2 <= t1 <= t2.
bool algorithm1(unsigned t1, unsigned t2);

/// Runs the full criterion pipeline for one prime power.
CriterionVerdict evaluate(const PrimePowerCtx& ctx);

/// One verdict per odd prime power in [lo, hi], ascending in q.
std::vector<CriterionVerdict> scan_interval(u64 lo, u64 hi, unsigned threads = 1);

struct PrimeCountCutoff {
  unsigned cutoff = 0;  // t(q) >= cutoff is settled
  double q0 = 0.0;      // (2 * 4514.7)^4
  double w_supremum = 0.0;
  unsigned max_prime_count_below_q0 = 0;  // most distinct primes of n <= q0^2 - 1
};

/// Certifies that t(q) >= 14 is settled: q >= q0 by the W(R) bound, q < q0 by
/// algorithm1(t, t) for every t from 14 up to the most prime factors an
/// integer below q0^2 can have. Throws std::logic_error if a step fails.
PrimeCountCutoff prime_count_cutoff_details();
unsigned prime_count_cutoff();

}  // namespace twoprim
