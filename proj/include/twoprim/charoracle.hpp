#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "twoprim/ffield.hpp"

namespace twoprim {

/// Fields above this size are refused: the oracle keeps a dense log table.
inline constexpr u64 kOracleCap = 200;

using ComplexVal = std::complex<double>;

/// chi_t(a^j) = exp(2 pi i t j / (q^2 - 1)).
struct CharIndex {
  u64 t = 0;
  u64 order = 1;
};

/// Multiplicative characters of F_{q^2}^* evaluated through a discrete-log
/// table built by one sweep over the powers of a. Read-only after
/// construction.
class CharacterOracle {
 public:
  /// Throws std::invalid_argument when q exceeds kOracleCap.
  explicit CharacterOracle(const QuadExtField& fld);

  const QuadExtField& field() const { return fld_; }
  u64 order() const { return fld_.order(); }

  /// log_a(u). Throws std::domain_error on zero.
  u64 log(const FieldElem& u) const;

  CharIndex character(u64 t) const;
  /// Every character of order d, ascending t. d must divide q^2 - 1.
  std::vector<CharIndex> characters_of_order(u64 d) const;

  ComplexVal char_eval(const CharIndex& chi, const FieldElem& u) const;
  /// (chi psi)(u).
  ComplexVal char_eval(const CharIndex& chi, const CharIndex& psi, const FieldElem& u) const;

  /// B = sum over x in F_q of chi(theta + x). Throws for theta in F_q.
  ComplexVal translate_sum_B(const CharIndex& chi, const FieldElem& theta) const;

  /// Character-sum form of the m-free indicator.
  double omega_m(const FieldElem& x, u64 m) const;
  /// Character-sum form of the k-th power indicator.
  double w_k_indicator(const FieldElem& x, u64 k) const;
  /// Omega_R (w_2 - w_4).
  double gamma_R(const FieldElem& x, u64 R) const;
  /// Same indicator through the combined double sum with l_delta weights.
  double gamma_R_expanded(const FieldElem& x, u64 R) const;

  /// gcd(m, (q^2 - 1) / ord x) = 1.
  bool is_m_free(const FieldElem& x, u64 m) const;
  /// x^{(q^2-1)/k} = 1.
  bool is_kth_power(const FieldElem& x, u64 k) const;
  /// R-free square that is not a fourth power.
  bool gamma_predicate(const FieldElem& x, u64 R) const;

  /// The elements theta + x, x in F_q, in a fixed order.
  std::vector<FieldElem> translate_set(const FieldElem& theta) const;
  /// One theta per translate class, ascending exponent.
  std::vector<FieldElem> translate_representatives() const;

  struct NCount {
    long direct = 0;
    double via_formula = 0.0;
  };
  /// Number of R-free squares that are not fourth powers on the line
  /// alpha (theta + F_q): directly, and through the Y-sum identity.
  NCount count_N_R(const FieldElem& theta, const FieldElem& alpha, u64 R) const;
  /// Direct count only.
  long count_N_R_direct(const FieldElem& theta, const FieldElem& alpha, u64 R) const;

  /// N_m >= sum N_{r_i} - (s - 1) N_{r_0} with direct counts. Throws
  /// std::invalid_argument unless gcd(r_i, r_j) = r_0 for i != j,
  /// lcm(r_i) = m and m | R'.
  bool check_sieve_inequality(const FieldElem& theta, const FieldElem& alpha, u64 m, u64 r0,
                              std::span<const u64> rs) const;

  /// Y(chi) = X(chi, chi_0) + X(chi, eta) - X(chi, eta_1) - X(chi, eta_2).
  ComplexVal Y(const CharIndex& chi, const FieldElem& theta, const FieldElem& alpha) const;

 private:
  QuadExtField fld_;
  std::vector<std::uint32_t> log_;  // by packed element
  std::vector<FieldElem> base_field_;  // F_q, 0 first
  Factorization order_fact_;

  void require_divisor(u64 m) const;
  ComplexVal sum_over_order(const FieldElem& x, u64 d) const;
};

struct OracleCheck {
  std::string name;
  bool passed = false;
  double max_error = 0.0;
  double tolerance = 0.0;
  std::size_t cases = 0;
};

/// Translate sums B grouped by character order.
struct BSumRow {
  u64 order = 0;
  std::size_t characters = 0;
  bool divides_q_plus_1 = false;
  double max_deviation = 0.0;  // from -1 or from sqrt(q)
};

struct OracleSuiteReport {
  u64 q = 0;
  std::vector<OracleCheck> checks;
  std::vector<BSumRow> b_table;

  bool passed() const;
};

/// Every identity the oracle knows, on one field: orthogonality, character
/// census, B sums, the Omega / w / Gamma indicators against exact predicates,
/// the N_R identity for alpha in {1, a}, the empirical Y bounds and
/// `sieve_families` random sieving-inequality families drawn from `seed`.
OracleSuiteReport run_oracle_suite(const QuadExtField& fld, std::uint64_t seed = 1,
                                   std::size_t sieve_families = 100);

}  // namespace twoprim
