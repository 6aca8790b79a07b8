#include "twoprim/charoracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace twoprim {

CharacterOracle::CharacterOracle(const QuadExtField& fld) : fld_(fld) {
  if (fld_.q() > kOracleCap) {
    throw std::invalid_argument("q exceeds oracle cap (" + std::to_string(kOracleCap) + ")");
  }
  const u64 n = fld_.order();
  log_.assign(n + 1, 0);
  FieldElem v = fld_.one();
  for (u64 e = 0; e < n; ++e, v = fld_.mul(v, fld_.primitive())) {
    log_[fld_.pack(v)] = static_cast<std::uint32_t>(e);
  }
  base_field_.push_back(fld_.zero());
  const FieldElem gen = fld_.primitive_pow(fld_.q() + 1);
  FieldElem b = fld_.one();
  for (u64 m = 0; m + 1 < fld_.q(); ++m, b = fld_.mul(b, gen)) base_field_.push_back(b);
  order_fact_ = fld_.ctx().fact_q2m1;
}

u64 CharacterOracle::log(const FieldElem& u) const {
  if (fld_.is_zero(u)) throw std::domain_error("log: zero");
  return log_[fld_.pack(u)];
}

void CharacterOracle::require_divisor(u64 m) const {
  if (m == 0 || order() % m != 0) throw std::invalid_argument("oracle: m must divide q^2 - 1");
}

CharIndex CharacterOracle::character(u64 t) const {
  t %= order();
  return {t, order() / gcd(t, order())};
}

std::vector<CharIndex> CharacterOracle::characters_of_order(u64 d) const {
  require_divisor(d);
  std::vector<CharIndex> out;
  const u64 step = order() / d;
  for (u64 s = 0; s < d; ++s) {
    if (gcd(s, d) == 1) out.push_back({s * step, d});
  }
  return out;
}

ComplexVal CharacterOracle::char_eval(const CharIndex& chi, const FieldElem& u) const {
  const u64 e = mulmod(chi.t, log(u), order());
  const double angle = 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(order());
  return std::polar(1.0, angle);
}

ComplexVal CharacterOracle::char_eval(const CharIndex& chi, const CharIndex& psi,
                                      const FieldElem& u) const {
  return char_eval(character(chi.t + psi.t), u);
}

std::vector<FieldElem> CharacterOracle::translate_set(const FieldElem& theta) const {
  std::vector<FieldElem> out;
  out.reserve(base_field_.size());
  for (const FieldElem& x : base_field_) out.push_back(fld_.add(theta, x));
  return out;
}

std::vector<FieldElem> CharacterOracle::translate_representatives() const {
  std::vector<FieldElem> out;
  std::unordered_set<u64> seen;
  FieldElem v = fld_.one();
  for (u64 e = 0; e < order(); ++e, v = fld_.mul(v, fld_.primitive())) {
    if (fld_.in_base_field(v)) continue;
    if (seen.insert(fld_.pack(translate_class_key(v, fld_))).second) out.push_back(v);
  }
  return out;
}

ComplexVal CharacterOracle::translate_sum_B(const CharIndex& chi, const FieldElem& theta) const {
  if (fld_.in_base_field(theta)) throw std::domain_error("translate_sum_B: theta lies in F_q");
  ComplexVal sum{};
  for (const FieldElem& u : translate_set(theta)) sum += char_eval(chi, u);
  return sum;
}

ComplexVal CharacterOracle::sum_over_order(const FieldElem& x, u64 d) const {
  ComplexVal sum{};
  for (const CharIndex& chi : characters_of_order(d)) sum += char_eval(chi, x);
  return sum;
}

double CharacterOracle::omega_m(const FieldElem& x, u64 m) const {
  require_divisor(m);
  if (fld_.is_zero(x)) throw std::domain_error("omega_m: zero");
  const Factorization mf = factorization_of_divisor(order_fact_, m);
  ComplexVal sum{};
  for (u64 d : divisors(mf)) {
    const Factorization df = factorization_of_divisor(mf, d);
    const int mu = mobius(df);
    if (mu == 0) continue;
    sum += static_cast<double>(mu) / static_cast<double>(euler_phi(df)) * sum_over_order(x, d);
  }
  const double theta_m = static_cast<double>(euler_phi(mf)) / static_cast<double>(m);
  return theta_m * sum.real();
}

double CharacterOracle::w_k_indicator(const FieldElem& x, u64 k) const {
  require_divisor(k);
  if (fld_.is_zero(x)) throw std::domain_error("w_k_indicator: zero");
  ComplexVal sum{};
  for (u64 d : divisors(factorization_of_divisor(order_fact_, k))) sum += sum_over_order(x, d);
  return sum.real() / static_cast<double>(k);
}

double CharacterOracle::gamma_R(const FieldElem& x, u64 R) const {
  return omega_m(x, R) * (w_k_indicator(x, 2) - w_k_indicator(x, 4));
}

double CharacterOracle::gamma_R_expanded(const FieldElem& x, u64 R) const {
  require_divisor(R);
  if (fld_.is_zero(x)) throw std::domain_error("gamma_R_expanded: zero");
  const Factorization rf = factorization_of_divisor(order_fact_, R);
  ComplexVal sum{};
  for (u64 d : divisors(rf)) {
    const Factorization df = factorization_of_divisor(rf, d);
    const int mu = mobius(df);
    if (mu == 0) continue;
    const double coeff = static_cast<double>(mu) / static_cast<double>(euler_phi(df));
    for (u64 delta : {1, 2, 4}) {
      const double ell = delta == 4 ? -0.5 : 0.5;
      ComplexVal inner{};
      for (const CharIndex& chi : characters_of_order(d)) {
        for (const CharIndex& psi : characters_of_order(delta)) inner += char_eval(chi, psi, x);
      }
      sum += coeff * ell * inner;
    }
  }
  const double theta_r = static_cast<double>(euler_phi(rf)) / static_cast<double>(R);
  return theta_r / 2.0 * sum.real();
}

bool CharacterOracle::is_m_free(const FieldElem& x, u64 m) const {
  require_divisor(m);
  return gcd(m, order() / fld_.element_order(x)) == 1;
}

bool CharacterOracle::is_kth_power(const FieldElem& x, u64 k) const {
  require_divisor(k);
  return fld_.is_one(fld_.pow(x, order() / k));
}

bool CharacterOracle::gamma_predicate(const FieldElem& x, u64 R) const {
  return is_m_free(x, R) && is_kth_power(x, 2) && !is_kth_power(x, 4);
}

ComplexVal CharacterOracle::Y(const CharIndex& chi, const FieldElem& theta,
                              const FieldElem& alpha) const {
  const u64 n = order();
  const CharIndex psis[4] = {character(0), character(n / 2), character(n / 4),
                             character(3 * (n / 4))};
  const double signs[4] = {1.0, 1.0, -1.0, -1.0};
  ComplexVal y{};
  for (int i = 0; i < 4; ++i) {
    ComplexVal x_sum{};
    for (const FieldElem& u : translate_set(theta)) {
      x_sum += char_eval(chi, psis[i], fld_.mul(alpha, u));
    }
    y += signs[i] * x_sum;
  }
  return y;
}

long CharacterOracle::count_N_R_direct(const FieldElem& theta, const FieldElem& alpha,
                                       u64 R) const {
  if (fld_.in_base_field(theta)) throw std::domain_error("count_N_R: theta lies in F_q");
  if (fld_.is_zero(alpha)) throw std::domain_error("count_N_R: alpha must be nonzero");
  if (R == 0 || fld_.ctx().rprime % R != 0) throw std::invalid_argument("count_N_R: R must divide R'");
  long count = 0;
  for (const FieldElem& u : translate_set(theta)) {
    if (gamma_predicate(fld_.mul(alpha, u), R)) ++count;
  }
  return count;
}

CharacterOracle::NCount CharacterOracle::count_N_R(const FieldElem& theta, const FieldElem& alpha,
                                                   u64 R) const {
  NCount out;
  out.direct = count_N_R_direct(theta, alpha, R);
  const Factorization rf = factorization_of_divisor(order_fact_, R);
  ComplexVal sum{};
  for (u64 d : divisors(rf)) {
    const Factorization df = factorization_of_divisor(rf, d);
    const int mu = mobius(df);
    if (mu == 0) continue;
    ComplexVal inner{};
    for (const CharIndex& chi : characters_of_order(d)) inner += Y(chi, theta, alpha);
    sum += static_cast<double>(mu) / static_cast<double>(euler_phi(df)) * inner;
  }
  const double theta_r = static_cast<double>(euler_phi(rf)) / static_cast<double>(R);
  out.via_formula = theta_r / 4.0 * sum.real();
  return out;
}

bool CharacterOracle::check_sieve_inequality(const FieldElem& theta, const FieldElem& alpha, u64 m,
                                             u64 r0, std::span<const u64> rs) const {
  if (rs.empty()) throw std::invalid_argument("check_sieve_inequality: empty family");
  if (m == 0 || fld_.ctx().rprime % m != 0) {
    throw std::invalid_argument("check_sieve_inequality: m must divide R'");
  }
  u64 lcm = 1;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (rs[i] == 0 || m % rs[i] != 0) {
      throw std::invalid_argument("check_sieve_inequality: r_i must divide m");
    }
    lcm = std::lcm(lcm, rs[i]);
    for (std::size_t j = i + 1; j < rs.size(); ++j) {
      if (gcd(rs[i], rs[j]) != r0) {
        throw std::invalid_argument("check_sieve_inequality: gcd(r_i, r_j) must equal r_0");
      }
    }
  }
  if (lcm != m) throw std::invalid_argument("check_sieve_inequality: lcm must equal m");
  if (r0 == 0 || m % r0 != 0) throw std::invalid_argument("check_sieve_inequality: r_0 must divide m");

  long rhs = 0;
  for (u64 r : rs) rhs += count_N_R_direct(theta, alpha, r);
  rhs -= static_cast<long>(rs.size() - 1) * count_N_R_direct(theta, alpha, r0);
  return count_N_R_direct(theta, alpha, m) >= rhs;
}

}  // namespace twoprim

namespace twoprim {
namespace {

OracleCheck make_check(std::string name, double tolerance) {
  OracleCheck c;
  c.name = std::move(name);
  c.tolerance = tolerance;
  return c;
}

void record(OracleCheck& c, double error) {
  c.max_error = std::max(c.max_error, error);
  ++c.cases;
}

void finish(OracleCheck& c) { c.passed = c.max_error <= c.tolerance; }

}  // namespace

bool OracleSuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const OracleCheck& c) { return c.passed; });
}

OracleSuiteReport run_oracle_suite(const QuadExtField& fld, std::uint64_t seed,
                                   std::size_t sieve_families) {
  const CharacterOracle oracle(fld);
  const u64 n = fld.order();
  const u64 q = fld.q();
  const double sq = std::sqrt(static_cast<double>(q));
  const Factorization& nf = fld.ctx().fact_q2m1;
  const u64 rprime = fld.ctx().rprime;
  const Factorization rf = factorization_of_divisor(nf, rprime);

  OracleSuiteReport rep;
  rep.q = q;

  std::vector<FieldElem> nonzero;
  nonzero.reserve(n);
  FieldElem v = fld.one();
  for (u64 e = 0; e < n; ++e, v = fld.mul(v, fld.primitive())) nonzero.push_back(v);
  const std::vector<FieldElem> thetas = oracle.translate_representatives();

  {
    auto c = make_check("orthogonality", 1e-6 * static_cast<double>(q * q));
    for (u64 t = 1; t < n; ++t) {
      ComplexVal sum{};
      for (const FieldElem& x : nonzero) sum += oracle.char_eval(oracle.character(t), x);
      record(c, std::abs(sum));
    }
    finish(c);
    rep.checks.push_back(c);
  }
  {
    auto c = make_check("character_census", 0.0);
    std::vector<u64> by_order(n + 1, 0);
    for (u64 t = 0; t < n; ++t) ++by_order[oracle.character(t).order];
    for (u64 d : divisors(nf)) {
      record(c, by_order[d] == euler_phi(factorization_of_divisor(nf, d)) ? 0.0 : 1.0);
    }
    finish(c);
    rep.checks.push_back(c);
  }
  {
    auto c = make_check("translate_sum_B", 1e-6);
    for (u64 d : divisors(nf)) {
      if (d == 1) continue;
      BSumRow row;
      row.order = d;
      row.divides_q_plus_1 = (q + 1) % d == 0;
      for (const CharIndex& chi : oracle.characters_of_order(d)) {
        ++row.characters;
        for (const FieldElem& theta : thetas) {
          const ComplexVal b = oracle.translate_sum_B(chi, theta);
          const double dev = row.divides_q_plus_1 ? std::abs(b + 1.0) : std::abs(std::abs(b) - sq);
          row.max_deviation = std::max(row.max_deviation, dev);
          record(c, dev);
        }
      }
      rep.b_table.push_back(row);
    }
    finish(c);
    rep.checks.push_back(c);
  }
  {
    auto c = make_check("omega_m_free", 1e-6);
    for (u64 m : squarefree_divisors(nf)) {
      for (const FieldElem& x : nonzero) {
        const double expected = oracle.is_m_free(x, m) ? 1.0 : 0.0;
        record(c, std::abs(oracle.omega_m(x, m) - expected));
      }
    }
    finish(c);
    rep.checks.push_back(c);
  }
  {
    auto c = make_check("w_k_power", 1e-6);
    for (u64 k : {2, 4}) {
      for (const FieldElem& x : nonzero) {
        const double expected = oracle.is_kth_power(x, k) ? 1.0 : 0.0;
        record(c, std::abs(oracle.w_k_indicator(x, k) - expected));
      }
    }
    finish(c);
    rep.checks.push_back(c);
  }
  {
    auto c = make_check("gamma_R", 1e-6);
    for (u64 R : divisors(rf)) {
      for (const FieldElem& x : nonzero) {
        const double expected = oracle.gamma_predicate(x, R) ? 1.0 : 0.0;
        const double direct = oracle.gamma_R(x, R);
        const double expanded = oracle.gamma_R_expanded(x, R);
        record(c, std::max({std::abs(direct - expected), std::abs(expanded - expected),
                            std::abs(direct - expanded)}));
      }
    }
    finish(c);
    rep.checks.push_back(c);
  }
  {
    auto c = make_check("N_R_identity", 1e-3);
    for (const FieldElem& alpha : {fld.one(), fld.primitive()}) {
      for (const FieldElem& theta : thetas) {
        for (u64 R : divisors(rf)) {
          const auto count = oracle.count_N_R(theta, alpha, R);
          record(c, std::abs(static_cast<double>(count.direct) - count.via_formula));
        }
      }
    }
    finish(c);
    rep.checks.push_back(c);
  }
  {
    // Bounds on Y(chi) for chi of order dividing R', alpha in {1, a}. The
    // error is the worst excess over the bound.
    auto c = make_check("Y_bounds", 1e-9);
    const bool one_mod_4 = q % 4 == 1;
    for (const FieldElem& alpha : {fld.one(), fld.primitive()}) {
      for (const FieldElem& theta : thetas) {
        for (u64 d : divisors(rf)) {
          for (const CharIndex& chi : oracle.characters_of_order(d)) {
            const ComplexVal y = oracle.Y(chi, theta, alpha);
            double excess;
            if (d == 1) {
              excess = one_mod_4 ? std::abs(static_cast<double>(q) - y) - (1.0 + 2.0 * sq)
                                 : (static_cast<double>(q) - 3.0) - y.real();
            } else if ((q + 1) % d == 0) {
              excess = std::abs(y) - (one_mod_4 ? 2.0 + 2.0 * sq : 4.0);
            } else {
              excess = std::abs(y) - 4.0 * sq;
            }
            record(c, std::max(0.0, excess));
          }
        }
      }
    }
    finish(c);
    rep.checks.push_back(c);
  }
  {
    auto c = make_check("sieve_inequality", 0.0);
    std::mt19937_64 rng(seed);
    const std::vector<u64> rdivs = divisors(rf);
    auto pick = [&](std::size_t size) {
      return std::uniform_int_distribution<std::size_t>(0, size - 1)(rng);
    };
    for (std::size_t f = 0; f < sieve_families; ++f) {
      const FieldElem& theta = thetas[pick(thetas.size())];
      const FieldElem& alpha = nonzero[pick(nonzero.size())];
      const u64 m = rdivs[pick(rdivs.size())];
      const std::vector<u64> mdivs = divisors(factorization_of_divisor(nf, m));
      const u64 r0 = mdivs[pick(mdivs.size())];
      const Factorization rest = factorization_of_divisor(nf, m / r0);
      const std::size_t s = rest.factors.empty() ? 1 : 1 + pick(rest.factors.size());
      std::vector<u64> rs(s, r0);
      // Each prime of m / r0 lands in exactly one r_i; the first s primes
      // seed distinct groups so none is left equal to r_0 by accident.
      for (std::size_t i = 0; i < rest.factors.size(); ++i) {
        rs[i < s ? i : pick(s)] *= rest.factors[i].prime;
      }
      const bool ok = oracle.check_sieve_inequality(theta, alpha, m, r0, rs);
      record(c, ok ? 0.0 : 1.0);
    }
    finish(c);
    rep.checks.push_back(c);
  }
  return rep;
}

}  // namespace twoprim
