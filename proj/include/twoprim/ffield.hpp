#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "twoprim/arith.hpp"

namespace twoprim {

// q < 2^32 with p >= 3 keeps the degree of F_{q^2} over F_p at most 40.
inline constexpr std::size_t kMaxDegree = 40;

/// Element of F_{q^2} as coordinates against the power basis 1, x, ..., x^{n-1}
/// of the defining modulus. Coordinates past the field degree stay zero.
struct FieldElem {
  std::array<std::uint32_t, kMaxDegree> coords{};

  friend bool operator==(const FieldElem&, const FieldElem&) = default;
};

/// F_{q^2} as a single degree-2k extension of F_p, q = p^k, together with a
/// fixed primitive element a and zeta = a^{odd part of q^2 - 1}.
///
/// Construction is deterministic: the modulus is the first irreducible monic
/// polynomial in ascending coefficient order (c_0 least significant), and a is
/// the first of x, x+1, x+2, ... of full order q^2 - 1. Immutable afterwards.
class QuadExtField {
 public:
  explicit QuadExtField(PrimePowerCtx ctx);

  const PrimePowerCtx& ctx() const { return ctx_; }
  u64 p() const { return ctx_.p; }
  u64 q() const { return ctx_.q; }
  /// q^2 - 1.
  u64 order() const { return order_; }
  std::size_t degree() const { return degree_; }
  /// Coefficients c_0 .. c_{n-1} of the monic modulus x^n + ... + c_0.
  std::span<const u64> modulus() const { return modulus_; }

  const FieldElem& primitive() const { return a_; }
  const FieldElem& zeta() const { return zeta_; }

  FieldElem zero() const { return {}; }
  FieldElem one() const;
  FieldElem from_base(u64 c) const;
  /// The class of the polynomial variable.
  FieldElem variable() const;

  bool is_zero(const FieldElem& u) const { return u == FieldElem{}; }
  bool is_one(const FieldElem& u) const { return u == one_; }

  FieldElem add(const FieldElem& u, const FieldElem& v) const;
  FieldElem sub(const FieldElem& u, const FieldElem& v) const;
  FieldElem neg(const FieldElem& u) const;
  FieldElem mul(const FieldElem& u, const FieldElem& v) const;
  FieldElem scale(const FieldElem& u, u64 c) const;
  /// Throws std::domain_error on zero.
  FieldElem inv(const FieldElem& u) const;
  FieldElem div(const FieldElem& u, const FieldElem& v) const { return mul(u, inv(v)); }
  FieldElem pow(const FieldElem& u, u64 exp) const;
  /// a^e for e taken mod q^2 - 1.
  FieldElem primitive_pow(u64 e) const { return pow(a_, e); }

  /// u^q, through a precomputed F_p-linear map.
  FieldElem frobenius(const FieldElem& u) const;
  bool in_base_field(const FieldElem& u) const { return frobenius(u) == u; }

  /// Least t >= 1 with u^t = 1. Throws std::domain_error on zero.
  u64 element_order(const FieldElem& u) const;

  /// Bijection F_{q^2} -> [0, q^2): coordinates read as base-p digits.
  u64 pack(const FieldElem& u) const;
  FieldElem unpack(u64 packed) const;

  std::string to_string(const FieldElem& u) const;

 private:
  PrimePowerCtx ctx_;
  u64 order_ = 0;
  std::size_t degree_ = 0;
  std::vector<u64> modulus_;
  FieldElem one_;
  FieldElem a_;
  FieldElem zeta_;
  std::vector<FieldElem> frobenius_columns_;  // (x^i)^q

  bool has_full_order(const FieldElem& u) const;
};

/// True iff gcd(j, q^2 - 1) = 2, i.e. a^j is 2-primitive.
bool is_two_primitive_exponent(u64 j, const PrimePowerCtx& ctx);

/// u^q - u for u outside F_q. Two such elements differ by an element of F_q
/// exactly when their keys agree. Throws std::domain_error for u in F_q.
FieldElem translate_class_key(const FieldElem& u, const QuadExtField& fld);

/// translate_class_key(u / gamma), or nullopt when u / gamma lies in F_q and u
/// is on no line of gamma. Throws std::domain_error for gamma = 0.
std::optional<FieldElem> line_class_key(const FieldElem& u, const FieldElem& gamma,
                                        const QuadExtField& fld);

}  // namespace twoprim
