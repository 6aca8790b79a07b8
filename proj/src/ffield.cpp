#include "twoprim/ffield.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace twoprim {
namespace {

using Poly = std::vector<u64>;  // coefficients, lowest degree first

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

// a * b mod (monic x^n + modulus), all coefficients mod p.
Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& modulus, u64 p) {
  const std::size_t n = modulus.size();
  Poly prod(2 * n, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = (prod[i + j] + mulmod(a[i], b[j], p)) % p;
    }
  }
  for (std::size_t i = prod.size(); i-- > n;) {
    const u64 c = prod[i];
    if (c == 0) continue;
    prod[i] = 0;
    for (std::size_t j = 0; j < n; ++j) {
      prod[i - n + j] = (prod[i - n + j] + mulmod(p - c, modulus[j], p)) % p;
    }
  }
  prod.resize(n);
  return prod;
}

Poly poly_powmod(Poly base, u64 exp, const Poly& modulus, u64 p) {
  Poly result(modulus.size(), 0);
  result[0] = 1;
  while (exp) {
    if (exp & 1) result = poly_mulmod(result, base, modulus, p);
    base = poly_mulmod(base, base, modulus, p);
    exp >>= 1;
  }
  return result;
}

// Remainder of a modulo b (b nonzero, trimmed).
Poly poly_rem(Poly a, const Poly& b, u64 p) {
  trim(a);
  const u64 lead_inv = powmod(b.back(), p - 2, p);
  while (a.size() >= b.size()) {
    const u64 c = mulmod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t j = 0; j < b.size(); ++j) {
      a[shift + j] = (a[shift + j] + mulmod(p - c, b[j], p)) % p;
    }
    trim(a);
  }
  return a;
}

Poly poly_gcd(Poly a, Poly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Rabin's test for the monic polynomial x^n + modulus.
bool is_irreducible(const Poly& modulus, u64 p) {
  const std::size_t n = modulus.size();
  Poly full = modulus;
  full.push_back(1);
  Poly x(n, 0);
  if (n == 1) return true;
  x[1] = 1;

  // frob[i] = x^{p^i} mod f
  std::vector<Poly> frob{x};
  for (std::size_t i = 1; i <= n; ++i) {
    frob.push_back(poly_powmod(frob.back(), p, modulus, p));
  }
  if (frob[n] != x) return false;

  const Factorization nf = factorize(n);
  for (const auto& f : nf.factors) {
    Poly h = frob[n / f.prime];
    h[1] = (h[1] + p - 1) % p;
    Poly g = poly_gcd(full, h, p);
    if (g.size() != 1) return false;
  }
  return true;
}

Poly first_irreducible(std::size_t n, u64 p) {
  Poly coeffs(n, 0);
  while (true) {
    if (coeffs[0] != 0 && is_irreducible(coeffs, p)) return coeffs;
    std::size_t i = 0;
    while (i < n && ++coeffs[i] == p) coeffs[i++] = 0;
    if (i == n) throw std::logic_error("build_field: no irreducible polynomial found");
  }
}

}  // namespace

QuadExtField::QuadExtField(PrimePowerCtx ctx) : ctx_(std::move(ctx)) {
  if (ctx_.q % 2 == 0) throw std::invalid_argument("build_field: q must be odd");
  order_ = ctx_.group_order();
  degree_ = 2 * ctx_.k;
  if (degree_ > kMaxDegree) throw std::invalid_argument("build_field: degree too large");

  modulus_ = first_irreducible(degree_, ctx_.p);
  one_.coords[0] = 1;

  Poly xq(degree_, 0);
  xq[1] = 1;
  xq = poly_powmod(xq, ctx_.q, modulus_, ctx_.p);
  FieldElem xq_elem;
  for (std::size_t i = 0; i < degree_; ++i) xq_elem.coords[i] = static_cast<std::uint32_t>(xq[i]);
  FieldElem col = one_;
  for (std::size_t i = 0; i < degree_; ++i) {
    frobenius_columns_.push_back(col);
    col = mul(col, xq_elem);
  }

  bool found = false;
  for (u64 c = 0; c < ctx_.p && !found; ++c) {
    FieldElem cand = variable();
    cand.coords[0] = static_cast<std::uint32_t>(c);
    if (has_full_order(cand)) {
      a_ = cand;
      found = true;
    }
  }
  // Shifted variables all failing is possible in principle; fall back to the
  // packed enumeration order.
  for (u64 packed = 2; !found && packed < order_ + 1; ++packed) {
    FieldElem cand = unpack(packed);
    if (has_full_order(cand)) {
      a_ = cand;
      found = true;
    }
  }
  if (!found) throw std::logic_error("build_field: no primitive element found");
  zeta_ = pow(a_, ctx_.odd_part);
}

FieldElem QuadExtField::one() const { return one_; }

FieldElem QuadExtField::from_base(u64 c) const {
  FieldElem u;
  u.coords[0] = static_cast<std::uint32_t>(c % ctx_.p);
  return u;
}

FieldElem QuadExtField::variable() const {
  FieldElem u;
  u.coords[1] = 1;
  return u;
}

FieldElem QuadExtField::add(const FieldElem& u, const FieldElem& v) const {
  FieldElem w;
  const u64 p = ctx_.p;
  for (std::size_t i = 0; i < degree_; ++i) {
    u64 s = u64{u.coords[i]} + v.coords[i];
    w.coords[i] = static_cast<std::uint32_t>(s >= p ? s - p : s);
  }
  return w;
}

FieldElem QuadExtField::sub(const FieldElem& u, const FieldElem& v) const {
  FieldElem w;
  const u64 p = ctx_.p;
  for (std::size_t i = 0; i < degree_; ++i) {
    u64 s = u64{u.coords[i]} + p - v.coords[i];
    w.coords[i] = static_cast<std::uint32_t>(s >= p ? s - p : s);
  }
  return w;
}

FieldElem QuadExtField::neg(const FieldElem& u) const { return sub(FieldElem{}, u); }

FieldElem QuadExtField::scale(const FieldElem& u, u64 c) const {
  FieldElem w;
  c %= ctx_.p;
  for (std::size_t i = 0; i < degree_; ++i) {
    w.coords[i] = static_cast<std::uint32_t>(u64{u.coords[i]} * c % ctx_.p);
  }
  return w;
}

FieldElem QuadExtField::mul(const FieldElem& u, const FieldElem& v) const {
  const u64 p = ctx_.p;
  FieldElem w;
  if (degree_ == 2) {
    // x^2 = -c1 x - c0
    const u64 a0 = u.coords[0], a1 = u.coords[1], b0 = v.coords[0], b1 = v.coords[1];
    const u64 lo = a0 * b0 % p;
    const u64 mid = (a0 * b1 % p + a1 * b0 % p) % p;
    const u64 hi = a1 * b1 % p;
    const u64 r0 = (lo + (p - hi) * modulus_[0] % p) % p;
    const u64 r1 = (mid + (p - hi) * modulus_[1] % p) % p;
    w.coords[0] = static_cast<std::uint32_t>(r0);
    w.coords[1] = static_cast<std::uint32_t>(r1);
    return w;
  }
  std::array<u64, 2 * kMaxDegree> prod{};
  for (std::size_t i = 0; i < degree_; ++i) {
    if (u.coords[i] == 0) continue;
    for (std::size_t j = 0; j < degree_; ++j) {
      prod[i + j] = (prod[i + j] + u64{u.coords[i]} * v.coords[j] % p) % p;
    }
  }
  for (std::size_t i = 2 * degree_ - 1; i-- > degree_;) {
    const u64 c = prod[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j < degree_; ++j) {
      prod[i - degree_ + j] = (prod[i - degree_ + j] + (p - c) * modulus_[j] % p) % p;
    }
  }
  for (std::size_t i = 0; i < degree_; ++i) w.coords[i] = static_cast<std::uint32_t>(prod[i]);
  return w;
}

FieldElem QuadExtField::pow(const FieldElem& u, u64 exp) const {
  if (is_zero(u)) return exp == 0 ? one_ : FieldElem{};
  exp %= order_;
  FieldElem result = one_;
  FieldElem base = u;
  while (exp) {
    if (exp & 1) result = mul(result, base);
    base = mul(base, base);
    exp >>= 1;
  }
  return result;
}

FieldElem QuadExtField::inv(const FieldElem& u) const {
  if (is_zero(u)) throw std::domain_error("inv: zero has no inverse");
  return pow(u, order_ - 1);
}

FieldElem QuadExtField::frobenius(const FieldElem& u) const {
  const u64 p = ctx_.p;
  FieldElem w;
  for (std::size_t i = 0; i < degree_; ++i) {
    const u64 c = u.coords[i];
    if (c == 0) continue;
    const FieldElem& col = frobenius_columns_[i];
    for (std::size_t j = 0; j < degree_; ++j) {
      w.coords[j] = static_cast<std::uint32_t>((w.coords[j] + c * col.coords[j] % p) % p);
    }
  }
  return w;
}

u64 QuadExtField::element_order(const FieldElem& u) const {
  if (is_zero(u)) throw std::domain_error("element_order: zero has no order");
  u64 t = order_;
  for (const auto& f : ctx_.fact_q2m1.factors) {
    for (unsigned e = 0; e < f.multiplicity; ++e) t /= f.prime;
    FieldElem g = pow(u, t);
    while (!is_one(g)) {
      g = pow(g, f.prime);
      t *= f.prime;
    }
  }
  return t;
}

bool QuadExtField::has_full_order(const FieldElem& u) const {
  if (is_zero(u)) return false;
  if (!is_one(pow(u, order_))) return false;
  for (const auto& f : ctx_.fact_q2m1.factors) {
    if (is_one(pow(u, order_ / f.prime))) return false;
  }
  return true;
}

u64 QuadExtField::pack(const FieldElem& u) const {
  u64 v = 0;
  for (std::size_t i = degree_; i-- > 0;) v = v * ctx_.p + u.coords[i];
  return v;
}

FieldElem QuadExtField::unpack(u64 packed) const {
  FieldElem u;
  for (std::size_t i = 0; i < degree_; ++i) {
    u.coords[i] = static_cast<std::uint32_t>(packed % ctx_.p);
    packed /= ctx_.p;
  }
  return u;
}

std::string QuadExtField::to_string(const FieldElem& u) const {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < degree_; ++i) {
    if (i) out << ' ';
    out << u.coords[i];
  }
  out << ']';
  return out.str();
}

bool is_two_primitive_exponent(u64 j, const PrimePowerCtx& ctx) {
  return gcd(j, ctx.group_order()) == 2;
}

FieldElem translate_class_key(const FieldElem& u, const QuadExtField& fld) {
  FieldElem key = fld.sub(fld.frobenius(u), u);
  if (fld.is_zero(key)) throw std::domain_error("translate_class_key: element lies in F_q");
  return key;
}

std::optional<FieldElem> line_class_key(const FieldElem& u, const FieldElem& gamma,
                                        const QuadExtField& fld) {
  if (fld.is_zero(gamma)) throw std::domain_error("line_class_key: gamma must be nonzero");
  const FieldElem v = fld.div(u, gamma);
  FieldElem key = fld.sub(fld.frobenius(v), v);
  if (fld.is_zero(key)) return std::nullopt;
  return key;
}

}  // namespace twoprim
