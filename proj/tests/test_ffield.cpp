#include <doctest.h>

#include <random>
#include <set>
#include <stdexcept>

#include "oracles.hpp"
#include "twoprim/ffield.hpp"

using namespace twoprim;

TEST_CASE("build_field basics") {
  for (u64 q : {3, 5, 7, 9, 25, 27, 81, 121, 125}) {
    CAPTURE(q);
    const QuadExtField fld = oracle::field(q);
    CHECK(fld.order() == q * q - 1);
    CHECK(fld.degree() == 2 * fld.ctx().k);
    CHECK(oracle::naive_order(fld, fld.primitive()) == q * q - 1);
    const u64 d = fld.ctx().two_adic_d;
    CHECK(fld.is_one(fld.pow(fld.zeta(), u64{1} << d)));
    CHECK(fld.pow(fld.zeta(), u64{1} << (d - 1)) == fld.neg(fld.one()));
  }
  CHECK(oracle::field(3).order() == 8);
  CHECK(oracle::field(9).degree() == 4);
  CHECK(oracle::naive_order(oracle::field(9), oracle::field(9).primitive()) == 80);
  CHECK_THROWS_AS(QuadExtField(make_prime_power_ctx(2, 2)), std::invalid_argument);
}

TEST_CASE("primitive element for q = 3541 passes the prime-divisor order test") {
  const QuadExtField fld = oracle::field(3541);
  const u64 n = 12538680;
  REQUIRE(fld.order() == n);
  CHECK(fld.is_one(fld.pow(fld.primitive(), n)));
  for (auto [prime, e] : oracle::trial_division(n)) {
    CHECK_FALSE(fld.is_one(fld.pow(fld.primitive(), n / prime)));
  }
  CHECK(fld.element_order(fld.primitive()) == n);
}

TEST_CASE("construction is deterministic and picks the first irreducible modulus") {
  const QuadExtField a = oracle::field(49);
  const QuadExtField b = oracle::field(49);
  CHECK(std::vector<u64>(a.modulus().begin(), a.modulus().end()) ==
        std::vector<u64>(b.modulus().begin(), b.modulus().end()));
  CHECK(a.primitive() == b.primitive());

  // Degree 2: the first x^2 + c1 x + c0 (c0 varying fastest) without a root.
  for (u64 p : {3, 5, 7, 11, 13, 101}) {
    CAPTURE(p);
    std::vector<u64> expected;
    for (u64 c1 = 0; c1 < p && expected.empty(); ++c1) {
      for (u64 c0 = 0; c0 < p && expected.empty(); ++c0) {
        bool root = false;
        for (u64 x = 0; x < p; ++x) root = root || (x * x + c1 * x + c0) % p == 0;
        if (!root) expected = {c0, c1};
      }
    }
    const QuadExtField fld = oracle::field(p);
    CHECK(std::vector<u64>(fld.modulus().begin(), fld.modulus().end()) == expected);
  }
}

TEST_CASE("field axioms on small fields") {
  const QuadExtField fld = oracle::field(9);
  const auto elems = oracle::all_elements(fld);
  for (const auto& u : elems) {
    if (fld.is_zero(u)) continue;
    CHECK(fld.is_one(fld.mul(fld.inv(u), u)));
    for (const auto& v : elems) {
      if (!fld.is_zero(v) && fld.is_zero(fld.mul(u, v))) FAIL("zero divisor");
    }
  }
  CHECK_THROWS_AS(fld.inv(fld.zero()), std::domain_error);
  CHECK(fld.is_one(fld.pow(fld.primitive(), fld.order())));
  CHECK(fld.is_one(fld.mul(fld.inv(fld.primitive()), fld.primitive())));
  CHECK(fld.is_one(fld.pow(fld.zero(), 0)));
  CHECK(fld.is_zero(fld.pow(fld.zero(), 5)));

  for (u64 packed = 0; packed <= fld.order(); ++packed) CHECK(fld.pack(fld.unpack(packed)) == packed);
}

TEST_CASE("Frobenius is additive and fixes exactly q elements") {
  std::mt19937_64 rng(11);
  for (u64 q : {5, 9, 27, 121, 3541}) {
    CAPTURE(q);
    const QuadExtField fld = oracle::field(q);
    std::uniform_int_distribution<u64> dist(0, fld.order());
    for (int i = 0; i < 100; ++i) {
      const FieldElem u = fld.unpack(dist(rng));
      const FieldElem v = fld.unpack(dist(rng));
      CHECK(fld.pow(fld.add(u, v), fld.p()) == fld.add(fld.pow(u, fld.p()), fld.pow(v, fld.p())));
      CHECK(fld.frobenius(u) == fld.pow(u, q));
    }
  }
  for (u64 q : {3, 5, 9, 25, 27}) {
    const QuadExtField fld = oracle::field(q);
    u64 fixed = 0;
    for (const auto& u : oracle::all_elements(fld)) fixed += fld.in_base_field(u);
    CHECK(fixed == q);
  }
}

TEST_CASE("element_order") {
  const QuadExtField f5 = oracle::field(5);
  CHECK(f5.element_order(f5.one()) == 1);
  CHECK(f5.element_order(f5.primitive()) == 24);
  CHECK(f5.element_order(f5.pow(f5.primitive(), 2)) == 12);
  CHECK_THROWS_AS(f5.element_order(f5.zero()), std::domain_error);

  std::mt19937_64 rng(5);
  for (u64 q : {25, 27, 49, 125}) {
    const QuadExtField fld = oracle::field(q);
    std::uniform_int_distribution<u64> dist(0, fld.order() - 1);
    for (int i = 0; i < 1000; ++i) {
      const u64 j = dist(rng);
      const u64 expected = fld.order() / oracle::naive_gcd(j, fld.order());
      if (fld.element_order(fld.primitive_pow(j)) != expected) FAIL("order of a^" << j);
    }
  }
}

TEST_CASE("two-primitive exponents match a brute-force order census") {
  CHECK(is_two_primitive_exponent(2, *odd_prime_power_ctx(5)));
  CHECK_FALSE(is_two_primitive_exponent(4, *odd_prime_power_ctx(5)));
  for (u64 q : {3, 5, 7, 9, 11, 13}) {
    CAPTURE(q);
    const QuadExtField fld = oracle::field(q);
    u64 by_exponent = 0;
    for (u64 j = 1; j <= fld.order(); ++j) by_exponent += is_two_primitive_exponent(j, fld.ctx());
    u64 by_order = 0;
    for (const auto& u : oracle::all_elements(fld)) {
      if (!fld.is_zero(u)) by_order += oracle::naive_order(fld, u) == fld.order() / 2;
    }
    u64 phi_half = 0;  // phi((q^2 - 1) / 2) by counting
    for (u64 i = 1; i <= fld.order() / 2; ++i) phi_half += oracle::naive_gcd(i, fld.order() / 2) == 1;
    CHECK(by_exponent == by_order);
    CHECK(by_order == phi_half);
  }
}

TEST_CASE("translate_class_key") {
  std::mt19937_64 rng(3);
  for (u64 q : {5, 9, 27, 49}) {
    CAPTURE(q);
    const QuadExtField fld = oracle::field(q);
    const auto fq = oracle::base_field(fld);
    std::uniform_int_distribution<u64> dist(0, fld.order());
    for (int i = 0; i < 20; ++i) {
      const FieldElem u = fld.unpack(dist(rng));
      if (fld.in_base_field(u)) {
        CHECK_THROWS_AS(translate_class_key(u, fld), std::domain_error);
        continue;
      }
      const FieldElem key = translate_class_key(u, fld);
      CHECK_FALSE(fld.is_zero(key));
      for (const auto& x : fq) CHECK(translate_class_key(fld.add(u, x), fld) == key);
    }
  }
  const QuadExtField f5 = oracle::field(5);
  std::set<u64> keys;
  u64 outside = 0;
  for (const auto& u : oracle::all_elements(f5)) {
    if (f5.in_base_field(u)) continue;
    ++outside;
    keys.insert(f5.pack(translate_class_key(u, f5)));
  }
  CHECK(outside == 20);
  CHECK(keys.size() == 4);
}

TEST_CASE("line_class_key") {
  const QuadExtField fld = oracle::field(5);
  const auto fq = oracle::base_field(fld);
  CHECK_THROWS_AS(line_class_key(fld.one(), fld.zero(), fld), std::domain_error);
  for (const auto& u : oracle::all_elements(fld)) {
    if (fld.in_base_field(u)) {
      CHECK_FALSE(line_class_key(u, fld.one(), fld).has_value());
    } else {
      CHECK(*line_class_key(u, fld.one(), fld) == translate_class_key(u, fld));
    }
  }
  for (u64 g = 0; g < fld.order(); g += 5) {
    const FieldElem gamma = fld.primitive_pow(g);
    std::set<u64> keys;
    for (const auto& u : oracle::all_elements(fld)) {
      if (auto key = line_class_key(u, gamma, fld)) keys.insert(fld.pack(*key));
    }
    CHECK(keys.size() == 4);
    const FieldElem theta = fld.variable();
    const auto base_key = line_class_key(fld.mul(gamma, theta), gamma, fld);
    REQUIRE(base_key.has_value());
    for (const auto& x : fq) {
      CHECK(line_class_key(fld.mul(gamma, fld.add(theta, x)), gamma, fld) == base_key);
    }
  }
}
