#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "twoprim/ffield.hpp"

namespace twoprim {

/// The q + 1 multipliers gamma sufficient for the line property: a^j and
/// zeta * a^j for j = 0, q - 1, 2(q - 1), ... below (q^2 - 1) / 2.
struct GammaSet {
  std::vector<FieldElem> gammas;
  std::vector<u64> exponents;  // gammas[i] = a^exponents[i]
};

GammaSet build_gamma_set(const QuadExtField& fld);

enum class Property { Translate, Line };

std::string_view property_name(Property property);

/// A translate set or line {gamma (theta + x) : x in F_q} holding no
/// 2-primitive element. For translates gamma = 1. `key` is the translate class
/// key of theta.
struct Witness {
  FieldElem gamma;
  FieldElem key;
  FieldElem theta;
  std::size_t gamma_index = 0;
};

struct PropertyReport {
  u64 q = 0;
  Property property = Property::Translate;
  bool holds = false;
  std::optional<Witness> witness;
  // Classes shown to contain a 2-primitive element; for lines, those of the
  // failing gamma or q - 1 when every gamma passes.
  u64 classes_covered = 0;
  std::chrono::duration<double, std::milli> elapsed{};
};

/// Exponents j in [1, q^2 - 1) with gcd(j, q^2 - 1) = 2, ascending.
std::vector<u64> two_primitive_exponents(const PrimePowerCtx& ctx);

/// Translate class of every power a^e, e in [0, q^2 - 1). Classes are numbered
/// in order of first appearance; elements of F_q carry kNone.
class TranslateClassTable {
 public:
  static constexpr std::uint32_t kNone = UINT32_MAX;

  /// Throws std::length_error if the table would exceed table_memory_cap_bytes().
  explicit TranslateClassTable(const QuadExtField& fld);

  std::uint32_t class_of_exponent(u64 e) const { return classes_[e]; }
  std::size_t num_classes() const { return keys_.size(); }
  const FieldElem& key(std::uint32_t cls) const { return keys_[cls]; }
  u64 representative_exponent(std::uint32_t cls) const { return representatives_[cls]; }
  u64 order() const { return classes_.size(); }

 private:
  std::vector<std::uint32_t> classes_;
  std::vector<FieldElem> keys_;
  std::vector<u64> representatives_;
};

/// Memory cap for exponent-indexed tables, from TWOPRIM_MAX_TABLE_MB
/// (default 4096 MiB).
std::size_t table_memory_cap_bytes();

struct LineCheck {
  bool holds = false;
  u64 classes_covered = 0;
  std::optional<std::uint32_t> missing_class;
};

/// Whether every line of gamma = a^gamma_exponent contains a 2-primitive
/// element, scanning `two_prim` in order and stopping at q - 1 classes.
LineCheck check_lines_fast(const TranslateClassTable& table, std::span<const u64> two_prim,
                           u64 gamma_exponent);

/// Exponent-and-pairwise-test verifier, step for step.
PropertyReport verify_translate_literal(const QuadExtField& fld);
/// Marks translate_class_key over 2-primitive powers.
PropertyReport verify_translate_fast(const QuadExtField& fld);

/// Runs the pairwise CheckLines procedure for every gamma.
PropertyReport verify_line_literal(const QuadExtField& fld, unsigned threads = 1);
/// Class-table verifier; the lowest failing gamma index is the witness.
PropertyReport verify_line_fast(const QuadExtField& fld, unsigned threads = 1);

/// Independent check of a failure witness: theta is outside F_q with the
/// stated key, and no element gamma (theta + x) has order (q^2 - 1) / 2, with
/// orders found by repeated multiplication.
bool recheck_witness(const QuadExtField& fld, const Witness& witness);

}  // namespace twoprim
