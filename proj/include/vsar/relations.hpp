#pragma once

// Relation functions and their inverses.
//
// Numerical:        r = o_{i=1..N} v_i^{(o op_i)}
// Logical (M = 3):  r = (op1 v1 AND op2 v2) o op3 v3
// Logical (M = 5):  r = ((op1 v1 AND op2 v2) OR (op3 v1 AND op4 v2)) o op5 v3
//
// where op v = e(1)^{(o op)} o v negates v iff op = 1. A rule is the pair
// (operator powers, output r); every row of a puzzle that obeys the rule maps
// to the same r.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "vsar/atomic.hpp"
#include "vsar/hd_vector.hpp"

namespace vsar {

struct SingularRule : Error {
  using Error::Error;
};

enum class RelationKind { kNumerical, kLogicalSimple, kLogicalFull };

struct RelationSpec {
  RelationKind kind = RelationKind::kNumerical;
  int arity = 2;
  std::vector<double> op_powers;
  std::string label;
  bool identity_output = false;  // a consistent row maps to v(0) / e(0)

  [[nodiscard]] bool is_logical() const noexcept { return kind != RelationKind::kNumerical; }
  friend bool operator==(const RelationSpec&, const RelationSpec&) = default;
};

namespace relation {

// Constant and Progression share these powers; r tells them apart.
inline RelationSpec binary() { return {RelationKind::kNumerical, 2, {-1.0, 1.0}, "Binary"}; }
inline RelationSpec arithmetic_plus() { return {RelationKind::kNumerical, 3, {-1.0, -1.0, 1.0}, "Arithmetic+", true}; }
inline RelationSpec arithmetic_minus() { return {RelationKind::kNumerical, 3, {-1.0, 1.0, 1.0}, "Arithmetic-", true}; }
inline RelationSpec distribute_three() { return {RelationKind::kNumerical, 3, {1.0, 1.0, 1.0}, "DistributeThree"}; }

inline RelationSpec logical_and() { return {RelationKind::kLogicalSimple, 3, {0, 0, 0}, "AND", true}; }
inline RelationSpec logical_or() { return {RelationKind::kLogicalSimple, 3, {1, 1, 1}, "OR", true}; }
inline RelationSpec logical_diff() { return {RelationKind::kLogicalSimple, 3, {0, 1, 0}, "DIFF", true}; }

inline RelationSpec logical_and_full() { return {RelationKind::kLogicalFull, 3, {0, 0, 0, 0, 0}, "AND", true}; }
inline RelationSpec logical_or_full() { return {RelationKind::kLogicalFull, 3, {1, 1, 1, 1, 1}, "OR", true}; }
inline RelationSpec logical_diff_full() { return {RelationKind::kLogicalFull, 3, {0, 1, 0, 1, 0}, "DIFF", true}; }
inline RelationSpec logical_xor() { return {RelationKind::kLogicalFull, 3, {0, 1, 1, 0, 0}, "XOR", true}; }

}  // namespace relation

namespace detail {

inline void require_kind(const RelationSpec& spec, RelationKind kind, const char* fn) {
  if (spec.kind != kind) throw ArityError(std::string(fn) + ": relation kind does not match");
}

inline void require_inputs(std::size_t got, std::size_t want, const char* fn) {
  if (got != want) {
    throw ArityError(std::string(fn) + ": expected " + std::to_string(want) + " inputs, got " + std::to_string(got));
  }
}

inline void require_powers(const RelationSpec& spec, std::size_t want, const char* fn) {
  if (spec.op_powers.size() != want) {
    throw ArityError(std::string(fn) + ": expected " + std::to_string(want) + " operator powers, got " +
                     std::to_string(spec.op_powers.size()));
  }
}

// e(1)^{(o op)} o v
inline HdVector maybe_negate(const HdVector& v, double op, const BooleanCodec& bv) {
  return bind(power(bv.e1(), op), v);
}

inline HdVector logical_core(const HdVector& v1, const HdVector& v2, const RelationSpec& spec,
                             const BooleanCodec& bv) {
  const auto& op = spec.op_powers;
  HdVector left = logic_and(maybe_negate(v1, op[0], bv), maybe_negate(v2, op[1], bv));
  if (spec.kind == RelationKind::kLogicalSimple) return left;
  HdVector right = logic_and(maybe_negate(v1, op[2], bv), maybe_negate(v2, op[3], bv));
  return logic_or(left, right);
}

inline std::size_t logical_powers(const RelationSpec& spec) {
  return spec.kind == RelationKind::kLogicalSimple ? 3 : 5;
}

}  // namespace detail

inline HdVector rel_num(std::span<const HdVector> inputs, const RelationSpec& spec) {
  detail::require_kind(spec, RelationKind::kNumerical, "rel_num");
  detail::require_powers(spec, static_cast<std::size_t>(spec.arity), "rel_num");
  detail::require_inputs(inputs.size(), static_cast<std::size_t>(spec.arity), "rel_num");
  HdVector out = power(inputs[0], spec.op_powers[0]);
  for (std::size_t i = 1; i < inputs.size(); ++i) out = bind(out, power(inputs[i], spec.op_powers[i]));
  return out;
}

/// Solves rel_num(inputs + {v_N}, spec) = r for v_N:
/// v_N = r^{(o 1/op_M)} o (o_{i<N} v_i^{(o -op_i/op_M)}).
inline HdVector rel_num_inverse(std::span<const HdVector> inputs, const RelationSpec& spec, const HdVector& r) {
  detail::require_kind(spec, RelationKind::kNumerical, "rel_num_inverse");
  detail::require_powers(spec, static_cast<std::size_t>(spec.arity), "rel_num_inverse");
  detail::require_inputs(inputs.size(), static_cast<std::size_t>(spec.arity) - 1, "rel_num_inverse");
  const double last = spec.op_powers.back();
  if (last == 0.0) throw SingularRule("rel_num_inverse: last operator power is zero");
  HdVector out = power(r, 1.0 / last);
  for (std::size_t i = 0; i < inputs.size(); ++i) out = bind(out, power(inputs[i], -spec.op_powers[i] / last));
  return out;
}

inline HdVector rel_lgc_simple(std::span<const HdVector> inputs, const RelationSpec& spec, const BooleanCodec& bv) {
  detail::require_kind(spec, RelationKind::kLogicalSimple, "rel_lgc_simple");
  detail::require_powers(spec, 3, "rel_lgc_simple");
  detail::require_inputs(inputs.size(), 3, "rel_lgc_simple");
  return bind(detail::logical_core(inputs[0], inputs[1], spec, bv), detail::maybe_negate(inputs[2], spec.op_powers[2], bv));
}

inline HdVector rel_lgc_full(std::span<const HdVector> inputs, const RelationSpec& spec, const BooleanCodec& bv) {
  detail::require_kind(spec, RelationKind::kLogicalFull, "rel_lgc_full");
  detail::require_powers(spec, 5, "rel_lgc_full");
  detail::require_inputs(inputs.size(), 3, "rel_lgc_full");
  return bind(detail::logical_core(inputs[0], inputs[1], spec, bv), detail::maybe_negate(inputs[2], spec.op_powers[4], bv));
}

/// Dispatches on spec.kind.
inline HdVector rel_lgc(std::span<const HdVector> inputs, const RelationSpec& spec, const BooleanCodec& bv) {
  return spec.kind == RelationKind::kLogicalFull ? rel_lgc_full(inputs, spec, bv) : rel_lgc_simple(inputs, spec, bv);
}

/// Predicts v_3 from (v_1, v_2). The closed form assumes r = e(0); `r` is
/// accepted for symmetry with rel_num_inverse and is not used.
inline HdVector rel_lgc_inverse(std::span<const HdVector> inputs, const RelationSpec& spec,
                                [[maybe_unused]] const HdVector& r, const BooleanCodec& bv) {
  if (!spec.is_logical()) throw ArityError("rel_lgc_inverse: relation kind does not match");
  detail::require_powers(spec, detail::logical_powers(spec), "rel_lgc_inverse");
  detail::require_inputs(inputs.size(), 2, "rel_lgc_inverse");
  return detail::maybe_negate(detail::logical_core(inputs[0], inputs[1], spec, bv), spec.op_powers.back(), bv);
}

}  // namespace vsar
