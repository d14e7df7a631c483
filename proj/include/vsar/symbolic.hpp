#pragma once

// Brute-force symbolic rule checker. Works on integer attribute values and
// occupancy bitmasks only; shares no code with the vector pipeline, so it can
// serve as an independent oracle for it.

#include <algorithm>
#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "vsar/puzzle.hpp"

namespace vsar {

/// One component of one panel, reduced to its governing values.
/// Entity values are nullopt when the panel is empty or its objects disagree.
struct ComponentState {
  unsigned layout = 0;
  int count = 0;
  std::optional<int> type;
  std::optional<int> size;
  std::optional<int> color;

  [[nodiscard]] std::optional<int> value(Attribute a) const {
    switch (a) {
      case Attribute::kType: return type;
      case Attribute::kSize: return size;
      case Attribute::kColor: return color;
      case Attribute::kNumber: return count;
      case Attribute::kPosition: return static_cast<int>(layout);
    }
    return std::nullopt;
  }
};

inline ComponentState reduce(const ComponentPanel& panel) {
  ComponentState st;
  st.layout = panel.layout();
  st.count = panel.count();
  bool first = true;
  bool mixed = false;
  for (const auto& s : panel.slots) {
    if (!s.exist) continue;
    if (first) {
      st.type = s.type;
      st.size = s.size;
      st.color = s.color;
      first = false;
    } else if (s.type != *st.type || s.size != *st.size || s.color != *st.color) {
      mixed = true;
    }
  }
  if (mixed) st.type = st.size = st.color = std::nullopt;
  return st;
}

/// Inclusive value range of a numeric attribute within a component of the given side.
struct ValueRange {
  int lo = 0;
  int hi = 0;
};

inline ValueRange value_range(Attribute a, int side) {
  if (a == Attribute::kNumber) return {1, side * side};
  return {0, value_count(a) - 1};
}

inline std::vector<RuleLabel> numeric_labels() {
  return {{RuleFamily::kConstant, 0},       {RuleFamily::kProgression, 1},     {RuleFamily::kProgression, -1},
          {RuleFamily::kProgression, 2},    {RuleFamily::kProgression, -2},    {RuleFamily::kArithmeticPlus, 0},
          {RuleFamily::kArithmeticMinus, 0}, {RuleFamily::kDistributeThree, 0}};
}

inline std::vector<int> position_steps(int side) {
  if (side == 2) return {1, -1, 2};
  return {1, -1, 2, -2};
}

/// Arithmetic+ is union and Arithmetic- is difference on layouts.
inline std::vector<RuleLabel> position_labels(int side) {
  std::vector<RuleLabel> out{{RuleFamily::kConstant, 0}};
  for (int s : position_steps(side)) out.push_back({RuleFamily::kProgression, s});
  out.push_back({RuleFamily::kDistributeThree, 0});
  out.push_back({RuleFamily::kAnd, 0});
  out.push_back({RuleFamily::kArithmeticPlus, 0});
  out.push_back({RuleFamily::kArithmeticMinus, 0});
  out.push_back({RuleFamily::kXor, 0});
  return out;
}

inline bool is_logical_position_rule(const RuleLabel& r) {
  return r.family == RuleFamily::kAnd || r.family == RuleFamily::kXor || r.family == RuleFamily::kArithmeticPlus ||
         r.family == RuleFamily::kArithmeticMinus;
}

/// Row-major cyclic shift of an occupancy mask: cell j moves to (j + shift) mod cells.
inline unsigned shift_layout(unsigned layout, int cells, int shift) {
  unsigned out = 0;
  for (int j = 0; j < cells; ++j) {
    if (layout & (1u << j)) out |= 1u << (((j + shift) % cells + cells) % cells);
  }
  return out;
}

namespace detail {

inline bool same_set(std::array<int, 3> a, std::array<int, 3> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

inline bool distinct3(const std::array<int, 3>& a) { return a[0] != a[1] && a[1] != a[2] && a[0] != a[2]; }

// Shared Distribute Three check: rows 1 and 2 are permutations of one set of
// three distinct values and row 3 starts with two distinct members of it.
inline std::optional<int> complete_distribute_three(const std::array<int, 8>& v) {
  const std::array<int, 3> r1{v[0], v[1], v[2]};
  const std::array<int, 3> r2{v[3], v[4], v[5]};
  if (!distinct3(r1) || !same_set(r1, r2)) return std::nullopt;
  if (v[6] == v[7]) return std::nullopt;
  std::optional<int> missing;
  int found = 0;
  for (int x : r1) {
    if (x == v[6] || x == v[7]) {
      ++found;
    } else {
      missing = x;
    }
  }
  if (found != 2) return std::nullopt;
  return missing;
}

}  // namespace detail

/// Completion of row 3 under a numeric rule, or nullopt if the context violates
/// it or the completion leaves the range.
inline std::optional<int> complete_numeric(const RuleLabel& rule, const std::array<int, 8>& v, ValueRange range) {
  std::optional<int> out;
  auto rows_hold = [&](auto pred) { return pred(v[0], v[1], v[2]) && pred(v[3], v[4], v[5]); };
  switch (rule.family) {
    case RuleFamily::kConstant:
      if (rows_hold([](int a, int b, int c) { return a == b && b == c; }) && v[6] == v[7]) out = v[7];
      break;
    case RuleFamily::kProgression: {
      const int s = rule.step;
      if (rows_hold([s](int a, int b, int c) { return b == a + s && c == b + s; }) && v[7] == v[6] + s) out = v[7] + s;
      break;
    }
    case RuleFamily::kArithmeticPlus:
      if (rows_hold([](int a, int b, int c) { return c == a + b; })) out = v[6] + v[7];
      break;
    case RuleFamily::kArithmeticMinus:
      if (rows_hold([](int a, int b, int c) { return c == a - b; })) out = v[6] - v[7];
      break;
    case RuleFamily::kDistributeThree:
      out = detail::complete_distribute_three(v);
      break;
    default:
      break;
  }
  if (out && (*out < range.lo || *out > range.hi)) return std::nullopt;
  return out;
}

inline std::optional<unsigned> complete_layout(const RuleLabel& rule, const std::array<unsigned, 8>& v, int side) {
  const int cells = side * side;
  std::optional<unsigned> out;
  auto rows_hold = [&](auto pred) { return pred(v[0], v[1], v[2]) && pred(v[3], v[4], v[5]); };
  switch (rule.family) {
    case RuleFamily::kConstant:
      if (rows_hold([](unsigned a, unsigned b, unsigned c) { return a == b && b == c; }) && v[6] == v[7]) out = v[7];
      break;
    case RuleFamily::kProgression: {
      const int s = rule.step;
      auto sh = [&](unsigned x) { return shift_layout(x, cells, s); };
      if (rows_hold([&](unsigned a, unsigned b, unsigned c) { return b == sh(a) && c == sh(b); }) && v[7] == sh(v[6])) {
        out = sh(v[7]);
      }
      break;
    }
    case RuleFamily::kDistributeThree: {
      std::array<int, 8> as_int{};
      for (std::size_t i = 0; i < 8; ++i) as_int[i] = static_cast<int>(v[i]);
      if (auto m = detail::complete_distribute_three(as_int)) out = static_cast<unsigned>(*m);
      break;
    }
    case RuleFamily::kAnd:
      if (rows_hold([](unsigned a, unsigned b, unsigned c) { return c == (a & b); })) out = v[6] & v[7];
      break;
    case RuleFamily::kArithmeticPlus:
      if (rows_hold([](unsigned a, unsigned b, unsigned c) { return c == (a | b); })) out = v[6] | v[7];
      break;
    case RuleFamily::kArithmeticMinus:
      if (rows_hold([](unsigned a, unsigned b, unsigned c) { return c == (a & ~b); })) out = v[6] & ~v[7];
      break;
    case RuleFamily::kXor:
      if (rows_hold([](unsigned a, unsigned b, unsigned c) { return c == (a ^ b); })) out = v[6] ^ v[7];
      break;
  }
  if (out && *out == 0u) return std::nullopt;  // panels are never empty
  return out;
}

/// Per-component context reduced to governing values.
struct ComponentContext {
  int side = 1;
  std::array<ComponentState, 8> panels;

  [[nodiscard]] std::optional<std::array<int, 8>> values(Attribute a) const {
    std::array<int, 8> v{};
    for (std::size_t i = 0; i < 8; ++i) {
      const auto x = panels[i].value(a);
      if (!x) return std::nullopt;
      v[i] = *x;
    }
    return v;
  }
  [[nodiscard]] std::array<unsigned, 8> layouts() const {
    std::array<unsigned, 8> v{};
    for (std::size_t i = 0; i < 8; ++i) v[i] = panels[i].layout;
    return v;
  }
};

inline std::vector<ComponentContext> reduce_context(const PuzzleSpec& p) {
  const auto comps = p.layouts();
  std::vector<ComponentContext> out(comps.size());
  for (std::size_t c = 0; c < comps.size(); ++c) {
    out[c].side = comps[c].side;
    for (std::size_t i = 0; i < 8; ++i) {
      if (c >= p.context[i].components.size()) throw ParseError("panel is missing component " + comps[c].name);
      out[c].panels[i] = reduce(p.context[i].components[c]);
    }
  }
  return out;
}

/// Every label under which the context of `attr` is consistent, in priority order.
inline std::vector<RuleLabel> fitting_labels(const ComponentContext& ctx, Attribute attr) {
  std::vector<RuleLabel> out;
  if (attr == Attribute::kPosition) {
    if (ctx.side < 2) return out;
    const auto v = ctx.layouts();
    for (const auto& r : position_labels(ctx.side)) {
      if (complete_layout(r, v, ctx.side)) out.push_back(r);
    }
    return out;
  }
  if (attr == Attribute::kNumber && ctx.side < 2) return out;
  const auto v = ctx.values(attr);
  if (!v) return out;
  for (const auto& r : numeric_labels()) {
    if (complete_numeric(r, *v, value_range(attr, ctx.side))) out.push_back(r);
  }
  return out;
}

/// Attributes reasoned about for a component: entity attributes, plus
/// number and position for grids.
inline std::vector<Attribute> component_attributes(int side) {
  std::vector<Attribute> out(kEntityAttributes.begin(), kEntityAttributes.end());
  if (side >= 2) {
    out.push_back(Attribute::kNumber);
    out.push_back(Attribute::kPosition);
  }
  return out;
}

struct SymbolicSolution {
  std::optional<int> answer;       // set when exactly one candidate fits
  std::vector<ComponentRules> rules;
  std::vector<int> matching;       // every candidate consistent with the rules
  bool complete = true;            // false if some governing attribute has no rule
};

/// Abduces the highest-priority rule per attribute, completes row 3 and
/// returns the matching candidate. A position rule takes the layout; number
/// is only consulted when no position rule fits.
inline SymbolicSolution symbolic_solve(const PuzzleSpec& p) {
  const auto ctx = reduce_context(p);
  SymbolicSolution sol;
  sol.rules.resize(ctx.size());

  struct Target {
    Attribute attr;
    int value;
  };
  std::vector<std::vector<Target>> targets(ctx.size());

  for (std::size_t c = 0; c < ctx.size(); ++c) {
    const auto& cc = ctx[c];
    for (Attribute a : kEntityAttributes) {
      const auto fits = fitting_labels(cc, a);
      if (fits.empty()) {
        sol.complete = false;
        continue;
      }
      sol.rules[c][a] = fits.front();
      targets[c].push_back({a, *complete_numeric(fits.front(), *cc.values(a), value_range(a, cc.side))});
    }
    if (cc.side < 2) continue;
    if (const auto pos = fitting_labels(cc, Attribute::kPosition); !pos.empty()) {
      sol.rules[c][Attribute::kPosition] = pos.front();
      targets[c].push_back({Attribute::kPosition, static_cast<int>(*complete_layout(pos.front(), cc.layouts(), cc.side))});
    } else if (const auto num = fitting_labels(cc, Attribute::kNumber); !num.empty()) {
      sol.rules[c][Attribute::kNumber] = num.front();
      targets[c].push_back(
          {Attribute::kNumber, *complete_numeric(num.front(), *cc.values(Attribute::kNumber), value_range(Attribute::kNumber, cc.side))});
    } else {
      sol.complete = false;
    }
  }

  for (int k = 0; k < 8; ++k) {
    const Panel& cand = p.candidates[static_cast<std::size_t>(k)];
    if (cand.components.size() != ctx.size()) continue;
    bool ok = true;
    for (std::size_t c = 0; c < ctx.size() && ok; ++c) {
      const auto st = reduce(cand.components[c]);
      if (st.count == 0) ok = false;
      for (const auto& t : targets[c]) {
        const auto v = st.value(t.attr);
        if (!v || *v != t.value) ok = false;
      }
    }
    if (ok) sol.matching.push_back(k);
  }
  if (sol.matching.size() == 1) sol.answer = sol.matching.front();
  return sol;
}

}  // namespace vsar
