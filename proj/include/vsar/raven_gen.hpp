#pragma once

// Symbolic generator of RAVEN-style puzzles.
//
// Every object in a panel component shares its type, size and color. Rules
// are applied row-wise. A grid component is governed by exactly one of
// number and position. Distractors come from a depth-3 attribute bisection:
// three governing attributes each get one alternative value and the eight
// candidates are all 2^3 combinations, so every attribute value is shared by
// exactly half of the candidates.
//
// A sample is only kept if the symbolic checker recovers the declared rules
// and answer; for position rules it must also be the only position rule that
// fits the context.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "vsar/puzzle.hpp"
#include "vsar/rng.hpp"
#include "vsar/symbolic.hpp"

namespace vsar {

struct GenerationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GeneratorOptions {
  std::vector<RuleFamily> families;  // empty = every family the attribute supports
  int value_attempts = 200;
  int rule_attempts = 200;
};

/// Families the generator samples for an attribute.
inline std::vector<RuleFamily> generated_families(Attribute a) {
  switch (a) {
    case Attribute::kType:
      return {RuleFamily::kConstant, RuleFamily::kProgression, RuleFamily::kDistributeThree};
    case Attribute::kSize:
    case Attribute::kColor:
    case Attribute::kNumber:
    case Attribute::kPosition:
      return {RuleFamily::kConstant, RuleFamily::kProgression, RuleFamily::kArithmeticPlus,
              RuleFamily::kArithmeticMinus, RuleFamily::kDistributeThree};
  }
  return {};
}

struct SymbolicPanel {
  unsigned layout = 0;
  int type = 0;
  int size = 0;
  int color = 0;

  [[nodiscard]] int get(Attribute a) const {
    switch (a) {
      case Attribute::kType: return type;
      case Attribute::kSize: return size;
      case Attribute::kColor: return color;
      case Attribute::kNumber: return std::popcount(layout);
      case Attribute::kPosition: return static_cast<int>(layout);
    }
    return 0;
  }
  void set_entity(Attribute a, int v) {
    if (a == Attribute::kType) type = v;
    if (a == Attribute::kSize) size = v;
    if (a == Attribute::kColor) color = v;
  }
};

inline ComponentPanel build_component(const SymbolicPanel& s, int side) {
  ComponentPanel out;
  out.slots.resize(static_cast<std::size_t>(side * side));
  for (std::size_t j = 0; j < out.slots.size(); ++j) {
    if (s.layout & (1u << j)) out.slots[j] = Slot{true, s.type, s.size, s.color};
  }
  return out;
}

/// Declared rules for one component.
struct ComponentPlan {
  int side = 1;
  ComponentRules rules;
};

namespace detail {

inline unsigned full_mask(int cells) { return (1u << cells) - 1u; }

inline unsigned random_layout(int cells, Rng& rng) {
  return static_cast<unsigned>(rng.uniform_int(1, static_cast<int>(full_mask(cells))));
}

inline unsigned random_layout_with_count(int cells, int count, Rng& rng) {
  std::vector<int> idx(static_cast<std::size_t>(cells));
  for (int j = 0; j < cells; ++j) idx[static_cast<std::size_t>(j)] = j;
  rng.shuffle(idx);
  unsigned m = 0;
  for (int k = 0; k < count; ++k) m |= 1u << idx[static_cast<std::size_t>(k)];
  return m;
}

inline std::vector<int> feasible_steps(Attribute a, int side) {
  // On a 2x2 grid a shift by 2 is its own inverse; only +-1 is generated.
  if (a == Attribute::kPosition) return side == 2 ? std::vector<int>{1, -1} : std::vector<int>{1, -1, 2, -2};
  const auto r = value_range(a, side);
  std::vector<int> out;
  for (int s : {1, -1, 2, -2}) {
    if (2 * std::abs(s) <= r.hi - r.lo) out.push_back(s);
  }
  return out;
}

template <typename T>
std::array<T, 9> distribute_three(std::array<T, 3> base, Rng& rng) {
  rng.shuffle(base);
  const int dir = rng.coin() ? 1 : 2;
  std::array<T, 9> g{};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) g[static_cast<std::size_t>(r * 3 + c)] = base[static_cast<std::size_t>((c + r * dir) % 3)];
  }
  return g;
}

inline std::optional<std::array<int, 9>> sample_numeric_grid(const RuleLabel& rule, ValueRange range, Rng& rng) {
  std::array<int, 9> g{};
  const int lo = range.lo;
  const int hi = range.hi;
  if (rule.family == RuleFamily::kDistributeThree) {
    if (hi - lo < 2) return std::nullopt;
    std::array<int, 3> base{};
    base[0] = rng.uniform_int(lo, hi);
    do base[1] = rng.uniform_int(lo, hi); while (base[1] == base[0]);
    do base[2] = rng.uniform_int(lo, hi); while (base[2] == base[0] || base[2] == base[1]);
    return distribute_three(base, rng);
  }
  for (int r = 0; r < 3; ++r) {
    int a = 0;
    int b = 0;
    int c = 0;
    switch (rule.family) {
      case RuleFamily::kConstant:
        a = b = c = rng.uniform_int(lo, hi);
        break;
      case RuleFamily::kProgression: {
        const int s = rule.step;
        const int first_lo = s > 0 ? lo : lo - 2 * s;
        const int first_hi = s > 0 ? hi - 2 * s : hi;
        if (first_hi < first_lo) return std::nullopt;
        a = rng.uniform_int(first_lo, first_hi);
        b = a + s;
        c = b + s;
        break;
      }
      case RuleFamily::kArithmeticPlus: {
        const int b_lo = std::max(lo, 1);
        if (lo + b_lo > hi) return std::nullopt;
        b = rng.uniform_int(b_lo, hi - lo);
        a = rng.uniform_int(lo, hi - b);
        c = a + b;
        break;
      }
      case RuleFamily::kArithmeticMinus: {
        const int b_lo = std::max(lo, 1);
        if (lo + b_lo > hi) return std::nullopt;
        b = rng.uniform_int(b_lo, hi - lo);
        a = rng.uniform_int(lo + b, hi);
        c = a - b;
        break;
      }
      default:
        return std::nullopt;
    }
    g[static_cast<std::size_t>(r * 3)] = a;
    g[static_cast<std::size_t>(r * 3 + 1)] = b;
    g[static_cast<std::size_t>(r * 3 + 2)] = c;
  }
  return g;
}

inline std::optional<std::array<unsigned, 9>> sample_layout_grid(const RuleLabel& rule, int side, Rng& rng) {
  const int cells = side * side;
  std::array<unsigned, 9> g{};
  if (rule.family == RuleFamily::kDistributeThree) {
    std::array<unsigned, 3> base{};
    base[0] = random_layout(cells, rng);
    do base[1] = random_layout(cells, rng); while (base[1] == base[0]);
    do base[2] = random_layout(cells, rng); while (base[2] == base[0] || base[2] == base[1]);
    return distribute_three(base, rng);
  }
  for (int r = 0; r < 3; ++r) {
    unsigned a = random_layout(cells, rng);
    unsigned b = a;
    unsigned c = a;
    switch (rule.family) {
      case RuleFamily::kConstant:
        break;
      case RuleFamily::kProgression:
        b = shift_layout(a, cells, rule.step);
        c = shift_layout(b, cells, rule.step);
        break;
      case RuleFamily::kArithmeticPlus:
        b = random_layout(cells, rng);
        c = a | b;
        break;
      case RuleFamily::kArithmeticMinus:
        b = random_layout(cells, rng);
        c = a & ~b;
        break;
      default:
        return std::nullopt;
    }
    if (c == 0) return std::nullopt;
    g[static_cast<std::size_t>(r * 3)] = a;
    g[static_cast<std::size_t>(r * 3 + 1)] = b;
    g[static_cast<std::size_t>(r * 3 + 2)] = c;
  }
  return g;
}

inline std::optional<RuleLabel> sample_rule(Attribute a, int side, const GeneratorOptions& opt, Rng& rng) {
  std::vector<RuleFamily> fams;
  for (auto f : generated_families(a)) {
    if (opt.families.empty() || std::find(opt.families.begin(), opt.families.end(), f) != opt.families.end()) {
      fams.push_back(f);
    }
  }
  if (fams.empty()) return std::nullopt;
  RuleLabel r{rng.pick(fams), 0};
  if (r.family == RuleFamily::kProgression) {
    const auto steps = feasible_steps(a, side);
    if (steps.empty()) return std::nullopt;
    r.step = steps[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(steps.size()) - 1))];
  }
  return r;
}

inline std::optional<ComponentPlan> plan_component(int side, const GeneratorOptions& opt, Rng& rng) {
  ComponentPlan plan;
  plan.side = side;
  for (Attribute a : kEntityAttributes) {
    const auto r = sample_rule(a, side, opt, rng);
    if (!r) return std::nullopt;
    plan.rules[a] = *r;
  }
  if (side >= 2) {
    std::vector<std::pair<Attribute, RuleLabel>> options;
    for (Attribute a : {Attribute::kNumber, Attribute::kPosition}) {
      if (auto r = sample_rule(a, side, opt, rng)) options.emplace_back(a, *r);
    }
    if (options.empty()) return std::nullopt;
    const auto& pick = options[static_cast<std::size_t>(rng.uniform_int(0, static_cast<int>(options.size()) - 1))];
    plan.rules[pick.first] = pick.second;
  }
  return plan;
}

inline std::optional<std::array<SymbolicPanel, 9>> realize(const ComponentPlan& plan, Rng& rng) {
  std::array<SymbolicPanel, 9> g{};
  const int cells = plan.side * plan.side;
  for (Attribute a : kEntityAttributes) {
    const auto v = sample_numeric_grid(plan.rules.at(a), value_range(a, plan.side), rng);
    if (!v) return std::nullopt;
    for (std::size_t i = 0; i < 9; ++i) g[i].set_entity(a, (*v)[i]);
  }
  if (plan.side < 2) {
    for (auto& p : g) p.layout = 1u;
  } else if (plan.rules.contains(Attribute::kPosition)) {
    const auto v = sample_layout_grid(plan.rules.at(Attribute::kPosition), plan.side, rng);
    if (!v) return std::nullopt;
    for (std::size_t i = 0; i < 9; ++i) g[i].layout = (*v)[i];
  } else {
    const auto v = sample_numeric_grid(plan.rules.at(Attribute::kNumber), value_range(Attribute::kNumber, plan.side), rng);
    if (!v) return std::nullopt;
    for (std::size_t i = 0; i < 9; ++i) g[i].layout = random_layout_with_count(cells, (*v)[i], rng);
  }
  return g;
}

struct Perturbation {
  std::size_t component = 0;
  Attribute attr = Attribute::kType;
  int value = 0;  // entity value, count, or layout mask
};

inline Perturbation draw_perturbation(std::size_t component, Attribute attr, const SymbolicPanel& answer, int side,
                                      Rng& rng) {
  Perturbation p{component, attr, 0};
  const int cells = side * side;
  if (attr == Attribute::kPosition) {
    const int count = std::popcount(answer.layout);
    unsigned m = answer.layout;
    if (count < cells) {
      while (m == answer.layout) m = random_layout_with_count(cells, count, rng);
    } else {
      while (m == answer.layout) m = random_layout(cells, rng);
    }
    p.value = static_cast<int>(m);
    return p;
  }
  const auto range = value_range(attr, side);
  const int current = answer.get(attr);
  int v = current;
  while (v == current) v = rng.uniform_int(range.lo, range.hi);
  p.value = v;
  return p;
}

// Adds or removes objects to reach `count`, keeping the other positions.
inline unsigned resize_layout(unsigned layout, int cells, int count, Rng& rng) {
  std::vector<int> on;
  std::vector<int> off;
  for (int j = 0; j < cells; ++j) ((layout & (1u << j)) ? on : off).push_back(j);
  const int have = static_cast<int>(on.size());
  if (count > have) {
    rng.shuffle(off);
    for (int k = 0; k < count - have; ++k) layout |= 1u << off[static_cast<std::size_t>(k)];
  } else {
    rng.shuffle(on);
    for (int k = 0; k < have - count; ++k) layout &= ~(1u << on[static_cast<std::size_t>(k)]);
  }
  return layout;
}

}  // namespace detail

/// Builds the 8 candidates around `answer` (one symbolic panel per component)
/// and returns them shuffled together with the index of the true answer.
inline std::pair<std::array<Panel, 8>, int> generate_candidates(const std::vector<SymbolicPanel>& answer,
                                                                const std::vector<ComponentPlan>& plans, Rng& rng) {
  std::vector<std::pair<std::size_t, Attribute>> targets;
  for (std::size_t c = 0; c < plans.size(); ++c) {
    for (Attribute a : kEntityAttributes) targets.emplace_back(c, a);
    if (plans[c].rules.contains(Attribute::kNumber)) targets.emplace_back(c, Attribute::kNumber);
    if (plans[c].rules.contains(Attribute::kPosition)) targets.emplace_back(c, Attribute::kPosition);
  }
  if (targets.size() < 3) throw GenerationError("fewer than three governing attributes to perturb");
  rng.shuffle(targets);

  std::array<detail::Perturbation, 3> perturb{};
  std::array<unsigned, 3> resized{};
  for (std::size_t t = 0; t < 3; ++t) {
    const auto [c, a] = targets[t];
    perturb[t] = detail::draw_perturbation(c, a, answer[c], plans[c].side, rng);
    if (a == Attribute::kNumber) {
      const int cells = plans[c].side * plans[c].side;
      resized[t] = detail::resize_layout(answer[c].layout, cells, perturb[t].value, rng);
    }
  }

  std::array<int, 8> order{0, 1, 2, 3, 4, 5, 6, 7};
  rng.shuffle(order);
  std::array<Panel, 8> out;
  int answer_index = 0;
  for (int subset = 0; subset < 8; ++subset) {
    std::vector<SymbolicPanel> cand = answer;
    for (std::size_t t = 0; t < 3; ++t) {
      if (!(subset & (1 << t))) continue;
      const auto& p = perturb[t];
      if (p.attr == Attribute::kPosition) {
        cand[p.component].layout = static_cast<unsigned>(p.value);
      } else if (p.attr == Attribute::kNumber) {
        cand[p.component].layout = resized[t];
      } else {
        cand[p.component].set_entity(p.attr, p.value);
      }
    }
    const int slot = order[static_cast<std::size_t>(subset)];
    if (subset == 0) answer_index = slot;
    for (std::size_t c = 0; c < plans.size(); ++c) {
      out[static_cast<std::size_t>(slot)].components.push_back(build_component(cand[c], plans[c].side));
    }
  }
  return {out, answer_index};
}

namespace detail {

inline bool accepted(const PuzzleSpec& p) {
  const auto sol = symbolic_solve(p);
  if (!sol.complete || sol.answer != p.answer || sol.rules != p.rules) return false;
  const auto ctx = reduce_context(p);
  for (std::size_t c = 0; c < ctx.size(); ++c) {
    if (p.rules[c].contains(Attribute::kPosition) && fitting_labels(ctx[c], Attribute::kPosition).size() != 1) {
      return false;
    }
  }
  return true;
}

}  // namespace detail

inline PuzzleSpec generate_puzzle(Configuration config, Rng& rng, const GeneratorOptions& opt = {},
                                  std::uint64_t id = 0) {
  const auto comps = components_of(config);
  for (int r = 0; r < opt.rule_attempts; ++r) {
    std::vector<ComponentPlan> plans;
    bool ok = true;
    for (const auto& c : comps) {
      auto plan = detail::plan_component(c.side, opt, rng);
      if (!plan) {
        ok = false;
        break;
      }
      plans.push_back(std::move(*plan));
    }
    if (!ok) continue;

    for (int v = 0; v < opt.value_attempts; ++v) {
      std::vector<std::array<SymbolicPanel, 9>> grids;
      for (const auto& plan : plans) {
        auto g = detail::realize(plan, rng);
        if (!g) break;
        grids.push_back(*g);
      }
      if (grids.size() != plans.size()) continue;

      PuzzleSpec p;
      p.id = id;
      p.config = config;
      for (const auto& plan : plans) p.rules.push_back(plan.rules);
      for (std::size_t i = 0; i < 8; ++i) {
        for (std::size_t c = 0; c < plans.size(); ++c) {
          p.context[i].components.push_back(build_component(grids[c][i], plans[c].side));
        }
      }
      std::vector<SymbolicPanel> answer;
      for (const auto& g : grids) answer.push_back(g[8]);
      auto [cands, idx] = generate_candidates(answer, plans, rng);
      p.candidates = std::move(cands);
      p.answer = idx;
      if (detail::accepted(p)) return p;
    }
  }
  throw GenerationError("could not sample a valid puzzle for configuration " + std::string(to_string(config)));
}

}  // namespace vsar
