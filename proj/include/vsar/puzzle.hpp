#pragma once

// Symbolic puzzle model: configurations, panels, rule labels.

#include <array>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vsar {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Configuration { kCenter, kGrid2x2, kGrid3x3, kLeftRight, kUpDown, kOutInCenter, kOutInGrid };

inline constexpr std::array<Configuration, 7> kAllConfigurations = {
    Configuration::kCenter,    Configuration::kGrid2x2, Configuration::kGrid3x3,    Configuration::kLeftRight,
    Configuration::kUpDown,    Configuration::kOutInCenter, Configuration::kOutInGrid};

inline std::string_view to_string(Configuration c) {
  switch (c) {
    case Configuration::kCenter: return "center";
    case Configuration::kGrid2x2: return "2x2grid";
    case Configuration::kGrid3x3: return "3x3grid";
    case Configuration::kLeftRight: return "l-r";
    case Configuration::kUpDown: return "u-d";
    case Configuration::kOutInCenter: return "o-ic";
    case Configuration::kOutInGrid: return "o-ig";
  }
  return "?";
}

inline Configuration parse_configuration(std::string_view s) {
  for (auto c : kAllConfigurations) {
    if (to_string(c) == s) return c;
  }
  throw ParseError("unknown configuration '" + std::string(s) + "'");
}

struct ComponentLayout {
  std::string name;
  int side = 1;  // slots per panel = side * side
};

inline std::vector<ComponentLayout> components_of(Configuration c) {
  switch (c) {
    case Configuration::kCenter: return {{"center", 1}};
    case Configuration::kGrid2x2: return {{"grid", 2}};
    case Configuration::kGrid3x3: return {{"grid", 3}};
    case Configuration::kLeftRight: return {{"left", 1}, {"right", 1}};
    case Configuration::kUpDown: return {{"up", 1}, {"down", 1}};
    case Configuration::kOutInCenter: return {{"out", 1}, {"in", 1}};
    case Configuration::kOutInGrid: return {{"out", 1}, {"in", 2}};
  }
  return {};
}

enum class Attribute { kType, kSize, kColor, kNumber, kPosition };

inline constexpr std::array<Attribute, 3> kEntityAttributes = {Attribute::kType, Attribute::kSize, Attribute::kColor};

inline std::string_view to_string(Attribute a) {
  switch (a) {
    case Attribute::kType: return "type";
    case Attribute::kSize: return "size";
    case Attribute::kColor: return "color";
    case Attribute::kNumber: return "number";
    case Attribute::kPosition: return "position";
  }
  return "?";
}

inline Attribute parse_attribute(std::string_view s) {
  for (auto a : {Attribute::kType, Attribute::kSize, Attribute::kColor, Attribute::kNumber, Attribute::kPosition}) {
    if (to_string(a) == s) return a;
  }
  throw ParseError("unknown attribute '" + std::string(s) + "'");
}

/// Number of distinct values of an entity attribute.
inline constexpr int value_count(Attribute a) {
  switch (a) {
    case Attribute::kType: return 5;
    case Attribute::kSize: return 6;
    case Attribute::kColor: return 10;
    default: return 0;
  }
}

enum class RuleFamily { kConstant, kProgression, kArithmeticPlus, kArithmeticMinus, kDistributeThree, kAnd, kXor };

struct RuleLabel {
  RuleFamily family = RuleFamily::kConstant;
  int step = 0;  // Progression only

  friend bool operator==(const RuleLabel&, const RuleLabel&) = default;
};

inline std::string to_string(const RuleLabel& r) {
  switch (r.family) {
    case RuleFamily::kConstant: return "Constant";
    case RuleFamily::kProgression: return std::string("Progression") + (r.step >= 0 ? "+" : "-") + std::to_string(std::abs(r.step));
    case RuleFamily::kArithmeticPlus: return "Arithmetic+";
    case RuleFamily::kArithmeticMinus: return "Arithmetic-";
    case RuleFamily::kDistributeThree: return "DistributeThree";
    case RuleFamily::kAnd: return "AND";
    case RuleFamily::kXor: return "XOR";
  }
  return "?";
}

inline RuleLabel parse_rule(std::string_view s) {
  if (s == "Constant") return {RuleFamily::kConstant, 0};
  if (s == "Arithmetic+") return {RuleFamily::kArithmeticPlus, 0};
  if (s == "Arithmetic-") return {RuleFamily::kArithmeticMinus, 0};
  if (s == "DistributeThree") return {RuleFamily::kDistributeThree, 0};
  if (s == "AND") return {RuleFamily::kAnd, 0};
  if (s == "XOR") return {RuleFamily::kXor, 0};
  constexpr std::string_view prefix = "Progression";
  if (s.substr(0, prefix.size()) == prefix && s.size() > prefix.size() + 1) {
    const char sign = s[prefix.size()];
    if (sign == '+' || sign == '-') {
      int step = 0;
      for (char ch : s.substr(prefix.size() + 1)) {
        if (ch < '0' || ch > '9') throw ParseError("bad progression step in '" + std::string(s) + "'");
        step = step * 10 + (ch - '0');
      }
      if (step == 0) throw ParseError("progression step must be nonzero");
      return {RuleFamily::kProgression, sign == '+' ? step : -step};
    }
  }
  throw ParseError("unknown rule '" + std::string(s) + "'");
}

struct Slot {
  bool exist = false;
  int type = 0;
  int size = 0;
  int color = 0;

  [[nodiscard]] int value(Attribute a) const {
    switch (a) {
      case Attribute::kType: return type;
      case Attribute::kSize: return size;
      case Attribute::kColor: return color;
      default: throw std::invalid_argument("Slot::value: not an entity attribute");
    }
  }
  void set(Attribute a, int v) {
    switch (a) {
      case Attribute::kType: type = v; break;
      case Attribute::kSize: size = v; break;
      case Attribute::kColor: color = v; break;
      default: throw std::invalid_argument("Slot::set: not an entity attribute");
    }
  }
  friend bool operator==(const Slot&, const Slot&) = default;
};

struct ComponentPanel {
  std::vector<Slot> slots;

  [[nodiscard]] int count() const {
    int n = 0;
    for (const auto& s : slots) n += s.exist ? 1 : 0;
    return n;
  }
  /// Bitmask of occupied cells (row-major).
  [[nodiscard]] unsigned layout() const {
    unsigned m = 0;
    for (std::size_t j = 0; j < slots.size(); ++j) {
      if (slots[j].exist) m |= 1u << j;
    }
    return m;
  }
  friend bool operator==(const ComponentPanel&, const ComponentPanel&) = default;
};

struct Panel {
  std::vector<ComponentPanel> components;
  friend bool operator==(const Panel&, const Panel&) = default;
};

using ComponentRules = std::map<Attribute, RuleLabel>;

/// Context panels are stored row-major with the (3,3) slot omitted.
inline constexpr int context_index(int row, int col) { return row * 3 + col; }

struct PuzzleSpec {
  std::uint64_t id = 0;
  Configuration config = Configuration::kCenter;
  std::array<Panel, 8> context;
  std::array<Panel, 8> candidates;
  int answer = 0;
  std::vector<ComponentRules> rules;  // one map per component

  [[nodiscard]] std::vector<ComponentLayout> layouts() const { return components_of(config); }
};

}  // namespace vsar
