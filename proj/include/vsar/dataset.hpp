#pragma once

// JSON-lines puzzle files.
//
// One puzzle per line:
//   {"id": 0, "config": "o-ig",
//    "components": [[[slot, ...] x 8 context panels] per component],
//    "candidates": [[[slot, ...] x 8 candidates] per component],
//    "answer": 3,
//    "rules": {"out": {"type": "Constant", ...}, "in": {...}}}
// A slot is [exist, type, size, color]. Only integers and strings appear.

#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vsar/puzzle.hpp"

namespace vsar {

using Json = nlohmann::ordered_json;

namespace detail {

inline Json slots_to_json(const ComponentPanel& panel) {
  Json out = Json::array();
  for (const auto& s : panel.slots) out.push_back({s.exist ? 1 : 0, s.type, s.size, s.color});
  return out;
}

inline int json_int(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) throw ParseError(what + ": expected an integer");
  return j.get<int>();
}

inline ComponentPanel slots_from_json(const Json& j, int side, const std::string& what) {
  if (!j.is_array()) throw ParseError(what + ": expected an array of slots");
  const auto cells = static_cast<std::size_t>(side * side);
  if (j.size() != cells) {
    throw ParseError(what + ": expected " + std::to_string(cells) + " slots, got " + std::to_string(j.size()));
  }
  ComponentPanel panel;
  for (std::size_t k = 0; k < cells; ++k) {
    const Json& s = j[k];
    const std::string where = what + " slot " + std::to_string(k);
    if (!s.is_array() || s.size() != 4) throw ParseError(where + ": expected [exist, type, size, color]");
    Slot slot;
    const int exist = json_int(s[0], where);
    if (exist != 0 && exist != 1) throw ParseError(where + ": exist must be 0 or 1");
    slot.exist = exist == 1;
    for (std::size_t a = 0; a < 3; ++a) {
      const Attribute attr = kEntityAttributes[a];
      const int v = json_int(s[a + 1], where);
      if (v < 0 || v >= value_count(attr)) {
        throw ParseError(where + ": " + std::string(to_string(attr)) + " " + std::to_string(v) + " out of range");
      }
      slot.set(attr, v);
    }
    panel.slots.push_back(slot);
  }
  if (panel.count() == 0) throw ParseError(what + ": panel has no objects");
  return panel;
}

inline void panels_from_json(const Json& j, std::array<Panel, 8>& panels, const std::vector<ComponentLayout>& comps,
                             const char* field) {
  if (!j.is_array() || j.size() != comps.size()) {
    throw ParseError(std::string(field) + ": expected " + std::to_string(comps.size()) + " components");
  }
  for (auto& p : panels) p.components.clear();
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const Json& per = j[c];
    if (!per.is_array() || per.size() != 8) {
      throw ParseError(std::string(field) + ": component " + comps[c].name + " needs 8 panels");
    }
    for (std::size_t i = 0; i < 8; ++i) {
      panels[i].components.push_back(slots_from_json(
          per[i], comps[c].side, std::string(field) + " " + comps[c].name + " panel " + std::to_string(i)));
    }
  }
}

}  // namespace detail

inline Json to_json(const PuzzleSpec& p) {
  const auto comps = p.layouts();
  Json j;
  j["id"] = p.id;
  j["config"] = std::string(to_string(p.config));
  Json ctx = Json::array();
  Json cands = Json::array();
  for (std::size_t c = 0; c < comps.size(); ++c) {
    Json a = Json::array();
    Json b = Json::array();
    for (std::size_t i = 0; i < 8; ++i) {
      a.push_back(detail::slots_to_json(p.context[i].components[c]));
      b.push_back(detail::slots_to_json(p.candidates[i].components[c]));
    }
    ctx.push_back(std::move(a));
    cands.push_back(std::move(b));
  }
  j["components"] = std::move(ctx);
  j["candidates"] = std::move(cands);
  j["answer"] = p.answer;
  Json rules = Json::object();
  for (std::size_t c = 0; c < comps.size(); ++c) {
    Json r = Json::object();
    if (c < p.rules.size()) {
      for (const auto& [attr, label] : p.rules[c]) r[std::string(to_string(attr))] = to_string(label);
    }
    rules[comps[c].name] = std::move(r);
  }
  j["rules"] = std::move(rules);
  return j;
}

inline PuzzleSpec puzzle_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("expected a JSON object");
  for (const char* key : {"id", "config", "components", "candidates", "answer", "rules"}) {
    if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  }
  PuzzleSpec p;
  if (!j["id"].is_number_unsigned()) throw ParseError("id: expected a non-negative integer");
  p.id = j["id"].get<std::uint64_t>();
  if (!j["config"].is_string()) throw ParseError("config: expected a string");
  p.config = parse_configuration(j["config"].get<std::string>());
  const auto comps = p.layouts();
  detail::panels_from_json(j["components"], p.context, comps, "components");
  detail::panels_from_json(j["candidates"], p.candidates, comps, "candidates");
  p.answer = detail::json_int(j["answer"], "answer");
  if (p.answer < 0 || p.answer > 7) throw ParseError("answer must lie in 0..7");
  const Json& rules = j["rules"];
  if (!rules.is_object()) throw ParseError("rules: expected an object");
  p.rules.resize(comps.size());
  for (std::size_t c = 0; c < comps.size(); ++c) {
    if (!rules.contains(comps[c].name)) continue;
    const Json& r = rules[comps[c].name];
    if (!r.is_object()) throw ParseError("rules." + comps[c].name + ": expected an object");
    for (const auto& [attr, label] : r.items()) {
      if (!label.is_string()) throw ParseError("rules." + comps[c].name + "." + attr + ": expected a string");
      p.rules[c][parse_attribute(attr)] = parse_rule(label.get<std::string>());
    }
  }
  return p;
}

inline std::string to_json_line(const PuzzleSpec& p) { return to_json(p).dump(); }

inline PuzzleSpec parse_puzzle_line(const std::string& line) {
  Json j;
  try {
    j = Json::parse(line);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return puzzle_from_json(j);
}

inline void write_dataset(std::ostream& os, const std::vector<PuzzleSpec>& puzzles) {
  for (const auto& p : puzzles) os << to_json_line(p) << '\n';
}

struct LineError {
  std::size_t line = 0;  // 1-based
  std::string message;
};

struct LoadedDataset {
  std::vector<PuzzleSpec> puzzles;
  std::vector<LineError> errors;
};

/// Reads every line; malformed lines are collected rather than thrown.
/// Blank lines are skipped.
inline LoadedDataset read_dataset(std::istream& is) {
  LoadedDataset out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(is, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.puzzles.push_back(parse_puzzle_line(line));
    } catch (const ParseError& e) {
      out.errors.push_back({n, e.what()});
    }
  }
  return out;
}

}  // namespace vsar
