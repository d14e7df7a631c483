#pragma once

// Batch generation and evaluation with reproducible reports.

#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "vsar/codebook.hpp"
#include "vsar/dataset.hpp"
#include "vsar/raven_gen.hpp"
#include "vsar/reasoner.hpp"

namespace vsar {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMinRunDim = 500;

struct RunConfig {
  std::size_t dim = 3000;
  std::uint64_t codebook_seed = 1;
  std::uint64_t generator_seed = 0;
  std::uint64_t noise_seed = 2;
  double beta = 20.0;
  double eta = 0.0;
  std::vector<Configuration> configurations{kAllConfigurations.begin(), kAllConfigurations.end()};
  std::size_t n_puzzles = 0;  // per configuration
  std::string input;
  std::string output;
};

inline void validate(const RunConfig& rc) {
  if (rc.dim < kMinRunDim) throw ConfigError("dimension must be at least " + std::to_string(kMinRunDim));
  if (!(rc.eta >= 0.0 && rc.eta <= 1.0)) throw ConfigError("eta must lie in [0, 1]");
  if (!(rc.beta > 0.0)) throw ConfigError("beta must be positive");
}

inline CodebookConfig codebook_config(const RunConfig& rc) { return {rc.dim, rc.codebook_seed, rc.beta}; }
inline SolveOptions solve_options(const RunConfig& rc) { return {rc.eta, rc.noise_seed}; }

inline Json to_json(const RunConfig& rc) {
  Json j;
  j["d"] = rc.dim;
  j["seeds"] = {{"codebook", rc.codebook_seed}, {"generator", rc.generator_seed}, {"noise", rc.noise_seed}};
  j["beta"] = rc.beta;
  j["eta"] = rc.eta;
  Json cfgs = Json::array();
  for (auto c : rc.configurations) cfgs.push_back(std::string(to_string(c)));
  j["configurations"] = std::move(cfgs);
  j["n_puzzles"] = rc.n_puzzles;
  j["input"] = rc.input;
  j["output"] = rc.output;
  return j;
}

/// Puzzles are numbered in file order; puzzle `id` is drawn from its own
/// stream, so any prefix of a dataset is reproducible on its own.
inline std::vector<PuzzleSpec> generate_dataset(const RunConfig& rc, const GeneratorOptions& opt = {}) {
  std::vector<PuzzleSpec> out;
  out.reserve(rc.configurations.size() * rc.n_puzzles);
  std::uint64_t id = 0;
  for (auto c : rc.configurations) {
    for (std::size_t i = 0; i < rc.n_puzzles; ++i, ++id) {
      Rng rng(mix_seed(rc.generator_seed, id));
      out.push_back(generate_puzzle(c, rng, opt, id));
    }
  }
  return out;
}

/// Declared rules the solver reproduced, out of all declared rules.
struct RuleMatch {
  std::size_t declared = 0;
  std::size_t matched = 0;
};

inline RuleMatch match_rules(const std::vector<ComponentRules>& declared, const std::vector<ComponentRules>& abduced) {
  RuleMatch m;
  for (std::size_t c = 0; c < declared.size(); ++c) {
    for (const auto& [attr, label] : declared[c]) {
      ++m.declared;
      if (c < abduced.size()) {
        const auto it = abduced[c].find(attr);
        if (it != abduced[c].end() && it->second == label) ++m.matched;
      }
    }
  }
  return m;
}

struct ConfigStats {
  Configuration config = Configuration::kCenter;
  std::size_t puzzles = 0;
  std::size_t correct = 0;
  std::size_t rules_declared = 0;
  std::size_t rules_matched = 0;
  std::size_t low_confidence = 0;

  [[nodiscard]] double accuracy() const { return puzzles ? static_cast<double>(correct) / puzzles : 0.0; }
  [[nodiscard]] double rule_accuracy() const {
    return rules_declared ? static_cast<double>(rules_matched) / rules_declared : 0.0;
  }
};

struct EvalReport {
  RunConfig run;
  std::vector<ConfigStats> rows;  // one per configuration, in canonical order
  ConfigStats total;              // `config` is meaningless here

  [[nodiscard]] const ConfigStats& row(Configuration c) const { return rows[static_cast<std::size_t>(c)]; }
};

inline EvalReport evaluate(const std::vector<PuzzleSpec>& puzzles, const RunConfig& rc) {
  validate(rc);
  const auto books = build_codebooks(codebook_config(rc));
  const auto opt = solve_options(rc);
  EvalReport rep;
  rep.run = rc;
  for (auto c : kAllConfigurations) rep.rows.push_back({c});
  for (const auto& p : puzzles) {
    const auto sol = solve(p, books, opt);
    const auto m = match_rules(p.rules, sol.rules(p.rules.size()));
    for (auto* s : {&rep.rows[static_cast<std::size_t>(p.config)], &rep.total}) {
      ++s->puzzles;
      s->correct += sol.answer == p.answer ? 1 : 0;
      s->rules_declared += m.declared;
      s->rules_matched += m.matched;
      s->low_confidence += sol.low_confidence ? 1 : 0;
    }
  }
  return rep;
}

namespace detail {

inline Json stats_json(const ConfigStats& s) {
  Json j;
  j["puzzles"] = s.puzzles;
  j["correct"] = s.correct;
  j["accuracy"] = s.accuracy();
  j["rules_declared"] = s.rules_declared;
  j["rules_matched"] = s.rules_matched;
  j["rule_accuracy"] = s.rule_accuracy();
  j["low_confidence"] = s.low_confidence;
  return j;
}

}  // namespace detail

inline Json to_json(const EvalReport& rep) {
  Json j;
  j["run_config"] = to_json(rep.run);
  Json rows = Json::array();
  for (const auto& s : rep.rows) {
    Json r;
    r["config"] = std::string(to_string(s.config));
    r.update(detail::stats_json(s));
    rows.push_back(std::move(r));
  }
  j["configurations"] = std::move(rows);
  j["average"] = detail::stats_json(rep.total);
  return j;
}

inline std::string to_csv(const EvalReport& rep) {
  std::ostringstream os;
  os << std::setprecision(6) << std::fixed;
  os << "config,puzzles,correct,accuracy,rules_declared,rules_matched,rule_accuracy,low_confidence\n";
  auto line = [&](std::string_view name, const ConfigStats& s) {
    os << name << ',' << s.puzzles << ',' << s.correct << ',' << s.accuracy() << ',' << s.rules_declared << ','
       << s.rules_matched << ',' << s.rule_accuracy() << ',' << s.low_confidence << '\n';
  };
  for (const auto& s : rep.rows) line(to_string(s.config), s);
  line("average", rep.total);
  return os.str();
}

inline std::string to_table(const EvalReport& rep) {
  std::ostringstream os;
  os << std::left << std::setw(10) << "config" << std::right << std::setw(8) << "puzzles" << std::setw(10) << "accuracy"
     << std::setw(8) << "rules" << '\n';
  os << std::fixed << std::setprecision(4);
  auto line = [&](std::string_view name, const ConfigStats& s) {
    os << std::left << std::setw(10) << name << std::right << std::setw(8) << s.puzzles << std::setw(10)
       << s.accuracy() << std::setw(8) << s.rule_accuracy() << '\n';
  };
  for (const auto& s : rep.rows) line(to_string(s.config), s);
  line("average", rep.total);
  return os.str();
}

/// Per-puzzle solve report.
inline Json to_json(const PuzzleSpec& p, const Solution& sol) {
  const auto comps = p.layouts();
  Json j;
  j["id"] = p.id;
  j["config"] = std::string(to_string(p.config));
  j["chosen"] = sol.answer;
  j["answer"] = p.answer;
  j["correct"] = sol.answer == p.answer;
  j["low_confidence"] = sol.low_confidence;
  j["scores"] = sol.scores;
  Json attrs = Json::array();
  for (const auto& a : sol.attributes) {
    Json r;
    r["component"] = comps[a.component].name;
    r["attribute"] = std::string(to_string(a.result.attribute));
    r["rule"] = a.result.found() ? to_string(a.result.label) : std::string("none");
    r["relation"] = a.result.best.label;
    r["score"] = a.result.score;
    r["used"] = a.used;
    attrs.push_back(std::move(r));
  }
  j["attributes"] = std::move(attrs);
  return j;
}

}  // namespace vsar
