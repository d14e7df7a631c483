// vsar: generate puzzle datasets, solve them, and tabulate accuracy.
//
//   vsar gen  --config center --n 10 --seed 1 --out puzzles.jsonl
//   vsar solve puzzles.jsonl [--eta 0.2] [--json]
//   vsar eval  puzzles.jsonl [--json | --csv]
//
// Exit codes: 0 success, 1 data error, 2 I/O error.
// VSAR_SEED overrides the default generator seed.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vsar/vsar.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kDataError = 1;
constexpr int kIoError = 2;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("VSAR_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring unparsable VSAR_SEED='" << env << "'\n";
    }
  }
  return 0;
}

void add_backend_options(CLI::App& cmd, vsar::RunConfig& rc) {
  cmd.add_option("--dim", rc.dim, "vector dimension")->capture_default_str();
  cmd.add_option("--beta", rc.beta, "softmax inverse temperature")->capture_default_str();
  cmd.add_option("--eta", rc.eta, "label noise level in [0, 1]")->capture_default_str();
  cmd.add_option("--codebook-seed", rc.codebook_seed, "codebook seed")->capture_default_str();
  cmd.add_option("--noise-seed", rc.noise_seed, "label noise seed")->capture_default_str();
}

std::vector<vsar::Configuration> parse_configs(const std::vector<std::string>& names) {
  std::vector<vsar::Configuration> out;
  for (const auto& n : names) {
    if (n == "all") {
      out.assign(vsar::kAllConfigurations.begin(), vsar::kAllConfigurations.end());
      continue;
    }
    out.push_back(vsar::parse_configuration(n));
  }
  return out;
}

int cmd_gen(vsar::RunConfig rc, const std::vector<std::string>& configs, bool json) {
  rc.configurations = parse_configs(configs);
  std::ofstream os(rc.output, std::ios::binary);
  if (!os) {
    std::cerr << "error: cannot write '" << rc.output << "'\n";
    return kIoError;
  }
  const auto puzzles = vsar::generate_dataset(rc);
  vsar::write_dataset(os, puzzles);
  os.close();
  if (!os) {
    std::cerr << "error: failed writing '" << rc.output << "'\n";
    return kIoError;
  }
  vsar::Json manifest;
  manifest["run_config"] = vsar::to_json(rc);
  vsar::Json counts = vsar::Json::object();
  for (auto c : rc.configurations) counts[std::string(vsar::to_string(c))] = rc.n_puzzles;
  manifest["counts"] = std::move(counts);
  manifest["total"] = puzzles.size();
  if (json) {
    std::cout << manifest.dump(2) << '\n';
  } else {
    std::cout << "wrote " << puzzles.size() << " puzzles to " << rc.output << " (generator seed "
              << rc.generator_seed << ")\n";
    for (auto c : rc.configurations) std::cout << "  " << vsar::to_string(c) << ": " << rc.n_puzzles << '\n';
  }
  return kOk;
}

bool load(const std::string& path, vsar::LoadedDataset& data) {
  std::ifstream is(path, std::ios::binary);
  if (!is) {
    std::cerr << "error: cannot read '" << path << "'\n";
    return false;
  }
  data = vsar::read_dataset(is);
  for (const auto& e : data.errors) std::cerr << path << ":" << e.line << ": " << e.message << '\n';
  return true;
}

void print_solution(const vsar::PuzzleSpec& p, const vsar::Solution& sol) {
  const auto comps = p.layouts();
  std::cout << "puzzle " << p.id << " (" << vsar::to_string(p.config) << "): chose " << sol.answer << ", answer "
            << p.answer << (sol.answer == p.answer ? ", correct" : ", wrong")
            << (sol.low_confidence ? " [low confidence]" : "") << '\n';
  for (const auto& a : sol.attributes) {
    std::cout << "  " << comps[a.component].name << '.' << vsar::to_string(a.result.attribute) << ": "
              << (a.result.found() ? vsar::to_string(a.result.label) : std::string("none")) << "  s="
              << std::fixed << std::setprecision(4) << a.result.score << (a.used ? "" : "  (unused)") << '\n';
  }
  std::cout << "  scores:";
  for (double s : sol.scores) std::cout << ' ' << std::fixed << std::setprecision(3) << s;
  std::cout << '\n';
}

int cmd_solve(vsar::RunConfig rc, bool json) {
  vsar::LoadedDataset data;
  if (!load(rc.input, data)) return kIoError;
  rc.n_puzzles = data.puzzles.size();
  const auto books = vsar::build_codebooks(vsar::codebook_config(rc));
  const auto opt = vsar::solve_options(rc);
  vsar::Json report;
  report["run_config"] = vsar::to_json(rc);
  vsar::Json rows = vsar::Json::array();
  for (const auto& p : data.puzzles) {
    const auto sol = vsar::solve(p, books, opt);
    if (json) {
      rows.push_back(vsar::to_json(p, sol));
    } else {
      print_solution(p, sol);
    }
  }
  if (json) {
    report["puzzles"] = std::move(rows);
    vsar::Json errors = vsar::Json::array();
    for (const auto& e : data.errors) errors.push_back({{"line", e.line}, {"message", e.message}});
    report["errors"] = std::move(errors);
    std::cout << report.dump(2) << '\n';
  } else {
    std::cout << "eta " << rc.eta << ", " << data.puzzles.size() << " puzzles, " << data.errors.size()
              << " malformed lines\n";
  }
  return data.errors.empty() ? kOk : kDataError;
}

int cmd_eval(vsar::RunConfig rc, bool json, bool csv) {
  vsar::LoadedDataset data;
  if (!load(rc.input, data)) return kIoError;
  rc.n_puzzles = data.puzzles.size();
  const auto rep = vsar::evaluate(data.puzzles, rc);
  if (json) {
    std::cout << vsar::to_json(rep).dump(2) << '\n';
  } else if (csv) {
    std::cout << vsar::to_csv(rep);
  } else {
    std::cout << vsar::to_table(rep);
  }
  return data.errors.empty() ? kOk : kDataError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vector-symbolic abductive reasoning on matrix puzzles"};
  app.require_subcommand(1);

  vsar::RunConfig gen_rc;
  gen_rc.generator_seed = default_seed();
  std::vector<std::string> gen_configs{"all"};
  bool gen_json = false;
  auto* gen = app.add_subcommand("gen", "generate a JSON-lines puzzle dataset");
  gen->add_option("--config", gen_configs, "configuration name or 'all' (repeatable)")->capture_default_str();
  gen->add_option("--n", gen_rc.n_puzzles, "puzzles per configuration")->required();
  gen->add_option("--seed", gen_rc.generator_seed, "generator seed")->capture_default_str();
  gen->add_option("--out", gen_rc.output, "output path")->required();
  gen->add_flag("--json", gen_json, "print the manifest as JSON");

  vsar::RunConfig solve_rc;
  bool solve_json = false;
  auto* solve = app.add_subcommand("solve", "solve every puzzle in a dataset");
  solve->add_option("file", solve_rc.input, "dataset path")->required();
  add_backend_options(*solve, solve_rc);
  solve->add_flag("--json", solve_json, "machine-readable report");

  vsar::RunConfig eval_rc;
  bool eval_json = false;
  bool eval_csv = false;
  auto* eval = app.add_subcommand("eval", "accuracy table for a dataset");
  eval->add_option("file", eval_rc.input, "dataset path")->required();
  add_backend_options(*eval, eval_rc);
  auto* ej = eval->add_flag("--json", eval_json, "JSON report");
  eval->add_flag("--csv", eval_csv, "CSV report")->excludes(ej);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kDataError;
  }

  try {
    if (*gen) return cmd_gen(gen_rc, gen_configs, gen_json);
    if (*solve) {
      vsar::validate(solve_rc);
      return cmd_solve(solve_rc, solve_json);
    }
    if (*eval) {
      vsar::validate(eval_rc);
      return cmd_eval(eval_rc, eval_json, eval_csv);
    }
  } catch (const vsar::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  } catch (const vsar::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kOk;
}
