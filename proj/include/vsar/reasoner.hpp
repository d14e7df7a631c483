#pragma once

// Rule abduction, execution and answer selection.
//
// Abduction tries every candidate relation on the context rows and keeps the
// one whose outputs agree best. The score of a candidate is the geometric
// mean of the pairwise output similarities, each clamped to [0, 1]; relations
// whose output is fixed to the identity also compare every output with it:
//
//   binary   5 context pairs  (1,1)-(1,2), (1,2)-(1,3), ..., (3,1)-(3,2)
//   ternary  2 context rows
//   logical  every (row, cell) of the two complete rows, pooled
//
// Execution applies the inverse relation to the third row; the answer is the
// candidate with the largest summed similarity to the predictions.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vsar/atomic.hpp"
#include "vsar/codebook.hpp"
#include "vsar/hd_vector.hpp"
#include "vsar/puzzle.hpp"
#include "vsar/relations.hpp"
#include "vsar/rng.hpp"
#include "vsar/structure.hpp"
#include "vsar/symbolic.hpp"

namespace vsar {

struct UnsupportedInverse : Error {
  using Error::Error;
};

inline constexpr double kNoRuleFloor = 0.3;
inline constexpr double kTieTolerance = 1e-6;

/// Candidate relations in tie-break priority order.
inline std::vector<RelationSpec> candidate_rules(Attribute a) {
  std::vector<RelationSpec> out = {relation::binary(), relation::arithmetic_plus(), relation::arithmetic_minus(),
                                   relation::distribute_three()};
  if (a == Attribute::kPosition) {
    out.push_back(relation::logical_and());
    out.push_back(relation::logical_or());
    out.push_back(relation::logical_diff());
    out.push_back(relation::logical_xor());
  }
  return out;
}

struct CandidateScore {
  RelationSpec spec;
  double score = 0.0;
};

struct AbductionResult {
  Attribute attribute = Attribute::kType;
  RelationSpec best;
  HdVector r_bar;
  double score = 0.0;
  std::vector<CandidateScore> table;
  RuleLabel label;

  [[nodiscard]] bool found() const noexcept { return score >= kNoRuleFloor; }
  [[nodiscard]] bool logical() const noexcept { return best.is_logical(); }
};

/// Cosine similarity, or 0 when either side is the zero vector.
inline double safe_similarity(const HdVector& a, const HdVector& b) {
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    na += std::norm(a[i]);
    nb += std::norm(b[i]);
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return similarity(a, b);
}

/// Cosine similarity over the entries where `predicted` is nonzero, or 0 when
/// either restricted side vanishes.
inline double support_similarity(const HdVector& predicted, const HdVector& target) {
  detail::require_same_dim(predicted, target, "support_similarity");
  double dot = 0.0;
  double np = 0.0;
  double nt = 0.0;
  for (std::size_t i = 0; i < predicted.dim(); ++i) {
    if (predicted[i] == Complex{}) continue;
    dot += predicted[i].real() * target[i].real() + predicted[i].imag() * target[i].imag();
    np += std::norm(predicted[i]);
    nt += std::norm(target[i]);
  }
  if (np == 0.0 || nt == 0.0) return 0.0;
  return dot / std::sqrt(np * nt);
}

enum class Agreement {
  kAngle,          // cosine
  kAngleAndScale,  // 2 Re<a, b> / (|a|^2 + |b|^2): also penalizes unequal moduli
  kPhase,          // mean cosine of the per-entry phase difference
};

/// Agreement of two relation outputs over the entries that are nonzero in
/// both; entries zeroed by a pseudo-inverse carry no information. Returns
/// nullopt when the supports do not overlap.
inline std::optional<double> overlap_agreement(const HdVector& a, const HdVector& b, Agreement kind) {
  detail::require_same_dim(a, b, "overlap_agreement");
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  if (kind == Agreement::kPhase) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
      if (a[i] == Complex{} || b[i] == Complex{}) continue;
      dot += std::cos(std::arg(a[i]) - std::arg(b[i]));
      ++n;
    }
    if (n == 0) return std::nullopt;
    return dot / static_cast<double>(n);
  }
  for (std::size_t i = 0; i < a.dim(); ++i) {
    if (a[i] == Complex{} || b[i] == Complex{}) continue;
    dot += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    na += std::norm(a[i]);
    nb += std::norm(b[i]);
  }
  if (na == 0.0 || nb == 0.0) return std::nullopt;
  return kind == Agreement::kAngle ? dot / std::sqrt(na * nb) : 2.0 * dot / (na + nb);
}

/// Similarities below this are indistinguishable from unrelated vectors.
inline double noise_floor(std::size_t d) { return 4.0 / std::sqrt(static_cast<double>(d)); }

/// Geometric mean of pairwise agreements clamped to [0, 1]; agreements below
/// the noise floor count as 0 and pairs without common support are skipped.
inline double consistency_score(std::span<const HdVector> outputs, Agreement kind = Agreement::kAngle) {
  if (outputs.size() < 2) return 0.0;
  const double floor = noise_floor(outputs.front().dim());
  double log_sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t a = 0; a < outputs.size(); ++a) {
    for (std::size_t b = a + 1; b < outputs.size(); ++b) {
      const auto agree = overlap_agreement(outputs[a], outputs[b], kind);
      if (!agree) continue;
      const double s = std::min(*agree, 1.0);
      if (s < floor) return 0.0;
      log_sum += std::log(s);
      ++pairs;
    }
  }
  if (pairs == 0) return 0.0;
  return std::exp(log_sum / static_cast<double>(pairs));
}

namespace detail {

inline constexpr std::array<std::array<int, 2>, 5> kBinaryPairs = {{{0, 1}, {1, 2}, {3, 4}, {4, 5}, {6, 7}}};
inline constexpr std::array<std::array<int, 3>, 2> kTernaryRows = {{{0, 1, 2}, {3, 4, 5}}};

inline std::vector<HdVector> relation_outputs(std::span<const PanelEncoding> ctx, Attribute attr,
                                              const RelationSpec& spec, const CodebookSet& books) {
  std::vector<HdVector> out;
  if (spec.is_logical()) {
    const std::size_t cells = ctx[0].exist_bv.size();
    for (const auto& row : kTernaryRows) {
      for (std::size_t j = 0; j < cells; ++j) {
        const std::array<HdVector, 3> in = {ctx[static_cast<std::size_t>(row[0])].exist_bv[j],
                                            ctx[static_cast<std::size_t>(row[1])].exist_bv[j],
                                            ctx[static_cast<std::size_t>(row[2])].exist_bv[j]};
        out.push_back(rel_lgc(in, spec, books.boolean));
      }
    }
    return out;
  }
  if (spec.arity == 2) {
    for (const auto& p : kBinaryPairs) {
      const std::array<HdVector, 2> in = {ctx[static_cast<std::size_t>(p[0])].attribute(attr),
                                          ctx[static_cast<std::size_t>(p[1])].attribute(attr)};
      out.push_back(rel_num(in, spec));
    }
    return out;
  }
  for (const auto& row : kTernaryRows) {
    const std::array<HdVector, 3> in = {ctx[static_cast<std::size_t>(row[0])].attribute(attr),
                                        ctx[static_cast<std::size_t>(row[1])].attribute(attr),
                                        ctx[static_cast<std::size_t>(row[2])].attribute(attr)};
    out.push_back(rel_num(in, spec));
  }
  return out;
}

inline RuleLabel decode_label(const RelationSpec& spec, const HdVector& raw_sum, Attribute attr, int side,
                              const CodebookSet& books) {
  if (spec.is_logical()) {
    if (spec.label == "AND") return {RuleFamily::kAnd, 0};
    if (spec.label == "OR") return {RuleFamily::kArithmeticPlus, 0};
    if (spec.label == "DIFF") return {RuleFamily::kArithmeticMinus, 0};
    return {RuleFamily::kXor, 0};
  }
  if (spec.arity == 3) {
    if (spec.op_powers == relation::arithmetic_plus().op_powers) return {RuleFamily::kArithmeticPlus, 0};
    if (spec.op_powers == relation::arithmetic_minus().op_powers) return {RuleFamily::kArithmeticMinus, 0};
    return {RuleFamily::kDistributeThree, 0};
  }
  std::vector<int> steps = {0};
  if (attr == Attribute::kPosition) {
    for (int s : position_steps(side)) steps.push_back(s);
  } else {
    for (int s : {1, -1, 2, -2}) steps.push_back(s);
  }
  int best = 0;
  double best_sim = -2.0;
  for (int s : steps) {
    const HdVector ref = attr == Attribute::kPosition ? books.grid_codec(side).encode(s) : books.numeric.encode(s);
    const double sim = safe_similarity(raw_sum, ref);
    if (sim > best_sim) {
      best_sim = sim;
      best = s;
    }
  }
  if (best == 0) return {RuleFamily::kConstant, 0};
  return {RuleFamily::kProgression, best};
}

}  // namespace detail

/// Scores every candidate relation on the 8 context encodings of one component.
inline AbductionResult abduce(std::span<const PanelEncoding> context, Attribute attr,
                              std::span<const RelationSpec> candidates, const CodebookSet& books) {
  if (context.size() != 8) throw ArityError("abduce: expected 8 context panels, got " + std::to_string(context.size()));
  if (candidates.empty()) throw EmptyInput("abduce: no candidate relations");
  AbductionResult res;
  res.attribute = attr;
  std::vector<HdVector> best_outputs;
  bool have_best = false;
  for (const auto& spec : candidates) {
    auto outputs = detail::relation_outputs(context, attr, spec, books);
    // Grid vectors encode the layout in their moduli as well as their phases.
    Agreement kind = Agreement::kPhase;
    if (attr == Attribute::kPosition) kind = spec.is_logical() ? Agreement::kAngle : Agreement::kAngleAndScale;
    double s = 0.0;
    if (spec.identity_output) {
      // The expected output joins the pool, so rows must also agree with it.
      outputs.push_back(HdVector::identity(books.dim()));
      s = consistency_score(outputs, kind);
      outputs.pop_back();
    } else {
      s = consistency_score(outputs, kind);
    }
    res.table.push_back({spec, s});
    if (!have_best || s > res.score + kTieTolerance) {
      res.best = spec;
      res.score = s;
      best_outputs = std::move(outputs);
      have_best = true;
    }
  }
  // Grid vectors keep the layout in their moduli, so position relations use
  // the plain mean; everything else uses the normalized bundle.
  if (attr == Attribute::kPosition && !res.best.is_logical()) {
    res.r_bar = scaled(bundle(best_outputs), 1.0 / static_cast<double>(best_outputs.size()));
  } else {
    res.r_bar = bundle(best_outputs, Normalize::kYes);
  }
  res.label = detail::decode_label(res.best, bundle(best_outputs), attr, context[0].side, books);
  return res;
}

inline AbductionResult abduce(std::span<const PanelEncoding> context, Attribute attr, const CodebookSet& books) {
  const auto candidates = candidate_rules(attr);
  return abduce(context, attr, candidates, books);
}

struct Execution {
  HdVector predicted;
  std::vector<HdVector> cells;  // logical position only: per-cell boolean estimates
  std::optional<unsigned> layout;
};

/// Predicts the missing attribute representation from row 3 (context panels 6 and 7).
inline Execution execute(const AbductionResult& result, const PanelEncoding& row3_col1, const PanelEncoding& row3_col2,
                         const CodebookSet& books) {
  Execution ex;
  const Attribute attr = result.attribute;
  if (!result.logical()) {
    if (result.best.arity == 2) {
      const std::array<HdVector, 1> in = {row3_col2.attribute(attr)};
      ex.predicted = rel_num_inverse(in, result.best, result.r_bar);
    } else {
      const std::array<HdVector, 2> in = {row3_col1.attribute(attr), row3_col2.attribute(attr)};
      ex.predicted = rel_num_inverse(in, result.best, result.r_bar);
    }
    return ex;
  }
  const auto& bv = books.boolean;
  if (similarity(result.r_bar, bv.e1()) > similarity(result.r_bar, bv.e0())) {
    throw UnsupportedInverse("execute: logical rule with output e(1) has no closed-form inverse");
  }
  const int side = row3_col1.side;
  const auto& positions = books.grid_position_vectors(side);
  const std::size_t cells = row3_col1.exist_bv.size();
  std::vector<HdVector> filler(cells, HdVector(books.dim()));
  unsigned layout = 0;
  for (std::size_t j = 0; j < cells; ++j) {
    const std::array<HdVector, 2> in = {row3_col1.exist_bv[j], row3_col2.exist_bv[j]};
    ex.cells.push_back(rel_lgc_inverse(in, result.best, result.r_bar, bv));
    if (bv.decode(ex.cells.back())) {
      layout |= 1u << j;
      filler[j] = books.backend_lgc_rv[1];
    }
  }
  ex.layout = layout;
  ex.predicted = compose_grid(filler, positions).vector;
  return ex;
}

/// Summed similarity of each candidate to the predictions, taken over the
/// predicted support since masked entries of a pseudo-inverse carry nothing.
/// Ties go to the lowest index.
struct Selection {
  int index = 0;
  std::array<double, 8> scores{};
};

/// predictions[c] maps attributes of component c to predicted vectors;
/// candidates[k][c] is the encoding of component c of candidate k.
inline Selection select_answer(const std::vector<std::map<Attribute, HdVector>>& predictions,
                               std::span<const std::vector<PanelEncoding>> candidates) {
  Selection sel;
  for (std::size_t k = 0; k < candidates.size() && k < 8; ++k) {
    double total = 0.0;
    for (std::size_t c = 0; c < predictions.size(); ++c) {
      for (const auto& [attr, v] : predictions[c]) total += support_similarity(v, candidates[k][c].attribute(attr));
    }
    sel.scores[k] = total;
    if (total > sel.scores[static_cast<std::size_t>(sel.index)]) sel.index = static_cast<int>(k);
  }
  return sel;
}

struct SolveOptions {
  double eta = 0.0;
  std::uint64_t noise_seed = 0;
};

struct AttributeReport {
  std::size_t component = 0;
  AbductionResult result;
  bool used = false;  // entered answer selection
};

struct Solution {
  int answer = 0;
  std::array<double, 8> scores{};
  std::vector<AttributeReport> attributes;
  bool low_confidence = false;

  /// Abduced rules of the attributes that entered answer selection, per component.
  [[nodiscard]] std::vector<ComponentRules> rules(std::size_t components) const {
    std::vector<ComponentRules> out(components);
    for (const auto& a : attributes) {
      if (a.used) out[a.component][a.result.attribute] = a.result.label;
    }
    return out;
  }
};

struct EncodedPuzzle {
  std::vector<std::vector<PanelEncoding>> context;     // [component][panel 0..7]
  std::vector<std::vector<PanelEncoding>> candidates;  // [candidate][component]
};

/// Label-driven encodings of every panel; noise is drawn from one stream per puzzle.
inline EncodedPuzzle encode_puzzle(const PuzzleSpec& p, const CodebookSet& books, const SolveOptions& opt) {
  const auto comps = p.layouts();
  Rng rng(mix_seed(opt.noise_seed, p.id));
  EncodedPuzzle enc;
  enc.context.resize(comps.size());
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (std::size_t i = 0; i < 8; ++i) {
      if (c >= p.context[i].components.size()) throw ParseError("context panel is missing component " + comps[c].name);
      enc.context[c].push_back(encode_panel_from_labels(p.context[i].components[c], comps[c].side, books, opt.eta, rng));
    }
  }
  for (std::size_t k = 0; k < 8; ++k) {
    std::vector<PanelEncoding> cand;
    for (std::size_t c = 0; c < comps.size(); ++c) {
      if (c >= p.candidates[k].components.size()) throw ParseError("candidate is missing component " + comps[c].name);
      cand.push_back(encode_panel_from_labels(p.candidates[k].components[c], comps[c].side, books, opt.eta, rng));
    }
    enc.candidates.push_back(std::move(cand));
  }
  return enc;
}

/// Minimum similarity between a predicted grid vector and some candidate's
/// grid vector for a position rule to take the layout.
inline constexpr double kLayoutMatch = 0.9;

/// A grid vector spans only n*n frequency classes, so numerical relations on
/// it can agree by chance. A genuine position rule predicts a layout that
/// some candidate actually has.
inline bool position_verified(const AbductionResult& pos, std::span<const PanelEncoding> ctx,
                              const std::vector<std::vector<PanelEncoding>>& candidates, std::size_t component,
                              const CodebookSet& books) {
  if (!pos.found()) return false;
  HdVector predicted;
  try {
    predicted = execute(pos, ctx[6], ctx[7], books).predicted;
  } catch (const UnsupportedInverse&) {
    return false;
  }
  for (const auto& cand : candidates) {
    if (support_similarity(predicted, cand[component].attribute(Attribute::kPosition)) >= kLayoutMatch) return true;
  }
  return false;
}

/// Full pipeline on one puzzle. Components are reasoned about independently
/// and their selection scores are summed. In a grid, a verified position rule
/// scoring at least as high as the number rule takes the layout, and the
/// number rule is kept only on a tie; otherwise number is used.
inline Solution solve(const PuzzleSpec& p, const CodebookSet& books, const SolveOptions& opt = {}) {
  const auto comps = p.layouts();
  const auto enc = encode_puzzle(p, books, opt);
  Solution sol;
  std::vector<std::map<Attribute, HdVector>> predictions(comps.size());

  for (std::size_t c = 0; c < comps.size(); ++c) {
    const auto& ctx = enc.context[c];
    std::map<Attribute, std::size_t> report_of;
    for (Attribute a : component_attributes(comps[c].side)) {
      report_of[a] = sol.attributes.size();
      sol.attributes.push_back({c, abduce(ctx, a, books), false});
    }
    auto use = [&](Attribute a) {
      auto& rep = sol.attributes[report_of.at(a)];
      if (!rep.result.found()) {
        sol.low_confidence = true;
        return;
      }
      try {
        predictions[c][a] = execute(rep.result, ctx[6], ctx[7], books).predicted;
        rep.used = true;
      } catch (const UnsupportedInverse&) {
        sol.low_confidence = true;
      }
    };
    for (Attribute a : kEntityAttributes) use(a);
    if (comps[c].side >= 2) {
      auto& pos = sol.attributes[report_of.at(Attribute::kPosition)].result;
      const auto& num = sol.attributes[report_of.at(Attribute::kNumber)].result;
      // Among tied position relations, the first one that verifies is taken.
      bool verified = false;
      if (pos.score + kTieTolerance >= num.score) {
        for (const auto& entry : pos.table) {
          if (entry.score + kTieTolerance < pos.score) continue;
          const std::array<RelationSpec, 1> only = {entry.spec};
          auto alt = entry.spec.label == pos.best.label ? pos : abduce(ctx, Attribute::kPosition, only, books);
          if (position_verified(alt, ctx, enc.candidates, c, books)) {
            alt.table = pos.table;
            pos = std::move(alt);
            verified = true;
            break;
          }
        }
      }
      if (verified) {
        use(Attribute::kPosition);
        // A layout rule fixes the counts too, so a tied number rule is kept.
        if (num.score + kTieTolerance >= pos.score) use(Attribute::kNumber);
      } else {
        use(Attribute::kNumber);
      }
    }
  }

  const auto sel = select_answer(predictions, enc.candidates);
  sol.answer = sel.index;
  sol.scores = sel.scores;
  return sol;
}

}  // namespace vsar
