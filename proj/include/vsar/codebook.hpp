#pragma once

// Codebooks and the query/attention pipeline.
//
// Frontend books hold random symbols that a perception model would regress
// to; backend books hold the vectors the reasoner computes with:
//
//   numeric attributes   v(0..9) from one NumericCodec, plus an RV for "null"
//   existence            e(0), e(1) (BV, logic) and two RVs (grid filler)
//   grid positions       circular vectors of period n*n, n in {2, 3}
//
// Query stage: W_j^attr(r) = sim(v_hat_j^attr, C_front[r]); existence is
// additionally softmaxed with inverse temperature beta. Attention stage:
//   v_j^attr   = sum_r W_j^attr(r) * C_back[r]
//   v_nxn^attr = sum_j W_j^exist(1) * v_j^attr
//   v^number   = v^{(o sum_j W_j^exist(1))}
//   C^position = sum_j W_j^exist(1) * p_j o v_j^{exist,RV}

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vsar/atomic.hpp"
#include "vsar/hd_vector.hpp"
#include "vsar/puzzle.hpp"
#include "vsar/rng.hpp"
#include "vsar/structure.hpp"

namespace vsar {

struct EncodingError : Error {
  using Error::Error;
};

inline constexpr std::size_t kNumValues = 10;
inline constexpr std::size_t kNullIndex = 10;
inline constexpr std::size_t kNumericBookSize = 11;
inline constexpr std::size_t kMaxSlots = 9;

struct CodebookConfig {
  std::size_t dim = 3000;
  std::uint64_t seed = 0;
  double beta = 20.0;
};

struct CodebookSet {
  CodebookConfig config;

  std::vector<HdVector> frontend_num;  // v(0..9), v_null
  std::vector<HdVector> frontend_lgc;  // e(0), e(1) roles
  AttrVectors keys;                    // k_type, k_size, k_color, k_exist
  std::vector<HdVector> scene_positions;

  NumericCodec numeric;
  std::vector<HdVector> backend_num;  // v(0..9), null RV
  BooleanCodec boolean;
  std::vector<HdVector> backend_lgc_rv;

  std::array<CircularCodec, 2> grid_codecs;             // n = 2, 3
  std::array<std::vector<HdVector>, 2> grid_positions;  // p_0..p_{n^2-1}

  [[nodiscard]] std::size_t dim() const noexcept { return config.dim; }
  [[nodiscard]] double beta() const noexcept { return config.beta; }

  [[nodiscard]] const CircularCodec& grid_codec(int side) const { return grid_codecs.at(grid_slot(side)); }
  [[nodiscard]] const std::vector<HdVector>& grid_position_vectors(int side) const {
    return grid_positions.at(grid_slot(side));
  }

 private:
  static std::size_t grid_slot(int side) {
    if (side != 2 && side != 3) throw EncodingError("no grid codebook for side " + std::to_string(side));
    return static_cast<std::size_t>(side - 2);
  }
};

inline CodebookSet build_codebooks(const CodebookConfig& config) {
  if (config.dim == 0) throw InvalidDimension("build_codebooks: dimension must be positive");
  CodebookSet books;
  books.config = config;
  const std::size_t d = config.dim;
  // One child stream per book, so adding a book never shifts the others.
  auto stream = [&](std::uint64_t tag) { return Rng(mix_seed(config.seed, tag)); };

  Rng front = stream(1);
  for (std::size_t r = 0; r < kNumericBookSize; ++r) books.frontend_num.push_back(random_vector(d, front));
  for (int r = 0; r < 2; ++r) books.frontend_lgc.push_back(random_vector(d, front));
  for (auto& k : books.keys) k = random_vector(d, front);
  for (std::size_t j = 0; j < kMaxSlots; ++j) books.scene_positions.push_back(random_vector(d, front));

  Rng num = stream(2);
  books.numeric = NumericCodec(d, num);
  for (std::size_t r = 0; r < kNumValues; ++r) books.backend_num.push_back(books.numeric.encode(static_cast<double>(r)));
  books.backend_num.push_back(random_vector(d, num));

  Rng lgc = stream(3);
  books.boolean = BooleanCodec(d, lgc);
  for (int r = 0; r < 2; ++r) books.backend_lgc_rv.push_back(random_vector(d, lgc));

  Rng pos = stream(4);
  for (int side = 2; side <= 3; ++side) {
    const auto slot = static_cast<std::size_t>(side - 2);
    books.grid_codecs[slot] = make_circular_codec(side * side, d, pos);
    for (int j = 0; j < side * side; ++j) books.grid_positions[slot].push_back(books.grid_codecs[slot].encode(j));
  }
  return books;
}

inline std::vector<double> softmax(std::span<const double> x, double beta) {
  if (x.empty()) throw EmptyInput("softmax: empty input");
  double top = x[0];
  for (double v : x) top = std::max(top, v);
  std::vector<double> out(x.size());
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    out[i] = std::exp(beta * (x[i] - top));
    total += out[i];
  }
  for (auto& v : out) v /= total;
  return out;
}

/// Raw similarities of `estimate` against every entry; softmaxed when beta is given.
inline std::vector<double> query_weights(const HdVector& estimate, std::span<const HdVector> book,
                                         std::optional<double> beta = std::nullopt) {
  if (book.empty()) throw EmptyInput("query_weights: empty codebook");
  std::vector<double> w(book.size());
  for (std::size_t r = 0; r < book.size(); ++r) w[r] = similarity(estimate, book[r]);
  if (beta) return softmax(w, *beta);
  return w;
}

/// Query-stage output for one slot.
struct SlotWeights {
  std::array<std::vector<double>, 3> attr;  // type, size, color over the 11-entry book
  std::array<double, 2> exist{};            // softmaxed: absent, present
};

namespace detail {

inline void require_label(int value, Attribute a) {
  if (value < 0 || value >= value_count(a)) {
    throw EncodingError("label out of range for " + std::string(to_string(a)) + ": " + std::to_string(value));
  }
}

inline std::size_t slot_label(const Slot& s, Attribute a) {
  if (!s.exist) return kNullIndex;
  require_label(s.value(a), a);
  return static_cast<std::size_t>(s.value(a));
}

inline std::vector<double> noisy_onehot(std::size_t size, std::size_t hot, double eta, Rng& rng) {
  std::vector<double> w(size);
  for (std::size_t r = 0; r < size; ++r) w[r] = (r == hot ? 1.0 - eta : 0.0) + (eta > 0.0 ? eta * rng.uniform() : 0.0);
  return w;
}

inline HdVector weighted_sum(std::span<const double> w, std::span<const HdVector> book) {
  HdVector out(book.front().dim());
  for (std::size_t r = 0; r < book.size(); ++r) {
    if (w[r] != 0.0) add_scaled(out, book[r], w[r]);
  }
  return out;
}

inline void require_slots(std::size_t slots, int side) {
  if (slots != static_cast<std::size_t>(side * side)) {
    throw EncodingError("panel has " + std::to_string(slots) + " slots, expected " + std::to_string(side * side));
  }
  if (slots > kMaxSlots) throw EncodingError("panel exceeds " + std::to_string(kMaxSlots) + " slots");
}

}  // namespace detail

/// Synthesizes query-stage weights from symbolic labels:
/// W = (1 - eta) * onehot + eta * U[0, 1), then softmax(beta * W) for existence.
inline std::vector<SlotWeights> weights_from_labels(const ComponentPanel& panel, double eta, Rng& rng, double beta) {
  if (!(eta >= 0.0 && eta <= 1.0)) throw EncodingError("noise level must lie in [0, 1]");
  std::vector<SlotWeights> out(panel.slots.size());
  for (std::size_t j = 0; j < panel.slots.size(); ++j) {
    const Slot& s = panel.slots[j];
    for (std::size_t a = 0; a < 3; ++a) {
      out[j].attr[a] = detail::noisy_onehot(kNumericBookSize, detail::slot_label(s, kEntityAttributes[a]), eta, rng);
    }
    const auto raw = detail::noisy_onehot(2, s.exist ? 1 : 0, eta, rng);
    const auto e = softmax(raw, beta);
    out[j].exist = {e[0], e[1]};
  }
  return out;
}

/// Frontend panel SHDR of a symbolic panel; absent slots carry v_null and e(0).
inline PanelShdr compose_panel_from_labels(const ComponentPanel& panel, const CodebookSet& books) {
  detail::require_slots(panel.slots.size(), static_cast<int>(std::lround(std::sqrt(panel.slots.size()))));
  std::vector<PanelObject> objects;
  for (std::size_t j = 0; j < panel.slots.size(); ++j) {
    const Slot& s = panel.slots[j];
    PanelObject obj;
    obj.position = j;
    for (std::size_t a = 0; a < 3; ++a) obj.values[a] = books.frontend_num[detail::slot_label(s, kEntityAttributes[a])];
    obj.values[static_cast<std::size_t>(EntityAttr::kExist)] = books.frontend_lgc[s.exist ? 1 : 0];
    objects.push_back(std::move(obj));
  }
  return compose_panel(objects, books.keys,
                       std::span<const HdVector>(books.scene_positions).first(panel.slots.size()));
}

/// Query stage on a panel SHDR: decompose every slot and compare with the frontend books.
inline std::vector<SlotWeights> weights_from_shdr(const PanelShdr& shdr, const CodebookSet& books) {
  std::vector<SlotWeights> out(shdr.n_positions);
  for (std::size_t j = 0; j < shdr.n_positions; ++j) {
    for (std::size_t a = 0; a < 3; ++a) {
      out[j].attr[a] = query_weights(decompose_panel(shdr, books.scene_positions[j], books.keys[a]), books.frontend_num);
    }
    const auto e = query_weights(
        decompose_panel(shdr, books.scene_positions[j], books.keys[static_cast<std::size_t>(EntityAttr::kExist)]),
        books.frontend_lgc, books.beta());
    out[j].exist = {e[0], e[1]};
  }
  return out;
}

/// Attention-stage output for one component of one panel.
struct PanelEncoding {
  int side = 1;
  std::vector<std::array<HdVector, 3>> slot_attr;
  std::vector<HdVector> exist_bv;
  std::vector<HdVector> exist_rv;
  std::vector<double> presence;  // W_j^exist(1)
  HdVector number;
  std::array<HdVector, 3> overall;  // v_nxn for type, size, color
  std::optional<HdVector> position;

  [[nodiscard]] const HdVector& attribute(Attribute a) const {
    switch (a) {
      case Attribute::kType: return overall[0];
      case Attribute::kSize: return overall[1];
      case Attribute::kColor: return overall[2];
      case Attribute::kNumber: return number;
      case Attribute::kPosition:
        if (!position) throw EncodingError("component has no position representation");
        return *position;
    }
    throw EncodingError("unknown attribute");
  }
};

inline PanelEncoding encode_panel(std::span<const SlotWeights> weights, int side, const CodebookSet& books) {
  detail::require_slots(weights.size(), side);
  const std::size_t d = books.dim();
  PanelEncoding enc;
  enc.side = side;
  const std::array<HdVector, 2> bv = {books.boolean.e0(), books.boolean.e1()};
  double count = 0.0;
  for (auto& o : enc.overall) o = HdVector(d);
  for (const auto& w : weights) {
    std::array<HdVector, 3> attrs;
    for (std::size_t a = 0; a < 3; ++a) {
      if (w.attr[a].size() != kNumericBookSize) throw EncodingError("attribute weights must cover the 11-entry book");
      attrs[a] = detail::weighted_sum(w.attr[a], books.backend_num);
      add_scaled(enc.overall[a], attrs[a], w.exist[1]);
    }
    enc.slot_attr.push_back(std::move(attrs));
    enc.exist_bv.push_back(detail::weighted_sum(w.exist, bv));
    enc.exist_rv.push_back(detail::weighted_sum(w.exist, books.backend_lgc_rv));
    enc.presence.push_back(w.exist[1]);
    count += w.exist[1];
  }
  enc.number = books.numeric.encode(count);
  if (side >= 2) {
    const auto& p = books.grid_position_vectors(side);
    HdVector c(d);
    for (std::size_t j = 0; j < weights.size(); ++j) add_scaled(c, bind(p[j], enc.exist_rv[j]), enc.presence[j]);
    enc.position = std::move(c);
  }
  return enc;
}

inline PanelEncoding encode_panel_from_labels(const ComponentPanel& panel, int side, const CodebookSet& books,
                                              double eta, Rng& rng) {
  detail::require_slots(panel.slots.size(), side);
  const auto w = weights_from_labels(panel, eta, rng, books.beta());
  return encode_panel(w, side, books);
}

}  // namespace vsar
