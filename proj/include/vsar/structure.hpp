#pragma once

// Structured scene representations.
//
// Panel:  S = sum_j p_j o ( sum_attr k_attr o v_j^attr )
// Grid:   C = sum_j p_j o v_j^exist,  p_j = circular vectors of period n*n
//
// Both are plain (unnormalized) sums. Grid cells are indexed row-major from
// the top-left corner, so a cyclic shift by +1 moves cell j to (j+1) mod n^2.

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "vsar/atomic.hpp"
#include "vsar/hd_vector.hpp"

namespace vsar {

struct StructureError : Error {
  using Error::Error;
};

enum class EntityAttr : std::size_t { kType = 0, kSize = 1, kColor = 2, kExist = 3 };
inline constexpr std::size_t kNumEntityAttrs = 4;

using AttrVectors = std::array<HdVector, kNumEntityAttrs>;

struct PanelObject {
  std::size_t position = 0;
  AttrVectors values;
};

struct PanelShdr {
  HdVector vector;
  std::size_t n_positions = 0;
};

struct GridShdr {
  HdVector vector;
  int side = 0;
};

inline PanelShdr compose_panel(std::span<const PanelObject> objects, const AttrVectors& keys,
                               std::span<const HdVector> positions) {
  if (objects.empty()) throw StructureError("compose_panel: no objects (pass null-attribute objects for empty slots)");
  if (positions.empty()) throw StructureError("compose_panel: no position vectors");
  const std::size_t d = positions.front().dim();
  std::vector<bool> used(positions.size(), false);
  HdVector scene(d);
  for (const auto& obj : objects) {
    if (obj.position >= positions.size()) {
      throw StructureError("compose_panel: position index " + std::to_string(obj.position) + " out of range");
    }
    if (used[obj.position]) {
      throw StructureError("compose_panel: duplicate position index " + std::to_string(obj.position));
    }
    used[obj.position] = true;
    HdVector entity(d);
    for (std::size_t a = 0; a < kNumEntityAttrs; ++a) {
      const HdVector filler = bind(keys[a], obj.values[a]);
      add_scaled(entity, filler, 1.0);
    }
    add_scaled(scene, bind(positions[obj.position], entity), 1.0);
  }
  return {std::move(scene), positions.size()};
}

/// k^{-1} o (p^{-1} o S): a noisy estimate of the attribute value stored
/// under `key` at `position`.
inline HdVector decompose_panel(const PanelShdr& shdr, const HdVector& position, const HdVector& key) {
  return unbind(key, unbind(position, shdr.vector));
}

inline GridShdr compose_grid(std::span<const HdVector> existence, const CircularCodec& positions) {
  const auto cells = static_cast<std::size_t>(positions.period());
  if (existence.size() != cells) {
    throw StructureError("compose_grid: expected " + std::to_string(cells) + " existence vectors, got " +
                         std::to_string(existence.size()));
  }
  const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(cells))));
  HdVector grid(positions.dim());
  for (std::size_t j = 0; j < cells; ++j) {
    add_scaled(grid, bind(positions.encode(static_cast<double>(j)), existence[j]), 1.0);
  }
  return {std::move(grid), side};
}

/// Same sum with precomputed position vectors p_0..p_{n^2-1}.
inline GridShdr compose_grid(std::span<const HdVector> existence, std::span<const HdVector> positions) {
  if (existence.size() != positions.size()) {
    throw StructureError("compose_grid: expected " + std::to_string(positions.size()) + " existence vectors, got " +
                         std::to_string(existence.size()));
  }
  if (positions.empty()) throw StructureError("compose_grid: no cells");
  const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(positions.size()))));
  HdVector grid(positions.front().dim());
  for (std::size_t j = 0; j < positions.size(); ++j) add_scaled(grid, bind(positions[j], existence[j]), 1.0);
  return {std::move(grid), side};
}

/// Cyclic row-major shift: element j moves to (j + shift) mod size.
template <typename T>
std::vector<T> cyclic_shift(std::span<const T> cells, int shift) {
  const auto n = static_cast<int>(cells.size());
  std::vector<T> out(cells.size());
  for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(((j + shift) % n + n) % n)] = cells[static_cast<std::size_t>(j)];
  return out;
}

}  // namespace vsar
