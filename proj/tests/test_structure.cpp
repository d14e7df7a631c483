#include <array>
#include <vector>

#include <gtest/gtest.h>

#include "vsar/structure.hpp"

namespace vsar {
namespace {

constexpr std::size_t kDim = 3000;

class Scene : public ::testing::Test {
 protected:
  Rng rng{1};
  AttrVectors keys{random_vector(kDim, rng), random_vector(kDim, rng), random_vector(kDim, rng),
                   random_vector(kDim, rng)};
  std::vector<HdVector> positions = make_positions();
  std::vector<HdVector> values = make_values();

  std::vector<HdVector> make_positions() {
    std::vector<HdVector> p;
    for (int j = 0; j < 9; ++j) p.push_back(random_vector(kDim, rng));
    return p;
  }
  std::vector<HdVector> make_values() {
    std::vector<HdVector> v;
    for (int j = 0; j < 12; ++j) v.push_back(random_vector(kDim, rng));
    return v;
  }
  PanelObject object(std::size_t pos, std::size_t t, std::size_t s, std::size_t c, std::size_t e) const {
    return {pos, {values[t], values[s], values[c], values[e]}};
  }
};

TEST_F(Scene, SingleObjectDecomposesExactly) {
  const std::vector<PanelObject> objs = {object(1, 2, 5, 7, 11)};
  const auto shdr = compose_panel(objs, keys, positions);
  const auto type = decompose_panel(shdr, positions[1], keys[0]);
  // The estimate is the type vector plus the other three attributes bound
  // to k_type^-1 o k_attr; removing those leaves the type vector exactly.
  auto residual = type;
  for (std::size_t a = 1; a < kNumEntityAttrs; ++a) {
    add_scaled(residual, bind(unbind(keys[0], keys[a]), objs[0].values[a]), -1.0);
  }
  EXPECT_LT(max_phase_error(residual, values[2]), 1e-9);
  EXPECT_NEAR(similarity(type, values[2]), 0.5, 0.05);
  EXPECT_EQ(cleanup(type, values), 2u);
}

TEST_F(Scene, TwoObjectsRetrieveColor) {
  const std::vector<PanelObject> objs = {object(1, 0, 1, 3, 11), object(4, 2, 2, 8, 11)};
  const auto shdr = compose_panel(objs, keys, positions);
  EXPECT_EQ(cleanup(decompose_panel(shdr, positions[1], keys[2]), values), 3u);
  EXPECT_EQ(cleanup(decompose_panel(shdr, positions[4], keys[2]), values), 8u);
}

TEST_F(Scene, FullPanelRetrievesEveryAttributeByCleanup) {
  std::vector<std::array<std::size_t, kNumEntityAttrs>> labels;
  std::vector<PanelObject> objs;
  for (std::size_t j = 0; j < 9; ++j) {
    labels.push_back({j % 10, (j + 3) % 10, (j + 6) % 10, 10 + j % 2});
    const auto& l = labels.back();
    objs.push_back(object(j, l[0], l[1], l[2], l[3]));
  }
  const auto shdr = compose_panel(objs, keys, positions);
  for (std::size_t j = 0; j < objs.size(); ++j) {
    for (std::size_t a = 0; a < kNumEntityAttrs; ++a) {
      const auto est = decompose_panel(shdr, positions[j], keys[a]);
      EXPECT_EQ(cleanup(est, values), labels[j][a]) << "slot " << j << " attr " << a;
    }
  }
}

TEST_F(Scene, RejectsInvalidObjects) {
  EXPECT_THROW(compose_panel(std::vector<PanelObject>{}, keys, positions), StructureError);
  const std::vector<PanelObject> dup = {object(0, 0, 0, 0, 10), object(0, 1, 1, 1, 10)};
  EXPECT_THROW(compose_panel(dup, keys, positions), StructureError);
  const std::vector<PanelObject> out = {object(9, 0, 0, 0, 10)};
  EXPECT_THROW(compose_panel(out, keys, positions), StructureError);
}

TEST(Grid, CyclicShiftOfExistenceIsABindingWithTheStep) {
  Rng rng(2);
  const auto codec = make_circular_codec(9, kDim, rng);
  const auto filler = random_vector(kDim, rng);
  std::vector<HdVector> cells(9, HdVector(kDim));
  for (std::size_t j : {0u, 4u, 5u}) cells[j] = filler;
  const auto base = compose_grid(cells, codec);
  EXPECT_EQ(base.side, 3);
  for (int s = -4; s <= 4; ++s) {
    const auto shifted = compose_grid(cyclic_shift<HdVector>(cells, s), codec);
    const auto moved = bind(base.vector, codec.encode(s));
    double worst = 0.0;
    for (std::size_t i = 0; i < kDim; ++i) worst = std::max(worst, std::abs(shifted.vector[i] - moved[i]));
    EXPECT_LT(worst, 1e-9) << "shift " << s;
  }
}

TEST(Grid, PrecomputedPositionsMatchCodec) {
  Rng rng(3);
  const auto codec = make_circular_codec(4, kDim, rng);
  std::vector<HdVector> p;
  for (int j = 0; j < 4; ++j) p.push_back(codec.encode(j));
  std::vector<HdVector> cells;
  for (int j = 0; j < 4; ++j) cells.push_back(random_vector(kDim, rng));
  const auto a = compose_grid(cells, codec);
  const auto b = compose_grid(cells, p);
  EXPECT_NEAR(similarity(a.vector, b.vector), 1.0, 1e-12);
  EXPECT_THROW(compose_grid(std::span<const HdVector>(cells).first(3), codec), StructureError);
}

TEST(Grid, CyclicShiftMovesCells) {
  const std::vector<int> v = {0, 1, 2, 3};
  EXPECT_EQ(cyclic_shift<int>(v, 1), (std::vector<int>{3, 0, 1, 2}));
  EXPECT_EQ(cyclic_shift<int>(v, -1), (std::vector<int>{1, 2, 3, 0}));
  EXPECT_EQ(cyclic_shift<int>(v, 4), v);
}

}  // namespace
}  // namespace vsar
