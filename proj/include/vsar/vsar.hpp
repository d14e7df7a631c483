#pragma once

// Umbrella header.

#include "vsar/atomic.hpp"
#include "vsar/codebook.hpp"
#include "vsar/dataset.hpp"
#include "vsar/eval.hpp"
#include "vsar/hd_vector.hpp"
#include "vsar/puzzle.hpp"
#include "vsar/raven_gen.hpp"
#include "vsar/reasoner.hpp"
#include "vsar/relations.hpp"
#include "vsar/rng.hpp"
#include "vsar/structure.hpp"
#include "vsar/symbolic.hpp"
