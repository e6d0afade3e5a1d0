#pragma once

#include "quaqua/block_decomposition.hpp"
#include "quaqua/group_ring.hpp"
#include "quaqua/rational.hpp"
#include "quaqua/representation.hpp"
#include "quaqua/spectrum.hpp"
#include "quaqua/tiling.hpp"
#include "quaqua/word.hpp"
