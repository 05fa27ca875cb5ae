#pragma once

// Instability minimum of chip-firing games on strongly connected, loop-free
// directed multigraphs: three exact methods and three upper-bound heuristics.

#include "chipfire/bounds.hpp"
#include "chipfire/error.hpp"
#include "chipfire/exact.hpp"
#include "chipfire/extension.hpp"
#include "chipfire/game.hpp"
#include "chipfire/heuristics.hpp"
#include "chipfire/io.hpp"
#include "chipfire/multigraph.hpp"
#include "chipfire/period.hpp"
