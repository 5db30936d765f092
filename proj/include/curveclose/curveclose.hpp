#pragma once

/**
 * @file curveclose.hpp
 * @brief Umbrella header: curves, rearrangements, permutations, solvers and file formats.
 */

#include "curve.hpp"
#include "cuts.hpp"
#include "families.hpp"
#include "geometry.hpp"
#include "io.hpp"
#include "parallel.hpp"
#include "perm.hpp"
#include "rearrange.hpp"
#include "solver.hpp"
#include "svg.hpp"
#include "winding.hpp"
