#pragma once

// Umbrella header for the homega library: numerical construction and
// verification of inner functions in weighted Hardy spaces.

#include "homega/blaschke.hpp"
#include "homega/divisor.hpp"
#include "homega/errors.hpp"
#include "homega/grid.hpp"
#include "homega/innercheck.hpp"
#include "homega/json_io.hpp"
#include "homega/kernels.hpp"
#include "homega/projector.hpp"
#include "homega/random.hpp"
#include "homega/series.hpp"
#include "homega/weights.hpp"
