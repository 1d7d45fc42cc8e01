#pragma once
// Umbrella header for the gridplan library.

#include "gridplan/collision.hpp"
#include "gridplan/geometry.hpp"
#include "gridplan/grid_map.hpp"
#include "gridplan/harness.hpp"
#include "gridplan/metrics.hpp"
#include "gridplan/planners.hpp"
#include "gridplan/postprocess.hpp"
#include "gridplan/rng.hpp"
#include "gridplan/roadmap.hpp"
#include "gridplan/sampling.hpp"
#include "gridplan/search.hpp"
#include "gridplan/svg.hpp"
