#pragma once

// Umbrella header for the robust directional-coverage toolkit.

#include "rrfcov/geometry.hpp"
#include "rrfcov/harness.hpp"
#include "rrfcov/optimizer.hpp"
#include "rrfcov/parallel.hpp"
#include "rrfcov/rng.hpp"
#include "rrfcov/rrf.hpp"
#include "rrfcov/selfcheck.hpp"
#include "rrfcov/sensing.hpp"
#include "rrfcov/svg.hpp"
#include "rrfcov/voronoi.hpp"
