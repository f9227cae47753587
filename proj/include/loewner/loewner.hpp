#pragma once

// Chordal Loewner evolution at desk scale: slit-map solver, stochastic
// driver generators (time-changed Brownian motion, inverse stable and
// tempered-stable subordinators, Weierstrass), geometric hull criteria, and
// a declarative experiment runner.

#include "loewner/analysis.hpp"
#include "loewner/chain.hpp"
#include "loewner/config.hpp"
#include "loewner/csv.hpp"
#include "loewner/driver.hpp"
#include "loewner/figures.hpp"
#include "loewner/hcap.hpp"
#include "loewner/parallel.hpp"
#include "loewner/processes.hpp"
#include "loewner/rng.hpp"
#include "loewner/runner.hpp"
#include "loewner/slit_map.hpp"
#include "loewner/stats.hpp"
#include "loewner/subordinator.hpp"
#include "loewner/svg.hpp"
#include "loewner/trace.hpp"
