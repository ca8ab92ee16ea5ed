#pragma once

#include "algo_distribution.hpp"
#include "automata.hpp"
#include "bits.hpp"
#include "empirical.hpp"
#include "errors.hpp"
#include "io.hpp"
#include "pattern_distribution.hpp"
#include "rank_stats.hpp"
#include "rng.hpp"
#include "symmetry.hpp"
#include "tm_core.hpp"
