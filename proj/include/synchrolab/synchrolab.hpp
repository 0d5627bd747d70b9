#pragma once

#include "synchrolab/chromatic.hpp"
#include "synchrolab/dfa.hpp"
#include "synchrolab/distance_matrix.hpp"
#include "synchrolab/errors.hpp"
#include "synchrolab/experiments.hpp"
#include "synchrolab/independence.hpp"
#include "synchrolab/numeric.hpp"
#include "synchrolab/polynomial.hpp"
#include "synchrolab/rng.hpp"
#include "synchrolab/stats.hpp"
