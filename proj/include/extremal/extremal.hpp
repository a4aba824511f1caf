#pragma once

#include "extremal/errors.hpp"
#include "extremal/numeric.hpp"
#include "extremal/tail_calculus.hpp"
#include "extremal/max_bounds.hpp"
#include "extremal/lower_bounds.hpp"
#include "extremal/array_sums.hpp"
#include "extremal/heavy_tails.hpp"
#include "extremal/sim_harness.hpp"
#include "extremal/config.hpp"
#include "extremal/report.hpp"
#include "extremal/verification.hpp"
#include "extremal/commands.hpp"
