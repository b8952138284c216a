#pragma once

#include "snhet/core_model.hpp"
#include "snhet/specialfn.hpp"
#include "snhet/quadrature.hpp"
#include "snhet/geometry.hpp"
#include "snhet/analytic/laplace.hpp"
#include "snhet/analytic/legit_rates.hpp"
#include "snhet/analytic/lower_bounds.hpp"
#include "snhet/analytic/leakage.hpp"
#include "snhet/analytic/interference_limited.hpp"
#include "snhet/analytic/secrecy.hpp"
#include "snhet/montecarlo.hpp"
#include "snhet/experiments/config_io.hpp"
#include "snhet/experiments/result_table.hpp"
#include "snhet/experiments/sweep.hpp"
#include "snhet/experiments/presets.hpp"
