#pragma once

// Sinc differential quadrature solver for the 1D advection-dispersion
// equation, with a fixed-step time-integrator suite and a benchmark harness.

#include "sdqm/ade_semidiscrete.hpp"
#include "sdqm/benchmark_problems.hpp"
#include "sdqm/dqm_weights.hpp"
#include "sdqm/grid.hpp"
#include "sdqm/harness.hpp"
#include "sdqm/metrics.hpp"
#include "sdqm/reference_data.hpp"
#include "sdqm/sinc_basis.hpp"
#include "sdqm/time_integrators.hpp"
