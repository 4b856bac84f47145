#pragma once

#include <functional>
#include <string>

#include "mhdstab/mhd_system.hpp"

namespace mhdstab {

struct StepperConfig {
    double dt_max = 1e-2;
    double cfl = 0.4;
    double t_end = 1.0;
    int constraint_interval = 1; ///< steps between enforce_constraints calls
    int sample_stride = 10;      ///< steps between sink invocations
    double blowup_norm_factor = 1e3; ///< H2 ceiling relative to the initial norm

    void validate() const;
};

/// Which right-hand side the explicit stages see.
enum class RhsForm { Full, LinearOnly };

/// One classical 4-stage Runge-Kutta step in integrating-factor variables:
/// the stiff diagonal diffusion kappa lap theta / sigma lap b is applied as
/// an exact per-mode exponential, everything else is integrated explicitly.
State step(const State& s, double dt, const Params& p, RhsForm form = RhsForm::Full);

/// CFL bound dt = min(dt_max, cfl dx / V) with dx = 2pi/M and
/// V = max over the grid of |u| + sqrt(2R(1+theta)) + |n| + |b|.
double cfl_dt(const State& s, const Params& p, const StepperConfig& cfg);

struct RunStatus {
    bool completed = false;
    bool blew_up = false;
    std::string reason;
    double t = 0.0;
    long steps = 0;
};

/// Called at sampling times with the current state and its full tendency.
using Sink = std::function<void(double t, long step, const State& s, const Tendency& tend)>;

struct RunResult {
    State final_state;
    RunStatus status;
};

/// Advance s0 to t_end, sampling at the configured stride (always at t=0 and
/// at the final time).  Aborts with a blow-up report if the H2 norm exceeds
/// its ceiling or admissibility fails; a blow-up is a recorded outcome, not
/// an exception.
RunResult run(const State& s0, const Params& p, const StepperConfig& cfg,
              const Sink& sink = {});

} // namespace mhdstab
