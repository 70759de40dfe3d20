#pragma once

#include <cstddef>
#include <vector>

#include "odorchain/model.hpp"

namespace odorchain {

/// Mittag-Leffler function E_alpha(z) for alpha in (0, 1], real z.
/// Power series with term-ratio stopping for moderate |z|; real-axis
/// asymptotic expansion for z < -10.  Throws std::invalid_argument for alpha
/// outside (0, 1] and std::range_error when exp-scale growth overflows.
double mittag_leffler(double alpha, double z);

enum class NonnegPolicy { Clamp, Reject };

struct SolverConfig {
    double t_end = 500.0;
    double h = 1e-2;
    /// Caputo order; 0 means "mirror ModelParams.alpha".  A nonzero value
    /// that disagrees with the params is rejected to keep one source of truth.
    double alpha = 0.0;
    int corrector_iterations = 1;
    NonnegPolicy nonneg_policy = NonnegPolicy::Clamp;
    /// Fraction of the horizon discarded by amplitude analysis.
    double transient_fraction = 0.5;

    void validate() const; ///< throws std::invalid_argument on bad fields
};

struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    double alpha = 1.0;
    ModelParams params;
    double transient_fraction = 0.5;
    std::size_t clamp_count = 0;      ///< number of clamped components
    double min_component_seen = 0.0;  ///< most negative pre-clamp value
};

/// Adams-Bashforth-Moulton predictor-corrector for the Caputo system on a
/// uniform grid with full history (O(N^2) work overall).  At alpha = 1 the
/// weights collapse to constants and the history sums are maintained
/// incrementally, so that case runs in O(N).
///
/// Throws std::domain_error for negative initial data, integration errors
/// (Reject policy with a component below -1e-9, with the step index in the
/// message) and divergence to non-finite state.
Trajectory integrate_caputo_abm(const State& s0, const ModelParams& p,
                                const SolverConfig& cfg);

/// Classical fixed-step RK4 for the alpha = 1 system; same Trajectory
/// contract and nonnegativity policy as the fractional integrator.
Trajectory integrate_classic(const State& s0, const ModelParams& p,
                             const SolverConfig& cfg);

/// Peak-to-peak amplitude of one component (0..2) over the post-transient
/// window of the trajectory.  Throws std::domain_error when the trajectory
/// has no post-transient samples.
double orbit_amplitude(const Trajectory& traj, int component);

/// W(t) = x1 + x2/r3 + x3/(r3 r5), the weighted total population used by the
/// boundedness bound.
double total_population_w(const State& s, const ModelParams& p);

/// Asymptotic bound on W(t): (r1 + Delta)^2 / (4 r1 Delta) with
/// Delta = min(d1, d2)/2.
double boundedness_limit(const ModelParams& p);

} // namespace odorchain
