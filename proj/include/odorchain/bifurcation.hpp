#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "odorchain/equilibria.hpp"
#include "odorchain/fracsolve.hpp"
#include "odorchain/stability.hpp"

namespace odorchain {

struct SweepSpec {
    std::string parameter = "m1";
    double lo = 0.0;
    double hi = 1.0;
    int grid = 256;
    ModelParams base{};
    EquilibriumKind track = EquilibriumKind::Coexisting;

    void validate() const; ///< lo < hi, grid >= 16, known parameter name
    ModelParams at(double value) const;
};

struct CurvePoint {
    double param = 0.0;
    Equilibrium eq;
    StabilityReport stab;
};

struct EquilibriumCurve {
    SweepSpec spec;
    std::vector<CurvePoint> points;
};

enum class BifurcationKind { Hopf, Transcritical };
const char* to_string(BifurcationKind k);

struct BifurcationEvent {
    BifurcationKind kind = BifurcationKind::Hopf;
    std::string parameter;
    double critical_value = 0.0;
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    double indicator_residual = 0.0; ///< |indicator| at the refined value
    double transversality = 0.0;     ///< centered FD derivative of the indicator
    bool transversal = false;        ///< |transversality| above the degeneracy floor
    bool exchange_of_stability = false;
    bool physical = true; ///< derived refuge fractions inside [0,1) at the event
};

/// Recompute the tracked equilibrium and its stability on a uniform grid.
/// Nonexistent or degenerate points are recorded with their flags, never
/// dropped.  Grid points are independent; with threads > 1 they are evaluated
/// concurrently and assembled by index.
EquilibriumCurve sweep_equilibrium_curve(const SweepSpec& spec, int threads = 1);

/// Hopf candidates at sign changes of H = c1*c2 - c3 with c1, c2 > 0 on at
/// least one side, bisection-refined.  Transversality is the centered FD
/// derivative of H at the critical value.
std::vector<BifurcationEvent> detect_hopf(const EquilibriumCurve& curve);

/// Transcritical candidates at sign changes of c3 (up to sign, det J) or of
/// an existence margin of the tracked equilibrium; refined on the c3
/// indicator and cross-validated by the exchange-of-stability pattern.
/// Sign flips across a pole of the closed forms are rejected by the
/// indicator-residual guard.
std::vector<BifurcationEvent> detect_transcritical(const EquilibriumCurve& curve);

/// Bisection on a scalar indicator with opposite signs at the bracket ends.
/// Shrinks until width < 1e-7 * (1 + |value|); NaN probes shrink-and-retry,
/// giving up after 80 iterations.  Throws std::invalid_argument when the
/// endpoint signs agree.
double refine_bisection(const std::function<double(double)>& indicator,
                        double lo, double hi);

struct SotomayorRecord {
    double zero_eigenvalue = 0.0; ///< the near-zero eigenvalue that triggered the check
    /// u2 . f_mu, u2 . (D f_mu u1), u2 . D^2 f(u1,u1), all by central differences.
    double s1 = 0.0;
    double s2 = 0.0;
    double s3 = 0.0;
    /// d(zero eigenvalue)/d(mu) along the equilibrium branch.  When the swept
    /// parameter does not enter the critical row of the vector field, s2
    /// vanishes identically and this branch derivative carries the
    /// transversality instead.
    double branch_crossing = 0.0;
    bool pass = false;
};

/// Sotomayor check at a transcritical candidate: requires a near-zero
/// eigenvalue of the Jacobian (|lambda| < 1e-6), else throws
/// std::invalid_argument.  parameter names the bifurcation parameter mu.
SotomayorRecord verify_transcritical_sotomayor(const ModelParams& p,
                                               const Equilibrium& eq,
                                               const std::string& parameter);

struct AmplitudePoint {
    double param = 0.0;
    std::array<double, 3> amplitude{};
    bool diverged = false;
};

/// Orbit-amplitude (bubbling) diagram: integrate from s0 at each grid point,
/// discard the transient, record the per-component peak-to-peak amplitude.
/// Divergent integrations are flagged, with infinite amplitudes.
std::vector<AmplitudePoint> bubbling_diagram(const SweepSpec& spec,
                                             const SolverConfig& cfg,
                                             const State& s0, int threads = 1);

} // namespace odorchain
