#include "odorchain/fracsolve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace odorchain {

namespace {

constexpr double kNegFloor = -1e-9;

struct NonnegGuard {
    NonnegPolicy policy;
    std::size_t clamps = 0;
    double min_seen = 0.0;

    void apply(State& s, std::size_t step) {
        for (int c = 0; c < 3; ++c) {
            double& v = s[c];
            if (v >= 0.0) continue;
            min_seen = std::min(min_seen, v);
            if (v < kNegFloor && policy == NonnegPolicy::Reject)
                throw std::domain_error("integration error: component " +
                                        std::to_string(c + 1) + " fell below -1e-9 at step " +
                                        std::to_string(step));
            v = 0.0;
            ++clamps;
        }
    }
};

void check_finite(const State& s, std::size_t step) {
    if (!s.finite())
        throw std::domain_error("divergence: non-finite state at step " +
                                std::to_string(step));
}

double resolve_alpha(const ModelParams& p, const SolverConfig& cfg) {
    if (cfg.alpha == 0.0) return p.alpha;
    if (std::fabs(cfg.alpha - p.alpha) > 1e-12)
        throw std::invalid_argument("solver config alpha disagrees with model alpha");
    return cfg.alpha;
}

} // namespace

void SolverConfig::validate() const {
    if (!(h > 0.0)) throw std::invalid_argument("solver: h must be > 0");
    if (!(t_end > 0.0)) throw std::invalid_argument("solver: t_end must be > 0");
    if (corrector_iterations < 1)
        throw std::invalid_argument("solver: corrector_iterations must be >= 1");
    if (alpha != 0.0 && !(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("solver: alpha outside (0,1]");
    if (!(transient_fraction >= 0.0 && transient_fraction < 1.0))
        throw std::invalid_argument("solver: transient_fraction outside [0,1)");
}

Trajectory integrate_caputo_abm(const State& s0, const ModelParams& p,
                                const SolverConfig& cfg) {
    cfg.validate();
    const double alpha = resolve_alpha(p, cfg);
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("integrate_caputo_abm: alpha outside (0,1]");
    if (s0.x1 < 0 || s0.x2 < 0 || s0.x3 < 0)
        throw std::domain_error("integrate_caputo_abm: negative initial state");

    const std::size_t n_steps = static_cast<std::size_t>(std::llround(cfg.t_end / cfg.h));
    const double h = cfg.h;

    Trajectory traj;
    traj.alpha = alpha;
    traj.params = p;
    traj.transient_fraction = cfg.transient_fraction;
    traj.times.reserve(n_steps + 1);
    traj.states.reserve(n_steps + 1);
    traj.times.push_back(0.0);
    traj.states.push_back(s0);

    NonnegGuard guard{cfg.nonneg_policy};

    // History of f values, struct-of-arrays for the O(N^2) weight sums.
    std::vector<double> f1, f2, f3;
    f1.reserve(n_steps + 1);
    f2.reserve(n_steps + 1);
    f3.reserve(n_steps + 1);
    const State fs0 = vector_field(s0, p);
    f1.push_back(fs0.x1);
    f2.push_back(fs0.x2);
    f3.push_back(fs0.x3);

    const double g1 = std::tgamma(alpha + 1.0);
    const double g2 = std::tgamma(alpha + 2.0);
    const double ha = std::pow(h, alpha);
    const double pred_scale = ha / g1;
    const double corr_scale = ha / g2;

    const bool classic_weights = (alpha == 1.0);

    // Predictor weights d_k = (k+1)^a - k^a and corrector inner weights
    // c_k = (k+2)^(a+1) + k^(a+1) - 2 (k+1)^(a+1), both indexed by lag k = n - j.
    std::vector<double> dw, cw;
    if (!classic_weights) {
        dw.resize(n_steps + 1);
        cw.resize(n_steps + 1);
        for (std::size_t k = 0; k <= n_steps; ++k) {
            const double kk = static_cast<double>(k);
            dw[k] = std::pow(kk + 1.0, alpha) - std::pow(kk, alpha);
            cw[k] = std::pow(kk + 2.0, alpha + 1.0) + std::pow(kk, alpha + 1.0) -
                    2.0 * std::pow(kk + 1.0, alpha + 1.0);
        }
    }

    // At alpha = 1 all lag weights are constant (d_k = 1, c_k = 2), so the
    // history sums reduce to running totals.
    State run_sum = fs0;

    State cur = s0;
    for (std::size_t n = 0; n < n_steps; ++n) {
        const double nn = static_cast<double>(n);
        State pred, hist;
        if (classic_weights) {
            pred = s0 + pred_scale * run_sum;
            // a_{0,n+1} = 1 and c_k = 2 for the interior terms.
            hist = (2.0 * run_sum) - State{f1[0], f2[0], f3[0]};
        } else {
            double p1 = 0, p2 = 0, p3 = 0, h1 = 0, h2 = 0, h3 = 0;
            const double* pf1 = f1.data();
            const double* pf2 = f2.data();
            const double* pf3 = f3.data();
            const double* pd = dw.data();
            const double* pc = cw.data();
            // j runs over history, k = n - j is the lag.
            for (std::size_t j = 1; j <= n; ++j) {
                const std::size_t k = n - j;
                p1 += pd[k] * pf1[j];
                p2 += pd[k] * pf2[j];
                p3 += pd[k] * pf3[j];
                h1 += pc[k] * pf1[j];
                h2 += pc[k] * pf2[j];
                h3 += pc[k] * pf3[j];
            }
            const double a0 = std::pow(nn, alpha + 1.0) -
                              (nn - alpha) * std::pow(nn + 1.0, alpha);
            p1 += dw[n] * pf1[0];
            p2 += dw[n] * pf2[0];
            p3 += dw[n] * pf3[0];
            h1 += a0 * pf1[0];
            h2 += a0 * pf2[0];
            h3 += a0 * pf3[0];
            pred = s0 + pred_scale * State{p1, p2, p3};
            hist = {h1, h2, h3};
        }

        State next = pred;
        for (int it = 0; it < cfg.corrector_iterations; ++it) {
            const State fp = vector_field(next, p);
            next = s0 + corr_scale * (fp + hist);
        }
        check_finite(next, n + 1);
        guard.apply(next, n + 1);

        const State fn = vector_field(next, p);
        f1.push_back(fn.x1);
        f2.push_back(fn.x2);
        f3.push_back(fn.x3);
        run_sum = run_sum + fn;

        cur = next;
        traj.times.push_back((nn + 1.0) * h);
        traj.states.push_back(cur);
    }

    traj.clamp_count = guard.clamps;
    traj.min_component_seen = guard.min_seen;
    return traj;
}

Trajectory integrate_classic(const State& s0, const ModelParams& p,
                             const SolverConfig& cfg) {
    cfg.validate();
    if (s0.x1 < 0 || s0.x2 < 0 || s0.x3 < 0)
        throw std::domain_error("integrate_classic: negative initial state");

    const std::size_t n_steps = static_cast<std::size_t>(std::llround(cfg.t_end / cfg.h));
    const double h = cfg.h;

    Trajectory traj;
    traj.alpha = 1.0;
    traj.params = p;
    traj.transient_fraction = cfg.transient_fraction;
    traj.times.reserve(n_steps + 1);
    traj.states.reserve(n_steps + 1);
    traj.times.push_back(0.0);
    traj.states.push_back(s0);

    NonnegGuard guard{cfg.nonneg_policy};

    State cur = s0;
    for (std::size_t n = 0; n < n_steps; ++n) {
        const State k1 = vector_field(cur, p);
        const State k2 = vector_field(cur + (h / 2.0) * k1, p);
        const State k3 = vector_field(cur + (h / 2.0) * k2, p);
        const State k4 = vector_field(cur + h * k3, p);
        State next = cur + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        check_finite(next, n + 1);
        guard.apply(next, n + 1);
        cur = next;
        traj.times.push_back(static_cast<double>(n + 1) * h);
        traj.states.push_back(cur);
    }

    traj.clamp_count = guard.clamps;
    traj.min_component_seen = guard.min_seen;
    return traj;
}

double orbit_amplitude(const Trajectory& traj, int component) {
    if (component < 0 || component > 2)
        throw std::domain_error("orbit_amplitude: component index out of range");
    if (traj.times.empty()) throw std::domain_error("orbit_amplitude: empty trajectory");
    const double t_start = traj.times.back() * traj.transient_fraction;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    std::size_t count = 0;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        if (traj.times[i] < t_start) continue;
        const double v = traj.states[i][component];
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        ++count;
    }
    if (count < 2) throw std::domain_error("orbit_amplitude: trajectory shorter than transient");
    return hi - lo;
}

double total_population_w(const State& s, const ModelParams& p) {
    return s.x1 + s.x2 / p.r3 + s.x3 / (p.r3 * p.r5);
}

double boundedness_limit(const ModelParams& p) {
    const double delta = std::min(p.d1, p.d2) / 2.0;
    return (p.r1 + delta) * (p.r1 + delta) / (4.0 * p.r1 * delta);
}

} // namespace odorchain
