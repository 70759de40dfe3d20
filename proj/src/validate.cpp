#include "odorchain/validate.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <sstream>

#include "odorchain/equilibria.hpp"
#include "odorchain/fracsolve.hpp"
#include "odorchain/model.hpp"
#include "odorchain/stability.hpp"

namespace odorchain::validate {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Parameter draws around the baseline regime; death rates stay >= 0.1 so the
/// boundedness transient decays well before t_end/2.
ModelParams random_params(Rng& rng) {
    ModelParams p;
    p.r1 = uniform(rng, 1.0, 3.0);
    p.r2 = uniform(rng, 0.5, 1.5);
    p.r3 = uniform(rng, 0.5, 1.0);
    p.r4 = uniform(rng, 2.0, 4.0);
    p.r5 = uniform(rng, 0.5, 1.0);
    p.d1 = uniform(rng, 0.1, 0.4);
    p.d2 = uniform(rng, 0.3, 0.7);
    p.beta = uniform(rng, 0.0, 0.1);
    p.b = uniform(rng, 0.5, 1.5);
    p.q = uniform(rng, 0.1, 1.0);
    p.r = uniform(rng, 0.0, 0.1);
    p.m_fp = 1.0;
    p.a1 = uniform(rng, 0.1, 0.7);
    p.m_sp = 1.0;
    p.a2 = uniform(rng, 0.1, 0.7);
    p.alpha = 1.0;
    return p;
}

/// Newton iteration on the vector field, the independent route to a root.
bool newton_root(const ModelParams& p, State s, State& out) {
    for (int it = 0; it < 80; ++it) {
        const State f = vector_field(s, p);
        const Mat3 j = jacobian(s, p);
        const double det = j.det();
        if (!std::isfinite(det) || std::fabs(det) < 1e-14) return false;
        // Cramer solve of J dx = -f.
        auto det3 = [](double a0, double a1, double a2, double b0, double b1, double b2,
                       double c0, double c1, double c2) {
            return a0 * (b1 * c2 - b2 * c1) - a1 * (b0 * c2 - b2 * c0) +
                   a2 * (b0 * c1 - b1 * c0);
        };
        const double dx1 = det3(-f.x1, j(0, 1), j(0, 2), -f.x2, j(1, 1), j(1, 2), -f.x3,
                                j(2, 1), j(2, 2)) /
                           det;
        const double dx2 = det3(j(0, 0), -f.x1, j(0, 2), j(1, 0), -f.x2, j(1, 2), j(2, 0),
                                -f.x3, j(2, 2)) /
                           det;
        const double dx3 = det3(j(0, 0), j(0, 1), -f.x1, j(1, 0), j(1, 1), -f.x2, j(2, 0),
                                j(2, 1), -f.x3) /
                           det;
        s.x1 += dx1;
        s.x2 += dx2;
        s.x3 += dx3;
        if (!s.finite()) return false;
        if (std::fabs(dx1) + std::fabs(dx2) + std::fabs(dx3) < 1e-14) {
            out = s;
            return max_abs(vector_field(s, p)) < 1e-10;
        }
    }
    return false;
}

CheckResult result(const std::string& name, int failures, int total,
                   const std::string& extra = "") {
    CheckResult r;
    r.name = name;
    r.passed = failures == 0;
    std::ostringstream os;
    os << failures << " failures / " << total << " cases";
    if (!extra.empty()) os << " (" << extra << ")";
    r.detail = os.str();
    return r;
}

} // namespace

CheckResult equilibrium_residuals(std::uint64_t seed, int draws) {
    Rng rng(seed);
    int failures = 0;
    int compared = 0;
    for (int i = 0; i < draws; ++i) {
        const ModelParams p = (i == 0) ? ModelParams{} : random_params(rng);
        for (const auto& eq : all_equilibria(p)) {
            if (!eq.exists) continue;
            if (!(max_abs(vector_field(eq.point, p)) < 1e-9)) ++failures;
            if (eq.kind == EquilibriumKind::Coexisting) {
                State root;
                if (newton_root(p, {0.8, 0.5, 0.5}, root) &&
                    std::min({root.x1, root.x2, root.x3}) > 1e-6) {
                    ++compared;
                    if (max_abs(root - eq.point) > 1e-8) ++failures;
                }
            }
        }
    }
    std::ostringstream extra;
    extra << compared << " root-finder comparisons";
    return result("equilibrium residuals + root-finder oracle", failures, draws,
                  extra.str());
}

CheckResult jacobian_finite_difference(std::uint64_t seed, int draws) {
    Rng rng(seed);
    int failures = 0;
    for (int i = 0; i < draws; ++i) {
        const ModelParams p = random_params(rng);
        const State s{uniform(rng, 0.0, 2.0), uniform(rng, 0.0, 2.0),
                      uniform(rng, 0.0, 2.0)};
        const Mat3 j = jacobian(s, p);
        const double step = 1e-6 * (1.0 + max_abs(s));
        bool ok = true;
        for (int col = 0; col < 3; ++col) {
            State sp = s, sm = s;
            sp[col] += step;
            sm[col] -= step;
            const State fd = (1.0 / (2.0 * step)) * (vector_field(sp, p) - vector_field(sm, p));
            for (int row = 0; row < 3; ++row) {
                const double want = fd[row];
                const double got = j(row, col);
                if (std::fabs(got - want) > 1e-6 * (1.0 + std::fabs(got))) ok = false;
            }
        }
        if (!ok) ++failures;
    }
    return result("jacobian vs central finite differences", failures, draws);
}

CheckResult rh_matignon_agreement(std::uint64_t seed, int draws) {
    Rng rng(seed);
    int failures = 0;
    int skipped = 0;
    for (int i = 0; i < draws; ++i) {
        const CharPoly cp{uniform(rng, -3.0, 3.0), uniform(rng, -3.0, 3.0),
                          uniform(rng, -3.0, 3.0)};
        const double qs[4] = {cp.c1, cp.c2, cp.c3, cp.hurwitz()};
        bool near_margin = false;
        for (double qv : qs) near_margin = near_margin || std::fabs(qv) < 1e-6;
        const auto eigs = eigenvalues_cubic(cp);
        const auto mat = matignon_classify(eigs, 1.0);
        for (double m : mat.margins) near_margin = near_margin || std::fabs(m) < 1e-6;
        if (near_margin) {
            ++skipped;
            continue;
        }
        if (routh_hurwitz(cp) != mat.verdict) ++failures;
    }
    std::ostringstream extra;
    extra << skipped << " near-marginal skipped";
    return result("routh-hurwitz vs matignon at alpha=1", failures, draws, extra.str());
}

CheckResult discriminant_root_structure(std::uint64_t seed, int draws) {
    Rng rng(seed);
    int failures = 0;
    int skipped = 0;
    for (int i = 0; i < draws; ++i) {
        const CharPoly cp{uniform(rng, -3.0, 3.0), uniform(rng, -3.0, 3.0),
                          uniform(rng, -3.0, 3.0)};
        const double disc = cubic_discriminant(cp);
        if (std::fabs(disc) < 1e-9) {
            ++skipped;
            continue;
        }
        const auto eigs = eigenvalues_cubic(cp);
        const double imag_scale = 1e-7 * (1.0 + cp.norm());
        int complex_count = 0;
        for (const auto& z : eigs)
            if (std::fabs(z.imag()) > imag_scale) ++complex_count;
        const bool three_real = complex_count == 0;
        if ((disc > 0.0) != three_real) ++failures;
    }
    std::ostringstream extra;
    extra << skipped << " near-degenerate skipped";
    return result("discriminant sign vs root structure", failures, draws, extra.str());
}

CheckResult nonnegativity_and_boundedness(std::uint64_t seed, int draws, double t_end) {
    Rng rng(seed);
    int failures = 0;
    for (int i = 0; i < draws; ++i) {
        ModelParams p = random_params(rng);
        const State s0{uniform(rng, 0.1, 1.0), uniform(rng, 0.1, 1.0),
                       uniform(rng, 0.1, 1.0)};
        SolverConfig cfg;
        cfg.t_end = t_end;
        cfg.nonneg_policy = NonnegPolicy::Clamp;
        Trajectory traj;
        if (i % 2 == 0) {
            cfg.h = 1e-2;
            traj = integrate_classic(s0, p, cfg);
        } else {
            p.alpha = uniform(rng, 0.7, 1.0);
            cfg.h = 5e-2;
            traj = integrate_caputo_abm(s0, p, cfg);
        }
        if (traj.min_component_seen < -1e-9) ++failures;
        const double bound = boundedness_limit(p) * 1.05;
        for (std::size_t k = 0; k < traj.times.size(); ++k) {
            if (traj.times[k] < t_end / 2.0) continue;
            if (total_population_w(traj.states[k], p) > bound) {
                ++failures;
                break;
            }
        }
    }
    return result("nonnegativity + boundedness", failures, draws);
}

CheckResult closed_form_vs_eigenvalues(std::uint64_t seed, int draws) {
    Rng rng(seed);
    int failures = 0;
    int skipped = 0;
    for (int i = 0; i < draws; ++i) {
        const ModelParams p = random_params(rng);
        for (const auto& eq : all_equilibria(p)) {
            if (eq.degenerate) continue;
            if (eq.kind != EquilibriumKind::Vanishing && !eq.exists) continue;
            const StabilityReport rep = classify_equilibrium(eq, p);
            bool near_margin = false;
            for (const auto& chk : rep.closed_form_checks)
                near_margin = near_margin || std::fabs(chk.margin) < 1e-6;
            for (double m : rep.matignon_margins)
                near_margin = near_margin || std::fabs(m) < 1e-6;
            if (near_margin) {
                ++skipped;
                continue;
            }
            bool all_checks = true;
            for (const auto& chk : rep.closed_form_checks) all_checks &= chk.satisfied;
            const bool eig_stable = rep.verdict == Verdict::Stable;
            if (all_checks != eig_stable) ++failures;
        }
    }
    std::ostringstream extra;
    extra << skipped << " near-marginal skipped";
    return result("closed-form conditions vs eigenvalue verdicts", failures, draws,
                  extra.str());
}

std::vector<CheckResult> run_all(std::uint64_t seed) {
    return {
        equilibrium_residuals(seed + 1),
        jacobian_finite_difference(seed + 2),
        rh_matignon_agreement(seed + 3),
        discriminant_root_structure(seed + 4),
        nonnegativity_and_boundedness(seed + 5),
        closed_form_vs_eigenvalues(seed + 6),
    };
}

} // namespace odorchain::validate
