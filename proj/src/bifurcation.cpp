#include "odorchain/bifurcation.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

namespace odorchain {

namespace {

constexpr double kZeroEigTol = 1e-6;
constexpr double kTransversalFloor = 1e-8;

Equilibrium tracked_equilibrium(EquilibriumKind kind, const ModelParams& p) {
    switch (kind) {
        case EquilibriumKind::Vanishing: return vanishing(p);
        case EquilibriumKind::Axial: return axial(p);
        case EquilibriumKind::TopPredatorFree: return top_predator_free(p);
        case EquilibriumKind::Coexisting: return coexisting(p);
    }
    throw std::logic_error("unknown equilibrium kind");
}

void run_chunked(int n, int threads, const std::function<void(int)>& work) {
    if (threads <= 1 || n < 2) {
        for (int i = 0; i < n; ++i) work(i);
        return;
    }
    const int nt = std::min(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (int t = 0; t < nt; ++t) {
        pool.emplace_back([=, &work] {
            for (int i = t; i < n; i += nt) work(i);
        });
    }
    for (auto& th : pool) th.join();
}

struct Indicator {
    // Fresh equilibrium + characteristic polynomial per probe.
    const SweepSpec* spec;
    enum class Kind { Hopf, Det } kind;

    double operator()(double value) const {
        const ModelParams p = spec->at(value);
        const Equilibrium eq = tracked_equilibrium(spec->track, p);
        if (!eq.point.finite()) return std::numeric_limits<double>::quiet_NaN();
        const CharPoly cp = char_poly_at(eq, p);
        return kind == Kind::Hopf ? cp.hurwitz() : cp.c3;
    }
};

bool sign_change(double a, double b) {
    return std::isfinite(a) && std::isfinite(b) && a * b < 0.0;
}

BifurcationEvent make_event(BifurcationKind kind, const SweepSpec& spec,
                            const Indicator& ind, double lo, double hi) {
    BifurcationEvent ev;
    ev.kind = kind;
    ev.parameter = spec.parameter;
    ev.critical_value = refine_bisection([&](double v) { return ind(v); }, lo, hi);
    ev.bracket_lo = lo;
    ev.bracket_hi = hi;
    ev.indicator_residual = std::fabs(ind(ev.critical_value));

    const double step = 1e-5 * (spec.hi - spec.lo);
    const double fp = ind(ev.critical_value + step);
    const double fm = ind(ev.critical_value - step);
    ev.transversality = (fp - fm) / (2.0 * step);
    ev.transversal = std::fabs(ev.transversality) > kTransversalFloor;

    const ModelParams pc = spec.at(ev.critical_value);
    ev.physical = pc.m1() >= 0.0 && pc.m1() < 1.0 && pc.m2() >= 0.0 && pc.m2() < 1.0;
    return ev;
}

// A sign flip across a pole of the closed forms also "changes sign"; a true
// root has a small indicator value at the refined point, a pole does not.
bool residual_ok(const BifurcationEvent& ev, double at_lo, double at_hi) {
    const double scale = std::min(std::fabs(at_lo), std::fabs(at_hi));
    return ev.indicator_residual <= std::max(1e-9, 1e-3 * scale);
}

bool verdict_flips(const EquilibriumCurve& curve, double critical) {
    const Verdict* left = nullptr;
    const Verdict* right = nullptr;
    for (const auto& pt : curve.points) {
        if (pt.param < critical) left = &pt.stab.verdict;
        if (pt.param > critical) {
            right = &pt.stab.verdict;
            break;
        }
    }
    return left && right && *left != *right;
}

} // namespace

const char* to_string(BifurcationKind k) {
    return k == BifurcationKind::Hopf ? "hopf" : "transcritical";
}

void SweepSpec::validate() const {
    if (!(lo < hi)) throw std::invalid_argument("sweep: lo must be < hi");
    if (grid < 16) throw std::invalid_argument("sweep: grid must be >= 16");
    if (!is_param_name(parameter))
        throw std::invalid_argument("sweep: unknown parameter '" + parameter + "'");
}

ModelParams SweepSpec::at(double value) const {
    ModelParams p = base;
    set_param(p, parameter, value);
    return p;
}

EquilibriumCurve sweep_equilibrium_curve(const SweepSpec& spec, int threads) {
    spec.validate();
    EquilibriumCurve curve;
    curve.spec = spec;
    curve.points.resize(spec.grid);
    const double dx = (spec.hi - spec.lo) / (spec.grid - 1);
    run_chunked(spec.grid, threads, [&](int i) {
        CurvePoint& pt = curve.points[i];
        pt.param = spec.lo + dx * i;
        const ModelParams p = spec.at(pt.param);
        pt.eq = tracked_equilibrium(spec.track, p);
        pt.stab = classify_equilibrium(pt.eq, p);
    });
    return curve;
}

double refine_bisection(const std::function<double(double)>& indicator, double lo,
                        double hi) {
    double flo = indicator(lo);
    double fhi = indicator(hi);
    if (!std::isfinite(flo) || !std::isfinite(fhi) || flo * fhi > 0.0)
        throw std::invalid_argument("refine_bisection: indicator signs agree at bracket ends");
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;

    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo < 1e-7 * (1.0 + std::fabs(mid))) return mid;
        double fmid = indicator(mid);
        if (std::isnan(fmid)) {
            // Shrink toward the lo end and retry; give up after 80 attempts.
            double probe = mid;
            int tries = 0;
            while (std::isnan(fmid) && tries < 80) {
                probe = lo + (probe - lo) * 0.5;
                fmid = indicator(probe);
                ++tries;
            }
            if (std::isnan(fmid))
                throw std::runtime_error("refine_bisection: indicator NaN inside bracket");
            if (sign_change(flo, fmid)) {
                hi = probe;
                fhi = fmid;
            } else {
                lo = probe;
                flo = fmid;
            }
            continue;
        }
        if (fmid == 0.0) return mid;
        if (flo * fmid < 0.0) {
            hi = mid;
            fhi = fmid;
        } else {
            lo = mid;
            flo = fmid;
        }
    }
    return 0.5 * (lo + hi);
}

std::vector<BifurcationEvent> detect_hopf(const EquilibriumCurve& curve) {
    std::vector<BifurcationEvent> events;
    if (curve.points.size() < 2) return events;
    const Indicator ind{&curve.spec, Indicator::Kind::Hopf};

    for (std::size_t i = 0; i + 1 < curve.points.size(); ++i) {
        const auto& a = curve.points[i];
        const auto& b = curve.points[i + 1];
        const double ha = a.stab.char_poly.hurwitz();
        const double hb = b.stab.char_poly.hurwitz();
        if (!std::isfinite(ha) || !std::isfinite(hb)) continue; // skip with warning-by-flag
        if (!sign_change(ha, hb)) continue;
        // Hopf needs a genuine complex pair: c1 > 0 and c2 > 0 on a side.
        const bool pair_side = (a.stab.char_poly.c1 > 0.0 && a.stab.char_poly.c2 > 0.0) ||
                               (b.stab.char_poly.c1 > 0.0 && b.stab.char_poly.c2 > 0.0);
        if (!pair_side) continue;
        BifurcationEvent ev = make_event(BifurcationKind::Hopf, curve.spec, ind,
                                         a.param, b.param);
        if (!residual_ok(ev, ha, hb)) continue;
        ev.exchange_of_stability = verdict_flips(curve, ev.critical_value);
        events.push_back(std::move(ev));
    }
    return events;
}

std::vector<BifurcationEvent> detect_transcritical(const EquilibriumCurve& curve) {
    std::vector<BifurcationEvent> events;
    if (curve.points.size() < 2) return events;
    const Indicator ind{&curve.spec, Indicator::Kind::Det};

    for (std::size_t i = 0; i + 1 < curve.points.size(); ++i) {
        const auto& a = curve.points[i];
        const auto& b = curve.points[i + 1];
        const double na = a.stab.char_poly.c3;
        const double nb = b.stab.char_poly.c3;
        if (!std::isfinite(na) || !std::isfinite(nb)) continue;
        // An existence-margin crossing of the tracked branch (a collision)
        // always zeroes an eigenvalue, so the det sign change subsumes it;
        // margin flips without a det flip are pure existence boundaries.
        if (!sign_change(na, nb)) continue;
        BifurcationEvent ev = make_event(BifurcationKind::Transcritical, curve.spec,
                                         ind, a.param, b.param);
        if (!residual_ok(ev, na, nb)) continue;
        ev.exchange_of_stability = verdict_flips(curve, ev.critical_value);
        events.push_back(std::move(ev));
    }
    return events;
}

SotomayorRecord verify_transcritical_sotomayor(const ModelParams& p,
                                               const Equilibrium& eq,
                                               const std::string& parameter) {
    const Mat3 j = jacobian(eq.point, p);
    Eigen::Matrix3d J;
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) J(i, k) = j(i, k);

    Eigen::EigenSolver<Eigen::Matrix3d> es(J, true);
    int zi = 0;
    for (int i = 1; i < 3; ++i)
        if (std::abs(es.eigenvalues()[i]) < std::abs(es.eigenvalues()[zi])) zi = i;
    const double zero_eig = es.eigenvalues()[zi].real();
    if (std::abs(es.eigenvalues()[zi]) > kZeroEigTol)
        throw std::invalid_argument(
            "verify_transcritical_sotomayor: no near-zero eigenvalue");

    auto null_vector = [](const Eigen::Matrix3d& m) {
        Eigen::JacobiSVD<Eigen::Matrix3d> svd(m, Eigen::ComputeFullV);
        Eigen::Vector3d v = svd.matrixV().col(2);
        // Deterministic orientation: first component of largest magnitude positive.
        int imax = 0;
        for (int i = 1; i < 3; ++i)
            if (std::fabs(v[i]) > std::fabs(v[imax])) imax = i;
        if (v[imax] < 0) v = -v;
        return v;
    };
    const Eigen::Vector3d u1 = null_vector(J);
    const Eigen::Vector3d u2 = null_vector(J.transpose());

    const double mu0 = get_param(p, parameter);
    const double dmu = 1e-6 * (1.0 + std::fabs(mu0));
    auto at_mu = [&](double mu) {
        ModelParams pm = p;
        set_param(pm, parameter, mu);
        return pm;
    };

    SotomayorRecord rec;
    rec.zero_eigenvalue = zero_eig;

    // s1 = u2 . f_mu
    const State fp = vector_field(eq.point, at_mu(mu0 + dmu));
    const State fm = vector_field(eq.point, at_mu(mu0 - dmu));
    const State f_mu = (1.0 / (2.0 * dmu)) * (fp - fm);
    rec.s1 = u2[0] * f_mu.x1 + u2[1] * f_mu.x2 + u2[2] * f_mu.x3;

    // s2 = u2 . (D f_mu u1) with D f_mu by central differences of the Jacobian.
    const Mat3 jp = jacobian(eq.point, at_mu(mu0 + dmu));
    const Mat3 jm = jacobian(eq.point, at_mu(mu0 - dmu));
    Eigen::Matrix3d dJ;
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) dJ(i, k) = (jp(i, k) - jm(i, k)) / (2.0 * dmu);
    rec.s2 = u2.dot(dJ * u1);

    // s3 = u2 . D^2 f(u1, u1) via a second difference along u1.
    const double hs = 1e-5 * (1.0 + max_abs(eq.point));
    const State su{hs * u1[0], hs * u1[1], hs * u1[2]};
    const State d2 = (1.0 / (hs * hs)) *
                     ((vector_field(eq.point + su, p) - 2.0 * vector_field(eq.point, p)) +
                      vector_field(eq.point - su, p));
    rec.s3 = u2[0] * d2.x1 + u2[1] * d2.x2 + u2[2] * d2.x3;

    // Crossing speed of the zero eigenvalue along the equilibrium branch.
    // When mu does not enter the critical row of f, s2 vanishes identically
    // (the m1- and r-induced collisions with the top-predator-free point are
    // of this type) and this derivative carries the transversality.
    auto branch_eig = [&](double mu) {
        const ModelParams pm = at_mu(mu);
        const Equilibrium em = tracked_equilibrium(eq.kind, pm);
        Eigen::Matrix3d Jm;
        const Mat3 jb = jacobian(em.point, pm);
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) Jm(i, k) = jb(i, k);
        Eigen::EigenSolver<Eigen::Matrix3d> esb(Jm, false);
        int bi = 0;
        for (int i = 1; i < 3; ++i)
            if (std::abs(esb.eigenvalues()[i]) < std::abs(esb.eigenvalues()[bi])) bi = i;
        return esb.eigenvalues()[bi].real();
    };
    const double bmu = 1e-5 * (1.0 + std::fabs(mu0));
    rec.branch_crossing = (branch_eig(mu0 + bmu) - branch_eig(mu0 - bmu)) / (2.0 * bmu);

    const double s_tol = 1e-6;
    rec.pass = std::fabs(rec.s1) < s_tol && std::fabs(rec.s3) > s_tol &&
               (std::fabs(rec.s2) > s_tol || std::fabs(rec.branch_crossing) > s_tol);
    return rec;
}

std::vector<AmplitudePoint> bubbling_diagram(const SweepSpec& spec,
                                             const SolverConfig& cfg, const State& s0,
                                             int threads) {
    spec.validate();
    cfg.validate();
    std::vector<AmplitudePoint> out(spec.grid);
    const double dx = (spec.hi - spec.lo) / (spec.grid - 1);
    run_chunked(spec.grid, threads, [&](int i) {
        AmplitudePoint& ap = out[i];
        ap.param = spec.lo + dx * i;
        const ModelParams p = spec.at(ap.param);
        try {
            const Trajectory traj = (p.alpha >= 1.0 && cfg.alpha == 0.0)
                                        ? integrate_classic(s0, p, cfg)
                                        : integrate_caputo_abm(s0, p, cfg);
            for (int c = 0; c < 3; ++c) ap.amplitude[c] = orbit_amplitude(traj, c);
        } catch (const std::domain_error&) {
            ap.diverged = true;
            ap.amplitude.fill(std::numeric_limits<double>::infinity());
        }
    });
    return out;
}

} // namespace odorchain
