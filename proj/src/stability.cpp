#include "odorchain/stability.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace odorchain {

namespace {

constexpr double kMarginalBand = 1e-12;

Verdict verdict_from_quantities(const double* qs, int n) {
    bool marginal = false;
    for (int i = 0; i < n; ++i) {
        if (qs[i] < -kMarginalBand) return Verdict::Unstable;
        if (qs[i] <= kMarginalBand) marginal = true;
    }
    return marginal ? Verdict::Marginal : Verdict::Stable;
}

std::complex<double> eval(const CharPoly& cp, std::complex<double> z) {
    return ((z + cp.c1) * z + cp.c2) * z + cp.c3;
}

std::complex<double> eval_deriv(const CharPoly& cp, std::complex<double> z) {
    return (3.0 * z + 2.0 * cp.c1) * z + cp.c2;
}

void polish(const CharPoly& cp, std::complex<double>& z) {
    for (int it = 0; it < 3; ++it) {
        const auto d = eval_deriv(cp, z);
        if (std::abs(d) < 1e-300) break;
        const auto step = eval(cp, z) / d;
        if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
        z -= step;
    }
}

std::array<std::complex<double>, 3> companion_roots(const CharPoly& cp) {
    Eigen::Matrix3d comp;
    comp << 0, 0, -cp.c3,
            1, 0, -cp.c2,
            0, 1, -cp.c1;
    Eigen::EigenSolver<Eigen::Matrix3d> solver(comp, false);
    std::array<std::complex<double>, 3> roots;
    for (int i = 0; i < 3; ++i) roots[i] = solver.eigenvalues()[i];
    return roots;
}

void sort_roots(std::array<std::complex<double>, 3>& roots) {
    std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
}

} // namespace

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Stable: return "stable";
        case Verdict::Unstable: return "unstable";
        case Verdict::Marginal: return "marginal";
    }
    return "?";
}

const char* to_string(Criterion c) {
    switch (c) {
        case Criterion::RouthHurwitz: return "routh_hurwitz";
        case Criterion::Matignon: return "matignon";
        case Criterion::FractionalCubic: return "fractional_cubic";
    }
    return "?";
}

double CharPoly::eval_abs(const std::complex<double>& z) const {
    return std::abs(eval(*this, z));
}

double CharPoly::norm() const {
    return std::max({std::fabs(c1), std::fabs(c2), std::fabs(c3)});
}

CharPoly char_poly(const Mat3& j) {
    CharPoly cp;
    cp.c1 = -j.trace();
    cp.c2 = j.minor_sum();
    cp.c3 = -j.det();
    return cp;
}

CharPoly char_poly_at(const Equilibrium& eq, const ModelParams& p) {
    const Mat3 j = jacobian(eq.point, p);
    if (!j.finite()) throw std::domain_error("char_poly_at: non-finite Jacobian");
    return char_poly(j);
}

std::array<std::complex<double>, 3> eigenvalues_cubic(const CharPoly& cp) {
    if (!std::isfinite(cp.c1) || !std::isfinite(cp.c2) || !std::isfinite(cp.c3))
        throw std::domain_error("eigenvalues_cubic: non-finite coefficients");

    std::array<std::complex<double>, 3> roots;
    const double shift = cp.c1 / 3.0;
    const double pp = cp.c2 - cp.c1 * cp.c1 / 3.0;
    const double qq = 2.0 * cp.c1 * cp.c1 * cp.c1 / 27.0 - cp.c1 * cp.c2 / 3.0 + cp.c3;
    const double disc = -4.0 * pp * pp * pp - 27.0 * qq * qq;

    if (pp == 0.0 && qq == 0.0) {
        roots.fill({-shift, 0.0});
        return roots;
    }

    if (disc > 0.0) {
        // Three distinct real roots, trigonometric form.
        const double s = std::sqrt(-pp / 3.0);
        double arg = 3.0 * qq / (2.0 * pp * s);
        arg = std::clamp(arg, -1.0, 1.0);
        const double theta = std::acos(arg);
        for (int k = 0; k < 3; ++k) {
            const double t = 2.0 * s * std::cos(theta / 3.0 - 2.0 * std::numbers::pi * k / 3.0);
            roots[k] = {t - shift, 0.0};
        }
    } else {
        // One real root plus a conjugate pair (or a repeated real pair at disc = 0).
        const double half_q = qq / 2.0;
        const double rad = std::sqrt(std::max(0.0, half_q * half_q + pp * pp * pp / 27.0));
        const double u = std::cbrt(-half_q + rad);
        const double v = (u != 0.0) ? -pp / (3.0 * u) : std::cbrt(-half_q - rad);
        const double t1 = u + v;
        const double re = -t1 / 2.0;
        const double im = std::sqrt(3.0) / 2.0 * std::fabs(u - v);
        roots[0] = {t1 - shift, 0.0};
        roots[1] = {re - shift, im};
        roots[2] = {re - shift, -im};
    }

    for (auto& z : roots) polish(cp, z);

    const double tol = 1e-9 * (1.0 + cp.norm());
    for (const auto& z : roots) {
        if (!(cp.eval_abs(z) < tol)) {
            roots = companion_roots(cp);
            for (auto& z2 : roots) polish(cp, z2);
            break;
        }
    }
    sort_roots(roots);
    return roots;
}

Verdict routh_hurwitz(const CharPoly& cp) {
    const double qs[4] = {cp.c1, cp.c2, cp.c3, cp.hurwitz()};
    return verdict_from_quantities(qs, 4);
}

MatignonResult matignon_classify(const std::array<std::complex<double>, 3>& eigs,
                                 double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("matignon_classify: alpha outside (0,1]");
    MatignonResult res;
    const double sector = alpha * std::numbers::pi / 2.0;
    for (int i = 0; i < 3; ++i) {
        const double a = (eigs[i] == std::complex<double>(0.0, 0.0))
                             ? 0.0
                             : std::fabs(std::arg(eigs[i]));
        res.margins[i] = a - sector;
    }
    res.verdict = verdict_from_quantities(res.margins.data(), 3);
    return res;
}

double cubic_discriminant(const CharPoly& cp) {
    const double c1 = cp.c1, c2 = cp.c2, c3 = cp.c3;
    return 18.0 * c1 * c2 * c3 + (c1 * c2) * (c1 * c2) - 4.0 * c1 * c1 * c1 * c3 -
           4.0 * c2 * c2 * c2 - 27.0 * c3 * c3;
}

FractionalCubicResult fractional_cubic_criteria(const CharPoly& cp, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("fractional_cubic_criteria: alpha outside (0,1)");
    FractionalCubicResult res;
    res.discriminant = cubic_discriminant(cp);
    const double h = cp.hurwitz();

    if (res.discriminant > 0.0 && cp.c1 > 0.0 && cp.c3 > 0.0 && h > 0.0) {
        res.conclusive = true;
        res.condition = 1;
    } else if (res.discriminant < 0.0 && cp.c1 >= 0.0 && cp.c2 >= 0.0 && cp.c3 > 0.0 &&
               alpha < 2.0 / 3.0) {
        res.conclusive = true;
        res.condition = 2;
    } else if (res.discriminant < 0.0 && cp.c1 > 0.0 && cp.c2 > 0.0 &&
               std::fabs(h) < 1e-9) {
        res.conclusive = true;
        res.condition = 3;
    }
    return res;
}

StabilityReport classify_equilibrium(const Equilibrium& eq, const ModelParams& p) {
    if (!eq.point.finite())
        throw std::domain_error("classify_equilibrium: non-finite equilibrium point");

    StabilityReport rep;
    rep.kind = eq.kind;
    rep.char_poly = char_poly_at(eq, p);
    rep.eigenvalues = eigenvalues_cubic(rep.char_poly);
    rep.rh_quantities = {rep.char_poly.c1, rep.char_poly.c2, rep.char_poly.c3,
                         rep.char_poly.hurwitz()};
    rep.discriminant = cubic_discriminant(rep.char_poly);

    const auto mat = matignon_classify(rep.eigenvalues, p.alpha);
    rep.matignon_margins = mat.margins;

    if (p.alpha >= 1.0) {
        rep.criterion_used = Criterion::RouthHurwitz;
        rep.verdict = routh_hurwitz(rep.char_poly);
    } else {
        rep.criterion_used = Criterion::Matignon;
        rep.verdict = mat.verdict;
        const auto frac = fractional_cubic_criteria(rep.char_poly, p.alpha);
        rep.closed_form_checks.push_back({"fractional sufficient condition",
                                          frac.conclusive,
                                          static_cast<double>(frac.condition)});
    }

    // Theorem conditions per equilibrium, as named checks.
    switch (eq.kind) {
        case EquilibriumKind::Vanishing: {
            const double margin = (std::fabs(p.q) < 1e-14)
                                      ? -std::numeric_limits<double>::infinity()
                                      : p.r - p.r1 / p.q;
            rep.closed_form_checks.push_back({"r > r1/q", margin > 0.0, margin});
            break;
        }
        case EquilibriumKind::Axial: {
            const double m_exist = (std::fabs(p.q) < 1e-14)
                                       ? std::numeric_limits<double>::infinity()
                                       : p.r1 / p.q - p.r;
            rep.closed_form_checks.push_back({"r < r1/q", m_exist > 0.0, m_exist});
            // r2 below the invasion bound <=> the (2,2) entry of J at E_a is
            // negative; sign-robust form of the printed omega_6 inequality.
            const double j22 = jacobian(eq.point, p)(1, 1);
            rep.closed_form_checks.push_back({"r2 below invasion bound", j22 < 0.0, -j22});
            break;
        }
        case EquilibriumKind::TopPredatorFree: {
            const char* names[4] = {"M1 > 0", "M2 > 0", "M3 > 0", "M1 M2 - M3 > 0"};
            for (int i = 0; i < 4; ++i)
                rep.closed_form_checks.push_back(
                    {names[i], rep.rh_quantities[i] > 0.0, rep.rh_quantities[i]});
            break;
        }
        case EquilibriumKind::Coexisting: {
            const char* names[4] = {"N1 > 0", "N2 > 0", "N3 > 0", "N1 N2 - N3 > 0"};
            for (int i = 0; i < 4; ++i)
                rep.closed_form_checks.push_back(
                    {names[i], rep.rh_quantities[i] > 0.0, rep.rh_quantities[i]});
            break;
        }
    }

    if (eq.degenerate) {
        rep.verdict = Verdict::Marginal;
        rep.note = "degenerate equilibrium: " + eq.note;
    }
    return rep;
}

} // namespace odorchain
