#include "odorchain/equilibria.hpp"

#include <cmath>
#include <stdexcept>

namespace odorchain {

namespace {

constexpr double kResidualTol = 1e-9;
constexpr double kDegenerateEps = 1e-14;

bool positive(double v) { return v > 0.0 && std::isfinite(v); }

} // namespace

const char* to_string(EquilibriumKind k) {
    switch (k) {
        case EquilibriumKind::Vanishing: return "vanishing";
        case EquilibriumKind::Axial: return "axial";
        case EquilibriumKind::TopPredatorFree: return "top_predator_free";
        case EquilibriumKind::Coexisting: return "coexisting";
    }
    return "?";
}

const ExistenceCheck* Equilibrium::find_condition(const std::string& name) const {
    for (const auto& c : conditions)
        if (c.name == name) return &c;
    return nullptr;
}

Equilibrium vanishing(const ModelParams&) {
    Equilibrium eq;
    eq.kind = EquilibriumKind::Vanishing;
    eq.point = {0.0, 0.0, 0.0};
    eq.exists = true;
    eq.conditions.push_back({"always", true, 1.0});
    return eq;
}

Equilibrium axial(const ModelParams& p) {
    Equilibrium eq;
    eq.kind = EquilibriumKind::Axial;
    if (std::fabs(p.q) < kDegenerateEps || std::fabs(p.r1) < kDegenerateEps) {
        // q = 0: no harvesting pressure, the condition r < r1/q is vacuous;
        // r1 = 0: the point formula divides by r1.
        eq.degenerate = (std::fabs(p.r1) < kDegenerateEps);
        if (eq.degenerate) {
            eq.note = "r1 = 0 makes the axial point undefined";
            eq.point = {0.0, 0.0, 0.0};
            eq.exists = false;
            eq.conditions.push_back({"r < r1/q", false, 0.0});
            return eq;
        }
        eq.note = "q = 0: existence condition vacuous";
        eq.point = {1.0, 0.0, 0.0};
        eq.exists = true;
        eq.conditions.push_back({"r < r1/q", true, std::numeric_limits<double>::infinity()});
        return eq;
    }
    const double margin = p.r1 / p.q - p.r;
    eq.point = {1.0 - p.q * p.r / p.r1, 0.0, 0.0};
    eq.conditions.push_back({"r < r1/q", margin > 0.0, margin});
    eq.exists = margin > 0.0; // boundary equality coincides with E_v and reports not-exists
    return eq;
}

Equilibrium top_predator_free(const ModelParams& p) {
    Equilibrium eq;
    eq.kind = EquilibriumKind::TopPredatorFree;
    const double m1 = p.m1();
    const double growth = p.r2 * p.r3 * (1.0 - m1);

    if (std::fabs(growth) < kDegenerateEps) {
        eq.degenerate = true;
        eq.note = "r2 r3 (1 - m1) = 0: intermediate predator cannot invade";
        eq.exists = false;
        return eq;
    }

    double A;
    if (std::fabs(p.beta) < kDegenerateEps) {
        // beta -> 0 limit of the quadratic root.
        A = p.d1 / growth;
    } else {
        // Positive root of beta*growth*A^2 + growth*A - d1 = 0; the radicand
        // (1 - m1) r2 r3 (4 beta d1 + (1 - m1) r2 r3) matches omega_1^2.
        const double radicand = (m1 - 1.0) * p.r2 * p.r3 *
                                (-4.0 * p.beta * p.d1 - p.r2 * p.r3 + m1 * p.r2 * p.r3);
        if (radicand < 0.0) {
            eq.degenerate = true;
            eq.note = "complex branch: negative radicand in omega_1";
            eq.exists = false;
            eq.conditions.push_back({"omega1 radicand >= 0", false, radicand});
            return eq;
        }
        const double omega1 = std::sqrt(radicand);
        A = (-p.r2 * p.r3 + m1 * p.r2 * p.r3 + omega1) /
            (2.0 * p.beta * p.r2 * p.r3 - 2.0 * p.beta * m1 * p.r2 * p.r3);
        eq.conditions.push_back({"omega1 radicand >= 0", true, radicand});
    }

    const double denomB = p.r2 * (1.0 - m1) * (1.0 + p.beta * A);
    if (std::fabs(denomB) < kDegenerateEps || !std::isfinite(A)) {
        eq.degenerate = true;
        eq.note = "degenerate denominator in B";
        eq.exists = false;
        return eq;
    }
    const double B = (p.r1 * (1.0 - A) - p.q * p.r) / denomB;
    eq.point = {A, B, 0.0};

    // r < r1/q, shared with the axial point.
    const double axial_margin =
        (std::fabs(p.q) < kDegenerateEps) ? std::numeric_limits<double>::infinity()
                                          : p.r1 / p.q - p.r;
    eq.conditions.push_back({"r < r1/q", axial_margin > 0.0, axial_margin});

    // Invasion condition: the axial point must be unstable against the
    // intermediate predator, i.e. the x2 growth rate at E_a is positive.
    // This is the (2,2) Jacobian entry at E_a, the sign-robust form of the
    // printed r2-vs-omega_6 inequality.
    double invasion = std::numeric_limits<double>::quiet_NaN();
    if (std::fabs(p.r1) > kDegenerateEps) {
        const double xa = 1.0 - p.q * p.r / p.r1;
        invasion = growth * (1.0 + p.beta * xa) * xa - p.d1;
    }
    eq.conditions.push_back({"intermediate predator invades E_a", invasion > 0.0, invasion});

    eq.conditions.push_back({"A > 0", positive(A), A});
    eq.conditions.push_back({"B > 0", positive(B), B});

    eq.exists = axial_margin > 0.0 && invasion > 0.0 && positive(A) && positive(B);
    return eq;
}

Equilibrium coexisting(const ModelParams& p) {
    Equilibrium eq;
    eq.kind = EquilibriumKind::Coexisting;
    const double m1 = p.m1(), m2 = p.m2();

    const double K = p.b * p.d2 + (m2 - 1.0) * p.r4 * p.r5;
    if (std::fabs(K) < kDegenerateEps) {
        eq.degenerate = true;
        eq.note = "b d2 + (m2 - 1) r4 r5 = 0: D undefined";
        eq.exists = false;
        return eq;
    }
    const double D = -p.d2 / K;

    const double denomC = p.b * p.d2 * p.r1 + p.beta * p.d2 * (m1 - 1.0) * p.r2 +
                          (m2 - 1.0) * p.r1 * p.r4 * p.r5;
    if (std::fabs(denomC) < kDegenerateEps) {
        eq.degenerate = true;
        eq.note = "degenerate denominator in C";
        eq.exists = false;
        return eq;
    }
    const double C = (p.b * p.d2 * (p.r1 - p.r * p.q) + p.d2 * (p.r2 - m1 * p.r2) -
                      (m2 - 1.0) * (p.r * p.q - p.r1) * p.r4 * p.r5) /
                     denomC;

    // Closed form for E via the omega expressions, with the stray "r-1"
    // token read as r1 (the parallel u22 expression confirms the reading).
    const double rq = p.r * p.q;
    const double w2 = p.d1 * p.r1 * p.r1 +
                      (m1 - 1.0) * (rq - p.r1) * (p.beta * rq - p.r1 - p.beta * p.r1) * p.r2 * p.r3;
    const double w3 = p.d2 * (m1 - 1.0) * (m1 - 1.0) * p.r2 * p.r2 * p.r3 -
                      (m2 - 1.0) * (p.d1 * p.r1 - (m1 - 1.0) * (rq - p.r1) * p.r2 * p.r3) *
                          p.r4 * p.r5;
    const double w4 = 2.0 * p.d1 * p.d2 * p.r1 +
                      (rq - p.r1) * p.r3 *
                          (p.d2 * (m1 - 1.0) * p.r2 + (m2 - 1.0) * (rq - p.r1) * p.r4 * p.r5);
    const double w5 =
        p.r1 * (-p.d2 * (m1 - 1.0) * (m1 - 1.0) * p.r2 * p.r2 * p.r3 +
                2.0 * (m2 - 1.0) * (p.d1 * p.r1 - (m1 - 1.0) * (rq - p.r1) * p.r2 * p.r3) *
                    p.r4 * p.r5) +
        p.beta * (m1 - 1.0) * p.r2 *
            (2.0 * p.d1 * p.d2 * p.r1 +
             (rq - p.r1) * p.r3 *
                 (p.d2 * (m1 - 1.0) * p.r2 + 2.0 * (m2 - 1.0) * (rq - p.r1) * p.r4 * p.r5));
    const double core = p.beta * p.beta * p.d1 * p.d2 * p.d2 * (m1 - 1.0) * (m1 - 1.0) *
                            p.r2 * p.r2 +
                        p.b * p.b * p.d2 * p.d2 * w2 - (m2 - 1.0) * p.r1 * p.r4 * p.r5 * w3 +
                        p.beta * (m1 - 1.0) * (m2 - 1.0) * p.r2 * p.r4 * p.r5 * w4 +
                        p.b * p.d2 * w5;
    double E = p.r5 * core / (K * denomC * denomC);

    // The residual is the arbiter of the transcription: if the omega form
    // drifts off the true root, fall back to the direct elimination of f2 = 0.
    State candidate{C, D, E};
    if (max_abs(vector_field(candidate, p)) > kResidualTol) {
        const double direct = (p.r3 * p.r2 * (1.0 - m1) * (1.0 + p.beta * C) * C - p.d1) *
                              (1.0 + p.b * D) / (p.r4 * (1.0 - m2));
        State alt{C, D, direct};
        if (max_abs(vector_field(alt, p)) < max_abs(vector_field(candidate, p))) {
            eq.note = "omega closed form for E overridden by direct root";
            E = direct;
            candidate = alt;
        }
    }
    eq.point = candidate;

    // The four existence conditions, as signed margins.
    const double cond1 = p.r1 - p.d2 * (m1 - 1.0) * p.r2 / K;
    eq.conditions.push_back({"r1 bound", cond1 > 0.0, cond1});
    const double w7 = denomC;
    const double w8 = p.beta * rq - p.r1 - p.beta * p.r1;
    const double w9 = K * (p.b * p.d2 * (rq - p.r1) + p.d2 * (m1 - 1.0) * p.r2 +
                           (m2 - 1.0) * (rq - p.r1) * p.r4 * p.r5);
    const double r3_den = (m1 - 1.0) * w8 * p.r2 * w9;
    const double cond2 = (std::fabs(r3_den) < kDegenerateEps)
                             ? std::numeric_limits<double>::quiet_NaN()
                             : p.r3 + p.d1 * w7 * w7 / r3_den;
    eq.conditions.push_back({"r3 bound", cond2 > 0.0, cond2});
    const double cond3 = p.r4 - p.b * p.d2 / (p.r5 - m2 * p.r5);
    eq.conditions.push_back({"r4 bound", cond3 > 0.0, cond3});
    const double cond4 = (p.b * p.d2 * p.r1 + p.d2 * (p.r2 - m1 * p.r2) +
                          (m2 - 1.0) * p.r1 * p.r4 * p.r5) /
                             (p.q * K) -
                         p.r;
    eq.conditions.push_back({"r bound", cond4 > 0.0, cond4});

    eq.conditions.push_back({"C > 0", positive(C), C});
    eq.conditions.push_back({"D > 0", positive(D), D});
    eq.conditions.push_back({"E > 0", positive(E), E});

    bool all = true;
    for (const auto& c : eq.conditions) all = all && c.satisfied;
    eq.exists = all && max_abs(vector_field(eq.point, p)) < kResidualTol;
    return eq;
}

std::array<Equilibrium, 4> all_equilibria(const ModelParams& p) {
    return {vanishing(p), axial(p), top_predator_free(p), coexisting(p)};
}

} // namespace odorchain
