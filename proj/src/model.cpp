#include "odorchain/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace odorchain {

State operator+(const State& a, const State& b) {
    return {a.x1 + b.x1, a.x2 + b.x2, a.x3 + b.x3};
}

State operator-(const State& a, const State& b) {
    return {a.x1 - b.x1, a.x2 - b.x2, a.x3 - b.x3};
}

State operator*(double s, const State& a) {
    return {s * a.x1, s * a.x2, s * a.x3};
}

double max_abs(const State& a) {
    return std::max({std::fabs(a.x1), std::fabs(a.x2), std::fabs(a.x3)});
}

double Mat3::trace() const { return m[0] + m[4] + m[8]; }

double Mat3::det() const {
    return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
           m[2] * (m[3] * m[7] - m[4] * m[6]);
}

double Mat3::minor_sum() const {
    const double m11 = m[4] * m[8] - m[5] * m[7];
    const double m22 = m[0] * m[8] - m[2] * m[6];
    const double m33 = m[0] * m[4] - m[1] * m[3];
    return m11 + m22 + m33;
}

bool Mat3::finite() const {
    for (double v : m)
        if (!std::isfinite(v)) return false;
    return true;
}

std::vector<std::string> ModelParams::validate() const {
    std::vector<std::string> warnings;
    auto warn = [&](const std::string& msg) { warnings.push_back(msg); };

    auto nonneg = [&](double v, const char* name) {
        if (v < 0) warn(std::string(name) + " is negative");
    };
    nonneg(r1, "r1");
    nonneg(r2, "r2");
    nonneg(r4, "r4");
    nonneg(d1, "d1");
    nonneg(d2, "d2");
    nonneg(b, "b");
    nonneg(q, "q");
    nonneg(r, "r");
    nonneg(beta, "beta");
    if (r3 <= 0 || r3 > 1) warn("conversion efficiency r3 outside (0,1]");
    if (r5 <= 0 || r5 > 1) warn("conversion efficiency r5 outside (0,1]");
    if (alpha <= 0 || alpha > 1) warn("alpha outside (0,1]");
    if (m1() < 0 || m1() >= 1) warn("derived refuge fraction m1 outside [0,1)");
    if (m2() < 0 || m2() >= 1) warn("derived refuge fraction m2 outside [0,1)");
    return warnings;
}

namespace {

struct ParamField {
    const char* name;
    double ModelParams::* field;
};

constexpr ParamField kFields[] = {
    {"r1", &ModelParams::r1},     {"r2", &ModelParams::r2},
    {"r3", &ModelParams::r3},     {"r4", &ModelParams::r4},
    {"r5", &ModelParams::r5},     {"d1", &ModelParams::d1},
    {"d2", &ModelParams::d2},     {"beta", &ModelParams::beta},
    {"b", &ModelParams::b},       {"q", &ModelParams::q},
    {"r", &ModelParams::r},       {"m_fp", &ModelParams::m_fp},
    {"m_sp", &ModelParams::m_sp}, {"a1", &ModelParams::a1},
    {"a2", &ModelParams::a2},     {"alpha", &ModelParams::alpha},
};

} // namespace

bool is_param_name(std::string_view name) {
    if (name == "m1" || name == "m2") return true;
    for (const auto& f : kFields)
        if (name == f.name) return true;
    return false;
}

void set_param(ModelParams& p, std::string_view name, double value) {
    // Sweeping m1/m2 directly routes through the odour parameterization.
    if (name == "m1") {
        p.m_fp = 1.0;
        p.a1 = value;
        return;
    }
    if (name == "m2") {
        p.m_sp = 1.0;
        p.a2 = value;
        return;
    }
    for (const auto& f : kFields) {
        if (name == f.name) {
            p.*(f.field) = value;
            return;
        }
    }
    throw std::invalid_argument("unknown parameter name: " + std::string(name));
}

double get_param(const ModelParams& p, std::string_view name) {
    if (name == "m1") return p.m1();
    if (name == "m2") return p.m2();
    for (const auto& f : kFields)
        if (name == f.name) return p.*(f.field);
    throw std::invalid_argument("unknown parameter name: " + std::string(name));
}

State vector_field(const State& s, const ModelParams& p) {
    if (!s.finite()) throw std::domain_error("vector_field: non-finite state");
    const double m1 = p.m1(), m2 = p.m2();
    const double den = 1.0 + p.b * s.x2;
    const double odour = (1.0 + p.beta * s.x1);
    const double intake = p.r2 * (1.0 - m1) * odour * s.x1 * s.x2;
    const double holling = p.r4 * (1.0 - m2) * s.x2 * s.x3 / den;

    State f;
    f.x1 = p.r1 * s.x1 * (1.0 - s.x1) - intake - p.q * p.r * s.x1;
    f.x2 = p.r3 * intake - holling - p.d1 * s.x2;
    f.x3 = p.r5 * holling - p.d2 * s.x3;
    return f;
}

Mat3 jacobian(const State& s, const ModelParams& p) {
    if (!s.finite()) throw std::domain_error("jacobian: non-finite state");
    const double m1 = p.m1(), m2 = p.m2();
    const double den = 1.0 + p.b * s.x2;
    const double den2 = den * den;

    Mat3 j;
    j(0, 0) = p.r1 * (1.0 - 2.0 * s.x1) -
              p.r2 * (1.0 - m1) * s.x2 * (1.0 + 2.0 * p.beta * s.x1) - p.q * p.r;
    j(0, 1) = -p.r2 * (1.0 - m1) * (1.0 + p.beta * s.x1) * s.x1;
    j(0, 2) = 0.0;
    j(1, 0) = p.r3 * p.r2 * (1.0 - m1) * s.x2 * (1.0 + 2.0 * p.beta * s.x1);
    j(1, 1) = p.r3 * p.r2 * (1.0 - m1) * (1.0 + p.beta * s.x1) * s.x1 -
              p.r4 * (1.0 - m2) * s.x3 / den2 - p.d1;
    j(1, 2) = -p.r4 * (1.0 - m2) * s.x2 / den;
    j(2, 0) = 0.0;
    j(2, 1) = p.r5 * p.r4 * (1.0 - m2) * s.x3 / den2;
    j(2, 2) = p.r5 * p.r4 * (1.0 - m2) * s.x2 / den - p.d2;
    return j;
}

} // namespace odorchain
