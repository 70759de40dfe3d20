#pragma once

#include <array>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

namespace odorchain {

/// Population densities of prey (x1), intermediate predator (x2) and top
/// predator (x3).
struct State {
    double x1 = 0.0;
    double x2 = 0.0;
    double x3 = 0.0;

    bool finite() const {
        return std::isfinite(x1) && std::isfinite(x2) && std::isfinite(x3);
    }
    double operator[](int i) const { return i == 0 ? x1 : (i == 1 ? x2 : x3); }
    double& operator[](int i) { return i == 0 ? x1 : (i == 1 ? x2 : x3); }
};

State operator+(const State& a, const State& b);
State operator-(const State& a, const State& b);
State operator*(double s, const State& a);
double max_abs(const State& a);

/// Row-major 3x3 real matrix, just enough linear algebra for this model.
struct Mat3 {
    std::array<double, 9> m{};

    double operator()(int i, int j) const { return m[3 * i + j]; }
    double& operator()(int i, int j) { return m[3 * i + j]; }

    double trace() const;
    double det() const;
    /// Sum of the three principal 2x2 minors.
    double minor_sum() const;
    bool finite() const;
};

/// Rate, refuge, harvesting and odour constants of the three-species food
/// chain, plus the Caputo order alpha.
///
/// The refuge fractions are derived quantities: m1 = m_fp*a1 and
/// m2 = m_sp*a2.  Analyses that sweep m1 or m2 directly set m_fp = m_sp = 1
/// and sweep a1/a2, so a single code path serves both parameterizations.
/// Defaults are the baseline set used throughout the stability study.
struct ModelParams {
    double r1 = 2.0;    ///< prey intrinsic growth rate
    double r2 = 1.0;    ///< intermediate predator feeding rate
    double r3 = 1.0;    ///< intermediate conversion efficiency
    double r4 = 3.0;    ///< top predator feeding rate
    double r5 = 1.0;    ///< top conversion efficiency
    double d1 = 0.25;   ///< intermediate predator death rate
    double d2 = 0.5;    ///< top predator death rate
    double beta = 0.01; ///< prey-odour coefficient
    double b = 1.0;     ///< Holling-II handling constant
    double q = 0.5;     ///< catchability constant
    double r = 0.01;    ///< harvesting effort
    double m_fp = 1.0;  ///< prey refuge probability
    double m_sp = 1.0;  ///< intermediate predator refuge probability
    double a1 = 0.5;    ///< intermediate predator odour intensity
    double a2 = 0.5;    ///< top predator odour intensity
    double alpha = 1.0; ///< Caputo order, (0, 1]

    double m1() const { return m_fp * a1; }
    double m2() const { return m_sp * a2; }

    /// Advisory validation: returns human-readable warnings, never rejects.
    /// Out-of-range refuge fractions are legitimate in some sweeps (a1 is
    /// deliberately pushed negative), so they only warn.
    std::vector<std::string> validate() const;
};

/// Names accepted by set_param/get_param and by sweep specifications.
bool is_param_name(std::string_view name);

/// Set a parameter by name.  "m1"/"m2" set m_fp (resp. m_sp) to 1 and write
/// the value into a1 (resp. a2).  Throws std::invalid_argument for unknown
/// names.
void set_param(ModelParams& p, std::string_view name, double value);
double get_param(const ModelParams& p, std::string_view name);

/// Right-hand side of the food-chain system at state s.
/// Throws std::domain_error for non-finite input.
State vector_field(const State& s, const ModelParams& p);

/// Analytic Jacobian of vector_field at state s.
/// Throws std::domain_error for non-finite input.
Mat3 jacobian(const State& s, const ModelParams& p);

} // namespace odorchain
