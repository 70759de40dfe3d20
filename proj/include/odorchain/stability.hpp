#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "odorchain/equilibria.hpp"
#include "odorchain/model.hpp"

namespace odorchain {

/// Coefficients of the monic cubic lambda^3 + c1 lambda^2 + c2 lambda + c3.
/// At the top-predator-free point these are the M_i, at the coexisting point
/// the N_i of the stability theorems.
struct CharPoly {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;

    double hurwitz() const { return c1 * c2 - c3; } ///< c1*c2 - c3
    double eval_abs(const std::complex<double>& z) const;
    double norm() const; ///< max coefficient magnitude
};

enum class Verdict { Stable, Unstable, Marginal };
const char* to_string(Verdict v);

enum class Criterion { RouthHurwitz, Matignon, FractionalCubic };
const char* to_string(Criterion c);

/// Characteristic polynomial of a 3x3 matrix via trace / principal minors /
/// determinant.
CharPoly char_poly(const Mat3& j);

/// Characteristic polynomial of the Jacobian at an equilibrium point.
/// Throws std::domain_error if the Jacobian is non-finite.
CharPoly char_poly_at(const Equilibrium& eq, const ModelParams& p);

/// All three roots of the cubic, sorted by real part descending, ties broken
/// by imaginary part descending.  Closed form (trigonometric / Cardano) with
/// a Newton polish; falls back to a companion-matrix eigensolve when the
/// closed form loses precision.
std::array<std::complex<double>, 3> eigenvalues_cubic(const CharPoly& cp);

/// Routh-Hurwitz verdict for the cubic: Stable iff c1, c2, c3 and c1*c2-c3
/// are all positive; quantities within 1e-12 of zero give Marginal.
Verdict routh_hurwitz(const CharPoly& cp);

struct MatignonResult {
    Verdict verdict = Verdict::Marginal;
    std::array<double, 3> margins{}; ///< |arg(lambda_i)| - alpha*pi/2
};

/// Matignon sector test: stable iff every eigenvalue satisfies
/// |arg(lambda)| > alpha*pi/2.  arg(0) is treated as 0, so a zero eigenvalue
/// gives margin -alpha*pi/2.  Margins within 1e-12 of zero give Marginal.
MatignonResult matignon_classify(const std::array<std::complex<double>, 3>& eigs,
                                 double alpha);

/// Standard discriminant of the monic cubic:
/// 18 c1 c2 c3 + (c1 c2)^2 - 4 c1^3 c3 - 4 c2^3 - 27 c3^2.
/// Positive iff the cubic has three distinct real roots.
double cubic_discriminant(const CharPoly& cp);

struct FractionalCubicResult {
    bool conclusive = false; ///< true when one of the sufficient conditions held
    int condition = 0;       ///< 1-based index of the first satisfied condition
    double discriminant = 0.0;
};

/// Sufficient stability conditions for the fractional cubic:
///  (1) disc > 0, c1 > 0, c3 > 0, c1*c2 - c3 > 0
///  (2) disc < 0, c1 >= 0, c2 >= 0, c3 > 0, alpha < 2/3
///  (3) disc < 0, c1 > 0, c2 > 0, c1*c2 == c3 (within 1e-9)
/// Inconclusive results defer to matignon_classify, which is authoritative.
FractionalCubicResult fractional_cubic_criteria(const CharPoly& cp, double alpha);

struct NamedCheck {
    std::string name;
    bool satisfied = false;
    double margin = 0.0;
};

struct StabilityReport {
    EquilibriumKind kind = EquilibriumKind::Vanishing;
    CharPoly char_poly{};
    std::array<std::complex<double>, 3> eigenvalues{};
    std::array<double, 4> rh_quantities{}; ///< c1, c2, c3, c1*c2-c3
    double discriminant = 0.0;
    std::array<double, 3> matignon_margins{};
    Verdict verdict = Verdict::Marginal;
    Criterion criterion_used = Criterion::RouthHurwitz;
    std::vector<NamedCheck> closed_form_checks;
    std::string note;
};

/// Full local stability classification of an equilibrium.  For alpha = 1 the
/// verdict comes from Routh-Hurwitz, for alpha < 1 from Matignon.  The
/// closed-form theorem conditions for E_v, E_a and E_t are evaluated as named
/// checks alongside the eigenvalue verdict.  Degenerate equilibria report
/// Marginal with the reason in note.
StabilityReport classify_equilibrium(const Equilibrium& eq, const ModelParams& p);

} // namespace odorchain
