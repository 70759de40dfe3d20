#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace odorchain {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

/// Randomized invariant suites, shared by the `validate` CLI command and the
/// acceptance tests.  All draws come from a seeded engine, so a given seed
/// reproduces byte-identical results.
namespace validate {

/// Closed-form equilibria have residual < 1e-9 and the coexisting point
/// matches a Newton root-finder oracle to 1e-8, over `draws` random
/// parameter sets.
CheckResult equilibrium_residuals(std::uint64_t seed, int draws = 200);

/// Analytic Jacobian matches central finite differences of the vector field
/// to 1e-6 relative, over random states and parameters.
CheckResult jacobian_finite_difference(std::uint64_t seed, int draws = 100);

/// Routh-Hurwitz and Matignon verdicts coincide at alpha = 1 on random
/// characteristic polynomials (margins within 1e-6 of zero excluded).
CheckResult rh_matignon_agreement(std::uint64_t seed, int draws = 500);

/// Sign of the cubic discriminant matches the root structure reported by the
/// eigenvalue solver on random cubics.
CheckResult discriminant_root_structure(std::uint64_t seed, int draws = 500);

/// From nonnegative initial data no trajectory component drops below -1e-9
/// before policy action, and W(t) respects the boundedness bound with a 5%
/// slack past the transient, over random parameter draws at t_end = 500.
CheckResult nonnegativity_and_boundedness(std::uint64_t seed, int draws = 100,
                                          double t_end = 500.0);

/// Closed-form stability conditions agree with the eigenvalue verdicts on
/// random parameter draws (near-marginal cases excluded).
CheckResult closed_form_vs_eigenvalues(std::uint64_t seed, int draws = 500);

/// Runs every suite with sub-seeds derived from `seed`.
std::vector<CheckResult> run_all(std::uint64_t seed);

} // namespace validate
} // namespace odorchain
