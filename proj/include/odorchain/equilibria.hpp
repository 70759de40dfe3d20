#pragma once

#include <array>
#include <string>
#include <vector>

#include "odorchain/model.hpp"

namespace odorchain {

enum class EquilibriumKind { Vanishing, Axial, TopPredatorFree, Coexisting };

const char* to_string(EquilibriumKind k);

/// One named existence condition with its signed margin.  margin > 0 means
/// satisfied with room to spare; the sign change of a margin is what sweep
/// code uses to locate transcritical collisions.
struct ExistenceCheck {
    std::string name;
    bool satisfied = false;
    double margin = 0.0;
};

struct Equilibrium {
    EquilibriumKind kind = EquilibriumKind::Vanishing;
    State point{};
    bool exists = false;
    bool degenerate = false; ///< division-by-zero parameter degeneracy or complex branch
    std::string note;        ///< reason when degenerate
    std::vector<ExistenceCheck> conditions;

    const ExistenceCheck* find_condition(const std::string& name) const;
};

/// E_v(0,0,0); always exists.
Equilibrium vanishing(const ModelParams& p);

/// E_a(1 - qr/r1, 0, 0); exists iff r < r1/q.  Degenerate when q = 0 or
/// r1 = 0 makes the condition vacuous.
Equilibrium axial(const ModelParams& p);

/// E_t(A, B, 0) from the closed forms.  For beta = 0 the quadratic for A
/// collapses; the linear-limit branch A = d1/(r2 r3 (1-m1)) is used instead.
Equilibrium top_predator_free(const ModelParams& p);

/// E_c(C, D, E) from the closed forms, with the residual of the vector field
/// enforced as the final arbiter of the transcribed expressions.
Equilibrium coexisting(const ModelParams& p);

/// The four equilibria in fixed order: Vanishing, Axial, TopPredatorFree,
/// Coexisting.  Degeneracies propagate as flags, never as exceptions.
std::array<Equilibrium, 4> all_equilibria(const ModelParams& p);

} // namespace odorchain
