#pragma once

#include <cstdint>
#include <string>

#include "odorchain/bifurcation.hpp"
#include "odorchain/fracsolve.hpp"
#include "odorchain/model.hpp"

namespace odorchain {

enum class Command { Simulate, Equilibria, Stability, Sweep, Bubbling, Validate };
const char* to_string(Command c);

struct RunConfig {
    Command command = Command::Simulate;
    ModelParams params{};
    SolverConfig solver{};
    State initial_state{0.8, 0.6, 0.8};
    SweepSpec sweep{};
    std::string out_dir = ".";
    std::uint64_t seed = 12345;
    int threads = 1;
};

/// Thrown for unknown keys, type mismatches and invalid values; run maps it
/// to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parse a JSON document into a RunConfig with the baseline defaults applied.
/// Unknown keys are an error listing them; type mismatches report the path.
RunConfig parse_config(const std::string& json_text, Command command);

/// Apply a "section.key=value" override (e.g. params.alpha=0.98,
/// sweep.lo=0.3, seed=7).  Precedence: flags > file > defaults.
void apply_override(RunConfig& cfg, const std::string& assignment);

/// Finalize cross-field consistency (sweep.base = params) and validate.
void finalize(RunConfig& cfg);

} // namespace odorchain
