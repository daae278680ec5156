#pragma once

// Command layer behind the `bqtsim` executable. Each command returns both a
// human-readable and a structured (JSON) rendering; run() picks one.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "bqtsim/attack.hpp"
#include "bqtsim/bqsdc_session.hpp"
#include "bqtsim/quantum_core.hpp"

namespace bqtsim::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitDetected = 3;

// Inputs within this distance of unit norm are rescaled with a warning.
inline constexpr double kAutoNormalizeTolerance = 1e-6;
inline constexpr double kTeleportFidelityTolerance = 1e-9;
inline constexpr double kSweepSigmas = 5.0;
inline constexpr std::size_t kMinSweepTrials = 1000;

struct CommandResult {
    int exit_code = kExitOk;
    std::string text;
    nlohmann::ordered_json structured;
    std::vector<std::string> warnings;
};

// "re0,im0;re1,im1". Throws ValidationError when malformed or further than
// kAutoNormalizeTolerance from unit norm; rescales (and warns) otherwise.
core::QubitState parse_qubit_state(std::string_view text, std::vector<std::string>* warnings = nullptr);

CommandResult cmd_teleport(const core::QubitState& alice, const core::QubitState& bob, std::uint64_t seed);

// Exhaustive branch verification on `inputs` random input pairs plus the
// swapping identity, Bell orthonormality and check-correlation tables.
CommandResult cmd_verify(std::uint64_t seed, std::size_t inputs);

CommandResult cmd_session(const qsdc::SessionConfig& config);

// Default battery when `attacks` is empty: none, intercept-resend (z, x,
// uniform), unitary I, X, Z, H and ten random unitaries drawn from the seed.
// Throws ValidationError when trials < kMinSweepTrials.
CommandResult cmd_attack_sweep(std::vector<adversary::AttackModel> attacks, std::size_t trials,
                               std::uint64_t seed);

std::vector<adversary::AttackModel> default_attack_battery(std::uint64_t seed);

// Full command line, args[0] being the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bqtsim::cli
