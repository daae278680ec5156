#pragma once

// Bidirectional teleportation over two shared PhiPlus pairs.
//
// Register layout after attach_inputs: (a1, b1, a2, b2, A, B). Alice holds
// a1, a2 and her payload A; Bob holds b1, b2 and his payload B. Alice's
// state ends up on b1, Bob's on a2.

#include <array>
#include <string_view>
#include <vector>

#include "bqtsim/quantum_core.hpp"
#include "bqtsim/random.hpp"

namespace bqtsim::teleport {

namespace labels {
inline const core::QubitLabel a1{"a1"};
inline const core::QubitLabel b1{"b1"};
inline const core::QubitLabel a2{"a2"};
inline const core::QubitLabel b2{"b2"};
inline const core::QubitLabel A{"A"};
inline const core::QubitLabel B{"B"};
}  // namespace labels

enum class PauliCorrection { I, X, Z, iY };

inline constexpr std::array<PauliCorrection, 4> kPauliCorrections = {
    PauliCorrection::I, PauliCorrection::X, PauliCorrection::Z, PauliCorrection::iY};

std::string_view to_string(PauliCorrection c);
core::SingleQubitGate gate_for(PauliCorrection c);

// Indexed by z_outcome + 2 * x_outcome (x: 0 = '+', 1 = '-').
using CorrectionTable = std::array<PauliCorrection, 4>;

// (0,+) -> I, (1,+) -> X, (0,-) -> Z, (1,-) -> iY
inline constexpr CorrectionTable kCorrectionTable = {
    PauliCorrection::I, PauliCorrection::X, PauliCorrection::Z, PauliCorrection::iY};

// Throws ValidationError if either bit is not 0 or 1.
PauliCorrection correction_for(int z_outcome, int x_outcome, const CorrectionTable& table = kCorrectionTable);

struct BqtInputs {
    core::QubitState alice_state;
    core::QubitState bob_state;

    // Throws ValidationError unless both states are normalized.
    static BqtInputs checked(const core::QubitState& alice, const core::QubitState& bob);
};

// (1/2)(|0000> + |0011> + |1100> + |1111>) over (a1, b1, a2, b2).
core::StateVector build_channel();

// channel (x) |phi>_A (x) |phi>_B
core::StateVector attach_inputs(const core::StateVector& channel, const BqtInputs& inputs);

// CNOT(A -> a1) then CNOT(B -> b2).
core::StateVector apply_encoding_cnots(const core::StateVector& state);

// (a1:Z, A:X, b2:Z, B:X), in measurement order.
std::array<core::MeasurementStep, 4> measurement_plan();

struct Corrected {
    PauliCorrection bob_correction;    // applied to b1, driven by (a1, A)
    PauliCorrection alice_correction;  // applied to a2, driven by (b2, B)
    core::StateVector state;
};

// outcomes in measurement_plan() order.
Corrected apply_corrections(const core::StateVector& measured, const std::array<int, 4>& outcomes,
                            const CorrectionTable& table = kCorrectionTable);

struct MeasuredAndCorrected {
    std::array<core::MeasurementRecord, 4> records;
    Corrected corrected;
};

// Samples the four measurements of measurement_plan() and applies the
// corrections. Works on any (possibly tampered) encoded register.
MeasuredAndCorrected measure_and_correct(const core::StateVector& encoded, RandomSource& rng,
                                         const CorrectionTable& table = kCorrectionTable);

struct BqtTranscript {
    BqtInputs inputs;
    std::array<core::MeasurementRecord, 4> records;
    PauliCorrection bob_correction;
    PauliCorrection alice_correction;
    core::QubitState received_by_bob;    // b1, should equal alice_state
    core::QubitState received_by_alice;  // a2, should equal bob_state
    double fidelity_bob;
    double fidelity_alice;
};

BqtTranscript run_bqt(const BqtInputs& inputs, RandomSource& rng);

struct BranchVerification {
    std::array<int, 4> outcomes;  // measurement_plan() order
    double probability;
    PauliCorrection bob_correction;
    PauliCorrection alice_correction;
    double fidelity_bob;
    double fidelity_alice;
};

// Every one of the 16 outcome branches, corrected with `table`.
std::vector<BranchVerification> verify_bqt_exhaustive(const BqtInputs& inputs,
                                                      const CorrectionTable& table = kCorrectionTable);

// ---------- entanglement swapping ----------

namespace swap_labels {
inline const core::QubitLabel q1{"1"};
inline const core::QubitLabel q2{"2"};
inline const core::QubitLabel q3{"3"};
inline const core::QubitLabel q4{"4"};
}  // namespace swap_labels

// coefficients[i][j] = <B_i(1,4) (x) B_j(2,3) | left(1,2) (x) right(3,4)>,
// indices following core::kBellKinds.
using SwapExpansion = std::array<std::array<core::Amplitude, 4>, 4>;

SwapExpansion swap_expansion(core::BellKind left, core::BellKind right);

// Bell kind of the (first, second) pair, up to global phase. Throws
// NotProductError if the pair is not in a single Bell state.
core::BellKind identify_bell(const core::StateVector& state, const core::QubitLabel& first,
                             const core::QubitLabel& second);

struct SwapOutcome {
    core::BellKind sender_outcome;
    double sender_probability;
    core::BellKind receiver_state;
};

// left on (1,2), right on (3,4); Bell-measures (1,4) and identifies (2,3).
SwapOutcome demo_entanglement_swap(core::BellKind left, core::BellKind right, RandomSource& rng);

}  // namespace bqtsim::teleport
