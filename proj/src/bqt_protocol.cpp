#include "bqtsim/bqt_protocol.hpp"

#include "bqtsim/errors.hpp"

namespace bqtsim::teleport {

using core::Basis;
using core::QubitLabel;
using core::StateVector;

std::string_view to_string(PauliCorrection c)
{
    switch (c) {
    case PauliCorrection::I: return "I";
    case PauliCorrection::X: return "X";
    case PauliCorrection::Z: return "Z";
    case PauliCorrection::iY: return "iY";
    }
    return "?";
}

core::SingleQubitGate gate_for(PauliCorrection c)
{
    switch (c) {
    case PauliCorrection::I: return core::SingleQubitGate::identity();
    case PauliCorrection::X: return core::SingleQubitGate::pauli_x();
    case PauliCorrection::Z: return core::SingleQubitGate::pauli_z();
    case PauliCorrection::iY: return core::SingleQubitGate::i_y();
    }
    return core::SingleQubitGate::identity();
}

PauliCorrection correction_for(int z_outcome, int x_outcome, const CorrectionTable& table)
{
    if ((z_outcome != 0 && z_outcome != 1) || (x_outcome != 0 && x_outcome != 1)) {
        throw ValidationError("measurement outcomes must be 0 or 1");
    }
    return table[static_cast<std::size_t>(z_outcome + 2 * x_outcome)];
}

BqtInputs BqtInputs::checked(const core::QubitState& alice, const core::QubitState& bob)
{
    return BqtInputs{core::checked_qubit_state(alice[0], alice[1]), core::checked_qubit_state(bob[0], bob[1])};
}

StateVector build_channel()
{
    return core::tensor(core::bell_state(core::BellKind::PhiPlus, labels::a1, labels::b1),
                        core::bell_state(core::BellKind::PhiPlus, labels::a2, labels::b2));
}

StateVector attach_inputs(const StateVector& channel, const BqtInputs& inputs)
{
    for (const QubitLabel& l : {labels::a1, labels::b1, labels::a2, labels::b2}) {
        (void)channel.index_of(l);
    }
    const BqtInputs in = BqtInputs::checked(inputs.alice_state, inputs.bob_state);
    return core::tensor(core::tensor(channel, core::single_qubit_state(labels::A, in.alice_state)),
                        core::single_qubit_state(labels::B, in.bob_state));
}

StateVector apply_encoding_cnots(const StateVector& state)
{
    return core::apply_cnot(core::apply_cnot(state, labels::A, labels::a1), labels::B, labels::b2);
}

std::array<core::MeasurementStep, 4> measurement_plan()
{
    return {core::MeasurementStep{labels::a1, Basis::Z}, core::MeasurementStep{labels::A, Basis::X},
            core::MeasurementStep{labels::b2, Basis::Z}, core::MeasurementStep{labels::B, Basis::X}};
}

Corrected apply_corrections(const StateVector& measured, const std::array<int, 4>& outcomes,
                            const CorrectionTable& table)
{
    // Alice's announcement (a1, A) drives Bob's fix on b1 and vice versa.
    const PauliCorrection bob = correction_for(outcomes[0], outcomes[1], table);
    const PauliCorrection alice = correction_for(outcomes[2], outcomes[3], table);
    StateVector s = core::apply_gate(measured, gate_for(bob), labels::b1);
    s = core::apply_gate(s, gate_for(alice), labels::a2);
    return Corrected{bob, alice, std::move(s)};
}

MeasuredAndCorrected measure_and_correct(const StateVector& encoded, RandomSource& rng,
                                         const CorrectionTable& table)
{
    const auto plan = measurement_plan();
    StateVector s = encoded;
    std::array<int, 4> outcomes{};
    std::vector<core::MeasurementRecord> records;
    for (std::size_t i = 0; i < plan.size(); ++i) {
        core::Measured m = core::measure_qubit(s, plan[i].qubit, plan[i].basis, rng);
        outcomes[i] = m.record.outcome;
        records.push_back(m.record);
        s = std::move(m.state);
    }
    return MeasuredAndCorrected{{records[0], records[1], records[2], records[3]},
                                apply_corrections(s, outcomes, table)};
}

BqtTranscript run_bqt(const BqtInputs& inputs, RandomSource& rng)
{
    const BqtInputs in = BqtInputs::checked(inputs.alice_state, inputs.bob_state);
    const StateVector encoded = apply_encoding_cnots(attach_inputs(build_channel(), in));
    MeasuredAndCorrected mc = measure_and_correct(encoded, rng);
    const core::QubitState at_bob = core::extract_single_qubit(mc.corrected.state, labels::b1);
    const core::QubitState at_alice = core::extract_single_qubit(mc.corrected.state, labels::a2);
    return BqtTranscript{in,
                         mc.records,
                         mc.corrected.bob_correction,
                         mc.corrected.alice_correction,
                         at_bob,
                         at_alice,
                         core::fidelity_up_to_phase(in.alice_state, at_bob),
                         core::fidelity_up_to_phase(in.bob_state, at_alice)};
}

std::vector<BranchVerification> verify_bqt_exhaustive(const BqtInputs& inputs, const CorrectionTable& table)
{
    const BqtInputs in = BqtInputs::checked(inputs.alice_state, inputs.bob_state);
    const StateVector encoded = apply_encoding_cnots(attach_inputs(build_channel(), in));
    const auto plan = measurement_plan();
    const auto branches = core::enumerate_branches(encoded, plan);

    std::vector<BranchVerification> out;
    out.reserve(branches.size());
    for (const core::Branch& br : branches) {
        const std::array<int, 4> outcomes{br.outcomes[0], br.outcomes[1], br.outcomes[2], br.outcomes[3]};
        BranchVerification v{outcomes, br.probability, PauliCorrection::I, PauliCorrection::I, 0.0, 0.0};
        if (br.state) {
            const Corrected c = apply_corrections(*br.state, outcomes, table);
            v.bob_correction = c.bob_correction;
            v.alice_correction = c.alice_correction;
            v.fidelity_bob =
                core::fidelity_up_to_phase(in.alice_state, core::extract_single_qubit(c.state, labels::b1));
            v.fidelity_alice =
                core::fidelity_up_to_phase(in.bob_state, core::extract_single_qubit(c.state, labels::a2));
        }
        out.push_back(v);
    }
    return out;
}

// ---------- entanglement swapping ----------

namespace {

StateVector swap_input(core::BellKind left, core::BellKind right)
{
    return core::tensor(core::bell_state(left, swap_labels::q1, swap_labels::q2),
                        core::bell_state(right, swap_labels::q3, swap_labels::q4));
}

}  // namespace

SwapExpansion swap_expansion(core::BellKind left, core::BellKind right)
{
    using namespace swap_labels;
    const StateVector psi = swap_input(left, right).reordered({q1, q4, q2, q3});
    SwapExpansion coeffs{};
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            const StateVector basis = core::tensor(core::bell_state(core::kBellKinds[i], q1, q4),
                                                   core::bell_state(core::kBellKinds[j], q2, q3));
            coeffs[i][j] = core::inner_product(basis, psi);
        }
    }
    return coeffs;
}

core::BellKind identify_bell(const StateVector& state, const QubitLabel& first, const QubitLabel& second)
{
    const auto p = core::bell_probabilities(state, first, second);
    for (std::size_t k = 0; k < 4; ++k) {
        if (p[k] > 1.0 - 1e-9) {
            return core::kBellKinds[k];
        }
    }
    throw NotProductError("pair (" + first.name() + "," + second.name() + ") is not in a single Bell state");
}

SwapOutcome demo_entanglement_swap(core::BellKind left, core::BellKind right, RandomSource& rng)
{
    using namespace swap_labels;
    const core::BellMeasured m = core::measure_bell(swap_input(left, right), q1, q4, rng);
    return SwapOutcome{m.kind, m.probability, identify_bell(m.state, q2, q3)};
}

}  // namespace bqtsim::teleport
