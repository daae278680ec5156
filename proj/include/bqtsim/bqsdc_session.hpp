#pragma once

// Bidirectional secure direct communication on top of the teleportation
// machinery: preparation, eavesdropping check, encoding, decoding.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "bqtsim/attack.hpp"
#include "bqtsim/bqt_protocol.hpp"
#include "bqtsim/quantum_core.hpp"
#include "bqtsim/random.hpp"
#include "bqtsim/session_runtime.hpp"

namespace bqtsim::qsdc {

// Alice keeps "a", Bob receives "b".
inline const core::QubitLabel kAliceHalf{"a"};
inline const core::QubitLabel kBobHalf{"b"};

// Fewest checked pairs a session will run with.
inline constexpr std::size_t kMinCheckedPairs = 16;
inline constexpr double kDefaultCheckFraction = 0.5;

using BitString = std::vector<int>;

// "0110" -> {0,1,1,0}. Throws ValidationError on other characters.
BitString parse_bits(std::string_view text);
std::string format_bits(const BitString& bits);
// Bits read as a big-endian number, left-padded to whole nibbles.
std::string bits_to_hex(const BitString& bits);

struct EprPair {
    std::size_t ordinal;
    core::StateVector state;  // over (kAliceHalf, kBobHalf)
    bool consumed = false;
};

struct EprSequence {
    std::vector<EprPair> pairs;

    std::size_t available() const;
};

// `count` PhiPlus pairs. Throws ValidationError for count 0.
EprSequence prepare_sequence(std::size_t count);

struct CheckPlan {
    std::vector<std::size_t> positions;  // ascending ordinals
    std::vector<core::Basis> bases;      // one per position
};

// Picks `count` unconsumed ordinals and a uniform basis for each, from
// Alice's stream.
CheckPlan choose_check_plan(const EprSequence& sequence, std::size_t count, RandomSource& alice_rng);

struct CheckRecord {
    std::size_t ordinal;
    core::Basis basis;
    int alice_outcome;
    int bob_outcome;

    bool mismatch() const { return alice_outcome != bob_outcome; }
};

struct PairOutcomes {
    int alice;
    int bob;
};

// Alice then Bob measure their halves in `basis`.
PairOutcomes measure_check_pair(const core::StateVector& pair, core::Basis basis, RandomSource& rng);

struct CheckRound {
    std::size_t mismatches;
    std::vector<CheckRecord> records;
};

// Measures every planned pair and marks it consumed. Throws ValidationError
// for out-of-range, repeated or already consumed positions.
CheckRound run_check_round(EprSequence& sequence, const CheckPlan& plan, RandomSource& rng);

struct MessageBit {
    int value;
    core::QubitState encoded_state;  // 0 -> |+>, 1 -> |->
};

MessageBit encode_message_qubit(int bit);

struct MessageRound {
    std::array<core::MeasurementRecord, 4> records;  // a1:Z, A:X, b2:Z, B:X
    teleport::PauliCorrection bob_correction;
    teleport::PauliCorrection alice_correction;
    core::MeasurementRecord bob_readout;    // b1 in X
    core::MeasurementRecord alice_readout;  // a2 in X
    int decoded_by_bob;    // Alice's bit as Bob reads it
    int decoded_by_alice;  // Bob's bit as Alice reads it
};

// first_pair plays (a1, b1), second_pair plays (a2, b2). Pairs may have been
// tampered with.
MessageRound run_message_round(int alice_bit, int bob_bit, const core::StateVector& first_pair,
                               const core::StateVector& second_pair, RandomSource& rng);

struct SessionConfig {
    std::size_t pair_count = 64;
    double check_fraction = kDefaultCheckFraction;
    BitString alice_message;
    BitString bob_message;
    adversary::AttackModel attack = adversary::NoAttack{};
    std::uint64_t seed = 0;
};

// max(kMinCheckedPairs, ceil(check_fraction * pair_count)).
std::size_t checked_pair_count(const SessionConfig& config);

// ValidationError for malformed fields, CapacityError when the pairs left
// after checking cannot carry the messages.
void validate(const SessionConfig& config);

struct SessionReport {
    std::uint64_t seed;
    std::size_t pairs_prepared;
    std::size_t checked;
    std::size_t mismatches;
    bool aborted;
    std::vector<CheckRecord> checks;
    std::vector<MessageRound> rounds;
    BitString received_by_bob;    // Alice's message as decoded by Bob
    BitString received_by_alice;  // Bob's message as decoded by Alice
    std::vector<std::size_t> bob_error_positions;
    std::vector<std::size_t> alice_error_positions;
    std::size_t pairs_consumed;
    std::vector<runtime::ClassicalMessage> transcript;
};

SessionReport run_session(const SessionConfig& config);

}  // namespace bqtsim::qsdc
