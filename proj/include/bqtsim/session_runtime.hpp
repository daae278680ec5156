#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "bqtsim/quantum_core.hpp"
#include "bqtsim/random.hpp"

namespace bqtsim::runtime {

enum class PartyRole { Alice, Bob, Eve };

std::string_view to_string(PartyRole role);

// Stream ids derived from the session seed. Measurement sampling draws from
// the channel stream; each party's own choices draw from its stream.
enum class Stream : std::uint64_t { Channel = 0, Alice = 1, Bob = 2, Eve = 3 };

struct CheckPositions {
    std::vector<std::size_t> ordinals;
};

struct BasisAnnouncement {
    std::vector<core::Basis> bases;
};

struct OutcomeAnnouncement {
    std::string subject;  // e.g. "check" or "round 3"
    std::vector<core::Basis> bases;
    std::vector<int> outcomes;
};

struct Abort {
    std::string reason;
};

using Payload = std::variant<CheckPositions, BasisAnnouncement, OutcomeAnnouncement, Abort>;

struct ClassicalMessage {
    PartyRole sender;
    std::size_t sequence;
    Payload payload;
};

// Append-only, authenticated, lossless classical log shared by Alice and Bob,
// plus the seeded randomness streams of one session. Eve is not a log
// participant; she only transforms qubits in transit.
class SessionContext {
public:
    explicit SessionContext(std::uint64_t seed);

    std::uint64_t seed() const { return seed_; }
    bool aborted() const { return aborted_; }
    const std::vector<ClassicalMessage>& transcript() const { return log_; }

    // Appends with the next sequence number and returns it. An Abort payload
    // marks the session aborted. Throws StateError once aborted.
    std::size_t announce(PartyRole sender, Payload payload);

    RandomSource& stream(Stream id);

private:
    std::uint64_t seed_;
    bool aborted_ = false;
    std::vector<ClassicalMessage> log_;
    RandomSource channel_;
    RandomSource alice_;
    RandomSource bob_;
    RandomSource eve_;
};

SessionContext open_session(std::uint64_t seed);

// Value-style append: returns the context with the message added. The
// message's own sequence field is ignored and reassigned.
SessionContext announce(SessionContext context, ClassicalMessage message);

// One line per message, e.g. "#3 Bob outcome[check] Z:0 X:+".
std::string render_message(const ClassicalMessage& message);
std::string render_transcript(const std::vector<ClassicalMessage>& log);

}  // namespace bqtsim::runtime
