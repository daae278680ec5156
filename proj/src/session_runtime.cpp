#include "bqtsim/session_runtime.hpp"

#include <sstream>
#include <utility>

#include "bqtsim/errors.hpp"

namespace bqtsim::runtime {

std::string_view to_string(PartyRole role)
{
    switch (role) {
    case PartyRole::Alice: return "Alice";
    case PartyRole::Bob: return "Bob";
    case PartyRole::Eve: return "Eve";
    }
    return "?";
}

SessionContext::SessionContext(std::uint64_t seed)
    : seed_(seed),
      channel_(seed, static_cast<std::uint64_t>(Stream::Channel)),
      alice_(seed, static_cast<std::uint64_t>(Stream::Alice)),
      bob_(seed, static_cast<std::uint64_t>(Stream::Bob)),
      eve_(seed, static_cast<std::uint64_t>(Stream::Eve))
{
}

std::size_t SessionContext::announce(PartyRole sender, Payload payload)
{
    if (aborted_) {
        throw StateError("session already aborted; no further announcements");
    }
    if (sender == PartyRole::Eve) {
        throw StateError("Eve does not take part in the classical channel");
    }
    const std::size_t seq = log_.size();
    if (std::holds_alternative<Abort>(payload)) {
        aborted_ = true;
    }
    log_.push_back(ClassicalMessage{sender, seq, std::move(payload)});
    return seq;
}

RandomSource& SessionContext::stream(Stream id)
{
    switch (id) {
    case Stream::Channel: return channel_;
    case Stream::Alice: return alice_;
    case Stream::Bob: return bob_;
    case Stream::Eve: return eve_;
    }
    return channel_;
}

SessionContext open_session(std::uint64_t seed)
{
    return SessionContext(seed);
}

SessionContext announce(SessionContext context, ClassicalMessage message)
{
    context.announce(message.sender, std::move(message.payload));
    return context;
}

namespace {

struct PayloadPrinter {
    std::ostream& os;

    void operator()(const CheckPositions& p) const
    {
        os << "check-positions";
        for (std::size_t o : p.ordinals) {
            os << ' ' << o;
        }
    }
    void operator()(const BasisAnnouncement& p) const
    {
        os << "bases ";
        for (core::Basis b : p.bases) {
            os << core::to_string(b);
        }
    }
    void operator()(const OutcomeAnnouncement& p) const
    {
        os << "outcome[" << p.subject << "]";
        for (std::size_t i = 0; i < p.outcomes.size(); ++i) {
            const core::Basis b = i < p.bases.size() ? p.bases[i] : core::Basis::Z;
            os << ' ' << core::to_string(b) << ':' << core::outcome_symbol(b, p.outcomes[i]);
        }
    }
    void operator()(const Abort& p) const { os << "abort: " << p.reason; }
};

}  // namespace

std::string render_message(const ClassicalMessage& message)
{
    std::ostringstream os;
    os << '#' << message.sequence << ' ' << to_string(message.sender) << ' ';
    std::visit(PayloadPrinter{os}, message.payload);
    return os.str();
}

std::string render_transcript(const std::vector<ClassicalMessage>& log)
{
    std::string out;
    for (const ClassicalMessage& m : log) {
        out += render_message(m);
        out += '\n';
    }
    return out;
}

}  // namespace bqtsim::runtime
