#include "bqtsim/bqsdc_session.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "bqtsim/errors.hpp"

namespace bqtsim::qsdc {

using core::Basis;
using core::StateVector;
using runtime::PartyRole;

BitString parse_bits(std::string_view text)
{
    BitString bits;
    bits.reserve(text.size());
    for (char c : text) {
        if (c != '0' && c != '1') {
            throw ValidationError("bit string may only contain '0' and '1', got '" + std::string(text) + "'");
        }
        bits.push_back(c - '0');
    }
    return bits;
}

std::string format_bits(const BitString& bits)
{
    std::string out;
    out.reserve(bits.size());
    for (int b : bits) {
        out.push_back(b ? '1' : '0');
    }
    return out;
}

std::string bits_to_hex(const BitString& bits)
{
    static constexpr char kDigits[] = "0123456789abcdef";
    const std::size_t pad = (4 - bits.size() % 4) % 4;
    std::string out;
    unsigned nibble = 0;
    std::size_t filled = pad;
    for (int b : bits) {
        nibble = (nibble << 1U) | static_cast<unsigned>(b != 0);
        if (++filled == 4) {
            out.push_back(kDigits[nibble]);
            nibble = 0;
            filled = 0;
        }
    }
    return out;
}

std::size_t EprSequence::available() const
{
    return static_cast<std::size_t>(
        std::count_if(pairs.begin(), pairs.end(), [](const EprPair& p) { return !p.consumed; }));
}

EprSequence prepare_sequence(std::size_t count)
{
    if (count == 0) {
        throw ValidationError("EPR sequence needs at least one pair");
    }
    EprSequence seq;
    seq.pairs.reserve(count);
    const StateVector phi = core::bell_state(core::BellKind::PhiPlus, kAliceHalf, kBobHalf);
    for (std::size_t i = 0; i < count; ++i) {
        seq.pairs.push_back(EprPair{i, phi, false});
    }
    return seq;
}

CheckPlan choose_check_plan(const EprSequence& sequence, std::size_t count, RandomSource& alice_rng)
{
    std::vector<std::size_t> pool;
    for (const EprPair& p : sequence.pairs) {
        if (!p.consumed) {
            pool.push_back(p.ordinal);
        }
    }
    if (count > pool.size()) {
        throw CapacityError("cannot check " + std::to_string(count) + " pairs, only " +
                            std::to_string(pool.size()) + " available");
    }
    // Partial Fisher-Yates.
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(alice_rng.below(pool.size() - i));
        std::swap(pool[i], pool[j]);
    }
    CheckPlan plan;
    plan.positions.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(count));
    std::sort(plan.positions.begin(), plan.positions.end());
    plan.bases.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        plan.bases.push_back(alice_rng.coin() ? Basis::X : Basis::Z);
    }
    return plan;
}

PairOutcomes measure_check_pair(const StateVector& pair, Basis basis, RandomSource& rng)
{
    const core::Measured alice = core::measure_qubit(pair, pair.labels()[0], basis, rng);
    const core::Measured bob = core::measure_qubit(alice.state, pair.labels()[1], basis, rng);
    return PairOutcomes{alice.record.outcome, bob.record.outcome};
}

CheckRound run_check_round(EprSequence& sequence, const CheckPlan& plan, RandomSource& rng)
{
    if (plan.positions.size() != plan.bases.size()) {
        throw ValidationError("check plan needs one basis per position");
    }
    std::set<std::size_t> seen;
    for (std::size_t pos : plan.positions) {
        if (pos >= sequence.pairs.size()) {
            throw ValidationError("check position " + std::to_string(pos) + " is out of range");
        }
        if (sequence.pairs[pos].consumed || !seen.insert(pos).second) {
            throw ValidationError("check position " + std::to_string(pos) + " is already used");
        }
    }

    CheckRound round{0, {}};
    round.records.reserve(plan.positions.size());
    for (std::size_t i = 0; i < plan.positions.size(); ++i) {
        EprPair& pair = sequence.pairs[plan.positions[i]];
        const PairOutcomes o = measure_check_pair(pair.state, plan.bases[i], rng);
        pair.consumed = true;
        CheckRecord rec{pair.ordinal, plan.bases[i], o.alice, o.bob};
        round.mismatches += rec.mismatch() ? 1 : 0;
        round.records.push_back(rec);
    }
    return round;
}

MessageBit encode_message_qubit(int bit)
{
    if (bit != 0 && bit != 1) {
        throw ValidationError("message bit must be 0 or 1");
    }
    return MessageBit{bit, bit == 0 ? core::kets::plus() : core::kets::minus()};
}

MessageRound run_message_round(int alice_bit, int bob_bit, const StateVector& first_pair,
                               const StateVector& second_pair, RandomSource& rng)
{
    namespace L = teleport::labels;
    const StateVector channel =
        core::tensor(first_pair.relabeled({L::a1, L::b1}), second_pair.relabeled({L::a2, L::b2}));
    const teleport::BqtInputs inputs{encode_message_qubit(alice_bit).encoded_state,
                                     encode_message_qubit(bob_bit).encoded_state};
    const StateVector encoded = teleport::apply_encoding_cnots(teleport::attach_inputs(channel, inputs));
    const teleport::MeasuredAndCorrected mc = teleport::measure_and_correct(encoded, rng);

    // Decoding: X readout, '+' -> 0 and '-' -> 1.
    const core::Measured at_bob = core::measure_qubit(mc.corrected.state, L::b1, Basis::X, rng);
    const core::Measured at_alice = core::measure_qubit(at_bob.state, L::a2, Basis::X, rng);
    return MessageRound{mc.records,
                        mc.corrected.bob_correction,
                        mc.corrected.alice_correction,
                        at_bob.record,
                        at_alice.record,
                        at_bob.record.outcome,
                        at_alice.record.outcome};
}

std::size_t checked_pair_count(const SessionConfig& config)
{
    const auto by_fraction =
        static_cast<std::size_t>(std::ceil(config.check_fraction * static_cast<double>(config.pair_count)));
    return std::max(kMinCheckedPairs, by_fraction);
}

void validate(const SessionConfig& config)
{
    if (config.pair_count == 0) {
        throw ValidationError("pair count must be positive");
    }
    if (!(config.check_fraction > 0.0 && config.check_fraction < 1.0)) {
        throw ValidationError("check fraction must lie in (0, 1)");
    }
    if (config.alice_message.size() != config.bob_message.size()) {
        throw ValidationError("Alice's and Bob's messages must have equal length");
    }
    for (const BitString* msg : {&config.alice_message, &config.bob_message}) {
        for (int b : *msg) {
            if (b != 0 && b != 1) {
                throw ValidationError("message bits must be 0 or 1");
            }
        }
    }
    const std::size_t checked = checked_pair_count(config);
    const std::size_t needed = checked + 2 * config.alice_message.size();
    if (needed > config.pair_count) {
        throw CapacityError("need " + std::to_string(needed) + " pairs (" + std::to_string(checked) +
                            " checked + 2 x " + std::to_string(config.alice_message.size()) +
                            " message bits), only " + std::to_string(config.pair_count) + " prepared");
    }
}

SessionReport run_session(const SessionConfig& config)
{
    validate(config);
    runtime::SessionContext ctx = runtime::open_session(config.seed);

    SessionReport report{};
    report.seed = config.seed;
    report.pairs_prepared = config.pair_count;

    // Preparation: Alice keeps "a" and sends "b"; Eve acts only in transit.
    EprSequence sequence = prepare_sequence(config.pair_count);
    RandomSource& eve = ctx.stream(runtime::Stream::Eve);
    for (EprPair& pair : sequence.pairs) {
        pair.state = adversary::apply_attack(pair.state, config.attack, eve);
    }

    // Eavesdropping check.
    const CheckPlan plan = choose_check_plan(sequence, checked_pair_count(config), ctx.stream(runtime::Stream::Alice));
    ctx.announce(PartyRole::Alice, runtime::CheckPositions{plan.positions});
    ctx.announce(PartyRole::Alice, runtime::BasisAnnouncement{plan.bases});
    CheckRound check = run_check_round(sequence, plan, ctx.stream(runtime::Stream::Channel));
    runtime::OutcomeAnnouncement bob_results{"check", plan.bases, {}};
    for (const CheckRecord& r : check.records) {
        bob_results.outcomes.push_back(r.bob_outcome);
    }
    ctx.announce(PartyRole::Bob, std::move(bob_results));

    report.checked = check.records.size();
    report.mismatches = check.mismatches;
    report.checks = std::move(check.records);
    report.pairs_consumed = report.checked;

    if (report.mismatches > 0) {
        ctx.announce(PartyRole::Alice, runtime::Abort{std::to_string(report.mismatches) + " of " +
                                                      std::to_string(report.checked) +
                                                      " checked pairs not correlated"});
        report.aborted = true;
        report.transcript = ctx.transcript();
        return report;
    }

    // Surviving pairs in ordinal order, grouped in twos.
    std::vector<const EprPair*> survivors;
    for (const EprPair& p : sequence.pairs) {
        if (!p.consumed) {
            survivors.push_back(&p);
        }
    }

    RandomSource& channel = ctx.stream(runtime::Stream::Channel);
    const std::size_t rounds = config.alice_message.size();
    for (std::size_t i = 0; i < rounds; ++i) {
        const EprPair& first = *survivors[2 * i];
        const EprPair& second = *survivors[2 * i + 1];
        MessageRound round =
            run_message_round(config.alice_message[i], config.bob_message[i], first.state, second.state, channel);

        const std::string subject = "round " + std::to_string(i);
        ctx.announce(PartyRole::Alice,
                     runtime::OutcomeAnnouncement{subject,
                                                  {round.records[0].basis, round.records[1].basis},
                                                  {round.records[0].outcome, round.records[1].outcome}});
        ctx.announce(PartyRole::Bob,
                     runtime::OutcomeAnnouncement{subject,
                                                  {round.records[2].basis, round.records[3].basis},
                                                  {round.records[2].outcome, round.records[3].outcome}});

        report.received_by_bob.push_back(round.decoded_by_bob);
        report.received_by_alice.push_back(round.decoded_by_alice);
        if (round.decoded_by_bob != config.alice_message[i]) {
            report.bob_error_positions.push_back(i);
        }
        if (round.decoded_by_alice != config.bob_message[i]) {
            report.alice_error_positions.push_back(i);
        }
        report.rounds.push_back(std::move(round));
        report.pairs_consumed += 2;
    }

    report.transcript = ctx.transcript();
    return report;
}

}  // namespace bqtsim::qsdc
