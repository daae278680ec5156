#include "bqtsim/attack.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <vector>

#include "bqtsim/errors.hpp"

namespace bqtsim::adversary {

using core::Basis;
using core::StateVector;

namespace {

std::string lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

std::string trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return std::string(s);
}

std::vector<std::string> split(std::string_view s, char sep)
{
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos - start)));
        if (pos == std::string_view::npos) {
            return parts;
        }
        start = pos + 1;
    }
}

double parse_real(const std::string& text)
{
    double value = 0.0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (text.empty() || ec != std::errc{} || ptr != end) {
        throw ValidationError("malformed real number '" + text + "'");
    }
    return value;
}

void require_pair(const StateVector& pair)
{
    if (pair.qubit_count() != 2) {
        throw DimensionError("attack expects a two-qubit pair, got " + std::to_string(pair.qubit_count()) +
                             " qubits");
    }
}

}  // namespace

std::string_view to_string(BasisPolicy policy)
{
    switch (policy) {
    case BasisPolicy::FixedZ: return "z";
    case BasisPolicy::FixedX: return "x";
    case BasisPolicy::Uniform: return "uniform";
    }
    return "?";
}

std::optional<BasisPolicy> parse_basis_policy(std::string_view text)
{
    const std::string t = lower(trim(text));
    if (t == "z") return BasisPolicy::FixedZ;
    if (t == "x") return BasisPolicy::FixedX;
    if (t == "uniform" || t == "random") return BasisPolicy::Uniform;
    return std::nullopt;
}

Basis draw_basis(BasisPolicy policy, RandomSource& rng)
{
    switch (policy) {
    case BasisPolicy::FixedZ: return Basis::Z;
    case BasisPolicy::FixedX: return Basis::X;
    case BasisPolicy::Uniform: return rng.coin() ? Basis::X : Basis::Z;
    }
    return Basis::Z;
}

std::string describe(const AttackModel& attack)
{
    if (std::holds_alternative<NoAttack>(attack)) {
        return "none";
    }
    if (const auto* ir = std::get_if<InterceptResend>(&attack)) {
        return "intercept-resend:" + std::string(to_string(ir->eve_basis));
    }
    const auto& u = std::get<UnitaryAttack>(attack).u;
    if (u.name() != core::GateName::Custom) {
        return "unitary:" + std::string(core::to_string(u.name()));
    }
    std::string out = "unitary:";
    for (std::size_t i = 0; i < 4; ++i) {
        out += (i ? ";" : "") + core::format_amplitude(u.entries()[i]);
    }
    return out;
}

AttackModel parse_attack(std::string_view spec)
{
    const std::string s = trim(spec);
    const std::size_t colon = s.find(':');
    const std::string kind = lower(s.substr(0, colon));
    const std::string arg = colon == std::string::npos ? std::string{} : trim(std::string_view(s).substr(colon + 1));

    if (kind == "none" && colon == std::string::npos) {
        return NoAttack{};
    }
    if (kind == "intercept-resend" || kind == "intercept") {
        const auto policy = parse_basis_policy(arg.empty() ? "uniform" : arg);
        if (!policy) {
            throw ValidationError("intercept-resend policy must be z, x or uniform, got '" + arg + "'");
        }
        return InterceptResend{*policy};
    }
    if (kind == "unitary") {
        const std::string name = lower(arg);
        if (name == "i") return UnitaryAttack{core::SingleQubitGate::identity()};
        if (name == "x") return UnitaryAttack{core::SingleQubitGate::pauli_x()};
        if (name == "z") return UnitaryAttack{core::SingleQubitGate::pauli_z()};
        if (name == "h") return UnitaryAttack{core::SingleQubitGate::hadamard()};
        const auto entries = split(arg, ';');
        if (entries.size() != 4) {
            throw ValidationError("unitary attack needs four complex entries 're,im;re,im;re,im;re,im'");
        }
        std::array<core::Amplitude, 4> m{};
        for (std::size_t i = 0; i < 4; ++i) {
            const auto parts = split(entries[i], ',');
            if (parts.size() != 2) {
                throw ValidationError("complex entry '" + entries[i] + "' must be 're,im'");
            }
            m[i] = core::Amplitude{parse_real(parts[0]), parse_real(parts[1])};
        }
        return UnitaryAttack{core::SingleQubitGate::custom(m)};
    }
    throw ValidationError("unknown attack spec '" + s + "'");
}

StateVector apply_intercept_resend(const StateVector& pair, Basis eve_basis, RandomSource& rng)
{
    require_pair(pair);
    // The collapsed register already holds the eigenstate Eve resends.
    return core::measure_qubit(pair, pair.labels()[1], eve_basis, rng).state;
}

StateVector apply_unitary_attack(const StateVector& pair, const UnitaryMatrix2& u)
{
    require_pair(pair);
    return core::apply_gate(pair, u, pair.labels()[1]);
}

StateVector apply_attack(const StateVector& pair, const AttackModel& attack, RandomSource& eve_rng)
{
    if (std::holds_alternative<NoAttack>(attack)) {
        require_pair(pair);
        return pair;
    }
    if (const auto* ir = std::get_if<InterceptResend>(&attack)) {
        const Basis b = draw_basis(ir->eve_basis, eve_rng);
        return apply_intercept_resend(pair, b, eve_rng);
    }
    return apply_unitary_attack(pair, std::get<UnitaryAttack>(attack).u);
}

double analytic_detection_intercept(Basis eve_basis, Basis check_basis)
{
    return eve_basis == check_basis ? 0.0 : 0.5;
}

double analytic_detection_unitary(const UnitaryMatrix2& u, Basis check_basis)
{
    if (check_basis == Basis::Z) {
        return 0.5 * (std::norm(u.u01()) + std::norm(u.u10()));
    }
    return (std::norm(u.u00() + u.u01() - u.u10() - u.u11()) + std::norm(u.u00() - u.u01() + u.u10() - u.u11())) /
           8.0;
}

double four_term_x_sum(const UnitaryMatrix2& u)
{
    return (std::norm(u.u00() + u.u01() + u.u10() + u.u11()) + std::norm(u.u00() + u.u01() - u.u10() - u.u11()) +
            std::norm(u.u00() - u.u01() + u.u10() - u.u11()) + std::norm(u.u00() - u.u01() - u.u10() + u.u11())) /
           8.0;
}

namespace {

double average_over_checks(BasisPolicy check_policy, auto&& rate_for_basis)
{
    switch (check_policy) {
    case BasisPolicy::FixedZ: return rate_for_basis(Basis::Z);
    case BasisPolicy::FixedX: return rate_for_basis(Basis::X);
    case BasisPolicy::Uniform: return 0.5 * (rate_for_basis(Basis::Z) + rate_for_basis(Basis::X));
    }
    return 0.0;
}

}  // namespace

double analytic_detection(const AttackModel& attack, BasisPolicy check_policy)
{
    if (std::holds_alternative<NoAttack>(attack)) {
        return 0.0;
    }
    if (const auto* ir = std::get_if<InterceptResend>(&attack)) {
        const BasisPolicy eve = ir->eve_basis;
        return average_over_checks(check_policy, [eve](Basis check) {
            return average_over_checks(eve, [check](Basis e) { return analytic_detection_intercept(e, check); });
        });
    }
    const auto& u = std::get<UnitaryAttack>(attack).u;
    return average_over_checks(check_policy, [&u](Basis check) { return analytic_detection_unitary(u, check); });
}

double mismatch_probability(const StateVector& pair, Basis basis)
{
    require_pair(pair);
    const std::array<core::MeasurementStep, 2> plan{core::MeasurementStep{pair.labels()[0], basis},
                                                    core::MeasurementStep{pair.labels()[1], basis}};
    double total = 0.0;
    for (const core::Branch& br : core::enumerate_branches(pair, plan)) {
        if (br.outcomes[0] != br.outcomes[1]) {
            total += br.probability;
        }
    }
    return total;
}

double brute_force_detection(const AttackModel& attack, BasisPolicy check_policy)
{
    const StateVector phi = core::bell_state(core::BellKind::PhiPlus, core::QubitLabel("a"), core::QubitLabel("b"));

    // Distribution over the state Bob receives.
    std::vector<std::pair<double, StateVector>> received;
    if (std::holds_alternative<NoAttack>(attack)) {
        received.emplace_back(1.0, phi);
    } else if (const auto* ir = std::get_if<InterceptResend>(&attack)) {
        std::vector<std::pair<double, Basis>> eve_bases;
        switch (ir->eve_basis) {
        case BasisPolicy::FixedZ: eve_bases = {{1.0, Basis::Z}}; break;
        case BasisPolicy::FixedX: eve_bases = {{1.0, Basis::X}}; break;
        case BasisPolicy::Uniform: eve_bases = {{0.5, Basis::Z}, {0.5, Basis::X}}; break;
        }
        for (const auto& [w, b] : eve_bases) {
            const std::array<core::MeasurementStep, 1> plan{core::MeasurementStep{phi.labels()[1], b}};
            for (const core::Branch& br : core::enumerate_branches(phi, plan)) {
                if (br.state) {
                    received.emplace_back(w * br.probability, *br.state);
                }
            }
        }
    } else {
        received.emplace_back(1.0, apply_unitary_attack(phi, std::get<UnitaryAttack>(attack).u));
    }

    std::vector<std::pair<double, Basis>> checks;
    switch (check_policy) {
    case BasisPolicy::FixedZ: checks = {{1.0, Basis::Z}}; break;
    case BasisPolicy::FixedX: checks = {{1.0, Basis::X}}; break;
    case BasisPolicy::Uniform: checks = {{0.5, Basis::Z}, {0.5, Basis::X}}; break;
    }

    double total = 0.0;
    for (const auto& [w_state, state] : received) {
        for (const auto& [w_check, basis] : checks) {
            total += w_state * w_check * mismatch_probability(state, basis);
        }
    }
    return total;
}

}  // namespace bqtsim::adversary
