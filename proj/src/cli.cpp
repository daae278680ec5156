#include "bqtsim/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "bqtsim/bqt_protocol.hpp"
#include "bqtsim/detection.hpp"
#include "bqtsim/errors.hpp"

namespace bqtsim::cli {

using json = nlohmann::ordered_json;
using core::Amplitude;
using core::Basis;
using core::BellKind;
using core::QubitState;

namespace {

// ---------- formatting helpers ----------

double round12(double x)
{
    if (std::abs(x) < 5e-13) {
        return 0.0;
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

json amplitude_json(Amplitude a)
{
    return json::array({round12(a.real()), round12(a.imag())});
}

json qubit_json(const QubitState& q)
{
    return json::array({amplitude_json(q[0]), amplitude_json(q[1])});
}

std::string qubit_text(const QubitState& q)
{
    return "(" + core::format_amplitude(q[0]) + ")|0⟩ + (" + core::format_amplitude(q[1]) + ")|1⟩";
}

json record_json(const core::MeasurementRecord& r)
{
    return json{{"qubit", r.qubit.name()},
                {"basis", std::string(core::to_string(r.basis))},
                {"outcome", std::string(core::outcome_symbol(r.basis, r.outcome))},
                {"bit", r.outcome},
                {"probability", round12(r.probability)}};
}

std::string record_text(const core::MeasurementRecord& r)
{
    std::ostringstream os;
    os << std::left << std::setw(3) << r.qubit.name() << core::to_string(r.basis) << " -> "
       << core::outcome_symbol(r.basis, r.outcome) << "   p=" << round12(r.probability);
    return os.str();
}

std::string fixed(double x, int digits = 6)
{
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << x;
    return os.str();
}

std::vector<std::string> split(std::string_view s, char sep)
{
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const std::size_t pos = s.find(sep, start);
        std::string_view piece = s.substr(start, pos == std::string_view::npos ? pos : pos - start);
        while (!piece.empty() && piece.front() == ' ') piece.remove_prefix(1);
        while (!piece.empty() && piece.back() == ' ') piece.remove_suffix(1);
        parts.emplace_back(piece);
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
    if (text.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value)) {
        throw ValidationError("malformed real number '" + text + "'");
    }
    return value;
}

}  // namespace

QubitState parse_qubit_state(std::string_view text, std::vector<std::string>* warnings)
{
    const auto entries = split(text, ';');
    if (entries.size() != 2) {
        throw ValidationError("qubit state must look like 're0,im0;re1,im1', got '" + std::string(text) + "'");
    }
    std::array<Amplitude, 2> c{};
    for (std::size_t i = 0; i < 2; ++i) {
        const auto parts = split(entries[i], ',');
        if (parts.size() != 2) {
            throw ValidationError("complex entry '" + entries[i] + "' must be 're,im'");
        }
        c[i] = Amplitude{parse_real(parts[0]), parse_real(parts[1])};
    }
    const double n = std::norm(c[0]) + std::norm(c[1]);
    if (std::abs(n - 1.0) > kAutoNormalizeTolerance) {
        throw ValidationError("qubit state '" + std::string(text) + "' has norm^2 " + std::to_string(n) +
                              ", too far from 1 to normalize");
    }
    if (std::abs(n - 1.0) > core::kNormTolerance) {
        const double s = 1.0 / std::sqrt(n);
        c[0] *= s;
        c[1] *= s;
        if (warnings) {
            warnings->push_back("renormalized input '" + std::string(text) + "' (norm^2 was " +
                                std::to_string(n) + ")");
        }
    }
    return core::checked_qubit_state(c[0], c[1]);
}

// ---------- teleport ----------

CommandResult cmd_teleport(const QubitState& alice, const QubitState& bob, std::uint64_t seed)
{
    RandomSource rng(seed, 0);
    const teleport::BqtTranscript t = teleport::run_bqt(teleport::BqtInputs::checked(alice, bob), rng);
    const bool ok = t.fidelity_bob >= 1.0 - kTeleportFidelityTolerance &&
                    t.fidelity_alice >= 1.0 - kTeleportFidelityTolerance;

    CommandResult res;
    res.exit_code = ok ? kExitOk : kExitFailure;

    json records = json::array();
    for (const auto& r : t.records) {
        records.push_back(record_json(r));
    }
    res.structured = json{
        {"command", "teleport"},
        {"seed", seed},
        {"config", {{"alice_state", qubit_json(t.inputs.alice_state)}, {"bob_state", qubit_json(t.inputs.bob_state)}}},
        {"measurements", records},
        {"corrections",
         {{"b1", std::string(teleport::to_string(t.bob_correction))},
          {"a2", std::string(teleport::to_string(t.alice_correction))}}},
        {"recovered",
         {{"b1", qubit_json(core::canonical_phase(t.received_by_bob))},
          {"a2", qubit_json(core::canonical_phase(t.received_by_alice))}}},
        {"fidelity", {{"b1", round12(t.fidelity_bob)}, {"a2", round12(t.fidelity_alice)}}},
        {"status", ok ? "ok" : "failed"}};

    std::ostringstream os;
    os << "bidirectional teleportation (seed " << seed << ")\n";
    os << "  Alice sends  A = " << qubit_text(core::canonical_phase(t.inputs.alice_state)) << '\n';
    os << "  Bob sends    B = " << qubit_text(core::canonical_phase(t.inputs.bob_state)) << '\n';
    os << "  measurements:\n";
    for (const auto& r : t.records) {
        os << "    " << record_text(r) << '\n';
    }
    os << "  Bob applies " << teleport::to_string(t.bob_correction) << " to b1, Alice applies "
       << teleport::to_string(t.alice_correction) << " to a2\n";
    os << "  b1 = " << qubit_text(core::canonical_phase(t.received_by_bob))
       << "   fidelity " << fixed(t.fidelity_bob, 12) << '\n';
    os << "  a2 = " << qubit_text(core::canonical_phase(t.received_by_alice))
       << "   fidelity " << fixed(t.fidelity_alice, 12) << '\n';
    os << "  result: " << (ok ? "OK" : "FAILED") << '\n';
    res.text = os.str();
    return res;
}

// ---------- verify ----------

CommandResult cmd_verify(std::uint64_t seed, std::size_t inputs)
{
    if (inputs == 0) {
        throw ValidationError("verify needs at least one random input pair");
    }
    constexpr double kTol = 1e-12;
    RandomSource rng(seed, 0);

    // Exhaustive branch check on random inputs.
    std::size_t branches_ok = 0;
    std::size_t branches_total = 0;
    std::size_t inputs_ok = 0;
    double worst_fidelity = 0.0;
    double worst_probability = 0.0;
    json first_table = json::array();
    for (std::size_t i = 0; i < inputs; ++i) {
        const auto in = teleport::BqtInputs::checked(core::random_qubit_state(rng), core::random_qubit_state(rng));
        const auto rows = teleport::verify_bqt_exhaustive(in);
        std::size_t ok_here = 0;
        for (const auto& row : rows) {
            const double fdef = std::max(1.0 - row.fidelity_bob, 1.0 - row.fidelity_alice);
            const double pdef = std::abs(row.probability - 1.0 / 16.0);
            worst_fidelity = std::max(worst_fidelity, fdef);
            worst_probability = std::max(worst_probability, pdef);
            ok_here += (fdef <= kTol && pdef <= kTol) ? 1 : 0;
            if (i == 0) {
                first_table.push_back(json{
                    {"a1", std::string(core::outcome_symbol(Basis::Z, row.outcomes[0]))},
                    {"A", std::string(core::outcome_symbol(Basis::X, row.outcomes[1]))},
                    {"b2", std::string(core::outcome_symbol(Basis::Z, row.outcomes[2]))},
                    {"B", std::string(core::outcome_symbol(Basis::X, row.outcomes[3]))},
                    {"probability", round12(row.probability)},
                    {"b1_correction", std::string(teleport::to_string(row.bob_correction))},
                    {"a2_correction", std::string(teleport::to_string(row.alice_correction))},
                    {"b1_fidelity", round12(row.fidelity_bob)},
                    {"a2_fidelity", round12(row.fidelity_alice)}});
            }
        }
        branches_ok += ok_here;
        branches_total += rows.size();
        inputs_ok += (ok_here == rows.size() && rows.size() == 16) ? 1 : 0;
    }
    const bool bqt_ok = inputs_ok == inputs;

    // Swapping identity for PsiPlus (x) PsiPlus.
    const auto coeffs = teleport::swap_expansion(BellKind::PsiPlus, BellKind::PsiPlus);
    const std::array<double, 4> expected_diag{0.5, -0.5, 0.5, -0.5};
    double swap_defect = 0.0;
    json diag = json::array();
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            const Amplitude want = i == j ? Amplitude{expected_diag[i], 0.0} : Amplitude{};
            swap_defect = std::max(swap_defect, std::abs(coeffs[i][j] - want));
        }
        diag.push_back(round12(coeffs[i][i].real()));
    }
    const bool swap_ok = swap_defect <= kTol;

    // Sender outcome -> receiver kind for every pair of shared Bell states.
    json correspondence = json::array();
    for (BellKind left : core::kBellKinds) {
        for (BellKind right : core::kBellKinds) {
            const auto c = teleport::swap_expansion(left, right);
            json map = json::object();
            for (std::size_t i = 0; i < 4; ++i) {
                for (std::size_t j = 0; j < 4; ++j) {
                    if (std::abs(c[i][j]) > 1e-9) {
                        map[std::string(core::to_string(core::kBellKinds[i]))] =
                            std::string(core::to_string(core::kBellKinds[j]));
                    }
                }
            }
            correspondence.push_back(json{{"left", std::string(core::to_string(left))},
                                          {"right", std::string(core::to_string(right))},
                                          {"sender_to_receiver", map}});
        }
    }

    // Bell orthonormality.
    double bell_defect = 0.0;
    const core::QubitLabel p{"p"}, q{"q"};
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            const Amplitude ip = core::inner_product(core::bell_state(core::kBellKinds[i], p, q),
                                                     core::bell_state(core::kBellKinds[j], p, q));
            bell_defect = std::max(bell_defect, std::abs(ip - (i == j ? 1.0 : 0.0)));
        }
    }
    const bool bell_ok = bell_defect <= kTol;

    // Check-round correlations of an untouched PhiPlus pair.
    const core::StateVector phi = core::bell_state(BellKind::PhiPlus, qsdc::kAliceHalf, qsdc::kBobHalf);
    json correlations = json::object();
    bool corr_ok = true;
    for (Basis b : {Basis::Z, Basis::X}) {
        const std::array<core::MeasurementStep, 2> plan{core::MeasurementStep{qsdc::kAliceHalf, b},
                                                        core::MeasurementStep{qsdc::kBobHalf, b}};
        json table = json::array();
        for (const auto& br : core::enumerate_branches(phi, plan)) {
            table.push_back(json{{"alice", std::string(core::outcome_symbol(b, br.outcomes[0]))},
                                 {"bob", std::string(core::outcome_symbol(b, br.outcomes[1]))},
                                 {"probability", round12(br.probability)}});
        }
        const double mismatch = adversary::mismatch_probability(phi, b);
        corr_ok = corr_ok && mismatch <= kTol;
        correlations[std::string(core::to_string(b))] =
            json{{"outcomes", table}, {"mismatch_probability", round12(mismatch)}};
    }

    const bool all_ok = bqt_ok && swap_ok && bell_ok && corr_ok;
    CommandResult res;
    res.exit_code = all_ok ? kExitOk : kExitFailure;
    res.structured = json{
        {"command", "verify"},
        {"seed", seed},
        {"config", {{"inputs", inputs}, {"tolerance", kTol}}},
        {"teleportation",
         {{"inputs_ok", inputs_ok},
          {"branches_ok", branches_ok},
          {"branches_total", branches_total},
          {"max_fidelity_defect", worst_fidelity},
          {"max_probability_defect", worst_probability},
          {"first_input_branches", first_table},
          {"ok", bqt_ok}}},
        {"swapping_identity",
         {{"pair_states", "PsiPlus(1,2) PsiPlus(3,4)"},
          {"basis", "Bell(1,4) Bell(2,3)"},
          {"diagonal", diag},
          {"expected", json::array({0.5, -0.5, 0.5, -0.5})},
          {"max_defect", swap_defect},
          {"ok", swap_ok}}},
        {"swap_correspondence", correspondence},
        {"bell_orthonormality", {{"max_defect", bell_defect}, {"ok", bell_ok}}},
        {"check_correlations", {{"bases", correlations}, {"ok", corr_ok}}},
        {"status", all_ok ? "ok" : "failed"}};

    std::ostringstream os;
    os << "verification (seed " << seed << ")\n";
    os << "  teleportation: " << (bqt_ok ? "16/16 branches OK" : "branch failures") << " on " << inputs_ok << '/'
       << inputs << " random input pairs (" << branches_ok << '/' << branches_total << " branches)\n";
    os << "    max fidelity defect " << worst_fidelity << ", max |p - 1/16| " << worst_probability << '\n';
    os << "  swapping identity PsiPlus(x)PsiPlus in Bell(1,4)Bell(2,3): coefficients ("
       << (coeffs[0][0].real() >= 0 ? "+" : "-") << ',' << (coeffs[1][1].real() >= 0 ? "+" : "-") << ','
       << (coeffs[2][2].real() >= 0 ? "+" : "-") << ',' << (coeffs[3][3].real() >= 0 ? "+" : "-")
       << ")·1/2 on (PhiPlus,PhiMinus,PsiPlus,PsiMinus), max defect " << swap_defect << " "
       << (swap_ok ? "OK" : "FAILED") << '\n';
    os << "  Bell orthonormality: max defect " << bell_defect << ' ' << (bell_ok ? "OK" : "FAILED") << '\n';
    os << "  check correlations (PhiPlus): Z mismatch " << correlations["Z"]["mismatch_probability"].get<double>()
       << ", X mismatch " << correlations["X"]["mismatch_probability"].get<double>() << ' '
       << (corr_ok ? "OK" : "FAILED") << '\n';
    os << "  result: " << (all_ok ? "OK" : "FAILED") << '\n';
    res.text = os.str();
    return res;
}

// ---------- session ----------

CommandResult cmd_session(const qsdc::SessionConfig& config)
{
    const qsdc::SessionReport r = qsdc::run_session(config);
    const bool delivered =
        !r.aborted && r.bob_error_positions.empty() && r.alice_error_positions.empty();
    const std::string status = r.aborted ? "aborted" : (delivered ? "delivered" : "corrupted");

    CommandResult res;
    res.exit_code = r.aborted ? kExitDetected : (delivered ? kExitOk : kExitFailure);

    json cfg{{"pairs", config.pair_count},
             {"check_fraction", config.check_fraction},
             {"checked_pairs", qsdc::checked_pair_count(config)},
             {"message_length", config.alice_message.size()},
             {"attack", adversary::describe(config.attack)}};
    if (!r.aborted) {
        cfg["alice_message"] = qsdc::format_bits(config.alice_message);
        cfg["bob_message"] = qsdc::format_bits(config.bob_message);
    }

    json checks = json::array();
    for (const auto& c : r.checks) {
        checks.push_back(json{{"ordinal", c.ordinal},
                              {"basis", std::string(core::to_string(c.basis))},
                              {"alice", std::string(core::outcome_symbol(c.basis, c.alice_outcome))},
                              {"bob", std::string(core::outcome_symbol(c.basis, c.bob_outcome))}});
    }
    json rounds = json::array();
    for (std::size_t i = 0; i < r.rounds.size(); ++i) {
        const auto& m = r.rounds[i];
        json recs = json::array();
        for (const auto& rec : m.records) {
            recs.push_back(record_json(rec));
        }
        rounds.push_back(json{{"index", i},
                              {"measurements", recs},
                              {"corrections",
                               {{"b1", std::string(teleport::to_string(m.bob_correction))},
                                {"a2", std::string(teleport::to_string(m.alice_correction))}}},
                              {"readouts", {{"b1", record_json(m.bob_readout)}, {"a2", record_json(m.alice_readout)}}}});
    }
    json transcript = json::array();
    for (const auto& msg : r.transcript) {
        transcript.push_back(runtime::render_message(msg));
    }

    res.structured = json{
        {"command", "session"},
        {"seed", r.seed},
        {"config", cfg},
        {"check", {{"checked", r.checked}, {"mismatches", r.mismatches}, {"aborted", r.aborted}, {"records", checks}}},
        {"rounds", rounds},
        {"messages",
         {{"bob_received", {{"binary", qsdc::format_bits(r.received_by_bob)}, {"hex", qsdc::bits_to_hex(r.received_by_bob)}}},
          {"alice_received",
           {{"binary", qsdc::format_bits(r.received_by_alice)}, {"hex", qsdc::bits_to_hex(r.received_by_alice)}}},
          {"bob_error_positions", r.bob_error_positions},
          {"alice_error_positions", r.alice_error_positions}}},
        {"pairs", {{"prepared", r.pairs_prepared}, {"consumed", r.pairs_consumed}, {"unused", r.pairs_prepared - r.pairs_consumed}}},
        {"transcript", transcript},
        {"status", status}};

    std::ostringstream os;
    os << "secure direct communication session (seed " << r.seed << ")\n";
    os << "  pairs " << config.pair_count << ", checked " << r.checked << ", attack "
       << adversary::describe(config.attack) << '\n';
    os << "  check: " << r.mismatches << " mismatches in " << r.checked << " pairs\n";
    if (r.aborted) {
        os << "  eavesdropping detected, session aborted before any message round\n";
    } else {
        os << "  rounds: " << r.rounds.size() << ", pairs consumed " << r.pairs_consumed << " of "
           << r.pairs_prepared << '\n';
        os << "  Alice sent      " << qsdc::format_bits(config.alice_message) << "  (0x"
           << qsdc::bits_to_hex(config.alice_message) << ")\n";
        os << "  Bob received    " << qsdc::format_bits(r.received_by_bob) << "  (0x"
           << qsdc::bits_to_hex(r.received_by_bob) << ")\n";
        os << "  Bob sent        " << qsdc::format_bits(config.bob_message) << "  (0x"
           << qsdc::bits_to_hex(config.bob_message) << ")\n";
        os << "  Alice received  " << qsdc::format_bits(r.received_by_alice) << "  (0x"
           << qsdc::bits_to_hex(r.received_by_alice) << ")\n";
    }
    os << "  classical channel:\n";
    for (const auto& msg : r.transcript) {
        os << "    " << runtime::render_message(msg) << '\n';
    }
    os << "  result: " << status << '\n';
    res.text = os.str();
    return res;
}

// ---------- attack sweep ----------

std::vector<adversary::AttackModel> default_attack_battery(std::uint64_t seed)
{
    using namespace adversary;
    std::vector<AttackModel> battery{NoAttack{},
                                     InterceptResend{BasisPolicy::FixedZ},
                                     InterceptResend{BasisPolicy::FixedX},
                                     InterceptResend{BasisPolicy::Uniform},
                                     UnitaryAttack{core::SingleQubitGate::identity()},
                                     UnitaryAttack{core::SingleQubitGate::pauli_x()},
                                     UnitaryAttack{core::SingleQubitGate::pauli_z()},
                                     UnitaryAttack{core::SingleQubitGate::hadamard()}};
    RandomSource rng(seed, 1000);
    for (int i = 0; i < 10; ++i) {
        battery.push_back(UnitaryAttack{core::random_unitary(rng)});
    }
    return battery;
}

CommandResult cmd_attack_sweep(std::vector<adversary::AttackModel> attacks, std::size_t trials, std::uint64_t seed)
{
    using namespace adversary;
    if (trials < kMinSweepTrials) {
        throw ValidationError("attack sweep needs at least " + std::to_string(kMinSweepTrials) + " trials");
    }
    if (attacks.empty()) {
        attacks = default_attack_battery(seed);
    }
    constexpr double kOracleTol = 1e-12;

    json rows = json::array();
    json unitaries = json::array();
    bool all_ok = true;
    std::ostringstream table;
    table << std::left << std::setw(28) << "attack" << std::setw(9) << "checks" << std::setw(11) << "analytic"
          << std::setw(11) << "oracle" << std::setw(11) << "empirical" << std::setw(11) << "std.err"
          << "5σ\n";

    std::uint64_t row_index = 0;
    std::size_t custom_index = 0;
    for (const AttackModel& attack : attacks) {
        const auto* ua = std::get_if<UnitaryAttack>(&attack);
        const bool custom = ua && ua->u.name() == core::GateName::Custom;
        const std::string label = custom ? "unitary:U" + std::to_string(custom_index++) : describe(attack);
        for (BasisPolicy policy : {BasisPolicy::FixedZ, BasisPolicy::FixedX, BasisPolicy::Uniform}) {
            RandomSource rng(seed, 100 + row_index++);
            const DetectionReport d = estimate_detection_monte_carlo(attack, policy, trials, rng);
            const double oracle = brute_force_detection(attack, policy);
            const bool mc_ok = d.agrees(kSweepSigmas);
            const bool oracle_ok = std::abs(oracle - d.analytic_rate) <= kOracleTol;
            all_ok = all_ok && mc_ok && oracle_ok;
            rows.push_back(json{{"attack", d.attack},
                                {"label", label},
                                {"check_basis", std::string(to_string(policy))},
                                {"analytic", round12(d.analytic_rate)},
                                {"oracle", round12(oracle)},
                                {"empirical", d.empirical_rate},
                                {"mismatches", d.mismatches},
                                {"trials", d.checked},
                                {"standard_error", round12(d.standard_error)},
                                {"within_5_sigma", mc_ok},
                                {"oracle_agrees", oracle_ok}});
            table << std::left << std::setw(28) << label << std::setw(9) << to_string(policy) << std::setw(11)
                  << fixed(d.analytic_rate) << std::setw(11) << fixed(oracle) << std::setw(11)
                  << fixed(d.empirical_rate) << std::setw(11) << fixed(d.standard_error)
                  << (mc_ok && oracle_ok ? "ok" : "FAIL") << '\n';
        }
        if (ua) {
            json entries = json::array();
            for (const Amplitude& a : ua->u.entries()) {
                entries.push_back(amplitude_json(a));
            }
            unitaries.push_back(json{{"attack", describe(attack)},
                                     {"label", label},
                                     {"u", entries},
                                     {"z_detection", round12(analytic_detection_unitary(ua->u, Basis::Z))},
                                     {"x_detection", round12(analytic_detection_unitary(ua->u, Basis::X))},
                                     {"four_term_x_sum", round12(four_term_x_sum(ua->u))}});
        }
    }

    const std::string note =
        "X-basis detection is the weight of the anti-correlated |+-> and |-+> terms of (I(x)U)PhiPlus. "
        "The sum over all four X-basis terms (four_term_x_sum) equals 1 for every unitary and is not a "
        "detection probability.";

    CommandResult res;
    res.exit_code = all_ok ? kExitOk : kExitFailure;
    json attack_names = json::array();
    for (const auto& a : attacks) {
        attack_names.push_back(describe(a));
    }
    res.structured = json{{"command", "attack-sweep"},
                          {"seed", seed},
                          {"config", {{"trials", trials}, {"sigmas", kSweepSigmas}, {"attacks", attack_names}}},
                          {"rows", rows},
                          {"unitaries", unitaries},
                          {"note", note},
                          {"status", all_ok ? "ok" : "failed"}};

    std::ostringstream os;
    os << "attack sweep (seed " << seed << ", " << trials << " trials per row)\n" << table.str();
    if (!unitaries.empty()) {
        os << "unitaries (Z rate, X rate, four-term X sum):\n";
        for (const auto& u : unitaries) {
            os << "  " << std::left << std::setw(12) << u["label"].get<std::string>().substr(8)
               << fixed(u["z_detection"].get<double>()) << "  " << fixed(u["x_detection"].get<double>()) << "  "
               << fixed(u["four_term_x_sum"].get<double>());
            if (u["label"] != u["attack"]) {
                os << "  " << u["attack"].get<std::string>().substr(8);
            }
            os << '\n';
        }
    }
    os << "note: " << note << '\n';
    os << "result: " << (all_ok ? "OK" : "FAILED") << '\n';
    res.text = os.str();
    return res;
}

// ---------- command line ----------

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Bidirectional teleportation and secure direct communication simulator", "bqtsim"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    std::string format = "text";
    std::string out_path;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", seed, "64-bit seed")->capture_default_str();
        sub->add_option("--format", format, "text | structured")
            ->check(CLI::IsMember({"text", "structured", "json"}))
            ->capture_default_str();
        sub->add_option("--out", out_path, "write the report to this file instead of stdout");
    };

    std::string alpha = "1,0;0,0";
    std::string beta = "1,0;0,0";
    auto* teleport_cmd = app.add_subcommand("teleport", "teleport one qubit each way and check fidelities");
    teleport_cmd->add_option("--alpha", alpha, "Alice's state 're0,im0;re1,im1'")->capture_default_str();
    teleport_cmd->add_option("--beta", beta, "Bob's state 're0,im0;re1,im1'")->capture_default_str();
    add_common(teleport_cmd);

    std::size_t verify_inputs = 100;
    auto* verify_cmd = app.add_subcommand("verify", "exhaustive branch and identity checks");
    verify_cmd->add_option("--trials", verify_inputs, "random input pairs to verify")->capture_default_str();
    add_common(verify_cmd);

    std::size_t pairs = 64;
    double check_fraction = qsdc::kDefaultCheckFraction;
    std::string alice_msg;
    std::string bob_msg;
    std::string attack_spec = "none";
    auto* session_cmd = app.add_subcommand("session", "run a full secure direct communication session");
    session_cmd->add_option("--pairs", pairs, "EPR pairs Alice prepares")->capture_default_str();
    session_cmd->add_option("--check-fraction", check_fraction, "fraction of pairs sacrificed for checking")
        ->capture_default_str();
    session_cmd->add_option("--alice-msg", alice_msg, "Alice's message bits, e.g. 1011");
    session_cmd->add_option("--bob-msg", bob_msg, "Bob's message bits, same length");
    session_cmd->add_option("--attack", attack_spec, "none | intercept-resend:{z,x,uniform} | unitary:...")
        ->capture_default_str();
    add_common(session_cmd);

    std::vector<std::string> sweep_attacks;
    std::size_t sweep_trials = 100000;
    auto* sweep_cmd = app.add_subcommand("attack-sweep", "compare analytic and Monte Carlo detection rates");
    sweep_cmd->add_option("--attack", sweep_attacks, "attack spec (repeatable); default battery if omitted");
    sweep_cmd->add_option("--trials", sweep_trials, "checked pairs per row (>= 1000)")->capture_default_str();
    add_common(sweep_cmd);

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const std::string& a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    CommandResult result;
    try {
        if (*teleport_cmd) {
            std::vector<std::string> warnings;
            const QubitState a = parse_qubit_state(alpha, &warnings);
            const QubitState b = parse_qubit_state(beta, &warnings);
            result = cmd_teleport(a, b, seed);
            result.warnings.insert(result.warnings.begin(), warnings.begin(), warnings.end());
        } else if (*verify_cmd) {
            result = cmd_verify(seed, verify_inputs);
        } else if (*session_cmd) {
            qsdc::SessionConfig config;
            config.pair_count = pairs;
            config.check_fraction = check_fraction;
            config.alice_message = qsdc::parse_bits(alice_msg);
            config.bob_message = qsdc::parse_bits(bob_msg);
            config.attack = adversary::parse_attack(attack_spec);
            config.seed = seed;
            result = cmd_session(config);
        } else if (*sweep_cmd) {
            std::vector<adversary::AttackModel> attacks;
            for (const std::string& spec : sweep_attacks) {
                attacks.push_back(adversary::parse_attack(spec));
            }
            result = cmd_attack_sweep(std::move(attacks), sweep_trials, seed);
        }
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const CapacityError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }

    for (const std::string& w : result.warnings) {
        err << "warning: " << w << '\n';
    }
    const std::string body = format == "text" ? result.text : result.structured.dump(2) + "\n";
    if (out_path.empty()) {
        out << body;
    } else {
        std::ofstream file(out_path, std::ios::binary);
        if (!file) {
            err << "error: cannot open '" << out_path << "' for writing\n";
            return kExitUsage;
        }
        file << body;
    }
    return result.exit_code;
}

}  // namespace bqtsim::cli
