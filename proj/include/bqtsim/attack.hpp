#pragma once

// Eavesdropper models acting on the preparation phase, where Alice sends the
// second half of each PhiPlus pair to Bob. A "pair" here is always a
// two-qubit register whose first label is Alice's half and whose second
// label is the half in transit to Bob.

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "bqtsim/quantum_core.hpp"
#include "bqtsim/random.hpp"

namespace bqtsim::adversary {

enum class BasisPolicy { FixedZ, FixedX, Uniform };

std::string_view to_string(BasisPolicy policy);
// "z", "x", "uniform" (case-insensitive).
std::optional<BasisPolicy> parse_basis_policy(std::string_view text);

// Uniform draws one coin from rng; fixed policies draw nothing.
core::Basis draw_basis(BasisPolicy policy, RandomSource& rng);

using UnitaryMatrix2 = core::SingleQubitGate;

struct NoAttack {};

struct InterceptResend {
    BasisPolicy eve_basis;
};

struct UnitaryAttack {
    UnitaryMatrix2 u;
};

using AttackModel = std::variant<NoAttack, InterceptResend, UnitaryAttack>;

// Short stable name, e.g. "none", "intercept-resend:uniform", "unitary:H".
std::string describe(const AttackModel& attack);

// Accepted forms:
//   none
//   intercept-resend:z | intercept-resend:x | intercept-resend:uniform
//   unitary:I | unitary:X | unitary:Z | unitary:H
//   unitary:re,im;re,im;re,im;re,im      (u00;u01;u10;u11)
// Throws ValidationError for malformed or non-unitary specs.
AttackModel parse_attack(std::string_view spec);

// Eve measures Bob's half in eve_basis and forwards the eigenstate she saw.
core::StateVector apply_intercept_resend(const core::StateVector& pair, core::Basis eve_basis, RandomSource& rng);

// (I (x) U) on the pair.
core::StateVector apply_unitary_attack(const core::StateVector& pair, const UnitaryMatrix2& u);

core::StateVector apply_attack(const core::StateVector& pair, const AttackModel& attack, RandomSource& eve_rng);

// Per-checked-pair detection: 0 when bases agree, 1/2 otherwise.
double analytic_detection_intercept(core::Basis eve_basis, core::Basis check_basis);

// Z checks: (1/2)(|u01|^2 + |u10|^2).
// X checks: (1/8)(|u00+u01-u10-u11|^2 + |u00-u01+u10-u11|^2), the weight of
// the anti-correlated |+-> and |-+> components of (I (x) U)PhiPlus.
double analytic_detection_unitary(const UnitaryMatrix2& u, core::Basis check_basis);

// (1/8) of the squared magnitudes of all four X-basis coefficients of
// (I (x) U)PhiPlus, correlated terms included. Equals 1 for every unitary,
// so it is not a detection probability; reported for comparison only.
double four_term_x_sum(const UnitaryMatrix2& u);

// Expected per-check detection for an attack when the check basis follows
// check_policy (uniform policies average over both bases).
double analytic_detection(const AttackModel& attack, BasisPolicy check_policy);

// Brute-force oracle: probability that Alice's and Bob's outcomes differ when
// both halves of `pair` are measured in `basis`, from exhaustive branch
// enumeration.
double mismatch_probability(const core::StateVector& pair, core::Basis basis);

// Exact per-check detection for an attack and check policy computed by
// enumerating Eve's measurement branches and the check branches, without
// the closed-form rates above.
double brute_force_detection(const AttackModel& attack, BasisPolicy check_policy);

}  // namespace bqtsim::adversary
