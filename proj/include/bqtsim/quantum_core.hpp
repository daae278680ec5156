#pragma once

// Dense statevector engine.
//
// Bit ordering: the label list of a StateVector defines the basis index, with
// the first label as the most significant bit, so |0011> over (a1,b1,a2,b2)
// means a1=0, b1=0, a2=1, b2=1.

#include <array>
#include <complex>
#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bqtsim/random.hpp"

namespace bqtsim::core {

using Amplitude = std::complex<double>;

// Amplitude pair (c0, c1) of a single qubit.
using QubitState = std::array<Amplitude, 2>;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kUnitaryTolerance = 1e-12;
// Smallest reduced-density eigenvalue accepted as a product cut.
inline constexpr double kProductTolerance = 1e-10;
// Branches below this probability are never sampled and carry no state.
inline constexpr double kBranchFloor = 1e-15;

class QubitLabel {
public:
    explicit QubitLabel(std::string name);

    const std::string& name() const { return name_; }

    friend bool operator==(const QubitLabel&, const QubitLabel&) = default;
    friend auto operator<=>(const QubitLabel&, const QubitLabel&) = default;

private:
    std::string name_;
};

enum class Basis { Z, X };

std::string_view to_string(Basis basis);
// Outcome symbol: Z -> "0"/"1", X -> "+"/"-".
std::string_view outcome_symbol(Basis basis, int outcome);

enum class BellKind { PhiPlus, PhiMinus, PsiPlus, PsiMinus };

inline constexpr std::array<BellKind, 4> kBellKinds = {
    BellKind::PhiPlus, BellKind::PhiMinus, BellKind::PsiPlus, BellKind::PsiMinus};

std::string_view to_string(BellKind kind);

// Amplitudes of a Bell state in the order |00>, |01>, |10>, |11>.
std::array<Amplitude, 4> bell_amplitudes(BellKind kind);

enum class GateName { I, X, Z, iY, H, Custom };

std::string_view to_string(GateName name);

// Row-major 2x2 matrix, validated unitary on construction.
class SingleQubitGate {
public:
    // Throws ValidationError if the matrix is not unitary within
    // kUnitaryTolerance or has non-finite entries.
    SingleQubitGate(GateName name, const std::array<Amplitude, 4>& entries);

    static SingleQubitGate identity();
    static SingleQubitGate pauli_x();
    static SingleQubitGate pauli_z();
    // [[0, 1], [-1, 0]] = Z X.
    static SingleQubitGate i_y();
    static SingleQubitGate hadamard();
    static SingleQubitGate custom(const std::array<Amplitude, 4>& entries)
    {
        return SingleQubitGate(GateName::Custom, entries);
    }

    GateName name() const { return name_; }
    const std::array<Amplitude, 4>& entries() const { return m_; }
    Amplitude operator()(int row, int col) const { return m_[static_cast<std::size_t>(2 * row + col)]; }
    Amplitude u00() const { return m_[0]; }
    Amplitude u01() const { return m_[1]; }
    Amplitude u10() const { return m_[2]; }
    Amplitude u11() const { return m_[3]; }

    // max |(G^dagger G - I)_ij|
    static double unitarity_defect(const std::array<Amplitude, 4>& entries);

private:
    GateName name_;
    std::array<Amplitude, 4> m_;
};

struct MeasurementRecord {
    QubitLabel qubit;
    Basis basis;
    int outcome;  // Z: 0 -> |0>, 1 -> |1>; X: 0 -> |+>, 1 -> |->
    double probability;
};

// Normalized amplitudes over an ordered list of unique labels. Immutable:
// every operation below returns a new state.
class StateVector {
public:
    // Validates dimension, label uniqueness, finiteness and unit norm.
    StateVector(std::vector<QubitLabel> labels, std::vector<Amplitude> amplitudes);

    // Same, but rescales to unit norm first. Throws ValidationError on a zero
    // or non-finite vector.
    static StateVector normalized(std::vector<QubitLabel> labels, std::vector<Amplitude> amplitudes);

    std::size_t qubit_count() const { return labels_.size(); }
    std::size_t dimension() const { return amplitudes_.size(); }
    const std::vector<QubitLabel>& labels() const { return labels_; }
    std::span<const Amplitude> amplitudes() const { return amplitudes_; }

    bool has(const QubitLabel& label) const;
    // Position in the label list. Throws LabelError for unknown labels.
    std::size_t index_of(const QubitLabel& label) const;
    // Bit mask of the label inside a basis index.
    std::size_t mask_of(const QubitLabel& label) const;

    // Amplitude of a basis element given as a bitstring over labels().
    Amplitude amplitude(std::string_view bits) const;
    Amplitude amplitude(std::size_t index) const { return amplitudes_[index]; }

    double norm_squared() const;

    // Same amplitudes under new names.
    StateVector relabeled(std::vector<QubitLabel> labels) const;

    // Same physical state with the qubits listed in a different order.
    // `order` must be a permutation of labels().
    StateVector reordered(const std::vector<QubitLabel>& order) const;

    // "coefficient|bits> + ... [labels]", coefficients at 12 significant digits.
    std::string to_string() const;

private:
    struct Unchecked {};
    StateVector(Unchecked, std::vector<QubitLabel> labels, std::vector<Amplitude> amplitudes);

    std::vector<QubitLabel> labels_;
    std::vector<Amplitude> amplitudes_;
};

StateVector make_basis_state(std::vector<QubitLabel> labels, std::string_view bits);

StateVector bell_state(BellKind kind, const QubitLabel& first, const QubitLabel& second);

StateVector single_qubit_state(const QubitLabel& label, const QubitState& amplitudes);

StateVector tensor(const StateVector& left, const StateVector& right);

StateVector apply_gate(const StateVector& state, const SingleQubitGate& gate, const QubitLabel& target);

StateVector apply_cnot(const StateVector& state, const QubitLabel& control, const QubitLabel& target);

struct Measured {
    MeasurementRecord record;
    StateVector state;
};

// Born-rule sample; the measured qubit stays in the register, collapsed to
// the observed basis state.
Measured measure_qubit(const StateVector& state, const QubitLabel& target, Basis basis, RandomSource& rng);

// Probabilities of outcome 0 and 1 without sampling.
std::array<double, 2> outcome_probabilities(const StateVector& state, const QubitLabel& target, Basis basis);

struct BellMeasured {
    BellKind kind;
    double probability;
    StateVector state;
};

// Probability of each Bell outcome on (first, second), indexed like kBellKinds.
std::array<double, 4> bell_probabilities(const StateVector& state, const QubitLabel& first,
                                         const QubitLabel& second);

BellMeasured measure_bell(const StateVector& state, const QubitLabel& first, const QubitLabel& second,
                          RandomSource& rng);

struct MeasurementStep {
    QubitLabel qubit;
    Basis basis;
};

struct Branch {
    std::vector<int> outcomes;  // one per plan step, in plan order
    double probability;
    std::optional<StateVector> state;  // empty when probability < kBranchFloor
};

// All 2^k outcome combinations of the plan, first step most significant.
std::vector<Branch> enumerate_branches(const StateVector& state, std::span<const MeasurementStep> plan);

// Smallest eigenvalue of the target's reduced density matrix; zero for an
// exact product cut.
double product_residual(const StateVector& state, const QubitLabel& target);

// Throws NotProductError if product_residual exceeds kProductTolerance.
QubitState extract_single_qubit(const StateVector& state, const QubitLabel& target);

// <a|b> over identical label lists.
Amplitude inner_product(const StateVector& a, const StateVector& b);

// |<a|b>|^2. Throws ValidationError unless both are normalized.
double fidelity_up_to_phase(const QubitState& a, const QubitState& b);

// Throws ValidationError unless |c0|^2 + |c1|^2 = 1 within kNormTolerance.
QubitState checked_qubit_state(Amplitude c0, Amplitude c1);

// Multiplies by a global phase so the first non-negligible amplitude is real
// and positive. For display.
QubitState canonical_phase(const QubitState& state);

QubitState apply(const SingleQubitGate& gate, const QubitState& state);

namespace kets {
QubitState zero();
QubitState one();
QubitState plus();
QubitState minus();
}  // namespace kets

QubitState random_qubit_state(RandomSource& rng);

// Haar-distributed U(2) element.
SingleQubitGate random_unitary(RandomSource& rng);

// 12 significant digits, "a", "bi" or "a+bi".
std::string format_amplitude(Amplitude value);

}  // namespace bqtsim::core
