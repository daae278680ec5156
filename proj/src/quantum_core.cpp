#include "bqtsim/quantum_core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <set>
#include <sstream>
#include <utility>

#include "bqtsim/errors.hpp"

namespace bqtsim::core {

namespace {

constexpr std::size_t kMaxQubits = 16;
const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

bool finite(Amplitude a)
{
    return std::isfinite(a.real()) && std::isfinite(a.imag());
}

double norm_squared_of(std::span<const Amplitude> amps)
{
    double total = 0.0;
    for (const Amplitude& a : amps) {
        total += std::norm(a);
    }
    return total;
}

void require_unique(const std::vector<QubitLabel>& labels)
{
    std::set<QubitLabel> seen;
    for (const QubitLabel& l : labels) {
        if (!seen.insert(l).second) {
            throw LabelError("duplicate qubit label '" + l.name() + "'");
        }
    }
}

void require_normalized(const StateVector& state, const char* what)
{
    const double n = state.norm_squared();
    if (std::abs(n - 1.0) > kNormTolerance) {
        throw ValidationError(std::string(what) + ": input state is not normalized (norm^2 = " +
                              std::to_string(n) + ")");
    }
}

// Projects the qubit at `mask` onto outcome `outcome` of `basis`, leaving the
// result unnormalized.
std::vector<Amplitude> project(std::span<const Amplitude> amps, std::size_t mask, Basis basis, int outcome)
{
    std::vector<Amplitude> out(amps.size(), Amplitude{});
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (i & mask) {
            continue;
        }
        const std::size_t j = i | mask;
        if (basis == Basis::Z) {
            if (outcome == 0) {
                out[i] = amps[i];
            } else {
                out[j] = amps[j];
            }
        } else {
            const double sign = outcome == 0 ? 1.0 : -1.0;
            const Amplitude c = (amps[i] + sign * amps[j]) * kInvSqrt2;
            out[i] = c * kInvSqrt2;
            out[j] = sign * c * kInvSqrt2;
        }
    }
    return out;
}

void require_distinct_pair(const StateVector& state, const QubitLabel& a, const QubitLabel& b)
{
    if (a == b) {
        throw LabelError("qubit '" + a.name() + "' used twice in one two-qubit operation");
    }
    (void)state.index_of(a);
    (void)state.index_of(b);
}

// Bell overlaps c_k(rest) = sum_xy conj(B_k[xy]) a_{xy,rest}, flattened as
// [k][index of the state with both pair bits cleared].
struct BellOverlaps {
    std::size_t first_mask;
    std::size_t second_mask;
    std::array<std::vector<std::pair<std::size_t, Amplitude>>, 4> terms;
};

BellOverlaps bell_overlaps(const StateVector& state, const QubitLabel& first, const QubitLabel& second)
{
    require_distinct_pair(state, first, second);
    BellOverlaps result{state.mask_of(first), state.mask_of(second), {}};
    const auto amps = state.amplitudes();
    for (std::size_t k = 0; k < 4; ++k) {
        const auto bell = bell_amplitudes(kBellKinds[k]);
        for (std::size_t base = 0; base < amps.size(); ++base) {
            if (base & (result.first_mask | result.second_mask)) {
                continue;
            }
            Amplitude c{};
            for (std::size_t xy = 0; xy < 4; ++xy) {
                std::size_t idx = base;
                if (xy & 2U) idx |= result.first_mask;
                if (xy & 1U) idx |= result.second_mask;
                c += std::conj(bell[xy]) * amps[idx];
            }
            result.terms[k].emplace_back(base, c);
        }
    }
    return result;
}

}  // namespace

QubitLabel::QubitLabel(std::string name) : name_(std::move(name))
{
    if (name_.empty()) {
        throw LabelError("qubit label must not be empty");
    }
}

std::string_view to_string(Basis basis)
{
    return basis == Basis::Z ? "Z" : "X";
}

std::string_view outcome_symbol(Basis basis, int outcome)
{
    if (basis == Basis::Z) {
        return outcome == 0 ? "0" : "1";
    }
    return outcome == 0 ? "+" : "-";
}

std::string_view to_string(BellKind kind)
{
    switch (kind) {
    case BellKind::PhiPlus: return "PhiPlus";
    case BellKind::PhiMinus: return "PhiMinus";
    case BellKind::PsiPlus: return "PsiPlus";
    case BellKind::PsiMinus: return "PsiMinus";
    }
    return "?";
}

std::array<Amplitude, 4> bell_amplitudes(BellKind kind)
{
    const double s = kInvSqrt2;
    switch (kind) {
    case BellKind::PhiPlus: return {s, 0.0, 0.0, s};
    case BellKind::PhiMinus: return {s, 0.0, 0.0, -s};
    case BellKind::PsiPlus: return {0.0, s, s, 0.0};
    case BellKind::PsiMinus: return {0.0, s, -s, 0.0};
    }
    return {};
}

std::string_view to_string(GateName name)
{
    switch (name) {
    case GateName::I: return "I";
    case GateName::X: return "X";
    case GateName::Z: return "Z";
    case GateName::iY: return "iY";
    case GateName::H: return "H";
    case GateName::Custom: return "U";
    }
    return "?";
}

// ---------- SingleQubitGate ----------

double SingleQubitGate::unitarity_defect(const std::array<Amplitude, 4>& m)
{
    double worst = 0.0;
    for (int r = 0; r < 2; ++r) {
        for (int c = 0; c < 2; ++c) {
            // (G^dagger G)_rc = sum_k conj(G_kr) G_kc
            Amplitude v = std::conj(m[static_cast<std::size_t>(r)]) * m[static_cast<std::size_t>(c)] +
                          std::conj(m[static_cast<std::size_t>(2 + r)]) * m[static_cast<std::size_t>(2 + c)];
            if (r == c) {
                v -= 1.0;
            }
            worst = std::max(worst, std::abs(v));
        }
    }
    return worst;
}

SingleQubitGate::SingleQubitGate(GateName name, const std::array<Amplitude, 4>& entries)
    : name_(name), m_(entries)
{
    for (const Amplitude& a : m_) {
        if (!finite(a)) {
            throw ValidationError("gate matrix has non-finite entries");
        }
    }
    const double defect = unitarity_defect(m_);
    if (!(defect < kUnitaryTolerance)) {
        throw ValidationError("gate matrix is not unitary (max |G^dagger G - I| = " + std::to_string(defect) +
                              ")");
    }
}

SingleQubitGate SingleQubitGate::identity()
{
    return SingleQubitGate(GateName::I, {1.0, 0.0, 0.0, 1.0});
}

SingleQubitGate SingleQubitGate::pauli_x()
{
    return SingleQubitGate(GateName::X, {0.0, 1.0, 1.0, 0.0});
}

SingleQubitGate SingleQubitGate::pauli_z()
{
    return SingleQubitGate(GateName::Z, {1.0, 0.0, 0.0, -1.0});
}

SingleQubitGate SingleQubitGate::i_y()
{
    return SingleQubitGate(GateName::iY, {0.0, 1.0, -1.0, 0.0});
}

SingleQubitGate SingleQubitGate::hadamard()
{
    const double s = kInvSqrt2;
    return SingleQubitGate(GateName::H, {s, s, s, -s});
}

// ---------- StateVector ----------

StateVector::StateVector(Unchecked, std::vector<QubitLabel> labels, std::vector<Amplitude> amplitudes)
    : labels_(std::move(labels)), amplitudes_(std::move(amplitudes))
{
}

StateVector::StateVector(std::vector<QubitLabel> labels, std::vector<Amplitude> amplitudes)
    : labels_(std::move(labels)), amplitudes_(std::move(amplitudes))
{
    if (labels_.empty() || labels_.size() > kMaxQubits) {
        throw DimensionError("register must hold between 1 and " + std::to_string(kMaxQubits) + " qubits");
    }
    if (amplitudes_.size() != (std::size_t{1} << labels_.size())) {
        throw DimensionError("expected " + std::to_string(std::size_t{1} << labels_.size()) +
                             " amplitudes, got " + std::to_string(amplitudes_.size()));
    }
    require_unique(labels_);
    for (const Amplitude& a : amplitudes_) {
        if (!finite(a)) {
            throw ValidationError("state has non-finite amplitudes");
        }
    }
    const double n = norm_squared_of(amplitudes_);
    if (std::abs(n - 1.0) > kNormTolerance) {
        throw ValidationError("state is not normalized (norm^2 = " + std::to_string(n) + ")");
    }
}

StateVector StateVector::normalized(std::vector<QubitLabel> labels, std::vector<Amplitude> amplitudes)
{
    const double n = norm_squared_of(amplitudes);
    if (!std::isfinite(n) || n <= 0.0) {
        throw ValidationError("cannot normalize a zero or non-finite vector");
    }
    const double scale = 1.0 / std::sqrt(n);
    for (Amplitude& a : amplitudes) {
        a *= scale;
    }
    return StateVector(std::move(labels), std::move(amplitudes));
}

bool StateVector::has(const QubitLabel& label) const
{
    return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::size_t StateVector::index_of(const QubitLabel& label) const
{
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) {
        throw LabelError("unknown qubit label '" + label.name() + "'");
    }
    return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t StateVector::mask_of(const QubitLabel& label) const
{
    return std::size_t{1} << (labels_.size() - 1 - index_of(label));
}

Amplitude StateVector::amplitude(std::string_view bits) const
{
    if (bits.size() != labels_.size()) {
        throw DimensionError("bitstring length " + std::to_string(bits.size()) + " does not match " +
                             std::to_string(labels_.size()) + " qubits");
    }
    std::size_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw DimensionError("bitstring may only contain '0' and '1'");
        }
        index = (index << 1U) | static_cast<std::size_t>(c == '1');
    }
    return amplitudes_[index];
}

double StateVector::norm_squared() const
{
    return norm_squared_of(amplitudes_);
}

StateVector StateVector::relabeled(std::vector<QubitLabel> labels) const
{
    if (labels.size() != labels_.size()) {
        throw DimensionError("relabel needs " + std::to_string(labels_.size()) + " labels");
    }
    require_unique(labels);
    return StateVector(Unchecked{}, std::move(labels), amplitudes_);
}

StateVector StateVector::reordered(const std::vector<QubitLabel>& order) const
{
    if (order.size() != labels_.size()) {
        throw LabelError("reorder needs a permutation of the register labels");
    }
    require_unique(order);
    const std::size_t n = labels_.size();
    // source bit mask for each destination position
    std::vector<std::size_t> src_mask(n);
    for (std::size_t p = 0; p < n; ++p) {
        src_mask[p] = mask_of(order[p]);
    }
    std::vector<Amplitude> out(amplitudes_.size());
    for (std::size_t dst = 0; dst < out.size(); ++dst) {
        std::size_t src = 0;
        for (std::size_t p = 0; p < n; ++p) {
            if (dst & (std::size_t{1} << (n - 1 - p))) {
                src |= src_mask[p];
            }
        }
        out[dst] = amplitudes_[src];
    }
    return StateVector(Unchecked{}, order, std::move(out));
}

std::string StateVector::to_string() const
{
    std::ostringstream os;
    bool first = true;
    const std::size_t n = labels_.size();
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        if (std::abs(amplitudes_[i]) < 1e-12) {
            continue;
        }
        if (!first) {
            os << " + ";
        }
        first = false;
        os << '(' << format_amplitude(amplitudes_[i]) << ")|";
        for (std::size_t p = 0; p < n; ++p) {
            os << ((i >> (n - 1 - p)) & 1U);
        }
        os << "⟩";
    }
    if (first) {
        os << '0';
    }
    os << " [";
    for (std::size_t p = 0; p < n; ++p) {
        os << (p ? " " : "") << labels_[p].name();
    }
    os << ']';
    return os.str();
}

// ---------- construction ----------

StateVector make_basis_state(std::vector<QubitLabel> labels, std::string_view bits)
{
    if (bits.size() != labels.size()) {
        throw DimensionError("bitstring length " + std::to_string(bits.size()) + " does not match " +
                             std::to_string(labels.size()) + " labels");
    }
    if (labels.empty() || labels.size() > kMaxQubits) {
        throw DimensionError("register must hold between 1 and " + std::to_string(kMaxQubits) + " qubits");
    }
    std::size_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw DimensionError("bitstring may only contain '0' and '1'");
        }
        index = (index << 1U) | static_cast<std::size_t>(c == '1');
    }
    std::vector<Amplitude> amps(std::size_t{1} << labels.size());
    amps[index] = 1.0;
    return StateVector(std::move(labels), std::move(amps));
}

StateVector bell_state(BellKind kind, const QubitLabel& first, const QubitLabel& second)
{
    if (first == second) {
        throw LabelError("Bell state needs two distinct labels");
    }
    const auto b = bell_amplitudes(kind);
    return StateVector({first, second}, {b.begin(), b.end()});
}

StateVector single_qubit_state(const QubitLabel& label, const QubitState& amplitudes)
{
    return StateVector({label}, {amplitudes[0], amplitudes[1]});
}

StateVector tensor(const StateVector& left, const StateVector& right)
{
    std::vector<QubitLabel> labels = left.labels();
    for (const QubitLabel& l : right.labels()) {
        if (left.has(l)) {
            throw LabelError("tensor product of registers sharing label '" + l.name() + "'");
        }
        labels.push_back(l);
    }
    const auto la = left.amplitudes();
    const auto ra = right.amplitudes();
    std::vector<Amplitude> amps;
    amps.reserve(la.size() * ra.size());
    for (const Amplitude& a : la) {
        for (const Amplitude& b : ra) {
            amps.push_back(a * b);
        }
    }
    return StateVector::normalized(std::move(labels), std::move(amps));
}

// ---------- gates ----------

StateVector apply_gate(const StateVector& state, const SingleQubitGate& gate, const QubitLabel& target)
{
    const std::size_t mask = state.mask_of(target);
    const auto amps = state.amplitudes();
    std::vector<Amplitude> out(amps.begin(), amps.end());
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (i & mask) {
            continue;
        }
        const std::size_t j = i | mask;
        out[i] = gate(0, 0) * amps[i] + gate(0, 1) * amps[j];
        out[j] = gate(1, 0) * amps[i] + gate(1, 1) * amps[j];
    }
    return StateVector(state.labels(), std::move(out));
}

StateVector apply_cnot(const StateVector& state, const QubitLabel& control, const QubitLabel& target)
{
    require_distinct_pair(state, control, target);
    const std::size_t cmask = state.mask_of(control);
    const std::size_t tmask = state.mask_of(target);
    const auto amps = state.amplitudes();
    std::vector<Amplitude> out(amps.size());
    for (std::size_t i = 0; i < amps.size(); ++i) {
        const std::size_t dst = (i & cmask) ? (i ^ tmask) : i;
        out[dst] = amps[i];
    }
    return StateVector(state.labels(), std::move(out));
}

// ---------- measurement ----------

std::array<double, 2> outcome_probabilities(const StateVector& state, const QubitLabel& target, Basis basis)
{
    const std::size_t mask = state.mask_of(target);
    const auto amps = state.amplitudes();
    std::array<double, 2> p{0.0, 0.0};
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (i & mask) {
            continue;
        }
        const std::size_t j = i | mask;
        if (basis == Basis::Z) {
            p[0] += std::norm(amps[i]);
            p[1] += std::norm(amps[j]);
        } else {
            p[0] += std::norm((amps[i] + amps[j]) * kInvSqrt2);
            p[1] += std::norm((amps[i] - amps[j]) * kInvSqrt2);
        }
    }
    return p;
}

Measured measure_qubit(const StateVector& state, const QubitLabel& target, Basis basis, RandomSource& rng)
{
    require_normalized(state, "measure_qubit");
    const auto p = outcome_probabilities(state, target, basis);
    int outcome = 0;
    if (p[0] < kBranchFloor) {
        outcome = 1;
    } else if (p[1] >= kBranchFloor) {
        outcome = rng.uniform() < p[0] ? 0 : 1;
    }
    auto projected = project(state.amplitudes(), state.mask_of(target), basis, outcome);
    return Measured{MeasurementRecord{target, basis, outcome, p[static_cast<std::size_t>(outcome)]},
                    StateVector::normalized(state.labels(), std::move(projected))};
}

std::array<double, 4> bell_probabilities(const StateVector& state, const QubitLabel& first,
                                         const QubitLabel& second)
{
    const BellOverlaps ov = bell_overlaps(state, first, second);
    std::array<double, 4> p{};
    for (std::size_t k = 0; k < 4; ++k) {
        for (const auto& [base, c] : ov.terms[k]) {
            p[k] += std::norm(c);
        }
    }
    return p;
}

BellMeasured measure_bell(const StateVector& state, const QubitLabel& first, const QubitLabel& second,
                          RandomSource& rng)
{
    require_normalized(state, "measure_bell");
    const BellOverlaps ov = bell_overlaps(state, first, second);
    std::array<double, 4> p{};
    for (std::size_t k = 0; k < 4; ++k) {
        for (const auto& [base, c] : ov.terms[k]) {
            p[k] += std::norm(c);
        }
    }

    // Sample among branches above the floor; the last admissible branch
    // absorbs rounding in the cumulative sum.
    std::size_t chosen = 4;
    const double u = rng.uniform();
    double cumulative = 0.0;
    for (std::size_t k = 0; k < 4; ++k) {
        if (p[k] < kBranchFloor) {
            continue;
        }
        chosen = k;
        cumulative += p[k];
        if (u < cumulative) {
            break;
        }
    }

    const auto bell = bell_amplitudes(kBellKinds[chosen]);
    std::vector<Amplitude> out(state.dimension());
    for (const auto& [base, c] : ov.terms[chosen]) {
        for (std::size_t xy = 0; xy < 4; ++xy) {
            std::size_t idx = base;
            if (xy & 2U) idx |= ov.first_mask;
            if (xy & 1U) idx |= ov.second_mask;
            out[idx] = bell[xy] * c;
        }
    }
    return BellMeasured{kBellKinds[chosen], p[chosen], StateVector::normalized(state.labels(), std::move(out))};
}

std::vector<Branch> enumerate_branches(const StateVector& state, std::span<const MeasurementStep> plan)
{
    std::vector<std::size_t> masks;
    masks.reserve(plan.size());
    std::set<QubitLabel> seen;
    for (const MeasurementStep& step : plan) {
        if (!seen.insert(step.qubit).second) {
            throw LabelError("qubit '" + step.qubit.name() + "' appears twice in the measurement plan");
        }
        masks.push_back(state.mask_of(step.qubit));
    }

    struct Partial {
        std::vector<int> outcomes;
        std::vector<Amplitude> amps;
    };
    std::vector<Partial> frontier;
    frontier.push_back({{}, {state.amplitudes().begin(), state.amplitudes().end()}});
    for (std::size_t s = 0; s < plan.size(); ++s) {
        std::vector<Partial> next;
        next.reserve(frontier.size() * 2);
        for (const Partial& part : frontier) {
            for (int outcome = 0; outcome < 2; ++outcome) {
                Partial child{part.outcomes, project(part.amps, masks[s], plan[s].basis, outcome)};
                child.outcomes.push_back(outcome);
                next.push_back(std::move(child));
            }
        }
        frontier = std::move(next);
    }

    std::vector<Branch> branches;
    branches.reserve(frontier.size());
    for (Partial& part : frontier) {
        const double prob = norm_squared_of(part.amps);
        std::optional<StateVector> collapsed;
        if (prob >= kBranchFloor) {
            collapsed = StateVector::normalized(state.labels(), std::move(part.amps));
        }
        branches.push_back(Branch{std::move(part.outcomes), prob, std::move(collapsed)});
    }
    return branches;
}

// ---------- single-qubit views ----------

namespace {

// Reduced density matrix of the target: rho_ab = sum_r a_{a,r} conj(a_{b,r}).
std::array<Amplitude, 4> reduced_density(const StateVector& state, const QubitLabel& target)
{
    const std::size_t mask = state.mask_of(target);
    const auto amps = state.amplitudes();
    std::array<Amplitude, 4> rho{};
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (i & mask) {
            continue;
        }
        const Amplitude a0 = amps[i];
        const Amplitude a1 = amps[i | mask];
        rho[0] += a0 * std::conj(a0);
        rho[1] += a0 * std::conj(a1);
        rho[2] += a1 * std::conj(a0);
        rho[3] += a1 * std::conj(a1);
    }
    return rho;
}

}  // namespace

double product_residual(const StateVector& state, const QubitLabel& target)
{
    const auto rho = reduced_density(state, target);
    const double trace = rho[0].real() + rho[3].real();
    const double det = rho[0].real() * rho[3].real() - std::norm(rho[1]);
    const double disc = std::sqrt(std::max(0.0, trace * trace - 4.0 * det));
    const double lambda_max = 0.5 * (trace + disc);
    // det / lambda_max avoids the cancellation in (trace - disc) / 2.
    const double lambda_min = lambda_max > 0.0 ? det / lambda_max : 0.0;
    return std::max(0.0, lambda_min);
}

QubitState extract_single_qubit(const StateVector& state, const QubitLabel& target)
{
    const double residual = product_residual(state, target);
    if (residual > kProductTolerance) {
        throw NotProductError("qubit '" + target.name() + "' is entangled with the rest of the register (residual " +
                              std::to_string(residual) + ")");
    }
    // For a product state every column (fixed assignment of the other qubits)
    // is proportional to the target's state; take the heaviest one.
    const std::size_t mask = state.mask_of(target);
    const auto amps = state.amplitudes();
    std::size_t best = 0;
    double best_weight = -1.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (i & mask) {
            continue;
        }
        const double w = std::norm(amps[i]) + std::norm(amps[i | mask]);
        if (w > best_weight) {
            best_weight = w;
            best = i;
        }
    }
    const double scale = 1.0 / std::sqrt(best_weight);
    return QubitState{amps[best] * scale, amps[best | mask] * scale};
}

Amplitude inner_product(const StateVector& a, const StateVector& b)
{
    if (a.labels() != b.labels()) {
        throw LabelError("inner product needs identical label lists");
    }
    Amplitude total{};
    const auto x = a.amplitudes();
    const auto y = b.amplitudes();
    for (std::size_t i = 0; i < x.size(); ++i) {
        total += std::conj(x[i]) * y[i];
    }
    return total;
}

QubitState checked_qubit_state(Amplitude c0, Amplitude c1)
{
    if (!finite(c0) || !finite(c1)) {
        throw ValidationError("qubit amplitudes must be finite");
    }
    const double n = std::norm(c0) + std::norm(c1);
    if (std::abs(n - 1.0) > kNormTolerance) {
        throw ValidationError("qubit state is not normalized (norm^2 = " + std::to_string(n) + ")");
    }
    return {c0, c1};
}

double fidelity_up_to_phase(const QubitState& a, const QubitState& b)
{
    (void)checked_qubit_state(a[0], a[1]);
    (void)checked_qubit_state(b[0], b[1]);
    const Amplitude overlap = std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
    return std::clamp(std::norm(overlap), 0.0, 1.0);
}

QubitState canonical_phase(const QubitState& state)
{
    for (const Amplitude& c : state) {
        if (std::abs(c) > 1e-12) {
            const Amplitude phase = std::conj(c) / std::abs(c);
            return {state[0] * phase, state[1] * phase};
        }
    }
    return state;
}

QubitState apply(const SingleQubitGate& gate, const QubitState& s)
{
    return {gate(0, 0) * s[0] + gate(0, 1) * s[1], gate(1, 0) * s[0] + gate(1, 1) * s[1]};
}

namespace kets {
QubitState zero() { return {1.0, 0.0}; }
QubitState one() { return {0.0, 1.0}; }
QubitState plus() { return {kInvSqrt2, kInvSqrt2}; }
QubitState minus() { return {kInvSqrt2, -kInvSqrt2}; }
}  // namespace kets

QubitState random_qubit_state(RandomSource& rng)
{
    for (;;) {
        const Amplitude c0{rng.normal(), rng.normal()};
        const Amplitude c1{rng.normal(), rng.normal()};
        const double n = std::sqrt(std::norm(c0) + std::norm(c1));
        if (n > 1e-6) {
            return {c0 / n, c1 / n};
        }
    }
}

SingleQubitGate random_unitary(RandomSource& rng)
{
    // Haar column (a, b), completed by e^{i phi} (-conj b, conj a).
    const QubitState col = random_qubit_state(rng);
    const double phi = 2.0 * std::numbers::pi * rng.uniform();
    const Amplitude phase = std::polar(1.0, phi);
    return SingleQubitGate::custom({col[0], -phase * std::conj(col[1]), col[1], phase * std::conj(col[0])});
}

std::string format_amplitude(Amplitude value)
{
    auto clean = [](double x) { return std::abs(x) < 5e-13 ? 0.0 : x; };
    const double re = clean(value.real());
    const double im = clean(value.imag());
    char buf[64];
    if (im == 0.0) {
        std::snprintf(buf, sizeof buf, "%.12g", re);
    } else if (re == 0.0) {
        std::snprintf(buf, sizeof buf, "%.12gi", im);
    } else {
        std::snprintf(buf, sizeof buf, "%.12g%+.12gi", re, im);
    }
    return buf;
}

}  // namespace bqtsim::core
