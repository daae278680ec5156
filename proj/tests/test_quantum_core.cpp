#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "bqtsim/errors.hpp"
#include "bqtsim/quantum_core.hpp"
#include "oracle/dense_oracle.hpp"

using namespace bqtsim;
using namespace bqtsim::core;

namespace {

constexpr double kTol = 1e-12;
const double kS = 1.0 / std::sqrt(2.0);

std::vector<QubitLabel> make_labels(std::size_t n)
{
    std::vector<QubitLabel> out;
    for (std::size_t i = 0; i < n; ++i) {
        out.emplace_back("q" + std::to_string(i));
    }
    return out;
}

StateVector random_state(std::size_t n, RandomSource& rng)
{
    std::vector<Amplitude> amps(std::size_t{1} << n);
    for (auto& a : amps) {
        a = Amplitude{rng.normal(), rng.normal()};
    }
    return StateVector::normalized(make_labels(n), std::move(amps));
}

double max_diff(const StateVector& s, const oracle::Vec& v)
{
    return (oracle::to_vec(s) - v).cwiseAbs().maxCoeff();
}

}  // namespace

// ---------- construction ----------

TEST(BasisState, ComputationalBasisExamples)
{
    const auto s0 = make_basis_state({QubitLabel("q0")}, "0");
    EXPECT_EQ(s0.amplitude("0"), Amplitude(1.0));
    const auto s10 = make_basis_state(make_labels(2), "10");
    EXPECT_EQ(s10.amplitude("10"), Amplitude(1.0));
    EXPECT_EQ(s10.amplitude(2), Amplitude(1.0));
    const auto s111 = make_basis_state(make_labels(3), "111");
    EXPECT_EQ(s111.amplitude(7), Amplitude(1.0));
    EXPECT_DOUBLE_EQ(s111.norm_squared(), 1.0);
}

TEST(BasisState, RejectsBadBitstrings)
{
    EXPECT_THROW(make_basis_state(make_labels(2), "1"), DimensionError);
    EXPECT_THROW(make_basis_state(make_labels(2), "12"), DimensionError);
    EXPECT_THROW(make_basis_state({QubitLabel("a"), QubitLabel("a")}, "00"), LabelError);
}

TEST(StateVectorValidation, RejectsMalformedRegisters)
{
    EXPECT_THROW(StateVector(make_labels(2), {1.0, 0.0}), DimensionError);
    EXPECT_THROW(StateVector({}, {}), DimensionError);
    EXPECT_THROW(StateVector(make_labels(1), {1.0, 1.0}), ValidationError);
    EXPECT_THROW(StateVector(make_labels(1), {std::nan(""), 0.0}), ValidationError);
    EXPECT_THROW(StateVector({QubitLabel("x"), QubitLabel("x")}, {1.0, 0.0, 0.0, 0.0}), LabelError);
    EXPECT_THROW(QubitLabel(""), LabelError);
    EXPECT_THROW(StateVector::normalized(make_labels(1), {0.0, 0.0}), ValidationError);
}

TEST(StateVectorValidation, UnknownLabelIsReported)
{
    const auto s = make_basis_state(make_labels(2), "00");
    EXPECT_THROW(s.index_of(QubitLabel("nope")), LabelError);
    EXPECT_FALSE(s.has(QubitLabel("nope")));
    EXPECT_TRUE(s.has(QubitLabel("q1")));
    EXPECT_EQ(s.mask_of(QubitLabel("q0")), 2u);
    EXPECT_EQ(s.mask_of(QubitLabel("q1")), 1u);
}

// ---------- Bell states ----------

TEST(BellState, DefiningAmplitudes)
{
    const QubitLabel p("p"), q("q");
    const auto phi = bell_state(BellKind::PhiPlus, p, q);
    EXPECT_NEAR(std::abs(phi.amplitude("00") - kS), 0.0, kTol);
    EXPECT_NEAR(std::abs(phi.amplitude("11") - kS), 0.0, kTol);
    EXPECT_EQ(phi.amplitude("01"), Amplitude(0.0));
    const auto psi_m = bell_state(BellKind::PsiMinus, p, q);
    EXPECT_NEAR(std::abs(psi_m.amplitude("01") - kS), 0.0, kTol);
    EXPECT_NEAR(std::abs(psi_m.amplitude("10") + kS), 0.0, kTol);
    EXPECT_NEAR(std::abs(inner_product(phi, bell_state(BellKind::PsiPlus, p, q))), 0.0, kTol);
    EXPECT_THROW(bell_state(BellKind::PhiPlus, p, p), LabelError);
}

TEST(BellState, OrthonormalAndMatchesOracle)
{
    const QubitLabel p("p"), q("q");
    for (std::size_t i = 0; i < 4; ++i) {
        const auto bi = bell_state(kBellKinds[i], p, q);
        EXPECT_LT(max_diff(bi, oracle::bell(static_cast<int>(i))), kTol);
        for (std::size_t j = 0; j < 4; ++j) {
            const auto bj = bell_state(kBellKinds[j], p, q);
            EXPECT_NEAR(std::abs(inner_product(bi, bj) - (i == j ? 1.0 : 0.0)), 0.0, kTol);
        }
    }
}

// ---------- tensor ----------

TEST(Tensor, Examples)
{
    const auto t = tensor(single_qubit_state(QubitLabel("x"), kets::zero()),
                          single_qubit_state(QubitLabel("y"), kets::one()));
    EXPECT_EQ(t.amplitude("01"), Amplitude(1.0));

    const auto pp = tensor(bell_state(BellKind::PhiPlus, QubitLabel("a1"), QubitLabel("b1")),
                           bell_state(BellKind::PhiPlus, QubitLabel("a2"), QubitLabel("b2")));
    for (const char* bits : {"0000", "0011", "1100", "1111"}) {
        EXPECT_NEAR(std::abs(pp.amplitude(bits) - 0.5), 0.0, kTol) << bits;
    }
    EXPECT_NEAR(pp.norm_squared(), 1.0, kTol);
    EXPECT_THROW(tensor(pp, make_basis_state({QubitLabel("b2")}, "0")), LabelError);
}

TEST(Tensor, MatchesKroneckerProductOnRandomStates)
{
    RandomSource rng(101);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n1 = 1 + rng.below(3);
        const std::size_t n2 = 1 + rng.below(3);
        const auto a = random_state(n1, rng);
        auto b = random_state(n2, rng);
        std::vector<QubitLabel> lb;
        for (std::size_t i = 0; i < n2; ++i) lb.emplace_back("r" + std::to_string(i));
        b = b.relabeled(lb);
        const auto t = tensor(a, b);
        EXPECT_LT(max_diff(t, oracle::kron(oracle::to_vec(a), oracle::to_vec(b))), kTol);
        EXPECT_NEAR(t.norm_squared(), 1.0, kTol);
    }
}

// ---------- gates ----------

TEST(Gates, Examples)
{
    const QubitLabel q("q");
    const auto one = apply_gate(single_qubit_state(q, kets::zero()), SingleQubitGate::pauli_x(), q);
    EXPECT_EQ(one.amplitude("1"), Amplitude(1.0));

    const auto minus = apply_gate(single_qubit_state(q, kets::plus()), SingleQubitGate::pauli_z(), q);
    EXPECT_NEAR(fidelity_up_to_phase(extract_single_qubit(minus, q), kets::minus()), 1.0, kTol);
    EXPECT_NEAR(std::abs(minus.amplitude("1") + kS), 0.0, kTol);

    // iY = [[0,1],[-1,0]] sends |0> to -|1> exactly, sign included.
    const auto iy = apply_gate(single_qubit_state(q, kets::zero()), SingleQubitGate::i_y(), q);
    EXPECT_EQ(iy.amplitude("0"), Amplitude(0.0));
    EXPECT_EQ(iy.amplitude("1"), Amplitude(-1.0));

    EXPECT_THROW(apply_gate(one, SingleQubitGate::pauli_x(), QubitLabel("zz")), LabelError);
}

TEST(Gates, FactoriesAreUnitaryAndNamed)
{
    for (const auto& g : {SingleQubitGate::identity(), SingleQubitGate::pauli_x(), SingleQubitGate::pauli_z(),
                          SingleQubitGate::i_y(), SingleQubitGate::hadamard()}) {
        EXPECT_LT(SingleQubitGate::unitarity_defect(g.entries()), kTol);
    }
    EXPECT_EQ(SingleQubitGate::i_y().name(), GateName::iY);
    EXPECT_EQ(to_string(GateName::H), "H");
}

TEST(Gates, RejectsNonUnitaryAndNonFinite)
{
    EXPECT_THROW(SingleQubitGate::custom({1.0, 1.0, 0.0, 1.0}), ValidationError);
    EXPECT_THROW(SingleQubitGate::custom({2.0, 0.0, 0.0, 0.5}), ValidationError);
    EXPECT_THROW(SingleQubitGate::custom({std::nan(""), 0.0, 0.0, 1.0}), ValidationError);
}

TEST(Gates, RandomUnitariesAreUnitary)
{
    RandomSource rng(7);
    for (int i = 0; i < 1000; ++i) {
        const auto u = random_unitary(rng);
        const oracle::Mat m = oracle::from_gate(u);
        EXPECT_LT(oracle::max_abs(m.adjoint() * m - oracle::I2()), kTol);
    }
}

TEST(Gates, ApplicationMatchesEmbeddedOperatorAndPreservesNorm)
{
    RandomSource rng(202);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng.below(5);
        const auto s = random_state(n, rng);
        const auto u = random_unitary(rng);
        const int k = static_cast<int>(rng.below(n));
        const auto out = apply_gate(s, u, s.labels()[static_cast<std::size_t>(k)]);
        const oracle::Vec want = oracle::embed(oracle::from_gate(u), k, static_cast<int>(n)) * oracle::to_vec(s);
        EXPECT_LT(max_diff(out, want), kTol);
        EXPECT_NEAR(out.norm_squared(), 1.0, kTol);
    }
}

// ---------- CNOT ----------

TEST(Cnot, Examples)
{
    const auto labels = make_labels(2);
    EXPECT_EQ(apply_cnot(make_basis_state(labels, "10"), labels[0], labels[1]).amplitude("11"), Amplitude(1.0));
    EXPECT_EQ(apply_cnot(make_basis_state(labels, "00"), labels[0], labels[1]).amplitude("00"), Amplitude(1.0));
    EXPECT_THROW(apply_cnot(make_basis_state(labels, "00"), labels[0], labels[0]), LabelError);
}

TEST(Cnot, MatchesDenseOperator)
{
    RandomSource rng(303);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng.below(4);
        const auto s = random_state(n, rng);
        const auto c = rng.below(n);
        auto t = rng.below(n - 1);
        if (t >= c) ++t;
        const auto out = apply_cnot(s, s.labels()[c], s.labels()[t]);
        const oracle::Vec want =
            oracle::cnot(static_cast<int>(c), static_cast<int>(t), static_cast<int>(n)) * oracle::to_vec(s);
        EXPECT_LT(max_diff(out, want), kTol);
        EXPECT_NEAR(out.norm_squared(), 1.0, kTol);
    }
}

// ---------- single-qubit measurement ----------

TEST(Measure, Examples)
{
    RandomSource rng(1);
    const QubitLabel q("q");
    const auto plus = measure_qubit(single_qubit_state(q, kets::plus()), q, Basis::X, rng);
    EXPECT_EQ(plus.record.outcome, 0);
    EXPECT_EQ(outcome_symbol(Basis::X, plus.record.outcome), "+");
    EXPECT_NEAR(plus.record.probability, 1.0, kTol);

    const auto p = outcome_probabilities(single_qubit_state(q, kets::zero()), q, Basis::X);
    EXPECT_NEAR(p[0], 0.5, kTol);
    EXPECT_NEAR(p[1], 0.5, kTol);

    const QubitLabel a("a"), b("b");
    const auto phi = bell_state(BellKind::PhiPlus, a, b);
    for (int i = 0; i < 50; ++i) {
        const auto m = measure_qubit(phi, a, Basis::Z, rng);
        const char* expect = m.record.outcome == 0 ? "00" : "11";
        EXPECT_NEAR(std::abs(m.state.amplitude(expect)), 1.0, kTol);
    }
}

TEST(Measure, RejectsUnknownLabel)
{
    RandomSource rng(1);
    EXPECT_THROW(measure_qubit(make_basis_state(make_labels(1), "0"), QubitLabel("x"), Basis::Z, rng), LabelError);
}

TEST(Measure, CollapseMatchesProjector)
{
    RandomSource rng(404);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 1 + rng.below(4);
        const auto s = random_state(n, rng);
        const auto k = rng.below(n);
        const Basis basis = rng.coin() ? Basis::X : Basis::Z;
        const auto m = measure_qubit(s, s.labels()[k], basis, rng);
        oracle::Vec v = oracle::projector(static_cast<int>(k), static_cast<int>(n), basis == Basis::X,
                                          m.record.outcome) *
                        oracle::to_vec(s);
        EXPECT_NEAR(v.squaredNorm(), m.record.probability, kTol);
        v /= v.norm();
        EXPECT_LT(max_diff(m.state, v), 1e-10);
        EXPECT_NEAR(m.state.norm_squared(), 1.0, kTol);
    }
}

TEST(Measure, SamplingFrequenciesMatchBranchProbabilities)
{
    RandomSource pick(505);
    for (int trial = 0; trial < 4; ++trial) {
        const auto s = random_state(2, pick);
        const Basis basis = trial % 2 ? Basis::X : Basis::Z;
        const auto target = s.labels()[static_cast<std::size_t>(trial / 2)];
        const std::array<MeasurementStep, 1> plan{MeasurementStep{target, basis}};
        const auto branches = enumerate_branches(s, plan);
        const double p0 = branches[0].probability;

        constexpr int n = 100000;
        RandomSource rng(600 + static_cast<std::uint64_t>(trial));
        int zeros = 0;
        for (int i = 0; i < n; ++i) {
            zeros += measure_qubit(s, target, basis, rng).record.outcome == 0 ? 1 : 0;
        }
        const double se = std::sqrt(p0 * (1 - p0) / n);
        EXPECT_LE(std::abs(double(zeros) / n - p0), 5 * se) << "trial " << trial;
    }
}

// ---------- Bell measurement ----------

TEST(MeasureBell, EigenstateAndSwapOutcomes)
{
    RandomSource rng(9);
    const QubitLabel q1("1"), q2("2"), q3("3"), q4("4");
    const auto m = measure_bell(bell_state(BellKind::PhiPlus, q1, q2), q1, q2, rng);
    EXPECT_EQ(m.kind, BellKind::PhiPlus);
    EXPECT_NEAR(m.probability, 1.0, kTol);

    const auto pp = tensor(bell_state(BellKind::PsiPlus, q1, q2), bell_state(BellKind::PsiPlus, q3, q4));
    for (double p : bell_probabilities(pp, q1, q4)) {
        EXPECT_NEAR(p, 0.25, kTol);
    }
    // Drive sampling until PsiMinus shows up on (1,4).
    for (int i = 0; i < 200; ++i) {
        const auto bm = measure_bell(pp, q1, q4, rng);
        if (bm.kind != BellKind::PsiMinus) continue;
        const auto rest = bm.state.reordered({q1, q4, q2, q3});
        const auto target = tensor(bell_state(BellKind::PsiMinus, q1, q4), bell_state(BellKind::PsiMinus, q2, q3));
        EXPECT_NEAR(std::abs(inner_product(rest, target)), 1.0, kTol);
        // The branch carries an overall minus sign.
        EXPECT_NEAR(inner_product(rest, target).real(), -1.0, kTol);
        return;
    }
    FAIL() << "PsiMinus outcome never sampled";
}

// ---------- branch enumeration ----------

TEST(Branches, PlusMeasuredInZ)
{
    const QubitLabel q("q");
    const std::array<MeasurementStep, 1> plan{MeasurementStep{q, Basis::Z}};
    const auto br = enumerate_branches(single_qubit_state(q, kets::plus()), plan);
    ASSERT_EQ(br.size(), 2u);
    EXPECT_NEAR(br[0].probability, 0.5, kTol);
    EXPECT_NEAR(br[1].probability, 0.5, kTol);
}

TEST(Branches, DuplicatePlanStepIsRejected)
{
    const QubitLabel q("q");
    const std::array<MeasurementStep, 2> plan{MeasurementStep{q, Basis::Z}, MeasurementStep{q, Basis::X}};
    EXPECT_THROW(enumerate_branches(single_qubit_state(q, kets::plus()), plan), LabelError);
}

TEST(Branches, CompleteAndMatchDenseProjectorsOnRandomStates)
{
    RandomSource rng(707);
    for (int trial = 0; trial < 150; ++trial) {
        const std::size_t n = 1 + rng.below(4);
        const auto s = random_state(n, rng);
        const std::size_t steps = 1 + rng.below(n);
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        for (std::size_t i = 0; i < steps; ++i) std::swap(order[i], order[i + rng.below(n - i)]);
        std::vector<MeasurementStep> plan;
        std::vector<bool> xb;
        for (std::size_t i = 0; i < steps; ++i) {
            const bool x = rng.coin();
            xb.push_back(x);
            plan.push_back({s.labels()[order[i]], x ? Basis::X : Basis::Z});
        }
        const auto branches = enumerate_branches(s, plan);
        ASSERT_EQ(branches.size(), std::size_t{1} << steps);
        double total = 0.0;
        for (const auto& b : branches) {
            total += b.probability;
            oracle::Vec v = oracle::to_vec(s);
            for (std::size_t i = 0; i < steps; ++i) {
                v = oracle::projector(static_cast<int>(order[i]), static_cast<int>(n), xb[i], b.outcomes[i]) * v;
            }
            EXPECT_NEAR(b.probability, v.squaredNorm(), kTol);
        }
        EXPECT_NEAR(total, 1.0, kTol);
    }
}

// ---------- extraction and fidelity ----------

TEST(Extract, Examples)
{
    const QubitLabel q("q"), r("r");
    const auto s = tensor(single_qubit_state(q, kets::zero()),
                          bell_state(BellKind::PsiMinus, r, QubitLabel("t")));
    const auto e = extract_single_qubit(s, q);
    EXPECT_NEAR(fidelity_up_to_phase(e, kets::zero()), 1.0, kTol);
    EXPECT_NEAR(std::abs(e[1]), 0.0, kTol);

    const auto phi = bell_state(BellKind::PhiPlus, q, r);
    EXPECT_THROW(extract_single_qubit(phi, q), NotProductError);
    EXPECT_THROW(extract_single_qubit(phi, r), NotProductError);
    EXPECT_NEAR(product_residual(phi, q), 0.5, kTol);
}

TEST(Extract, RecoversFactorOfRandomProducts)
{
    RandomSource rng(808);
    for (int trial = 0; trial < 200; ++trial) {
        const QubitState v = random_qubit_state(rng);
        const std::size_t n = 1 + rng.below(3);
        const auto rest = random_state(n, rng);
        const auto s = tensor(rest, single_qubit_state(QubitLabel("v"), v)).reordered([&] {
            std::vector<QubitLabel> order{QubitLabel("v")};
            for (const auto& l : rest.labels()) order.push_back(l);
            return order;
        }());
        EXPECT_NEAR(fidelity_up_to_phase(extract_single_qubit(s, QubitLabel("v")), v), 1.0, kTol);
        EXPECT_LT(product_residual(s, QubitLabel("v")), 1e-12);
    }
}

TEST(Fidelity, Examples)
{
    EXPECT_NEAR(fidelity_up_to_phase(kets::zero(), kets::zero()), 1.0, kTol);
    EXPECT_NEAR(fidelity_up_to_phase(kets::zero(), kets::one()), 0.0, kTol);
    for (double theta : {0.0, 0.3, 1.0, std::numbers::pi, 5.0}) {
        const Amplitude ph = std::polar(1.0, theta);
        const QubitState p = kets::plus();
        EXPECT_NEAR(fidelity_up_to_phase(p, {ph * p[0], ph * p[1]}), 1.0, kTol);
    }
    EXPECT_THROW(fidelity_up_to_phase({1.0, 1.0}, kets::zero()), ValidationError);
}

TEST(Fidelity, CheckedQubitStateValidates)
{
    EXPECT_THROW(checked_qubit_state(2.0, 0.0), ValidationError);
    EXPECT_THROW(checked_qubit_state(std::nan(""), 0.0), ValidationError);
    const auto q = checked_qubit_state(0.6, Amplitude(0.0, 0.8));
    EXPECT_NEAR(std::abs(q[1]), 0.8, kTol);
}

// ---------- reordering and rendering ----------

TEST(Reorder, PermutesBitsAndRejectsNonPermutations)
{
    const auto labels = make_labels(3);
    const auto s = make_basis_state(labels, "100");
    const auto r = s.reordered({labels[2], labels[0], labels[1]});
    EXPECT_EQ(r.amplitude("010"), Amplitude(1.0));
    EXPECT_THROW(s.reordered({labels[0], labels[0], labels[1]}), LabelError);
    EXPECT_THROW(s.reordered({labels[0], labels[1]}), LabelError);
}

TEST(Render, FormatsAmplitudesAndStates)
{
    EXPECT_EQ(format_amplitude({0.5, 0.0}), "0.5");
    EXPECT_EQ(format_amplitude({0.0, -1.0}), "-1i");
    EXPECT_EQ(format_amplitude({0.25, 0.5}), "0.25+0.5i");
    EXPECT_EQ(format_amplitude({1e-14, 0.0}), "0");
    const auto s = make_basis_state(make_labels(2), "01");
    EXPECT_NE(s.to_string().find("|01"), std::string::npos);
}
