#pragma once

// Independent dense-matrix reference model. Everything here is built from
// full 2^n x 2^n operators via Kronecker products, sharing no code with the
// library's in-place amplitude updates. Qubit 0 is the most significant
// tensor factor.

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <array>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "bqtsim/quantum_core.hpp"

namespace oracle {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline Mat mat2(cd a, cd b, cd c, cd d)
{
    Mat m(2, 2);
    m << a, b, c, d;
    return m;
}

inline const double kS = 1.0 / std::sqrt(2.0);

inline Mat I2() { return Mat::Identity(2, 2); }
inline Mat X2() { return mat2(0, 1, 1, 0); }
inline Mat Z2() { return mat2(1, 0, 0, -1); }
inline Mat iY2() { return mat2(0, 1, -1, 0); }
inline Mat H2() { return mat2(kS, kS, kS, -kS); }

inline Mat from_gate(const bqtsim::core::SingleQubitGate& g)
{
    return mat2(g.u00(), g.u01(), g.u10(), g.u11());
}

inline Mat kron(const Mat& a, const Mat& b)
{
    return Eigen::kroneckerProduct(a, b).eval();
}

inline Vec kron(const Vec& a, const Vec& b)
{
    return Eigen::kroneckerProduct(a, b).eval();
}

// op acting on qubit k of n.
inline Mat embed(const Mat& op, int k, int n)
{
    Mat out = Mat::Identity(1, 1);
    for (int q = 0; q < n; ++q) {
        out = kron(out, q == k ? op : I2());
    }
    return out;
}

inline Mat proj(int bit)
{
    return bit == 0 ? mat2(1, 0, 0, 0) : mat2(0, 0, 0, 1);
}

// CNOT = |0><0|_c (x) I + |1><1|_c (x) X_t.
inline Mat cnot(int control, int target, int n)
{
    return embed(proj(0), control, n) + embed(proj(1), control, n) * embed(X2(), target, n);
}

// Projector onto outcome `bit` of qubit k in Z (x_basis=false) or X.
inline Mat projector(int k, int n, bool x_basis, int bit)
{
    Mat p = proj(bit);
    if (x_basis) {
        p = H2() * p * H2();
    }
    return embed(p, k, n);
}

inline Vec qubit(cd c0, cd c1)
{
    Vec v(2);
    v << c0, c1;
    return v;
}

inline Vec ket(const std::string& bits)
{
    Vec v = Vec::Ones(1);
    for (char c : bits) {
        v = kron(v, c == '0' ? qubit(1, 0) : qubit(0, 1));
    }
    return v;
}

// Bell states from their defining sums, in PhiPlus, PhiMinus, PsiPlus,
// PsiMinus order.
inline Vec bell(int kind)
{
    switch (kind) {
    case 0: return kS * (ket("00") + ket("11"));
    case 1: return kS * (ket("00") - ket("11"));
    case 2: return kS * (ket("01") + ket("10"));
    default: return kS * (ket("01") - ket("10"));
    }
}

inline Vec to_vec(const bqtsim::core::StateVector& s)
{
    Vec v(static_cast<Eigen::Index>(s.dimension()));
    for (std::size_t i = 0; i < s.dimension(); ++i) {
        v(static_cast<Eigen::Index>(i)) = s.amplitude(i);
    }
    return v;
}

inline Vec to_vec(const bqtsim::core::QubitState& q) { return qubit(q[0], q[1]); }

// Reduced density matrix of qubit k of an n-qubit pure state.
inline Mat reduced(const Vec& psi, int k, int n)
{
    Mat rho = Mat::Zero(2, 2);
    const Eigen::Index dim = psi.size();
    const Eigen::Index mask = Eigen::Index{1} << (n - 1 - k);
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
            if ((i & ~mask) != (j & ~mask)) continue;
            rho((i & mask) ? 1 : 0, (j & mask) ? 1 : 0) += psi(i) * std::conj(psi(j));
        }
    }
    return rho;
}

// <phi| rho |phi>.
inline double fidelity(const Mat& rho, const Vec& phi)
{
    return (phi.adjoint() * rho * phi)(0, 0).real();
}

// Full bidirectional teleportation evaluated with dense operators. Qubit
// order: a1 b1 a2 b2 A B. Returns per-branch probabilities and the fidelities
// of b1 vs alice and a2 vs bob after the supplied corrections (indexed
// z + 2x).
struct OracleBranch {
    std::array<int, 4> outcomes;  // a1, A, b2, B
    double probability;
    double fidelity_b1;
    double fidelity_a2;
};

inline std::vector<OracleBranch> bqt_branches(const Vec& alice, const Vec& bob, const std::array<Mat, 4>& table)
{
    constexpr int n = 6;
    constexpr int a1 = 0, b1 = 1, a2 = 2, b2 = 3, A = 4, B = 5;
    struct Operators {
        Mat encode;
        std::array<std::array<Mat, 2>, 4> proj;  // a1:Z, A:X, b2:Z, B:X
    };
    static const Operators ops = [=] {
        Operators o;
        o.encode = cnot(B, b2, n) * cnot(A, a1, n);
        const std::array<std::pair<int, bool>, 4> steps{{{a1, false}, {A, true}, {b2, false}, {B, true}}};
        for (std::size_t k = 0; k < 4; ++k) {
            for (int bit = 0; bit < 2; ++bit) {
                o.proj[k][static_cast<std::size_t>(bit)] = projector(steps[k].first, n, steps[k].second, bit);
            }
        }
        return o;
    }();
    std::array<Mat, 4> on_b1, on_a2;
    for (std::size_t k = 0; k < 4; ++k) {
        on_b1[k] = embed(table[k], b1, n);
        on_a2[k] = embed(table[k], a2, n);
    }

    const Vec psi = ops.encode * kron(kron(kron(bell(0), bell(0)), alice), bob);
    std::vector<OracleBranch> out;
    for (int idx = 0; idx < 16; ++idx) {
        const std::array<int, 4> o{(idx >> 3) & 1, (idx >> 2) & 1, (idx >> 1) & 1, idx & 1};
        Vec v = psi;
        for (std::size_t k = 0; k < 4; ++k) {
            v = (ops.proj[k][static_cast<std::size_t>(o[k])] * v).eval();
        }
        const double p = v.squaredNorm();
        v /= std::sqrt(p);
        v = (on_b1[static_cast<std::size_t>(o[0] + 2 * o[1])] * v).eval();
        v = (on_a2[static_cast<std::size_t>(o[2] + 2 * o[3])] * v).eval();
        out.push_back({o, p, fidelity(reduced(v, b1, n), alice), fidelity(reduced(v, a2, n), bob)});
    }
    return out;
}

inline std::array<Mat, 4> reference_corrections()
{
    return {I2(), X2(), Z2(), iY2()};
}

// Probability that both halves of a two-qubit state disagree when measured
// in the same basis.
inline double mismatch(const Vec& pair, bool x_basis)
{
    double total = 0.0;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            if (a != b) {
                total += (projector(1, 2, x_basis, b) * projector(0, 2, x_basis, a) * pair).squaredNorm();
            }
        }
    }
    return total;
}

inline double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace oracle
