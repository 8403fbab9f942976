#pragma once

// Three identical qubits coupled to a single bosonic mode through the
// collective spin-3/2 operators:
//
//   H = wa*Jx + wc*a^dag a + g*(a + a^dag)*Jz
//
// The joint basis is spin-major: index = m_idx*(cutoff+1) + n, where
// m_idx = 0..3 runs over Jz eigenvalues (-3/2, -1/2, +1/2, +3/2) and
// n = 0..cutoff over Fock levels. H is real symmetric in this basis.

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "errors.hpp"

namespace rabi3 {

struct ModelParams {
    double wa = 1.0;  // qubit splitting (serves as the energy unit)
    double wc = 1.0;  // oscillator frequency
    double g = 0.0;   // qubit-oscillator coupling
    int cutoff = 30;  // Fock truncation; field dimension is cutoff+1

    void validate() const {
        if (!(wa >= 0.0) || !std::isfinite(wa))
            throw InvalidParams("wa must be finite and >= 0, got " + std::to_string(wa));
        if (!(wc > 0.0) || !std::isfinite(wc))
            throw InvalidParams("wc must be finite and > 0, got " + std::to_string(wc));
        if (!(g >= 0.0) || !std::isfinite(g))
            throw InvalidParams("g must be finite and >= 0, got " + std::to_string(g));
        if (cutoff < 1)
            throw InvalidParams("cutoff must be >= 1, got " + std::to_string(cutoff));
    }
    int field_dim() const { return cutoff + 1; }
    int dim() const { return 4 * (cutoff + 1); }
};

inline int joint_index(int m_idx, int n, int cutoff) { return m_idx * (cutoff + 1) + n; }

// Collective spin-3/2 operators in the ordered Jz eigenbasis (-3/2..+3/2).
inline Eigen::Matrix4d spin_jz() {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    m.diagonal() << -1.5, -0.5, 0.5, 1.5;
    return m;
}

// <m+1|J+|m> = sqrt(j(j+1) - m(m+1)) with j = 3/2.
inline Eigen::Matrix4d spin_jplus() {
    Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
    const double s3 = std::sqrt(3.0);
    m(1, 0) = s3;
    m(2, 1) = 2.0;
    m(3, 2) = s3;
    return m;
}

inline Eigen::Matrix4d spin_jminus() { return spin_jplus().transpose(); }

inline Eigen::Matrix4d spin_jx() { return 0.5 * (spin_jplus() + spin_jminus()); }

// Truncated annihilation operator: <n-1|a|n> = sqrt(n).
inline Eigen::MatrixXd fock_lower(int cutoff) {
    const int d = cutoff + 1;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d, d);
    for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(double(n));
    return a;
}

inline Eigen::MatrixXd fock_number(int cutoff) {
    const int d = cutoff + 1;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
    for (int n = 0; n < d; ++n) m(n, n) = double(n);
    return m;
}

// a + a^dag.
inline Eigen::MatrixXd fock_position(int cutoff) {
    Eigen::MatrixXd a = fock_lower(cutoff);
    return Eigen::MatrixXd(a + a.transpose());
}

inline Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline Eigen::MatrixXd build_hamiltonian(const ModelParams& p) {
    p.validate();
    const int d = p.field_dim();
    const Eigen::MatrixXd eye_f = Eigen::MatrixXd::Identity(d, d);
    const Eigen::MatrixXd eye_s = Eigen::MatrixXd::Identity(4, 4);
    Eigen::MatrixXd h = p.wa * kron(spin_jx(), eye_f);
    h += p.wc * kron(eye_s, fock_number(p.cutoff));
    h += p.g * kron(spin_jz(), fock_position(p.cutoff));
    return h;
}

// Real coherent state |alpha> in the truncated Fock basis, built by the
// recurrence v_0 = exp(-alpha^2/2), v_n = v_{n-1}*alpha/sqrt(n). The
// pre-normalization weight beyond the cutoff must stay below 1e-10,
// otherwise the truncation cannot represent the state.
inline Eigen::VectorXd coherent_vector(double alpha, int cutoff) {
    if (cutoff < 1 || !std::isfinite(alpha))
        throw InvalidParams("coherent_vector needs finite alpha and cutoff >= 1");
    const int d = cutoff + 1;
    Eigen::VectorXd v(d);
    v(0) = std::exp(-0.5 * alpha * alpha);
    for (int n = 1; n < d; ++n) v(n) = v(n - 1) * alpha / std::sqrt(double(n));
    const double tail = 1.0 - v.squaredNorm();
    if (tail > 1e-10)
        throw TailTooHeavy("alpha=" + std::to_string(alpha) + " cutoff=" + std::to_string(cutoff) +
                           " tail=" + std::to_string(tail));
    v.normalize();
    return v;
}

// Joint qubit-field state in the spin-major basis.
struct JointState {
    Eigen::VectorXd amp;
    int cutoff = 0;

    void validate() const {
        if (cutoff < 1 || amp.size() != 4 * (cutoff + 1))
            throw DimensionMismatch("state length " + std::to_string(amp.size()) +
                                    " does not match cutoff " + std::to_string(cutoff));
    }
    double norm() const { return amp.norm(); }
};

} // namespace rabi3
