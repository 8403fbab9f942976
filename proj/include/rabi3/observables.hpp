#pragma once

// Reduced two-qubit state and pairwise entanglement. The collective spin
// states are symmetric Dicke states of three qubits; after embedding and
// tracing out the field and one qubit, the physically meaningful reduced
// matrix is the parity-symmetrized (X-form) part, whose entries coincide
// with the standard symmetric-state moment formulas
//   rho11 = rho44 = (3 + 4<Jz^2>)/24,  rho14 = <J+^2>/6,
//   rho22 = rho23 = rho33 = (9 - 4<Jz^2>)/24.
// Two-qubit basis order: |ee>, |es>, |se>, |ss>.

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "errors.hpp"
#include "model.hpp"

namespace rabi3 {

// Isometry from the four collective levels onto the three-qubit register.
// Qubit bit 0 = e, 1 = s; register index = 4*q1 + 2*q2 + q3.
inline Eigen::Matrix<double, 8, 4> dicke_embedding() {
    Eigen::Matrix<double, 8, 4> d = Eigen::Matrix<double, 8, 4>::Zero();
    const double r3 = 1.0 / std::sqrt(3.0);
    d(7, 0) = 1.0;                              // m=-3/2 -> |sss>
    d(3, 1) = d(5, 1) = d(6, 1) = r3;           // m=-1/2 -> (|ess>+|ses>+|sse>)/sqrt3
    d(1, 2) = d(2, 2) = d(4, 2) = r3;           // m=+1/2 -> (|ees>+|ese>+|see>)/sqrt3
    d(0, 3) = 1.0;                              // m=+3/2 -> |eee>
    return d;
}

inline Eigen::Matrix<double, 8, 1> dicke_to_qubits(const Eigen::Vector4d& spin_amp) {
    return dicke_embedding() * spin_amp;
}

// Register-by-Fock amplitude matrix of a joint state: rows are the eight
// qubit basis states, columns the Fock levels.
inline Eigen::MatrixXd qubit_field_amplitudes(const JointState& s) {
    s.validate();
    const int d = s.cutoff + 1;
    Eigen::MatrixXd spin_by_fock(4, d);
    for (int m = 0; m < 4; ++m) spin_by_fock.row(m) = s.amp.segment(m * d, d).transpose();
    return dicke_embedding() * spin_by_fock;
}

// Partial trace over the field and the third qubit, no symmetrization.
inline Eigen::Matrix4d two_qubit_rdm_raw(const JointState& s) {
    const Eigen::MatrixXd q = qubit_field_amplitudes(s);
    const Eigen::Matrix<double, 8, 8> rho8 = q * q.transpose();
    Eigen::Matrix4d rho = Eigen::Matrix4d::Zero();
    for (int p = 0; p < 4; ++p)
        for (int pp = 0; pp < 4; ++pp)
            rho(p, pp) = rho8(2 * p, 2 * pp) + rho8(2 * p + 1, 2 * pp + 1);
    return rho;
}

struct TwoQubitRDM {
    Eigen::Matrix4d rho = Eigen::Matrix4d::Zero();
    double off_x_residual = 0.0;  // largest magnitude removed by the parity projection

    void validate(double tol = 1e-10) const {
        if (std::abs(rho.trace() - 1.0) > tol)
            throw InvalidParams("rdm trace deviates from 1 by " +
                                std::to_string(std::abs(rho.trace() - 1.0)));
        if ((rho - rho.transpose()).cwiseAbs().maxCoeff() > tol)
            throw InvalidParams("rdm is not symmetric");
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(rho);
        if (es.eigenvalues()(0) < -tol)
            throw InvalidParams("rdm has negative eigenvalue " +
                                std::to_string(es.eigenvalues()(0)));
    }
};

inline bool is_x_form(const Eigen::Matrix4d& m, double tol = 1e-10) {
    double off = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const bool x_slot = (i == j) || (i + j == 3);
            if (!x_slot) off = std::max(off, std::abs(m(i, j)));
        }
    return off <= tol;
}

// Parity-projected (sigma_z x sigma_z twirled) reduced state. The twirl is a
// completely positive unital average, so trace, symmetry and positivity are
// inherited from the raw partial trace.
inline TwoQubitRDM two_qubit_rdm(const JointState& s) {
    const Eigen::Matrix4d raw = two_qubit_rdm_raw(s);
    TwoQubitRDM out;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            const bool x_slot = (i == j) || (i + j == 3);
            if (x_slot) out.rho(i, j) = raw(i, j);
            else out.off_x_residual = std::max(out.off_x_residual, std::abs(raw(i, j)));
        }
    return out;
}

// Reduced state of the transformed ground state from its closed-form
// moments; the exp(-2*chi^2) factor is the overlap of coherent components
// two displacement steps apart.
inline TwoQubitRDM rdm_from_moments(double chi, double k1) {
    if (!std::isfinite(chi) || !std::isfinite(k1))
        throw InvalidParams("rdm_from_moments needs finite chi, K1");
    const double den = 3.0 * (1.0 + k1 * k1);
    const double r11 = 1.0 / 6.0 + 1.0 / den;
    const double r14 = std::sqrt(3.0) * k1 * std::exp(-2.0 * chi * chi) / den;
    const double r22 = k1 * k1 / den;
    TwoQubitRDM out;
    out.rho(0, 0) = out.rho(3, 3) = r11;
    out.rho(0, 3) = out.rho(3, 0) = r14;
    out.rho(1, 1) = out.rho(2, 2) = r22;
    out.rho(1, 2) = out.rho(2, 1) = r22;
    return out;
}

// Doubled sum of the negative eigenvalues of the partial transpose on the
// second qubit.
inline double pt_negativity(const Eigen::Matrix4d& rho) {
    Eigen::Matrix4d pt;
    for (int ia = 0; ia < 2; ++ia)
        for (int ib = 0; ib < 2; ++ib)
            for (int ja = 0; ja < 2; ++ja)
                for (int jb = 0; jb < 2; ++jb)
                    pt(2 * ia + jb, 2 * ja + ib) = rho(2 * ia + ib, 2 * ja + jb);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(pt);
    double neg = 0.0;
    for (int i = 0; i < 4; ++i)
        if (es.eigenvalues()(i) < 0.0) neg -= es.eigenvalues()(i);
    return 2.0 * neg;
}

// Two-branch X-state entanglement
//   2*max{0, |rho23| - sqrt(rho11*rho44), |rho14| - sqrt(rho22*rho33)},
// cross-checked against the partial-transpose negativity, with which it
// agrees for positive X-form matrices.
inline double pairwise_entanglement(const TwoQubitRDM& r) {
    if (!is_x_form(r.rho))
        throw NotXForm("off-X entries exceed 1e-10");
    const Eigen::Matrix4d& m = r.rho;
    const double b1 = std::abs(m(0, 3)) - std::sqrt(std::max(0.0, m(1, 1) * m(2, 2)));
    const double b2 = std::abs(m(1, 2)) - std::sqrt(std::max(0.0, m(0, 0) * m(3, 3)));
    const double val = 2.0 * std::max({0.0, b1, b2});
    const double oracle = pt_negativity(m);
    if (std::abs(val - oracle) > 1e-10)
        throw Error("X-state entanglement " + std::to_string(val) +
                    " disagrees with PT negativity " + std::to_string(oracle));
    return val;
}

// Overlap modulus |<a|b>|; both solver pipelines fix phases so the overlap
// itself is real, and the modulus removes the remaining sign convention.
inline double fidelity(const JointState& a, const JointState& b) {
    a.validate();
    b.validate();
    if (a.cutoff != b.cutoff)
        throw DimensionMismatch("fidelity across cutoffs " + std::to_string(a.cutoff) + " and " +
                                std::to_string(b.cutoff));
    return std::abs(a.amp.dot(b.amp));
}

} // namespace rabi3
