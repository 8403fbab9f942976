#pragma once

// Dense exact diagonalization of the truncated model. The Hamiltonian is
// real symmetric in the spin-major basis, so a self-adjoint solver on
// doubles is exact up to roundoff.

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "errors.hpp"
#include "model.hpp"

namespace rabi3 {

struct ExactGround {
    double energy = 0.0;
    JointState state;
    double residual = 0.0;  // ||H psi - E psi||_2
    double conv_gap = 0.0;  // |E(N) - E(2N)| when produced by solve_converged
};

// Fock truncation covering the largest displaced component: its mean photon
// number is bounded by (3*chi/2)^2 with chi <= g/wc, padded by ten standard
// deviations of the Poisson tail plus a constant floor.
inline int auto_cutoff(double wa, double wc, double g) {
    (void)wa;
    const double chi_hat = g / wc;
    const double nbar = 2.25 * chi_hat * chi_hat;
    const int n = int(std::ceil(nbar + 10.0 * std::sqrt(nbar) + 20.0));
    return std::max(30, n);
}

inline ExactGround solve_exact(const ModelParams& p) {
    const Eigen::MatrixXd h = build_hamiltonian(p);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    if (es.info() != Eigen::Success)
        throw NoConvergence("dense solve at dim " + std::to_string(p.dim()));
    ExactGround out;
    out.energy = es.eigenvalues()(0);
    Eigen::VectorXd v = es.eigenvectors().col(0);
    int imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v(imax) < 0.0) v = -v;
    out.residual = (h * v - out.energy * v).norm();
    out.state = JointState{std::move(v), p.cutoff};
    return out;
}

// Doubles the cutoff until two successive ground energies agree to tol.
// Returns the solution at the larger cutoff; conv_gap records the last gap.
inline ExactGround solve_converged(double wa, double wc, double g, double tol = 1e-9,
                                   int start_cutoff = -1) {
    if (!(tol > 0.0))
        throw InvalidParams("tol must be > 0");
    constexpr int ceiling = 512;
    int n = start_cutoff > 0 ? start_cutoff : auto_cutoff(wa, wc, g);
    if (n > ceiling)
        throw CutoffCeiling("starting cutoff " + std::to_string(n) + " exceeds " +
                            std::to_string(ceiling));
    ExactGround prev = solve_exact(ModelParams{wa, wc, g, n});
    while (true) {
        const int n2 = 2 * n;
        if (n2 > ceiling)
            throw CutoffCeiling("needed cutoff " + std::to_string(n2) + " exceeds " +
                                std::to_string(ceiling) + " at tol " + std::to_string(tol));
        ExactGround next = solve_exact(ModelParams{wa, wc, g, n2});
        next.conv_gap = std::abs(next.energy - prev.energy);
        if (next.conv_gap < tol) return next;
        n = n2;
        prev = std::move(next);
    }
}

} // namespace rabi3
