#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "rabi3/exact.hpp"
#include "rabi3/observables.hpp"
#include "rabi3/transform.hpp"

using namespace rabi3;
using Catch::Approx;

namespace {

// Partial trace over the FIRST qubit instead of the third; used to check
// that the reduced state does not depend on which qubit is discarded.
Eigen::Matrix4d rdm_tracing_first_qubit(const JointState& s) {
    const Eigen::MatrixXd q = qubit_field_amplitudes(s);
    const Eigen::Matrix<double, 8, 8> rho8 = q * q.transpose();
    Eigen::Matrix4d rho = Eigen::Matrix4d::Zero();
    for (int p = 0; p < 4; ++p)
        for (int pp = 0; pp < 4; ++pp)
            rho(p, pp) = rho8(p, pp) + rho8(4 + p, 4 + pp);
    return rho;
}

} // namespace

TEST_CASE("collective-level embedding is an isometry", "[observables]") {
    const auto d = dicke_embedding();
    CHECK((d.transpose() * d - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() < 1e-14);

    const double r3 = 1.0 / std::sqrt(3.0);
    CHECK(d(7, 0) == 1.0);  // lowest level -> |sss>
    CHECK(d(3, 1) == Approx(r3));
    CHECK(d(5, 1) == Approx(r3));
    CHECK(d(6, 1) == Approx(r3));
    CHECK(d(1, 2) == Approx(r3));
    CHECK(d(2, 2) == Approx(r3));
    CHECK(d(4, 2) == Approx(r3));
    CHECK(d(0, 3) == 1.0);  // highest level -> |eee>
    CHECK(d.cwiseAbs().sum() == Approx(2.0 + 6.0 * r3));  // no stray entries

    const Eigen::Vector4d spin(0.5, -0.5, 0.5, -0.5);
    CHECK(dicke_to_qubits(spin).norm() == Approx(spin.norm()).margin(1e-14));
}

TEST_CASE("raw reduced state of the decoupled ground state", "[observables]") {
    // at g = 0 the ground state is |-x>^(x)3, whose two-qubit marginal has
    // every entry +-1/4
    const ExactGround sol = solve_exact(ModelParams{1.0, 1.0, 0.0, 20});
    const Eigen::Matrix4d raw = two_qubit_rdm_raw(sol.state);
    const Eigen::Matrix4d sign{{1, -1, -1, 1}, {-1, 1, 1, -1}, {-1, 1, 1, -1}, {1, -1, -1, 1}};
    CHECK((raw - 0.25 * sign).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(!is_x_form(raw));
    CHECK(is_x_form(two_qubit_rdm(sol.state).rho));
}

TEST_CASE("reduced state does not depend on the traced qubit", "[observables][property]") {
    for (double g : {0.0, 0.3, 0.5, 0.9}) {
        CAPTURE(g);
        const ExactGround sol = solve_exact(ModelParams{1.0, 1.0, g, 40});
        const Eigen::Matrix4d third = two_qubit_rdm_raw(sol.state);
        const Eigen::Matrix4d first = rdm_tracing_first_qubit(sol.state);
        CHECK((third - first).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("parity projection preserves trace, symmetry, positivity", "[observables][property]") {
    for (double g : {0.0, 0.2, 0.5, 0.8, 1.2}) {
        CAPTURE(g);
        const ExactGround sol = solve_exact(ModelParams{1.0, 1.0, g, 50});
        TwoQubitRDM r = two_qubit_rdm(sol.state);
        CHECK_NOTHROW(r.validate());
    }
}

TEST_CASE("moment formulas reproduce the projected trace of the transformed state",
          "[observables]") {
    const double wa = 1.0, wc = 1.0, g = 0.5;
    const TransformedSolution sol = transformed_ground(wa, wc, g, 60);
    const TwoQubitRDM traced = two_qubit_rdm(sol.state);
    const TwoQubitRDM direct = rdm_from_moments(sol.coeffs.chi, sol.coeffs.K[0]);
    CHECK((traced.rho - direct.rho).cwiseAbs().maxCoeff() < 1e-10);
    // largest entry discarded by the projection, frozen reference
    CHECK(traced.off_x_residual == Approx(0.23685472161586602).margin(1e-9));
}

TEST_CASE("x-form entanglement agrees with partial-transpose negativity",
          "[observables][property]") {
    for (double g : {0.1, 0.3, 0.5, 0.8, 1.1}) {
        CAPTURE(g);
        const ExactGround sol = solve_exact(ModelParams{1.0, 1.0, g, 50});
        const TwoQubitRDM r = two_qubit_rdm(sol.state);
        const double n = pairwise_entanglement(r);  // cross-checks internally too
        CHECK(n == Approx(pt_negativity(r.rho)).margin(1e-10));
    }
}

TEST_CASE("entanglement probes match the frozen reference", "[observables]") {
    const auto ent_exact = [](double wc, double g) {
        const ExactGround sol = solve_exact(ModelParams{1.0, wc, g, 60});
        return pairwise_entanglement(two_qubit_rdm(sol.state));
    };
    CHECK(ent_exact(1.0, 0.5) == Approx(0.0314630177870841).margin(1e-9));
    CHECK(ent_exact(1.0, 0.8) == Approx(0.04809648508720371).margin(1e-9));
    CHECK(ent_exact(0.8, 0.5) == Approx(0.03029216575634852).margin(1e-9));
    CHECK(ent_exact(1.2, 0.5) == Approx(0.031478605064100273).margin(1e-9));

    const auto ent_transformed = [](double wc, double g) {
        const double chi = solve_chi(1.0, wc, g);
        const TransformCoeffs c = coeffs_at(1.0, wc, g, chi);
        return pairwise_entanglement(rdm_from_moments(chi, c.K[0]));
    };
    CHECK(ent_transformed(1.0, 0.5) == Approx(0.027570374881540294).margin(1e-9));
    CHECK(ent_transformed(1.0, 0.8) == Approx(0.020500837452868792).margin(1e-9));
    CHECK(ent_transformed(0.8, 0.5) == Approx(0.023027968314566938).margin(1e-9));
    CHECK(ent_transformed(1.2, 0.5) == Approx(0.02921170416569352).margin(1e-9));
}

TEST_CASE("non-x-form input is rejected", "[observables]") {
    const ExactGround sol = solve_exact(ModelParams{1.0, 1.0, 0.0, 20});
    TwoQubitRDM raw;
    raw.rho = two_qubit_rdm_raw(sol.state);
    CHECK_THROWS_AS(pairwise_entanglement(raw), NotXForm);
}

TEST_CASE("fidelity between transformed and exact ground states", "[observables]") {
    const int cutoff = 60;
    const auto f = [&](double wc, double g) {
        const ExactGround ex = solve_exact(ModelParams{1.0, wc, g, cutoff});
        const TransformedSolution tr = transformed_ground(1.0, wc, g, cutoff);
        return fidelity(tr.state, ex.state);
    };
    CHECK(f(0.8, 0.5) == Approx(0.9971484874515494).margin(1e-9));
    CHECK(f(1.0, 0.5) == Approx(0.9990815388280794).margin(1e-9));
    CHECK(f(1.2, 0.5) == Approx(0.9996237996540938).margin(1e-9));

    const ExactGround a = solve_exact(ModelParams{1.0, 1.0, 0.2, 30});
    const ExactGround b = solve_exact(ModelParams{1.0, 1.0, 0.2, 40});
    CHECK_THROWS_AS(fidelity(a.state, b.state), DimensionMismatch);
    CHECK(fidelity(a.state, a.state) == Approx(1.0).margin(1e-14));
}

TEST_CASE("transformed reduced state from moments is a valid state", "[observables][property]") {
    for (double g : {0.0, 0.4, 0.9, 1.5, 2.5}) {
        CAPTURE(g);
        const double chi = solve_chi(1.0, 1.0, g);
        const TransformCoeffs c = coeffs_at(1.0, 1.0, g, chi);
        TwoQubitRDM r = rdm_from_moments(chi, c.K[0]);
        CHECK_NOTHROW(r.validate());
        CHECK(is_x_form(r.rho));
    }
}
