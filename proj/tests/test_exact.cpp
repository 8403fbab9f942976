#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "rabi3/exact.hpp"

using namespace rabi3;
using Catch::Approx;

// Reference ground energies at cutoff 60 from an independent dense solver
// (different language, different eigensolver), frozen before this library
// was written. Truncation error at cutoff 60 for these couplings is < 2e-15.
namespace {
struct Ref {
    double wc, g, energy;
};
constexpr Ref kGround60[] = {
    {0.8, 0.5, -1.6365339890492694},
    {1.0, 0.5, -1.6144016538878707},
    {1.2, 0.5, -1.5997327246837378},
    {1.2, 0.8, -1.851117549607822},
    {1.0, 0.3, -1.5360199538400254},
};
} // namespace

TEST_CASE("ground energies match the frozen reference", "[exact]") {
    for (const auto& r : kGround60) {
        CAPTURE(r.wc, r.g);
        const ExactGround sol = solve_exact(ModelParams{1.0, r.wc, r.g, 60});
        CHECK(sol.energy == Approx(r.energy).margin(1e-9));
        CHECK(sol.residual < 1e-9);
    }
}

TEST_CASE("decoupled limit is -3/2 wa", "[exact]") {
    const ExactGround sol = solve_exact(ModelParams{1.0, 1.0, 0.0, 40});
    CHECK(sol.energy == Approx(-1.5).margin(1e-12));
    // ground state is |-x> (x) vacuum: spin amplitudes (-1,sqrt3,-sqrt3,1)/sqrt8
    // up to global sign, all weight on n = 0
    const int d = 41;
    const double s8 = std::sqrt(8.0), s3 = std::sqrt(3.0);
    const Eigen::VectorXd& v = sol.state.amp;
    CHECK(std::abs(v(0 * d)) == Approx(1.0 / s8).margin(1e-10));
    CHECK(std::abs(v(1 * d)) == Approx(s3 / s8).margin(1e-10));
    CHECK(std::abs(v(2 * d)) == Approx(s3 / s8).margin(1e-10));
    CHECK(std::abs(v(3 * d)) == Approx(1.0 / s8).margin(1e-10));
    CHECK(v(1 * d) * v(0 * d) < 0.0);  // alternating signs
    CHECK(v(2 * d) * v(1 * d) < 0.0);
    CHECK(v(3 * d) * v(2 * d) < 0.0);
}

TEST_CASE("phase convention fixes the largest amplitude positive", "[exact]") {
    const ExactGround sol = solve_exact(ModelParams{1.0, 1.0, 0.5, 30});
    int imax = 0;
    sol.state.amp.cwiseAbs().maxCoeff(&imax);
    CHECK(sol.state.amp(imax) > 0.0);
}

TEST_CASE("energy is variational in the cutoff", "[exact][property]") {
    const double e10 = solve_exact(ModelParams{1.0, 1.0, 0.5, 10}).energy;
    const double e20 = solve_exact(ModelParams{1.0, 1.0, 0.5, 20}).energy;
    const double e40 = solve_exact(ModelParams{1.0, 1.0, 0.5, 40}).energy;
    CHECK(e10 >= e20 - 1e-13);
    CHECK(e20 >= e40 - 1e-13);
    CHECK(e10 > e40);  // strictly better at this coupling
}

TEST_CASE("ground energy decreases with coupling", "[exact][property]") {
    double prev = solve_exact(ModelParams{1.0, 1.0, 0.0, 50}).energy;
    for (double g : {0.2, 0.4, 0.6, 0.8, 1.0}) {
        const double e = solve_exact(ModelParams{1.0, 1.0, g, 50}).energy;
        CHECK(e < prev + 1e-13);
        prev = e;
    }
}

TEST_CASE("cutoff doubling converges and reports the gap", "[exact]") {
    const ExactGround sol = solve_converged(1.0, 1.0, 0.5, 1e-9);
    CHECK(sol.conv_gap < 1e-9);
    CHECK(sol.energy == Approx(-1.6144016538878707).margin(1e-9));
    CHECK(sol.state.cutoff >= 60);  // doubled at least once from the auto start
}

TEST_CASE("cutoff ceiling is enforced", "[exact]") {
    // g/wc = 15 would need ~750 Fock levels before the first solve
    CHECK_THROWS_AS(solve_converged(1.0, 0.2, 3.0), CutoffCeiling);
    CHECK_THROWS_AS(solve_converged(1.0, 1.0, 0.5, -1.0), InvalidParams);
}

TEST_CASE("automatic cutoff policy", "[exact]") {
    CHECK(auto_cutoff(1.0, 0.8, 0.5) == 31);
    CHECK(auto_cutoff(1.0, 1.0, 0.5) == 30);
    CHECK(auto_cutoff(1.0, 1.2, 0.5) == 30);
    CHECK(auto_cutoff(1.0, 1.2, 0.8) == 31);
    CHECK(auto_cutoff(1.0, 1.0, 3.0) == 86);
    CHECK(auto_cutoff(1.0, 1.0, 0.0) == 30);  // floor
}
