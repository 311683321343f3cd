#include <doctest.h>

#include "tropwall/jump_engine.hpp"
#include "tropwall/numeric.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace tw;

namespace {
constexpr double kPi = std::numbers::pi;
const cplx I1(0, 1);
}  // namespace

TEST_CASE("basic integral is a Bessel function when c = 1, zeta = i") {
    // the real part cancels under s -> -s, and |I| <= int exp(-2 pi R cosh s) ds = 2 K_0(2 pi R)
    for (double R : {1.0, 2.0, 5.0}) {
        auto v = basic_integral(1.0, 0, I1, R);
        // real part vanishes by the s -> -s symmetry
        CHECK(std::abs(v.value.real()) < 1e-12 * std::abs(v.value));
        CHECK(std::abs(v.value) <= 2 * std::cyl_bessel_k(0, 2 * kPi * R) * (1 + 1e-12));
        CHECK(std::isfinite(v.est_error));
    }
}

TEST_CASE("basic integral symmetries and preconditions") {
    cplx c(1, 0.5), zeta(0.3, 1.2);
    auto a = basic_integral(c, 0, zeta, 2);
    auto b = basic_integral(std::conj(c), 0, std::conj(zeta), 2);
    CHECK(std::abs(b.value - std::conj(a.value)) < 1e-12 * std::abs(a.value));
    CHECK_THROWS_AS(basic_integral(1.0, 0, -2.0, 1), std::invalid_argument);  // zeta on the ray
    CHECK_THROWS(basic_integral(0.0, 0, I1, 1));
    CHECK_THROWS(basic_integral(1.0, 2.0, I1, 1));
    // small rotations of the contour do not cross zeta and leave the value unchanged
    auto r = basic_integral(c, 0.2, zeta, 2);
    CHECK(std::abs(r.value - a.value) < 1e-10 * std::abs(a.value));
}

TEST_CASE("halving the tolerance stays within the reported error") {
    QuadratureSpec loose{1e-8, 12}, tight{1e-13, 14};
    auto a = basic_integral(cplx(1, 1), 0, I1, 3, loose);
    auto b = basic_integral(cplx(1, 1), 0, I1, 3, tight);
    CHECK(std::abs(a.value - b.value) <= std::max(a.est_error, 1e-8 * std::abs(b.value)));
}

TEST_CASE("decay rate and bound") {
    auto rep = bessel_check(1.0, I1, {2, 3, 4, 5, 6, 7, 8});
    CHECK(std::abs(rep.fit.rate / (-2 * kPi) - 1) < 0.01);
    CHECK(rep.fit.power == doctest::Approx(-0.5).epsilon(0.15));
    for (size_t i = 0; i < rep.R.size(); ++i) {
        double bound = rep.bound_constant / (2 * kPi * rep.R[i]) * std::exp(-2 * kPi * rep.R[i]);
        CHECK(std::abs(rep.values[i].value) <= bound * (1 + 1e-12));
    }
    // the bound constant is not uniform: the ratio grows like sqrt(R)
    CHECK(rep.ratio_growth_power == doctest::Approx(0.5).epsilon(0.1));
    auto rep2 = bessel_check(cplx(2, 1), I1, {2, 3, 4, 5, 6});
    CHECK(std::abs(rep2.fit.rate / (-2 * kPi * std::abs(cplx(2, 1))) - 1) < 0.01);
    CHECK(rep.csv().find("# rate") != std::string::npos);
}

TEST_CASE("fit recovers synthetic data") {
    std::vector<double> R{1, 2, 3, 4, 5}, y;
    for (double r : R) y.push_back(0.7 - 3.1 * r - 0.5 * std::log(r));
    auto f = fit_decay(R, y);
    CHECK(f.rate == doctest::Approx(-3.1));
    CHECK(f.power == doctest::Approx(-0.5));
    CHECK(f.log_amplitude == doctest::Approx(0.7));
    CHECK_THROWS(fit_decay({1, 2}, {0, 0}));
}

TEST_CASE("arc integral") {
    CHECK(std::abs(arc_integral(1.0, I1, -8, 0.1).value) < 1e-6);
    CHECK(std::abs(arc_integral(1.0, I1, 8, 0.1).value) < 1e-6);
    CHECK(arc_integral(1.0, I1, 0, 0).value == cplx(0));
    CHECK(std::abs(arc_integral(1.0, I1, 0, 0.1).value) > 1e-6);
}

TEST_CASE("Plemelj jump at first order") {
    auto cfg = CentralChargeConfig::plus_default();
    Charge g = Charge::two(1, 0), e = Charge::two(0, 1);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> lr(-0.6, 0.6);
    std::vector<Charge> choices{g, e, g + e, g * 2 + e};
    std::uniform_int_distribution<int> pick(0, 3);
    for (int t = 0; t < 3; ++t) {
        Charge gp = choices[pick(rng)];
        Charge alpha = choices[pick(rng)];
        auto rep = plemelj_check(gp, alpha, cfg, 2, lr(rng));
        CAPTURE(gp.str());
        CAPTURE(alpha.str());
        CHECK(rep.discrepancy < 1e-6);
    }
    auto same = plemelj_check(g, g, cfg, 3, 0);
    CHECK(same.algebraic_jump == cplx(0));
    CHECK(std::abs(same.numeric_jump) == 0);
    auto none = plemelj_check(g, e, cfg, 3, 0, 0);
    CHECK(none.algebraic_jump == cplx(0));
    auto k2 = plemelj_check(g, e, cfg, 3, 0.1, 1, 2);
    CHECK(k2.discrepancy < 1e-6);
}

TEST_CASE("residue identity for the two-vertex chain") {
    auto rep = residue_check(CentralChargeConfig::plus_default(), EngineConfig::engine_minus_default(), cplx(0, 0.7), 0.5);
    CHECK(std::abs(rep.i3) > 1e-10);
    CHECK(rep.discrepancy <= 1e-6 * std::abs(rep.i3));
    CHECK(rep.discrepancy <= std::max(rep.est_error, 1e-15));
}

TEST_CASE("one-loop jump decays at the Bessel rate") {
    auto rep = one_loop_jump_asymptotics(CentralChargeConfig::critical_default(), I1, {1, 2, 3, 4, 5, 6});
    CHECK(std::abs(rep.fit.rate / rep.expected_rate - 1) < 0.02);
    CHECK(rep.fit.power < -0.3);
    CHECK(rep.fit.power > -1.1);
    CHECK(rep.reflection_error < 1e-10);
}
