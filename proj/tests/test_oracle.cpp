#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <numbers>

#include "pdem/catalog.hpp"
#include "pdem/oracle.hpp"
#include "pdem/ordering.hpp"

using namespace pdem;
constexpr double pi = std::numbers::pi;

namespace {

const Interval kBox = Interval::finite(-pi / 2, pi / 2);

double rel(double a, double b) { return std::abs(a - b) / std::max(1e-12, std::abs(b)); }

const ScalarField zero = [](double) { return 0.0; };

}  // namespace

TEST_CASE("2x2 matrix") {
    TridiagonalOperator op{{2.0, 2.0}, {1.0}, Grid(0.0, 1.0, 4)};
    const auto s = eigenpairs(op, 2, true);
    CHECK(s.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(s.eigenvalues[1] == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(op.sturm_count(0.5) == 0);
    CHECK(op.sturm_count(2.0) == 1);
    CHECK(op.sturm_count(3.5) == 2);
    CHECK_THROWS_AS(eigenpairs(op, 3, false), RangeError);
}

TEST_CASE("Toeplitz second difference") {
    const Grid g(0.0, pi, 1001);
    const double h = g.spacing();
    TridiagonalOperator op{std::vector<double>(999, 2.0 / (h * h)), std::vector<double>(998, -1.0 / (h * h)), g};
    const auto s = eigenpairs(op, 6, false);
    for (std::size_t i = 0; i < 6; ++i) {
        const double k = i + 1.0;
        const double exact = (2.0 - 2.0 * std::cos(k * pi / 1000.0)) / (h * h);
        CHECK(rel(s.eigenvalues[i], exact) < 1e-10);
        CHECK(std::abs(s.eigenvalues[i] - k * k) < k * k * k * k * h * h);
    }
}

TEST_CASE("flat box and oscillator") {
    const auto flat = DeformingFunction::constant(kBox);
    const auto s = eigenpairs(discretize_deformed(flat, zero, Grid(-pi / 2, pi / 2, 2001)), 3, false);
    for (std::size_t i = 0; i < 3; ++i) CHECK(rel(s.eigenvalues[i], (i + 1.0) * (i + 1.0)) < 1e-4);

    const auto line = DeformingFunction::constant(Interval::real_line());
    const auto osc = discretize_deformed(line, [](double x) { return x * x; }, Grid(-10, 10, 4001));
    CHECK(rel(eigenpairs(osc, 1, false).eigenvalues[0], 1.0) < 1e-4);
}

TEST_CASE("deformed box") {
    const auto& e = lookup("box");
    const auto st = e.structure(e.resolve({{"alpha", 0.5}}));
    const auto s = eigenpairs(discretize_deformed(st.df, st.v_eff, Grid(-pi / 2, pi / 2, 4001)), 1, false);
    CHECK(rel(s.eigenvalues[0], 1.5) < 1e-4);
    CHECK(s.grid_meta == GridMeta{-pi / 2, pi / 2, 4001});
}

TEST_CASE("constant mass gives the same matrix") {
    const Grid g(-1.0, 2.0, 301);
    const ScalarField v = [](double x) { return std::sin(x); };
    const auto d = discretize_deformed(DeformingFunction::constant(Interval::real_line()), v, g);
    for (const char* preset : {"bdd", "bastard", "zk", "lk"}) {
        const auto r = discretize_vonroos([](double) { return 1.0; }, AmbiguityParams::preset(preset).primed(), v, g);
        CHECK(r.diag == d.diag);
        CHECK(r.off == d.off);
    }
    CHECK_THROWS_AS(discretize_vonroos([](double) { return 1.0; }, {0, 0, 0}, v, g), ParameterError);
    CHECK_THROWS_AS(discretize_vonroos([](double) { return 0.0; }, AmbiguityParams::bdd().primed(), v, g),
                    NonPositiveError);
}

TEST_CASE("discretization errors") {
    const Grid g(-pi / 2, pi / 2, 101);
    const DeformingFunction bad(DeformingFamily::TrigSinSq, -2.0, 0.0, kBox);
    CHECK_THROWS_AS(discretize_deformed(bad, zero, g), NonPositiveError);
    CHECK_THROWS_AS(discretize_deformed(DeformingFunction::constant(kBox), [](double x) { return 1.0 / x; },
                                        Grid(-1.0, 1.0, 101)),
                    SingularPotential);
}

TEST_CASE("von Roos spectrum matches the deformed spectrum") {
    const auto& e = lookup("box");
    const auto st = e.structure(e.resolve({{"alpha", 0.5}}));
    const Grid g(-pi / 2, pi / 2, 4001);
    const auto ref = eigenpairs(discretize_deformed(st.df, st.v_eff, g), 4, false);
    const auto mass = [&](double x) { return st.df.raw(x).M; };
    for (const char* preset : {"bdd", "zk"}) {
        const OrderingContext ctx{st.df, AmbiguityParams::preset(preset)};
        const ScalarField v = [&](double x) { return recover_initial_potential(ctx, st.v_eff, x); };
        const auto vr = eigenpairs(discretize_vonroos(mass, ctx.amb.primed(), v, g), 4, false);
        for (std::size_t i = 0; i < 4; ++i) {
            CAPTURE(preset);
            CHECK(rel(vr.eigenvalues[i], ref.eigenvalues[i]) < 1e-6);
        }
    }
}

TEST_CASE("quadrature") {
    const Grid a(0.0, pi, 1001);
    CHECK(std::abs(quadrature(a.sample([](double x) { return std::sin(x); }), a) - 2.0) < 1e-10);
    const Grid b(-pi / 2, pi / 2, 1001);
    CHECK(std::abs(quadrature(b.sample([](double x) { return std::cos(x) * std::cos(x); }), b) - pi / 2) < 1e-10);
    const Grid c(0.0, 1.0, 101);
    CHECK(quadrature(c.sample([](double) { return 1.0; }), c) == doctest::Approx(1.0).epsilon(1e-15));
    const Grid even(0.0, 1.0, 100);
    const auto r = quadrature_rule(even.sample([](double) { return 1.0; }), even);
    CHECK_FALSE(r.simpson);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("equivalence check") {
    const Grid g(-pi / 2, pi / 2, 4001);
    // roundoff floor of a stencil with entries ~ 1/h^2
    const double eps_h = 4.0 * std::numeric_limits<double>::epsilon() / (g.spacing() * g.spacing());
    CHECK(equivalence_check(DeformingFunction::constant(kBox), AmbiguityParams::bdd(), zero, g) < eps_h);
    const DeformingFunction fam(DeformingFamily::Sine, 0.3, 0.0, kBox);
    const ScalarField v = [](double x) { return x * x; };
    for (const char* preset : {"bdd", "bastard", "zk", "lk"}) {
        CAPTURE(preset);
        CHECK(equivalence_check(fam, AmbiguityParams::preset(preset), v, g) < 1e-6);
    }
}

TEST_CASE("Sturm count is monotone") {
    const auto& e = lookup("morse");
    const auto st = e.structure(e.resolve({}));
    const auto op = discretize_deformed(st.df, st.v_eff, Grid(-4.0, 20.0, 1001));
    const auto [lo, hi] = op.gershgorin();
    std::size_t prev = 0;
    for (int k = 0; k <= 400; ++k) {
        const auto c = op.sturm_count(lo + (hi - lo) * k / 400.0);
        CHECK(c >= prev);
        prev = c;
    }
    CHECK(op.sturm_count(hi + 1.0) == op.size());
}

TEST_CASE("grid convergence is second order") {
    const auto& e = lookup("box");
    const auto st = e.structure(e.resolve({{"alpha", 0.5}}));
    double prev = 0.0;
    for (std::size_t n : {1001, 2001, 4001, 8001}) {
        const auto s = eigenpairs(discretize_deformed(st.df, st.v_eff, Grid(-pi / 2, pi / 2, n)), 1, false);
        const double err = std::abs(s.eigenvalues[0] - 1.5);
        if (prev > 0.0) {
            CAPTURE(n);
            CHECK(prev / err > 3.5);
            CHECK(prev / err < 4.5);
        }
        prev = err;
    }
}

TEST_CASE("eigenvectors are orthonormal and match the closed ground state") {
    const auto& e = lookup("box");
    const Params p = e.resolve({{"alpha", 0.5}});
    const auto st = e.structure(p);
    const Grid g(-pi / 2, pi / 2, 4001);
    const auto s = eigenpairs(discretize_deformed(st.df, st.v_eff, g), 6, true);
    double worst = 0.0;
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            std::vector<double> prod(g.size());
            for (std::size_t k = 0; k < g.size(); ++k) prod[k] = s.eigenvectors[i][k] * s.eigenvectors[j][k];
            worst = std::max(worst, std::abs(quadrature(prod, g) - (i == j ? 1.0 : 0.0)));
        }
    CHECK(worst < 1e-8);

    std::vector<double> psi(g.size(), 0.0), sq(g.size(), 0.0);
    for (std::size_t k = 1; k + 1 < g.size(); ++k) {
        psi[k] = ground_state_closed(e, p, g.node(k));
        sq[k] = psi[k] * psi[k];
    }
    const double c = 1.0 / std::sqrt(quadrature(sq, g));
    double dev = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) dev = std::max(dev, std::abs(c * psi[k] - s.eigenvectors[0][k]));
    CHECK(dev < 1e-4);
}

TEST_CASE("close levels keep independent eigenvectors") {
    const auto& e = lookup("eckart");
    const auto st = e.structure(e.resolve({{"alpha", -2.0}}));
    const Grid g(1e-4, 40.0, 8001);
    const auto s = eigenpairs(discretize_deformed(st.df, st.v_eff, g), 4, true);
    for (std::size_t i = 0; i + 1 < 4; ++i) CHECK(s.eigenvalues[i] < s.eigenvalues[i + 1]);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            std::vector<double> prod(g.size());
            for (std::size_t k = 0; k < g.size(); ++k) prod[k] = s.eigenvectors[i][k] * s.eigenvectors[j][k];
            CHECK(std::abs(quadrature(prod, g)) < 1e-6);
        }
}
