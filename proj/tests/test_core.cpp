#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "pdem/catalog.hpp"
#include "pdem/core.hpp"

using namespace pdem;
constexpr double pi = std::numbers::pi;

TEST_CASE("ambiguity presets") {
    auto bdd = ambiguity_reduce(0, 0);
    CHECK(bdd.rho == 0.5);
    CHECK(bdd.sigma == 0.25);
    auto zk = ambiguity_reduce(1, 1);
    CHECK(zk.rho == -0.5);
    CHECK(zk.sigma == 0.25);
    auto lk = ambiguity_reduce(0, 1);
    CHECK(lk.rho == 0.0);
    CHECK(lk.sigma == -0.25);
    auto bas = ambiguity_reduce(2, 0);
    CHECK(bas.rho == -0.5);
    CHECK(bas.sigma == -0.75);

    for (const char* name : {"bdd", "bastard", "zk", "lk"}) {
        auto p = AmbiguityParams::preset(name);
        auto again = ambiguity_reduce(p.xi, p.zeta);
        CHECK(again == p);
        auto pr = p.primed();
        CHECK(pr.xi + pr.eta + pr.zeta == doctest::Approx(-1.0).epsilon(1e-15));
    }
    CHECK_THROWS_AS(AmbiguityParams::preset("nope"), ParameterError);
}

TEST_CASE("interval and grid") {
    auto box = Interval::finite(-pi / 2, pi / 2);
    CHECK(box.contains(0.0));
    CHECK_FALSE(box.contains(pi / 2));
    auto half = Interval::half_line(0.0);
    CHECK(half.contains(1e9));
    CHECK_FALSE(half.hi_finite());
    CHECK_THROWS_AS(Interval(1.0, 0.0), ParameterError);

    Grid g(0.0, 1.0, 101);
    CHECK(g.spacing() == (1.0 - 0.0) / 100.0);
    CHECK(g.node(100) == 1.0);
    CHECK_THROWS(Grid(0.0, 1.0, 2));
}

TEST_CASE("deforming_eval examples") {
    DeformingFunction box(DeformingFamily::TrigSinSq, 0.5, 0.0, Interval::finite(-pi / 2, pi / 2));
    auto v0 = box.eval(0.0);
    CHECK(v0.f == 1.0);
    CHECK(v0.M == 1.0);
    auto ve = box.raw(pi / 2);
    CHECK(ve.f == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(ve.M == doctest::Approx(4.0 / 9.0).epsilon(1e-15));
    CHECK_THROWS_AS(box.eval(2.0), DomainError);

    DeformingFunction eck(DeformingFamily::EckartExp, -2.0, 0.0, Interval::half_line(0.0));
    for (double x : {0.1, 1.0, 3.0, 7.5}) CHECK(eck.eval(x).f == doctest::Approx(std::exp(-2 * x)).epsilon(1e-13));

    DeformingFunction neg(DeformingFamily::TrigSinSq, -1.5, 0.0, Interval::finite(-pi / 2, pi / 2));
    CHECK_THROWS_AS(neg.eval(1.4), NonPositiveError);
}

TEST_CASE("positivity_check") {
    const Interval d = Interval::finite(-pi / 2, pi / 2);
    Grid g(-pi / 2, pi / 2, 1001);
    CHECK(positivity_check(DeformingFunction(DeformingFamily::TrigSinSq, 0.5, 0, d), g).ok);

    auto bad = positivity_check(DeformingFunction(DeformingFamily::TrigSinSq, -1.5, 0, d), g);
    REQUIRE_FALSE(bad.ok);
    REQUIRE(bad.first_violation.has_value());
    CHECK(std::sin(bad.violating_x) * std::sin(bad.violating_x) > 2.0 / 3.0);
    CHECK(bad.violating_f <= 0.0);

    auto flat = positivity_check(DeformingFunction::constant(d), g);
    CHECK(flat.ok);
    CHECK(flat.min_f == 1.0);
}

TEST_CASE("catalog families stay positive on dense grids") {
    for (const auto& e : Catalog::instance().entries()) {
        CAPTURE(e.name);
        const auto p = e.resolve({});
        const auto df = e.deforming(p);
        const Grid g = sampling_grid(e.domain, 10000, 20.0);
        CHECK(positivity_check(df, g).ok);
    }
}

TEST_CASE("zero deformation gives g = 0") {
    const Interval d = Interval::real_line();
    for (auto fam : {DeformingFamily::TrigSinSq, DeformingFamily::HypSinhSq, DeformingFamily::Quadratic,
                     DeformingFamily::Linear, DeformingFamily::Exponential, DeformingFamily::EckartExp,
                     DeformingFamily::Sine, DeformingFamily::TrigMixed}) {
        DeformingFunction df(fam, 0.0, 0.0, d);
        CHECK(df.is_trivial());
        for (double x : {-1.3, 0.2, 2.7}) {
            auto v = df.raw(x);
            CHECK(v.g == 0.0);
            CHECK(v.f == 1.0);
            CHECK(v.f_prime == 0.0);
            CHECK(v.f_second == 0.0);
        }
    }
}

TEST_CASE("analytic derivatives match central differences") {
    std::mt19937_64 rng(20261019);
    for (const auto& e : Catalog::instance().entries()) {
        CAPTURE(e.name);
        const auto df = e.deforming(e.resolve({}));
        const double lo = e.domain.lo_finite() ? *e.domain.lo() : -5.0;
        const double hi = e.domain.hi_finite() ? *e.domain.hi() : 5.0;
        const double scale = hi - lo;
        const double h = 1e-5 * scale;
        std::uniform_real_distribution<double> pick(lo + 0.05 * scale, hi - 0.05 * scale);
        for (int k = 0; k < 100; ++k) {
            const double x = pick(rng);
            const auto v = df.eval(x);
            const double fp = (df.f(x + h) - df.f(x - h)) / (2 * h);
            const double fpp = (df.f(x + h) - 2 * df.f(x) + df.f(x - h)) / (h * h);
            const double ref = std::max({1.0, std::abs(v.f_prime), std::abs(v.f_second)});
            CHECK(std::abs(fp - v.f_prime) / ref < 1e-6);
            CHECK(std::abs(fpp - v.f_second) / ref < 1e-6);
            CHECK(v.M * v.f * v.f == doctest::Approx(1.0).epsilon(1e-15));
        }
    }
}
