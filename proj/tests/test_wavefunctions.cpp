#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "pdem/catalog.hpp"
#include "pdem/oracle.hpp"
#include "pdem/wavefunctions.hpp"

using namespace pdem;
constexpr double pi = std::numbers::pi;

namespace {

std::vector<double> interior(const CatalogEntry& e, std::size_t n) {
    double lo = e.window_lo;
    double hi = e.window_hi;
    if (e.domain.bounded()) {
        lo = *e.domain.lo();
        hi = *e.domain.hi();
    }
    std::vector<double> xs;
    for (std::size_t k = 1; k <= n; ++k) xs.push_back(lo + (hi - lo) * static_cast<double>(k) / (n + 1.0));
    return xs;
}

double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace

TEST_CASE("seed polynomial") {
    for (const auto& e : Catalog::instance().entries()) {
        const auto p = polynomial_chain(e, {}, 0);
        CHECK(p.coeffs == std::vector<double>{1.0});
        CHECK(p.degree == 0);
    }
}

TEST_CASE("first polynomials") {
    const auto& box = lookup("box");
    for (double a : {-0.5, 0.5}) {
        const auto p = polynomial_chain(box, {{"alpha", a}}, 1);
        REQUIRE(p.coeffs.size() == 2);
        CHECK(p.coeffs[0] == 0.0);
        CHECK(p.coeffs[1] == doctest::Approx(3 * (1 + a)).epsilon(1e-14));
    }
    const auto& o = lookup("oscillator_3d");
    for (double l : {0.0, 1.0, 2.0}) {
        const Params p = o.resolve({{"l", l}});
        const auto c = solve_chain(o.structure(p), 1);
        CHECK(c.lambda[0] == doctest::Approx(-l - 1).epsilon(1e-14));
        const auto poly = polynomial_chain(o, p, 1);
        CHECK(poly.coeffs[0] == doctest::Approx(2 * c.lambda[0] - 1).epsilon(1e-14));
        CHECK(poly.coeffs[1] == doctest::Approx(2 * c.mu[0] + p.get("alpha")).epsilon(1e-14));
    }
}

TEST_CASE("class 3 top coefficient cancels") {
    const auto& e = lookup("scarf_i");
    for (std::size_t n = 1; n <= 6; ++n) {
        const auto p = polynomial_chain(e, {}, n);
        CAPTURE(n);
        CHECK(std::abs(p.cancelled_top) < 1e-12 * max_abs(p.coeffs));
    }
}

TEST_CASE("class 1 and 2 polynomials have full degree") {
    for (const auto& e : Catalog::instance().entries()) {
        const Params p = e.resolve({});
        if (e.structure(p).sp.cls == SpClass::Class3) continue;
        for (std::size_t n = 1; n <= 6; ++n) {
            const auto poly = polynomial_chain(e, p, n);
            CAPTURE(e.name);
            CAPTURE(n);
            CHECK(poly.degree == n);
            CHECK(std::abs(poly.coeffs.back()) > 1e-12 * max_abs(poly.coeffs));
        }
    }
}

TEST_CASE("numeric ground state matches the printed one") {
    for (const auto& e : Catalog::instance().entries()) {
        const Params p = e.resolve({});
        const auto xs = interior(e, 101);
        const double r0 = ground_state_numeric(e, p, xs[50]) / ground_state_closed(e, p, xs[50]);
        double worst = 0.0;
        for (double x : xs) worst = std::max(worst, std::abs(ground_state_numeric(e, p, x) / ground_state_closed(e, p, x) / r0 - 1));
        CAPTURE(e.name);
        CHECK(worst < 1e-8);
    }
    // alpha = -2 decays double-exponentially: compare logs
    const auto& eck = lookup("eckart");
    for (double a : {-2.0, -1.0}) {
        const Params p = eck.resolve({{"A", 1.5}, {"B", 2.5}, {"alpha", a}});
        const BoundState g(eck, p, 0);
        const double d0 = g.log_eval(1.0).log_abs - eck.printed_ground_state_log(p, 1.0);
        for (double x : {0.05, 0.3, 2.0, 5.0, 7.5}) {
            CAPTURE(a);
            CAPTURE(x);
            const double d = g.log_eval(x).log_abs - eck.printed_ground_state_log(p, x);
            CHECK(std::abs(d - d0) < 1e-8);
        }
    }
}

TEST_CASE("undeformed oscillator-like ground state") {
    const auto& e = lookup("shifted_oscillator");
    const Params p{{"omega", 2}, {"b", 0}, {"alpha", 0}, {"beta", 0}};
    for (double x : {-3.0, -1.0, 0.5, 2.0})
        CHECK(ground_state_numeric(e, p, x) == doctest::Approx(std::exp(-x * x / 2)).epsilon(1e-13));
}

TEST_CASE("excited states") {
    const auto& box = lookup("box");
    CHECK(excited_state_eval(box, {{"alpha", 0.5}}, 1, 0.0) == 0.0);

    // alpha = 0: psi_n ~ cos x C_n^(1)(sin x)
    for (std::size_t n = 1; n <= 5; ++n) {
        auto gegen = [n](double t) {
            double c0 = 1.0, c1 = 2.0 * t;
            if (n == 0) return c0;
            for (std::size_t k = 1; k < n; ++k) {
                const double c2 = 2.0 * t * c1 - c0;
                c0 = c1;
                c1 = c2;
            }
            return c1;
        };
        const BoundState psi(box, {{"alpha", 0.0}}, n);
        std::vector<double> a, b;
        for (double x : interior(box, 101)) {
            a.push_back(psi(x));
            b.push_back(std::cos(x) * gegen(std::sin(x)));
        }
        std::size_t jmax = 0;
        for (std::size_t j = 0; j < b.size(); ++j)
            if (std::abs(b[j]) > std::abs(b[jmax])) jmax = j;
        const double c = a[jmax] / b[jmax];
        double dev = 0.0;
        for (std::size_t j = 0; j < b.size(); ++j) dev = std::max(dev, std::abs(a[j] - c * b[j]));
        CAPTURE(n);
        CHECK(dev < 1e-6 * max_abs(a));
    }

    for (const auto& e : Catalog::instance().entries()) {
        const Params p = e.resolve({});
        for (double x : interior(e, 23))
            CHECK(excited_state_eval(e, p, 0, x) == doctest::Approx(ground_state_numeric(e, p, x)).epsilon(1e-12));
    }
}

TEST_CASE("normalization") {
    const Grid g(0.0, 1.0, 101);
    CHECK(normalize(g.sample([](double) { return 1.0; }), g).norm_constant == doctest::Approx(1.0).epsilon(1e-14));
    const Grid b(-pi / 2, pi / 2, 2001);
    CHECK(normalize(b.sample([](double x) { return std::cos(x); }), b).norm_constant ==
          doctest::Approx(std::sqrt(2 / pi)).epsilon(1e-10));
    CHECK_THROWS_AS(normalize(g.sample([](double) { return 0.0; }), g), ZeroNorm);

    const auto& box = lookup("box");
    for (std::size_t n = 0; n <= 3; ++n) {
        const BoundState psi(box, {{"alpha", 0.5}}, n);
        std::vector<double> v(b.size(), 0.0);
        for (std::size_t j = 1; j + 1 < b.size(); ++j) v[j] = psi(b.node(j));
        const auto nv = normalize(v, b);
        std::vector<double> sq(b.size());
        for (std::size_t j = 0; j < b.size(); ++j) sq[j] = nv.samples[j] * nv.samples[j];
        CHECK(std::abs(quadrature(sq, b) - 1.0) < 1e-8);
    }
}

TEST_CASE("factorization annihilates the ground state") {
    for (const auto& e : Catalog::instance().entries()) {
        const Params p = e.resolve({});
        const BoundState g(e, p, 0);
        const auto xs = interior(e, 101);
        CAPTURE(e.name);
        CHECK(factorization_residual(g, xs, 1e-3 * (xs[1] - xs[0])) < 1e-8);
    }
}

TEST_CASE("box states are admissible") {
    const auto& box = lookup("box");
    for (std::size_t n = 0; n <= 10; ++n) {
        const auto v = admissibility_check(box, {{"alpha", 0.5}}, n);
        CAPTURE(n);
        CAPTURE(v.integrability_evidence);
        CAPTURE(v.hermiticity_evidence);
        CHECK(v.admissible);
    }
}

TEST_CASE("hyperbolic PT fails Hermiticity") {
    const auto& e = lookup("hyperbolic_poschl_teller");
    for (std::size_t n = 0; n <= 3; ++n) {
        const auto v = admissibility_check(e, {{"A", 1}, {"alpha", 0.5}}, n);
        CAPTURE(n);
        CAPTURE(v.hermiticity_evidence);
        CHECK_FALSE(v.hermiticity_ok);
        CHECK_FALSE(v.admissible);
        if (n == 0) CHECK(v.square_integrable);
    }
}

TEST_CASE("counting rules agree with the numeric verdict") {
    struct Case {
        const char* name;
        Params p;
    };
    const std::vector<Case> cases = {
        {"coulomb", {{"e2", 1}, {"l", 0}, {"alpha", 0.1}}},
        {"coulomb", {{"e2", 1}, {"l", 1}, {"alpha", 0.05}}},
        {"morse", {{"A", 1}, {"B", 1}, {"alpha", 0.5}}},
        {"morse", {{"A", 1}, {"B", 1}, {"alpha", 2.0}}},
        {"morse", {{"A", 3}, {"B", 1}, {"alpha", 0.2}}},
        {"eckart", {{"A", 1.5}, {"B", 2.5}, {"alpha", -1}}},
        {"eckart", {{"A", 1.5}, {"B", 2.5}, {"alpha", 0.5}}},
    };
    for (const auto& c : cases) {
        const auto& e = lookup(c.name);
        const auto count = bound_state_count(e, c.p);
        REQUIRE(count.kind != BoundCount::Kind::Infinite);
        for (std::size_t n = 0; n <= count.count; ++n) {
            const auto v = admissibility_check(e, c.p, n);
            CAPTURE(std::string(c.name));
            CAPTURE(c.p.get("alpha"));
            CAPTURE(n);
            CAPTURE(v.integrability_evidence);
            CAPTURE(v.hermiticity_evidence);
            CHECK(v.admissible == count.admits(n));
        }
    }
}

TEST_CASE("Eckart at alpha = -2 keeps its levels") {
    const auto& e = lookup("eckart");
    for (std::size_t n = 0; n < 4; ++n) {
        const auto v = admissibility_check(e, {{"A", 1.5}, {"B", 2.5}, {"alpha", -2}}, n);
        CAPTURE(n);
        CAPTURE(v.integrability_evidence);
        CHECK(v.admissible);
    }
}

TEST_CASE("Coulomb formulas past the count repeat earlier states") {
    const auto& e = lookup("coulomb");
    const Params p = e.resolve({{"e2", 1}, {"l", 0}, {"alpha", 0.1}});
    CHECK_FALSE(admissibility_check(e, p, 3).admissible);
    CHECK(admissibility_check(e, p, 4).admissible);
    CHECK(e.printed_energy(p, 4) == doctest::Approx(e.printed_energy(p, 1)).epsilon(1e-13));
    const BoundState one(e, p, 1);
    const BoundState four(e, p, 4);
    const double d0 = four.log_eval(1.0).log_abs - one.log_eval(1.0).log_abs;
    for (double x : {0.01, 0.5, 3.0, 20.0, 150.0}) {
        CAPTURE(x);
        CHECK(four.log_eval(x).log_abs - one.log_eval(x).log_abs == doctest::Approx(d0).epsilon(1e-12));
        CHECK(four.log_eval(x).sign == -one.log_eval(x).sign);
    }
}
