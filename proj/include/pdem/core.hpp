#pragma once

// Foundational types shared by every module. Units: hbar = 2 m0 = 1.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pdem/errors.hpp"

namespace pdem {

/// Scalar function of position (potentials, mass fields, test functions).
using ScalarField = std::function<double(double)>;

/// Open interval (lo, hi); an empty optional marks an unbounded end.
class Interval {
public:
    Interval(std::optional<double> lo, std::optional<double> hi);

    static Interval finite(double lo, double hi) { return {lo, hi}; }
    static Interval half_line(double lo) { return {lo, std::nullopt}; }
    static Interval real_line() { return {std::nullopt, std::nullopt}; }

    [[nodiscard]] const std::optional<double>& lo() const { return lo_; }
    [[nodiscard]] const std::optional<double>& hi() const { return hi_; }
    [[nodiscard]] bool lo_finite() const { return lo_.has_value(); }
    [[nodiscard]] bool hi_finite() const { return hi_.has_value(); }
    [[nodiscard]] bool bounded() const { return lo_finite() && hi_finite(); }

    /// Strict interior membership.
    [[nodiscard]] bool contains(double x) const;
    [[nodiscard]] std::string describe() const;

    friend bool operator==(const Interval&, const Interval&) = default;

private:
    std::optional<double> lo_;
    std::optional<double> hi_;
};

/// Uniform grid x_j = lo + j*h, j = 0..n_points-1, on a bounded interval.
class Grid {
public:
    Grid(double lo, double hi, std::size_t n_points);

    [[nodiscard]] double lo() const { return lo_; }
    [[nodiscard]] double hi() const { return hi_; }
    [[nodiscard]] std::size_t size() const { return n_; }
    [[nodiscard]] double spacing() const { return h_; }
    [[nodiscard]] double node(std::size_t j) const;
    [[nodiscard]] std::vector<double> nodes() const;
    [[nodiscard]] std::vector<double> sample(const ScalarField& fn) const;

private:
    double lo_;
    double hi_;
    std::size_t n_;
    double h_;
};

/// Ordering ambiguity of the von Roos kinetic term, reduced to (rho, sigma).
///
/// The unprimed exponents act on f (xi + eta + zeta = 2); the primed ones act
/// on M = 1/f^2 and satisfy xi' + eta' + zeta' = -1 with xi = -2 xi'.
struct AmbiguityParams {
    double xi = 0.0;
    double zeta = 0.0;
    double rho = 0.5;
    double sigma = 0.25;

    [[nodiscard]] double eta() const { return 2.0 - xi - zeta; }

    struct Primed {
        double xi;
        double eta;
        double zeta;
    };
    [[nodiscard]] Primed primed() const { return {-xi / 2.0, -eta() / 2.0, -zeta / 2.0}; }

    static AmbiguityParams bdd();
    static AmbiguityParams bastard();
    static AmbiguityParams zk();
    static AmbiguityParams lk();
    /// Looks up a named preset ("bdd", "bastard", "zk", "lk").
    static AmbiguityParams preset(std::string_view name);

    friend bool operator==(const AmbiguityParams&, const AmbiguityParams&) = default;
};

AmbiguityParams ambiguity_reduce(double xi, double zeta);

/// Deforming-function families g(x); f = 1 + g and M = 1/f^2.
enum class DeformingFamily {
    Constant,      // g = 0
    TrigSinSq,     // alpha sin^2 x
    HypSinhSq,     // alpha sinh^2 x
    Quadratic,     // alpha x^2 + 2 beta x
    Linear,        // alpha x
    Exponential,   // alpha e^{-x}
    EckartExp,     // alpha e^{-x} sinh x
    Sine,          // alpha sin x
    TrigMixed,     // sin x (alpha cos x + beta sin x)
};

std::string_view family_name(DeformingFamily family);

struct DeformingValue {
    double f;
    double f_prime;
    double f_second;
    double g;
    double M;
};

class DeformingFunction {
public:
    DeformingFunction(DeformingFamily family, double alpha, double beta, Interval domain);

    static DeformingFunction constant(Interval domain) {
        return {DeformingFamily::Constant, 0.0, 0.0, std::move(domain)};
    }

    [[nodiscard]] DeformingFamily family() const { return family_; }
    [[nodiscard]] double alpha() const { return alpha_; }
    [[nodiscard]] double beta() const { return beta_; }
    [[nodiscard]] const Interval& domain() const { return domain_; }
    [[nodiscard]] bool is_trivial() const;

    /// g, f, f', f'' at x without domain or positivity checks.
    [[nodiscard]] DeformingValue raw(double x) const;
    [[nodiscard]] double f(double x) const { return raw(x).f; }

    /// Checked evaluation (DomainError outside, NonPositiveError if f <= 0).
    [[nodiscard]] DeformingValue eval(double x) const;

private:
    DeformingFamily family_;
    double alpha_;
    double beta_;
    Interval domain_;
};

DeformingValue deforming_eval(const DeformingFunction& df, double x);

struct PositivityReport {
    bool ok = true;
    double min_f = 0.0;
    std::optional<std::size_t> first_violation;
    double violating_x = 0.0;
    double violating_f = 0.0;
};

/// Samples f at the interior nodes of the grid.
PositivityReport positivity_check(const DeformingFunction& df, const Grid& grid);

/// Convenience: a grid of `n_points` spanning the domain (finite ends) or a
/// symmetric window of half-width `window` on unbounded ends.
Grid sampling_grid(const Interval& domain, std::size_t n_points, double window = 20.0);

}  // namespace pdem
