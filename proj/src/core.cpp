#include "pdem/core.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace pdem {

Interval::Interval(std::optional<double> lo, std::optional<double> hi)
    : lo_(lo), hi_(hi) {
    if (lo_ && !std::isfinite(*lo_)) throw ParameterError("interval bound must be finite or unbounded");
    if (hi_ && !std::isfinite(*hi_)) throw ParameterError("interval bound must be finite or unbounded");
    if (lo_ && hi_ && !(*lo_ < *hi_)) throw ParameterError("interval requires lo < hi");
}

bool Interval::contains(double x) const {
    if (!std::isfinite(x)) return false;
    if (lo_ && !(x > *lo_)) return false;
    if (hi_ && !(x < *hi_)) return false;
    return true;
}

std::string Interval::describe() const {
    std::ostringstream os;
    os << '(' << (lo_ ? std::to_string(*lo_) : std::string("-inf")) << ", "
       << (hi_ ? std::to_string(*hi_) : std::string("+inf")) << ')';
    return os.str();
}

Grid::Grid(double lo, double hi, std::size_t n_points) : lo_(lo), hi_(hi), n_(n_points) {
    if (n_points < 3) throw ParameterError("grid needs at least 3 points");
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
        throw ParameterError("grid requires finite lo < hi");
    h_ = (hi - lo) / static_cast<double>(n_points - 1);
}

double Grid::node(std::size_t j) const {
    if (j + 1 == n_) return hi_;
    return lo_ + static_cast<double>(j) * h_;
}

std::vector<double> Grid::nodes() const {
    std::vector<double> xs(n_);
    for (std::size_t j = 0; j < n_; ++j) xs[j] = node(j);
    return xs;
}

std::vector<double> Grid::sample(const ScalarField& fn) const {
    std::vector<double> ys(n_);
    for (std::size_t j = 0; j < n_; ++j) ys[j] = fn(node(j));
    return ys;
}

AmbiguityParams ambiguity_reduce(double xi, double zeta) {
    AmbiguityParams p;
    p.xi = xi;
    p.zeta = zeta;
    p.rho = 0.5 * (1.0 - xi - zeta);
    p.sigma = (0.5 - xi) * (0.5 - zeta);
    return p;
}

AmbiguityParams AmbiguityParams::bdd() { return ambiguity_reduce(0.0, 0.0); }
AmbiguityParams AmbiguityParams::bastard() { return ambiguity_reduce(2.0, 0.0); }
AmbiguityParams AmbiguityParams::zk() { return ambiguity_reduce(1.0, 1.0); }
AmbiguityParams AmbiguityParams::lk() { return ambiguity_reduce(0.0, 1.0); }

AmbiguityParams AmbiguityParams::preset(std::string_view name) {
    if (name == "bdd") return bdd();
    if (name == "bastard") return bastard();
    if (name == "zk") return zk();
    if (name == "lk") return lk();
    throw ParameterError("unknown ambiguity preset '" + std::string(name) + "'");
}

std::string_view family_name(DeformingFamily family) {
    switch (family) {
        case DeformingFamily::Constant: return "constant";
        case DeformingFamily::TrigSinSq: return "trig-sin2";
        case DeformingFamily::HypSinhSq: return "hyperbolic-sinh2";
        case DeformingFamily::Quadratic: return "quadratic";
        case DeformingFamily::Linear: return "linear";
        case DeformingFamily::Exponential: return "exponential";
        case DeformingFamily::EckartExp: return "eckart-exp";
        case DeformingFamily::Sine: return "sine";
        case DeformingFamily::TrigMixed: return "trig-mixed";
    }
    return "unknown";
}

DeformingFunction::DeformingFunction(DeformingFamily family, double alpha, double beta, Interval domain)
    : family_(family), alpha_(alpha), beta_(beta), domain_(std::move(domain)) {
    if (!std::isfinite(alpha) || !std::isfinite(beta))
        throw ParameterError("deformation parameters must be finite");
}

bool DeformingFunction::is_trivial() const {
    return family_ == DeformingFamily::Constant || (alpha_ == 0.0 && beta_ == 0.0);
}

DeformingValue DeformingFunction::raw(double x) const {
    const double a = alpha_;
    const double b = beta_;
    double g = 0.0;
    double g1 = 0.0;
    double g2 = 0.0;
    double f = std::numeric_limits<double>::quiet_NaN();
    switch (family_) {
        case DeformingFamily::Constant:
            break;
        case DeformingFamily::TrigSinSq: {
            const double s = std::sin(x);
            g = a * s * s;
            g1 = a * std::sin(2.0 * x);
            g2 = 2.0 * a * std::cos(2.0 * x);
            break;
        }
        case DeformingFamily::HypSinhSq: {
            const double s = std::sinh(x);
            g = a * s * s;
            g1 = a * std::sinh(2.0 * x);
            g2 = 2.0 * a * std::cosh(2.0 * x);
            break;
        }
        case DeformingFamily::Quadratic:
            g = a * x * x + 2.0 * b * x;
            g1 = 2.0 * a * x + 2.0 * b;
            g2 = 2.0 * a;
            break;
        case DeformingFamily::Linear:
            g = a * x;
            g1 = a;
            break;
        case DeformingFamily::Exponential: {
            const double e = std::exp(-x);
            g = a * e;
            g1 = -a * e;
            g2 = a * e;
            break;
        }
        case DeformingFamily::EckartExp: {
            // e^{-x} sinh x = (1 - e^{-2x}) / 2
            const double e2 = std::exp(-2.0 * x);
            g = 0.5 * a * (-std::expm1(-2.0 * x));
            g1 = a * e2;
            g2 = -2.0 * a * e2;
            f = (1.0 + 0.5 * a) - 0.5 * a * e2;
            break;
        }
        case DeformingFamily::Sine:
            g = a * std::sin(x);
            g1 = a * std::cos(x);
            g2 = -a * std::sin(x);
            break;
        case DeformingFamily::TrigMixed: {
            const double s = std::sin(x);
            const double c = std::cos(x);
            const double s2 = std::sin(2.0 * x);
            const double c2 = std::cos(2.0 * x);
            g = s * (a * c + b * s);
            g1 = a * c2 + b * s2;
            g2 = 2.0 * (-a * s2 + b * c2);
            break;
        }
    }
    if (std::isnan(f)) f = 1.0 + g;
    return {f, g1, g2, g, 1.0 / (f * f)};
}

DeformingValue DeformingFunction::eval(double x) const {
    if (!domain_.contains(x))
        throw DomainError("x = " + std::to_string(x) + " outside " + domain_.describe());
    auto v = raw(x);
    if (!(v.f > 0.0))
        throw NonPositiveError("deforming function non-positive at x = " + std::to_string(x));
    return v;
}

DeformingValue deforming_eval(const DeformingFunction& df, double x) { return df.eval(x); }

PositivityReport positivity_check(const DeformingFunction& df, const Grid& grid) {
    PositivityReport report;
    report.min_f = std::numeric_limits<double>::infinity();
    for (std::size_t j = 1; j + 1 < grid.size(); ++j) {
        const double x = grid.node(j);
        const double f = df.raw(x).f;
        if (f < report.min_f) report.min_f = f;
        if (!(f > 0.0) && !report.first_violation) {
            report.ok = false;
            report.first_violation = j;
            report.violating_x = x;
            report.violating_f = f;
        }
    }
    return report;
}

Grid sampling_grid(const Interval& domain, std::size_t n_points, double window) {
    double lo = domain.lo() ? *domain.lo() : -window;
    double hi = domain.hi() ? *domain.hi() : window;
    if (domain.lo() && !domain.hi()) hi = *domain.lo() + window;
    if (!domain.lo() && domain.hi()) lo = *domain.hi() - window;
    return {lo, hi, n_points};
}

}  // namespace pdem
