#include "pdem/ordering.hpp"

#include <cmath>

namespace pdem {

double v_tilde_eval(const OrderingContext& ctx, double x) {
    const auto v = ctx.df.eval(x);
    return ctx.amb.rho * v.f * v.f_second + ctx.amb.sigma * v.f_prime * v.f_prime;
}

double recover_initial_potential(const OrderingContext& ctx, const ScalarField& v_eff, double x) {
    return v_eff(x) - v_tilde_eval(ctx, x);
}

std::vector<double> vonroos_apply(const ScalarField& m_field, const AmbiguityParams::Primed& e,
                                  std::span<const double> psi, const Grid& grid) {
    if (std::abs(e.xi + e.eta + e.zeta + 1.0) > 1e-12)
        throw ParameterError("von Roos exponents must sum to -1");
    const std::size_t n = grid.size();
    if (psi.size() != n) throw ParameterError("psi must be sampled on the grid");
    const double h = grid.spacing();
    const double inv_h2 = 1.0 / (h * h);

    std::vector<double> m(n);
    for (std::size_t j = 0; j < n; ++j) {
        m[j] = m_field(grid.node(j));
        if (!(m[j] > 0.0)) throw NonPositiveError("mass must be positive on the grid");
    }
    // Midpoint M^eta' for cell j -> j+1.
    std::vector<double> mid(n - 1);
    for (std::size_t j = 0; j + 1 < n; ++j)
        mid[j] = std::pow(m_field(grid.lo() + (static_cast<double>(j) + 0.5) * h), e.eta);

    std::vector<double> out(n, 0.0);
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const double a_j = std::pow(m[j], e.xi);
        const double c_j = std::pow(m[j], e.zeta);
        const double diag = std::pow(m[j], e.xi + e.zeta) * (mid[j] + mid[j - 1]);
        const double right = 0.5 * (a_j * std::pow(m[j + 1], e.zeta) + c_j * std::pow(m[j + 1], e.xi)) * mid[j];
        const double left = 0.5 * (a_j * std::pow(m[j - 1], e.zeta) + c_j * std::pow(m[j - 1], e.xi)) * mid[j - 1];
        out[j] = (diag * psi[j] - right * psi[j + 1] - left * psi[j - 1]) * inv_h2;
    }
    return out;
}

std::vector<double> deformed_kinetic_apply(const DeformingFunction& df, std::span<const double> psi,
                                           const Grid& grid) {
    const std::size_t n = grid.size();
    if (psi.size() != n) throw ParameterError("psi must be sampled on the grid");
    const double h = grid.spacing();
    std::vector<double> sq(n);
    for (std::size_t j = 0; j < n; ++j) sq[j] = std::sqrt(df.raw(grid.node(j)).f);
    std::vector<double> mid(n - 1);
    for (std::size_t j = 0; j + 1 < n; ++j) mid[j] = df.raw(grid.lo() + (static_cast<double>(j) + 0.5) * h).f;

    std::vector<double> out(n, 0.0);
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const double chi_l = sq[j - 1] * psi[j - 1];
        const double chi = sq[j] * psi[j];
        const double chi_r = sq[j + 1] * psi[j + 1];
        out[j] = -sq[j] * (mid[j] * (chi_r - chi) - mid[j - 1] * (chi - chi_l)) / (h * h);
    }
    return out;
}

}  // namespace pdem
