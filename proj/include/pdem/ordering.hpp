#pragma once

// Scalar relations between the von Roos ordered kinetic term and the
// deformed-momentum form  -(sqrt f d/dx sqrt f)^2 + V_eff.

#include <span>
#include <vector>

#include "pdem/core.hpp"

namespace pdem {

struct OrderingContext {
    DeformingFunction df;
    AmbiguityParams amb;
};

/// rho f f'' + sigma f'^2.
double v_tilde_eval(const OrderingContext& ctx, double x);

/// V(a;x) = V_eff(b;x) - V~(x): the potential the original PDEM equation needs.
double recover_initial_potential(const OrderingContext& ctx, const ScalarField& v_eff, double x);

/// Discrete action of -1/2 (M^xi' D M^eta' D M^zeta' + M^zeta' D M^eta' D M^xi')
/// on sampled psi. M^eta' is taken at cell midpoints; boundary entries are 0.
std::vector<double> vonroos_apply(const ScalarField& m_field, const AmbiguityParams::Primed& exponents,
                                  std::span<const double> psi, const Grid& grid);

/// Discrete action of -(sqrt f D sqrt f)^2 using the flux form with midpoint f.
std::vector<double> deformed_kinetic_apply(const DeformingFunction& df, std::span<const double> psi,
                                           const Grid& grid);

}  // namespace pdem
