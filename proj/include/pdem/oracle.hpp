#pragma once

// Independent numerical check: Dirichlet-truncated symmetric tridiagonal
// discretizations of the deformed and von Roos Hamiltonians, a Sturm-sequence
// bisection eigensolver with inverse-iteration vectors, and quadrature.

#include <cstddef>
#include <span>
#include <vector>

#include "pdem/core.hpp"

namespace pdem {

/// Symmetric tridiagonal matrix acting on the interior nodes 1..N-2 of `grid`.
struct TridiagonalOperator {
    std::vector<double> diag;
    std::vector<double> off;
    Grid grid;

    [[nodiscard]] std::size_t size() const { return diag.size(); }
    /// y = T x on interior vectors.
    [[nodiscard]] std::vector<double> matvec(std::span<const double> x) const;
    /// Number of eigenvalues strictly below t.
    [[nodiscard]] std::size_t sturm_count(double t) const;
    /// Gershgorin enclosure of the spectrum.
    [[nodiscard]] std::pair<double, double> gershgorin() const;
    [[nodiscard]] double norm_inf() const;
};

/// H = S T_f S + diag(V_eff), S = diag(sqrt f), T_f the midpoint flux form.
TridiagonalOperator discretize_deformed(const DeformingFunction& df, const ScalarField& v_eff, const Grid& grid);

/// Symmetrized von Roos form -1/2 (M^xi' D M^eta' D M^zeta' + M^zeta' D M^eta' D M^xi') + V.
TridiagonalOperator discretize_vonroos(const ScalarField& m_field, const AmbiguityParams::Primed& exponents,
                                       const ScalarField& v, const Grid& grid);

struct GridMeta {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t n_points = 0;

    friend bool operator==(const GridMeta&, const GridMeta&) = default;
};

struct Spectrum {
    std::vector<double> eigenvalues;
    /// Full-grid samples (zero at the Dirichlet nodes), unit norm under h * sum v^2.
    std::vector<std::vector<double>> eigenvectors;
    GridMeta grid_meta;
};

/// k lowest eigenpairs. ConvergenceError if inverse iteration stalls.
Spectrum eigenpairs(const TridiagonalOperator& op, std::size_t k, bool want_vectors);

struct QuadratureResult {
    double value;
    bool simpson;  // false: even node count, trapezoid used
};

QuadratureResult quadrature_rule(std::span<const double> samples, const Grid& grid);
/// Composite Simpson (trapezoid on even node counts).
double quadrature(std::span<const double> samples, const Grid& grid);

/// Max interior deviation between the von Roos operator on V and the deformed
/// operator on V + V~, applied to a fixed battery of smooth test functions.
double equivalence_check(const DeformingFunction& df, const AmbiguityParams& amb, const ScalarField& v,
                         const Grid& grid);

}  // namespace pdem
