#pragma once

// Closed form against the matrix oracle: truncation grids built from each
// entry's recipe, oracle levels, eigen-residuals of sampled closed-form states,
// Gram matrices and the von Roos / deformed spectral comparison.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "pdem/catalog.hpp"
#include "pdem/oracle.hpp"

namespace pdem {

/// Recipe node count, or PDEM_GRID_N when set to an integer >= 3.
std::size_t default_grid_points(const CatalogEntry& entry);

/// Dirichlet grid for `entry`. Unbounded ends start at the recipe's l_start and
/// double until every requested closed-form state has a negligible tail.
Grid oracle_grid(const CatalogEntry& entry, const Params& params, std::span<const std::size_t> levels,
                 std::optional<std::size_t> n_points = std::nullopt);

/// Deformed operator of the entry on `grid`.
TridiagonalOperator entry_operator(const CatalogEntry& entry, const Params& params, const Grid& grid);

/// Closed-form psi_n on the grid, zero at the two Dirichlet nodes.
std::vector<double> sample_state(const CatalogEntry& entry, const Params& params, std::size_t n, const Grid& grid);

/// ||H psi_n - E_n psi_n||_2 / ||psi_n||_2 with E_n the chain energy.
double eigen_residual(const CatalogEntry& entry, const Params& params, std::size_t n, const Grid& grid);

/// max |G - I| for the Gram matrix of the given normalized closed-form states.
double gram_deviation(const CatalogEntry& entry, const Params& params, std::span<const std::size_t> levels,
                      const Grid& grid);

/// Largest relative gap between the first k eigenvalues of the von Roos
/// operator on the recovered V and the deformed operator on V_eff.
double spectral_equivalence(const CatalogEntry& entry, const Params& params, const AmbiguityParams& amb,
                            std::size_t k, const Grid& grid);

/// Operator-level equivalence_check on the entry's recovered V.
double entry_equivalence(const CatalogEntry& entry, const Params& params, const AmbiguityParams& amb,
                         const Grid& grid);

/// max |r1|, |r2| over i < depth on 101 interior nodes of the entry window.
double si_residual_max(const CatalogEntry& entry, const Params& params, std::size_t depth);

/// Interior sample points: the open domain for bounded entries, else the window.
std::vector<double> interior_points(const CatalogEntry& entry, std::size_t count);

}  // namespace pdem
