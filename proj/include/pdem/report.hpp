#pragma once

// SpectrumReport: closed-form, chain and oracle energies per level with the
// admissibility verdicts, the counting rule, summary checks and the grid the
// oracle used. JSON and CSV serializations.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pdem/catalog.hpp"
#include "pdem/oracle.hpp"

namespace pdem {

/// A named ordering preset, or explicit (xi, zeta) with no name.
struct AmbiguitySpec {
    std::optional<std::string> preset;
    double xi = 0.0;
    double zeta = 0.0;

    static AmbiguitySpec named(const std::string& name);
    static AmbiguitySpec explicit_pair(double xi, double zeta);
    [[nodiscard]] AmbiguityParams params() const { return ambiguity_reduce(xi, zeta); }

    friend bool operator==(const AmbiguitySpec&, const AmbiguitySpec&) = default;
};

struct LevelRecord {
    std::size_t n = 0;
    double e_closed = 0.0;
    std::optional<double> e_chain;
    std::optional<double> e_oracle;
    std::optional<double> abs_err;
    std::optional<double> rel_err;
    bool admissible = false;
    bool hermiticity_ok = false;

    friend bool operator==(const LevelRecord&, const LevelRecord&) = default;
};

struct ReportChecks {
    std::optional<double> si_residual_max;
    std::optional<double> equivalence_max_dev;
    std::optional<double> orthonormality_max_offdiag;

    friend bool operator==(const ReportChecks&, const ReportChecks&) = default;
};

struct SpectrumReport {
    std::string potential;
    std::map<std::string, double> params;
    std::map<std::string, double> deformation;
    AmbiguitySpec ambiguity;
    std::vector<LevelRecord> levels;
    BoundCount counting;
    ReportChecks checks;
    GridMeta grid_meta;

    friend bool operator==(const SpectrumReport&, const SpectrumReport&) = default;
};

struct ReportOptions {
    std::optional<std::size_t> n_levels;  // empty: resolved from the counting rule
    bool oracle = false;
    AmbiguitySpec ambiguity = AmbiguitySpec::named("bdd");
};

constexpr std::size_t kAutoLevelCap = 16;

/// Levels for `--n-levels auto`: the count for finite spectra, 16 for infinite, 0 for none.
std::size_t auto_levels(const BoundCount& count);

/// Leading admissible levels the oracle is asked to resolve (at most the recipe's oracle_levels).
std::size_t resolved_levels(const CatalogEntry& entry, const SpectrumReport& report);

SpectrumReport build_report(const CatalogEntry& entry, const Params& params, const ReportOptions& options);

std::string to_json(const SpectrumReport& report, int indent = 2);
SpectrumReport report_from_json(const std::string& text);

/// One row per level; numbers with 17 significant digits, empty cells for absent values.
std::string to_csv(const SpectrumReport& report);
std::vector<LevelRecord> levels_from_csv(const std::string& text);

std::string format_double(double x);

}  // namespace pdem
