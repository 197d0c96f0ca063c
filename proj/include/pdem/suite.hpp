#pragma once

// Per-entry invariant suite behind `pdem verify`.

#include <optional>
#include <string>
#include <vector>

#include "pdem/report.hpp"

namespace pdem {

struct CheckResult {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double threshold = 0.0;
    std::string note;
};

struct SuiteResult {
    SpectrumReport report;
    std::vector<CheckResult> checks;

    [[nodiscard]] bool pass() const;
};

struct SuiteOptions {
    AmbiguitySpec ambiguity = AmbiguitySpec::named("bdd");
    /// Oracle tolerance; the entry's recipe value when empty.
    std::optional<double> tol;
};

/// Levels examined: count + 1 for finite spectra (so the first excluded level
/// is probed), 4 when there is none, the recipe's oracle levels when infinite.
std::size_t suite_levels(const CatalogEntry& entry, const BoundCount& count);

SuiteResult run_suite(const CatalogEntry& entry, const Params& params, const SuiteOptions& options);

std::string suite_to_json(const std::vector<SuiteResult>& results, int indent = 2);

}  // namespace pdem
