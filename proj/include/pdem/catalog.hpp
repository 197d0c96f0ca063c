#pragma once

// Registry of the deformed shape-invariant potentials with their closed-form
// data: effective potential, deforming family, superpotential class, the
// printed parameter chain / energies / ground states, counting rules, the
// ordering term V~ and the default numerical recipe used for verification.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pdem/core.hpp"
#include "pdem/si_engine.hpp"

namespace pdem {

/// Named real parameters (potential parameters and deformation parameters).
class Params {
public:
    Params() = default;
    Params(std::initializer_list<std::pair<const std::string, double>> init) : values_(init) {}

    [[nodiscard]] double get(const std::string& key) const;
    [[nodiscard]] bool has(const std::string& key) const { return values_.count(key) != 0; }
    void set(const std::string& key, double value) { values_[key] = value; }
    [[nodiscard]] const std::map<std::string, double>& values() const { return values_; }

    /// Parses "k=v,k=v" (whitespace tolerant); ParameterError on malformed input.
    static Params parse(std::string_view text);

    friend bool operator==(const Params&, const Params&) = default;

private:
    std::map<std::string, double> values_;
};

struct BoundCount {
    enum class Kind { Finite, Infinite, Zero };
    Kind kind = Kind::Infinite;
    std::size_t count = 0;  // meaningful for Finite

    static BoundCount finite(std::size_t k) { return k == 0 ? zero() : BoundCount{Kind::Finite, k}; }
    static BoundCount infinite() { return {Kind::Infinite, 0}; }
    static BoundCount zero() { return {Kind::Zero, 0}; }

    [[nodiscard]] bool admits(std::size_t n) const {
        return kind == Kind::Infinite || (kind == Kind::Finite && n < count);
    }
    [[nodiscard]] std::string describe() const;

    friend bool operator==(const BoundCount&, const BoundCount&) = default;
};

struct ChainPoint {
    double lambda;
    double mu;
};

/// Numerical recipe for the matrix oracle. Each unbounded end starts at
/// distance `l_start` (left: `left_start` when set) and doubles until the tail
/// criterion on the requested closed-form states holds; `l_fixed` pins both.
struct TruncationRecipe {
    double eps_left = 1e-4;               // half-line: first Dirichlet node at lo + eps
    std::optional<double> left_start;     // full line: initial left end (negative)
    double l_start = 20.0;
    std::optional<double> l_fixed;
    double tail_threshold = 1e-12;
    std::size_t n_points = 4001;
    double rel_tol = 1e-4;
    /// Levels the truncated matrix is expected to resolve.
    std::size_t oracle_levels = 6;
    /// Resolution for the von Roos / deformed spectral comparison.
    std::size_t equivalence_points = 16001;
};

/// Admissibility probes on an unbounded end start at `ref` from the origin and
/// double at least up to `limit`, then continue until the tail is asymptotic
/// (steady log-slope), negligible or blown up, or `cap` is reached.
struct ProbeRecipe {
    double ref = 1.0;
    double limit = 256.0;
    double cap = 1.0e18;
};

struct ParamSpec {
    std::string name;
    double default_value;
};

struct CatalogEntry {
    std::string name;
    std::string title;
    Interval domain = Interval::real_line();
    std::vector<ParamSpec> params;
    std::string range_text;
    std::string v_eff_text;
    std::string deforming_text;
    std::string class_text;

    std::function<void(const Params&)> validate;
    std::function<DeformingFunction(const Params&)> deforming;
    std::function<SiStructure(const Params&)> structure;
    std::function<ChainPoint(const Params&, std::size_t)> printed_chain;
    std::function<double(const Params&, std::size_t)> printed_energy;
    /// log of the printed unnormalized ground state (all printed forms are positive).
    std::function<double(const Params&, double)> printed_ground_state_log;
    std::function<BoundCount(const Params&)> counting;
    std::function<double(const Params&, const AmbiguityParams&, double)> v_tilde_closed;
    /// Reshaped initial potential V(a;x) when it keeps the shape of V_eff.
    std::function<double(const Params&, const AmbiguityParams&, double)> reshaped_potential;
    /// Non-empty when the printed energy disagrees with the chain solution.
    std::string energy_discrepancy;
    bool v_tilde_printed = true;

    TruncationRecipe truncation;
    ProbeRecipe probe;
    /// Window for residual sampling on unbounded domains.
    double window_lo = -5.0;
    double window_hi = 5.0;

    /// Defaults merged with `given`, then validated (RangeError on failure).
    [[nodiscard]] Params resolve(const Params& given) const;
    /// Reference point fixing the integration constant of the ground state.
    [[nodiscard]] double reference_point() const;
};

struct Exclusion {
    std::string name;
    std::string reason;
};

class Catalog {
public:
    static const Catalog& instance();

    /// NotFound (message carries the exclusion note for excluded potentials).
    [[nodiscard]] const CatalogEntry& lookup(std::string_view name) const;
    [[nodiscard]] const std::vector<CatalogEntry>& entries() const { return entries_; }
    [[nodiscard]] const std::vector<Exclusion>& exclusions() const { return exclusions_; }

private:
    Catalog();
    std::vector<CatalogEntry> entries_;
    std::vector<Exclusion> exclusions_;
};

const CatalogEntry& lookup(std::string_view name);

/// Printed E_n; RangeError for bad params, IndexError beyond the counting rule.
double closed_energy(const CatalogEntry& entry, const Params& params, std::size_t n);
BoundCount bound_state_count(const CatalogEntry& entry, const Params& params);
/// Printed unnormalized ground state at interior x.
double ground_state_closed(const CatalogEntry& entry, const Params& params, double x);

}  // namespace pdem
