#include "pdem/suite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"
#include "pdem/verify.hpp"
#include "pdem/wavefunctions.hpp"

namespace pdem {

namespace {

constexpr double kSiTol = 1e-10;
constexpr double kFactorTol = 1e-8;
constexpr double kGroundTol = 1e-8;
constexpr double kPrefactorTol = 1e-12;
constexpr double kDegreeTol = 1e-12;
constexpr double kResidualTol = 1e-5;
constexpr double kGramTol = 1e-6;
constexpr double kSpectralTol = 1e-6;
constexpr std::size_t kResidualPoints = 8001;

double rel(double a, double b) { return std::abs(a - b) / std::max(1e-12, std::abs(b)); }

template <class Fn>
CheckResult guarded(const std::string& name, double threshold, Fn&& fn) {
    CheckResult c{name, false, std::numeric_limits<double>::quiet_NaN(), threshold, {}};
    try {
        fn(c);
    } catch (const std::exception& e) {
        c.pass = false;
        c.note = e.what();
    }
    return c;
}

}  // namespace

bool SuiteResult::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::size_t suite_levels(const CatalogEntry& entry, const BoundCount& count) {
    switch (count.kind) {
        case BoundCount::Kind::Finite: return std::min(count.count + 1, kAutoLevelCap);
        case BoundCount::Kind::Zero: return 4;
        case BoundCount::Kind::Infinite: return std::min(entry.truncation.oracle_levels, kAutoLevelCap);
    }
    return 0;
}

SuiteResult run_suite(const CatalogEntry& entry, const Params& params, const SuiteOptions& options) {
    const Params p = entry.resolve(params);
    SuiteResult out;
    ReportOptions ro;
    ro.oracle = true;
    ro.ambiguity = options.ambiguity;
    ro.n_levels = suite_levels(entry, bound_state_count(entry, p));
    out.report = build_report(entry, p, ro);
    const SpectrumReport& r = out.report;
    const bool flagged = !entry.energy_discrepancy.empty();

    out.checks.push_back(guarded("si_residual", kSiTol, [&](CheckResult& c) {
        if (!r.checks.si_residual_max) throw ChainError("chain unavailable");
        c.value = *r.checks.si_residual_max;
        c.pass = c.value < kSiTol;
    }));

    out.checks.push_back(guarded("printed_energies", kSiTol, [&](CheckResult& c) {
        const auto chain = solve_chain(entry.structure(p), 5);
        c.value = 0.0;
        for (std::size_t n = 0; n <= 5; ++n) c.value = std::max(c.value, rel(chain.energy[n], entry.printed_energy(p, n)));
        c.pass = c.value < kSiTol || flagged;
        if (flagged) c.note = "flagged: " + entry.energy_discrepancy;
    }));

    const auto xs = interior_points(entry, 101);
    out.checks.push_back(guarded("factorization", kFactorTol, [&](CheckResult& c) {
        const BoundState g(entry, p, 0);
        c.value = factorization_residual(g, xs, 1e-3 * (xs[1] - xs[0]));
        c.pass = c.value < kFactorTol;
    }));

    out.checks.push_back(guarded("ground_state_ratio", kGroundTol, [&](CheckResult& c) {
        const BoundState g(entry, p, 0);
        const double x0 = xs[xs.size() / 2];
        const double d0 = g.log_eval(x0).log_abs - entry.printed_ground_state_log(p, x0);
        c.value = 0.0;
        for (double x : xs) {
            const double d = g.log_eval(x).log_abs - entry.printed_ground_state_log(p, x);
            c.value = std::max(c.value, std::abs(std::expm1(d - d0)));
        }
        c.pass = c.value < kGroundTol;
    }));

    out.checks.push_back(guarded("prefactor_consistency", kPrefactorTol, [&](CheckResult& c) {
        c.value = 0.0;
        for (double x : xs) {
            const double a = excited_state_eval(entry, p, 0, x);
            const double b = ground_state_numeric(entry, p, x);
            if (a == 0.0 && b == 0.0) continue;
            c.value = std::max(c.value, std::abs(a - b) / std::abs(b));
        }
        c.pass = c.value < kPrefactorTol;
    }));

    out.checks.push_back(guarded("polynomial_degree", kDegreeTol, [&](CheckResult& c) {
        const auto s = entry.structure(p);
        c.value = 0.0;
        bool degree_ok = true;
        for (std::size_t n = 1; n <= 6; ++n) {
            const auto poly = polynomial_chain(entry, p, n);
            double big = 0.0;
            for (double v : poly.coeffs) big = std::max(big, std::abs(v));
            if (s.sp.cls == SpClass::Class3) {
                c.value = std::max(c.value, std::abs(poly.cancelled_top) / big);
            } else {
                degree_ok = degree_ok && poly.degree == n && std::abs(poly.coeffs.back()) > kDegreeTol * big;
            }
        }
        c.pass = degree_ok && c.value < kDegreeTol;
        c.note = s.sp.cls == SpClass::Class3 ? "cancelled top coefficient" : "leading coefficient present";
    }));

    std::size_t mismatches = 0;
    for (const auto& lv : r.levels)
        if (lv.admissible != r.counting.admits(lv.n)) ++mismatches;
    out.checks.push_back({"counting_agreement", mismatches == 0, static_cast<double>(mismatches), 0.5,
                          "counting " + r.counting.describe()});

    const std::size_t resolved = resolved_levels(entry, r);
    const double tol = options.tol.value_or(entry.truncation.rel_tol);
    const Grid grid(r.grid_meta.lo, r.grid_meta.hi, r.grid_meta.n_points);
    if (resolved == 0) {
        for (const char* name : {"oracle_energies", "eigen_residual", "orthonormality", "spectral_equivalence"})
            out.checks.push_back({name, true, 0.0, 0.0, "no admissible level to resolve"});
        return out;
    }

    out.checks.push_back(guarded("oracle_energies", tol, [&](CheckResult& c) {
        c.value = 0.0;
        for (std::size_t n = 0; n < resolved; ++n) {
            const auto& lv = r.levels[n];
            const double ref = flagged && lv.e_chain ? *lv.e_chain : lv.e_closed;
            c.value = std::max(c.value, rel(*lv.e_oracle, ref));
        }
        c.pass = c.value < tol;
        if (flagged) c.note = "against the chain energies";
    }));

    out.checks.push_back(guarded("eigen_residual", kResidualTol, [&](CheckResult& c) {
        std::vector<std::size_t> first;
        for (std::size_t n = 0; n < std::min<std::size_t>(3, resolved); ++n) first.push_back(n);
        const Grid fine = oracle_grid(entry, p, first, kResidualPoints);
        c.value = 0.0;
        for (std::size_t n : first) c.value = std::max(c.value, eigen_residual(entry, p, n, fine));
        c.pass = c.value < kResidualTol;
    }));

    out.checks.push_back(guarded("orthonormality", kGramTol, [&](CheckResult& c) {
        c.value = r.checks.orthonormality_max_offdiag.value_or(std::numeric_limits<double>::quiet_NaN());
        c.pass = c.value < kGramTol;
    }));

    out.checks.push_back(guarded("spectral_equivalence", kSpectralTol, [&](CheckResult& c) {
        const Grid fine(grid.lo(), grid.hi(), entry.truncation.equivalence_points);
        c.value = spectral_equivalence(entry, p, options.ambiguity.params(), std::min<std::size_t>(4, resolved), fine);
        c.pass = c.value < kSpectralTol;
    }));
    return out;
}

std::string suite_to_json(const std::vector<SuiteResult>& results, int indent) {
    using nlohmann::json;
    json arr = json::array();
    for (const auto& s : results) {
        json checks = json::array();
        for (const auto& c : s.checks)
            checks.push_back({{"name", c.name},
                              {"pass", c.pass},
                              {"value", std::isfinite(c.value) ? json(c.value) : json(nullptr)},
                              {"threshold", c.threshold},
                              {"note", c.note}});
        arr.push_back({{"potential", s.report.potential},
                       {"pass", s.pass()},
                       {"checks", checks},
                       {"report", json::parse(to_json(s.report, -1))}});
    }
    return arr.dump(indent);
}

}  // namespace pdem
