#include "pdem/verify.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>

#include "pdem/ordering.hpp"
#include "pdem/wavefunctions.hpp"

namespace pdem {

namespace {

constexpr int kMaxDoublings = 16;
constexpr std::size_t kTailSamples = 512;

}  // namespace

std::size_t default_grid_points(const CatalogEntry& entry) {
    if (const char* env = std::getenv("PDEM_GRID_N")) {
        std::size_t n = 0;
        const char* end = env + std::strlen(env);
        const auto [ptr, ec] = std::from_chars(env, end, n);
        if (ec == std::errc() && ptr == end && n >= 3) return n;
    }
    return entry.truncation.n_points;
}

std::vector<double> interior_points(const CatalogEntry& entry, std::size_t count) {
    double lo = entry.window_lo;
    double hi = entry.window_hi;
    if (entry.domain.bounded()) {
        lo = *entry.domain.lo();
        hi = *entry.domain.hi();
    }
    std::vector<double> xs;
    xs.reserve(count);
    for (std::size_t k = 1; k <= count; ++k)
        xs.push_back(lo + (hi - lo) * static_cast<double>(k) / (static_cast<double>(count) + 1.0));
    return xs;
}

Grid oracle_grid(const CatalogEntry& entry, const Params& params, std::span<const std::size_t> levels,
                 std::optional<std::size_t> n_points) {
    const Params p = entry.resolve(params);
    const TruncationRecipe& r = entry.truncation;
    const std::size_t n = n_points.value_or(default_grid_points(entry));
    const Interval& d = entry.domain;
    if (d.bounded()) return {*d.lo(), *d.hi(), n};

    if (r.l_fixed) {
        const double lo = d.lo() ? *d.lo() + r.eps_left : -*r.l_fixed;
        const double hi = d.hi() ? *d.hi() - r.eps_left : *r.l_fixed;
        return {lo, hi, n};
    }

    std::vector<BoundState> states;
    for (std::size_t lv : levels) states.emplace_back(entry, p, lv);
    const DeformingFunction df = entry.deforming(p);
    const double threshold = std::log(r.tail_threshold);

    // tail of |psi|^2 max(f, 1) at x relative to the peak over [lo, hi]
    auto tail_ok = [&](double lo, double hi, double x) {
        for (const auto& s : states) {
            double lmax = -std::numeric_limits<double>::infinity();
            for (std::size_t k = 1; k <= kTailSamples; ++k) {
                const double y = lo + (hi - lo) * static_cast<double>(k) / (kTailSamples + 1.0);
                const double l = 2.0 * s.log_eval(y).log_abs;
                if (std::isfinite(l)) lmax = std::max(lmax, l);
            }
            const double l = 2.0 * s.log_eval(x).log_abs + std::log(std::max(df.raw(x).f, 1.0));
            if (std::isnan(l) || !(l - lmax < threshold)) return false;
        }
        return true;
    };

    double lo = d.lo() ? *d.lo() + r.eps_left : r.left_start.value_or(-r.l_start);
    double hi = d.hi() ? *d.hi() - r.eps_left : r.l_start;
    for (int k = 0; k < kMaxDoublings; ++k) {
        const bool left_done = d.lo() || tail_ok(lo, hi, lo);
        const bool right_done = d.hi() || tail_ok(lo, hi, hi);
        if (left_done && right_done) break;
        auto usable = [&](double x) {
            const auto v = df.raw(x);
            return std::isfinite(v.f) && v.f > 0.0 && v.M > 0.0;
        };
        const bool grow_left = !left_done && usable(2.0 * lo);
        const bool grow_right = !right_done && usable(2.0 * hi);
        if (!grow_left && !grow_right) break;
        if (grow_left) lo *= 2.0;
        if (grow_right) hi *= 2.0;
    }
    return {lo, hi, n};
}

TridiagonalOperator entry_operator(const CatalogEntry& entry, const Params& params, const Grid& grid) {
    const auto st = entry.structure(entry.resolve(params));
    return discretize_deformed(st.df, st.v_eff, grid);
}

std::vector<double> sample_state(const CatalogEntry& entry, const Params& params, std::size_t n, const Grid& grid) {
    const BoundState psi(entry, entry.resolve(params), n);
    std::vector<LogValue> logs(grid.size(), LogValue{-std::numeric_limits<double>::infinity(), 0});
    double lmax = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < grid.size(); ++j) {
        if (!entry.domain.contains(grid.node(j))) continue;
        logs[j] = psi.log_eval(grid.node(j));
        if (std::isfinite(logs[j].log_abs)) lmax = std::max(lmax, logs[j].log_abs);
    }
    std::vector<double> v(grid.size(), 0.0);
    if (!std::isfinite(lmax)) return v;
    for (std::size_t j = 0; j < grid.size(); ++j)
        if (logs[j].sign != 0) v[j] = logs[j].sign * std::exp(logs[j].log_abs - lmax);
    return v;
}

double eigen_residual(const CatalogEntry& entry, const Params& params, std::size_t n, const Grid& grid) {
    const Params p = entry.resolve(params);
    const BoundState psi(entry, p, n);
    const double e = psi.chain().energy[n];
    const auto st = entry.structure(p);
    const auto v = sample_state(entry, p, n, grid);
    const auto kv = deformed_kinetic_apply(st.df, v, grid);
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 1; j + 1 < grid.size(); ++j) {
        const double r = kv[j] + (st.v_eff(grid.node(j)) - e) * v[j];
        num += r * r;
        den += v[j] * v[j];
    }
    return std::sqrt(num / den);
}

double gram_deviation(const CatalogEntry& entry, const Params& params, std::span<const std::size_t> levels,
                      const Grid& grid) {
    std::vector<std::vector<double>> states;
    for (std::size_t lv : levels) states.push_back(normalize(sample_state(entry, params, lv, grid), grid).samples);
    double worst = 0.0;
    std::vector<double> prod(grid.size());
    for (std::size_t i = 0; i < states.size(); ++i)
        for (std::size_t j = 0; j <= i; ++j) {
            for (std::size_t k = 0; k < grid.size(); ++k) prod[k] = states[i][k] * states[j][k];
            worst = std::max(worst, std::abs(quadrature(prod, grid) - (i == j ? 1.0 : 0.0)));
        }
    return worst;
}

double spectral_equivalence(const CatalogEntry& entry, const Params& params, const AmbiguityParams& amb,
                            std::size_t k, const Grid& grid) {
    const auto st = entry.structure(entry.resolve(params));
    const OrderingContext ctx{st.df, amb};
    const ScalarField v = [&](double x) { return recover_initial_potential(ctx, st.v_eff, x); };
    const ScalarField mass = [&](double x) { return st.df.raw(x).M; };
    const auto ref = eigenpairs(discretize_deformed(st.df, st.v_eff, grid), k, false);
    const auto vr = eigenpairs(discretize_vonroos(mass, amb.primed(), v, grid), k, false);
    double worst = 0.0;
    for (std::size_t i = 0; i < k; ++i)
        worst = std::max(worst, std::abs(vr.eigenvalues[i] - ref.eigenvalues[i]) /
                                    std::max(1e-12, std::abs(ref.eigenvalues[i])));
    return worst;
}

double entry_equivalence(const CatalogEntry& entry, const Params& params, const AmbiguityParams& amb,
                         const Grid& grid) {
    const auto st = entry.structure(entry.resolve(params));
    const OrderingContext ctx{st.df, amb};
    const ScalarField v = [&](double x) { return recover_initial_potential(ctx, st.v_eff, x); };
    return equivalence_check(st.df, amb, v, grid);
}

double si_residual_max(const CatalogEntry& entry, const Params& params, std::size_t depth) {
    const auto s = entry.structure(entry.resolve(params));
    const auto c = solve_chain(s, depth);
    double worst = 0.0;
    for (std::size_t i = 0; i < depth; ++i)
        for (double x : interior_points(entry, 101)) {
            const auto r = si_residual(s, c, i, x);
            worst = std::max({worst, std::abs(r.r1), std::abs(r.r2)});
        }
    return worst;
}

}  // namespace pdem
