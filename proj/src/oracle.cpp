#include "pdem/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "pdem/ordering.hpp"

namespace pdem {

namespace {

void check_finite(double v, double x, const char* what) {
    if (!std::isfinite(v) || std::abs(v) > 1e300)
        throw SingularPotential(std::string(what) + " is singular at x = " + std::to_string(x));
}

double midpoint(const Grid& g, std::size_t j) { return g.lo() + (static_cast<double>(j) + 0.5) * g.spacing(); }

// Banded LU of T - s I with partial pivoting (dgttrf layout).
struct TriLU {
    std::vector<double> dl, d, du, du2;
    std::vector<bool> swapped;

    TriLU(const TridiagonalOperator& op, double s, double tiny) {
        const std::size_t n = op.size();
        d.resize(n);
        for (std::size_t i = 0; i < n; ++i) d[i] = op.diag[i] - s;
        dl = op.off;
        du = op.off;
        du2.assign(n > 2 ? n - 2 : 0, 0.0);
        swapped.assign(n, false);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (std::abs(d[i]) >= std::abs(dl[i])) {
                if (d[i] == 0.0) d[i] = tiny;
                const double fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
            } else {
                const double fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                const double tmp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = tmp - fact * d[i + 1];
                if (i + 2 < n) {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du[i + 1];
                }
                swapped[i] = true;
            }
        }
        if (n > 0 && d[n - 1] == 0.0) d[n - 1] = tiny;
    }

    void solve(std::vector<double>& b) const {
        const std::size_t n = d.size();
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (!swapped[i]) {
                b[i + 1] -= dl[i] * b[i];
            } else {
                const double tmp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = tmp - dl[i] * b[i];
            }
        }
        b[n - 1] /= d[n - 1];
        if (n > 1) b[n - 2] = (b[n - 2] - du[n - 2] * b[n - 1]) / d[n - 2];
        for (std::size_t i = n - 2; i-- > 0;) b[i] = (b[i] - du[i] * b[i + 1] - du2[i] * b[i + 2]) / d[i];
    }
};

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

std::vector<double> TridiagonalOperator::matvec(std::span<const double> x) const {
    const std::size_t n = size();
    if (x.size() != n) throw ParameterError("matvec size mismatch");
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = diag[i] * x[i];
        if (i > 0) s += off[i - 1] * x[i - 1];
        if (i + 1 < n) s += off[i] * x[i + 1];
        y[i] = s;
    }
    return y;
}

std::size_t TridiagonalOperator::sturm_count(double t) const {
    double emax = 1.0;
    for (double e : off) emax = std::max(emax, e * e);
    const double pivmin = std::numeric_limits<double>::min() * emax;
    std::size_t count = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < size(); ++i) {
        q = diag[i] - t - (i > 0 ? off[i - 1] * off[i - 1] / q : 0.0);
        if (std::abs(q) < pivmin) q = -pivmin;
        if (q < 0.0) ++count;
    }
    return count;
}

std::pair<double, double> TridiagonalOperator::gershgorin() const {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = 0; i < size(); ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(off[i - 1]);
        if (i + 1 < size()) r += std::abs(off[i]);
        lo = std::min(lo, diag[i] - r);
        hi = std::max(hi, diag[i] + r);
    }
    return {lo, hi};
}

double TridiagonalOperator::norm_inf() const {
    const auto [lo, hi] = gershgorin();
    return std::max(std::abs(lo), std::abs(hi));
}

TridiagonalOperator discretize_deformed(const DeformingFunction& df, const ScalarField& v_eff, const Grid& grid) {
    const std::size_t n = grid.size();
    if (n < 3) throw ParameterError("grid needs at least 3 nodes");
    const double inv_h2 = 1.0 / (grid.spacing() * grid.spacing());
    std::vector<double> f(n), mid(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
        f[j] = df.raw(grid.node(j)).f;
        if (j + 1 < n) mid[j] = df.raw(midpoint(grid, j)).f;
    }
    for (std::size_t j = 1; j + 1 < n; ++j)
        if (!(f[j] > 0.0)) throw NonPositiveError("f <= 0 at x = " + std::to_string(grid.node(j)));

    TridiagonalOperator op{{}, {}, grid};
    op.diag.resize(n - 2);
    op.off.resize(n - 3);
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const double x = grid.node(j);
        const double v = v_eff(x);
        check_finite(v, x, "V_eff");
        op.diag[j - 1] = f[j] * (mid[j] + mid[j - 1]) * inv_h2 + v;
        if (j + 2 < n) op.off[j - 1] = -std::sqrt(f[j]) * mid[j] * std::sqrt(f[j + 1]) * inv_h2;
    }
    return op;
}

TridiagonalOperator discretize_vonroos(const ScalarField& m_field, const AmbiguityParams::Primed& e,
                                       const ScalarField& v, const Grid& grid) {
    if (std::abs(e.xi + e.eta + e.zeta + 1.0) > 1e-12) throw ParameterError("von Roos exponents must sum to -1");
    const std::size_t n = grid.size();
    if (n < 3) throw ParameterError("grid needs at least 3 nodes");
    const double inv_h2 = 1.0 / (grid.spacing() * grid.spacing());
    std::vector<double> m(n), mid(n - 1);
    for (std::size_t j = 0; j < n; ++j) {
        m[j] = m_field(grid.node(j));
        if (!(m[j] > 0.0)) throw NonPositiveError("mass must be positive on the grid");
        if (j + 1 < n) mid[j] = std::pow(m_field(midpoint(grid, j)), e.eta);
    }
    TridiagonalOperator op{{}, {}, grid};
    op.diag.resize(n - 2);
    op.off.resize(n - 3);
    for (std::size_t j = 1; j + 1 < n; ++j) {
        const double x = grid.node(j);
        const double vx = v(x);
        check_finite(vx, x, "V");
        op.diag[j - 1] = std::pow(m[j], e.xi + e.zeta) * (mid[j] + mid[j - 1]) * inv_h2 + vx;
        if (j + 2 < n) {
            const double a = std::pow(m[j], e.xi) * std::pow(m[j + 1], e.zeta);
            const double c = std::pow(m[j], e.zeta) * std::pow(m[j + 1], e.xi);
            op.off[j - 1] = -0.5 * (a + c) * mid[j] * inv_h2;
        }
    }
    return op;
}

Spectrum eigenpairs(const TridiagonalOperator& op, std::size_t k, bool want_vectors) {
    const std::size_t n = op.size();
    if (k > n) throw RangeError("requested " + std::to_string(k) + " eigenvalues of a " + std::to_string(n) + "x" +
                                std::to_string(n) + " operator");
    Spectrum out;
    out.grid_meta = {op.grid.lo(), op.grid.hi(), op.grid.size()};
    const auto [glo, ghi] = op.gershgorin();

    double floor = glo;
    for (std::size_t i = 0; i < k; ++i) {
        double lo = floor;
        double hi = ghi;
        while (true) {
            const double mid = 0.5 * (lo + hi);
            if (hi - lo <= 1e-12 * std::max(1.0, std::abs(mid)) || mid <= lo || mid >= hi) break;
            if (op.sturm_count(mid) > i)
                hi = mid;
            else
                lo = mid;
        }
        floor = lo;
        out.eigenvalues.push_back(0.5 * (lo + hi));
    }
    if (!want_vectors) return out;

    const double tnorm = std::max(1.0, op.norm_inf());
    const double h = op.grid.spacing();
    std::mt19937_64 rng(20240607);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    std::vector<std::vector<double>> basis;
    for (std::size_t i = 0; i < k; ++i) {
        const double lam = out.eigenvalues[i];
        const TriLU lu(op, lam + 1e-10, std::numeric_limits<double>::epsilon() * tnorm);
        std::vector<double> x(n);
        for (double& v : x) v = unif(rng);
        double res = std::numeric_limits<double>::infinity();
        for (int it = 0; it < 5 && !(res < 1e-8 * std::max(1.0, std::abs(lam))); ++it) {
            lu.solve(x);
            for (const auto& b : basis) {
                double dot = 0.0;
                for (std::size_t j = 0; j < n; ++j) dot += b[j] * x[j];
                for (std::size_t j = 0; j < n; ++j) x[j] -= dot * b[j];
            }
            const double nx = norm2(x);
            if (!(nx > 0.0) || !std::isfinite(nx)) throw ConvergenceError("inverse iteration produced a null vector");
            for (double& v : x) v /= nx;
            auto tx = op.matvec(x);
            for (std::size_t j = 0; j < n; ++j) tx[j] -= lam * x[j];
            res = norm2(tx);
        }
        if (!(res < 1e-8 * std::max(1.0, std::abs(lam))))
            throw ConvergenceError("eigenvector " + std::to_string(i) + " residual " + std::to_string(res));
        basis.push_back(x);
    }

    for (auto& b : basis) {
        double amax = 0.0;
        for (double v : b) amax = std::max(amax, std::abs(v));
        const auto first = std::find_if(b.begin(), b.end(), [&](double v) { return std::abs(v) > 1e-3 * amax; });
        const double sign = (first != b.end() && *first < 0.0) ? -1.0 : 1.0;
        const double scale = sign / std::sqrt(h);  // unit 2-norm -> unit h * sum v^2
        std::vector<double> full(n + 2, 0.0);
        for (std::size_t j = 0; j < n; ++j) full[j + 1] = scale * b[j];
        out.eigenvectors.push_back(std::move(full));
    }
    return out;
}

QuadratureResult quadrature_rule(std::span<const double> s, const Grid& grid) {
    if (s.size() != grid.size()) throw ParameterError("samples must match the grid");
    const std::size_t n = s.size();
    const double h = grid.spacing();
    if (n < 2) return {0.0, false};
    if (n % 2 == 1) {
        double acc = s[0] + s[n - 1];
        for (std::size_t j = 1; j + 1 < n; ++j) acc += (j % 2 == 1 ? 4.0 : 2.0) * s[j];
        return {acc * h / 3.0, true};
    }
    double acc = 0.5 * (s[0] + s[n - 1]);
    for (std::size_t j = 1; j + 1 < n; ++j) acc += s[j];
    return {acc * h, false};
}

double quadrature(std::span<const double> samples, const Grid& grid) { return quadrature_rule(samples, grid).value; }

double equivalence_check(const DeformingFunction& df, const AmbiguityParams& amb, const ScalarField& v,
                         const Grid& grid) {
    const double lo = grid.lo();
    const double w = grid.hi() - grid.lo();
    const std::vector<ScalarField> battery = {
        [=](double x) {
            const double t = ((x - lo) / w - 0.5) / 0.18;
            return std::exp(-t * t);
        },
        [=](double x) {
            const double t = std::numbers::pi * (x - lo) / w;
            return std::sin(2.0 * t) * std::sin(t) * std::sin(t);
        },
    };
    const auto mass = [&](double x) { return df.raw(x).M; };
    const OrderingContext ctx{df, amb};
    double worst = 0.0;
    for (const auto& fn : battery) {
        const auto psi = grid.sample(fn);
        const auto lhs = vonroos_apply(mass, amb.primed(), psi, grid);
        const auto rhs = deformed_kinetic_apply(df, psi, grid);
        for (std::size_t j = 2; j + 2 < grid.size(); ++j) {
            const double x = grid.node(j);
            const double vx = v(x);
            const double a = lhs[j] + vx * psi[j];
            const double b = rhs[j] + (vx + v_tilde_eval(ctx, x)) * psi[j];
            worst = std::max(worst, std::abs(a - b));
        }
    }
    return worst;
}

}  // namespace pdem
