#include "pdem/wavefunctions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>

#include "pdem/oracle.hpp"

namespace pdem {

namespace {

using Poly = std::vector<double>;

Poly deriv(const Poly& p) {
    if (p.size() <= 1) return {0.0};
    Poly d(p.size() - 1);
    for (std::size_t k = 1; k < p.size(); ++k) d[k - 1] = static_cast<double>(k) * p[k];
    return d;
}

Poly mul(const Poly& a, const Poly& b) {
    Poly out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

Poly add(const Poly& a, const Poly& b) {
    Poly out(std::max(a.size(), b.size()), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
    return out;
}

double snap_unit(double r) {
    constexpr double tol = 8.0 * std::numeric_limits<double>::epsilon();
    if (std::abs(r - 1.0) < tol) return 1.0;
    if (std::abs(r + 1.0) < tol) return -1.0;
    return r;
}

// phi(x) - r without cancellation where phi approaches +-1 at an end.
double phi_shift(PhiKind kind, double x, double r) {
    if (r == 1.0 || r == -1.0) {
        switch (kind) {
            case PhiKind::Tanh:
                return r > 0 ? -2.0 / (std::exp(2.0 * x) + 1.0) : 2.0 / (1.0 + std::exp(-2.0 * x));
            case PhiKind::Coth:
                return r > 0 ? 2.0 / std::expm1(2.0 * x) : -2.0 / std::expm1(-2.0 * x);
            case PhiKind::Sin: {
                const double s = std::sin(std::numbers::pi / 4 - r * x / 2);
                return -2.0 * r * s * s;
            }
            default:
                break;
        }
    }
    return phi_value(kind, x) - r;
}

double log_abs(double v) { return std::log(std::abs(v)); }

// A phi^2 + B for class 3, with the cos^2 form for phi = sin.
double class3_s2(const SuperpotentialClass& sp, double x) {
    if (sp.phi == PhiKind::Sin && sp.A == -1.0 && sp.B == 1.0) {
        const double c = std::cos(x);
        return c * c;
    }
    const double y = phi_value(sp.phi, x);
    return sp.A * y * y + sp.B;
}

double class1_integral(const SuperpotentialClass& sp, double lambda, double mu, double x) {
    const double a = sp.A + sp.Ap;
    const double b = sp.B + sp.Bp;
    const double c = sp.C + sp.Cp;
    const double t = phi_value(sp.phi, x);
    if (a != 0.0) {
        const double disc = b * b - 4.0 * a * c;
        if (std::abs(disc) <= 1e-14 * (b * b + std::abs(4.0 * a * c))) {
            const double t1 = snap_unit(-b / (2.0 * a));
            const double d = phi_shift(sp.phi, x, t1);
            return (lambda / a) * log_abs(d) - (lambda * t1 + mu) / (a * d);
        }
        if (disc > 0.0) {
            const double sq = std::sqrt(disc);
            const double q = -0.5 * (b + (b >= 0.0 ? sq : -sq));
            const double t1 = snap_unit(q / a);
            const double t2 = snap_unit(c / q);
            const double c1 = (lambda * t1 + mu) / (a * (t1 - t2));
            const double c2 = (lambda * t2 + mu) / (a * (t2 - t1));
            return c1 * log_abs(phi_shift(sp.phi, x, t1)) + c2 * log_abs(phi_shift(sp.phi, x, t2));
        }
        const double sq = std::sqrt(-disc);
        const double quad = (a * t + b) * t + c;
        return lambda / (2.0 * a) * log_abs(quad) +
               (mu - lambda * b / (2.0 * a)) * 2.0 / sq * std::atan((2.0 * a * t + b) / sq);
    }
    if (b != 0.0) return (lambda / b) * t + (mu - lambda * c / b) / b * log_abs(b * t + c);
    if (c == 0.0) throw DegenerateClass("f phi' vanishes identically");
    return (0.5 * lambda * t * t + mu * t) / c;
}

double class2_integral(const SuperpotentialClass& sp, double lambda, double mu, double x) {
    const double a = sp.A + sp.Ap;
    const double b = sp.B + sp.Bp;
    const double p = phi_value(sp.phi, x);
    if (a != 0.0 && b != 0.0)
        return (mu / b) * log_abs(p) + (lambda - a * mu / b) / (2.0 * a) * log_abs(a * p * p + b);
    if (a != 0.0) return (lambda / a) * log_abs(p) - mu / (2.0 * a * p * p);
    if (b != 0.0) return lambda * p * p / (2.0 * b) + (mu / b) * log_abs(p);
    throw DegenerateClass("f phi' vanishes identically");
}

double class3_integral(const SuperpotentialClass& sp, double lambda, double mu, double x) {
    const double A = sp.A;
    const double B = sp.B;
    const double fc = sp.C + sp.Cp;
    const double fd = sp.D + sp.Dp;
    if (!(A != 0.0 && -B / A > 0.0)) throw DegenerateClass("class-3 integral needs real roots of A phi^2 + B");
    const double r = snap_unit(std::sqrt(-B / A));
    const double lp = log_abs(phi_shift(sp.phi, x, r));
    const double lm = log_abs(phi_shift(sp.phi, x, -r));
    if (fc == 0.0) {
        if (fd == 0.0) throw DegenerateClass("f phi' vanishes identically");
        const double c1 = (lambda * r + mu) / (A * 2.0 * r * fd);
        const double c2 = (-lambda * r + mu) / (A * -2.0 * r * fd);
        return c1 * lp + c2 * lm;
    }
    const double p0 = -fd / fc;
    if (std::abs(std::abs(p0) - r) < 1e-12 * r) throw DegenerateClass("coincident roots in the class-3 integral");
    const double c1 = (lambda * r + mu) / (A * 2.0 * r * (fc * r + fd));
    const double c2 = (-lambda * r + mu) / (A * -2.0 * r * (-fc * r + fd));
    const double c3 = (lambda * p0 + mu) / (A * (p0 * p0 - r * r) * fc);
    const double y = phi_value(sp.phi, x);
    return c1 * lp + c2 * lm + c3 * log_abs(fc * y + fd);
}

}  // namespace

double DeformedPolynomial::eval(double y) const {
    double acc = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * y + coeffs[k];
    return acc;
}

std::pair<double, int> DeformedPolynomial::log_eval(double y) const {
    double v = 0.0;
    double shift = 0.0;
    if (std::abs(y) <= 1.0) {
        v = eval(y);
    } else {
        // y^d * sum c_k y^{k-d}
        const double z = 1.0 / y;
        for (double c : coeffs) v = v * z + c;
        shift = static_cast<double>(degree) * std::log(std::abs(y));
        if (y < 0.0 && degree % 2 == 1) v = -v;
    }
    if (v == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
    return {std::log(std::abs(v)) + shift, v > 0.0 ? 1 : -1};
}

DeformedPolynomial polynomial_chain(const SiStructure& s, const ParameterChain& chain, std::size_t n) {
    if (chain.lambda.size() < n + 1) throw ChainError("parameter chain too short for level " + std::to_string(n));
    const auto& sp = s.sp;
    DeformedPolynomial out;
    out.class_id = sp.cls;
    out.chain_offset = 0;
    Poly p{1.0};
    for (std::size_t m = 0; m < n; ++m) {
        const std::size_t k = n - 1 - m;
        const double lam = chain.lambda[n] + chain.lambda[k];
        const double mu = chain.mu[n] + chain.mu[k];
        const double md = static_cast<double>(m);
        const Poly dp = deriv(p);
        switch (sp.cls) {
            case SpClass::Class1: {
                const Poly fphi{-(sp.C + sp.Cp), -(sp.B + sp.Bp), -(sp.A + sp.Ap)};
                p = add(mul(fphi, dp), mul({mu, lam}, p));
                p.resize(m + 2);
                break;
            }
            case SpClass::Class2: {
                const double fa = sp.A + sp.Ap;
                const double fb = sp.B + sp.Bp;
                p = add(mul({0.0, 2.0 * fa, 2.0 * fb}, dp), mul({lam - md * fa, mu - md * fb}, p));
                p.resize(m + 2);
                break;
            }
            case SpClass::Class3: {
                const Poly lin{sp.D + sp.Dp, sp.C + sp.Cp};
                const Poly inner = add(mul({-sp.B, 0.0, -sp.A}, dp), mul({0.0, md * sp.A}, p));
                p = add(mul(lin, inner), mul({mu, lam}, p));
                p.resize(m + 3, 0.0);
                out.cancelled_top = p[m + 2];
                p.resize(m + 2);
                break;
            }
        }
    }
    out.coeffs = p;
    out.degree = n;
    return out;
}

DeformedPolynomial polynomial_chain(const CatalogEntry& entry, const Params& params, std::size_t n) {
    const auto s = entry.structure(entry.resolve(params));
    ParameterChain chain;
    try {
        chain = solve_chain(s, n);
    } catch (const NoRealRoot& e) {
        throw ChainError(e.what());
    } catch (const DegenerateClass& e) {
        throw ChainError(e.what());
    }
    return polynomial_chain(s, chain, n);
}

double w_over_f_integral(const SuperpotentialClass& sp, double lambda, double mu, double x) {
    switch (sp.cls) {
        case SpClass::Class1: return class1_integral(sp, lambda, mu, x);
        case SpClass::Class2: return class2_integral(sp, lambda, mu, x);
        case SpClass::Class3: return class3_integral(sp, lambda, mu, x);
    }
    throw DegenerateClass("unknown superpotential class");
}

BoundState::BoundState(const CatalogEntry& entry, const Params& params, std::size_t n)
    : s_(entry.structure(entry.resolve(params))), n_(n), x_ref_(entry.reference_point()) {
    try {
        chain_ = solve_chain(s_, n);
    } catch (const NoRealRoot& e) {
        throw ChainError(e.what());
    } catch (const DegenerateClass& e) {
        throw ChainError(e.what());
    }
    poly_ = polynomial_chain(s_, chain_, n);
    i_ref_ = w_over_f_integral(s_.sp, chain_.lambda[n], chain_.mu[n], x_ref_);
}

LogValue BoundState::log_eval(double x) const {
    const double f = s_.df.eval(x).f;
    const double phi = phi_value(s_.sp.phi, x);
    if (!std::isfinite(phi)) throw SingularPoint("phi is singular at x = " + std::to_string(x));
    const double nd = static_cast<double>(n_);
    double pref = 0.0;
    int sign = 1;
    double y = phi;
    switch (s_.sp.cls) {
        case SpClass::Class1:
            break;
        case SpClass::Class2:
            if (phi == 0.0) throw SingularPoint("class-2 state needs phi != 0");
            y = 1.0 / (phi * phi);
            pref = nd * std::log(std::abs(phi));
            if (phi < 0.0 && n_ % 2 == 1) sign = -1;
            break;
        case SpClass::Class3: {
            const double s2 = class3_s2(s_.sp, x);
            if (!(s2 > 0.0)) throw SingularPoint("class-3 state needs A phi^2 + B > 0");
            pref = -0.5 * nd * std::log(s2);
            break;
        }
    }
    const auto [lp, ps] = poly_.log_eval(y);
    const double integral = w_over_f_integral(s_.sp, chain_.lambda[n_], chain_.mu[n_], x) - i_ref_;
    return {-0.5 * std::log(f) + pref + lp - integral, sign * ps};
}

double BoundState::operator()(double x) const {
    const auto v = log_eval(x);
    if (v.sign == 0) return 0.0;
    return v.sign * std::exp(v.log_abs);
}

double ground_state_numeric(const CatalogEntry& entry, const Params& params, double x) {
    return BoundState(entry, params, 0)(x);
}

double excited_state_eval(const CatalogEntry& entry, const Params& params, std::size_t n, double x) {
    return BoundState(entry, params, n)(x);
}

Normalized normalize(std::span<const double> samples, const Grid& grid) {
    std::vector<double> sq(samples.size());
    for (std::size_t j = 0; j < samples.size(); ++j) {
        if (!std::isfinite(samples[j])) throw ParameterError("samples must be finite");
        sq[j] = samples[j] * samples[j];
    }
    const double integral = quadrature(sq, grid);
    if (!(integral >= 1e-300)) throw ZeroNorm("norm integral below 1e-300");
    const double c = 1.0 / std::sqrt(integral);
    Normalized out{c, std::vector<double>(samples.begin(), samples.end())};
    for (double& v : out.samples) v *= c;
    return out;
}

namespace {

// One end of the domain as a sequence of nested shells and probe points.
struct EndProbe {
    std::string label;
    bool finite;
    double edge;       // finite end point or origin of the dyadic sequence
    double direction;  // +1 towards +infinity / the right end
    std::vector<double> marks;  // shell boundaries moving outwards, marks[0] touches the core
};

constexpr double kRatioBound = 0.95;
constexpr std::size_t kRatioRun = 3;

bool geometric_decrease(const std::vector<double>& v) {
    if (v.size() < kRatioRun + 1) return false;
    for (std::size_t k = v.size() - kRatioRun; k < v.size(); ++k) {
        const double a = v[k - 1];
        const double b = v[k];
        if (!std::isfinite(a) || !std::isfinite(b)) return false;
        if (b == 0.0) continue;
        if (!(a > 0.0) || !(b / a < kRatioBound)) return false;
    }
    return true;
}

// Log-values on a doubling sequence whose per-step change has settled.
bool steady_slope(const std::vector<double>& l) {
    const std::size_t k = l.size();
    if (k < 4) return false;
    const double s0 = l[k - 3] - l[k - 4];
    const double s1 = l[k - 2] - l[k - 3];
    const double s2 = l[k - 1] - l[k - 2];
    return std::abs(s1 - s0) < 0.01 && std::abs(s2 - s1) < 0.01;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

}  // namespace

AdmissibilityVerdict admissibility_check(const CatalogEntry& entry, const Params& params, std::size_t n) {
    AdmissibilityVerdict verdict;
    std::unique_ptr<BoundState> psi;
    try {
        psi = std::make_unique<BoundState>(entry, params, n);
    } catch (const Error& e) {
        verdict.integrability_evidence = std::string("no state: ") + e.what();
        verdict.hermiticity_evidence = verdict.integrability_evidence;
        return verdict;
    }
    const auto& dom = entry.domain;
    const auto& df = psi->structure().df;
    const double ref = entry.probe.ref;
    const double limit = entry.probe.limit;

    double a0 = 0.0;
    double b0 = 0.0;
    double s = 0.0;
    if (dom.bounded()) {
        s = 0.1 * (*dom.hi() - *dom.lo());
        a0 = *dom.lo() + s;
        b0 = *dom.hi() - s;
    } else if (dom.lo_finite()) {
        s = 0.1 * ref;
        a0 = *dom.lo() + s;
        b0 = *dom.lo() + ref;
    } else if (dom.hi_finite()) {
        s = 0.1 * ref;
        a0 = *dom.hi() - ref;
        b0 = *dom.hi() - s;
    } else {
        a0 = -ref;
        b0 = ref;
    }

    auto log_sq = [&](double x) {
        const auto v = psi->log_eval(x);
        return v.sign == 0 ? -std::numeric_limits<double>::infinity() : 2.0 * v.log_abs;
    };

    const Grid core(a0, b0, 2001);
    std::vector<double> lcore(core.size());
    double lmax = -std::numeric_limits<double>::infinity();
    try {
        for (std::size_t j = 0; j < core.size(); ++j) {
            lcore[j] = log_sq(core.node(j));
            lmax = std::max(lmax, lcore[j]);
        }
        if (!std::isfinite(lmax)) throw ZeroNorm("state vanishes or overflows on the core interval");
    } catch (const Error& e) {
        verdict.integrability_evidence = std::string("evaluation failed: ") + e.what();
        verdict.hermiticity_evidence = verdict.integrability_evidence;
        return verdict;
    }

    std::vector<EndProbe> ends;
    auto finite_end = [&](const char* label, double e, double dir) {
        EndProbe p{label, true, e, dir, {}};
        for (int k = 0; k <= 20; ++k) p.marks.push_back(e - dir * s * std::ldexp(1.0, -k));
        ends.push_back(std::move(p));
    };
    auto infinite_end = [&](const char* label, double origin, double dir) {
        EndProbe p{label, false, origin, dir, {}};
        std::vector<double> ls, lh;
        for (double r = ref; r <= entry.probe.cap; r *= 2.0) {
            const double x = origin + dir * r;
            double l = -std::numeric_limits<double>::infinity();
            double lf = 0.0;
            try {
                l = log_sq(x);
                lf = std::log(df.raw(x).f);
            } catch (const Error&) {
                break;
            }
            p.marks.push_back(x);
            ls.push_back(l);
            lh.push_back(l + lf);
            if (r < limit * (1.0 - 1e-12) || ls.size() < 4) continue;
            if (!std::isfinite(l) || l < lmax - 92.0 || l > lmax + 92.0) break;  // e^{+-92} ~ 1e{+-40}
            if (steady_slope(ls) && steady_slope(lh)) break;
        }
        ends.push_back(std::move(p));
    };
    if (dom.lo_finite())
        finite_end("left", *dom.lo(), -1.0);
    else
        infinite_end("left", dom.hi_finite() ? *dom.hi() : 0.0, -1.0);
    if (dom.hi_finite())
        finite_end("right", *dom.hi(), 1.0);
    else
        infinite_end("right", dom.lo_finite() ? *dom.lo() : 0.0, 1.0);

    try {
        // square integrability: core plus dyadic shells towards each end
        std::vector<double> vals(core.size());
        for (std::size_t j = 0; j < core.size(); ++j) vals[j] = std::exp(lcore[j] - lmax);
        double total = quadrature(vals, core);

        std::vector<std::vector<double>> shells(ends.size());
        for (std::size_t e = 0; e < ends.size(); ++e) {
            const auto& m = ends[e].marks;
            for (std::size_t k = 0; k + 1 < m.size(); ++k) {
                const Grid g(std::min(m[k], m[k + 1]), std::max(m[k], m[k + 1]), 201);
                std::vector<double> v(g.size());
                for (std::size_t j = 0; j < g.size(); ++j) v[j] = std::exp(log_sq(g.node(j)) - lmax);
                shells[e].push_back(quadrature(v, g));
            }
            for (double c : shells[e]) total += c;
        }
        bool all_ok = std::isfinite(total);
        std::ostringstream ev;
        for (std::size_t e = 0; e < ends.size(); ++e) {
            const auto& c = shells[e];
            const double last = c.empty() ? 0.0 : c.back();
            const bool converged = std::isfinite(total) && std::isfinite(last) && last <= 1e-8 * total;
            const bool summable = !converged && geometric_decrease(c);
            const bool ok = converged || summable;
            all_ok = all_ok && ok;
            ev << ends[e].label << ": ";
            if (converged)
                ev << "converged (last shell " << fmt(last / total) << " of total)";
            else if (summable)
                ev << "summable tail (shell ratio " << fmt(c[c.size() - 1] / c[c.size() - 2]) << ")";
            else
                ev << "diverges (last shell " << fmt(last / total) << " of total)";
            ev << "; ";
        }
        verdict.square_integrable = all_ok;
        verdict.integrability_evidence = ev.str();
    } catch (const Error& e) {
        verdict.square_integrable = false;
        verdict.integrability_evidence = std::string("evaluation failed: ") + e.what();
    }

    try {
        bool all_ok = true;
        std::ostringstream ev;
        for (const auto& end : ends) {
            std::vector<double> xs;
            if (end.finite) {
                for (int k = 0; k <= 20; ++k) xs.push_back(end.edge - end.direction * s * std::ldexp(1.0, -k));
            } else {
                xs = end.marks;
            }
            ev << end.label << ": ";
            const double f_edge = end.finite ? df.raw(end.edge).f : df.raw(xs.back()).f;
            const double f_prev = end.finite ? f_edge : df.raw(xs[xs.size() - 2]).f;
            if (std::isfinite(f_edge) && std::abs(f_edge - f_prev) <= 1e-3 * std::max(1.0, std::abs(f_edge))) {
                ev << "f -> " << fmt(f_edge) << ", automatic; ";
                continue;
            }
            std::vector<double> lv;
            for (double x : xs) lv.push_back(log_sq(x) + std::log(df.eval(x).f));
            const double drop = lv.back() - lv.front();
            std::vector<double> seq;
            for (double l : lv) seq.push_back(std::exp(l - lv.front()));
            const bool decayed = drop < std::log(1e-8);
            const bool power_law = !decayed && geometric_decrease(seq);
            const bool ok = decayed || power_law;
            all_ok = all_ok && ok;
            if (decayed)
                ev << "|psi|^2 f decays by " << fmt(std::exp(drop));
            else if (power_law)
                ev << "|psi|^2 f decays geometrically (ratio " << fmt(seq[seq.size() - 1] / seq[seq.size() - 2])
                   << ")";
            else
                ev << "|psi|^2 f does not vanish (last/first " << fmt(std::exp(drop)) << ")";
            ev << "; ";
        }
        verdict.hermiticity_ok = all_ok;
        verdict.hermiticity_evidence = ev.str();
    } catch (const Error& e) {
        verdict.hermiticity_ok = false;
        verdict.hermiticity_evidence = std::string("evaluation failed: ") + e.what();
    }
    verdict.admissible = verdict.square_integrable && verdict.hermiticity_ok;
    return verdict;
}

}  // namespace pdem

namespace pdem {

double factorization_residual(const BoundState& ground, std::span<const double> xs, double h) {
    if (ground.level() != 0) throw ParameterError("factorization residual needs the ground state");
    const auto& s = ground.structure();
    const double lambda = ground.chain().lambda[0];
    const double mu = ground.chain().mu[0];
    auto chi = [&](double x) { return std::sqrt(s.df.eval(x).f) * ground(x); };
    double worst = 0.0;
    double scale = 0.0;
    for (double x : xs) {
        const double psi = ground(x);
        const double d = (-chi(x + 2 * h) + 8 * chi(x + h) - 8 * chi(x - h) + chi(x - 2 * h)) / (12 * h);
        const double r = std::sqrt(s.df.eval(x).f) * d + w_eval(s.sp, lambda, mu, x).W * psi;
        worst = std::max(worst, std::abs(r));
        scale = std::max(scale, std::abs(psi));
    }
    if (!(scale > 0.0)) throw ZeroNorm("ground state vanishes on the sample");
    return worst / scale;
}

}  // namespace pdem
