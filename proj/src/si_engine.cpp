#include "pdem/si_engine.hpp"

#include <cmath>
#include <string>

namespace pdem {

std::string_view phi_name(PhiKind kind) {
    switch (kind) {
        case PhiKind::Tan: return "tan";
        case PhiKind::Tanh: return "tanh";
        case PhiKind::Cot: return "cot";
        case PhiKind::Coth: return "coth";
        case PhiKind::Identity: return "x";
        case PhiKind::Reciprocal: return "1/x";
        case PhiKind::ExpNeg: return "exp(-x)";
        case PhiKind::Sin: return "sin";
    }
    return "unknown";
}

double phi_value(PhiKind kind, double x) {
    switch (kind) {
        case PhiKind::Tan: return std::tan(x);
        case PhiKind::Tanh: return std::tanh(x);
        case PhiKind::Cot: return 1.0 / std::tan(x);
        case PhiKind::Coth: return 1.0 / std::tanh(x);
        case PhiKind::Identity: return x;
        case PhiKind::Reciprocal: return 1.0 / x;
        case PhiKind::ExpNeg: return std::exp(-x);
        case PhiKind::Sin: return std::sin(x);
    }
    return 0.0;
}

double phi_derivative(PhiKind kind, double x) {
    switch (kind) {
        case PhiKind::Tan: {
            const double c = std::cos(x);
            return 1.0 / (c * c);
        }
        case PhiKind::Tanh: {
            const double c = std::cosh(x);
            return 1.0 / (c * c);
        }
        case PhiKind::Cot: {
            const double s = std::sin(x);
            return -1.0 / (s * s);
        }
        case PhiKind::Coth: {
            const double s = std::sinh(x);
            return -1.0 / (s * s);
        }
        case PhiKind::Identity: return 1.0;
        case PhiKind::Reciprocal: return -1.0 / (x * x);
        case PhiKind::ExpNeg: return -std::exp(-x);
        case PhiKind::Sin: return std::cos(x);
    }
    return 0.0;
}

double SuperpotentialClass::phi_prime_rel(double y) const {
    switch (cls) {
        case SpClass::Class1: return (A * y + B) * y + C;
        case SpClass::Class2: return A * y * y + B;
        case SpClass::Class3: return (C * y + D) * std::sqrt(A * y * y + B);
    }
    return 0.0;
}

double SuperpotentialClass::f_phi_prime(double y) const {
    switch (cls) {
        case SpClass::Class1: return ((A + Ap) * y + (B + Bp)) * y + (C + Cp);
        case SpClass::Class2: return (A + Ap) * y * y + (B + Bp);
        case SpClass::Class3: return ((C + Cp) * y + (D + Dp)) * std::sqrt(A * y * y + B);
    }
    return 0.0;
}

double SuperpotentialClass::g_from_class(double x) const {
    const double y = phi_value(phi, x);
    switch (cls) {
        case SpClass::Class1: return ((Ap * y + Bp) * y + Cp) / ((A * y + B) * y + C);
        case SpClass::Class2: return (Ap * y * y + Bp) / (A * y * y + B);
        case SpClass::Class3: return (Cp * y + Dp) / (C * y + D);
    }
    return 0.0;
}

WValue w_eval(const SuperpotentialClass& sp, double lambda, double mu, double x) {
    const double y = phi_value(sp.phi, x);
    if (!std::isfinite(y)) throw SingularPoint("phi is singular at x = " + std::to_string(x));
    switch (sp.cls) {
        case SpClass::Class1: {
            const double dphi = sp.phi_prime_rel(y);
            return {lambda * y + mu, lambda * dphi};
        }
        case SpClass::Class2: {
            if (y == 0.0) throw SingularPoint("class-2 superpotential needs phi != 0");
            const double dphi = sp.phi_prime_rel(y);
            return {lambda * y + mu / y, dphi * (lambda - mu / (y * y))};
        }
        case SpClass::Class3: {
            // 1 - sin^2 x cancels near the edges; cos^2 x does not
            const bool unit_sin = sp.phi == PhiKind::Sin && sp.A == -1.0 && sp.B == 1.0;
            const double s2 = unit_sin ? std::cos(x) * std::cos(x) : sp.A * y * y + sp.B;
            if (!(s2 > 1e-30)) throw SingularPoint("class-3 superpotential needs A phi^2 + B > 0");
            const double s = std::sqrt(s2);
            return {(lambda * y + mu) / s, (lambda * sp.B - mu * sp.A * y) * (sp.C * y + sp.D) / s2};
        }
    }
    return {0.0, 0.0};
}

namespace {

double quadratic_root(double b, double c, int sign, const char* what) {
    // root of t^2 + b t + c = 0
    const double disc = b * b - 4.0 * c;
    if (disc < 0.0) throw NoRealRoot(std::string("no real root for ") + what);
    return 0.5 * (-b + (sign >= 0 ? 1.0 : -1.0) * std::sqrt(disc));
}

void push(ParameterChain& chain, double lambda, double mu, double eps) {
    chain.lambda.push_back(lambda);
    chain.mu.push_back(mu);
    chain.eps.push_back(eps);
    chain.energy.push_back(chain.energy.empty() ? eps : chain.energy.back() + eps);
}

ParameterChain solve_class1(const SiStructure& s, std::size_t depth) {
    const auto& sp = s.sp;
    const double fa = sp.A + sp.Ap;
    const double fb = sp.B + sp.Bp;
    const double fc = sp.C + sp.Cp;
    const auto [v2, v1, v0] = s.v_basis;

    ParameterChain chain;
    // phi^2: lambda^2 - fa lambda - v2 = 0
    double lambda = quadratic_root(-fa, -v2, s.branch.signs[0], "lambda");
    double mu = 0.0;
    if (v1 != 0.0 || fb != 0.0) {
        if (lambda == 0.0) throw DegenerateClass("lambda vanishes while the phi coefficient does not");
        mu = (v1 + lambda * fb) / (2.0 * lambda);
    }
    push(chain, lambda, mu, v0 - mu * mu + lambda * fc);

    for (std::size_t i = 0; i < depth; ++i) {
        const double next_lambda = lambda + fa;
        const double top = 2.0 * lambda * mu + (lambda + next_lambda) * fb;
        if (next_lambda == 0.0 && top != 0.0) throw DegenerateClass("lambda chain passes through zero");
        const double next_mu = top == 0.0 ? 0.0 : top / (2.0 * next_lambda);
        const double eps = mu * mu - next_mu * next_mu + (lambda + next_lambda) * fc;
        lambda = next_lambda;
        mu = next_mu;
        push(chain, lambda, mu, eps);
    }
    return chain;
}

ParameterChain solve_class2(const SiStructure& s, std::size_t depth) {
    const auto& sp = s.sp;
    const double fa = sp.A + sp.Ap;
    const double fb = sp.B + sp.Bp;
    const auto [v2, vm, v0] = s.v_basis;

    ParameterChain chain;
    double lambda = quadratic_root(-fa, -v2, s.branch.signs[0], "lambda");
    double mu = quadratic_root(fb, -vm, s.branch.signs[1], "mu");
    if (lambda == 0.0 || mu == 0.0) throw DegenerateClass("class 2 needs nonzero lambda and mu");
    push(chain, lambda, mu, v0 - 2.0 * lambda * mu + lambda * fb - mu * fa);

    for (std::size_t i = 0; i < depth; ++i) {
        const double nl = lambda + fa;
        const double nm = mu - fb;
        const double eps = 2.0 * lambda * mu + lambda * fb - mu * fa - 2.0 * nl * nm + nl * fb - nm * fa;
        lambda = nl;
        mu = nm;
        push(chain, lambda, mu, eps);
    }
    return chain;
}

ParameterChain solve_class3(const SiStructure& s, std::size_t depth) {
    const auto& sp = s.sp;
    if (sp.A == 0.0 || sp.B == 0.0) throw DegenerateClass("class 3 needs A, B != 0");
    if (!(-sp.B / sp.A > 0.0))
        throw DegenerateClass("class-3 solver needs A phi^2 + B to have real roots");
    const double fc = sp.C + sp.Cp;
    const double fd = sp.D + sp.Dp;
    const auto [u2, u1, u0] = s.v_basis;

    // At a root phi_r of A phi^2 + B the conditions collapse to quadratics in
    // t = lambda phi_r + mu; the phi^2 coefficient then fixes epsilon.
    const double r = std::sqrt(-sp.B / sp.A);
    const std::array<double, 2> roots{r, -r};
    std::array<double, 2> k{};
    std::array<double, 2> t{};
    for (int j = 0; j < 2; ++j) {
        const double p = roots[j];
        k[j] = sp.A * p * (fc * p + fd);
        const double u = (u2 * p + u1) * p + u0;
        t[j] = quadratic_root(k[j], -u, s.branch.signs[j], "class-3 root parameter");
    }
    auto unpack = [&](double& lambda, double& mu) {
        lambda = (t[0] - t[1]) / (roots[0] - roots[1]);
        mu = t[0] - lambda * roots[0];
    };

    ParameterChain chain;
    double lambda = 0.0;
    double mu = 0.0;
    unpack(lambda, mu);
    push(chain, lambda, mu, (u2 - lambda * lambda - mu * sp.A * fc) / sp.A);

    for (std::size_t i = 0; i < depth; ++i) {
        t[0] -= k[0];
        t[1] -= k[1];
        double nl = 0.0;
        double nm = 0.0;
        unpack(nl, nm);
        const double eps = (lambda * lambda - nl * nl - sp.A * fc * (mu + nm)) / sp.A;
        lambda = nl;
        mu = nm;
        push(chain, lambda, mu, eps);
    }
    return chain;
}

}  // namespace

ParameterChain solve_chain(const SiStructure& s, std::size_t depth) {
    switch (s.sp.cls) {
        case SpClass::Class1: return solve_class1(s, depth);
        case SpClass::Class2: return solve_class2(s, depth);
        case SpClass::Class3: return solve_class3(s, depth);
    }
    throw DegenerateClass("unknown superpotential class");
}

SiResidual si_residual(const SiStructure& s, const ParameterChain& chain, std::size_t i, double x) {
    if (i + 1 >= chain.lambda.size()) throw ChainError("chain too short for residual index");
    const double f = s.df.eval(x).f;
    const auto w0 = w_eval(s.sp, chain.lambda[0], chain.mu[0], x);
    const auto wi = w_eval(s.sp, chain.lambda[i], chain.mu[i], x);
    const auto wn = w_eval(s.sp, chain.lambda[i + 1], chain.mu[i + 1], x);
    SiResidual r{};
    r.r1 = w0.W * w0.W - f * w0.W_prime + chain.eps[0] - s.v_eff(x);
    r.r2 = wi.W * wi.W + f * wi.W_prime - wn.W * wn.W + f * wn.W_prime - chain.eps[i + 1];
    return r;
}

double partner_potential(const SiStructure& s, const ParameterChain& chain, double x) {
    if (chain.lambda.empty()) throw ChainError("empty chain");
    const double f = s.df.eval(x).f;
    return s.v_eff(x) + 2.0 * f * w_eval(s.sp, chain.lambda[0], chain.mu[0], x).W_prime;
}

}  // namespace pdem
