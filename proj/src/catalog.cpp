#include "pdem/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

namespace pdem {

namespace {

constexpr double kPi = std::numbers::pi;

double sq(double v) { return v * v; }

void need(bool ok, const std::string& what) {
    if (!ok) throw RangeError("parameter out of range: " + what);
}

bool is_nonneg_integer(double v) { return v >= 0.0 && std::floor(v) == v; }

std::string trim(std::string_view s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

// 1 - sin x and 1 + sin x without cancellation near +-pi/2.
double one_minus_sin(double x) { return 2.0 * sq(std::sin(kPi / 4.0 - x / 2.0)); }
double one_plus_sin(double x) { return 2.0 * sq(std::sin(kPi / 4.0 + x / 2.0)); }

SuperpotentialClass class1(PhiKind phi, double A, double B, double C, double Ap, double Bp, double Cp) {
    SuperpotentialClass sp;
    sp.cls = SpClass::Class1;
    sp.phi = phi;
    sp.A = A;
    sp.B = B;
    sp.C = C;
    sp.Ap = Ap;
    sp.Bp = Bp;
    sp.Cp = Cp;
    return sp;
}

SiStructure make_structure(SuperpotentialClass sp, DeformingFunction df, ScalarField v,
                           std::array<double, 3> basis, BranchRule branch) {
    return SiStructure{sp, std::move(df), std::move(v), basis, branch};
}

BranchRule signs(int a, int b = +1) {
    BranchRule r;
    r.signs = {a, b};
    return r;
}

// ---------------------------------------------------------------- box / PT

double trig_vtilde(double alpha, const AmbiguityParams& amb, double x) {
    const double c = std::cos(2.0 * x);
    return -(amb.rho + amb.sigma) * sq(alpha) * c * c + amb.rho * alpha * (2.0 + alpha) * c +
           amb.sigma * sq(alpha);
}

CatalogEntry make_box() {
    CatalogEntry e;
    e.name = "box";
    e.title = "particle in a box";
    e.domain = Interval::finite(-kPi / 2.0, kPi / 2.0);
    e.params = {{"alpha", 0.5}};
    e.range_text = "-1 < alpha (alpha = 0 is the undeformed limit)";
    e.v_eff_text = "0 on (-pi/2, pi/2)";
    e.deforming_text = "g = alpha sin^2 x";
    e.class_text = "class 1 (mu = 0), phi = tan x";
    e.validate = [](const Params& p) { need(p.get("alpha") > -1.0, "box needs alpha > -1"); };
    e.deforming = [d = e.domain](const Params& p) {
        return DeformingFunction(DeformingFamily::TrigSinSq, p.get("alpha"), 0.0, d);
    };
    e.structure = [d = e.deforming](const Params& p) {
        const double a = p.get("alpha");
        return make_structure(class1(PhiKind::Tan, 1, 0, 1, a, 0, 0), d(p), [](double) { return 0.0; },
                              {0.0, 0.0, 0.0}, signs(+1));
    };
    e.printed_chain = [](const Params& p, std::size_t i) {
        return ChainPoint{(static_cast<double>(i) + 1.0) * (1.0 + p.get("alpha")), 0.0};
    };
    e.printed_energy = [](const Params& p, std::size_t n) {
        return (1.0 + p.get("alpha")) * sq(static_cast<double>(n) + 1.0);
    };
    e.printed_ground_state_log = [](const Params& p, double x) {
        return std::log(std::cos(x)) - std::log1p(p.get("alpha") * sq(std::sin(x)));
    };
    e.counting = [](const Params&) { return BoundCount::infinite(); };
    e.v_tilde_closed = [](const Params& p, const AmbiguityParams& amb, double x) {
        return trig_vtilde(p.get("alpha"), amb, x);
    };
    return e;
}

double tpt_delta(const Params& p) {
    const double A = p.get("A");
    return std::sqrt(sq(1.0 + p.get("alpha")) + 4.0 * A * (A - 1.0));
}

double tpt_lambda(const Params& p) { return 0.5 * (1.0 + p.get("alpha") + tpt_delta(p)); }

CatalogEntry make_trig_pt() {
    CatalogEntry e;
    e.name = "trig_poschl_teller";
    e.title = "trigonometric Poschl-Teller";
    e.domain = Interval::finite(-kPi / 2.0, kPi / 2.0);
    e.params = {{"A", 2.0}, {"alpha", 0.3}};
    e.range_text = "A > 1, -1 < alpha";
    e.v_eff_text = "A(A-1) sec^2 x";
    e.deforming_text = "g = alpha sin^2 x";
    e.class_text = "class 1 (mu = 0), phi = tan x";
    e.validate = [](const Params& p) {
        need(p.get("A") > 1.0, "trig_poschl_teller needs A > 1");
        need(p.get("alpha") > -1.0, "trig_poschl_teller needs alpha > -1");
    };
    e.deforming = [d = e.domain](const Params& p) {
        return DeformingFunction(DeformingFamily::TrigSinSq, p.get("alpha"), 0.0, d);
    };
    e.structure = [d = e.deforming](const Params& p) {
        const double a = p.get("alpha");
        const double k = p.get("A") * (p.get("A") - 1.0);
        return make_structure(class1(PhiKind::Tan, 1, 0, 1, a, 0, 0), d(p),
                              [k](double x) { return k / sq(std::cos(x)); }, {k, 0.0, k}, signs(+1));
    };
    e.printed_chain = [](const Params& p, std::size_t i) {
        return ChainPoint{tpt_lambda(p) + static_cast<double>(i) * (1.0 + p.get("alpha")), 0.0};
    };
    e.printed_energy = [](const Params& p, std::size_t n) {
        const double a = p.get("alpha");
        const double nn = static_cast<double>(n);
        return sq(0.5 * (tpt_delta(p) + 1.0) + nn) + a * nn * (nn + 1.0) - 0.25 * a * a;
    };
    e.printed_ground_state_log = [](const Params& p, double x) {
        const double a = p.get("alpha");
        const double k = tpt_lambda(p) / (1.0 + a);
        return k * std::log(std::cos(x)) - 0.5 * (k + 1.0) * std::log1p(a * sq(std::sin(x)));
    };
    e.counting = [](const Params&) { return BoundCount::infinite(); };
    e.v_tilde_closed = [](const Params& p, const AmbiguityParams& amb, double x) {
        return trig_vtilde(p.get("alpha"), amb, x);
    };
    return e;
}

double hpt_lambda(const Params& p) {
    const double A = p.get("A");
    const double a = p.get("alpha");
    return 0.5 * (a - 1.0 + std::sqrt(sq(1.0 - a) + 4.0 * A * (A + 1.0)));
}

CatalogEntry make_hyp_pt() {
    CatalogEntry e;
    e.name = "hyperbolic_poschl_teller";
    e.title = "hyperbolic Poschl-Teller";
    e.domain = Interval::real_line();
    e.params = {{"A", 1.0}, {"alpha", 0.5}};
    e.range_text = "A > 0, 0 <= alpha < 1";
    e.v_eff_text = "-A(A+1) sech^2 x";
    e.deforming_text = "g = alpha sinh^2 x";
    e.class_text = "class 1 (mu = 0), phi = tanh x";
    e.validate = [](const Params& p) {
        need(p.get("A") > 0.0, "hyperbolic_poschl_teller needs A > 0");
        const double a = p.get("alpha");
        need(a >= 0.0 && a < 1.0, "hyperbolic_poschl_teller needs 0 <= alpha < 1");
    };
    e.deforming = [d = e.domain](const Params& p) {
        return DeformingFunction(DeformingFamily::HypSinhSq, p.get("alpha"), 0.0, d);
    };
    e.structure = [d = e.deforming](const Params& p) {
        const double a = p.get("alpha");
        const double k = p.get("A") * (p.get("A") + 1.0);
        return make_structure(class1(PhiKind::Tanh, -1, 0, 1, a, 0, 0), d(p),
                              [k](double x) { return -k / sq(std::cosh(x)); }, {k, 0.0, -k}, signs(+1));
    };
    e.printed_chain = [](const Params& p, std::size_t i) {
        return ChainPoint{hpt_lambda(p) + static_cast<double>(i) * (p.get("alpha") - 1.0), 0.0};
    };
    e.printed_energy = [](const Params& p, std::size_t n) {
        const double A = p.get("A");
        const double a = p.get("alpha");
        const double nn = static_cast<double>(n);
        const double delta = std::sqrt(sq(1.0 - a) + 4.0 * A * (A + 1.0));
        return -sq(0.5 * (delta - 1.0) - nn) + a * nn * (nn + 1.0) + 0.25 * a * a;
    };
    e.printed_ground_state_log = [](const Params& p, double x) {
        const double a = p.get("alpha");
        const double k = hpt_lambda(p) / (1.0 - a);
        const double ax = std::abs(x);
        // log sech x = -|x| - log((1 + e^{-2|x|})/2)
        const double log_sech = -ax - std::log1p(std::exp(-2.0 * ax)) + std::log(2.0);
        return k * log_sech + 0.5 * (k - 1.0) * std::log1p(a * sq(std::sinh(x)));
    };
    e.counting = [](const Params& p) {
        if (p.get("alpha") > 0.0) return BoundCount::zero();
        return BoundCount::finite(static_cast<std::size_t>(std::ceil(p.get("A"))));
    };
    e.v_tilde_closed = [](const Params& p, const AmbiguityParams& amb, double x) {
        const double a = p.get("alpha");
        const double c = std::cosh(2.0 * x);
        return amb.rho * a * (2.0 - a) * c + (amb.rho + amb.sigma) * a * a * c * c - amb.sigma * a * a;
    };
    e.v_tilde_printed = false;
    e.probe.ref = 1.0;
    e.probe.limit = 256.0;
    e.window_lo = -5.0;
    e.window_hi = 5.0;
    return e;
}

// ---------------------------------------------------------------- oscillators

double so_delta(const Params& p) { return std::hypot(p.get("omega"), p.get("alpha")); }
double so_lambda(const Params& p) { return 0.5 * (p.get("alpha") + so_delta(p)); }
double so_mu(const Params& p) { return p.get("beta") - p.get("b") * p.get("omega") / (2.0 * so_lambda(p)); }

CatalogEntry make_shifted_oscillator() {
    CatalogEntry e;
    e.name = "shifted_oscillator";
    e.title = "shifted oscillator";
    e.domain = Interval::real_line();
    e.params = {{"omega", 2.0}, {"b", 0.5}, {"alpha", 0.1}, {"beta", 0.2}};
    e.range_text = "omega > 0, alpha > beta^2 >= 0 (alpha = beta = 0 is the undeformed limit)";
    e.v_eff_text = "omega^2/4 (x - 2b/omega)^2";
    e.deforming_text = "g = alpha x^2 + 2 beta x";
    e.class_text = "class 1, phi = x";
    e.validate = [](const Params& p) {
        need(p.get("omega") > 0.0, "shifted_oscillator needs omega > 0");
        const double a = p.get("alpha");
        const double b = p.get("beta");
        need(a > b * b || (a == 0.0 && b == 0.0), "shifted_oscillator needs alpha > beta^2");
    };
    e.deforming = [d = e.domain](const Params& p) {
        return DeformingFunction(DeformingFamily::Quadratic, p.get("alpha"), p.get("beta"), d);
    };
    e.structure = [d = e.deforming](const Params& p) {
        const double w = p.get("omega");
        const double b = p.get("b");
        return make_structure(class1(PhiKind::Identity, 0, 0, 1, p.get("alpha"), 2.0 * p.get("beta"), 0), d(p),
                              [w, b](double x) { return 0.25 * w * w * sq(x - 2.0 * b / w); },
                              {0.25 * w * w, -b * w, b * b}, signs(+1));
    };
    e.printed_chain = [](const Params& p, std::size_t i) {
        const double a = p.get("alpha");
        const double be = p.get("beta");
        const double l = so_lambda(p);
        const double m = so_mu(p);
        const double ii = static_cast<double>(i);
        return ChainPoint{l + ii * a, (l * m + 2.0 * ii * be * l + ii * ii * a * be) / (l + ii * a)};
    };
    e.printed_energy = [](const Params& p, std::size_t n) {
        const double a = p.get("alpha");
        const double be = p.get("beta");
        const double w = p.get("omega");
        const double b = p.get("b");
        const double D = so_delta(p);
        const double nn = static_cast<double>(n);
        const double q = (((2.0 * nn + 1.0) * D + (2.0 * nn * nn + 2.0 * nn + 1.0) * a) * be - b * w) /
                         (D + (2.0 * nn + 1.0) * a);
        return (nn + 0.5) * D + (nn * nn + nn + 0.5) * a + b * b - q * q;
    };
    e.printed_ground_state_log = [](const Params& p, double x) {
        const double a = p.get("alpha");
        const double be = p.get("beta");
        if (a == 0.0) throw RangeError("printed shifted-oscillator ground state needs alpha != 0");
        const double l = so_lambda(p);
        const double m = so_mu(p);
        const double dl = std::sqrt(a - be * be);
        const double f = 1.0 + a * x * x + 2.0 * be * x;
        return -(l + a) / (2.0 * a) * std::log(f) + (l * be - m * a) / (a * dl) * std::atan((a * x + be) / dl);
    };
    e.counting = [](const Params&) { return BoundCount::infinite(); };
    e.v_tilde_closed = [](const Params& p, const AmbiguityParams& amb, double x) {
        const double a = p.get("alpha");
        const double be = p.get("beta");
        return 2.0 * (amb.rho + 2.0 * amb.sigma) * a * x * (a * x + 2.0 * be) + 2.0 * amb.rho * a +
               4.0 * amb.sigma * be * be;
    };
    e.reshaped_potential = [](const Params& p, const AmbiguityParams& amb, double x) {
        const double a = p.get("alpha");
        const double be = p.get("beta");
        const double w = p.get("omega");
        const double b = p.get("b");
        const double kappa = amb.rho + 2.0 * amb.sigma;
        const double w2 = w * w - 8.0 * kappa * a * a;
        if (!(w2 > 0.0)) throw RangeError("reshaped oscillator frequency is not real");
        const double ws = std::sqrt(w2);
        const double bs = (b * w + 4.0 * kappa * a * be) / ws;
        const double dv = b * b - bs * bs - 2.0 * amb.rho * a - 4.0 * amb.sigma * be * be;
        return 0.25 * w2 * sq(x - 2.0 * bs / ws) + dv;
    };
    e.truncation.n_points = 8001;
    return e;
}

double o3_delta(const Params& p) { return std::hypot(p.get("omega"), p.get("alpha")); }

CatalogEntry make_oscillator_3d() {
    CatalogEntry e;
    e.name = "oscillator_3d";
    e.title = "three-dimensional oscillator";
    e.domain = Interval::half_line(0.0);
    e.params = {{"omega", 2.0}, {"l", 1.0}, {"alpha", 0.1}};
    e.range_text = "omega > 0, l = 0, 1, 2, ..., alpha >= 0";
    e.v_eff_text = "omega^2 x^2 / 4 + l(l+1)/x^2";
    e.deforming_text = "g = alpha x^2";
    e.class_text = "class 2, phi = 1/x";
    e.validate = [](const Params& p) {
        need(p.get("omega") > 0.0, "oscillator_3d needs omega > 0");
        need(is_nonneg_integer(p.get("l")), "oscillator_3d needs integer l >= 0");
        need(p.get("alpha") >= 0.0, "oscillator_3d needs alpha >= 0");
    };
    e.deforming = [d = e.domain](const Params& p) {
        return DeformingFunction(DeformingFamily::Quadratic, p.get("alpha"), 0.0, d);
    };
    e.structure = [d = e.deforming](const Params& p) {
        SuperpotentialClass sp;
        sp.cls = SpClass::Class2;
        sp.phi = PhiKind::Reciprocal;
        sp.A = -1.0;
        sp.B = 0.0;
        sp.Ap = 0.0;
        sp.Bp = -p.get("alpha");
        const double w = p.get("omega");
        const double ll = p.get("l") * (p.get("l") + 1.0);
        return make_structure(sp, d(p), [w, ll](double x) { return 0.25 * w * w * x * x + ll / (x * x); },
                              {ll, 0.25 * w * w, 0.0}, signs(-1, +1));
    };
    e.printed_chain = [](const Params& p, std::size_t i) {
        const double ii = static_cast<double>(i);
        return ChainPoint{-p.get("l") - 1.0 - ii, 0.5 * (p.get("alpha") + o3_delta(p)) + ii * p.get("alpha")};
    };
    e.printed_energy = [](const Params& p, std::size_t n) {
        const double a = p.get("alpha");
        const double l = p.get("l");
        const double nn = static_cast<double>(n);
        return o3_delta(p) * (2.0 * nn + l + 1.5) + a * (2.0 * (nn + l + 1.0) * (2.0 * nn + 1.0) + 0.5);
    };
    e.printed_ground_state_log = [](const Params& p, double x) {
        const double a = p.get("alpha");
        if (a == 0.0) throw RangeError("printed oscillator_3d ground state needs alpha != 0");
        const double l = p.get("l");
        const double mu = 0.5 * (a + o3_delta(p));
        return (l + 1.0) * std::log(x) - (mu + (l + 2.0) * a) / (2.0 * a) * std::log1p(a * x * x);
    };
    e.counting = [](const Params&) { return BoundCount::infinite(); };
    e.v_tilde_closed = [](const Params& p, const AmbiguityParams& amb, double x) {
        const double a = p.get("alpha");
        return 2.0 * (amb.rho + 2.0 * amb.sigma) * a * a * x * x + 2.0 * amb.rho * a;
    };
    e.reshaped_potential = [](const Params& p, const AmbiguityParams& amb, double x) {
        const double a = p.get("alpha");
        const double w2 = sq(p.get("omega")) - 8.0 * (amb.rho + 2.0 * amb.sigma) * a * a;
        const double ll = p.get("l") * (p.get("l") + 1.0);
        return 0.25 * w2 * x * x + ll / (x * x) - 2.0 * amb.rho * a;
    };
    e.truncation.n_points = 8001;
    e.window_lo = 0.1;
    e.window_hi = 10.0;
    return e;
}

// ---------------------------------------------------------------- Coulomb

CatalogEntry make_coulomb() {
    CatalogEntry e;
    e.name = "coulomb";
    e.title = "Coulomb";
    e.domain = Interval::half_line(0.0);
    e.params = {{"e2", 1.0}, {"l", 0.0}, {"alpha", 0.1}};
    e.range_text = "e2 > 0, l = 0, 1, 2, ..., alpha >= 0";
    e.v_eff_text = "-e2/x + l(l+1)/x^2";
    e.deforming_text = "g = alpha x";
    e.class_text = "class 1, phi = 1/x";
    e.validate = [](const Params& p) {
        need(p.get("e2") > 0.0, "coulomb needs e2 > 0");
        need(is_nonneg_integer(p.get("l")), "coulomb needs integer l >= 0");
        need(p.get("alpha") >= 0.0, "coulomb needs alpha >= 0");
    };
    e.deforming = [d = e.domain](const Params& p) {
        return DeformingFunction(DeformingFamily::Linear, p.get("alpha"), 0.0, d);
    };
    e.structure = [d = e.deforming](const Params& p) {
        const double e2 = p.get("e2");
        const double ll = p.get("l") * (p.get("l") + 1.0);
        return make_structure(class1(PhiKind::Reciprocal, -1, 0, 0, 0, -p.get("alpha"), 0), d(p),
                              [e2, ll](double x) { return -e2 / x + ll / (x * x); }, {ll, -e2, 0.0}, signs(-1));
    };
    e.printed_chain = [](const Params& p, std::size_t i) {
        const double a = p.get("alpha");
        const double l0 = -p.get("l") - 1.0;
        const double ii = static_cast<double>(i);
        return ChainPoint{l0 - ii, -(p.get("e2") + a * l0 * (2.0 * ii + 1.0) - a * ii * ii) / (2.0 * (l0 - ii))};
    };
    e.printed_energy = [](const Params& p, std::size_t n) {
        const double a = p.get("alpha");
        const double l = p.get("l");
        const double nn = static_cast<double>(n);
        return -sq((p.get("e2") - a * (nn * nn + (l + 1.0) * (2.0 * nn + 1.0))) / (2.0 * (nn + l + 1.0)));
    };
    e.printed_ground_state_log = [](const Params& p, double x) {
        const double a = p.get("alpha");
        if (a == 0.0) throw RangeError("printed coulomb ground state needs alpha != 0");
        const double l = p.get("l");
        const double l0 = -l - 1.0;
        const double mu = -(p.get("e2") + a * l0) / (2.0 * l0);
        return (l + 1.0) * std::log(x) - (mu / a + l + 1.5) * std::log1p(a * x);
    };
    e.counting = [](const Params& p) {
        const double a = p.get("alpha");
        const double e2 = p.get("e2");
        const double l = p.get("l");
        if (a == 0.0) return BoundCount::infinite();
        if (!(a < e2 / (l + 1.0))) return BoundCount::zero();
        std::size_t k = 0;
        for (;; ++k) {
            const double n = static_cast<double>(k);
            if (!(n * n + (l + 1.0) * (2.0 * n + 1.0) < e2 / a)) break;
        }
        return BoundCount::finite(k);
    };
    e.v_tilde_closed = [](const Params& p, const AmbiguityParams& amb, double) {
        return amb.sigma * sq(p.get("alpha"));
    };
    e.reshaped_potential = [](const Params& p, const AmbiguityParams& amb, double x) {
        const double ll = p.get("l") * (p.get("l") + 1.0);
        return -p.get("e2") / x + ll / (x * x) - amb.sigma * sq(p.get("alpha"));
    };
    e.truncation.eps_left = 1e-3;
    e.truncation.l_fixed = 800.0;
    e.truncation.n_points = 8001;
    e.truncation.rel_tol = 5e-3;
    e.truncation.oracle_levels = 2;
    e.truncation.equivalence_points = 64001;
    e.window_lo = 0.1;
    e.window_hi = 10.0;
    return e;
}

// ---------------------------------------------------------------- Morse

double morse_delta(const Params& p) { return std::hypot(2.0 * p.get("B"), p.get("alpha")); }
double morse_lambda(const Params& p) { return -0.5 * (p.get("alpha") + morse_delta(p)); }
double morse_mu(const Params& p) {
    return -0.5 * (p.get("B") * (2.0 * p.get("A") + 1.0) / morse_lambda(p) + 1.0);
}

double morse_alpha_max(double A, double B, std::size_t n) {
    if (n == 0) return 4.0 * A * (A + 1.0) * B / (2.0 * A + 1.0);
    const double nn = static_cast<double>(n);
    const double q = nn * nn * sq(nn + 1.0);
    return (B * (2.0 * A + 1.0) * (2.0 * nn * nn + 2.0 * nn + 1.0) -
            B * (2.0 * nn + 1.0) * std::sqrt(sq(2.0 * A + 1.0) + 4.0 * q)) /
           (2.0 * q);
}

CatalogEntry make_morse() {
    CatalogEntry e;
    e.name = "morse";
    e.title = "Morse";
    e.domain = Interval::real_line();
    e.params = {{"A", 1.0}, {"B", 1.0}, {"alpha", 0.5}};
    e.range_text = "A > 0, B > 0, alpha >= 0";
    e.v_eff_text = "B^2 e^{-2x} - B(2A+1) e^{-x}";
    e.deforming_text = "g = alpha e^{-x}";
    e.class_text = "class 1, phi = e^{-x}";
    e.validate = [](const Params& p) {
        need(p.get("A") > 0.0, "morse needs A > 0");
        need(p.get("B") > 0.0, "morse needs B > 0");
        need(p.get("alpha") >= 0.0, "morse needs alpha >= 0");
    };
    e.deforming = [d = e.domain](const Params& p) {
        return DeformingFunction(DeformingFamily::Exponential, p.get("alpha"), 0.0, d);
    };
    e.structure = [d = e.deforming](const Params& p) {
        const double A = p.get("A");
        const double B = p.get("B");
        return make_structure(class1(PhiKind::ExpNeg, 0, -1, 0, -p.get("alpha"), 0, 0), d(p),
                              [A, B](double x) {
                                  const double y = std::exp(-x);
                                  return B * B * y * y - B * (2.0 * A + 1.0) * y;
                              },
                              {B * B, -B * (2.0 * A + 1.0), 0.0}, signs(-1));
    };
    e.printed_chain = [](const Params& p, std::size_t i) {
        const double a = p.get("alpha");
        const double l = morse_lambda(p);
        const double m = morse_mu(p);
        const double ii = static_cast<double>(i);
        return ChainPoint{l - ii * a, (2.0 * l * (m - ii) + ii * ii * a) / (2.0 * (l - ii * a))};
    };
    e.printed_energy = [](const Params& p, std::size_t n) {
        const double a = p.get("alpha");
        const double D = morse_delta(p);
        const double nn = static_cast<double>(n);
        const double num = 2.0 * p.get("B") * (2.0 * p.get("A") + 1.0) -
                           ((2.0 * nn + 1.0) * D + (2.0 * nn * nn + 2.0 * nn + 1.0) * a);
        return -0.25 * sq(num / (D + (2.0 * nn + 1.0) * a));
    };
    e.printed_ground_state_log = [](const Params& p, double x) {
        const double a = p.get("alpha");
        if (a == 0.0) throw RangeError("printed morse ground state needs alpha != 0");
        const double l = morse_lambda(p);
        const double m = morse_mu(p);
        const double ax = a * std::exp(-x);
        const double log_f = std::isfinite(ax) && ax < 1e300 ? std::log1p(ax) : std::log(a) - x;
        return (l / a - m - 0.5) * log_f - m * x;
    };
    e.counting = [](const Params& p) {
        const double A = p.get("A");
        const double B = p.get("B");
        const double a = p.get("alpha");
        // largest integer strictly below A
        const double top = std::ceil(A) - 1.0;
        for (double n = top; n >= 0.0; n -= 1.0) {
            if (a < morse_alpha_max(A, B, static_cast<std::size_t>(n)))
                return BoundCount::finite(static_cast<std::size_t>(n) + 1);
        }
        return BoundCount::zero();
    };
    e.v_tilde_closed = [](const Params& p, const AmbiguityParams& amb, double x) {
        const double a = p.get("alpha");
        const double y = std::exp(-x);
        return (amb.rho + amb.sigma) * a * a * y * y + amb.rho * a * y;
    };
    e.reshaped_potential = [](const Params& p, const AmbiguityParams& amb, double x) {
        const double A = p.get("A");
        const double B = p.get("B");
        const double a = p.get("alpha");
        const double b2 = B * B - (amb.rho + amb.sigma) * a * a;
        if (!(b2 > 0.0)) throw RangeError("reshaped Morse B* is not real");
        const double bs = std::sqrt(b2);
        const double as = 0.5 * ((B * (2.0 * A + 1.0) + amb.rho * a) / bs - 1.0);
        const double y = std::exp(-x);
        return b2 * y * y - bs * (2.0 * as + 1.0) * y;
    };
    e.truncation.left_start = -4.0;
    e.truncation.n_points = 8001;
    e.window_lo = -2.0;
    e.window_hi = 10.0;
    return e;
}

// ---------------------------------------------------------------- Eckart

CatalogEntry make_eckart() {
    CatalogEntry e;
    e.name = "eckart";
    e.title = "Eckart";
    e.domain = Interval::half_line(0.0);
    e.params = {{"A", 1.5}, {"B", 2.5}, {"alpha", -1.0}};
    e.range_text = "A >= 3/2, B > A^2, alpha >= -2";
    e.v_eff_text = "A(A-1) csch^2 x - 2B coth x";
    e.deforming_text = "g = alpha e^{-x} sinh x";
    e.class_text = "class 1, phi = coth x";
    e.validate = [](const Params& p) {
        const double A = p.get("A");
        need(A >= 1.5, "eckart needs A >= 3/2");
        need(p.get("B") > A * A, "eckart needs B > A^2");
        need(p.get("alpha") >= -2.0, "eckart needs alpha >= -2");
    };
    e.deforming = [d = e.domain](const Params& p) {
        return DeformingFunction(DeformingFamily::EckartExp, p.get("alpha"), 0.0, d);
    };
    e.structure = [d = e.deforming](const Params& p) {
        const double A = p.get("A");
        const double B = p.get("B");
        const double a = p.get("alpha");
        return make_structure(class1(PhiKind::Coth, -1, 0, 1, 0, -a, a), d(p),
                              [A, B](double x) { return A * (A - 1.0) / sq(std::sinh(x)) - 2.0 * B / std::tanh(x); },
                              {A * (A - 1.0), -2.0 * B, -A * (A - 1.0)}, signs(-1));
    };
    e.printed_chain = [](const Params& p, std::size_t i) {
        const double l = -p.get("A");
        const double m = p.get("B") / p.get("A") - 0.5 * p.get("alpha");
        const double ii = static_cast<double>(i);
        return ChainPoint{l - ii, (l * m - 0.5 * p.get("alpha") * ii * (2.0 * l - ii)) / (l - ii)};
    };
    e.printed_energy = [](const Params& p, std::size_t n) {
        const double A = p.get("A");
        const double a = p.get("alpha");
        const double nn = static_cast<double>(n);
        const double q = (2.0 * nn + 1.0) * A + nn * nn;
        return -sq(A + nn) - sq((p.get("B") - 0.5 * a * q) / (A + nn)) - a * q;
    };
    e.printed_ground_state_log = [](const Params& p, double x) {
        const double A = p.get("A");
        const double a = p.get("alpha");
        const double mu = p.get("B") / A - 0.5 * a;
        const double em = std::expm1(2.0 * x);
        const double cm1 = 2.0 / em;                    // coth x - 1
        const double log_cp1 = std::log(2.0) + 2.0 * x - std::log(em);  // log(coth x + 1)
        if (a == -2.0) {
            const double log_csch = std::log(2.0) - x - std::log(-std::expm1(-2.0 * x));
            return (-A - 1.0) * std::log(cm1) + log_csch - (mu - A) / cm1;
        }
        const double cpa = 2.0 + a + cm1;  // coth x + 1 + alpha
        return 0.5 * log_cp1 + (-((1.0 + a) * A + mu) / (2.0 + a) - 0.5) * std::log(cpa) +
               (mu - A) / (2.0 + a) * std::log(cm1);
    };
    e.counting = [](const Params& p) {
        const double A = p.get("A");
        const double a = p.get("alpha");
        if (a == -2.0) return BoundCount::infinite();
        const double bound = (2.0 * p.get("B") + a * A * (A - 1.0)) / (2.0 + a);
        std::size_t k = 0;
        while (sq(A + static_cast<double>(k)) < bound) ++k;
        return BoundCount::finite(k);
    };
    e.v_tilde_closed = [](const Params& p, const AmbiguityParams& amb, double x) {
        const double a = p.get("alpha");
        const double y = std::exp(-2.0 * x);
        return (amb.rho + amb.sigma) * a * a * y * y - amb.rho * a * (2.0 + a) * y;
    };
    e.truncation.l_start = 8.0;
    e.truncation.oracle_levels = 4;
    e.window_lo = 0.1;
    e.window_hi = 10.0;
    return e;
}

// ---------------------------------------------------------------- Scarf I

struct ScarfScalars {
    double dp;
    double dm;
    double lambda;
    double mu;
};

ScarfScalars scarf_scalars(const Params& p) {
    const double A = p.get("A");
    const double B = p.get("B");
    const double a = p.get("alpha");
    ScarfScalars s{};
    s.dp = std::sqrt(0.25 * sq(1.0 - a) + (A + B) * (A + B - 1.0));
    s.dm = std::sqrt(0.25 * sq(1.0 + a) + (A - B) * (A - B - 1.0));
    s.lambda = 0.5 * (1.0 + s.dp + s.dm);
    s.mu = 0.5 * (a - s.dp + s.dm);
    return s;
}

CatalogEntry make_scarf_i() {
    CatalogEntry e;
    e.name = "scarf_i";
    e.title = "Scarf I";
    e.domain = Interval::finite(-kPi / 2.0, kPi / 2.0);
    e.params = {{"A", 3.0}, {"B", 1.0}, {"alpha", 0.3}};
    e.range_text = "0 < B < A - 1, |alpha| < 1";
    e.v_eff_text = "(B^2 + A^2 - A) sec^2 x - B(2A-1) tan x sec x";
    e.deforming_text = "g = alpha sin x";
    e.class_text = "class 3, phi = sin x";
    e.validate = [](const Params& p) {
        const double B = p.get("B");
        need(B > 0.0 && B < p.get("A") - 1.0, "scarf_i needs 0 < B < A - 1");
        need(std::abs(p.get("alpha")) < 1.0, "scarf_i needs |alpha| < 1");
    };
    e.deforming = [d = e.domain](const Params& p) {
        return DeformingFunction(DeformingFamily::Sine, p.get("alpha"), 0.0, d);
    };
    e.structure = [d = e.deforming](const Params& p) {
        const double A = p.get("A");
        const double B = p.get("B");
        SuperpotentialClass sp;
        sp.cls = SpClass::Class3;
        sp.phi = PhiKind::Sin;
        sp.A = -1.0;
        sp.B = 1.0;
        sp.C = 0.0;
        sp.D = 1.0;
        sp.Cp = p.get("alpha");
        sp.Dp = 0.0;
        const double k0 = B * B + A * A - A;
        const double k1 = B * (2.0 * A - 1.0);
        return make_structure(sp, d(p),
                              [k0, k1](double x) {
                                  const double c = std::cos(x);
                                  return (k0 - k1 * std::sin(x)) / (c * c);
                              },
                              {0.0, -k1, k0}, signs(+1, -1));
    };
    e.printed_chain = [](const Params& p, std::size_t i) {
        const auto s = scarf_scalars(p);
        const double ii = static_cast<double>(i);
        return ChainPoint{s.lambda + ii, s.mu + ii * p.get("alpha")};
    };
    e.printed_energy = [](const Params& p, std::size_t n) {
        const auto s = scarf_scalars(p);
        const double a = p.get("alpha");
        const double nn = static_cast<double>(n);
        return -0.25 * sq(2.0 * nn + 1.0 + s.dp + s.dm) + a * (nn + 0.5) * (s.dp - s.dm) -
               a * a * (nn * nn + nn + 0.5);
    };
    e.energy_discrepancy =
        "printed E_n carries a leading minus sign on the squared term; the chain gives "
        "+1/4 (2n+1+D+ + D-)^2 + alpha (n+1/2)(D+ - D-) - alpha^2 (n^2+n+1/2), which is positive "
        "as the sec^2 well requires";
    e.printed_ground_state_log = [](const Params& p, double x) {
        const auto s = scarf_scalars(p);
        const double a = p.get("alpha");
        return (-(s.lambda - a * s.mu) / (1.0 - a * a) - 0.5) * std::log1p(a * std::sin(x)) +
               (s.lambda + s.mu) / (2.0 * (1.0 + a)) * std::log(one_minus_sin(x)) +
               (s.lambda - s.mu) / (2.0 * (1.0 - a)) * std::log(one_plus_sin(x));
    };
    e.counting = [](const Params&) { return BoundCount::infinite(); };
    e.v_tilde_closed = [](const Params& p, const AmbiguityParams& amb, double x) {
        const double a = p.get("alpha");
        const double s = std::sin(x);
        return -(amb.rho + amb.sigma) * a * a * s * s - amb.rho * a * s + amb.sigma * a * a;
    };
    return e;
}

// ---------------------------------------------------------------- Rosen-Morse I

CatalogEntry make_rosen_morse_i() {
    CatalogEntry e;
    e.name = "rosen_morse_i";
    e.title = "Rosen-Morse I";
    e.domain = Interval::finite(0.0, kPi);
    e.params = {{"A", 2.0}, {"B", 1.0}, {"alpha", 0.4}, {"beta", 0.2}};
    e.range_text = "A >= 3/2, beta > -1, |alpha|/2 < sqrt(1 + beta)";
    e.v_eff_text = "A(A-1) csc^2 x + 2B cot x";
    e.deforming_text = "g = sin x (alpha cos x + beta sin x)";
    e.class_text = "class 1, phi = cot x";
    e.validate = [](const Params& p) {
        need(p.get("A") >= 1.5, "rosen_morse_i needs A >= 3/2");
        const double be = p.get("beta");
        need(be > -1.0, "rosen_morse_i needs beta > -1");
        need(std::abs(p.get("alpha")) / 2.0 < std::sqrt(1.0 + be), "rosen_morse_i needs |alpha|/2 < sqrt(1+beta)");
    };
    e.deforming = [d = e.domain](const Params& p) {
        return DeformingFunction(DeformingFamily::TrigMixed, p.get("alpha"), p.get("beta"), d);
    };
    e.structure = [d = e.deforming](const Params& p) {
        const double A = p.get("A");
        const double B = p.get("B");
        return make_structure(class1(PhiKind::Cot, -1, 0, -1, 0, -p.get("alpha"), -p.get("beta")), d(p),
                              [A, B](double x) {
                                  return A * (A - 1.0) / sq(std::sin(x)) + 2.0 * B / std::tan(x);
                              },
                              {A * (A - 1.0), 2.0 * B, A * (A - 1.0)}, signs(-1));
    };
    e.printed_chain = [](const Params& p, std::size_t i) {
        const double l = -p.get("A");
        const double m = -p.get("B") / p.get("A") - 0.5 * p.get("alpha");
        const double ii = static_cast<double>(i);
        return ChainPoint{l - ii, (l * m - 0.5 * p.get("alpha") * ii * (2.0 * l - ii)) / (l - ii)};
    };
    e.printed_energy = [](const Params& p, std::size_t n) {
        const double A = p.get("A");
        const double nn = static_cast<double>(n);
        const double q = (2.0 * nn + 1.0) * A + nn * nn;
        return sq(A + nn) - sq((p.get("B") + 0.5 * p.get("alpha") * q) / (A + nn)) + p.get("beta") * q;
    };
    e.printed_ground_state_log = [](const Params& p, double x) {
        const double A = p.get("A");
        const double a = p.get("alpha");
        const double be = p.get("beta");
        const double mu = -p.get("B") / A - 0.5 * a;
        const double dl = std::sqrt(1.0 + be - 0.25 * a * a);
        const double s = std::sin(x);
        const double f = 1.0 + s * (a * std::cos(x) + be * s);
        return -(A + 1.0) / 2.0 * std::log(f) + A * std::log(s) +
               (mu + 0.5 * a * A) / dl * std::atan((1.0 / std::tan(x) + 0.5 * a) / dl);
    };
    e.counting = [](const Params&) { return BoundCount::infinite(); };
    e.v_tilde_closed = [](const Params& p, const AmbiguityParams& amb, double x) {
        const double a = p.get("alpha");
        const double be = p.get("beta");
        return (amb.rho + amb.sigma) * (0.5 * (a * a - be * be) * std::cos(4.0 * x) + a * be * std::sin(4.0 * x)) +
               amb.rho * (2.0 + be) * (-a * std::sin(2.0 * x) + be * std::cos(2.0 * x)) +
               (-amb.rho + amb.sigma) * 0.5 * (a * a + be * be);
    };
    return e;
}

}  // namespace

// ---------------------------------------------------------------- Params

double Params::get(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ParameterError("missing parameter '" + key + "'");
    return it->second;
}

Params Params::parse(std::string_view text) {
    Params out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string item = trim(text.substr(pos, comma - pos));
        pos = comma + 1;
        if (item.empty()) {
            if (comma >= text.size()) break;
            throw ParameterError("empty item in parameter list");
        }
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw ParameterError("expected key=value, got '" + item + "'");
        const std::string key = trim(std::string_view(item).substr(0, eq));
        const std::string val = trim(std::string_view(item).substr(eq + 1));
        if (key.empty() || val.empty()) throw ParameterError("expected key=value, got '" + item + "'");
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(val.data(), val.data() + val.size(), v);
        if (ec != std::errc() || ptr != val.data() + val.size() || !std::isfinite(v))
            throw ParameterError("not a finite number: '" + val + "'");
        out.set(key, v);
    }
    return out;
}

std::string BoundCount::describe() const {
    switch (kind) {
        case Kind::Finite: return "finite(" + std::to_string(count) + ")";
        case Kind::Infinite: return "infinite";
        case Kind::Zero: return "zero";
    }
    return "unknown";
}

Params CatalogEntry::resolve(const Params& given) const {
    Params out;
    for (const auto& spec : params) out.set(spec.name, spec.default_value);
    for (const auto& [k, v] : given.values()) {
        const bool known = std::any_of(params.begin(), params.end(), [&](const ParamSpec& s) { return s.name == k; });
        if (!known) throw ParameterError("unknown parameter '" + k + "' for " + name);
        if (!std::isfinite(v)) throw RangeError("parameter '" + k + "' is not finite");
        out.set(k, v);
    }
    validate(out);
    return out;
}

double CatalogEntry::reference_point() const {
    if (domain.bounded()) return 0.5 * (*domain.lo() + *domain.hi());
    if (domain.lo_finite()) return *domain.lo() + 1.0;
    if (domain.hi_finite()) return *domain.hi() - 1.0;
    return 0.0;
}

Catalog::Catalog() {
    entries_ = {make_box(),   make_trig_pt(), make_hyp_pt(),  make_shifted_oscillator(), make_oscillator_3d(),
                make_coulomb(), make_morse(), make_eckart(), make_scarf_i(),            make_rosen_morse_i()};
    exclusions_ = {
        {"scarf_ii",
         "f loses positive definiteness somewhere on the real line for every nonzero deformation"},
        {"rosen_morse_ii",
         "for every normalizable state |psi|^2 f does not vanish at an end, so the Hermiticity condition fails and "
         "no level is bound"},
        {"generalized_poschl_teller",
         "for every normalizable state |psi|^2 f does not vanish at an end, so the Hermiticity condition fails and "
         "no level is bound"},
    };
}

const Catalog& Catalog::instance() {
    static const Catalog catalog;
    return catalog;
}

const CatalogEntry& Catalog::lookup(std::string_view name) const {
    for (const auto& e : entries_)
        if (e.name == name) return e;
    for (const auto& x : exclusions_)
        if (x.name == name) throw NotFound(std::string(name) + " is excluded: " + x.reason);
    throw NotFound("no catalog entry named '" + std::string(name) + "'");
}

const CatalogEntry& lookup(std::string_view name) { return Catalog::instance().lookup(name); }

BoundCount bound_state_count(const CatalogEntry& entry, const Params& params) {
    return entry.counting(entry.resolve(params));
}

double closed_energy(const CatalogEntry& entry, const Params& params, std::size_t n) {
    const Params p = entry.resolve(params);
    const BoundCount count = entry.counting(p);
    if (!count.admits(n))
        throw IndexError(entry.name + ": level " + std::to_string(n) + " beyond bound-state count " +
                         count.describe());
    return entry.printed_energy(p, n);
}

double ground_state_closed(const CatalogEntry& entry, const Params& params, double x) {
    const Params p = entry.resolve(params);
    if (!entry.domain.contains(x))
        throw DomainError(entry.name + ": x = " + std::to_string(x) + " outside " + entry.domain.describe());
    return std::exp(entry.printed_ground_state_log(p, x));
}

}  // namespace pdem
