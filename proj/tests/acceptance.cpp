// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "json.hpp"
#include "pdem/oracle.hpp"
#include "pdem/suite.hpp"
#include "pdem/verify.hpp"
#include "pdem/wavefunctions.hpp"

using namespace pdem;
constexpr double pi = std::numbers::pi;

namespace {

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

double rel(double a, double b) { return std::abs(a - b) / std::max(1e-12, std::abs(b)); }

std::vector<std::size_t> upto(std::size_t k) {
    std::vector<std::size_t> v(k);
    for (std::size_t i = 0; i < k; ++i) v[i] = i;
    return v;
}

std::vector<double> oracle_energies(const CatalogEntry& e, const Params& p, std::size_t k,
                                    std::optional<std::size_t> n = std::nullopt) {
    const auto levels = upto(k);
    const Grid g = oracle_grid(e, p, levels, n);
    return eigenpairs(entry_operator(e, p, g), k, false).eigenvalues;
}

double oracle_rel_max(const CatalogEntry& e, const Params& p, std::size_t k,
                      std::optional<std::size_t> n = std::nullopt) {
    const auto ev = oracle_energies(e, p, k, n);
    double worst = 0.0;
    for (std::size_t i = 0; i < k; ++i) worst = std::max(worst, rel(ev[i], closed_energy(e, p, i)));
    return worst;
}

std::map<std::string, SuiteResult>& suites() {
    static std::map<std::string, SuiteResult> cache = [] {
        std::map<std::string, SuiteResult> m;
        for (const auto& e : Catalog::instance().entries()) m.emplace(e.name, run_suite(e, {}, {}));
        return m;
    }();
    return cache;
}

const CheckResult& check_of(const std::string& entry, const std::string& name) {
    for (const auto& c : suites().at(entry).checks)
        if (c.name == name) return c;
    throw std::runtime_error("no check " + name + " for " + entry);
}

// ----------------------------------------------------------------------------

void box(Verdict& v) {
    const auto& e = lookup("box");
    double worst = 0.0;
    for (double a : {-0.5, 0.5}) {
        const Params p = e.resolve({{"alpha", a}});
        for (std::size_t n = 0; n < 6; ++n)
            v.require(closed_energy(e, p, n) == (1 + a) * (n + 1.0) * (n + 1.0), "closed form");
        worst = std::max(worst, oracle_rel_max(e, p, 6, 4001));
    }
    double limit = 0.0;
    for (std::size_t n = 0; n < 6; ++n)
        limit = std::max(limit, rel(closed_energy(e, {{"alpha", 1e-9}}, n), (n + 1.0) * (n + 1.0)));
    v.detail << "oracle rel " << worst << ", alpha->0 rel " << limit;
    v.require(worst < 1e-4, "oracle");
    v.require(limit < 1e-6, "undeformed limit");
}

void trig_pt(Verdict& v) {
    const auto& e = lookup("trig_poschl_teller");
    double worst = 0.0;
    for (double a : {-0.3, 0.3}) worst = std::max(worst, oracle_rel_max(e, e.resolve({{"A", 2}, {"alpha", a}}), 5));
    const Params p0 = e.resolve({{"A", 2}, {"alpha", 0}});
    bool exact = true;
    for (std::size_t n = 0; n < 5; ++n) exact = exact && closed_energy(e, p0, n) == (2.0 + n) * (2.0 + n);
    v.detail << "oracle rel " << worst << ", alpha=0 exact " << (exact ? "yes" : "no");
    v.require(worst < 1e-4, "oracle");
    v.require(exact, "undeformed values");
}

void hyperbolic_pt(Verdict& v) {
    const auto& e = lookup("hyperbolic_poschl_teller");
    const Params p = e.resolve({{"A", 1}, {"alpha", 0.5}});
    std::size_t plateaus = 0;
    for (std::size_t n = 0; n < 4; ++n)
        if (!admissibility_check(e, p, n).hermiticity_ok) ++plateaus;
    const auto c = bound_state_count(e, p);
    v.detail << "hermiticity failures " << plateaus << "/4, counting " << c.describe();
    v.require(plateaus == 4, "hermiticity");
    v.require(c == BoundCount::zero(), "counting");
}

void coulomb(Verdict& v) {
    const auto& e = lookup("coulomb");
    const Params p = e.resolve({{"e2", 1}, {"l", 0}, {"alpha", 0.1}});
    const auto c = bound_state_count(e, p);
    const double e0 = closed_energy(e, p, 0);
    const double e2 = closed_energy(e, p, 2);
    const auto ev = oracle_energies(e, p, 2);
    const double r0 = rel(ev[0], e0);
    const double r1 = rel(ev[1], closed_energy(e, p, 1));
    std::vector<double> distinct;
    for (std::size_t n = 0; n < 8; ++n) {
        if (!admissibility_check(e, p, n).admissible) continue;
        const double en = e.printed_energy(p, n);
        bool seen = false;
        for (double d : distinct) seen = seen || rel(en, d) < 1e-12;
        if (!seen) distinct.push_back(en);
    }
    const std::size_t admissible = distinct.size();
    v.detail << "counting " << c.describe() << ", admissible " << admissible << ", E0 " << e0 << ", E2 " << e2
             << ", oracle rel " << r0 << " / " << r1;
    v.require(c == BoundCount::finite(3) && admissible == 3, "counting");
    v.require(std::abs(e0 + 0.2025) < 1e-15, "E0");
    v.require(std::abs(e2 + 1.0 / 3600.0) < 1e-9, "E2");
    v.require(r0 < 5e-3 && r1 < 5e-3, "oracle");
}

void morse(Verdict& v) {
    const auto& e = lookup("morse");
    const double amax = 8.0 / 3.0;
    const bool edge = bound_state_count(e, e.resolve({{"A", 1}, {"B", 1}, {"alpha", amax * (1 - 1e-9)}})) ==
                          BoundCount::finite(1) &&
                      bound_state_count(e, e.resolve({{"A", 1}, {"B", 1}, {"alpha", amax * (1 + 1e-9)}})) ==
                          BoundCount::zero();
    std::size_t mismatches = 0;
    double worst = 0.0;
    for (double a : {0.5, 2.0}) {
        const Params p = e.resolve({{"A", 1}, {"B", 1}, {"alpha", a}});
        const auto c = bound_state_count(e, p);
        for (std::size_t n = 0; n < 4; ++n)
            if (admissibility_check(e, p, n).admissible != c.admits(n)) ++mismatches;
        worst = std::max(worst, oracle_rel_max(e, p, 1));
    }
    v.detail << "alpha_max(0) edge " << (edge ? "8/3" : "off") << ", verdict mismatches " << mismatches
             << ", E0 oracle rel " << worst;
    v.require(edge, "alpha_max");
    v.require(mismatches == 0, "counting");
    v.require(worst < 1e-4, "oracle");
}

void eckart(Verdict& v) {
    const auto& e = lookup("eckart");
    const Params pm2 = e.resolve({{"A", 1.5}, {"B", 2.5}, {"alpha", -2}});
    const Params pm1 = e.resolve({{"A", 1.5}, {"B", 2.5}, {"alpha", -1}});
    const auto c2 = bound_state_count(e, pm2);
    const auto c1 = bound_state_count(e, pm1);
    const double worst = oracle_rel_max(e, pm2, 4);
    const bool flagged = !admissibility_check(e, pm1, 1).admissible;
    v.detail << "alpha=-2 " << c2.describe() << " oracle rel " << worst << "; alpha=-1 " << c1.describe()
             << ", n=1 flagged " << (flagged ? "yes" : "no");
    v.require(c2 == BoundCount::infinite(), "infinite marker");
    v.require(worst < 1e-3, "oracle");
    v.require(c1 == BoundCount::finite(1), "finite(1)");
    v.require(flagged, "probe");
}

void si_chain(Verdict& v) {
    double res = 0.0;
    double energy = 0.0;
    std::vector<std::string> flagged;
    for (const auto& e : Catalog::instance().entries()) {
        res = std::max(res, check_of(e.name, "si_residual").value);
        const auto& pe = check_of(e.name, "printed_energies");
        if (pe.note.empty())
            energy = std::max(energy, pe.value);
        else
            flagged.push_back(e.name + " (rel " + std::to_string(pe.value) + ")");
    }
    v.detail << "max residual " << res << ", max energy rel " << energy << ", flagged:";
    for (const auto& f : flagged) v.detail << ' ' << f;
    v.require(res < 1e-10, "residual");
    v.require(energy < 1e-10, "energies");
    v.require(flagged.size() == 1 && flagged[0].rfind("scarf_i", 0) == 0, "discrepancy report");
}

void ordering(Verdict& v) {
    const DeformingFunction fam(DeformingFamily::Sine, 0.3, 0.0, Interval::finite(-pi / 2, pi / 2));
    const Grid g(-pi / 2, pi / 2, 4001);
    const ScalarField pot = [](double x) { return x * x; };
    double op = 0.0;
    for (const char* preset : {"bdd", "bastard", "zk", "lk"})
        op = std::max(op, equivalence_check(fam, AmbiguityParams::preset(preset), pot, g));
    double spec = 0.0;
    for (const char* name : {"box", "morse"}) {
        const auto& e = lookup(name);
        const Params p = e.resolve({});
        const Grid base = oracle_grid(e, p, upto(1));
        const Grid fine(base.lo(), base.hi(), e.truncation.equivalence_points);
        for (const char* preset : {"bdd", "zk"})
            spec = std::max(spec, spectral_equivalence(e, p, AmbiguityParams::preset(preset), 4, fine));
    }
    v.detail << "operator dev " << op << ", spectral rel " << spec;
    v.require(op < 1e-6, "operator");
    v.require(spec < 1e-6, "spectra");
}

void wavefunction_suite(Verdict& v) {
    double factor = 0.0;
    double ratio = 0.0;
    for (const auto& e : Catalog::instance().entries()) {
        factor = std::max(factor, check_of(e.name, "factorization").value);
        ratio = std::max(ratio, check_of(e.name, "ground_state_ratio").value);
    }
    const std::vector<std::pair<const char*, Params>> cases = {
        {"box", {}},
        {"trig_poschl_teller", {}},
        {"oscillator_3d", {}},
        {"morse", {{"A", 3}, {"B", 1}, {"alpha", 0.2}}},
    };
    double residual = 0.0;
    double gram = 0.0;
    std::ostringstream per;
    for (const auto& [name, given] : cases) {
        const auto& e = lookup(name);
        const Params p = e.resolve(given);
        const auto c = bound_state_count(e, p);
        std::vector<std::size_t> adm;
        for (std::size_t n = 0; adm.size() < 4 && n < 16; ++n)
            if (c.admits(n)) adm.push_back(n);
        const std::vector<std::size_t> first(adm.begin(), adm.begin() + std::min<std::size_t>(3, adm.size()));
        const Grid fine = oracle_grid(e, p, first, 8001);
        double r = 0.0;
        for (std::size_t n : first) r = std::max(r, eigen_residual(e, p, n, fine));
        per << ' ' << name << '=' << r;
        residual = std::max(residual, r);
        gram = std::max(gram, gram_deviation(e, p, adm, oracle_grid(e, p, adm)));
    }
    v.detail << "factorization " << factor << ", ground ratio " << ratio << ", gram " << gram << ", eigen-residual"
             << per.str();
    v.require(factor < 1e-8, "factorization");
    v.require(ratio < 1e-8, "ground ratio");
    v.require(residual < 1e-5, "eigen-residual");
    v.require(gram < 1e-6, "gram");
}

void class3(Verdict& v) {
    const auto& e = lookup("scarf_i");
    double worst = 0.0;
    for (std::size_t n = 1; n <= 6; ++n) {
        const auto poly = polynomial_chain(e, {}, n);
        double big = 0.0;
        for (double c : poly.coeffs) big = std::max(big, std::abs(c));
        worst = std::max(worst, std::abs(poly.cancelled_top) / big);
    }
    v.detail << "max cancelled/largest " << worst;
    v.require(worst < 1e-12, "cancellation");
}

int cli_call(std::vector<std::string> args, std::string& out) {
    args.insert(args.begin(), "pdem");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream o, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), o, err);
    out = o.str();
    return code;
}

void cli_contract(Verdict& v) {
    using nlohmann::json;
    std::string out;
    const int c1 =
        cli_call({"spectrum", "--potential", "box", "--params", "alpha=0.5", "--n-levels", "3", "--oracle", "--format", "json"}, out);
    bool box_ok = c1 == 0;
    bool trip = false;
    if (box_ok) {
        const auto j = json::parse(out);
        const double expect[] = {1.5, 6.0, 13.5};
        box_ok = j["levels"].size() == 3;
        for (int n = 0; box_ok && n < 3; ++n)
            box_ok = rel(j["levels"][n]["E_closed"].get<double>(), expect[n]) < 1e-14 &&
                     j["levels"][n]["rel_err"].get<double>() < 1e-4;
        const auto r = report_from_json(out);
        trip = report_from_json(to_json(r)) == r && json::parse(to_json(r)) == j;
    }
    const int c2 = cli_call({"spectrum", "--potential", "coulomb", "--params", "e2=1,l=0,alpha=0.1", "--n-levels", "auto"}, out);
    bool coul_ok = c2 == 0;
    if (coul_ok) {
        const auto j = json::parse(out);
        coul_ok = j["counting"]["kind"] == "finite" && j["counting"]["count"] == 3 &&
                  std::abs(j["levels"][0]["E_closed"].get<double>() + 0.2025) < 1e-15;
    }
    const int c3 = cli_call({"verify", "--potential", "hyperbolic_poschl_teller", "--params", "A=1,alpha=0.5"}, out);
    bool hpt_ok = c3 == 0;
    if (hpt_ok) {
        const auto rep = json::parse(out)[0]["report"];
        hpt_ok = rep["counting"]["kind"] == "zero" && rep["levels"][0]["hermiticity_ok"] == false;
    }
    const int c4 = cli_call({"spectrum", "--potential", "box", "--params", "alpha=3"}, out);
    v.detail << "exit codes " << c1 << ' ' << c2 << ' ' << c3 << ' ' << c4 << ", round trip " << (trip ? "ok" : "broken");
    v.require(box_ok, "box spectrum");
    v.require(coul_ok, "coulomb auto");
    v.require(hpt_ok, "hyperbolic verify");
    v.require(c4 == 2, "exit 2");
    v.require(trip, "round trip");
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<void(Verdict&)>>> criteria = {
        {"box spectrum", box},
        {"trigonometric Poschl-Teller", trig_pt},
        {"hyperbolic Poschl-Teller has no bound state", hyperbolic_pt},
        {"Coulomb counting and values", coulomb},
        {"Morse counting", morse},
        {"Eckart regime switch", eckart},
        {"SI chain consistency", si_chain},
        {"ordering identity", ordering},
        {"wavefunction suite", wavefunction_suite},
        {"class 3 degree cancellation", class3},
        {"CLI contract", cli_contract},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        v.detail.precision(4);
        try {
            criteria[i].second(v);
        } catch (const std::exception& e) {
            v.pass = false;
            v.detail << " [exception: " << e.what() << "]";
        }
        if (!v.pass) ++failed;
        std::printf("%s %2zu %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, v.detail.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
