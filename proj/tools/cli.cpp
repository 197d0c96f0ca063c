#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pdem/suite.hpp"
#include "pdem/verify.hpp"
#include "pdem/wavefunctions.hpp"

namespace pdem::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string potential;
    std::string params;
    std::string preset;
    std::optional<double> xi;
    std::optional<double> zeta;
};

AmbiguitySpec ambiguity_of(const Common& c) {
    if (c.xi.has_value() != c.zeta.has_value()) throw UsageError("--xi and --zeta go together");
    if (c.xi) {
        if (!c.preset.empty()) throw UsageError("--preset excludes --xi/--zeta");
        return AmbiguitySpec::explicit_pair(*c.xi, *c.zeta);
    }
    return AmbiguitySpec::named(c.preset.empty() ? "bdd" : c.preset);
}

std::optional<std::size_t> parse_levels(const std::string& text) {
    if (text == "auto") return std::nullopt;
    std::size_t k = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), k);
    if (ec != std::errc() || ptr != text.data() + text.size()) throw UsageError("--n-levels takes an integer or 'auto'");
    return k;
}

std::string cell(double v) { return std::isfinite(v) ? format_double(v) : std::string(); }

// ---------------------------------------------------------------- catalog

std::string catalog_text() {
    std::ostringstream os;
    for (const auto& e : Catalog::instance().entries()) {
        os << e.name << "  (" << e.title << ")\n";
        os << "  domain   " << e.domain.describe() << '\n';
        os << "  V_eff    " << e.v_eff_text << '\n';
        os << "  f        " << e.deforming_text << '\n';
        os << "  class    " << e.class_text << '\n';
        os << "  params  ";
        for (const auto& p : e.params) os << ' ' << p.name << '=' << format_double(p.default_value);
        os << "\n  range    " << e.range_text << '\n';
        if (!e.energy_discrepancy.empty()) os << "  note     " << e.energy_discrepancy << '\n';
    }
    os << "excluded\n";
    for (const auto& x : Catalog::instance().exclusions()) os << "  " << x.name << ": " << x.reason << '\n';
    return os.str();
}

std::string catalog_json() {
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : Catalog::instance().entries()) {
        nlohmann::json params = nlohmann::json::object();
        for (const auto& p : e.params) params[p.name] = p.default_value;
        entries.push_back({{"name", e.name},
                           {"title", e.title},
                           {"domain", e.domain.describe()},
                           {"v_eff", e.v_eff_text},
                           {"deforming", e.deforming_text},
                           {"class", e.class_text},
                           {"defaults", params},
                           {"range", e.range_text},
                           {"energy_discrepancy", e.energy_discrepancy}});
    }
    nlohmann::json excl = nlohmann::json::array();
    for (const auto& x : Catalog::instance().exclusions()) excl.push_back({{"name", x.name}, {"reason", x.reason}});
    return nlohmann::json{{"entries", entries}, {"exclusions", excl}}.dump(2) + "\n";
}

// ---------------------------------------------------------------- wavefunction

std::string wavefunction_csv(const CatalogEntry& entry, const Params& given, std::size_t n, std::size_t samples) {
    if (samples < 3) throw UsageError("--samples must be at least 3");
    const Params p = entry.resolve(given);
    const BoundCount count = bound_state_count(entry, p);
    if (!count.admits(n))
        throw UsageError("level " + std::to_string(n) + " is not a bound state (counting " + count.describe() + ")");
    const std::size_t levels[] = {n};
    const Grid grid = oracle_grid(entry, p, levels, samples);
    const auto psi = normalize(sample_state(entry, p, n, grid), grid).samples;
    const auto df = entry.deforming(p);
    const auto v_eff = entry.structure(p).v_eff;
    std::ostringstream os;
    os << "x,psi,f,V_eff\n";
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double x = grid.node(j);
        const bool inside = entry.domain.contains(x);
        os << format_double(x) << ',' << format_double(psi[j]) << ',' << (inside ? cell(df.raw(x).f) : "") << ','
           << (inside ? cell(v_eff(x)) : "") << '\n';
    }
    return os.str();
}

// ---------------------------------------------------------------- sweep

std::vector<double> linspace(double a, double b, std::size_t steps) {
    if (steps == 0) throw UsageError("--steps must be positive");
    if (steps == 1) return {a};
    std::vector<double> v(steps);
    for (std::size_t i = 0; i < steps; ++i)
        v[i] = i + 1 == steps ? b : a + (b - a) * static_cast<double>(i) / static_cast<double>(steps - 1);
    return v;
}

std::string sweep_csv(const CatalogEntry& entry, const Params& base, const std::string& param,
                      const std::vector<double>& values, std::size_t k) {
    bool known = false;
    for (const auto& s : entry.params) known = known || s.name == param;
    if (!known) throw ParameterError("'" + entry.name + "' has no parameter '" + param + "'");
    std::ostringstream os;
    os << param << ",counting,count";
    for (std::size_t n = 0; n < k; ++n) os << ",E_" << n;
    os << '\n';
    for (double v : values) {
        Params given = base;
        given.set(param, v);
        os << format_double(v) << ',';
        Params p;
        try {
            p = entry.resolve(given);
        } catch (const RangeError&) {
            os << "out_of_range,";
            for (std::size_t n = 0; n < k; ++n) os << ',';
            os << '\n';
            continue;
        }
        const BoundCount c = bound_state_count(entry, p);
        const char* kind = c.kind == BoundCount::Kind::Finite ? "finite"
                           : c.kind == BoundCount::Kind::Zero ? "zero"
                                                              : "infinite";
        os << kind << ',';
        if (c.kind == BoundCount::Kind::Finite) os << c.count;
        for (std::size_t n = 0; n < k; ++n) {
            os << ',';
            if (c.admits(n)) os << cell(entry.printed_energy(p, n));
        }
        os << '\n';
    }
    return os.str();
}

void write_to(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw UsageError("cannot open '" + path + "' for writing");
    f << text;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Deformed shape-invariant PDEM spectra and their numerical verification", "pdem"};
    app.require_subcommand(1);

    Common c;
    auto add_common = [&c](CLI::App* sub, bool potential_required) {
        auto* o = sub->add_option("--potential", c.potential, "catalog entry");
        if (potential_required) o->required();
        sub->add_option("--params", c.params, "k=v,k=v");
    };
    auto add_ambiguity = [&c](CLI::App* sub) {
        sub->add_option("--preset", c.preset, "ordering preset")->check(CLI::IsMember({"bdd", "bastard", "zk", "lk"}));
        sub->add_option("--xi", c.xi, "explicit ordering parameter xi");
        sub->add_option("--zeta", c.zeta, "explicit ordering parameter zeta");
    };

    std::string format = "text";
    auto* cat = app.add_subcommand("catalog", "list entries, ranges and exclusions");
    cat->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

    std::string n_levels;
    bool oracle = false;
    std::string spec_format = "json";
    std::string out_path;
    auto* spec = app.add_subcommand("spectrum", "closed-form spectrum report");
    add_common(spec, true);
    add_ambiguity(spec);
    spec->add_option("--n-levels", n_levels, "K or auto")->required();
    spec->add_flag("--oracle", oracle, "add matrix-oracle energies");
    spec->add_option("--format", spec_format)->check(CLI::IsMember({"json", "csv"}));
    spec->add_option("--out", out_path, "output file (stdout by default)");

    std::size_t level = 0;
    std::size_t samples = 0;
    auto* wf = app.add_subcommand("wavefunction", "normalized eigenfunction samples");
    add_common(wf, true);
    wf->add_option("--n", level)->required();
    wf->add_option("--samples", samples)->required();
    wf->add_option("--out", out_path, "output file (stdout by default)");

    std::optional<double> tol;
    auto* ver = app.add_subcommand("verify", "invariant suite; exit 1 on any failed check");
    add_common(ver, true);
    add_ambiguity(ver);
    ver->add_option("--tol", tol, "oracle relative tolerance");
    ver->add_option("--out", out_path, "output file (stdout by default)");

    std::string param;
    double from = 0.0;
    double to = 0.0;
    std::size_t steps = 0;
    std::size_t sweep_levels = 4;
    auto* sw = app.add_subcommand("sweep", "bound-state counts and energies along one parameter");
    add_common(sw, true);
    sw->add_option("--param", param)->required();
    sw->add_option("--from", from)->required();
    sw->add_option("--to", to)->required();
    sw->add_option("--steps", steps)->required();
    sw->add_option("--n-levels", sweep_levels, "energy columns");
    sw->add_option("--out", out_path, "output file (stdout by default)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        const Params given = Params::parse(c.params);
        if (cat->parsed()) {
            out << (format == "json" ? catalog_json() : catalog_text());
            return 0;
        }
        if (spec->parsed()) {
            ReportOptions o;
            o.n_levels = parse_levels(n_levels);
            o.oracle = oracle;
            o.ambiguity = ambiguity_of(c);
            const auto r = build_report(lookup(c.potential), given, o);
            write_to(out_path, spec_format == "json" ? to_json(r) + "\n" : to_csv(r), out);
            return 0;
        }
        if (wf->parsed()) {
            write_to(out_path, wavefunction_csv(lookup(c.potential), given, level, samples), out);
            return 0;
        }
        if (ver->parsed()) {
            SuiteOptions o;
            o.ambiguity = ambiguity_of(c);
            o.tol = tol;
            std::vector<SuiteResult> results;
            if (c.potential == "all") {
                if (!c.params.empty()) throw UsageError("--params needs a single --potential");
                for (const auto& e : Catalog::instance().entries()) results.push_back(run_suite(e, {}, o));
            } else {
                results.push_back(run_suite(lookup(c.potential), given, o));
            }
            bool ok = true;
            for (const auto& s : results) {
                ok = ok && s.pass();
                err << s.report.potential << ": " << (s.pass() ? "PASS" : "FAIL");
                for (const auto& ch : s.checks)
                    if (!ch.pass) err << ' ' << ch.name;
                err << '\n';
            }
            write_to(out_path, suite_to_json(results) + "\n", out);
            return ok ? 0 : 1;
        }
        if (sw->parsed()) {
            write_to(out_path, sweep_csv(lookup(c.potential), given, param, linspace(from, to, steps), sweep_levels),
                     out);
            return 0;
        }
    } catch (const UsageError& e) {
        err << "pdem: " << e.what() << '\n';
        return 2;
    } catch (const RangeError& e) {
        err << "pdem: " << e.what() << '\n';
        return 2;
    } catch (const ParameterError& e) {
        err << "pdem: bad parameter: " << e.what() << '\n';
        return 2;
    } catch (const NotFound& e) {
        err << "pdem: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "pdem: " << e.what() << '\n';
        return 1;
    }
    return 2;
}

}  // namespace pdem::cli
