#include "pdem/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

#include "json.hpp"
#include "pdem/verify.hpp"
#include "pdem/wavefunctions.hpp"

namespace pdem {

using nlohmann::json;

AmbiguitySpec AmbiguitySpec::named(const std::string& name) {
    const AmbiguityParams a = AmbiguityParams::preset(name);
    return {name, a.xi, a.zeta};
}

AmbiguitySpec AmbiguitySpec::explicit_pair(double xi, double zeta) {
    if (!std::isfinite(xi) || !std::isfinite(zeta)) throw ParameterError("ambiguity parameters must be finite");
    return {std::nullopt, xi, zeta};
}

std::size_t auto_levels(const BoundCount& count) {
    switch (count.kind) {
        case BoundCount::Kind::Finite: return std::min(count.count, kAutoLevelCap);
        case BoundCount::Kind::Infinite: return kAutoLevelCap;
        case BoundCount::Kind::Zero: return 0;
    }
    return 0;
}

std::size_t resolved_levels(const CatalogEntry& entry, const SpectrumReport& report) {
    std::size_t k = 0;
    while (k < report.levels.size() && k < entry.truncation.oracle_levels && report.levels[k].admissible) ++k;
    return k;
}

namespace {

Grid window_grid(const CatalogEntry& entry, std::size_t n) {
    if (entry.domain.bounded()) return {*entry.domain.lo(), *entry.domain.hi(), n};
    return {entry.window_lo, entry.window_hi, n};
}

}  // namespace

SpectrumReport build_report(const CatalogEntry& entry, const Params& params, const ReportOptions& options) {
    const Params p = entry.resolve(params);
    SpectrumReport r;
    r.potential = entry.name;
    r.params = p.values();
    for (const char* key : {"alpha", "beta"})
        if (p.has(key)) r.deformation[key] = p.get(key);
    r.ambiguity = options.ambiguity;
    r.counting = bound_state_count(entry, p);

    const std::size_t k = options.n_levels.value_or(auto_levels(r.counting));
    std::optional<ParameterChain> chain;
    if (k > 0) {
        try {
            chain = solve_chain(entry.structure(p), k - 1);
        } catch (const Error&) {
        }
    }
    for (std::size_t n = 0; n < k; ++n) {
        LevelRecord lv;
        lv.n = n;
        lv.e_closed = entry.printed_energy(p, n);
        if (chain) lv.e_chain = chain->energy[n];
        const auto v = admissibility_check(entry, p, n);
        lv.admissible = v.admissible;
        lv.hermiticity_ok = v.hermiticity_ok;
        r.levels.push_back(lv);
    }
    try {
        r.checks.si_residual_max = si_residual_max(entry, p, 6);
    } catch (const Error&) {
    }

    const std::size_t resolved = resolved_levels(entry, r);
    std::vector<std::size_t> wanted(resolved);
    for (std::size_t n = 0; n < resolved; ++n) wanted[n] = n;
    const Grid grid = oracle_grid(entry, p, wanted);
    r.grid_meta = {grid.lo(), grid.hi(), grid.size()};

    if (options.oracle) {
        if (resolved > 0) {
            const auto s = eigenpairs(entry_operator(entry, p, grid), resolved, false);
            for (std::size_t n = 0; n < resolved; ++n) {
                auto& lv = r.levels[n];
                lv.e_oracle = s.eigenvalues[n];
                lv.abs_err = std::abs(lv.e_closed - *lv.e_oracle);
                lv.rel_err = *lv.abs_err / std::max(1e-12, std::abs(lv.e_closed));
            }
            const std::vector<std::size_t> gram(wanted.begin(), wanted.begin() + std::min<std::size_t>(4, resolved));
            r.checks.orthonormality_max_offdiag = gram_deviation(entry, p, gram, grid);
        }
        try {
            r.checks.equivalence_max_dev = entry_equivalence(entry, p, options.ambiguity.params(), window_grid(entry, 4001));
        } catch (const Error&) {
        }
    }
    return r;
}

// ---------------------------------------------------------------- JSON

namespace {

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> opt_from(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<double>();
}

std::string kind_name(BoundCount::Kind k) {
    switch (k) {
        case BoundCount::Kind::Finite: return "finite";
        case BoundCount::Kind::Infinite: return "infinite";
        case BoundCount::Kind::Zero: return "zero";
    }
    return "unknown";
}

BoundCount count_from(const std::string& kind, std::size_t count) {
    if (kind == "finite") return BoundCount{BoundCount::Kind::Finite, count};
    if (kind == "infinite") return BoundCount::infinite();
    if (kind == "zero") return BoundCount::zero();
    throw ParameterError("unknown counting kind '" + kind + "'");
}

}  // namespace

std::string to_json(const SpectrumReport& r, int indent) {
    json j;
    j["potential"] = r.potential;
    j["params"] = r.params;
    j["deformation"] = r.deformation;
    j["ambiguity"] = {{"preset", r.ambiguity.preset ? json(*r.ambiguity.preset) : json(nullptr)},
                      {"xi", r.ambiguity.xi},
                      {"zeta", r.ambiguity.zeta}};
    j["levels"] = json::array();
    for (const auto& lv : r.levels)
        j["levels"].push_back({{"n", lv.n},
                               {"E_closed", lv.e_closed},
                               {"E_chain", opt(lv.e_chain)},
                               {"E_oracle", opt(lv.e_oracle)},
                               {"abs_err", opt(lv.abs_err)},
                               {"rel_err", opt(lv.rel_err)},
                               {"admissible", lv.admissible},
                               {"hermiticity_ok", lv.hermiticity_ok}});
    j["counting"] = {{"kind", kind_name(r.counting.kind)}, {"count", r.counting.count}};
    j["checks"] = {{"si_residual_max", opt(r.checks.si_residual_max)},
                   {"equivalence_max_dev", opt(r.checks.equivalence_max_dev)},
                   {"orthonormality_max_offdiag", opt(r.checks.orthonormality_max_offdiag)}};
    j["grid_meta"] = {{"lo", r.grid_meta.lo}, {"hi", r.grid_meta.hi}, {"n_points", r.grid_meta.n_points}};
    return j.dump(indent);
}

SpectrumReport report_from_json(const std::string& text) {
    SpectrumReport r;
    try {
        const json j = json::parse(text);
        r.potential = j.at("potential").get<std::string>();
        r.params = j.at("params").get<std::map<std::string, double>>();
        r.deformation = j.at("deformation").get<std::map<std::string, double>>();
        const auto& a = j.at("ambiguity");
        if (!a.at("preset").is_null()) r.ambiguity.preset = a.at("preset").get<std::string>();
        r.ambiguity.xi = a.at("xi").get<double>();
        r.ambiguity.zeta = a.at("zeta").get<double>();
        for (const auto& l : j.at("levels")) {
            LevelRecord lv;
            lv.n = l.at("n").get<std::size_t>();
            lv.e_closed = l.at("E_closed").get<double>();
            lv.e_chain = opt_from(l, "E_chain");
            lv.e_oracle = opt_from(l, "E_oracle");
            lv.abs_err = opt_from(l, "abs_err");
            lv.rel_err = opt_from(l, "rel_err");
            lv.admissible = l.at("admissible").get<bool>();
            lv.hermiticity_ok = l.at("hermiticity_ok").get<bool>();
            r.levels.push_back(lv);
        }
        const auto& c = j.at("counting");
        r.counting = count_from(c.at("kind").get<std::string>(), c.at("count").get<std::size_t>());
        const auto& ch = j.at("checks");
        r.checks.si_residual_max = opt_from(ch, "si_residual_max");
        r.checks.equivalence_max_dev = opt_from(ch, "equivalence_max_dev");
        r.checks.orthonormality_max_offdiag = opt_from(ch, "orthonormality_max_offdiag");
        const auto& g = j.at("grid_meta");
        r.grid_meta = {g.at("lo").get<double>(), g.at("hi").get<double>(), g.at("n_points").get<std::size_t>()};
    } catch (const json::exception& e) {
        throw ParameterError(std::string("malformed report: ") + e.what());
    }
    return r;
}

// ---------------------------------------------------------------- CSV

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

const char* kCsvHeader =
    "potential,n,E_closed,E_chain,E_oracle,abs_err,rel_err,admissible,hermiticity_ok,counting,grid_lo,grid_hi,grid_n";

std::string cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::optional<double> parse_cell(const std::string& s) {
    if (s.empty()) return std::nullopt;
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) throw ParameterError("bad numeric cell '" + s + "'");
    return v;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(line);
    while (std::getline(is, cur, ',')) out.push_back(cur);
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

}  // namespace

std::string to_csv(const SpectrumReport& r) {
    std::ostringstream os;
    os << kCsvHeader << '\n';
    for (const auto& lv : r.levels) {
        os << r.potential << ',' << lv.n << ',' << format_double(lv.e_closed) << ',' << cell(lv.e_chain) << ','
           << cell(lv.e_oracle) << ',' << cell(lv.abs_err) << ',' << cell(lv.rel_err) << ','
           << (lv.admissible ? "true" : "false") << ',' << (lv.hermiticity_ok ? "true" : "false") << ','
           << r.counting.describe() << ',' << format_double(r.grid_meta.lo) << ',' << format_double(r.grid_meta.hi)
           << ',' << r.grid_meta.n_points << '\n';
    }
    return os.str();
}

std::vector<LevelRecord> levels_from_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != kCsvHeader) throw ParameterError("unexpected CSV header");
    std::vector<LevelRecord> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto c = split(line);
        if (c.size() != 13) throw ParameterError("CSV row has " + std::to_string(c.size()) + " cells");
        LevelRecord lv;
        lv.n = static_cast<std::size_t>(std::stoull(c[1]));
        lv.e_closed = *parse_cell(c[2]);
        lv.e_chain = parse_cell(c[3]);
        lv.e_oracle = parse_cell(c[4]);
        lv.abs_err = parse_cell(c[5]);
        lv.rel_err = parse_cell(c[6]);
        lv.admissible = c[7] == "true";
        lv.hermiticity_ok = c[8] == "true";
        out.push_back(lv);
    }
    return out;
}

}  // namespace pdem
