// hofmom: command-line front end for the edge spectrum, moment sums and
// closed forms of the Hofstadter model at flux p/q.
//
// Exit codes: 0 success, 1 verification failure, 2 precision exhaustion,
// 3 bad arguments.

#include "hofmom/charpoly.hpp"
#include "hofmom/errors.hpp"
#include "hofmom/extrapolate.hpp"
#include "hofmom/io.hpp"
#include "hofmom/moments.hpp"
#include "hofmom/specfun.hpp"
#include "hofmom/spectrum.hpp"
#include "hofmom/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using namespace hofmom;

constexpr int exit_ok = 0;
constexpr int exit_verification = 1;
constexpr int exit_precision = 2;
constexpr int exit_usage = 3;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    int p = 1;
    int q = 0;
    std::vector<int> q_list{101, 201, 401};
    int n = 1;
    int k = 0;
    int qmax = 12;
    std::string kind = "alternating";
    std::string level = "quick";
    unsigned precision = default_precision_bits;
    std::string format = "json";
    std::string out;
};

unsigned precision_from_environment() {
    const char* env = std::getenv("HOFMOM_PRECISION");
    if (env == nullptr || *env == '\0') return default_precision_bits;
    try {
        std::size_t used = 0;
        const long bits = std::stol(env, &used);
        if (used != std::string(env).size() || bits < 64) throw std::invalid_argument("");
        return static_cast<unsigned>(bits);
    } catch (const std::exception&) {
        throw UsageError("HOFMOM_PRECISION must be an integer >= 64");
    }
}

void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) throw UsageError("cannot open output file " + cfg.out);
    file << text;
}

std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

int cmd_charpoly(const RunConfig& cfg) {
    const RationalFlux flux(cfg.p, cfg.q);
    const CharPoly cp = charpoly(flux, std::max(cfg.precision, charpoly_default_bits(flux.q())));
    if (cfg.format == "csv") {
        std::ostringstream os;
        os << "j,a\n";
        const Json a = to_json(cp)["a"];
        for (std::size_t j = 0; j < a.size(); ++j) {
            os << j << ',' << (a[j].is_string() ? a[j].get<std::string>() : a[j].dump()) << '\n';
        }
        emit(cfg, os.str());
    } else {
        emit(cfg, json_text(to_json(cp)));
    }
    return exit_ok;
}

int cmd_edges(const RunConfig& cfg) {
    const EdgeSpectrum spec = edge_spectrum(RationalFlux(cfg.p, cfg.q), cfg.precision);
    emit(cfg, cfg.format == "csv" ? to_csv(spec) : json_text(to_json(spec)));
    return exit_ok;
}

/// Closed-form limit of the scaled moment of the given kind, if one is known.
std::optional<Real> moment_reference(MomentKind kind, int n, int k) {
    switch (kind) {
        case MomentKind::alternating: return closed_form_M<Real>(n).value;
        case MomentKind::half_spectrum: return Real(closed_form_M<Real>(n).value / 2);
        case MomentKind::bandwidth_power:
            if (n % 2 == 1) return Real(0);
            return std::nullopt;
        case MomentKind::cross: return Real(closed_form_M<Real>(n).value * (n - 2 * k) / n);
    }
    return std::nullopt;
}

int cmd_moment(const RunConfig& cfg) {
    const MomentKind kind = parse_moment_kind(cfg.kind);
    if (cfg.q_list.empty()) throw UsageError("--q needs at least one value");
    for (std::size_t i = 1; i < cfg.q_list.size(); ++i) {
        if (cfg.q_list[i] <= cfg.q_list[i - 1]) throw UsageError("--q values must be strictly increasing");
    }
    if (kind != MomentKind::bandwidth_power) {
        for (int q : cfg.q_list) {
            if (q % 2 == 0) throw UsageError("moment kind " + cfg.kind + " requires odd q");
        }
    }
    const unsigned bits = std::max(cfg.precision, moment_precision(cfg.n, cfg.q_list.back()));
    std::vector<MomentValue> values;
    for (int q : cfg.q_list) {
        const EdgeSpectrum spec = edge_spectrum(RationalFlux(cfg.p, q), bits);
        values.push_back(moment(spec, kind, cfg.n, cfg.k));
    }

    WorkingPrecision guard(cfg.precision);
    std::optional<LimitEstimate> limit;
    if (values.size() >= 3) {
        std::vector<Real> scaled;
        for (const auto& v : values) scaled.push_back(v.scaled);
        limit = extrapolate(cfg.q_list, scaled);
        limit->n = cfg.n;
        limit->kind = kind;
    }
    std::optional<Real> reference;
    if (cfg.p == 1) reference = moment_reference(kind, cfg.n, cfg.k);

    if (cfg.format == "csv") {
        std::ostringstream os;
        os << moment_csv_header();
        for (const auto& v : values) os << to_csv_row(v, cfg.precision);
        if (limit) {
            os << to_string(kind) << ',' << cfg.n << ',' << cfg.k << ",inf,," << decimal(limit->extrapolated, cfg.precision)
               << '\n';
        }
        emit(cfg, os.str());
    } else {
        Json out;
        out["p"] = cfg.p;
        if (cfg.p != 1) out["unvalidated"] = true;
        Json rows = Json::array();
        for (const auto& v : values) rows.push_back(to_json(v, cfg.precision));
        out["values"] = std::move(rows);
        if (limit) {
            out["limit"] = to_json(*limit, reference, cfg.precision, cfg.k);
        } else {
            out["limit"] = nullptr;
            out["reference"] = reference ? Json(decimal(*reference, cfg.precision)) : Json(nullptr);
        }
        emit(cfg, json_text(out));
    }
    return exit_ok;
}

int cmd_limit(const RunConfig& cfg) {
    if (cfg.n < 1) throw UsageError("--n must be >= 1");
    WorkingPrecision guard(cfg.precision);
    const ClosedForm<Real> cf = closed_form_M<Real>(cfg.n);
    Json out;
    out["n"] = cfg.n;
    out["value"] = decimal(cf.value, cfg.precision);
    out["forms"] = {{"polygamma", decimal(cf.polygamma_form, cfg.precision)},
                    {"dirichlet_beta", decimal(cf.beta_form, cfg.precision)},
                    {"hurwitz_zeta", decimal(cf.hurwitz_form, cfg.precision)}};
    if (cfg.n % 2 == 0) {
        out["euler_form"] = decimal(even_closed_form<Real>(cfg.n), cfg.precision);
        out["integral"] = nullptr;
    } else if (cfg.n <= 11) {
        const double integral = moment_integral(cfg.n);
        const double rel = integral / cf.value.convert_to<double>() - 1.0;
        std::ostringstream a, b;
        a.precision(17);
        b.precision(6);
        a << std::scientific << integral;
        b << std::scientific << rel;
        out["integral"] = {{"value", a.str()}, {"relative_deviation", b.str()}};
    } else {
        out["integral"] = nullptr;
    }
    emit(cfg, json_text(out));
    return exit_ok;
}

int cmd_verify(const RunConfig& cfg) {
    VerifyLevel level;
    if (cfg.level == "quick") {
        level = VerifyLevel::quick;
    } else if (cfg.level == "full") {
        level = VerifyLevel::full;
    } else {
        throw UsageError("--level must be quick or full");
    }
    const VerifyReport report = run_identity_suites(level);
    std::ostringstream os;
    if (cfg.format == "csv") {
        os << "identity,cases,max_defect,tolerance,passed\n";
        for (const auto& c : report.checks) {
            os << c.name << ',' << c.cases << ',' << std::scientific << c.max_defect << ',' << c.tolerance << ','
               << (c.passed() ? "true" : "false") << '\n';
        }
    } else {
        Json rows = Json::array();
        for (const auto& c : report.checks) {
            std::ostringstream d, t;
            d << std::scientific << c.max_defect;
            t << std::scientific << c.tolerance;
            rows.push_back({{"identity", c.name}, {"cases", c.cases}, {"max_defect", d.str()}, {"tolerance", t.str()},
                            {"passed", c.passed()}});
        }
        os << json_text(Json{{"level", cfg.level}, {"passed", report.passed()}, {"checks", rows}});
    }
    emit(cfg, os.str());
    return report.passed() ? exit_ok : exit_verification;
}

int cmd_butterfly(const RunConfig& cfg) {
    if (cfg.qmax < 1) throw UsageError("--qmax must be >= 1");
    std::ostringstream os;
    os << "p,q,band_lo,band_hi,validated\n";
    for (int q = 1; q <= cfg.qmax; ++q) {
        for (int p = 1; p < std::max(q, 2); ++p) {
            if (std::gcd(p, q) != 1) continue;
            const RationalFlux flux(p, q);
            for (const Band& b : bands(edge_spectrum(flux, cfg.precision))) {
                os << p << ',' << q << ',' << decimal(b.lo, cfg.precision) << ',' << decimal(b.hi, cfg.precision) << ','
                   << (flux.validated() ? "true" : "false") << '\n';
            }
        }
    }
    emit(cfg, os.str());
    return exit_ok;
}

std::vector<int> parse_q_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw UsageError("bad q value '" + item + "'");
        }
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    std::string q_text;
    CLI::App app{"Band edges, moment sums and closed forms of the Hofstadter model at rational flux"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--precision", cfg.precision, "Working precision in bits (>= 64)");
        sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--out", cfg.out, "Output file (default stdout)");
    };

    auto* charpoly_cmd = app.add_subcommand("charpoly", "Coefficients of the Chambers polynomial");
    charpoly_cmd->add_option("--p", cfg.p, "Flux numerator");
    charpoly_cmd->add_option("--q", cfg.q, "Flux denominator")->required();
    add_common(charpoly_cmd);

    auto* edges_cmd = app.add_subcommand("edges", "Band-edge energies e_r(+4), e_r(-4)");
    edges_cmd->add_option("--p", cfg.p, "Flux numerator");
    edges_cmd->add_option("--q", cfg.q, "Flux denominator")->required();
    add_common(edges_cmd);

    auto* moment_cmd = app.add_subcommand("moment", "Scaled moment sums over a list of q, with extrapolation");
    moment_cmd->add_option("--kind", cfg.kind, "alternating | half | bandwidth_power | cross");
    moment_cmd->add_option("--n", cfg.n, "Moment order")->required();
    moment_cmd->add_option("--k", cfg.k, "Cross-moment index");
    moment_cmd->add_option("--q", q_text, "Comma-separated increasing q values (default 101,201,401)");
    moment_cmd->add_option("--p", cfg.p, "Flux numerator (p != 1 is unvalidated)");
    add_common(moment_cmd);

    auto* limit_cmd = app.add_subcommand("limit", "Closed forms of the q -> infinity limit M(n)");
    limit_cmd->add_option("--n", cfg.n, "Moment order")->required();
    add_common(limit_cmd);

    auto* verify_cmd = app.add_subcommand("verify", "Randomized identity suites");
    verify_cmd->add_option("--level", cfg.level, "quick | full");
    add_common(verify_cmd);

    auto* butterfly_cmd = app.add_subcommand("butterfly", "Bands for every reduced p/q with q <= qmax");
    butterfly_cmd->add_option("--qmax", cfg.qmax, "Largest denominator");
    add_common(butterfly_cmd);
    butterfly_cmd->get_option("--format")->check(CLI::IsMember({"csv"}));

    try {
        cfg.precision = precision_from_environment();
        app.parse(argc, argv);
        if (cfg.precision < 64) throw UsageError("--precision must be >= 64");
        if (!q_text.empty()) cfg.q_list = parse_q_list(q_text);
        if (*butterfly_cmd) cfg.format = "csv";

        if (*charpoly_cmd) return cmd_charpoly(cfg);
        if (*edges_cmd) return cmd_edges(cfg);
        if (*moment_cmd) return cmd_moment(cfg);
        if (*limit_cmd) return cmd_limit(cfg);
        if (*verify_cmd) return cmd_verify(cfg);
        if (*butterfly_cmd) return cmd_butterfly(cfg);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    } catch (const UsageError& e) {
        std::cerr << "hofmom: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "hofmom: " << e.what() << '\n';
        return exit_usage;
    } catch (const PrecisionExhausted& e) {
        std::cerr << "hofmom: precision exhausted: " << e.what() << '\n';
        return exit_precision;
    } catch (const std::exception& e) {
        std::cerr << "hofmom: " << e.what() << '\n';
        return exit_verification;
    }
    return exit_usage;
}
