#pragma once

// The hdrflow command line: argument parsing and validation, dispatch to the
// modules, and report emission with CI-friendly exit codes.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hdrflow/cli/selftest.hpp"
#include "hdrflow/io/serialize.hpp"

namespace hdrflow::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitComputation = 3;

inline constexpr std::uint64_t kHasseWittPrimeLimit = 100000;

struct CommandConfig
{
    std::string command;
    std::string curve;
    std::string state;
    std::optional<std::uint64_t> p, pmin, pmax;
    int l = 2;
    int f = 1;
    std::optional<int> g;
    int max_steps = kDefaultMaxSteps;
    OutputFormat format = OutputFormat::Json;
    unsigned workers = 1;
    std::string out;   // empty: stdout
    std::string edges; // clump edge-list path
    bool timestamp = true;

    /// The parameters that determine the payload; worker count and output
    /// destination are left out so the echo is identical across them.
    Json echo() const
    {
        Json j{{"name", command}};
        auto put = [&](const char *k, const auto &v) {
            if (v)
                j[k] = *v;
        };
        if (command == "scan") {
            j["curve"] = curve;
            put("pmin", pmin);
            put("pmax", pmax);
        } else if (command == "flow") {
            j["p"] = *p;
            j["f"] = f;
            j["curve"] = curve;
            j["state"] = state;
            j["max_steps"] = max_steps;
        } else if (command == "hw" && g) {
            j["p"] = *p;
            j["f"] = f;
            j["g"] = *g;
        } else if (command != "selftest") {
            put("p", p);
            put("pmin", pmin);
            put("pmax", pmax);
            if (command == "clump")
                j["l"] = l;
        }
        return j;
    }
};

struct ParseResult
{
    std::optional<CommandConfig> config;
    int exit_code = kExitOk;
    std::string message; // help text or the usage error
};

class UsageError : public std::runtime_error
{
    public:
        using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool ok, const std::string &message)
{
    if (!ok)
        throw UsageError(message);
}

inline void require_prime(std::uint64_t p, const char *what)
{
    require(nt::is_prime(p), std::string(what) + " = " + std::to_string(p) + " is not prime");
}

/// The primes addressed by --p or --pmin/--pmax, bounded by [lo, limit).
inline std::vector<std::uint64_t> selected_primes(const CommandConfig &c, std::uint64_t lo)
{
    if (c.p)
        return {*c.p};
    return nt::primes_in_range(std::max(lo, c.pmin.value_or(lo)), *c.pmax);
}

inline void validate_selection(CommandConfig &c, std::uint64_t lo, std::uint64_t limit)
{
    require(c.p.has_value() != c.pmax.has_value(), c.command + " needs exactly one of --p or --pmax");
    require(!(c.p && c.pmin), "--pmin only combines with --pmax");
    if (c.p) {
        require(*c.p >= lo, "--p must be at least " + std::to_string(lo));
        require(*c.p < limit, "--p must be below " + std::to_string(limit));
        require_prime(*c.p, "--p");
    } else {
        const std::uint64_t pmin = c.pmin.value_or(lo);
        require(pmin >= lo, "--pmin must be at least " + std::to_string(lo));
        require(*c.pmax < limit, "--pmax must be below " + std::to_string(limit));
        require(pmin <= *c.pmax, "--pmin must not exceed --pmax");
    }
}

inline Curve flow_curve(const CommandConfig &c)
{
    const RationalCurve rc = RationalCurve::parse(c.curve);
    auto reduced = reduce_mod_p(rc, *c.p);
    if (auto *bad = std::get_if<BadReduction>(&reduced))
        throw UsageError("curve " + c.curve + " has bad reduction at p = " + std::to_string(*c.p) + ": " + bad->reason);
    const Curve &E = std::get<Curve>(reduced);
    if (c.f == 1)
        return E;
    const Field F = make_field(*c.p, c.f);
    if (E.legendre_parameter())
        return Curve::legendre(E.legendre_parameter()->lift_to(*F));
    return Curve::weierstrass(E.a().lift_to(*F), E.b().lift_to(*F));
}

/// Checks every parameter before any computation; library errors raised by
/// cheap constructors (literal parsing, field setup) count as usage errors.
inline void validate(CommandConfig &c)
{
    require(c.workers >= 1, "--workers must be positive");
    if (c.command == "scan") {
        require(c.pmax.has_value(), "scan needs --pmax");
        const std::uint64_t pmin = c.pmin.value_or(5);
        require(*c.pmax <= kScanPrimeLimit, "--pmax must not exceed " + std::to_string(kScanPrimeLimit));
        require(pmin >= 2 && pmin <= *c.pmax, "scan needs 2 <= pmin <= pmax");
        c.pmin = pmin;
        RationalCurve::parse(c.curve);
    } else if (c.command == "flow") {
        require(c.p.has_value(), "flow needs --p");
        require(*c.p >= 5, "flow needs p >= 5");
        require_prime(*c.p, "--p");
        require(c.f >= 1 && c.f <= kMaxExtensionDegree, "--f must lie in [1, " + std::to_string(kMaxExtensionDegree) + "]");
        require(c.max_steps >= 1, "--max-steps must be positive");
        HiggsState::parse(c.state, flow_curve(c));
    } else if (c.command == "ss-count" || c.command == "mass" || c.command == "clump") {
        validate_selection(c, 5, kLocusPrimeLimit);
        require(c.l == 2 || c.l == 3, "--l must be 2 or 3");
        require(c.edges.empty() || c.p, "--edges needs a single --p");
    } else if (c.command == "hw") {
        if (c.g) {
            require(c.p.has_value() && !c.pmax && !c.pmin, "hw --g needs --p and no range");
            require(*c.g >= 2, "--g must be at least 2");
            require(c.f >= 1 && c.f <= kShimuraMaxDegree, "--f must lie in [1, " + std::to_string(kShimuraMaxDegree) + "]");
            require_prime(*c.p, "--p");
        } else {
            validate_selection(c, 3, kHasseWittPrimeLimit);
        }
    }
}

inline Payload compute(const CommandConfig &c)
{
    if (c.command == "scan")
        return scan(RationalCurve::parse(c.curve), *c.pmin, *c.pmax, c.workers);
    if (c.command == "flow") {
        const Curve E = flow_curve(c);
        return make_flow_report(decide_periodicity(HiggsState::parse(c.state, E), E, c.max_steps), c.curve, c.max_steps);
    }
    if (c.command == "ss-count") {
        LocusSummary s;
        for (std::uint64_t p : selected_primes(c, 5))
            s.loci.push_back(enumerate_supersingular(p, c.workers));
        return s;
    }
    if (c.command == "mass") {
        MassSummary s;
        for (std::uint64_t p : selected_primes(c, 5))
            s.reports.push_back(mass_check(p, c.workers));
        return s;
    }
    if (c.command == "hw") {
        HasseWittSummary s;
        if (c.g)
            s.shimura = shimura_mass(*c.p, c.f, *c.g);
        else
            for (std::uint64_t p : selected_primes(c, 3))
                s.divisor_checks.push_back(hasse_witt_divisor_check(p));
        return s;
    }
    if (c.command == "clump") {
        ClumpSummary s;
        std::vector<std::string> edges;
        for (std::uint64_t p : selected_primes(c, 5)) {
            const IsogenyGraph g = build_isogeny_graph(p, c.l, c.workers);
            s.reports.push_back(verify_clump(g));
            if (!c.edges.empty())
                edges = g.edge_list();
        }
        if (!c.edges.empty()) {
            std::ofstream f(c.edges);
            if (!f)
                raise(ErrorKind::UnsupportedRange, "cannot open " + c.edges + " for writing");
            f << "j1,j2,multiplicity\n";
            for (const auto &line : edges)
                f << line << '\n';
        }
        return s;
    }
    return run_selftest(c.workers);
}

} // namespace detail

inline ParseResult parse_args(int argc, const char *const *argv)
{
    CommandConfig c;
    CLI::App app{"hdrflow: Higgs-de Rham flow and supersingular-locus experiments over finite fields", "hdrflow"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(HDRFLOW_VERSION));

    std::string format = "json";
    int workers = 0;
    bool no_timestamp = false;
    auto common = [&](CLI::App *sub) {
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "table"}));
        sub->add_option("--workers", workers, "Worker threads (default: $HDRFLOW_WORKERS or all cores)")->check(CLI::PositiveNumber);
        sub->add_option("--out", c.out, "Write the report to this file instead of stdout");
        sub->add_flag("--no-timestamp", no_timestamp, "Omit timestamp and elapsed time for byte-stable output");
    };
    auto selection = [&](CLI::App *sub) {
        sub->add_option("--p", c.p, "A single prime");
        sub->add_option("--pmin", c.pmin, "Smallest prime of the range");
        sub->add_option("--pmax", c.pmax, "Largest prime of the range");
    };

    CLI::App *scan_cmd = app.add_subcommand("scan", "Classify the reductions of a rational curve over a prime range");
    scan_cmd->add_option("--curve", c.curve, "legendre:n/d or weier:a_n/a_d,b_n/b_d")->required();
    scan_cmd->add_option("--pmin", c.pmin, "Smallest prime (default 5)");
    scan_cmd->add_option("--pmax", c.pmax, "Largest prime")->required();

    CLI::App *flow_cmd = app.add_subcommand("flow", "Run the Higgs-de Rham flow on a state and decide periodicity");
    flow_cmd->add_option("--p", c.p, "Characteristic")->required();
    flow_cmd->add_option("--f", c.f, "Field degree over F_p (default 1)");
    flow_cmd->add_option("--curve", c.curve, "Rational curve literal reduced mod p")->required();
    flow_cmd->add_option("--state", c.state, "State literal, e.g. unif, N, line:x,y, ext:r,s joined by +")->required();
    flow_cmd->add_option("--max-steps", c.max_steps, "Iteration bound (default 64)");

    CLI::App *ss_cmd = app.add_subcommand("ss-count", "Enumerate supersingular j-invariants in F_{p^2}");
    CLI::App *mass_cmd = app.add_subcommand("mass", "Check the Eichler-Deuring mass formula exactly");
    CLI::App *hw_cmd = app.add_subcommand("hw", "Hasse-Witt divisor checks, or the Shimura mass identities with --g");
    hw_cmd->add_option("--f", c.f, "Residue degree (with --g)");
    hw_cmd->add_option("--g", c.g, "Genus (>= 2) for the Shimura mass count");
    CLI::App *clump_cmd = app.add_subcommand("clump", "Verify the supersingular clump under Phi_l");
    clump_cmd->add_option("--l", c.l, "Isogeny degree, 2 or 3 (default 2)");
    clump_cmd->add_option("--edges", c.edges, "Write the edge list j1,j2,multiplicity to this file");
    CLI::App *self_cmd = app.add_subcommand("selftest", "Run the invariant suites at p <= 61");

    for (CLI::App *sub : {scan_cmd, flow_cmd, ss_cmd, mass_cmd, hw_cmd, clump_cmd, self_cmd})
        common(sub);
    for (CLI::App *sub : {ss_cmd, mass_cmd, hw_cmd, clump_cmd})
        selection(sub);

    ParseResult result;
    std::ostringstream out, err;
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        result.exit_code = code == 0 ? kExitOk : kExitUsage;
        result.message = out.str() + err.str();
        return result;
    }
    c.command = app.get_subcommands().front()->get_name();
    c.format = format == "csv" ? OutputFormat::Csv : format == "table" ? OutputFormat::Table : OutputFormat::Json;
    c.workers = resolve_workers(workers);
    c.timestamp = !no_timestamp;
    try {
        detail::validate(c);
    } catch (const UsageError &e) {
        result.exit_code = kExitUsage;
        result.message = std::string("error: ") + e.what() + "\n";
        return result;
    } catch (const Error &e) {
        result.exit_code = kExitUsage;
        result.message = std::string("error: ") + e.what() + "\n";
        return result;
    }
    result.config = std::move(c);
    return result;
}

/// Computes the payload and wraps it; library errors propagate.
inline ReportEnvelope execute(const CommandConfig &c)
{
    const auto start = std::chrono::steady_clock::now();
    ReportEnvelope e;
    e.command = c.echo();
    e.payload = detail::compute(c);
    if (c.timestamp) {
        e.timestamp = io::utc_timestamp();
        e.elapsed_ms = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count());
    }
    return e;
}

/// Runs a validated configuration, writing the report to --out or `out`.
inline int run(const CommandConfig &c, std::ostream &out = std::cout, std::ostream &err = std::cerr)
{
    ReportEnvelope e;
    try {
        e = execute(c);
    } catch (const Error &ex) {
        err << "error: " << ex.what() << '\n';
        return ex.kind() == ErrorKind::ValidationFailed ? kExitCheckFailed : kExitComputation;
    } catch (const std::exception &ex) {
        err << "error: " << ex.what() << '\n';
        return kExitComputation;
    }
    const std::string text = serialize(e, c.format);
    if (c.out.empty()) {
        out << text;
    } else {
        std::ofstream f(c.out, std::ios::binary);
        if (!(f << text)) {
            err << "error: cannot write " << c.out << '\n';
            return kExitComputation;
        }
    }
    return payload_passes(e.payload) ? kExitOk : kExitCheckFailed;
}

inline int main(int argc, const char *const *argv, std::ostream &out = std::cout, std::ostream &err = std::cerr)
{
    const ParseResult parsed = parse_args(argc, argv);
    if (!parsed.config) {
        (parsed.exit_code == kExitOk ? out : err) << parsed.message;
        return parsed.exit_code;
    }
    return run(*parsed.config, out, err);
}

} // namespace hdrflow::cli
