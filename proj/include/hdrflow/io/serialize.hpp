#pragma once

// Canonical JSON (sorted keys, rationals as "num/den", field elements as
// "c0+c1*u"), CSV with one fixed header per payload, and aligned plain
// tables. JSON readers rebuild every payload for round-trip checks.

#include <chrono>
#include <cstdint>
#include <ctime>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "hdrflow/io/reports.hpp"

#ifndef HDRFLOW_VERSION
#define HDRFLOW_VERSION "0.0.0"
#endif

namespace hdrflow {

using Json = nlohmann::json; // std::map objects: keys always sorted

enum class OutputFormat { Json, Csv, Table };

struct ReportEnvelope
{
    std::string version = HDRFLOW_VERSION;
    Json command;                  // {"name": subcommand, parameters...}
    std::optional<std::string> timestamp;
    std::optional<std::uint64_t> elapsed_ms;
    Payload payload;

    friend bool operator==(const ReportEnvelope &, const ReportEnvelope &) = default;
};

namespace io {

/// Integers that fit in 64 bits are JSON numbers; larger ones are decimal strings.
inline Json big_to_json(const BigInt &v)
{
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(v);
    return v.str();
}

inline BigInt big_from_json(const Json &j)
{
    if (j.is_string())
        return BigInt(j.get<std::string>());
    if (j.is_number_unsigned())
        return BigInt(j.get<std::uint64_t>());
    return BigInt(j.get<std::int64_t>());
}

inline std::string utc_timestamp(std::chrono::system_clock::time_point t = std::chrono::system_clock::now())
{
    const std::time_t tt = std::chrono::system_clock::to_time_t(t);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline PrimeStatus prime_status_from(std::string_view s)
{
    for (PrimeStatus st : {PrimeStatus::Skipped, PrimeStatus::Bad, PrimeStatus::Ordinary, PrimeStatus::Supersingular})
        if (to_string(st) == s)
            return st;
    raise(ErrorKind::ParseError, "unknown prime status '" + std::string(s) + "'");
}

inline NonPeriodicReason reason_from(std::string_view s)
{
    for (NonPeriodicReason r : {NonPeriodicReason::SupersingularDegeneration, NonPeriodicReason::PTorsionEscape,
                                NonPeriodicReason::ExtensionObstruction})
        if (to_string(r) == s)
            return r;
    raise(ErrorKind::ParseError, "unknown non-periodicity reason '" + std::string(s) + "'");
}

} // namespace io

// ---------------------------------------------------------------- JSON

inline void to_json(Json &j, const PrimeRecord &r)
{
    j = Json{{"p", r.p}, {"status", std::string(to_string(r.status))}, {"reason", r.reason}};
    j["trace"] = r.trace ? Json(*r.trace) : Json(nullptr);
}

inline void from_json(const Json &j, PrimeRecord &r)
{
    r.p = j.at("p").get<std::uint64_t>();
    r.status = io::prime_status_from(j.at("status").get<std::string>());
    r.reason = j.at("reason").get<std::string>();
    r.trace = j.at("trace").is_null() ? std::nullopt : std::optional<std::int64_t>(j.at("trace").get<std::int64_t>());
}

inline void to_json(Json &j, const ScanTotals &t)
{
    j = Json{{"primes", t.primes}, {"skipped", t.skipped}, {"bad", t.bad},
             {"good", t.good}, {"ordinary", t.ordinary}, {"supersingular", t.supersingular}};
}

inline void from_json(const Json &j, ScanTotals &t)
{
    t.primes = j.at("primes").get<std::uint64_t>();
    t.skipped = j.at("skipped").get<std::uint64_t>();
    t.bad = j.at("bad").get<std::uint64_t>();
    t.good = j.at("good").get<std::uint64_t>();
    t.ordinary = j.at("ordinary").get<std::uint64_t>();
    t.supersingular = j.at("supersingular").get<std::uint64_t>();
}

inline void to_json(Json &j, const ScanReport &r)
{
    const DensitySummary d = density_summary(r);
    j = Json{{"curve", r.curve},
             {"p_min", r.p_min},
             {"p_max", r.p_max},
             {"records", r.records},
             {"totals", r.totals},
             {"supersingular_primes", r.supersingular_primes},
             {"density", {{"ratio", d.ratio ? Json(d.ratio->to_string()) : Json(nullptr)},
                          {"ratio_approx", d.ratio_approx},
                          {"normalized", d.normalized}}}};
}

inline void from_json(const Json &j, ScanReport &r)
{
    r.curve = j.at("curve").get<std::string>();
    r.p_min = j.at("p_min").get<std::uint64_t>();
    r.p_max = j.at("p_max").get<std::uint64_t>();
    r.records = j.at("records").get<std::vector<PrimeRecord>>();
    r.totals = j.at("totals").get<ScanTotals>();
    r.supersingular_primes = j.at("supersingular_primes").get<std::vector<std::uint64_t>>();
}

inline void to_json(Json &j, const Verdict &v)
{
    j = Json{{"text", v.to_string()}};
    switch (v.kind) {
    case Verdict::Kind::Periodic:
        j["kind"] = "Periodic";
        j["period"] = v.period;
        break;
    case Verdict::Kind::NonPeriodic:
        j["kind"] = "NonPeriodic";
        j["reason"] = std::string(to_string(v.reason));
        break;
    case Verdict::Kind::Undetermined:
        j["kind"] = "Undetermined";
        j["steps_exhausted"] = v.steps_exhausted;
        break;
    }
}

inline void from_json(const Json &j, Verdict &v)
{
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "Periodic")
        v = Verdict::periodic(j.at("period").get<std::uint64_t>());
    else if (kind == "NonPeriodic")
        v = Verdict::non_periodic(io::reason_from(j.at("reason").get<std::string>()));
    else if (kind == "Undetermined")
        v = Verdict::undetermined(j.at("steps_exhausted").get<std::uint64_t>());
    else
        raise(ErrorKind::ParseError, "unknown verdict kind '" + kind + "'");
}

inline void to_json(Json &j, const FlowReport &r)
{
    j = Json{{"p", r.p},         {"f", r.f},         {"curve", r.curve}, {"state", r.state}, {"ordinary", r.ordinary},
             {"max_steps", r.max_steps}, {"trace", r.trace}, {"verdict", r.verdict}};
}

inline void from_json(const Json &j, FlowReport &r)
{
    r.p = j.at("p").get<std::uint64_t>();
    r.f = j.at("f").get<int>();
    r.curve = j.at("curve").get<std::string>();
    r.state = j.at("state").get<std::string>();
    r.ordinary = j.at("ordinary").get<bool>();
    r.max_steps = j.at("max_steps").get<int>();
    r.trace = j.at("trace").get<std::vector<std::string>>();
    r.verdict = j.at("verdict").get<Verdict>();
}

inline void to_json(Json &j, const SupersingularLocus &l)
{
    std::vector<std::string> js;
    ExactRational mass;
    for (const FqElement &x : l.j_values)
        js.push_back(x.to_string());
    for (int a : l.aut_orders)
        mass += ExactRational(1, a);
    j = Json{{"p", l.p}, {"count", l.size()}, {"j_values", js}, {"aut_orders", l.aut_orders}, {"mass", mass.to_string()}};
}

inline void from_json(const Json &j, SupersingularLocus &l)
{
    l.p = j.at("p").get<std::uint64_t>();
    l.field = make_field(l.p, 2);
    l.j_values.clear();
    for (const auto &s : j.at("j_values"))
        l.j_values.push_back(FqElement::parse(*l.field, s.get<std::string>()));
    l.aut_orders = j.at("aut_orders").get<std::vector<int>>();
}

inline void to_json(Json &j, const LocusSummary &s) { j = Json{{"loci", s.loci}}; }

inline void from_json(const Json &j, LocusSummary &s) { s.loci = j.at("loci").get<std::vector<SupersingularLocus>>(); }

inline void to_json(Json &j, const MassReport &r)
{
    j = Json{{"p", r.p},
             {"locus_size", r.locus_size},
             {"mass", r.mass.to_string()},
             {"expected", r.expected.to_string()},
             {"pass", r.pass}};
}

inline void from_json(const Json &j, MassReport &r)
{
    r.p = j.at("p").get<std::uint64_t>();
    r.locus_size = j.at("locus_size").get<std::size_t>();
    r.mass = ExactRational::parse(j.at("mass").get<std::string>());
    r.expected = ExactRational::parse(j.at("expected").get<std::string>());
    r.pass = j.at("pass").get<bool>();
}

inline void to_json(Json &j, const MassSummary &s) { j = Json{{"reports", s.reports}, {"all_pass", s.all_pass()}}; }

inline void from_json(const Json &j, MassSummary &s) { s.reports = j.at("reports").get<std::vector<MassReport>>(); }

inline void to_json(Json &j, const HasseWittCheck &c)
{
    j = Json{{"p", c.p},
             {"degree", c.degree},
             {"expected_degree", c.expected_degree},
             {"squarefree", c.squarefree},
             {"constant_term_one", c.constant_term_one},
             {"pass", c.pass()}};
}

inline void from_json(const Json &j, HasseWittCheck &c)
{
    c.p = j.at("p").get<std::uint64_t>();
    c.degree = j.at("degree").get<int>();
    c.expected_degree = j.at("expected_degree").get<int>();
    c.squarefree = j.at("squarefree").get<bool>();
    c.constant_term_one = j.at("constant_term_one").get<bool>();
}

inline void to_json(Json &j, const ShimuraMass &m)
{
    j = Json{{"p", m.p},
             {"f", m.f},
             {"g", m.g},
             {"q", io::big_to_json(m.q)},
             {"mass", io::big_to_json(m.mass)},
             {"euler_characteristic", io::big_to_json(m.euler_characteristic)},
             {"euler_form", io::big_to_json(m.euler_form)},
             {"hasse_witt_degree", io::big_to_json(m.hasse_witt_degree)},
             {"euler_identity", m.euler_identity},
             {"degree_identity", m.degree_identity},
             {"pass", m.pass()}};
}

inline void from_json(const Json &j, ShimuraMass &m)
{
    m.p = j.at("p").get<std::uint64_t>();
    m.f = j.at("f").get<int>();
    m.g = j.at("g").get<int>();
    m.q = io::big_from_json(j.at("q"));
    m.mass = io::big_from_json(j.at("mass"));
    m.euler_characteristic = io::big_from_json(j.at("euler_characteristic"));
    m.euler_form = io::big_from_json(j.at("euler_form"));
    m.hasse_witt_degree = io::big_from_json(j.at("hasse_witt_degree"));
    m.euler_identity = j.at("euler_identity").get<bool>();
    m.degree_identity = j.at("degree_identity").get<bool>();
}

inline void to_json(Json &j, const HasseWittSummary &s)
{
    j = Json{{"divisor_checks", s.divisor_checks}, {"all_pass", s.all_pass()}};
    j["shimura"] = s.shimura ? Json(*s.shimura) : Json(nullptr);
}

inline void from_json(const Json &j, HasseWittSummary &s)
{
    s.divisor_checks = j.at("divisor_checks").get<std::vector<HasseWittCheck>>();
    s.shimura = j.at("shimura").is_null() ? std::nullopt : std::optional<ShimuraMass>(j.at("shimura").get<ShimuraMass>());
}

inline void to_json(Json &j, const ClumpReport &r)
{
    j = Json{{"p", r.p},
             {"l", r.l},
             {"vertex_count", r.vertex_count},
             {"edge_count", r.edge_count},
             {"edge_weight", r.edge_weight},
             {"closed", r.closed},
             {"regular", r.regular},
             {"connected", r.connected},
             {"pass", r.pass()}};
}

inline void from_json(const Json &j, ClumpReport &r)
{
    r.p = j.at("p").get<std::uint64_t>();
    r.l = j.at("l").get<int>();
    r.vertex_count = j.at("vertex_count").get<std::size_t>();
    r.edge_count = j.at("edge_count").get<std::size_t>();
    r.edge_weight = j.at("edge_weight").get<std::uint64_t>();
    r.closed = j.at("closed").get<bool>();
    r.regular = j.at("regular").get<bool>();
    r.connected = j.at("connected").get<bool>();
}

inline void to_json(Json &j, const ClumpSummary &s) { j = Json{{"reports", s.reports}, {"all_pass", s.all_pass()}}; }

inline void from_json(const Json &j, ClumpSummary &s) { s.reports = j.at("reports").get<std::vector<ClumpReport>>(); }

inline void to_json(Json &j, const CheckResult &c) { j = Json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}}; }

inline void from_json(const Json &j, CheckResult &c)
{
    c.name = j.at("name").get<std::string>();
    c.pass = j.at("pass").get<bool>();
    c.detail = j.at("detail").get<std::string>();
}

inline void to_json(Json &j, const SelftestReport &s) { j = Json{{"checks", s.checks}, {"all_pass", s.all_pass()}}; }

inline void from_json(const Json &j, SelftestReport &s) { s.checks = j.at("checks").get<std::vector<CheckResult>>(); }

inline void to_json(Json &j, const ReportEnvelope &e)
{
    j = Json{{"version", e.version}, {"command", e.command}};
    std::visit([&](const auto &r) { j["payload"] = r; }, e.payload);
    if (e.timestamp)
        j["timestamp"] = *e.timestamp;
    if (e.elapsed_ms)
        j["elapsed_ms"] = *e.elapsed_ms;
}

inline void from_json(const Json &j, ReportEnvelope &e)
{
    e.version = j.at("version").get<std::string>();
    e.command = j.at("command");
    e.timestamp = j.contains("timestamp") ? std::optional(j.at("timestamp").get<std::string>()) : std::nullopt;
    e.elapsed_ms = j.contains("elapsed_ms") ? std::optional(j.at("elapsed_ms").get<std::uint64_t>()) : std::nullopt;
    const std::string name = e.command.at("name").get<std::string>();
    const Json &p = j.at("payload");
    if (name == "scan")
        e.payload = p.get<ScanReport>();
    else if (name == "flow")
        e.payload = p.get<FlowReport>();
    else if (name == "ss-count")
        e.payload = p.get<LocusSummary>();
    else if (name == "mass")
        e.payload = p.get<MassSummary>();
    else if (name == "hw")
        e.payload = p.get<HasseWittSummary>();
    else if (name == "clump")
        e.payload = p.get<ClumpSummary>();
    else if (name == "selftest")
        e.payload = p.get<SelftestReport>();
    else
        raise(ErrorKind::ParseError, "unknown command '" + name + "' in report");
}

// ---------------------------------------------------------------- tables

/// Header and rows shared by the CSV and plain-table renderings.
struct Table
{
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

namespace io {

inline std::string yes_no(bool b) { return b ? "true" : "false"; }

inline Table table_of(const ScanReport &r)
{
    Table t{{"p", "status", "trace", "reason"}, {}};
    for (const PrimeRecord &x : r.records)
        t.rows.push_back({std::to_string(x.p), std::string(to_string(x.status)), x.trace ? std::to_string(*x.trace) : "", x.reason});
    return t;
}

inline Table table_of(const FlowReport &r)
{
    return {{"p", "f", "curve", "state", "ordinary", "verdict", "steps"},
            {{std::to_string(r.p), std::to_string(r.f), r.curve, r.state, yes_no(r.ordinary), r.verdict.to_string(),
              std::to_string(r.trace.size() - 1)}}};
}

inline Table table_of(const LocusSummary &s)
{
    Table t{{"p", "j", "aut_order"}, {}};
    for (const SupersingularLocus &l : s.loci)
        for (std::size_t i = 0; i < l.size(); ++i)
            t.rows.push_back({std::to_string(l.p), l.j_values[i].to_string(), std::to_string(l.aut_orders[i])});
    return t;
}

inline Table table_of(const MassSummary &s)
{
    Table t{{"p", "locus_size", "mass", "expected", "pass"}, {}};
    for (const MassReport &r : s.reports)
        t.rows.push_back({std::to_string(r.p), std::to_string(r.locus_size), r.mass.to_string(), r.expected.to_string(), yes_no(r.pass)});
    return t;
}

inline Table table_of(const HasseWittSummary &s)
{
    if (s.shimura) {
        const ShimuraMass &m = *s.shimura;
        return {{"p", "f", "g", "q", "mass", "euler_characteristic", "euler_form", "hasse_witt_degree", "pass"},
                {{std::to_string(m.p), std::to_string(m.f), std::to_string(m.g), m.q.str(), m.mass.str(),
                  m.euler_characteristic.str(), m.euler_form.str(), m.hasse_witt_degree.str(), yes_no(m.pass())}}};
    }
    Table t{{"p", "degree", "expected_degree", "squarefree", "constant_term_one", "pass"}, {}};
    for (const HasseWittCheck &c : s.divisor_checks)
        t.rows.push_back({std::to_string(c.p), std::to_string(c.degree), std::to_string(c.expected_degree), yes_no(c.squarefree),
                          yes_no(c.constant_term_one), yes_no(c.pass())});
    return t;
}

inline Table table_of(const ClumpSummary &s)
{
    Table t{{"p", "l", "vertices", "edges", "edge_weight", "closed", "regular", "connected"}, {}};
    for (const ClumpReport &r : s.reports)
        t.rows.push_back({std::to_string(r.p), std::to_string(r.l), std::to_string(r.vertex_count), std::to_string(r.edge_count),
                          std::to_string(r.edge_weight), yes_no(r.closed), yes_no(r.regular), yes_no(r.connected)});
    return t;
}

inline Table table_of(const SelftestReport &s)
{
    Table t{{"check", "pass", "detail"}, {}};
    for (const CheckResult &c : s.checks)
        t.rows.push_back({c.name, yes_no(c.pass), c.detail});
    return t;
}

inline std::string csv_field(const std::string &s)
{
    if (s.find_first_of(",\"\n\r") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

inline void append_csv_row(std::string &out, const std::vector<std::string> &row)
{
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i)
            out += ',';
        out += csv_field(row[i]);
    }
    out += '\n';
}

} // namespace io

inline Table payload_table(const Payload &p)
{
    return std::visit([](const auto &r) { return io::table_of(r); }, p);
}

inline std::string to_csv(const Table &t)
{
    std::string out;
    io::append_csv_row(out, t.header);
    for (const auto &row : t.rows)
        io::append_csv_row(out, row);
    return out;
}

/// Left-aligned columns separated by two spaces, with a rule under the header.
inline std::string to_plain_table(const Table &t)
{
    std::vector<std::size_t> width(t.header.size(), 0);
    auto widen = [&](const std::vector<std::string> &row) {
        for (std::size_t i = 0; i < row.size() && i < width.size(); ++i)
            width[i] = std::max(width[i], row[i].size());
    };
    widen(t.header);
    for (const auto &row : t.rows)
        widen(row);
    std::string out;
    auto line = [&](const std::vector<std::string> &row) {
        std::string s;
        for (std::size_t i = 0; i < row.size(); ++i) {
            s += row[i];
            if (i + 1 < row.size())
                s += std::string(width[i] - row[i].size() + 2, ' ');
        }
        out += s + "\n";
    };
    line(t.header);
    std::vector<std::string> rule;
    for (std::size_t w : width)
        rule.push_back(std::string(w, '-'));
    line(rule);
    for (const auto &row : t.rows)
        line(row);
    return out;
}

/// Canonical JSON text: two-space indent, sorted keys, UTF-8, trailing newline.
inline std::string to_canonical_json(const ReportEnvelope &e) { return Json(e).dump(2, ' ', false) + "\n"; }

inline ReportEnvelope envelope_from_json(std::string_view text) { return Json::parse(text).get<ReportEnvelope>(); }

inline std::string serialize(const ReportEnvelope &e, OutputFormat format)
{
    switch (format) {
    case OutputFormat::Json: return to_canonical_json(e);
    case OutputFormat::Csv: return to_csv(payload_table(e.payload));
    case OutputFormat::Table: return to_plain_table(payload_table(e.payload));
    }
    return {};
}

} // namespace hdrflow
