#include "horadam/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include "horadam/combinatorics.hpp"
#include "horadam/identities.hpp"
#include "horadam/lemmas.hpp"

namespace horadam {

namespace {

using Json = nlohmann::ordered_json;

struct UsageError : Error {
    using Error::Error;
};

IndexRange parse_range(const std::string& text, const char* flag) {
    auto parse_index = [&](const std::string& s) {
        std::size_t used = 0;
        Index v = 0;
        try {
            v = std::stoll(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != s.size()) {
            throw UsageError(std::string(flag) + ": expected an integer or start..end, got '" + text + "'");
        }
        return v;
    };
    const auto dots = text.find("..");
    if (dots == std::string::npos) return IndexRange::single(parse_index(text));
    return {parse_index(text.substr(0, dots)), parse_index(text.substr(dots + 2))};
}

Rational parse_rational(const std::string& text, const char* flag) {
    try {
        return Rational::parse(text);
    } catch (const ParseError& e) {
        throw UsageError(std::string(flag) + ": " + e.what());
    }
}

std::string outcome_name(Outcome o) { return std::string(to_string(o)); }

std::string optional_value(const std::optional<Rational>& v) { return v ? v->to_string() : ""; }

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
    }
    return q + "\"";
}

// Shared flags. Values stay as text until the subcommand knows what it needs.
struct Options {
    std::string identity;
    std::optional<std::string> p, q, a, b;
    std::vector<std::string> families;
    std::string n, an, an_offset, c, r, s, d;
    std::string format = "human";
    std::string out_path;
    std::int64_t naive_cap = static_cast<std::int64_t>(kDefaultNaiveCap);
    std::uint64_t seed = 0;
    std::optional<std::size_t> samples;
    unsigned jobs = 1;
    bool no_timing = false;
};

IdentityId resolve_identity(const std::string& name, IdentityId fallback) {
    if (name.empty()) return fallback;
    if (auto id = parse_identity(name)) return *id;
    throw UsageError("unknown identity '" + name + "'");
}

bool has_param_overrides(const Options& o) { return o.p || o.q || o.a || o.b; }

HoradamParams resolve_params(const Options& o, const HoradamParams& base) {
    Rational a = o.a ? parse_rational(*o.a, "--a") : base.a();
    Rational b = o.b ? parse_rational(*o.b, "--b") : base.b();
    Rational p = o.p ? parse_rational(*o.p, "--p") : base.p();
    Rational q = o.q ? parse_rational(*o.q, "--q") : base.q();
    try {
        return HoradamParams(a, b, p, q);
    } catch (const PreconditionViolation& e) {
        throw UsageError(e.what());
    }
}

ParameterFamily named_family(const std::string& name) {
    if (auto f = find_family(name)) return *f;
    throw UsageError("unknown family '" + name + "'");
}

// A single instance: --family picks the seeds, explicit --p/--q/--a/--b override them.
HoradamParams single_params(const Options& o, IdentityId id) {
    if (o.families.size() > 1) throw UsageError("--family may be given once here");
    HoradamParams base = o.families.empty() ? default_params(id) : named_family(o.families.front()).params;
    return resolve_params(o, base);
}

Index single_value(const std::string& text, const char* flag, Index fallback) {
    if (text.empty()) return fallback;
    IndexRange range = parse_range(text, flag);
    if (range.first != range.last) throw UsageError(std::string(flag) + " takes a single value here");
    return range.first;
}

void check_format(const std::string& format) {
    if (format != "human" && format != "json" && format != "csv") {
        throw UsageError("--format must be human, json or csv");
    }
}

Json report_json(const EvaluationReport& rep) {
    const InstanceRequest& i = rep.instance;
    Json j;
    j["identity"] = std::string(to_string(i.id));
    j["params"] = i.params.key();
    j["n"] = i.n;
    j["a_n"] = i.a_n;
    j["c"] = i.c;
    j["r"] = i.r;
    j["s"] = i.s;
    j["d"] = i.d;
    j["lhs"] = rep.lhs ? Json(rep.lhs->to_string()) : Json(nullptr);
    j["rhs"] = rep.rhs ? Json(rep.rhs->to_string()) : Json(nullptr);
    j["equal"] = rep.equal;
    j["class"] = outcome_name(rep.outcome);
    return j;
}

constexpr const char* kSweepCsvHeader = "identity,params,n,a_n,c,r,s,d,lhs,rhs,equal,class";

std::string report_csv(const EvaluationReport& rep) {
    const InstanceRequest& i = rep.instance;
    std::ostringstream row;
    row << to_string(i.id) << ',' << csv_field(i.params.key()) << ',' << i.n << ',' << i.a_n << ',' << i.c << ','
        << i.r << ',' << i.s << ',' << i.d << ',' << optional_value(rep.lhs) << ',' << optional_value(rep.rhs) << ','
        << (rep.equal ? "true" : "false") << ',' << outcome_name(rep.outcome);
    return row.str();
}

std::string describe_instance(const InstanceRequest& i) {
    std::ostringstream s;
    s << "n=" << i.n << " a_n=" << i.a_n << " c=" << i.c;
    const IdentityTraits& t = traits(i.id);
    if (t.uses_r) s << " r=" << i.r;
    if (t.uses_s) s << " s=" << i.s;
    if (t.uses_d) s << " d=" << i.d;
    return s.str();
}

Json summary_json(const SweepSummary& s) {
    Json inner;
    inner["total"] = s.total;
    inner["verified"] = s.verified;
    inner["mismatch"] = s.mismatches;
    inner["outside_domain_equal"] = s.outside_equal;
    inner["outside_domain_mismatch"] = s.outside_mismatch;
    inner["skipped"] = s.skipped;
    Json j;
    j["summary"] = inner;
    return j;
}

std::string summary_line(const SweepSummary& s) {
    std::ostringstream line;
    line << "total=" << s.total << " verified=" << s.verified << " mismatch=" << s.mismatches
         << " outside-domain-equal=" << s.outside_equal << " outside-domain-mismatch=" << s.outside_mismatch
         << " skipped=" << s.skipped;
    return line.str();
}

int cmd_verify(const Options& o, std::ostream& out) {
    const IdentityId id = resolve_identity(o.identity, IdentityId::F3);
    InstanceRequest req;
    req.id = id;
    req.params = single_params(o, id);
    req.n = single_value(o.n, "--n", 1);
    req.a_n = single_value(o.an, "--an", 1);
    req.c = single_value(o.c, "--c", 1);
    req.r = single_value(o.r, "--r", 1);
    req.s = single_value(o.s, "--s", 0);
    req.d = single_value(o.d, "--d", 0);

    const EvaluationReport rep = verify(req);
    if (o.format == "json") {
        out << report_json(rep).dump() << '\n';
    } else if (o.format == "csv") {
        out << kSweepCsvHeader << '\n' << report_csv(rep) << '\n';
    } else {
        out << "identity: " << to_string(rep.instance.id) << '\n';
        out << "params: " << rep.instance.params.key() << '\n';
        out << "instance: " << describe_instance(rep.instance) << '\n';
        if (rep.outcome == Outcome::Skipped) {
            out << "skipped: " << rep.message << '\n';
        } else {
            out << "lhs: " << optional_value(rep.lhs) << '\n';
            out << "rhs: " << optional_value(rep.rhs) << '\n';
            if (rep.equal) {
                out << "equal: true, value " << rep.lhs->to_string() << '\n';
            } else {
                out << "equal: false" << '\n';
            }
            if (!rep.message.empty()) out << "note: " << rep.message << '\n';
        }
        out << "class: " << outcome_name(rep.outcome) << '\n';
    }
    return rep.outcome == Outcome::Mismatch ? kExitMismatch : kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
    const IdentityId id = resolve_identity(o.identity, IdentityId::F3);
    SweepGrid grid;
    for (const auto& name : o.families) grid.families.push_back(named_family(name));
    if (has_param_overrides(o)) grid.families.push_back({"custom", resolve_params(o, default_params(id))});
    if (grid.families.empty()) grid.families = compatible_families(id);
    if (!o.n.empty()) grid.n = parse_range(o.n, "--n");
    if (!o.c.empty()) grid.c = parse_range(o.c, "--c");
    if (!o.an.empty()) grid.a_absolute = parse_range(o.an, "--an");
    if (!o.an_offset.empty()) grid.a_offset = parse_range(o.an_offset, "--an-offset");
    if (!o.r.empty()) grid.r = parse_range(o.r, "--r");
    if (!o.s.empty()) grid.s = parse_range(o.s, "--s");
    if (!o.d.empty()) grid.d = parse_range(o.d, "--d");
    grid.samples = o.samples;
    grid.seed = o.seed;

    const auto reports = sweep(id, grid, o.jobs);
    const SweepSummary summary = summarize(reports);
    if (o.format == "json") {
        for (const auto& rep : reports) out << report_json(rep).dump() << '\n';
        out << summary_json(summary).dump() << '\n';
    } else if (o.format == "csv") {
        out << kSweepCsvHeader << '\n';
        for (const auto& rep : reports) out << report_csv(rep) << '\n';
        out << "# " << summary_line(summary) << '\n';
    } else {
        for (const auto& rep : reports) {
            if (rep.outcome != Outcome::Mismatch && rep.outcome != Outcome::OutsideDomainMismatch) continue;
            out << outcome_name(rep.outcome) << ": " << rep.instance.params.key() << ' '
                << describe_instance(rep.instance) << " lhs=" << optional_value(rep.lhs)
                << " rhs=" << optional_value(rep.rhs) << '\n';
        }
        out << to_string(id) << ": " << summary_line(summary) << '\n';
    }
    return summary.ok() ? kExitOk : kExitMismatch;
}

// The closed forms Ivie gave for the Fibonacci double and triple sums with
// lower limit 1.
std::optional<Rational> ivie_value(Index n, Index m) {
    Sequence fib(HoradamParams::fibonacci());
    if (n == 2) return fib(m + 4) - fib(4) - Rational(m);
    if (n == 3) return fib(m + 6) - fib(6) - Rational(m) * fib(4) - Rational(m * (m + 1) / 2);
    return std::nullopt;
}

int cmd_table(const Options& o, std::ostream& out) {
    const IdentityId id = resolve_identity(o.identity, IdentityId::H);
    InstanceRequest base;
    base.id = id;
    base.params = single_params(o, id);
    base.n = single_value(o.n, "--n", 2);
    base.c = single_value(o.c, "--c", 1);
    base.r = single_value(o.r, "--r", 1);
    base.s = single_value(o.s, "--s", 0);
    base.d = single_value(o.d, "--d", 0);
    base = normalize(base);
    const IndexRange range = o.an.empty() ? IndexRange{1, 10} : parse_range(o.an, "--an");

    const bool ivie = base.params == HoradamParams::fibonacci() && base.c == 1 && (base.n == 2 || base.n == 3) &&
                      (id == IdentityId::H || id == IdentityId::F3 || id == IdentityId::F3_w) &&
                      base.r == 1 && base.s == 0;

    struct Row {
        Index a_n;
        EvaluationReport rep;
        std::optional<Rational> ivie;
    };
    std::vector<Row> rows;
    bool mismatch = false;
    for (Index a = range.first; a <= range.last; ++a) {
        InstanceRequest req = base;
        req.a_n = a;
        Row row{a, verify(req), ivie ? ivie_value(base.n, a) : std::nullopt};
        mismatch = mismatch || row.rep.outcome == Outcome::Mismatch;
        rows.push_back(std::move(row));
    }

    if (o.format == "json") {
        for (const auto& row : rows) {
            Json j;
            j["a_n"] = row.a_n;
            j["lhs"] = row.rep.lhs ? Json(row.rep.lhs->to_string()) : Json(nullptr);
            j["rhs"] = row.rep.rhs ? Json(row.rep.rhs->to_string()) : Json(nullptr);
            if (ivie) j["ivie"] = row.ivie->to_string();
            j["class"] = outcome_name(row.rep.outcome);
            out << j.dump() << '\n';
        }
    } else if (o.format == "csv") {
        out << "a_n,lhs,rhs" << (ivie ? ",ivie" : "") << '\n';
        for (const auto& row : rows) {
            out << row.a_n << ',' << optional_value(row.rep.lhs) << ',' << optional_value(row.rep.rhs);
            if (ivie) out << ',' << row.ivie->to_string();
            out << '\n';
        }
    } else {
        out << "# " << to_string(id) << ' ' << base.params.key() << ' ' << describe_instance(base) << '\n';
        out << std::setw(8) << "a_n" << std::setw(16) << "lhs" << std::setw(16) << "rhs";
        if (ivie) out << std::setw(16) << "ivie";
        out << '\n';
        for (const auto& row : rows) {
            out << std::setw(8) << row.a_n;
            if (row.rep.outcome == Outcome::Skipped) {
                out << "  skipped: " << row.rep.message << '\n';
                continue;
            }
            out << std::setw(16) << optional_value(row.rep.lhs) << std::setw(16) << optional_value(row.rep.rhs);
            if (ivie) out << std::setw(16) << row.ivie->to_string();
            out << '\n';
        }
    }
    return mismatch ? kExitMismatch : kExitOk;
}

struct BenchRow {
    std::string instance_id;
    std::string method;
    Index n;
    Index range;
    std::uint64_t summand_evals;
    std::int64_t wall_ns;
};

int cmd_bench(const Options& o, std::ostream& out, std::ostream& err) {
    using Clock = std::chrono::steady_clock;
    const bool ones = o.identity == "ones";
    const IdentityId id = ones ? IdentityId::F3 : resolve_identity(o.identity, IdentityId::F3);
    const HoradamParams params = single_params(o, id);
    const IndexRange ns = o.n.empty() ? IndexRange{1, 4} : parse_range(o.n, "--n");
    const Index c = single_value(o.c, "--c", 1);
    const IndexRange as = o.an.empty() ? IndexRange{c, c + 8} : parse_range(o.an, "--an");
    const std::uint64_t cap = static_cast<std::uint64_t>(o.naive_cap);

    auto elapsed = [&](Clock::time_point t0) -> std::int64_t {
        if (o.no_timing) return 0;
        return std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - t0).count();
    };

    std::vector<BenchRow> rows;
    bool mismatch = false;
    for (Index n = ns.first; n <= ns.last; ++n) {
        for (Index a = as.first; a <= as.last; ++a) {
            std::ostringstream name;
            name << (ones ? "ones" : std::string(to_string(id))) << "-n" << n << "-a" << a << "-c" << c;
            const Index range = a - c + 1;

            std::optional<NestedSumSpec> spec;
            Rational closed;
            std::uint64_t closed_evals = 0;
            auto t0 = Clock::now();
            if (ones) {
                closed = Rational(nested_ones(n, a, c));
                closed_evals = 1;
                spec = NestedSumSpec::uniform(n, a, c, SummandSpec{});
            } else {
                InstanceRequest req;
                req.id = id;
                req.params = params;
                req.n = n;
                req.a_n = a;
                req.c = c;
                req.r = single_value(o.r, "--r", 1);
                req.s = single_value(o.s, "--s", 0);
                req.d = single_value(o.d, "--d", 0);
                try {
                    IdentityInstance inst = IdentityInstance::create(req);
                    t0 = Clock::now();
                    ClosedFormCost cost;
                    closed = rhs(inst, &cost);
                    closed_evals = cost.summand_evals();
                    spec = lhs_spec(inst);
                } catch (const Error& e) {
                    err << name.str() << ": skipped: " << e.what() << '\n';
                    continue;
                }
            }
            rows.push_back({name.str(), "closed", n, range, closed_evals, elapsed(t0)});

            t0 = Clock::now();
            auto dp = oracle_nested_counted(*spec);
            rows.push_back({name.str(), "dp", n, range, dp.summand_evals, elapsed(t0)});
            mismatch = mismatch || (in_verified_domain(a, c) && dp.value != closed);

            t0 = Clock::now();
            try {
                auto naive = oracle_nested_naive(*spec, cap);
                rows.push_back({name.str(), "naive", n, range, naive.summand_evals, elapsed(t0)});
                mismatch = mismatch || naive.value != dp.value;
            } catch (const CapExceeded&) {
                // over the enumeration cap: no naive row
            }
        }
    }

    if (o.format == "json") {
        for (const auto& r : rows) {
            Json j;
            j["instance_id"] = r.instance_id;
            j["method"] = r.method;
            j["n"] = r.n;
            j["range"] = r.range;
            j["summand_evals"] = r.summand_evals;
            j["wall_ns"] = r.wall_ns;
            out << j.dump() << '\n';
        }
    } else if (o.format == "csv") {
        out << "instance_id,method,n,range,summand_evals,wall_ns\n";
        for (const auto& r : rows) {
            out << r.instance_id << ',' << r.method << ',' << r.n << ',' << r.range << ',' << r.summand_evals << ','
                << r.wall_ns << '\n';
        }
    } else {
        out << std::left << std::setw(24) << "instance" << std::setw(8) << "method" << std::right << std::setw(6)
            << "n" << std::setw(8) << "range" << std::setw(16) << "summand_evals" << std::setw(14) << "wall_ns"
            << '\n';
        for (const auto& r : rows) {
            out << std::left << std::setw(24) << r.instance_id << std::setw(8) << r.method << std::right
                << std::setw(6) << r.n << std::setw(8) << r.range << std::setw(16) << r.summand_evals
                << std::setw(14) << r.wall_ns << '\n';
        }
    }
    return mismatch ? kExitMismatch : kExitOk;
}

int cmd_lemmas(const Options& o, std::ostream& out) {
    LemmaGrid grid;
    if (!o.families.empty() || has_param_overrides(o)) {
        grid.families.clear();
        for (const auto& name : o.families) grid.families.push_back(named_family(name));
        if (has_param_overrides(o)) {
            grid.families.push_back({"custom", resolve_params(o, HoradamParams::fibonacci())});
        }
    }
    if (!o.r.empty()) grid.r = parse_range(o.r, "--r");
    if (!o.d.empty()) grid.d = parse_range(o.d, "--d");

    const auto results = run_lemma_suites(grid);
    bool ok = true;
    for (const auto& res : results) {
        ok = ok && res.ok();
        if (o.format == "json") {
            Json j;
            j["suite"] = res.name;
            j["checks"] = res.checks;
            j["failures"] = res.failures;
            j["notes"] = res.notes;
            out << j.dump() << '\n';
        } else if (o.format == "csv") {
            if (&res == &results.front()) out << "suite,checks,failures\n";
            out << csv_field(res.name) << ',' << res.checks << ',' << res.failures << '\n';
        } else {
            out << (res.ok() ? "pass " : "FAIL ") << res.name << ": " << res.checks << " checks, " << res.failures
                << " failures\n";
            for (const auto& note : res.notes) out << "  " << note << '\n';
        }
    }
    return ok ? kExitOk : kExitMismatch;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact verification of nested-sum identities over Horadam sequences", "horadam-verify"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&o](CLI::App* sub, bool ranges) {
        sub->add_option("--identity", o.identity, "identity tag, e.g. F3, F6a, F7_r1d0_G");
        sub->add_option("--p", o.p, "recurrence coefficient p (n/d)");
        sub->add_option("--q", o.q, "recurrence coefficient q (n/d)");
        sub->add_option("--a", o.a, "seed W_0 (n/d)");
        sub->add_option("--b", o.b, "seed W_1 (n/d)");
        sub->add_option("--family", o.families, "built-in parameter family (repeatable)");
        const char* kind = ranges ? "value or start..end" : "value";
        sub->add_option("--n", o.n, std::string("nesting depth: ") + kind);
        sub->add_option("--an", o.an, std::string("outermost upper limit a_n: ") + kind);
        sub->add_option("--c", o.c, std::string("lower limit c: ") + kind);
        sub->add_option("--r", o.r, std::string("index step r: ") + kind);
        sub->add_option("--s", o.s, std::string("index shift s: ") + kind);
        sub->add_option("--d", o.d, std::string("shift d: ") + kind);
        sub->add_option("--format", o.format, "human, json (one object per line) or csv");
        sub->add_option("--out", o.out_path, "write the report to this file");
    };

    CLI::App* verify_cmd = app.add_subcommand("verify", "check one instance: oracle against closed form");
    add_common(verify_cmd, false);

    CLI::App* sweep_cmd = app.add_subcommand("sweep", "check every point of a parameter grid");
    add_common(sweep_cmd, true);
    sweep_cmd->add_option("--an-offset", o.an_offset, "a_n relative to c: start..end (default -1..5)");
    sweep_cmd->add_option("--samples", o.samples, "keep a seeded random subset of this many points");
    sweep_cmd->add_option("--seed", o.seed, "seed for --samples");
    sweep_cmd->add_option("--jobs", o.jobs, "worker threads")->check(CLI::PositiveNumber);

    CLI::App* table_cmd = app.add_subcommand("table", "tabulate oracle and closed form over a_n");
    add_common(table_cmd, false);

    CLI::App* bench_cmd = app.add_subcommand("bench", "count summand evaluations: closed form, DP, naive");
    add_common(bench_cmd, true);
    bench_cmd->add_option("--naive-cap", o.naive_cap, "largest tuple count the naive enumerator will visit");
    bench_cmd->add_option("--seed", o.seed, "accepted for symmetry; the benchmark grid is fixed");
    bench_cmd->add_flag("--no-timing", o.no_timing, "report wall_ns as 0 for reproducible output");

    CLI::App* lemmas_cmd = app.add_subcommand("lemmas", "run the auxiliary lemma residual suites");
    add_common(lemmas_cmd, true);

    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        if (app.get_subcommands().empty()) err << app.help();
        return kExitUsage;
    }

    std::unique_ptr<std::ofstream> file;
    std::ostream* sink = &out;
    try {
        check_format(o.format);
        if (o.naive_cap <= 0) throw UsageError("--naive-cap must be positive");
        if (!o.out_path.empty()) {
            file = std::make_unique<std::ofstream>(o.out_path);
            if (!*file) throw UsageError("cannot open '" + o.out_path + "' for writing");
            sink = file.get();
        }
        if (verify_cmd->parsed()) return cmd_verify(o, *sink);
        if (sweep_cmd->parsed()) return cmd_sweep(o, *sink);
        if (table_cmd->parsed()) return cmd_table(o, *sink);
        if (bench_cmd->parsed()) return cmd_bench(o, *sink, err);
        if (lemmas_cmd->parsed()) return cmd_lemmas(o, *sink);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace horadam
