#include <rejsched/core/error.hpp>
#include <rejsched/harness/cli.hpp>
#include <rejsched/harness/report.hpp>
#include <rejsched/harness/trace_file.hpp>
#include <rejsched/harness/workload.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>

namespace rejsched {

Rational parse_speed(std::string_view text) {
    Rational sum;
    std::size_t start = 0;
    try {
        while (true) {
            const std::size_t plus = text.find('+', start);
            sum += Rational::parse(text.substr(start, plus == std::string_view::npos ? plus : plus - start));
            if (plus == std::string_view::npos) {
                return sum;
            }
            start = plus + 1;
        }
    } catch (const std::invalid_argument&) {
        throw Error(ErrorCode::BadParameters, "bad rational expression '" + std::string(text) + "'");
    }
}

namespace {

std::optional<std::string> env(const char* name) {
    const char* v = std::getenv(name);
    if (v == nullptr || *v == '\0') {
        return std::nullopt;
    }
    return std::string(v);
}

Time parse_horizon(const std::string& text) {
    try {
        std::size_t used = 0;
        const long long h = std::stoll(text, &used);
        if (used == text.size() && h > 0) {
            return h;
        }
    } catch (const std::exception&) {
    }
    throw Error(ErrorCode::BadParameters, "bad horizon '" + text + "'");
}

struct Options {
    std::string trace;
    std::string out;
    std::string epsilon;
    std::size_t machines = 0;
    bool summary_only = false;
    std::string speed = "1";
    std::string speedup;
    std::string horizon;
    std::size_t machine = 0;
    std::size_t max_jobs = OracleLimits{}.max_jobs;
    std::int64_t max_cells = OracleLimits{}.max_cells;

    std::string model = "poisson_pareto";
    WorkloadModel workload;
    std::string gen_epsilon = "1/2";
    std::vector<std::string> inputs;
};

class Emitter {
public:
    Emitter(const std::string& path, std::ostream& fallback) : out_(&fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) {
                throw Error(ErrorCode::IOFailure, "cannot write " + path);
            }
            out_ = file_.get();
        }
    }

    void operator()(const Json& record) { *out_ << record.dump() << '\n'; }

    void close() {
        out_->flush();
        if (!*out_) {
            throw Error(ErrorCode::IOFailure, "write failed");
        }
    }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* out_;
};

// Flag, then REJSCHED_EPSILON, then the header.
Instance load_instance(const Options& o) {
    TraceFile file = parse_trace(std::filesystem::path(o.trace));
    std::optional<std::string> eps = o.epsilon.empty() ? env("REJSCHED_EPSILON") : o.epsilon;
    if (eps) {
        try {
            file.instance.epsilon = Rational::parse(*eps);
        } catch (const std::invalid_argument&) {
            throw Error(ErrorCode::BadParameters, "bad epsilon '" + *eps + "'");
        }
    }
    if (o.machines > 0) {
        file.instance.machines = o.machines;
    }
    if (!o.speedup.empty()) {
        file.instance.speedup = parse_speed(o.speedup);
    }
    return validate_instance(std::move(file.instance));
}

std::vector<ScheduleTrace> simulate_all(const Instance& inst, std::vector<DispatchDecision>* log) {
    if (inst.machines == 1) {
        return {run(inst, 0)};
    }
    MultiRun multi = run_multi(inst);
    if (log != nullptr) {
        *log = std::move(multi.log);
    }
    return std::move(multi.traces);
}

OracleLimits limits(const Options& o) { return OracleLimits{o.max_jobs, o.max_cells}; }

int cmd_simulate(const Options& o, std::ostream& out) {
    const Instance inst = load_instance(o);
    std::vector<DispatchDecision> log;
    const std::vector<ScheduleTrace> traces = simulate_all(inst, &log);
    Emitter emit(o.out, out);
    bool ok = true;
    Rational flow_b;
    Rational departure;
    Rational delayed;
    Rational immediate;
    Rational total;
    for (const ScheduleTrace& t : traces) {
        const Metrics m = compute_metrics(t);
        const StructuralReport s = check_structure(t);
        ok = ok && s.ok();
        if (!o.summary_only) {
            emit(to_json(t));
        }
        Json mj = to_json(m);
        mj["machine"] = t.machine;
        emit(mj);
        Json sj = to_json(s);
        sj["machine"] = t.machine;
        emit(sj);
        flow_b += m.weighted_flow_B;
        departure += m.departure_objective;
        delayed += m.rejected_weight_delayed;
        immediate += m.rejected_weight_immediate;
        total += m.total_weight;
    }
    if (!log.empty() && !o.summary_only) {
        Json dj = Json::array();
        for (const DispatchDecision& d : log) {
            dj.push_back(to_json(d));
        }
        emit(Json{{"type", "dispatch"}, {"decisions", std::move(dj)}});
    }
    auto frac = [&](const Rational& x) { return to_json(total.sign() == 0 ? Rational(0) : x / total); };
    emit(Json{{"type", "summary"},
              {"source", o.trace},
              {"machines", inst.machines},
              {"epsilon", to_json(inst.epsilon)},
              {"jobs", inst.jobs.size()},
              {"weighted_flow_B", to_json(flow_b)},
              {"departure_objective", to_json(departure)},
              {"total_weight", to_json(total)},
              {"delayed_fraction", frac(delayed)},
              {"immediate_fraction", frac(immediate)},
              {"rejected_fraction", frac(delayed + immediate)},
              {"structure_ok", ok}});
    emit.close();
    return ok ? kExitOk : kExitViolation;
}

int cmd_baseline(const Options& o, std::ostream& out) {
    const Instance inst = load_instance(o);
    if (o.machine >= inst.machines) {
        throw Error(ErrorCode::BadParameters, "machine index out of range");
    }
    const Rational speed = parse_speed(o.speed);
    if (speed < Rational(1)) {
        throw Error(ErrorCode::BadParameters, "speed must be >= 1");
    }
    std::optional<Time> horizon;
    if (const auto h = o.horizon.empty() ? env("REJSCHED_HORIZON") : o.horizon) {
        horizon = parse_horizon(*h);
    }
    std::vector<JobId> runnable;
    for (const Job& j : inst.jobs) {
        if (j.runnable_on(o.machine)) runnable.push_back(j.id);
    }
    const std::vector<OfflineJob> jobs = offline_jobs(inst, o.machine, runnable);
    Json rec{{"type", "baseline"},
             {"source", o.trace},
             {"machine", o.machine},
             {"speed", to_json(speed)},
             {"hdf_cost", to_json(lp_cost(preemptive_hdf(jobs, speed)))}};
    if (oracle_fits(jobs, speed, limits(o))) {
        rec["transport_opt"] = to_json(transport_opt(jobs, speed, horizon));
    } else {
        rec["transport_opt"] = nullptr;
        rec["transport_skipped"] = "TooLargeForOracle";
    }
    Emitter emit(o.out, out);
    emit(rec);
    emit.close();
    return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
    const Instance inst = load_instance(o);
    const std::vector<ScheduleTrace> traces = simulate_all(inst, nullptr);
    Emitter emit(o.out, out);
    bool feasible = true;
    for (const ScheduleTrace& t : traces) {
        const DualCertificate cert = verify_duals(t, inst.speedup);
        feasible = feasible && cert.feasible;
        Json cj = to_json(cert);
        cj["machine"] = t.machine;
        emit(cj);
        const std::vector<OfflineJob> jobs = offline_jobs(t);
        if (oracle_fits(jobs, Rational(1) + inst.speedup, limits(o))) {
            Json lj = to_json(lower_bound_check(t, limits(o), inst.speedup));
            lj["machine"] = t.machine;
            emit(lj);
        }
    }
    emit.close();
    return feasible ? kExitOk : kExitViolation;
}

int cmd_audit(const Options& o, std::ostream& out) {
    const Instance inst = load_instance(o);
    const std::vector<ScheduleTrace> traces = simulate_all(inst, nullptr);
    Emitter emit(o.out, out);
    std::vector<BudgetReport> reports;
    bool ok = true;
    for (const ScheduleTrace& t : traces) {
        reports.push_back(audit_rejections(t));
        ok = ok && reports.back().exact_budgets_hold();
        Json j = to_json(reports.back());
        j["machine"] = t.machine;
        emit(j);
    }
    Json all = to_json(combine(reports));
    all["type"] = "budget_total";
    emit(all);
    emit.close();
    return ok ? kExitOk : kExitViolation;
}

int cmd_gen(Options o, std::ostream& out) {
    o.workload.kind = parse_model_kind(o.model);
    try {
        o.workload.epsilon = Rational::parse(o.gen_epsilon);
    } catch (const std::invalid_argument&) {
        throw Error(ErrorCode::BadParameters, "bad epsilon '" + o.gen_epsilon + "'");
    }
    if (o.horizon.empty()) {
        if (const auto h = env("REJSCHED_HORIZON")) {
            o.workload.horizon = parse_horizon(*h);
        }
    } else {
        o.workload.horizon = parse_horizon(o.horizon);
    }
    const Workload w = generate(o.workload);
    serialize_trace(TraceFile{w.instance, w.seed}, std::filesystem::path(o.out));
    Json rec{{"type", "workload"},
             {"model", std::string(to_string(o.workload.kind))},
             {"seed", w.seed},
             {"jobs", w.instance.jobs.size()},
             {"path", o.out}};
    rec["time_scale"] = w.time_scale ? Json(*w.time_scale) : Json(nullptr);
    out << rec.dump() << '\n';
    return kExitOk;
}

Rational field(const Json& rec, const char* key) {
    if (!rec.contains(key) || !rec[key].is_string()) {
        throw Error(ErrorCode::MalformedLine, std::string("record lacks '") + key + "'");
    }
    try {
        return Rational::parse(rec[key].get<std::string>());
    } catch (const std::invalid_argument& e) {
        throw Error(ErrorCode::MalformedLine, e.what());
    }
}

int cmd_report(const Options& o, std::ostream& out) {
    std::map<std::string, Json> summaries;
    std::map<std::string, Json> baselines;
    for (const std::string& path : o.inputs) {
        std::ifstream in(path);
        if (!in) {
            throw Error(ErrorCode::IOFailure, "cannot open " + path);
        }
        std::string line;
        std::size_t number = 0;
        while (std::getline(in, line)) {
            ++number;
            if (line.empty()) {
                continue;
            }
            Json rec = Json::parse(line, nullptr, false);
            if (rec.is_discarded() || !rec.is_object()) {
                throw Error(ErrorCode::MalformedLine, path + ": not a JSON record", number);
            }
            const std::string type = rec.value("type", "");
            const std::string source = rec.value("source", "");
            if (type == "summary") {
                summaries[source] = std::move(rec);
            } else if (type == "baseline") {
                baselines[source] = std::move(rec);
            }
        }
    }
    Emitter emit(o.out, out);
    for (const auto& [source, s] : summaries) {
        Json rec{{"type", "report"},
                 {"source", source},
                 {"epsilon", s.value("epsilon", "")},
                 {"weighted_flow_B", s.value("weighted_flow_B", "")},
                 {"departure_objective", s.value("departure_objective", "")},
                 {"delayed_fraction", s.value("delayed_fraction", "")},
                 {"immediate_fraction", s.value("immediate_fraction", "")},
                 {"rejected_fraction", s.value("rejected_fraction", "")}};
        rec["benchmark"] = nullptr;
        rec["ratio"] = nullptr;
        const auto b = baselines.find(source);
        if (b != baselines.end()) {
            const bool transport = b->second.contains("transport_opt") && b->second["transport_opt"].is_string();
            const Rational bench = field(b->second, transport ? "transport_opt" : "hdf_cost");
            rec["benchmark"] = to_json(bench);
            rec["benchmark_method"] = transport ? "transport" : "hdf_lp";
            rec["speed"] = b->second.value("speed", "1");
            if (bench.sign() != 0) {
                const Rational ratio = field(s, "weighted_flow_B") / bench;
                rec["ratio"] = to_json(ratio);
                rec["ratio_decimal"] = ratio.to_double();
            }
        }
        emit(rec);
    }
    emit.close();
    return kExitOk;
}

void add_trace_options(CLI::App* cmd, Options& o) {
    cmd->add_option("--trace", o.trace, "Trace file")->required();
    cmd->add_option("--out", o.out, "Write records here instead of stdout");
    cmd->add_option("--epsilon", o.epsilon, "Epsilon 1/k (overrides REJSCHED_EPSILON and the header)");
    cmd->add_option("--machines", o.machines, "Override the machine count of the header");
}

void add_oracle_options(CLI::App* cmd, Options& o) {
    cmd->add_option("--max-jobs", o.max_jobs, "Largest instance handed to the transportation oracle");
    cmd->add_option("--max-cells", o.max_cells, "Largest jobs x slots product for the oracle");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Online non-preemptive weighted flow time with rejection"};
    app.require_subcommand(1);

    auto* simulate = app.add_subcommand("simulate", "Run algorithms A and B on a trace");
    add_trace_options(simulate, o);
    simulate->add_flag("--summary-only", o.summary_only, "Skip the full per-slot trace records");

    auto* baseline = app.add_subcommand("baseline", "Offline fractional benchmark");
    add_trace_options(baseline, o);
    add_oracle_options(baseline, o);
    baseline->add_option("--speed", o.speed, "Benchmark speed, e.g. 1+1/4");
    baseline->add_option("--horizon", o.horizon, "Last slot end for the LP (overrides REJSCHED_HORIZON)");
    baseline->add_option("--machine", o.machine, "Machine whose sizes are used");

    auto* verify = app.add_subcommand("verify", "Dual fitting certificate");
    add_trace_options(verify, o);
    add_oracle_options(verify, o);
    verify->add_option("--speedup", o.speedup, "Benchmark speedup eps' (default: header)");

    auto* audit = app.add_subcommand("audit", "Rejected weight budgets");
    add_trace_options(audit, o);

    auto* gen = app.add_subcommand("gen", "Generate a synthetic trace");
    gen->add_option("--model", o.model, "poisson_pareto, uniform, adversarial_L or fixed");
    gen->add_option("--out", o.out, "Trace file to write")->required();
    gen->add_option("--n", o.workload.n, "Number of jobs");
    gen->add_option("--seed", o.workload.seed, "RNG seed");
    gen->add_option("--rate", o.workload.arrival_rate, "Poisson arrival rate per slot");
    gen->add_option("--shape", o.workload.pareto_shape, "Pareto shape");
    gen->add_option("--scale", o.workload.pareto_scale, "Pareto scale");
    gen->add_option("--max-size", o.workload.max_size, "Largest job size");
    gen->add_option("--max-weight", o.workload.max_weight, "Largest weight numerator");
    gen->add_option("--horizon", o.horizon, "Release window of the uniform model");
    gen->add_option("-L,--L", o.workload.L, "Number of short jobs of adversarial_L");
    gen->add_option("--size-scale", o.workload.scale, "Extra factor on the long job of adversarial_L");
    gen->add_option("--machines", o.workload.machines, "Machine count");
    gen->add_option("--missing", o.workload.missing, "Probability that a machine cannot run a job");
    gen->add_option("--epsilon", o.gen_epsilon, "Epsilon written to the header");

    auto* report = app.add_subcommand("report", "Join simulate and baseline outputs");
    report->add_option("inputs", o.inputs, "Record files")->required();
    report->add_option("--out", o.out, "Write records here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*simulate) return cmd_simulate(o, out);
        if (*baseline) return cmd_baseline(o, out);
        if (*verify) return cmd_verify(o, out);
        if (*audit) return cmd_audit(o, out);
        if (*gen) return cmd_gen(o, out);
        if (*report) return cmd_report(o, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace rejsched
