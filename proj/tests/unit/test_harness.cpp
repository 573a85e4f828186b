#include "support.hpp"

#include <rejsched/core/error.hpp>
#include <rejsched/harness/cli.hpp>
#include <rejsched/harness/report.hpp>
#include <rejsched/harness/trace_file.hpp>
#include <rejsched/harness/workload.hpp>

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace rejsched;
using namespace rejsched::testing;

namespace fs = std::filesystem;

namespace {

ErrorCode parse_error(const std::string& text, std::optional<std::size_t>* line = nullptr) {
    std::istringstream in(text);
    try {
        (void)parse_trace(in);
    } catch (const Error& e) {
        if (line != nullptr) *line = e.line();
        return e.code();
    }
    FAIL("expected a parse error");
    return ErrorCode::IOFailure;
}

struct Cli {
    int code = 0;
    std::string out;
    std::string err;
};

Cli cli(std::vector<std::string> args) {
    args.insert(args.begin(), "rejsched");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Cli r;
    r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::vector<Json> records(const std::string& text) {
    std::vector<Json> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) out.push_back(Json::parse(line));
    }
    return out;
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "rejsched_unit";
    fs::create_directories(dir);
    return dir / name;
}

fs::path write(const std::string& name, const std::string& text) {
    const fs::path p = scratch(name);
    std::ofstream(p) << text;
    return p;
}

}  // namespace

TEST_CASE("trace file parses and round-trips") {
    const std::string text =
        "# two jobs\n"
        "m=2 epsilon=1/4 speedup=1/8 seed=7\n"
        "1 0 3/2 4,-\n"
        "\n"
        "2 3 1 2,5\n";
    std::istringstream in(text);
    const TraceFile f = parse_trace(in);
    CHECK(f.seed == 7);
    CHECK(f.instance.machines == 2);
    CHECK(f.instance.epsilon == Rational(1, 4));
    CHECK(f.instance.speedup == Rational(1, 8));
    REQUIRE(f.instance.jobs.size() == 2);
    CHECK(f.instance.jobs[0].weight == Rational(3, 2));
    CHECK_FALSE(f.instance.jobs[0].sizes[1]);
    CHECK(f.instance.jobs[1].sizes[1] == std::int64_t{5});

    std::istringstream again(serialize_trace(f));
    CHECK(parse_trace(again) == f);
}

TEST_CASE("trace file errors") {
    std::optional<std::size_t> line;
    CHECK(parse_error("m=1 epsilon=1/2\n1 0 3/0 1\n", &line) == ErrorCode::MalformedLine);
    CHECK(line == std::size_t{2});
    CHECK(parse_error("") == ErrorCode::MissingHeader);
    CHECK(parse_error("1 0 1 1\n") == ErrorCode::MissingHeader);
    CHECK(parse_error("m=1\n") == ErrorCode::MissingHeader);
    CHECK(parse_error("m=1 epsilon=1/2\n1 0 1\n") == ErrorCode::MalformedLine);
    CHECK(parse_error("m=1 epsilon=1/2\n1 0 1 2,\n") == ErrorCode::MalformedLine);
    CHECK(parse_error("m=1 epsilon=1/2\nx 0 1 2\n") == ErrorCode::MalformedLine);
    CHECK(parse_error("m=1 epsilon=1/2 color=red\n") == ErrorCode::MalformedLine);
    CHECK_THROWS_AS((void)parse_trace(fs::path("/nonexistent/trace.txt")), Error);

    std::istringstream empty("m=1 epsilon=1/2 speedup=0 seed=0\n");
    CHECK(parse_trace(empty).instance.jobs.empty());
}

TEST_CASE("generated traces round-trip exactly") {
    for (ModelKind kind : {ModelKind::PoissonPareto, ModelKind::Uniform, ModelKind::AdversarialL, ModelKind::Fixed}) {
        for (std::uint64_t seed = 0; seed < 5; ++seed) {
            WorkloadModel m;
            m.kind = kind;
            m.seed = seed;
            m.n = 40;
            m.L = 4;
            m.machines = 1 + seed % 3;
            m.missing = 0.25;
            const Workload w = generate(m);
            const TraceFile f{w.instance, w.seed};
            std::istringstream in(serialize_trace(f));
            CHECK(parse_trace(in) == f);
            CHECK_NOTHROW((void)validate_instance(w.instance));
        }
    }
}

TEST_CASE("generator examples") {
    WorkloadModel adv;
    adv.kind = ModelKind::AdversarialL;
    adv.L = 3;
    const Workload a = generate(adv);
    REQUIRE(a.instance.jobs.size() == 4);
    CHECK(a.instance.jobs[0].sizes[0] == std::int64_t{9});
    CHECK(a.instance.jobs[3].release == 3);
    CHECK(a.time_scale == std::int64_t{9});

    WorkloadModel fixed;
    fixed.kind = ModelKind::Fixed;
    fixed.n = 0;
    CHECK(generate(fixed).instance.jobs.empty());

    WorkloadModel pp;
    pp.seed = 42;
    pp.n = 100;
    CHECK(generate(pp).instance == generate(pp).instance);
    pp.seed = 43;
    WorkloadModel pp42 = pp;
    pp42.seed = 42;
    CHECK_FALSE(generate(pp).instance == generate(pp42).instance);

    WorkloadModel bad;
    bad.arrival_rate = 0;
    CHECK_THROWS_AS((void)generate(bad), Error);
    bad = WorkloadModel{};
    bad.kind = ModelKind::AdversarialL;
    bad.L = 0;
    CHECK_THROWS_AS((void)generate(bad), Error);
    CHECK_THROWS_AS((void)parse_model_kind("zipf"), Error);
}

TEST_CASE("parse_speed") {
    CHECK(parse_speed("1+1/4") == Rational(5, 4));
    CHECK(parse_speed("5/4") == Rational(5, 4));
    CHECK(parse_speed("2") == Rational(2));
    CHECK_THROWS_AS((void)parse_speed("1+"), Error);
    CHECK_THROWS_AS((void)parse_speed("fast"), Error);
}

TEST_CASE("compare_policies examples") {
    CHECK(compare_policies(instance({})).rows.empty());

    const PolicyComparison single = compare_policies(instance({job(1, 0, 2, 3)}));
    REQUIRE(single.rows.size() == 3);
    CHECK(single.rows[0].flow == single.rows[1].flow);
    CHECK(single.rows[0].ratio == single.rows[1].ratio);

    std::vector<Rational> greedy;
    std::vector<Rational> b;
    for (std::int64_t L : {4, 8, 12}) {
        WorkloadModel m;
        m.kind = ModelKind::AdversarialL;
        m.L = L;
        const PolicyComparison c = compare_policies(validate_instance(generate(m).instance));
        b.push_back(*c.rows[0].ratio);
        greedy.push_back(*c.rows[1].ratio);
    }
    CHECK(greedy[0] < greedy[1]);
    CHECK(greedy[1] < greedy[2]);
    CHECK(b[2] < greedy[2]);
}

TEST_CASE("cli verify on a single job") {
    const fs::path p = write("single.trace", "m=1 epsilon=1/2 speedup=0 seed=0\n1 0 1 2\n");
    const Cli r = cli({"verify", "--trace", p.string()});
    CHECK(r.code == 0);
    const auto recs = records(r.out);
    REQUIRE_FALSE(recs.empty());
    CHECK(recs[0]["type"] == "certificate");
    CHECK(recs[0]["objective"] == "-1/2");
    CHECK(recs[0]["feasible"] == true);
}

TEST_CASE("cli usage and validation errors exit with 2") {
    const fs::path p = write("single2.trace", "m=1 epsilon=1/2 speedup=0 seed=0\n1 0 1 2\n");
    const Cli eps = cli({"simulate", "--trace", p.string(), "--epsilon", "2/5"});
    CHECK(eps.code == 2);
    CHECK(eps.err.find("NonIntegralEpsilonReciprocal") != std::string::npos);
    CHECK(cli({}).code == 2);
    CHECK(cli({"simulate"}).code == 2);
    CHECK(cli({"simulate", "--trace", "/nonexistent/x.trace"}).code == 2);
    CHECK(cli({"frobnicate"}).code == 2);
    const fs::path bad = write("bad.trace", "m=1 epsilon=1/2\n1 0 3/0 1\n");
    const Cli mal = cli({"audit", "--trace", bad.string()});
    CHECK(mal.code == 2);
    CHECK(mal.err.find("MalformedLine (line 2)") != std::string::npos);
    CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("cli audit on the worked run") {
    const fs::path p = write("worked.trace", "m=1 epsilon=1/2 speedup=0 seed=0\n1 0 1 4\n2 1 3/2 1\n3 1 3/2 1\n");
    const Cli r = cli({"audit", "--trace", p.string()});
    CHECK(r.code == 0);
    const auto recs = records(r.out);
    REQUIRE(recs.size() == 2);
    CHECK(recs[0]["delayed_fraction"] == "1/4");
}

TEST_CASE("cli epsilon priority: flag, then environment, then header") {
    const fs::path p = write("prio.trace", "m=1 epsilon=1/2 speedup=0 seed=0\n1 0 1 2\n");
    auto eps_of = [](const Cli& r) { return records(r.out).back()["epsilon"].get<std::string>(); };
    ::unsetenv("REJSCHED_EPSILON");
    CHECK(eps_of(cli({"simulate", "--summary-only", "--trace", p.string()})) == "1/2");
    ::setenv("REJSCHED_EPSILON", "1/4", 1);
    CHECK(eps_of(cli({"simulate", "--summary-only", "--trace", p.string()})) == "1/4");
    CHECK(eps_of(cli({"simulate", "--summary-only", "--trace", p.string(), "--epsilon", "1/10"})) == "1/10");
    ::unsetenv("REJSCHED_EPSILON");
}

TEST_CASE("cli gen, simulate, baseline and report") {
    const fs::path trace = scratch("gen.trace");
    const Cli g = cli({"gen", "--model", "poisson_pareto", "--n", "10", "--seed", "5", "--out", trace.string()});
    REQUIRE(g.code == 0);
    const Cli g2 = cli({"gen", "--model", "poisson_pareto", "--n", "10", "--seed", "5", "--out", scratch("gen2.trace").string()});
    std::ifstream a(trace), b(scratch("gen2.trace"));
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());

    const fs::path sim = scratch("sim.jsonl");
    const fs::path base = scratch("base.jsonl");
    REQUIRE(cli({"simulate", "--trace", trace.string(), "--out", sim.string()}).code == 0);
    REQUIRE(cli({"baseline", "--trace", trace.string(), "--speed", "1+1/4", "--out", base.string()}).code == 0);
    const Cli again = cli({"simulate", "--trace", trace.string()});
    std::ifstream s(sim);
    std::stringstream ss;
    ss << s.rdbuf();
    CHECK(again.out == ss.str());

    const Cli rep = cli({"report", sim.string(), base.string()});
    REQUIRE(rep.code == 0);
    const auto recs = records(rep.out);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0]["type"] == "report");
    CHECK(recs[0]["ratio"].is_string());
    CHECK(recs[0]["speed"] == "5/4");

    CHECK(cli({"gen", "--model", "adversarial_L", "-L", "0", "--out", scratch("x.trace").string()}).code == 2);
    CHECK(cli({"baseline", "--trace", trace.string(), "--horizon", "1"}).code == 2);
}

TEST_CASE("cli baseline skips jobs missing on the chosen machine") {
    const fs::path p = write("two_machines.trace", "m=2 epsilon=1/2 speedup=0 seed=0\n1 0 1 2,-\n2 0 1 -,3\n");
    const Cli r = cli({"baseline", "--trace", p.string(), "--machine", "1"});
    REQUIRE(r.code == 0);
    const auto recs = records(r.out);
    CHECK(recs.back()["transport_opt"] == "5/2");
}
