#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "regabs/cli/run.hpp"

using namespace regabs::cli;

static RunConfig base(const std::string& sub) {
    RunConfig cfg;
    cfg.subcommand = sub;
    cfg.solver_path = std::string(REGABS_BUILD_BIN_DIR) + "/regabs-smt";
    cfg.format = "json";
    return cfg;
}

static std::string corpus(const std::string& name) {
    return std::string(REGABS_CORPUS_DIR) + "/" + name;
}

TEST_CASE("verify: the no-privileged state formula has an empty abstraction") {
    RunConfig cfg = base("verify");
    cfg.system_path = corpus("dijkstra.rspec");
    cfg.predicates_path = corpus("dijkstra_s2.rpred");
    cfg.properties_path = corpus("dijkstra.rprop");
    cfg.property = "NoPrivileged";
    RunResult r = run(cfg);
    CHECK(r.exit_code == 0);
    CHECK(r.report.find("abstraction empty") != std::string::npos);
    CHECK(validate_report_json(r.report).empty());
}

TEST_CASE("verify: Dijkstra P4 at fixed extents exits 0") {
    RunConfig cfg = base("verify");
    cfg.system_path = corpus("dijkstra.rspec");
    cfg.predicates_path = corpus("dijkstra_p4.rpred");
    cfg.properties_path = corpus("dijkstra.rprop");
    cfg.property = "P4";
    cfg.extents = {2, 3};
    RunResult r = run(cfg);
    CHECK(r.exit_code == 0);
    CHECK(validate_report_json(r.report).empty());
    CHECK(r.report.find("Proved") != std::string::npos);
}

TEST_CASE("missing input files exit with the usage code") {
    RunConfig cfg = base("verify");
    cfg.system_path = corpus("dijkstra.rspec");
    cfg.predicates_path = corpus("does_not_exist.rpred");
    cfg.properties_path = corpus("dijkstra.rprop");
    cfg.property = "P4";
    CHECK(run(cfg).exit_code == 3);

    RunConfig cfg2 = base("verify");
    cfg2.system_path = corpus("dijkstra.rspec");
    cfg2.properties_path = corpus("dijkstra.rprop");
    cfg2.property = "NoSuchProperty";
    CHECK(run(cfg2).exit_code == 3);
}

TEST_CASE("simulate reports reachable state counts") {
    RunConfig cfg = base("simulate");
    cfg.system_path = corpus("dijkstra.rspec");
    cfg.params = {{"n", 2}, {"k", 2}};
    cfg.data_hi = 1;
    RunResult r = run(cfg);
    CHECK(r.exit_code == 0);
    CHECK(r.report.find("\"reachable_states\": 8") != std::string::npos);
}

TEST_CASE("corpus subcommand validates every bundled case study") {
    RunConfig cfg = base("corpus");
    cfg.corpus_dir = REGABS_CORPUS_DIR;
    RunResult r = run(cfg);
    CHECK(r.exit_code == 0);
    CHECK(r.report.find("chang_roberts.rspec") != std::string::npos);
    CHECK(r.report.find("error") == std::string::npos);
}

TEST_CASE("reports are byte-identical modulo the timing fields") {
    RunConfig cfg = base("verify");
    cfg.system_path = corpus("dijkstra.rspec");
    cfg.predicates_path = corpus("dijkstra_s2.rpred");
    cfg.properties_path = corpus("dijkstra.rprop");
    cfg.property = "NoPrivileged";
    auto strip_timings = [](std::string s) {
        size_t pos = s.find("\"timings\"");
        if (pos == std::string::npos) return s;
        size_t end = s.find('}', pos);
        s.erase(pos, end - pos + 1);
        return s;
    };
    RunResult a = run(cfg);
    RunResult b = run(cfg);
    CHECK(strip_timings(a.report) == strip_timings(b.report));
}

TEST_CASE("explain dumps the clause ledger with the worked-example clauses") {
    RunConfig cfg = base("explain");
    cfg.system_path = corpus("dijkstra.rspec");
    cfg.predicates_path = corpus("dijkstra_s2.rpred");
    RunResult r = run(cfg);
    CHECK(r.exit_code == 0);
    // the singleton clause of the worked example shows up in the ledger
    CHECK(r.report.find("{a[n] = a[n]}") != std::string::npos);
    CHECK(r.report.find("template_clauses") != std::string::npos);

    // an empty predicate set gives an empty ledger
    RunConfig cfg2 = base("explain");
    cfg2.system_path = corpus("selection_sort.rspec");
    RunResult r2 = run(cfg2);
    CHECK(r2.exit_code == 0);
    CHECK(r2.report.find("\"clauses\": []") != std::string::npos);
}
