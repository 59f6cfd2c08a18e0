#include <CLI11.hpp>

#include <iostream>

#include "regabs/cli/run.hpp"

int main(int argc, char** argv) {
    CLI::App app{"regabs: regular abstraction and model checking for array systems"};
    app.require_subcommand(1);

    regabs::cli::RunConfig cfg;
    std::vector<std::string> raw_params;

    auto add_common = [&](CLI::App* sub, bool needs_system) {
        if (needs_system)
            sub->add_option("system", cfg.system_path, "system file (.rspec)")->required();
        sub->add_option("--preds", cfg.predicates_path, "predicate file (.rpred)");
        sub->add_option("--props", cfg.properties_path, "property file (.rprop)");
        sub->add_option("--solver", cfg.solver_path,
                        "SMT solver binary (default: $REGABS_SOLVER or the bundled regabs-smt)");
        sub->add_option("--solver-timeout-ms", cfg.solver_timeout_ms, "per-query timeout");
        sub->add_option("--clause-budget", cfg.clause_budget, "cstr clause budget");
        sub->add_option("--format", cfg.format, "text | json");
        sub->add_option("--dot", cfg.dot_dir, "directory for DOT dumps");
        sub->add_option("--seed", cfg.seed, "reproducibility pin, recorded in reports");
        sub->add_option("--jobs", cfg.jobs, "parallel fixed-parameter checks");
    };

    auto* verify = app.add_subcommand("verify", "abstract and check a temporal property");
    add_common(verify, true);
    verify->add_option("--prop", cfg.property, "property name")->required();
    verify->add_option("--extents", cfg.extents, "fixed extent values to check");
    verify->add_option("--iterations", cfg.iterations,
                       "fixpoint iteration bound (0 = fixed extents only)");
    verify->add_option("--refine", cfg.refine_rounds, "clause refinement rounds");
    verify->add_flag("--progress", cfg.progress, "check the progress condition instead");

    auto* abstract_sub = app.add_subcommand("abstract", "compute the regular abstraction");
    add_common(abstract_sub, true);

    auto* sim_sub = app.add_subcommand("simulate", "explicit-state exploration at small bounds");
    add_common(sim_sub, true);
    sim_sub->add_option("--param", raw_params, "parameter value, e.g. --param n=3");
    sim_sub->add_option("--data-lo", cfg.data_lo, "data range lower bound");
    sim_sub->add_option("--data-hi", cfg.data_hi, "data range upper bound");

    auto* explain_sub =
        app.add_subcommand("explain", "dump the clause ledger and abstraction automata");
    add_common(explain_sub, true);

    auto* corpus_sub = app.add_subcommand("corpus", "parse and validate the bundled case studies");
    corpus_sub->add_option("--dir", cfg.corpus_dir, "corpus directory (default: ./corpus)");
    corpus_sub->add_option("--format", cfg.format, "text | json");

    CLI11_PARSE(app, argc, argv);

    for (const auto& kv : raw_params) {
        auto eq = kv.find('=');
        if (eq == std::string::npos) {
            std::cerr << "bad --param (expected name=value): " << kv << "\n";
            return 3;
        }
        cfg.params.emplace_back(kv.substr(0, eq), std::stoll(kv.substr(eq + 1)));
    }
    cfg.subcommand = app.get_subcommands().front()->get_name();

    regabs::cli::RunResult r = regabs::cli::run(cfg);
    std::cout << r.report;
    return r.exit_code;
}
