#include "regabs/cli/run.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>

#include <json.hpp>

#include "regabs/front/parse.hpp"
#include "regabs/rmc/refine.hpp"
#include "regabs/sim/simulator.hpp"

namespace regabs::cli {

using json = nlohmann::json;
using namespace regabs::logic;
namespace fs = std::filesystem;

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

struct Loaded {
    ArraySystem sys;
    std::vector<IndexedPredicate> preds;
    front::PropertyFile props;
};

Loaded load_inputs(const RunConfig& cfg) {
    Loaded l;
    l.sys = front::parse_system(front::read_file(cfg.system_path));
    // properties may quantify over names that predicate files later declare
    // as Skolem parameters, so they parse against the base vocabulary
    if (!cfg.properties_path.empty())
        l.props = front::parse_property_file(front::read_file(cfg.properties_path), l.sys.vocab);
    if (!cfg.predicates_path.empty()) {
        auto pf = front::parse_predicates(front::read_file(cfg.predicates_path), l.sys.vocab);
        l.sys.vocab = pf.vocab;
        l.preds = pf.predicates;
    }
    if (!cfg.properties_path.empty()) {
        for (const auto& n : l.props.vocab.order)
            if (!l.sys.vocab.has(n)) l.sys.vocab.add(n, l.props.vocab.vars.at(n));
    }
    return l;
}

json verdict_json(const rmc::Verdict& v, const engine::Abstraction* ab) {
    json j;
    j["verdict"] = rmc::to_string(v.kind);
    if (!v.reason.empty()) j["reason"] = v.reason;
    j["iterations"] = v.iterations;
    if (v.kind == rmc::Verdict::Kind::Counterexample) {
        json steps = json::array();
        for (const auto& s : v.trace.states) {
            if (ab) {
                steps.push_back(engine::to_string(*ab, s));
            } else {
                json st;
                st["ints"] = s.ints;
                st["word"] = s.word;
                steps.push_back(st);
            }
        }
        j["trace"] = steps;
        if (v.trace.is_lasso()) j["cycle_start"] = v.trace.cycle_start;
    }
    return j;
}

void dot_dump(const RunConfig& cfg, const std::string& name, const wa::TrackAutomaton& a) {
    if (cfg.dot_dir.empty()) return;
    fs::create_directories(cfg.dot_dir);
    std::ofstream out(fs::path(cfg.dot_dir) / (name + ".dot"));
    out << wa::export_dot(a);
}

int exit_for(rmc::Verdict::Kind k) {
    switch (k) {
        case rmc::Verdict::Kind::Proved: return 0;
        case rmc::Verdict::Kind::Counterexample: return 1;
        case rmc::Verdict::Kind::Unknown: return 2;
    }
    return 2;
}

std::string render(const RunConfig& cfg, const json& j) {
    if (cfg.format == "json") return j.dump(2) + "\n";
    std::string out;
    std::function<void(const json&, int)> walk = [&](const json& node, int depth) {
        std::string pad(static_cast<size_t>(depth) * 2, ' ');
        for (auto it = node.begin(); it != node.end(); ++it) {
            if (it->is_object()) {
                out += pad + it.key() + ":\n";
                walk(*it, depth + 1);
            } else if (it->is_array()) {
                out += pad + it.key() + ":";
                for (const auto& e : *it)
                    out += " " + (e.is_string() ? e.get<std::string>() : e.dump());
                out += "\n";
            } else {
                out += pad + it.key() + ": " +
                       (it->is_string() ? it->get<std::string>() : it->dump()) + "\n";
            }
        }
    };
    walk(j, 0);
    return out;
}

json base_report(const RunConfig& cfg, const Loaded& l) {
    json j;
    j["command"] = cfg.subcommand;
    j["system"] = cfg.system_path;
    if (!cfg.property.empty()) j["property"] = cfg.property;
    j["seed"] = cfg.seed;
    json preds = json::array();
    for (const auto& p : l.preds) preds.push_back(to_string(p.atom));
    j["predicates"] = preds;
    return j;
}

json solver_stats(const solver::SolverSession& s) {
    json j;
    j["queries"] = s.stats().queries;
    j["cache_hits"] = s.stats().cache_hits;
    j["sat"] = s.stats().sat;
    j["unsat"] = s.stats().unsat;
    j["unknown"] = s.stats().unknown;
    return j;
}

std::map<long long, rmc::Verdict> parallel_fixed_param(const engine::Abstraction& ab,
                                                       const rmc::SafetyInstance& inst,
                                                       const std::vector<long long>& extents,
                                                       size_t jobs) {
    if (jobs <= 1 || extents.size() <= 1) return rmc::fixed_param_check(ab, inst, extents);
    std::map<long long, rmc::Verdict> out;
    std::vector<std::future<std::pair<long long, rmc::Verdict>>> futs;
    size_t inflight = 0;
    for (long long n : extents) {
        futs.push_back(std::async(std::launch::async, [&, n] {
            auto m = rmc::fixed_param_check(ab, inst, {n});
            return std::make_pair(n, m.at(n));
        }));
        if (++inflight >= jobs) {
            for (auto& f : futs)
                if (f.valid()) {
                    auto [n2, v] = f.get();
                    out.emplace(n2, std::move(v));
                }
            futs.clear();
            inflight = 0;
        }
    }
    for (auto& f : futs)
        if (f.valid()) {
            auto [n2, v] = f.get();
            out.emplace(n2, std::move(v));
        }
    return out;
}

RunResult verify(const RunConfig& cfg) {
    Timer total;
    Loaded l = load_inputs(cfg);
    json j = base_report(cfg, l);

    if (cfg.property.empty() || !l.props.props.count(cfg.property))
        throw std::runtime_error("unknown property: " + cfg.property);
    const TemporalProperty& prop = l.props.props.at(cfg.property);

    solver::SolverSession session(cfg.solver_path, cfg.solver_timeout_ms);
    engine::CstrOptions co;
    co.muc.max_clauses = cfg.clause_budget;

    rmc::Verdict final_verdict;
    json extents_json;

    // a non-temporal property is checked for abstract satisfiability
    bool temporal = prop.ast->kind != TProp::Kind::Leaf;
    if (prop.ast->kind == TProp::Kind::Forall || prop.ast->kind == TProp::Kind::Exists) {
        TPropPtr q = prop.ast;
        temporal = false;
        std::function<void(const TPropPtr&)> scan = [&](const TPropPtr& p) {
            if (p->kind == TProp::Kind::G || p->kind == TProp::Kind::F) temporal = true;
            for (const auto& k : p->kids) scan(k);
        };
        scan(q);
    }

    if (!temporal) {
        FormulaPtr f = [&] {
            std::function<FormulaPtr(const TPropPtr&)> low = [&](const TPropPtr& p) -> FormulaPtr {
                switch (p->kind) {
                    case TProp::Kind::Leaf: return p->leaf;
                    case TProp::Kind::Not: return f_not(low(p->kids[0]));
                    case TProp::Kind::And: {
                        std::vector<FormulaPtr> ks;
                        for (const auto& k : p->kids) ks.push_back(low(k));
                        return f_and(std::move(ks));
                    }
                    case TProp::Kind::Or: {
                        std::vector<FormulaPtr> ks;
                        for (const auto& k : p->kids) ks.push_back(low(k));
                        return f_or(std::move(ks));
                    }
                    case TProp::Kind::Exists: return f_exists(p->var, low(p->kids[0]));
                    case TProp::Kind::Forall: return f_forall(p->var, low(p->kids[0]));
                    default: throw std::runtime_error("temporal operator in a state formula");
                }
            };
            return low(prop.ast);
        }();
        engine::Abstraction ab(l.sys.vocab, engine::PredicateSet(l.preds, l.sys.vocab), session);
        Timer t;
        engine::StateAbstraction sa = engine::abstract_state_formula(ab, f, co);
        bool empty = wa::is_empty(sa.automaton);
        j["abstraction"] = {{"states", sa.automaton.num_states()},
                            {"empty", empty},
                            {"complete", sa.complete}};
        j["verdict"] = empty ? "Proved" : "Unknown";
        if (empty) j["reason"] = "abstraction empty: the formula is unsatisfiable";
        else j["reason"] = "abstraction nonempty: no conclusion at this predicate set";
        dot_dump(cfg, "state_formula", sa.automaton);
        j["timings"] = {{"total_ms", total.ms()}, {"abstraction_ms", t.ms()}};
        j["solver"] = solver_stats(session);
        return {empty ? 0 : 2, render(cfg, j)};
    }

    if (cfg.refine_rounds > 0) {
        rmc::RefineOptions ro;
        ro.extents = cfg.extents;
        ro.max_rounds = cfg.refine_rounds;
        ro.base = co;
        Timer t;
        rmc::RefineResult rr = rmc::refine_loop(l.sys, prop, l.preds, session, ro);
        final_verdict = rr.verdict;
        json log = json::array();
        for (const auto& round : rr.log)
            log.push_back({{"clause_size_cap", round.clause_size_cap},
                           {"clauses", round.clauses_used},
                           {"outcome", round.outcome}});
        j["refinement_log"] = log;
        j["timings"] = {{"total_ms", total.ms()}, {"refine_ms", t.ms()}};
    } else {
        PropShape shape = decompose(prop.ast, l.sys.vocab);
        Timer tb;
        if (shape.kind == PropShape::Kind::Safety || cfg.progress) {
            rmc::BuiltSafety built =
                cfg.progress ? rmc::build_progress_instance(l.sys, prop, l.preds, session, co)
                             : rmc::build_safety_instance(l.sys, prop, l.preds, session, co);
            j["automata"] = {{"I", built.instance.I.num_states()},
                             {"T", built.instance.T.num_states()},
                             {"B", built.instance.B.num_states()}};
            dot_dump(cfg, "I", built.instance.I);
            dot_dump(cfg, "T", built.instance.T);
            dot_dump(cfg, "B", built.instance.B);
            double build_ms = tb.ms();
            Timer tc;
            auto per_n =
                parallel_fixed_param(*built.ab, built.instance, cfg.extents, cfg.jobs);
            bool all_proved = !per_n.empty();
            for (auto& [n, v] : per_n) {
                extents_json[std::to_string(n)] = verdict_json(v, built.ab.get());
                if (v.kind == rmc::Verdict::Kind::Counterexample) final_verdict = v;
                all_proved = all_proved && v.proved();
            }
            if (cfg.iterations > 0 &&
                final_verdict.kind != rmc::Verdict::Kind::Counterexample) {
                rmc::CheckStrategy st;
                st.max_iterations = cfg.iterations;
                rmc::Verdict fix = rmc::check_safety(built.instance, st);
                j["fixpoint"] = verdict_json(fix, built.ab.get());
                if (fix.kind != rmc::Verdict::Kind::Unknown) final_verdict = fix;
            }
            if (final_verdict.kind == rmc::Verdict::Kind::Unknown && all_proved) {
                final_verdict.kind = rmc::Verdict::Kind::Proved;
                final_verdict.reason = "proved at every checked extent";
            }
            j["timings"] = {{"total_ms", total.ms()},
                            {"build_ms", build_ms},
                            {"check_ms", tc.ms()}};
        } else if (shape.kind == PropShape::Kind::Liveness ||
                   shape.kind == PropShape::Kind::Recurrence) {
            rmc::BuiltLiveness built =
                rmc::build_liveness_instance(l.sys, prop, l.preds, session, co);
            j["automata"] = {{"I", built.instance.I.num_states()},
                             {"T", built.instance.T.num_states()},
                             {"F", built.instance.F.num_states()}};
            dot_dump(cfg, "I", built.instance.I);
            dot_dump(cfg, "T", built.instance.T);
            dot_dump(cfg, "F", built.instance.F);
            double build_ms = tb.ms();
            Timer tc;
            auto per_n = rmc::fixed_param_check(*built.ab, built.instance, cfg.extents);
            bool all_proved = !per_n.empty();
            for (auto& [n, v] : per_n) {
                extents_json[std::to_string(n)] = verdict_json(v, built.ab.get());
                if (v.kind == rmc::Verdict::Kind::Counterexample) final_verdict = v;
                all_proved = all_proved && v.proved();
            }
            if (cfg.iterations > 0 &&
                final_verdict.kind != rmc::Verdict::Kind::Counterexample) {
                rmc::CheckStrategy st;
                st.max_iterations = cfg.iterations;
                rmc::Verdict red = rmc::check_liveness(*built.ab, built.instance, st);
                j["reduction"] = verdict_json(red, built.ab.get());
                if (red.kind != rmc::Verdict::Kind::Unknown) final_verdict = red;
            }
            if (final_verdict.kind == rmc::Verdict::Kind::Unknown && all_proved) {
                final_verdict.kind = rmc::Verdict::Kind::Proved;
                final_verdict.reason = "proved at every checked extent";
            }
            j["timings"] = {{"total_ms", total.ms()},
                            {"build_ms", build_ms},
                            {"check_ms", tc.ms()}};
        } else {
            throw std::runtime_error("property shape not supported by verify");
        }
    }
    if (!extents_json.is_null()) j["extents"] = extents_json;
    j["verdict"] = rmc::to_string(final_verdict.kind);
    if (!final_verdict.reason.empty()) j["reason"] = final_verdict.reason;
    if (final_verdict.kind == rmc::Verdict::Kind::Counterexample)
        j["trace"] = verdict_json(final_verdict, nullptr)["trace"];
    j["solver"] = solver_stats(session);
    return {exit_for(final_verdict.kind), render(cfg, j)};
}

RunResult simulate(const RunConfig& cfg) {
    Timer total;
    Loaded l = load_inputs(cfg);
    json j = base_report(cfg, l);
    sim::Bounds b;
    for (const auto& [k, v] : cfg.params) b.params[k] = v;
    b.data_lo = cfg.data_lo;
    b.data_hi = cfg.data_hi;
    auto reach = sim::enumerate_reachable(l.sys, b);
    j["reachable_states"] = reach.size();
    size_t terminal = 0;
    for (const auto& s : reach)
        if (sim::successors(l.sys, s, b).empty()) ++terminal;
    j["terminal_states"] = terminal;
    j["timings"] = {{"total_ms", total.ms()}};
    return {0, render(cfg, j)};
}

RunResult abstract_cmd(const RunConfig& cfg) {
    Timer total;
    Loaded l = load_inputs(cfg);
    json j = base_report(cfg, l);
    solver::SolverSession session(cfg.solver_path, cfg.solver_timeout_ms);
    engine::CstrOptions co;
    co.muc.max_clauses = cfg.clause_budget;
    engine::Abstraction ab(l.sys.vocab, engine::PredicateSet(l.preds, l.sys.vocab), session);
    Timer t;
    engine::StateAbstraction init = engine::abstract_state_formula(ab, l.sys.init, co);
    engine::TransitionAbstraction trans = engine::abstract_transition(ab, l.sys.commands, co);
    j["automata"] = {{"init_states", init.automaton.num_states()},
                     {"transition_states", trans.automaton.num_states()},
                     {"state_space_states", ab.state_space().num_states()}};
    j["complete"] = init.complete && trans.complete;
    dot_dump(cfg, "init", init.automaton);
    dot_dump(cfg, "transition", trans.automaton);
    j["timings"] = {{"total_ms", total.ms()}, {"abstraction_ms", t.ms()}};
    j["solver"] = solver_stats(session);
    return {0, render(cfg, j)};
}

RunResult corpus_cmd(const RunConfig& cfg) {
    Timer total;
    json j;
    j["command"] = "corpus";
    std::string dir = cfg.corpus_dir.empty() ? "corpus" : cfg.corpus_dir;
    json files = json::array();
    bool ok = true;
    std::vector<fs::path> specs;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".rspec") specs.push_back(e.path());
    std::sort(specs.begin(), specs.end());
    for (const auto& spec : specs) {
        json entry;
        entry["system"] = spec.filename().string();
        try {
            ArraySystem sys = front::parse_system(front::read_file(spec.string()));
            entry["commands"] = sys.commands.size();
            fs::path prop = spec;
            prop.replace_extension(".rprop");
            if (fs::exists(prop)) {
                auto pf = front::parse_property_file(front::read_file(prop.string()), sys.vocab);
                json names = json::array();
                for (const auto& [name, p] : pf.props) names.push_back(name);
                entry["properties"] = names;
            }
            json predsets = json::array();
            for (const auto& e : fs::directory_iterator(dir)) {
                if (e.path().extension() != ".rpred") continue;
                if (e.path().filename().string().rfind(spec.stem().string(), 0) != 0) continue;
                auto pf = front::parse_predicates(front::read_file(e.path().string()), sys.vocab);
                predsets.push_back(
                    {{"file", e.path().filename().string()}, {"m", pf.predicates.size()}});
            }
            entry["predicate_sets"] = predsets;
            entry["status"] = "ok";
        } catch (const std::exception& ex) {
            entry["status"] = std::string("error: ") + ex.what();
            ok = false;
        }
        files.push_back(entry);
    }
    j["files"] = files;
    j["timings"] = {{"total_ms", total.ms()}};
    return {ok ? 0 : 3, render(cfg, j)};
}

}  // namespace

RunResult explain(const RunConfig& cfg) {
    Timer total;
    Loaded l = load_inputs(cfg);
    json j = base_report(cfg, l);
    solver::SolverSession session(cfg.solver_path, cfg.solver_timeout_ms);
    engine::CstrOptions co;
    co.muc.max_clauses = cfg.clause_budget;
    engine::Abstraction ab(l.sys.vocab, engine::PredicateSet(l.preds, l.sys.vocab), session);

    engine::TransitionAbstraction trans = engine::abstract_transition(ab, l.sys.commands, co);
    json cmds = json::array();
    for (const auto& c : trans.commands) {
        json cj;
        cj["command"] = c.name;
        json djs = json::array();
        for (const auto& d : c.disjuncts) {
            json dj;
            dj["guard"] = d.guard_text;
            dj["data"] = d.data_text;
            json cl = json::array();
            for (const auto& clause : d.constraint.clauses)
                cl.push_back(solver::to_string(clause));
            dj["clauses"] = cl;
            dj["complete"] = d.constraint.complete;
            djs.push_back(dj);
        }
        cj["disjuncts"] = djs;
        json tmpl = json::array();
        for (const auto& clause : c.template_clauses) tmpl.push_back(solver::to_string(clause));
        cj["template_clauses"] = tmpl;
        cmds.push_back(cj);
    }
    j["commands"] = cmds;
    dot_dump(cfg, "transition", trans.automaton);

    engine::StateAbstraction init = engine::abstract_state_formula(ab, l.sys.init, co);
    json idjs = json::array();
    for (const auto& d : init.disjuncts) {
        json dj;
        dj["guard"] = d.guard_text;
        json cl = json::array();
        for (const auto& clause : d.constraint.clauses) cl.push_back(solver::to_string(clause));
        dj["clauses"] = cl;
        idjs.push_back(dj);
    }
    j["init_disjuncts"] = idjs;
    dot_dump(cfg, "init", init.automaton);
    j["timings"] = {{"total_ms", total.ms()}};
    j["solver"] = solver_stats(session);
    return {0, render(cfg, j)};
}

RunResult run(const RunConfig& cfg) {
    try {
        if (cfg.subcommand == "verify") return verify(cfg);
        if (cfg.subcommand == "simulate") return simulate(cfg);
        if (cfg.subcommand == "abstract") return abstract_cmd(cfg);
        if (cfg.subcommand == "explain") return explain(cfg);
        if (cfg.subcommand == "corpus") return corpus_cmd(cfg);
        return {3, "unknown subcommand: " + cfg.subcommand + "\n"};
    } catch (const front::ParseError& e) {
        return {3, std::string("parse error: ") + e.what() + "\n"};
    } catch (const SortError& e) {
        return {3, std::string("sort error: ") + e.what() + "\n"};
    } catch (const std::exception& e) {
        return {3, std::string("error: ") + e.what() + "\n"};
    }
}

std::string validate_report_json(const std::string& json_text) {
    json j = json::parse(json_text, nullptr, false);
    if (j.is_discarded()) return "not valid JSON";
    if (!j.contains("command") || !j["command"].is_string()) return "missing command";
    if (j.contains("verdict") && !j["verdict"].is_string()) return "verdict must be a string";
    if (j.contains("timings") && !j["timings"].is_object()) return "timings must be an object";
    if (j.contains("extents")) {
        if (!j["extents"].is_object()) return "extents must be an object";
        for (const auto& [k, v] : j["extents"].items()) {
            (void)k;
            if (!v.contains("verdict")) return "extent entry missing verdict";
        }
    }
    if (j.contains("trace") && !j["trace"].is_array()) return "trace must be an array";
    return "";
}

}  // namespace regabs::cli
