#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <deque>

#include "regabs/front/parse.hpp"
#include "regabs/rmc/refine.hpp"
#include "regabs/sim/simulator.hpp"

using namespace regabs;
using namespace regabs::logic;
using namespace regabs::rmc;

static std::string solver_path() {
    return std::string(REGABS_BUILD_BIN_DIR) + "/regabs-smt";
}
static std::string corpus(const std::string& name) {
    return std::string(REGABS_CORPUS_DIR) + "/" + name;
}

namespace {

struct Loaded {
    ArraySystem sys;
    front::PropertyFile props;
    std::vector<IndexedPredicate> preds;
};

Loaded load(const std::string& spec, const std::string& prop, const std::string& pred) {
    Loaded l;
    l.sys = front::parse_system(front::read_file(corpus(spec)));
    l.props = front::parse_property_file(front::read_file(corpus(prop)), l.sys.vocab);
    auto pf = front::parse_predicates(front::read_file(corpus(pred)), l.sys.vocab);
    l.sys.vocab = pf.vocab;  // predicate files may add Skolem parameters
    l.preds = pf.predicates;
    return l;
}

}  // namespace

TEST_CASE("check_safety: trivial bad sets and immediate hits") {
    solver::SolverSession session(solver_path());
    Loaded l = load("dijkstra.rspec", "dijkstra.rprop", "dijkstra_s2.rpred");
    engine::Abstraction ab(l.sys.vocab, engine::PredicateSet(l.preds, l.sys.vocab), session);

    SafetyInstance inst;
    inst.I = engine::abstract_state_formula(ab, l.sys.init).automaton;
    inst.T = engine::abstract_transition(ab, {}).automaton;  // empty relation
    inst.B = wa::TrackAutomaton::empty(ab.state_layout());

    Verdict v = check_safety(inst);
    CHECK(v.kind == Verdict::Kind::Proved);
    CHECK(v.iterations <= 1);

    // I intersects B: length-0 counterexample
    inst.B = inst.I;
    Verdict v2 = check_safety(inst);
    CHECK(v2.kind == Verdict::Kind::Counterexample);
    CHECK(v2.trace.states.size() == 1);
}

TEST_CASE("check_invariant reports the failing side") {
    solver::SolverSession session(solver_path());
    Loaded l = load("dijkstra.rspec", "dijkstra.rprop", "dijkstra_s2.rpred");
    engine::Abstraction ab(l.sys.vocab, engine::PredicateSet(l.preds, l.sys.vocab), session);

    SafetyInstance inst;
    inst.I = engine::abstract_state_formula(ab, l.sys.init).automaton;
    inst.T = engine::abstract_transition(ab, l.sys.commands).automaton;
    inst.B = wa::TrackAutomaton::empty(ab.state_layout());

    // the whole state space is inductive and avoids the empty bad set
    Verdict ok = check_invariant(inst, ab.state_space());
    CHECK(ok.kind == Verdict::Kind::Proved);

    // an invariant that misses initial states is rejected with a witness
    Verdict miss = check_invariant(inst, wa::TrackAutomaton::empty(ab.state_layout()));
    CHECK(miss.kind == Verdict::Kind::Unknown);
    CHECK(miss.reason.find("initial") != std::string::npos);
}

TEST_CASE("Dijkstra P4 is proved by the explicit fixed-parameter route") {
    solver::SolverSession session(solver_path());
    Loaded l = load("dijkstra.rspec", "dijkstra.rprop", "dijkstra_p4.rpred");
    BuiltSafety built =
        build_safety_instance(l.sys, l.props.props.at("P4"), l.preds, session);

    auto verdicts = fixed_param_check(*built.ab, built.instance, {2, 3});
    for (const auto& [n, v] : verdicts) {
        CAPTURE(n);
        CAPTURE(v.reason);
        CHECK(v.kind == Verdict::Kind::Proved);
    }
}

TEST_CASE("abstract reachability covers the concrete system (Dijkstra, n=3)") {
    solver::SolverSession session(solver_path());
    Loaded l = load("dijkstra.rspec", "dijkstra.rprop", "dijkstra_p4.rpred");
    BuiltSafety built =
        build_safety_instance(l.sys, l.props.props.at("P4"), l.preds, session);

    // abstract reachable slice at n = 3
    FixedParamOptions fp;
    long long cap = 3 + fp.slack + 2;
    auto init_states = enumerate_slice(*built.ab, built.instance.I, 3, cap, fp.max_states);
    std::set<engine::AbstractState> reach(init_states.begin(), init_states.end());
    std::deque<engine::AbstractState> work(init_states.begin(), init_states.end());
    while (!work.empty()) {
        auto s = work.front();
        work.pop_front();
        for (const auto& t : slice_successors(*built.ab, built.instance.T, s, cap))
            if (reach.insert(t).second) work.push_back(t);
    }

    // concrete reachable states under the P4 premise (Q1 and Q3): start from
    // the all-equal configuration with pid = 1
    sim::Bounds b;
    b.params = {{"n", 3}, {"k", 3}};
    sim::ConcreteState s0;
    s0.ints = {{"pid", 1}, {"n", 3}, {"k", 3}};
    s0.arrays["a"] = {1, 1, 1};
    std::set<sim::ConcreteState> creach = {s0};
    std::deque<sim::ConcreteState> cwork = {s0};
    while (!cwork.empty()) {
        auto s = cwork.front();
        cwork.pop_front();
        for (const auto& t : sim::successors(l.sys, s, b))
            if (creach.insert(t).second) cwork.push_back(t);
    }
    CHECK(creach.size() > 1);
    for (const auto& s : creach)
        for (const auto& a : engine::alpha_ref(*built.ab, s, b.data_lo, b.data_hi))
            CHECK(reach.count(a) == 1);
}

TEST_CASE("the illustrative rough abstraction yields a spurious fair lasso at n=3") {
    solver::SolverSession session(solver_path());
    Loaded l = load("dijkstra.rspec", "dijkstra.rprop", "dijkstra_s2.rpred");
    BuiltLiveness built =
        build_liveness_instance(l.sys, l.props.props.at("P1"), l.preds, session);
    CHECK(built.instance.mode == LivenessMode::Recurrence);

    auto verdicts = fixed_param_check(*built.ab, built.instance, {3});
    REQUIRE(verdicts.count(3));
    const Verdict& v = verdicts.at(3);
    CAPTURE(v.reason);
    REQUIRE(v.kind == Verdict::Kind::Counterexample);
    REQUIRE(v.trace.is_lasso());

    sim::Bounds b;
    b.params = {{"n", 3}, {"k", 3}};
    CHECK(sim::replay_abstract_trace(l.sys, *built.ab, v.trace, b) == sim::Replay::Spurious);
    CHECK(!trace_feasible_by_unrolling(l.sys, *built.ab, v.trace, 2));
}

TEST_CASE("refinement with the richer predicate set eliminates the lasso") {
    solver::SolverSession session(solver_path());
    Loaded l = load("dijkstra.rspec", "dijkstra.rprop", "dijkstra_p4.rpred");
    RefineOptions opt;
    opt.extents = {3};
    RefineResult r = refine_loop(l.sys, l.props.props.at("P1"), l.preds, session, opt);
    CAPTURE(r.verdict.reason);
    for (const auto& round : r.log) CAPTURE(round.outcome);
    CHECK(r.verdict.kind == Verdict::Kind::Proved);
}

TEST_CASE("selection sort terminates: liveness through the fixed-parameter route") {
    solver::SolverSession session(solver_path());
    ArraySystem sys =
        front::parse_system(front::read_file(corpus("selection_sort.rspec")));
    auto props = front::parse_property_file(front::read_file(corpus("selection_sort.rprop")),
                                            sys.vocab);
    BuiltLiveness built = build_liveness_instance(sys, props.props.at("P3"), {}, session);
    CHECK(built.instance.mode == LivenessMode::Eventually);

    auto verdicts = fixed_param_check(*built.ab, built.instance, {2, 3});
    for (const auto& [n, v] : verdicts) {
        CAPTURE(n);
        CAPTURE(v.reason);
        CHECK(v.kind == Verdict::Kind::Proved);
    }
}

TEST_CASE("selection sort progress is proved at fixed extents") {
    solver::SolverSession session(solver_path());
    ArraySystem sys =
        front::parse_system(front::read_file(corpus("selection_sort.rspec")));
    auto pf = front::parse_predicates(front::read_file(corpus("selection_sort_p0.rpred")),
                                      sys.vocab);
    sys.vocab = pf.vocab;
    auto props = front::parse_property_file(front::read_file(corpus("selection_sort.rprop")),
                                            sys.vocab);
    BuiltSafety built =
        build_progress_instance(sys, props.props.at("P3"), pf.predicates, session);
    auto verdicts = fixed_param_check(*built.ab, built.instance, {2, 3});
    for (const auto& [n, v] : verdicts) {
        CAPTURE(n);
        CAPTURE(v.reason);
        CHECK(v.kind == Verdict::Kind::Proved);
    }
}

TEST_CASE("a system with an always-enabled skip command is trivially progressing") {
    solver::SolverSession session(solver_path());
    ArraySystem sys = front::parse_system(
        "param n\nextent n\nindex x bounds 1 n\narray a size n\ninit: true\n"
        "cmd skip: true |> x := x\n");
    auto prop = front::parse_property("F x = 1", sys.vocab);
    BuiltSafety built = build_progress_instance(sys, prop, {}, session);
    // bad = "no command enabled and x != 1" is empty outright
    CHECK(wa::is_empty(built.instance.B));
    Verdict v = check_safety(built.instance);
    CHECK(v.kind == Verdict::Kind::Proved);
}

TEST_CASE("monodic reduction builds the displayed monitor formulas") {
    ArraySystem sys = front::parse_system(
        "param n\nextent n\nindex k bounds 1 n\narray a size n\ninit: true\n"
        "cmd skip: true |> k := k\n");

    // closed G psi: a single monitor array
    auto p1 = front::parse_property("G (forall i. (1 <= i & i <= n) => a[i] = 0)", sys.vocab);
    MonodicReduction r1 = monodic_reduce(sys, p1);
    CHECK(r1.monitor_arrays.size() == 1);
    CHECK(to_string(r1.init).find("g1[1] = 0") != std::string::npos);
    CHECK(to_string(r1.monitor_transition).find("g1'[") != std::string::npos);
    CHECK(to_string(r1.fairness).find("G F") != std::string::npos);

    // the paper's monodic example
    auto p2 = front::parse_property("forall j. G a[j] > a[k]", sys.vocab);
    MonodicReduction r2 = monodic_reduce(sys, p2);
    CHECK(r2.monitor_arrays.size() == 1);
    CHECK(r2.product.vocab.is_array("g1"));

    // and the paper's non-monodic counterexample
    auto p3 = front::parse_property("exists i. forall j. G a[j] > a[i]", sys.vocab);
    CHECK_THROWS_AS(monodic_reduce(sys, p3), NotMonodic);
}

TEST_CASE("fixed_param_check agrees with check_safety where both complete") {
    solver::SolverSession session(solver_path());
    // a small index-only system: x counts down to 1 and stays
    ArraySystem sys = front::parse_system(
        "param n\nextent n\nindex x bounds 1 n\narray a size n\ninit: x = n\n"
        "cmd dec: x > 1 |> x := x-1\n");
    auto prop = front::parse_property("forall c. (x = c) => G x >= 1", sys.vocab);
    BuiltSafety built = build_safety_instance(sys, prop, {}, session);

    Verdict fix = check_safety(built.instance);
    auto per_n = fixed_param_check(*built.ab, built.instance, {1, 2, 3, 4});
    for (const auto& [n, v] : per_n) {
        CAPTURE(n);
        CHECK(v.kind == Verdict::Kind::Proved);
    }
    if (fix.kind != Verdict::Kind::Unknown) CHECK(fix.kind == Verdict::Kind::Proved);
}
