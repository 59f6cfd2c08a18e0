#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "regabs/front/parse.hpp"
#include "regabs/sim/simulator.hpp"

using namespace regabs;
using namespace regabs::logic;
using namespace regabs::sim;

static std::string solver_path() {
    return std::string(REGABS_BUILD_BIN_DIR) + "/regabs-smt";
}

static std::string corpus(const std::string& name) {
    return std::string(REGABS_CORPUS_DIR) + "/" + name;
}

static ArraySystem dijkstra() {
    return front::parse_system(front::read_file(corpus("dijkstra.rspec")));
}

// selection sort without the ghost copy array (faster enumeration)
static ArraySystem small_sort() {
    return front::parse_system(
        "param n\nextent n\nindex pc bounds 0 1\nindex low bounds 1 n\nindex high bounds 1 n\n"
        "array a size n\ninit: pc = 0\n"
        "cmd start: pc = 0 |> low := 1, high := n, pc := 1\n"
        "cmd dechigh: pc = 1 & low >= high & 1 < high |> high := high-1, low := 1\n"
        "cmd inclow: pc = 1 & low < high & a[low] <= a[high] |> low := low+1\n"
        "cmd swap: pc = 1 & low < high & a[low] > a[high] |> a[high] := a[low], a[low] := a[high], low := low+1\n");
}

TEST_CASE("unsatisfiable init yields no reachable states") {
    ArraySystem sys = dijkstra();
    Bounds b;
    b.params = {{"n", 1}, {"k", 1}};  // violates 2 <= n
    CHECK(enumerate_reachable(sys, b).empty());
}

TEST_CASE("Dijkstra reachable set at n=2, k=2 (frozen golden)") {
    ArraySystem sys = dijkstra();
    Bounds b;
    b.params = {{"n", 2}, {"k", 2}};
    b.data_lo = 0;
    b.data_hi = 1;
    auto reach = enumerate_reachable(sys, b);
    // every combination of pid in [1,2] and a in {0,1}^2 is already initial
    CHECK(reach.size() == 8);

    // determinism of the enumeration
    auto again = enumerate_reachable(sys, b);
    CHECK(reach == again);
}

TEST_CASE("selection sort always halts with a sorted array (exhaustive, n=3)") {
    ArraySystem sys = small_sort();
    Bounds b;
    b.params = {{"n", 3}};
    auto reach = enumerate_reachable(sys, b);
    size_t terminal = 0;
    for (const auto& s : reach) {
        if (!successors(sys, s, b).empty()) continue;
        ++terminal;
        const auto& a = s.arrays.at("a");
        for (size_t i = 0; i + 1 < a.size(); ++i) CHECK(a[i] <= a[i + 1]);
    }
    CHECK(terminal > 0);
}

TEST_CASE("operational and logical command semantics agree (Dijkstra, n=2)") {
    ArraySystem sys = dijkstra();
    Bounds b;
    b.params = {{"n", 2}, {"k", 2}};
    b.data_lo = 0;
    b.data_hi = 1;

    // every state over the window, not only reachable ones
    std::vector<ConcreteState> space;
    for (long long pid = 1; pid <= 2; ++pid)
        for (long long a1 = 0; a1 <= 1; ++a1)
            for (long long a2 = 0; a2 <= 1; ++a2) {
                ConcreteState s;
                s.ints = {{"pid", pid}, {"n", 2}, {"k", 2}};
                s.arrays["a"] = {a1, a2};
                space.push_back(s);
            }

    for (const auto& cmd : sys.commands) {
        FormulaPtr tf = command_to_transition(cmd, sys.vocab);
        for (const auto& s : space) {
            auto ops = command_successors(sys, cmd, s, b);
            std::set<ConcreteState> opset(ops.begin(), ops.end());
            for (const auto& t : space) {
                ConcreteState pair = pair_state(s, t);
                auto v = eval3(tf, pair, 4);
                REQUIRE(v.has_value());
                CHECK(*v == (opset.count(t) != 0));
            }
        }
    }
}

TEST_CASE("operational and logical semantics agree for the swap command (n=3)") {
    ArraySystem sys = small_sort();
    Bounds b;
    b.params = {{"n", 3}};
    const GuardedCommand* swap = nullptr;
    for (const auto& c : sys.commands)
        if (c.name == "swap") swap = &c;
    REQUIRE(swap);
    FormulaPtr tf = command_to_transition(*swap, sys.vocab);

    std::vector<ConcreteState> space;
    for (long long pc = 0; pc <= 1; ++pc)
        for (long long low = 1; low <= 3; ++low)
            for (long long high = 1; high <= 3; ++high)
                for (long long a1 = 0; a1 <= 2; ++a1)
                    for (long long a2 = 0; a2 <= 2; ++a2)
                        for (long long a3 = 0; a3 <= 2; ++a3) {
                            ConcreteState s;
                            s.ints = {{"pc", pc}, {"low", low}, {"high", high}, {"n", 3}};
                            s.arrays["a"] = {a1, a2, a3};
                            space.push_back(s);
                        }

    size_t positive = 0;
    for (const auto& s : space) {
        auto ops = command_successors(sys, *swap, s, b);
        std::set<ConcreteState> opset(ops.begin(), ops.end());
        positive += opset.size();
        for (const auto& t : space) {
            ConcreteState pair = pair_state(s, t);
            auto v = eval3(tf, pair, 5);
            REQUIRE(v.has_value());
            if (*v != (opset.count(t) != 0)) {
                CAPTURE(to_string(s));
                CAPTURE(to_string(t));
                CHECK(*v == (opset.count(t) != 0));
                return;
            }
        }
    }
    CHECK(positive > 0);
}

TEST_CASE("alpha soundness at depth zero: abstract init covers concrete init") {
    ArraySystem sys = dijkstra();
    solver::SolverSession session(solver_path());
    auto preds = front::parse_predicates(front::read_file(corpus("dijkstra_s2.rpred")), sys.vocab);
    engine::Abstraction ab(sys.vocab, engine::PredicateSet(preds.predicates, sys.vocab), session);
    engine::StateAbstraction init_abs = engine::abstract_state_formula(ab, sys.init);

    Bounds b;
    b.params = {{"n", 2}, {"k", 2}};
    b.data_lo = 0;
    b.data_hi = 1;
    for (const auto& s : initial_states(sys, b)) {
        for (const auto& a : engine::alpha_ref(ab, s, b.data_lo, b.data_hi)) {
            CHECK(wa::member(init_abs.automaton, engine::encode(ab, a)));
        }
    }
}

TEST_CASE("a mutated abstraction is caught by the soundness check") {
    ArraySystem sys = dijkstra();
    solver::SolverSession session(solver_path());
    auto preds = front::parse_predicates(front::read_file(corpus("dijkstra_s2.rpred")), sys.vocab);
    engine::Abstraction ab(sys.vocab, engine::PredicateSet(preds.predicates, sys.vocab), session);

    // wrongly strengthened "abstraction": demand the a[i]=a[n] bit everywhere
    wa::FOCompilerEnv env{ab.state_layout()};
    wa::TrackAutomaton wrong = wa::intersect(
        wa::compile(wa::w_forall("q", wa::w_implies(
                                          wa::w_and({wa::w_cmp(wa::n_const(1), Rel::Le,
                                                               wa::n_var("q")),
                                                     wa::w_cmp(wa::n_var("q"), Rel::Le,
                                                               wa::n_len(engine::kWord))}),
                                          wa::w_delta(1, wa::n_var("q"), engine::kWord))),
                    env),
        ab.state_space());

    Bounds b;
    b.params = {{"n", 2}, {"k", 2}};
    b.data_lo = 0;
    b.data_hi = 1;
    auto report = check_alpha_soundness(sys, ab, wrong, b);
    CHECK(!report.ok());
    CHECK(report.states_checked > 0);
}

TEST_CASE("trace replay distinguishes feasible from spurious") {
    ArraySystem sys = dijkstra();
    solver::SolverSession session(solver_path());
    auto preds = front::parse_predicates(front::read_file(corpus("dijkstra_s2.rpred")), sys.vocab);
    engine::Abstraction ab(sys.vocab, engine::PredicateSet(preds.predicates, sys.vocab), session);

    Bounds b;
    b.params = {{"n", 2}, {"k", 2}};
    b.data_lo = 0;
    b.data_hi = 1;

    // a length-0 trace of an abstract initial state with a concrete witness
    ConcreteState s0 = initial_states(sys, b).front();
    engine::AbstractState a0 = *engine::alpha_ref(ab, s0, 0, 1).begin();
    AbstractTrace t0;
    t0.states = {a0};
    CHECK(replay_abstract_trace(sys, ab, t0, b) == Replay::Feasible);

    // an abstract state whose word contradicts every initial state: the
    // tautological a[n]=a[n] bit is cleared at position n
    engine::AbstractState bad = a0;
    bad.word.back() &= ~1;
    AbstractTrace t1;
    t1.states = {bad};
    CHECK(replay_abstract_trace(sys, ab, t1, b) == Replay::Spurious);
}
