#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "regabs/engine/alpha.hpp"
#include "regabs/engine/transition.hpp"

using namespace regabs;
using namespace regabs::logic;
using namespace regabs::engine;
using regabs::solver::Clause;
using regabs::solver::SolverSession;

static std::string solver_path() {
#ifdef REGABS_BUILD_BIN_DIR
    return std::string(REGABS_BUILD_BIN_DIR) + "/regabs-smt";
#else
    return "";
#endif
}

static Term rd(const std::string& arr, const std::string& var, int off = 0) {
    return t_read(arr, t_var(var, off));
}

namespace {

struct Fixture {
    Vocabulary vocab;
    SolverSession session{solver_path()};

    Fixture() {
        vocab.add("pid", VarInfo{Sort::Index, false, "", t_lit(1), t_var("n")});
        vocab.add("n", VarInfo{Sort::Index, true, "", {}, {}});
        vocab.add("a", VarInfo{Sort::Array, false, "n", {}, {}});
        vocab.extent = "n";
        vocab.validate();
    }

    PredicateSet dijkstra_preds() {
        IndexedPredicate p1{Atom{rd("a", kDesignated), Rel::Eq, rd("a", "n")}, true, false};
        IndexedPredicate p2{Atom{rd("a", kDesignated), Rel::Eq, rd("a", kDesignated, -1)}, true,
                            false};
        return PredicateSet({p1, p2}, vocab);
    }
};

}  // namespace

TEST_CASE("atom universe of the running example") {
    Fixture fx;
    Abstraction ab(fx.vocab, fx.dijkstra_preds(), fx.session);
    std::vector<Atom> data = {Atom{rd("a", "i"), Rel::Ne, rd("a", "n")}};
    auto lits = atom_universe(data, ab.P, false);
    auto has = [&](const std::string& s) {
        for (const auto& l : lits)
            if (to_string(l) == s) return true;
        return false;
    };
    CHECK(has("a[i] = a[n]"));
    CHECK(has("a[n] = a[n]"));
    CHECK(has("a[i] = a[i-1]"));
    CHECK(has("a[i-1] = a[n]"));
    CHECK(has("a[i] != a[n]"));
    CHECK(has("a[i-1] != a[n]"));
    CHECK(lits.size() == 14);  // 7 distinct instantiations and their negations

    // empty predicate set: empty universe
    PredicateSet none({}, fx.vocab);
    CHECK(atom_universe(data, none, false).empty());

    // terms {p} against predicate terms {i}: plain instantiation only
    std::vector<Atom> data2 = {Atom{rd("a", "p"), Rel::Eq, rd("a", "p")}};
    IndexedPredicate q{Atom{rd("a", kDesignated), Rel::Eq, t_lit(0)}, true, false};
    PredicateSet single({q}, fx.vocab);
    auto lits2 = atom_universe(data2, single, false);
    REQUIRE(lits2.size() == 2);
    CHECK(to_string(lits2[0]) == "a[p] = 0");
    CHECK(to_string(lits2[1]) == "a[p] != 0");
}

TEST_CASE("phi_word spells out the predicate bits (paper example)") {
    Fixture fx;
    IndexedPredicate p1{Atom{rd("x", kDesignated), Rel::Eq, rd("x", "n")}, true, false};
    IndexedPredicate p2{Atom{rd("x", kDesignated), Rel::Ne, rd("x", kDesignated, -1)}, true,
                        false};
    Vocabulary v;
    v.add("x", VarInfo{Sort::Array, false, "n", {}, {}});
    v.add("n", VarInfo{Sort::Index, true, "", {}, {}});
    v.extent = "n";
    PredicateSet P({p1, p2}, v);
    // w = [10, 01]: bit 1 at position 1, bit 2 at position 2
    FormulaPtr f = phi_word({1, 2}, P);
    CHECK(to_string(f) == "x[1] = x[n] & x[1] = x[0] & x[2] != x[n] & x[2] != x[1]");
    CHECK(to_string(phi_word({}, P)) == "true");
    PredicateSet empty({}, v);
    CHECK(to_string(phi_word({0, 0}, empty)) == "true");
}

TEST_CASE("alpha golden: the paper's two abstract states") {
    Fixture fx;
    Abstraction ab(fx.vocab, fx.dijkstra_preds(), fx.session);
    sim::ConcreteState s;
    s.ints = {{"pid", 1}, {"n", 3}};
    s.arrays["a"] = {1, 2, 1};
    auto img = alpha_ref(ab, s);
    REQUIRE(img.size() == 2);
    // letters: bit 1 = P1 (a[i]=a[n]), bit 2 = P2 (a[i]=a[i-1])
    AbstractState w1{{1, 3}, {1, 0, 1}};  // [10,00,10]
    AbstractState w2{{1, 3}, {3, 0, 1}};  // [11,00,10]
    CHECK(img.count(w1) == 1);
    CHECK(img.count(w2) == 1);
}

TEST_CASE("alpha is a singleton when every access stays in the window") {
    Fixture fx;
    IndexedPredicate p1{Atom{rd("a", kDesignated), Rel::Eq, rd("a", "n")}, true, false};
    Abstraction ab(fx.vocab, PredicateSet({p1}, fx.vocab), fx.session);
    sim::ConcreteState s;
    s.ints = {{"pid", 2}, {"n", 2}};
    s.arrays["a"] = {1, 1};
    auto img = alpha_ref(ab, s);
    REQUIRE(img.size() == 1);
    CHECK(img.begin()->word == std::vector<int>{1, 1});
}

TEST_CASE("alpha of the illustrative two-process state refutes Priv(1)") {
    Fixture fx;
    Abstraction ab(fx.vocab, fx.dijkstra_preds(), fx.session);
    sim::ConcreteState s;
    s.ints = {{"pid", 1}, {"n", 2}};
    s.arrays["a"] = {1, 2};
    auto img = alpha_ref(ab, s);
    REQUIRE(img.size() == 2);
    for (const auto& a : img) {
        CHECK((a.word[0] & 1) == 0);  // the a[i]=a[n] bit is clear at position 1
        CHECK(a.word[1] == 1);        // position 2 carries exactly the a[i]=a[n] bit
    }
}

TEST_CASE("kappa of the boundary-guarded example") {
    Vocabulary v;
    v.add("p", VarInfo{Sort::Index, false, "", {}, {}});
    v.add("n", VarInfo{Sort::Index, true, "", {}, {}});
    v.add("a", VarInfo{Sort::Array, false, "n", {}, {}});
    v.add("b", VarInfo{Sort::Array, false, "n", {}, {}});
    v.extent = "n";
    SolverSession session(solver_path());
    IndexedPredicate p1{Atom{rd("a", kDesignated), Rel::Gt, rd("b", "p")}, true, false};
    Abstraction ab(v, PredicateSet({p1}, v), session);

    FormulaPtr f = f_forall("i", f_atom(rd("a", "i"), Rel::Le, rd("b", "p")));
    wa::FOWPtr k = kappa(ab, f, false);
    CHECK(wa::to_string(k) ==
          "(forall i. (!((1 <= i & i <= n & 1 <= p & p <= n)) | !(D1(i, %w))))");
    CHECK(wa::to_string(kappa(ab, f_true(), false)) == "true");
}

TEST_CASE("kappa rejects inexpressible atoms") {
    Fixture fx;
    Abstraction ab(fx.vocab, fx.dijkstra_preds(), fx.session);
    CHECK_THROWS_AS(kappa_atom(ab, Atom{rd("a", "i"), Rel::Lt, rd("a", "n")}, false),
                    NotExpressible);
}

TEST_CASE("cstr matches the paper clause sets and filters trivial clauses") {
    Fixture fx;
    Abstraction ab(fx.vocab, fx.dijkstra_preds(), fx.session);

    std::vector<Atom> d1 = {Atom{rd("a", "i"), Rel::Ne, rd("a", "n")}};
    solver::Query q1;
    q1.formula = f_atom(d1[0]);
    AbstractionConstraint c1 = cstr(ab, q1, d1, false);
    REQUIRE(c1.complete);
    REQUIRE(c1.clauses.size() == 3);
    CHECK(solver::to_string(c1.clauses[0]) == "{a[i] != a[n]}");
    CHECK(solver::to_string(c1.clauses[1]) == "{a[n] = a[n]}");
    CHECK(solver::to_string(c1.clauses[2]) == "{a[i-1] != a[n], a[i] != a[i-1]}");

    std::vector<Atom> d2 = {Atom{rd("a", "i"), Rel::Eq, rd("a", "i", -1)}};
    solver::Query q2;
    q2.formula = f_atom(d2[0]);
    AbstractionConstraint c2 = cstr(ab, q2, d2, false);
    REQUIRE(c2.complete);
    REQUIRE(c2.clauses.size() == 4);
    CHECK(solver::to_string(c2.clauses[0]) == "{a[i] = a[i-1]}");
    CHECK(solver::to_string(c2.clauses[1]) == "{a[n] = a[n]}");
    CHECK(solver::to_string(c2.clauses[2]) == "{a[i-1] = a[n], a[i] != a[n]}");
    CHECK(solver::to_string(c2.clauses[3]) == "{a[i-1] != a[n], a[i] = a[n]}");

    // cstr over an empty data conjunction keeps the theory tautologies
    AbstractionConstraint c3 = cstr(ab, solver::Query{}, {}, false);
    REQUIRE(c3.clauses.size() == 1);
    CHECK(solver::to_string(c3.clauses[0]) == "{a[n] = a[n]}");
}

TEST_CASE("abstract_state_formula proves the no-privileged-process formula unsat") {
    Fixture fx;
    Abstraction ab(fx.vocab, fx.dijkstra_preds(), fx.session);

    // forall i. (i=1 & i<n & a[i]!=a[n]) | (i>1 & i<=n & a[i]=a[i-1]) | (i>n & n>=2)
    FormulaPtr phi = f_forall(
        "i",
        f_or({f_and({f_atom(t_var("i"), Rel::Eq, t_lit(1)), f_atom(t_var("i"), Rel::Lt, t_var("n")),
                     f_atom(rd("a", "i"), Rel::Ne, rd("a", "n"))}),
              f_and({f_atom(t_var("i"), Rel::Gt, t_lit(1)), f_atom(t_var("i"), Rel::Le, t_var("n")),
                     f_atom(rd("a", "i"), Rel::Eq, rd("a", "i", -1))}),
              f_and({f_atom(t_var("i"), Rel::Gt, t_var("n")),
                     f_atom(t_var("n"), Rel::Ge, t_lit(2))})}));
    StateAbstraction sa = abstract_state_formula(ab, phi);
    CHECK(sa.complete);
    CHECK(wa::is_empty(sa.automaton));
}

TEST_CASE("abstract_state_formula of true is the predicate-induced state space") {
    Fixture fx;
    Abstraction ab(fx.vocab, fx.dijkstra_preds(), fx.session);
    StateAbstraction sa = abstract_state_formula(ab, f_true());
    CHECK(!wa::is_empty(sa.automaton));
    CHECK(wa::includes(ab.state_space(), sa.automaton));
    // the tautology a[n]=a[n] forces the P1 bit at position n
    wa::FOCompilerEnv env{ab.state_layout()};
    wa::TrackAutomaton expected = wa::intersect(
        wa::compile(wa::w_implies(wa::w_cmp(wa::n_const(1), Rel::Le, wa::n_var("n")),
                                  wa::w_delta(1, wa::n_var("n"), kWord)),
                    env),
        ab.state_space());
    CHECK(wa::equivalent(sa.automaton, expected));
}

TEST_CASE("abstract_state_formula of an all-positions constraint") {
    Fixture fx;
    IndexedPredicate p1{Atom{rd("a", kDesignated), Rel::Eq, rd("a", "n")}, true, false};
    Abstraction ab(fx.vocab, PredicateSet({p1}, fx.vocab), fx.session);
    FormulaPtr phi = f_forall(
        "i", f_implies(f_and({f_atom(t_lit(1), Rel::Le, t_var("i")),
                              f_atom(t_var("i"), Rel::Le, t_var("n"))}),
                       f_atom(rd("a", "i"), Rel::Eq, rd("a", "n"))));
    StateAbstraction sa = abstract_state_formula(ab, phi);
    wa::FOCompilerEnv env{ab.state_layout()};
    wa::TrackAutomaton expected = wa::intersect(
        wa::compile(wa::w_forall("i", wa::w_implies(
                                          wa::w_and({wa::w_cmp(wa::n_const(1), Rel::Le,
                                                               wa::n_var("i")),
                                                     wa::w_cmp(wa::n_var("i"), Rel::Le,
                                                               wa::n_len(kWord))}),
                                          wa::w_delta(1, wa::n_var("i"), kWord))),
                    env),
        ab.state_space());
    CHECK(wa::equivalent(sa.automaton, expected));

    // membership spot checks
    AbstractState good{{2, 2}, {1, 1}};
    AbstractState bad{{2, 2}, {1, 0}};
    CHECK(wa::member(sa.automaton, encode(ab, good)));
    CHECK(!wa::member(sa.automaton, encode(ab, bad)));
}

TEST_CASE("gamma membership against universe and empty sets") {
    Fixture fx;
    Abstraction ab(fx.vocab, fx.dijkstra_preds(), fx.session);
    sim::ConcreteState s;
    s.ints = {{"pid", 1}, {"n", 3}};
    s.arrays["a"] = {1, 2, 1};
    CHECK(gamma_member(ab, s, ab.state_space()));
    CHECK(!gamma_member(ab, s, wa::TrackAutomaton::empty(ab.state_layout())));

    // exactly the two paper states: member; dropping one: not
    auto img = alpha_ref(ab, s);
    std::vector<wa::ConvWord> words;
    for (const auto& a : img) words.push_back(encode(ab, a));
    wa::TrackAutomaton both = wa::unite(wa::singleton(ab.state_layout(), words[0]),
                                        wa::singleton(ab.state_layout(), words[1]));
    CHECK(gamma_member(ab, s, both));
    CHECK(!gamma_member(ab, s, wa::singleton(ab.state_layout(), words[0])));
}

TEST_CASE("closure: union and negation compose (Props 4.9 and 5.4)") {
    Fixture fx;
    IndexedPredicate p1{Atom{rd("a", kDesignated), Rel::Eq, rd("a", "n")}, true, false};
    Abstraction ab(fx.vocab, PredicateSet({p1}, fx.vocab), fx.session);

    FormulaPtr range_i = f_and({f_atom(t_lit(1), Rel::Le, t_var("i")),
                                f_atom(t_var("i"), Rel::Le, t_var("n"))});
    FormulaPtr phi1 = f_forall("i", f_implies(range_i, f_atom(rd("a", "i"), Rel::Eq, rd("a", "n"))));
    FormulaPtr phi2 = f_exists("i", f_and({range_i, f_atom(rd("a", "i"), Rel::Ne, rd("a", "n")),
                                           f_atom(t_var("pid"), Rel::Eq, t_lit(1))}));

    auto a1 = abstract_state_formula(ab, phi1).automaton;
    auto a2 = abstract_state_formula(ab, phi2).automaton;
    auto a12 = abstract_state_formula(ab, f_or({phi1, phi2})).automaton;
    CHECK(wa::equivalent(a12, wa::unite(a1, a2)));

    auto not1 = abstract_state_formula(ab, f_not(phi1)).automaton;
    auto top = abstract_state_formula(ab, f_true()).automaton;
    CHECK(wa::equivalent(not1, wa::intersect(wa::complement(a1), top)));
}

TEST_CASE("template instantiation derives the paper's feasible clause") {
    Vocabulary v;
    v.add("i", VarInfo{Sort::Index, false, "", {}, {}});
    v.add("p", VarInfo{Sort::Index, false, "", {}, {}});
    v.add("n", VarInfo{Sort::Index, true, "", {}, {}});
    v.add("a", VarInfo{Sort::Array, false, "n", {}, {}});
    v.extent = "n";
    v.validate();
    SolverSession session(solver_path());
    IndexedPredicate p1{Atom{rd("a", kDesignated), Rel::Le, rd("a", "n")}, true, false};
    PredicateSet P({p1}, v);

    GuardedCommand cmd;
    cmd.name = "write";
    cmd.guard = f_atom(rd("a", "p"), Rel::Le, rd("a", "n"));
    cmd.updates.push_back(Update{Update::Kind::SetCell, "a", t_var("i"), rd("a", "p")});

    CompactCommand cc = compact(cmd, v);
    auto clauses = instantiate_templates(cc, P, v);
    bool found = false;
    for (const auto& c : clauses)
        if (solver::to_string(c) == "{i = n, a'[i] <= a'[n]}") found = true;
    CHECK(found);

    // and the clause is solver-verified valid for the command
    solver::Query q = cc.query(v);
    Clause golden = {Atom{t_var("i"), Rel::Eq, t_var("n")},
                     Atom{rd("a'", "i"), Rel::Le, rd("a'", "n")}};
    CHECK(solver::check_implication_valid(session, q, golden, v));
}

TEST_CASE("abstract_transition on an empty command list is the empty relation") {
    Fixture fx;
    Abstraction ab(fx.vocab, fx.dijkstra_preds(), fx.session);
    TransitionAbstraction ta = abstract_transition(ab, {});
    CHECK(wa::is_empty(ta.automaton));
}

TEST_CASE("abstract_transition of skip keeps predicate bits for untouched arrays") {
    Fixture fx;
    IndexedPredicate p1{Atom{rd("a", kDesignated), Rel::Eq, rd("a", "n")}, true, false};
    Abstraction ab(fx.vocab, PredicateSet({p1}, fx.vocab), fx.session);

    GuardedCommand skip;
    skip.name = "skip";
    skip.guard = f_true();
    skip.updates.push_back(Update{Update::Kind::SetIndex, "pid", {}, t_var("pid")});
    TransitionAbstraction ta = abstract_transition(ab, {skip});
    CHECK(!wa::is_empty(ta.automaton));

    // pid and n are forced equal across the step, and in-range bits copy
    // the P1 bit at position n is tautologically set; position 1 is free
    AbstractState s1{{1, 2}, {0, 1}};
    AbstractState s1_same{{1, 2}, {0, 1}};
    AbstractState s1_flip{{1, 2}, {1, 1}};
    AbstractState s1_pid{{2, 2}, {0, 1}};
    CHECK(wa::member(ta.automaton, encode_pair(ab, s1, s1_same)));
    CHECK(!wa::member(ta.automaton, encode_pair(ab, s1, s1_flip)));
    CHECK(!wa::member(ta.automaton, encode_pair(ab, s1, s1_pid)));

    AbstractState n2{{1, 2}, {0, 1}};
    AbstractState n3{{1, 3}, {0, 0, 1}};
    CHECK(!wa::member(ta.automaton, encode_pair(ab, n2, n3)));  // parameters immutable
}
