#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "regabs/solver/oracle.hpp"
#include "support/model_enum.hpp"

using namespace regabs;
using namespace regabs::logic;
using namespace regabs::solver;

static std::string solver_path() {
#ifdef REGABS_BUILD_BIN_DIR
    return std::string(REGABS_BUILD_BIN_DIR) + "/regabs-smt";
#else
    return "";
#endif
}

static Vocabulary dijkstra_vocab() {
    Vocabulary v;
    v.add("pid", VarInfo{Sort::Index, false, "", {}, {}});
    v.add("a", VarInfo{Sort::Array, false, "n", {}, {}});
    v.add("n", VarInfo{Sort::Index, true, "", {}, {}});
    v.add("k", VarInfo{Sort::Index, true, "", {}, {}});
    v.extent = "n";
    v.validate();
    return v;
}

static Term rd(const std::string& arr, const std::string& var, int off = 0) {
    return t_read(arr, t_var(var, off));
}

TEST_CASE("check_sat on trivial contradictions") {
    SolverSession s(solver_path());
    Vocabulary v = dijkstra_vocab();
    Query q;
    q.formula = f_atom(t_read("a", t_lit(1)), Rel::Ne, t_read("a", t_lit(1)));
    CHECK(s.check_sat(q, v).v == V3::Unsat);

    Query q2;
    q2.formula = f_and({f_atom(rd("a", "i"), Rel::Ne, rd("a", "n")),
                        f_not(f_atom(rd("a", "i"), Rel::Ne, rd("a", "n")))});
    CHECK(s.check_sat(q2, v).v == V3::Unsat);

    Query q3;
    q3.formula = f_atom(rd("a", "i"), Rel::Eq, rd("a", "n"));
    CHECK(s.check_sat(q3, v).v == V3::Sat);
}

TEST_CASE("check_sat with array updates (the derived feasible clause of the paper)") {
    SolverSession s(solver_path());
    Vocabulary v = dijkstra_vocab();
    Query q;
    q.formula = f_and({f_atom(rd("a", "p"), Rel::Le, rd("a", "n")),
                       f_atom(t_var("i"), Rel::Ne, t_var("n")),
                       f_not(f_atom(rd("a'", "i"), Rel::Le, rd("a'", "n")))});
    ArrayDef def;
    def.lhs = "a'";
    def.base = "a";
    def.writes.push_back({t_var("i"), rd("a", "p")});
    q.defs.push_back(def);
    CHECK(s.check_sat(q, v).v == V3::Unsat);

    // without i != n the clause literal is still implied (write lands on n)
    Query q2 = q;
    q2.formula = f_and({f_atom(rd("a", "p"), Rel::Le, rd("a", "n")),
                        f_not(f_atom(rd("a'", "i"), Rel::Le, rd("a'", "n")))});
    CHECK(s.check_sat(q2, v).v == V3::Unsat);

    // frame: a copied array keeps its contents
    Query q3;
    ArrayDef copy;
    copy.lhs = "a'";
    copy.base = "a";
    q3.defs.push_back(copy);
    q3.formula = f_atom(rd("a'", "i"), Rel::Ne, rd("a", "i"));
    CHECK(s.check_sat(q3, v).v == V3::Unsat);
}

TEST_CASE("check_implication_valid on the paper's clauses") {
    SolverSession s(solver_path());
    Vocabulary v = dijkstra_vocab();
    Query psi;
    psi.formula = f_atom(rd("a", "i"), Rel::Ne, rd("a", "n"));

    CHECK(check_implication_valid(s, psi, {Atom{rd("a", "i"), Rel::Ne, rd("a", "n")}}, v));
    CHECK(check_implication_valid(
        s, psi,
        {Atom{rd("a", "i"), Rel::Ne, rd("a", "i", -1)}, Atom{rd("a", "i", -1), Rel::Ne, rd("a", "n")}},
        v));
    CHECK(!check_implication_valid(s, psi, {Atom{rd("a", "i"), Rel::Eq, rd("a", "i", -1)}}, v));

    // brute-force witness for the negative case: a = [0,0,1], i = 1, n = 3
    testsupport::SmallModel m;
    m.ints = {{"i", 1}, {"n", 3}};
    m.arrays["a"] = {{1, 0}, {2, 0}, {3, 1}, {0, 5}};
    CHECK(testsupport::eval_qfree(psi.formula, m));
    CHECK(!testsupport::eval_qfree(f_atom(rd("a", "i"), Rel::Eq, rd("a", "i", -1)), m));
}

static std::vector<Atom> dedup_universe(std::vector<Atom> pos) {
    // duplicates are detected up to side orientation; the first spelling wins
    std::vector<Atom> out;
    for (const auto& a : pos) {
        Atom c = canon(a);
        bool dup = false;
        for (const auto& b : out)
            if (cmp(canon(b), c) == 0) dup = true;
        if (!dup) out.push_back(a);
    }
    std::vector<Atom> lits = out;
    for (const auto& a : out) lits.push_back(negate(a));
    return lits;
}

TEST_CASE("enumerate_min_clauses reproduces the paper's three-clause set") {
    SolverSession s(solver_path());
    Vocabulary v = dijkstra_vocab();
    Query psi;
    psi.formula = f_atom(rd("a", "i"), Rel::Ne, rd("a", "n"));

    std::vector<Atom> pos = {
        {rd("a", "i"), Rel::Eq, rd("a", "n")},      {rd("a", "n"), Rel::Eq, rd("a", "n")},
        {rd("a", "i", -1), Rel::Eq, rd("a", "n")},  {rd("a", "n", -1), Rel::Eq, rd("a", "n")},
        {rd("a", "i"), Rel::Eq, rd("a", "i", -1)},  {rd("a", "n"), Rel::Eq, rd("a", "n", -1)},
        {rd("a", "i", -1), Rel::Eq, rd("a", "i", -2)},
        {rd("a", "n", -1), Rel::Eq, rd("a", "n", -2)},
    };
    auto lits = dedup_universe(pos);
    CHECK(lits.size() == 14);  // one positive pair merged

    MucResult r = enumerate_min_clauses(s, psi, lits, v);
    REQUIRE(r.complete);
    REQUIRE(r.clauses.size() == 3);
    CHECK(to_string(r.clauses[0]) == "{a[i] != a[n]}");
    CHECK(to_string(r.clauses[1]) == "{a[n] = a[n]}");
    CHECK(to_string(r.clauses[2]) == "{a[i-1] != a[n], a[i] != a[i-1]}");

    // spec invariant: every emitted clause is literal-minimal
    for (const auto& c : r.clauses) {
        for (size_t k = 0; k < c.size(); ++k) {
            Clause sub;
            for (size_t j = 0; j < c.size(); ++j)
                if (j != k) sub.push_back(c[j]);
            if (!sub.empty()) CHECK(!check_implication_valid(s, psi, sub, v));
        }
    }

    // determinism
    MucResult r2 = enumerate_min_clauses(s, psi, lits, v);
    REQUIRE(r2.clauses.size() == r.clauses.size());
    for (size_t i = 0; i < r.clauses.size(); ++i) CHECK(cmp(r.clauses[i], r2.clauses[i]) == 0);
}

TEST_CASE("enumerate_min_clauses reproduces the paper's four-clause set") {
    SolverSession s(solver_path());
    Vocabulary v = dijkstra_vocab();
    Query psi;
    psi.formula = f_atom(rd("a", "i"), Rel::Eq, rd("a", "i", -1));

    // instantiation points {i, i-1, n, n-1}: terms of psi and P plus
    // single-level compositions onto the offset-free terms
    std::vector<Atom> pos = {
        {rd("a", "i"), Rel::Eq, rd("a", "n")},        {rd("a", "i", -1), Rel::Eq, rd("a", "n")},
        {rd("a", "n"), Rel::Eq, rd("a", "n")},        {rd("a", "n", -1), Rel::Eq, rd("a", "n")},
        {rd("a", "i"), Rel::Eq, rd("a", "i", -1)},
        {rd("a", "i", -1), Rel::Eq, rd("a", "i", -2)},
        {rd("a", "n"), Rel::Eq, rd("a", "n", -1)},
        {rd("a", "n", -1), Rel::Eq, rd("a", "n", -2)},
    };
    auto lits = dedup_universe(pos);
    CHECK(lits.size() == 14);
    MucResult r = enumerate_min_clauses(s, psi, lits, v);
    REQUIRE(r.complete);
    REQUIRE(r.clauses.size() == 4);
    CHECK(to_string(r.clauses[0]) == "{a[i] = a[i-1]}");
    CHECK(to_string(r.clauses[1]) == "{a[n] = a[n]}");
    CHECK(to_string(r.clauses[2]) == "{a[i-1] = a[n], a[i] != a[n]}");
    CHECK(to_string(r.clauses[3]) == "{a[i-1] != a[n], a[i] = a[n]}");
}

TEST_CASE("enumerate_min_clauses on an unsatisfiable premise yields the empty clause") {
    SolverSession s(solver_path());
    Vocabulary v = dijkstra_vocab();
    Query psi;
    psi.formula = f_and({f_atom(t_var("i"), Rel::Lt, t_var("n")),
                         f_atom(t_var("n"), Rel::Lt, t_var("i"))});
    std::vector<Atom> lits = {{rd("a", "i"), Rel::Eq, rd("a", "n")},
                              {rd("a", "i"), Rel::Ne, rd("a", "n")}};
    MucResult r = enumerate_min_clauses(s, psi, lits, v);
    REQUIRE(r.clauses.size() == 1);
    CHECK(r.clauses[0].empty());
}

TEST_CASE("enumerate_min_clauses agrees with exhaustive subset search") {
    SolverSession s(solver_path());
    Vocabulary v = dijkstra_vocab();
    Query psi;
    psi.formula = f_and({f_atom(rd("a", "i"), Rel::Le, rd("a", "n")),
                         f_atom(rd("a", "n"), Rel::Le, rd("a", "p"))});
    std::vector<Atom> lits = {
        {rd("a", "i"), Rel::Le, rd("a", "p")},  {rd("a", "i"), Rel::Gt, rd("a", "p")},
        {rd("a", "i"), Rel::Le, rd("a", "n")},  {rd("a", "n"), Rel::Gt, rd("a", "p")},
        {rd("a", "p"), Rel::Le, rd("a", "n")},  {rd("a", "i"), Rel::Eq, rd("a", "n")},
    };
    MucResult r = enumerate_min_clauses(s, psi, lits, v);
    REQUIRE(r.complete);

    // exhaustive minimal-valid-subset search over the same universe
    std::vector<Clause> expected;
    size_t n = lits.size();
    std::vector<std::vector<int>> valid_sets;
    for (size_t mask = 1; mask < (size_t{1} << n); ++mask) {
        std::vector<int> idxs;
        bool has_pair = false;
        for (size_t i = 0; i < n; ++i)
            if (mask & (size_t{1} << i)) idxs.push_back(static_cast<int>(i));
        for (size_t x = 0; x < idxs.size() && !has_pair; ++x)
            for (size_t y = x + 1; y < idxs.size() && !has_pair; ++y)
                if (cmp(canon(negate(lits[static_cast<size_t>(idxs[x])])),
                        canon(lits[static_cast<size_t>(idxs[y])])) == 0)
                    has_pair = true;
        if (has_pair) continue;
        Clause c;
        for (int i : idxs) c.push_back(lits[static_cast<size_t>(i)]);
        if (!check_implication_valid(s, psi, c, v)) continue;
        bool minimal = true;
        for (size_t k = 0; k < c.size() && minimal; ++k) {
            Clause sub;
            for (size_t j = 0; j < c.size(); ++j)
                if (j != k) sub.push_back(c[j]);
            if (!sub.empty() && check_implication_valid(s, psi, sub, v)) minimal = false;
        }
        if (minimal) {
            std::sort(c.begin(), c.end(), [](const Atom& a, const Atom& b) {
                return logic::cmp(a, b) < 0;
            });
            expected.push_back(std::move(c));
        }
    }
    std::sort(expected.begin(), expected.end(),
              [](const Clause& a, const Clause& b) { return cmp(a, b) < 0; });
    REQUIRE(r.clauses.size() == expected.size());
    for (size_t i = 0; i < expected.size(); ++i) CHECK(cmp(r.clauses[i], expected[i]) == 0);
}

TEST_CASE("budget exhaustion is flagged") {
    SolverSession s(solver_path());
    Vocabulary v = dijkstra_vocab();
    Query psi;
    psi.formula = f_atom(rd("a", "i"), Rel::Ne, rd("a", "n"));
    std::vector<Atom> lits = {
        {rd("a", "i"), Rel::Ne, rd("a", "n")}, {rd("a", "i"), Rel::Eq, rd("a", "n")},
        {rd("a", "n"), Rel::Eq, rd("a", "n")},
    };
    MucBudget tight;
    tight.max_solver_calls = 2;
    MucResult r = enumerate_min_clauses(s, psi, lits, v, tight);
    CHECK(!r.complete);
}

TEST_CASE("session statistics and cache") {
    SolverSession s(solver_path());
    Vocabulary v = dijkstra_vocab();
    Query q;
    q.formula = f_atom(rd("a", "i"), Rel::Eq, rd("a", "n"));
    (void)s.check_sat(q, v);
    size_t before = s.stats().cache_hits;
    (void)s.check_sat(q, v);
    CHECK(s.stats().cache_hits == before + 1);

    // cache canonicalization: alpha-renamed query hits the same entry
    Query q2;
    q2.formula = f_atom(rd("a", "j"), Rel::Eq, rd("a", "n"));
    size_t hits = s.stats().cache_hits;
    (void)s.check_sat(q2, v);
    CHECK(s.stats().cache_hits == hits + 1);
}

TEST_CASE("a missing solver binary degrades to Unknown") {
    SolverSession s("/nonexistent/solver-binary", 500);
    Vocabulary v = dijkstra_vocab();
    Query q;
    q.formula = f_atom(t_var("i"), Rel::Eq, t_var("n"));
    Verdict3 r = s.check_sat(q, v);
    CHECK(r.v == V3::Unknown);
}
