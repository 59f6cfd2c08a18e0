#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "regabs/front/parse.hpp"
#include "regabs/logic/ops.hpp"

using namespace regabs;
using namespace regabs::front;
using namespace regabs::logic;

static std::string corpus(const std::string& name) {
    return std::string(REGABS_CORPUS_DIR) + "/" + name;
}

TEST_CASE("the Dijkstra corpus file parses to the expected system") {
    ArraySystem sys = parse_system(read_file(corpus("dijkstra.rspec")));
    CHECK(sys.commands.size() == 3);
    CHECK(sys.vocab.order == std::vector<std::string>{"n", "k", "pid", "a"});
    CHECK(sys.vocab.extent == "n");
    CHECK(sys.vocab.size_param_of("a") == "n");
    CHECK(sys.vocab.is_param("k"));
    CHECK(!sys.vocab.is_param("pid"));
    CHECK(sys.commands[0].name == "update1");
    CHECK(to_string(sys.commands[0].guard) == "pid = 1 & a[pid] = a[n] & a[pid] < k-1");
    REQUIRE(sys.commands[0].updates.size() == 2);
    CHECK(sys.commands[0].updates[1].kind == Update::Kind::HavocIndex);
}

TEST_CASE("empty input is rejected with the vocabulary-block message") {
    CHECK_THROWS_WITH_AS(parse_system(""), doctest::Contains("expected vocabulary block"),
                         ParseError);
    CHECK_THROWS_WITH_AS(parse_system("# only a comment\n"),
                         doctest::Contains("expected vocabulary block"), ParseError);
}

TEST_CASE("assigning a parameter is a sort error") {
    std::string text =
        "param n\nextent n\narray a size n\ncmd bad: a[1] = 0 |> n := 2\n";
    CHECK_THROWS_WITH_AS(parse_system(text), doctest::Contains("immutable"), SortError);
}

TEST_CASE("several size parameters require an extent declaration") {
    std::string text = "param n\nparam m\narray a size n\narray b size m\ninit: true\n";
    CHECK_THROWS_WITH_AS(parse_system(text), doctest::Contains("extent declaration is mandatory"),
                         ParseError);
    // unique size parameter: extent defaults to it
    ArraySystem sys = parse_system("param n\narray a size n\ninit: true\n");
    CHECK(sys.vocab.extent == "n");
}

TEST_CASE("property files parse with the expected shapes") {
    ArraySystem sys = parse_system(read_file(corpus("dijkstra.rspec")));
    PropertyFile pf = parse_property_file(read_file(corpus("dijkstra.rprop")), sys.vocab);
    REQUIRE(pf.props.count("P1"));
    REQUIRE(pf.props.count("P2"));
    REQUIRE(pf.props.count("P4"));
    CHECK(pf.props.at("P1").flags.fairness_shaped);     // GF Q1
    CHECK(pf.props.at("P4").flags.safety_shaped);
    CHECK(pf.props.at("P4").flags.abstractable);
    CHECK(pf.props.at("P3").flags.liveness_shaped);
    CHECK(pf.props.at("P2").flags.liveness_shaped);     // fairness premise
    CHECK(pf.props.at("NoPrivileged").flags.monodic);
}

TEST_CASE("single property expressions classify per the spec examples") {
    ArraySystem sys = parse_system(read_file(corpus("selection_sort.rspec")));
    TemporalProperty p = parse_property("F high <= 1", sys.vocab);
    CHECK(p.flags.liveness_shaped);
    CHECK(p.flags.abstractable);

    TemporalProperty q = parse_property("forall c. (a[c] = 0) => G (a[c] = 0)", sys.vocab);
    CHECK(q.flags.safety_shaped);

    TemporalProperty r = parse_property("G F pc = 0", sys.vocab);
    CHECK(r.flags.fairness_shaped);
    CHECK(!r.flags.safety_shaped);
}

TEST_CASE("predicate files parse in order and flag degenerate entries") {
    ArraySystem sys = parse_system(read_file(corpus("dijkstra.rspec")));
    PredicateFile pf = parse_predicates(read_file(corpus("dijkstra_p4.rpred")), sys.vocab);
    REQUIRE(pf.predicates.size() == 3);
    CHECK(to_string(pf.predicates[0].atom) == "a[%i] = a[%i-1]");
    CHECK(to_string(pf.predicates[1].atom) == "a[%i] = a[n]");
    CHECK(pf.warnings.empty());

    // semicolon-separated bare atoms (the spec's example inputs)
    PredicateFile two = parse_predicates("a[%i] = a[n]; a[%i] = a[%i-1]", sys.vocab);
    CHECK(two.predicates.size() == 2);

    PredicateFile empty = parse_predicates("", sys.vocab);
    CHECK(empty.predicates.empty());

    PredicateFile taut = parse_predicates("a[%i] = a[%i]", sys.vocab);
    REQUIRE(taut.predicates.size() == 1);
    CHECK(taut.predicates[0].tautological);
    CHECK(!taut.warnings.empty());

    PredicateFile constant = parse_predicates("pred n >= 2", sys.vocab);
    REQUIRE(constant.predicates.size() == 1);
    CHECK(!constant.predicates[0].mentions_designated);
    CHECK(!constant.warnings.empty());

    CHECK_THROWS_AS(parse_predicates("a[%i] = a[n]; a[%i] = a[n]", sys.vocab), ParseError);
    CHECK_THROWS_AS(parse_predicates("param z\npred a[%i] = zz", sys.vocab), SortError);
}

TEST_CASE("all four case studies parse and type-check with their predicate sets") {
    struct Entry {
        const char* spec;
        const char* prop;
        std::vector<const char*> preds;
        size_t commands;
    };
    std::vector<Entry> entries = {
        {"dijkstra.rspec", "dijkstra.rprop",
         {"dijkstra_p4.rpred", "dijkstra_p2.rpred", "dijkstra_s2.rpred"}, 3},
        {"selection_sort.rspec", "selection_sort.rprop", {"selection_sort_p0.rpred"}, 4},
        {"merge_sort.rspec", "merge_sort.rprop", {"merge_sort.rpred"}, 6},
        {"chang_roberts.rspec", "chang_roberts.rprop",
         {"chang_roberts_p1.rpred", "chang_roberts_p0.rpred"}, 8},
    };
    for (const auto& e : entries) {
        CAPTURE(e.spec);
        ArraySystem sys = parse_system(read_file(corpus(e.spec)));
        CHECK(sys.commands.size() == e.commands);
        PropertyFile pf = parse_property_file(read_file(corpus(e.prop)), sys.vocab);
        CHECK(!pf.props.empty());
        for (const char* pred : e.preds) {
            PredicateFile preds = parse_predicates(read_file(corpus(pred)), sys.vocab);
            CHECK(!preds.predicates.empty());
        }
    }
}

TEST_CASE("parse then print is the identity on the corpus") {
    for (const char* name : {"dijkstra.rspec", "selection_sort.rspec", "merge_sort.rspec",
                             "chang_roberts.rspec"}) {
        CAPTURE(name);
        ArraySystem sys = parse_system(read_file(corpus(name)));
        ArraySystem back = parse_system(print_system(sys));
        CHECK(equal_systems(sys, back));
        CHECK(print_system(sys) == print_system(back));
    }
}

namespace {

// Random small systems for the round-trip property.
struct Gen {
    std::mt19937 rng;
    explicit Gen(unsigned seed) : rng(seed) {}
    int pick(int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); }

    Term term(const ArraySystem&, bool index_only) {
        switch (pick(index_only ? 3 : 4)) {
            case 0: return t_lit(pick(5) - 1);
            case 1: return t_var("x", pick(3) - 1);
            case 2: return t_var("n");
            default: return t_read("a", t_var("x", pick(3) - 1), pick(2));
        }
    }

    FormulaPtr formula(const ArraySystem& sys, int depth) {
        if (depth == 0 || pick(3) == 0) {
            Rel r = static_cast<Rel>(pick(6));
            return f_atom(term(sys, false), r, term(sys, false));
        }
        switch (pick(4)) {
            case 0: return f_not(formula(sys, depth - 1));
            case 1: return f_and({formula(sys, depth - 1), formula(sys, depth - 1)});
            case 2: return f_or({formula(sys, depth - 1), formula(sys, depth - 1)});
            default: {
                auto body = formula(sys, depth - 1);
                return pick(2) ? f_forall("q", body) : f_exists("q", body);
            }
        }
    }
};

}  // namespace

TEST_CASE("round-trip on 200 random documents") {
    Gen gen(20240817);
    for (int iter = 0; iter < 200; ++iter) {
        ArraySystem sys;
        sys.vocab.add("n", VarInfo{Sort::Index, true, "", {}, {}});
        sys.vocab.add("x", VarInfo{Sort::Index, false, "", {}, {}});
        sys.vocab.add("a", VarInfo{Sort::Array, false, "n", {}, {}});
        sys.vocab.extent = "n";
        sys.init = gen.formula(sys, 3);
        for (int c = 0; c <= gen.pick(3); ++c) {
            GuardedCommand cmd;
            cmd.name = "c" + std::to_string(c);
            cmd.guard = gen.formula(sys, 2);
            int k = gen.pick(2) + 1;
            for (int u = 0; u < k; ++u) {
                Update up;
                if (gen.pick(2) && u == 0) {
                    up.kind = gen.pick(2) ? Update::Kind::SetIndex : Update::Kind::HavocIndex;
                    up.target = "x";
                    if (up.kind == Update::Kind::SetIndex) up.rhs = gen.term(sys, true);
                } else {
                    up.kind = gen.pick(2) ? Update::Kind::SetCell : Update::Kind::HavocCell;
                    up.target = "a";
                    up.cell = t_var("x", u);  // distinct cells
                    if (up.kind == Update::Kind::SetCell) up.rhs = gen.term(sys, false);
                }
                cmd.updates.push_back(std::move(up));
            }
            sys.commands.push_back(std::move(cmd));
        }
        std::string text = print_system(sys);
        CAPTURE(text);
        ArraySystem back = parse_system(text);
        CHECK(equal_systems(sys, back));
    }
}
