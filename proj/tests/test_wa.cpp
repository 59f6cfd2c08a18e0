#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "regabs/wa/fo.hpp"
#include "regabs/wa/ops.hpp"
#include "support/fo_eval.hpp"

using namespace regabs;
using namespace regabs::wa;
using regabs::logic::Rel;
using testsupport::check_compile_agreement;

static FOCompilerEnv env_xy() { return FOCompilerEnv::for_vars({"x", "y"}, {}); }
static FOCompilerEnv env_xw(int bits) { return FOCompilerEnv::for_vars({"x"}, {{"w", bits}}); }

static void expect_agree(const FOWPtr& f, const FOCompilerEnv& env, long long nat_max = 4,
                         long long len_max = 4) {
    size_t n = check_compile_agreement(f, env, nat_max, len_max,
                                       [&](const testsupport::SmAssignment& a, bool t, bool) {
                                           std::string msg = "mismatch on " + to_string(f) + ":";
                                           for (auto& [k, v] : a.nats)
                                               msg += " " + k + "=" + std::to_string(v);
                                           for (auto& [k, w] : a.words) {
                                               msg += " " + k + "=[";
                                               for (int l : w) msg += std::to_string(l) + ",";
                                               msg += "]";
                                           }
                                           msg += t ? " eval=true member=false"
                                                    : " eval=false member=true";
                                           FAIL(msg);
                                       });
    CHECK(n > 0);
}

TEST_CASE("convolution of the paper example") {
    TrackLayout layout{{{"u", 1}, {"v", 1}}};
    TrackContent a, b;
    a.word = {0, 1};
    b.word = {0, 0, 0, 1};
    ConvWord w = convolve(layout, {a, b});
    REQUIRE(w.size() == 4);
    CHECK(render_zero_padded(layout, w) == "(0,0)(1,0)(0,0)(0,1)");
    auto parts = deconvolve(layout, w);
    CHECK(parts[0].word == a.word);
    CHECK(parts[1].word == b.word);
}

TEST_CASE("convolution with an empty track and equal lengths") {
    TrackLayout layout{{{"u", 1}, {"v", 1}}};
    TrackContent e, b;
    b.word = {1, 0};
    ConvWord w = convolve(layout, {e, b});
    REQUIRE(w.size() == 2);
    CHECK(w[0][0] == -1);
    CHECK(w[0][1] == 1);
    TrackContent c;
    c.word = {0, 1};
    ConvWord z = convolve(layout, {c, b});
    CHECK(z[0][0] == 0);
    CHECK(z[0][1] == 1);
    CHECK(z[1][0] == 1);
    CHECK(z[1][1] == 0);
}

TEST_CASE("round-trip of random track tuples") {
    TrackLayout layout{{{"n", 0}, {"u", 2}, {"v", 1}}};
    unsigned seed = 12345;
    auto rnd = [&]() { return seed = seed * 1664525u + 1013904223u; };
    for (int iter = 0; iter < 200; ++iter) {
        std::vector<TrackContent> parts(3);
        parts[0].is_nat = true;
        parts[0].nat = rnd() % 7;
        for (int t = 1; t <= 2; ++t) {
            size_t len = rnd() % 7;
            for (size_t i = 0; i < len; ++i)
                parts[static_cast<size_t>(t)].word.push_back(
                    static_cast<int>(rnd() % (t == 1 ? 4 : 2)));
        }
        ConvWord w = convolve(layout, parts);
        auto back = deconvolve(layout, w);
        CHECK(back[0].nat == parts[0].nat);
        CHECK(back[1].word == parts[1].word);
        CHECK(back[2].word == parts[2].word);
    }
}

TEST_CASE("compile: equality of two naturals") {
    auto f = w_cmp(n_var("x"), Rel::Eq, n_var("y"));
    expect_agree(f, env_xy(), 5);
}

TEST_CASE("compile: comparisons with offsets and clamping") {
    expect_agree(w_cmp(n_var("x", 2), Rel::Le, n_var("y")), env_xy(), 5);
    expect_agree(w_cmp(n_var("x", -2), Rel::Eq, n_var("y")), env_xy(), 5);
    expect_agree(w_cmp(n_var("x"), Rel::Lt, n_var("x", 1)), env_xy(), 6);
    expect_agree(w_cmp(n_var("x", -1), Rel::Ge, n_var("x", -2)), env_xy(), 6);
    expect_agree(w_cmp(n_var("x"), Rel::Gt, n_const(2)), env_xy(), 6);
    expect_agree(w_cmp(n_const(3), Rel::Ne, n_var("y", -1)), env_xy(), 6);
    expect_agree(w_cmp(n_const(1), Rel::Le, n_const(0)), env_xy(), 2);
}

TEST_CASE("compile: word length atoms") {
    expect_agree(w_cmp(n_len("w"), Rel::Eq, n_var("x")), env_xw(2), 3, 3);
    expect_agree(w_cmp(n_len("w", -1), Rel::Lt, n_var("x", 1)), env_xw(2), 3, 3);
    expect_agree(w_cmp(n_len("w"), Rel::Ge, n_const(2)), env_xw(1), 2, 4);
}

TEST_CASE("compile: Delta at a constant position") {
    expect_agree(w_delta(1, n_const(2), "w"), env_xw(2), 2, 4);
    expect_agree(w_delta(2, n_const(1), "w"), env_xw(2), 2, 4);
    expect_agree(w_delta(1, n_const(0), "w"), env_xw(1), 2, 3);
}

TEST_CASE("compile: Delta at variable positions") {
    expect_agree(w_delta(1, n_var("x"), "w"), env_xw(2), 4, 4);
    expect_agree(w_delta(2, n_var("x", 1), "w"), env_xw(2), 4, 3);
    expect_agree(w_delta(1, n_var("x", -1), "w"), env_xw(2), 4, 3);
    expect_agree(w_delta(1, n_var("x", -2), "w"), env_xw(1), 5, 4);
    expect_agree(w_delta(1, n_var("x", 2), "w"), env_xw(1), 5, 4);
}

TEST_CASE("compile: Delta at positions derived from the word itself") {
    expect_agree(w_delta(1, n_len("w"), "w"), env_xw(2), 2, 4);
    expect_agree(w_delta(1, n_len("w", -1), "w"), env_xw(2), 2, 4);
    expect_agree(w_delta(1, n_len("w", 1), "w"), env_xw(1), 2, 3);
}

TEST_CASE("compile: boolean structure and quantifiers") {
    auto d1 = w_delta(1, n_var("x"), "w");
    auto d2 = w_delta(2, n_var("x"), "w");
    expect_agree(w_and({d1, w_not(d2)}), env_xw(2), 3, 3);
    expect_agree(w_or({d1, d2}), env_xw(2), 3, 3);
    expect_agree(w_exists("q", w_cmp(n_var("q"), Rel::Eq, n_var("x"))), env_xy(), 4);
    expect_agree(w_exists("q", w_and({w_cmp(n_var("q"), Rel::Le, n_len("w")),
                                      w_delta(1, n_var("q"), "w")})),
                 env_xw(2), 2, 4);
    // all positions of w have bit 1 set
    expect_agree(w_forall("q", w_implies(w_and({w_cmp(n_const(1), Rel::Le, n_var("q")),
                                                w_cmp(n_var("q"), Rel::Le, n_len("w"))}),
                                         w_delta(1, n_var("q"), "w"))),
                 env_xw(2), 2, 4);
}

TEST_CASE("compile: exists over an unconstrained variable is the universe") {
    auto f = w_exists("q", w_cmp(n_var("q"), Rel::Eq, n_var("y")));
    FOCompilerEnv env = FOCompilerEnv::for_vars({"y"}, {});
    TrackAutomaton a = compile(f, env);
    CHECK(equivalent(a, universe(env.layout)));
}

TEST_CASE("boolean algebra sanity") {
    FOCompilerEnv env = env_xw(2);
    auto a = compile(w_delta(1, n_const(1), "w"), env);
    auto b = compile(w_cmp(n_var("x"), Rel::Le, n_len("w")), env);
    CHECK(equivalent(complement(complement(a)), a));
    CHECK(equivalent(intersect(a, universe(env.layout)), a));
    CHECK(equivalent(unite(a, b), unite(b, a)));
    CHECK(includes(unite(a, b), a));
    CHECK(!includes(a, unite(a, b)));
    CHECK(is_empty(intersect(a, complement(a))));
    CHECK(is_empty(compile(w_false(), env)));
    CHECK(includes(a, a));
}

TEST_CASE("complement respects the well-formed universe") {
    FOCompilerEnv env = env_xy();
    TrackAutomaton none = compile(w_false(), env);
    CHECK(equivalent(complement(none), universe(env.layout)));
}

TEST_CASE("witness returns a shortest accepted word") {
    FOCompilerEnv env = env_xy();
    auto f = w_and({w_cmp(n_var("x"), Rel::Eq, n_const(2)), w_cmp(n_var("y"), Rel::Le, n_var("x"))});
    auto a = compile(f, env);
    auto w = witness(a);
    REQUIRE(w.has_value());
    CHECK(w->size() == 2);  // x = 2 forces length 2
    auto parts = deconvolve(env.layout, *w);
    CHECK(parts[0].nat == 2);
    CHECK(parts[1].nat <= 2);
    CHECK(!witness(compile(w_false(), env)).has_value());
}

TEST_CASE("post_image over a simple successor relation") {
    // relation: x' = x + 1 over a single nat track
    FOCompilerEnv rel_env = FOCompilerEnv::for_vars({"x", "x'"}, {});
    TrackAutomaton r = compile(w_cmp(n_var("x'"), Rel::Eq, n_var("x", 1)), rel_env);
    FOCompilerEnv s_env = FOCompilerEnv::for_vars({"x"}, {});
    TrackAutomaton s = compile(w_cmp(n_var("x"), Rel::Eq, n_const(1)), s_env);
    TrackAutomaton post = post_image(s, r);
    TrackAutomaton expect = compile(w_cmp(n_var("x"), Rel::Eq, n_const(2)), s_env);
    CHECK(equivalent(post, expect));

    TrackAutomaton idr = compile(w_cmp(n_var("x'"), Rel::Eq, n_var("x")), rel_env);
    CHECK(equivalent(post_image(s, idr), s));
    CHECK(is_empty(post_image(compile(w_false(), s_env), r)));

    TrackAutomaton pre = pre_image(expect, r);
    CHECK(equivalent(pre, s));
}

TEST_CASE("post_image distributes over union") {
    FOCompilerEnv rel_env = FOCompilerEnv::for_vars({"x", "x'"}, {});
    TrackAutomaton r = compile(w_or({w_cmp(n_var("x'"), Rel::Eq, n_var("x", 1)),
                                     w_cmp(n_var("x'"), Rel::Eq, n_var("x", -1))}),
                               rel_env);
    FOCompilerEnv s_env = FOCompilerEnv::for_vars({"x"}, {});
    TrackAutomaton a = compile(w_cmp(n_var("x"), Rel::Eq, n_const(1)), s_env);
    TrackAutomaton b = compile(w_cmp(n_var("x"), Rel::Ge, n_const(3)), s_env);
    CHECK(equivalent(post_image(unite(a, b), r), unite(post_image(a, r), post_image(b, r))));
}

TEST_CASE("dump and dot are stable and sorted") {
    FOCompilerEnv env = env_xw(2);
    auto a = compile(w_delta(1, n_const(1), "w"), env);
    std::string d1 = dump(a);
    std::string d2 = dump(compile(w_delta(1, n_const(1), "w"), env));
    CHECK(d1 == d2);
    CHECK(export_dot(a).find("digraph") == 0);
    CHECK(export_dot(TrackAutomaton::empty(env.layout)).find("(empty)") != std::string::npos);
    TrackAutomaton u = universe(env.layout);
    CHECK(export_dot(u).find("->") != std::string::npos);
}

TEST_CASE("singleton and membership") {
    TrackLayout layout{{{"n", 0}, {"w", 2}}};
    TrackContent nat, word;
    nat.is_nat = true;
    nat.nat = 2;
    word.word = {3, 1};
    ConvWord w = convolve(layout, {nat, word});
    TrackAutomaton s = singleton(layout, w);
    CHECK(member(s, w));
    ConvWord other = convolve(layout, {nat, {false, 0, {3, 2}}});
    CHECK(!member(s, other));
    CHECK(equivalent(s, minimize(s)));
}
