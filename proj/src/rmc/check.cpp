#include "regabs/rmc/check.hpp"

#include <algorithm>

namespace regabs::rmc {

using namespace regabs::logic;
using namespace regabs::wa;
using engine::Abstraction;

std::string to_string(Verdict::Kind k) {
    switch (k) {
        case Verdict::Kind::Proved: return "Proved";
        case Verdict::Kind::Counterexample: return "AbstractCounterexample";
        case Verdict::Kind::Unknown: return "Unknown";
    }
    return "?";
}

namespace {

// Decodes a convolved word over a plain state layout (nat tracks followed by
// one word track).
engine::AbstractState decode_state(const TrackLayout& layout, const ConvWord& w) {
    auto parts = deconvolve(layout, w);
    engine::AbstractState s;
    for (size_t t = 0; t < layout.size(); ++t) {
        if (layout.tracks[t].bits == 0) s.ints.push_back(parts[t].nat);
        else s.word = parts[t].word;
    }
    return s;
}

engine::AbstractTrace decode_trace(const TrackLayout& layout, const std::vector<ConvWord>& raw) {
    engine::AbstractTrace tr;
    size_t word_tracks = 0;
    for (const auto& t : layout.tracks) word_tracks += t.bits > 0;
    if (word_tracks != 1) return tr;  // not a plain state layout
    for (const auto& w : raw) tr.states.push_back(decode_state(layout, w));
    return tr;
}

std::vector<ConvWord> reconstruct(const std::vector<TrackAutomaton>& iterates,
                                  const TrackAutomaton& final_hit, const SafetyInstance& inst) {
    std::vector<ConvWord> trace;
    ConvWord cur = *witness(final_hit);
    trace.push_back(cur);
    auto level_of = [&](const ConvWord& w) {
        for (size_t j = 0; j < iterates.size(); ++j)
            if (member(iterates[j], w)) return j;
        return iterates.size();
    };
    size_t level = level_of(cur);
    while (level > 0) {
        TrackAutomaton pre = pre_image(singleton(inst.I.layout, cur), inst.T);
        TrackAutomaton step = intersect(pre, iterates[level - 1]);
        auto w = witness(step);
        if (!w) break;  // should not happen; be defensive about partial traces
        cur = *w;
        trace.push_back(cur);
        size_t l2 = level_of(cur);
        level = l2 < level ? l2 : level - 1;
    }
    std::reverse(trace.begin(), trace.end());
    return trace;
}

}  // namespace

Verdict check_invariant(const SafetyInstance& inst, const TrackAutomaton& inv) {
    Verdict v;
    if (!includes(inv, inst.I)) {
        v.kind = Verdict::Kind::Unknown;
        auto w = witness(difference(inst.I, inv));
        v.reason = "invariant does not cover the initial set; witness " +
                   (w ? format_word(inst.I.layout, *w) : std::string("?"));
        return v;
    }
    TrackAutomaton post = post_image(inv, inst.T);
    if (!includes(inv, post)) {
        v.kind = Verdict::Kind::Unknown;
        auto w = witness(difference(post, inv));
        v.reason = "invariant is not inductive; escaping state " +
                   (w ? format_word(inst.I.layout, *w) : std::string("?"));
        return v;
    }
    TrackAutomaton hit = intersect(inv, inst.B);
    if (!is_empty(hit)) {
        v.kind = Verdict::Kind::Unknown;
        auto w = witness(hit);
        v.reason = "invariant intersects the bad set; witness " +
                   (w ? format_word(inst.I.layout, *w) : std::string("?"));
        return v;
    }
    v.kind = Verdict::Kind::Proved;
    return v;
}

Verdict check_safety(const SafetyInstance& inst, const CheckStrategy& strategy) {
    if (strategy.invariant) {
        Verdict v = check_invariant(inst, *strategy.invariant);
        if (v.kind == Verdict::Kind::Proved) return v;
        v.reason = "certificate rejected: " + v.reason;
        return v;
    }

    std::vector<TrackAutomaton> iterates;
    TrackAutomaton r = minimize(inst.I);
    for (size_t k = 0; k <= strategy.max_iterations; ++k) {
        TrackAutomaton hit = intersect(r, inst.B);
        if (!is_empty(hit)) {
            iterates.push_back(r);
            Verdict v;
            v.kind = Verdict::Kind::Counterexample;
            v.iterations = k;
            v.raw_trace = reconstruct(iterates, hit, inst);
            v.trace = decode_trace(inst.I.layout, v.raw_trace);
            return v;
        }
        TrackAutomaton post = post_image(r, inst.T);
        if (includes(r, post)) {
            Verdict v = check_invariant(inst, r);  // re-certify the fixpoint
            v.iterations = k;
            if (v.kind != Verdict::Kind::Proved)
                v.reason = "fixpoint failed re-certification: " + v.reason;
            return v;
        }
        iterates.push_back(r);
        r = unite(r, post);
    }
    Verdict v;
    v.kind = Verdict::Kind::Unknown;
    v.iterations = strategy.max_iterations;
    v.reason = "iteration bound reached without a fixpoint (" +
               std::to_string(strategy.max_iterations) + " rounds, last size " +
               std::to_string(r.num_states()) + " states)";
    return v;
}

namespace {

struct Skolemized {
    Vocabulary vocab;
    FormulaPtr psi1, psi2;
    std::vector<std::pair<bool, FormulaPtr>> fairness;  // (gf, body)
    PropShape::Kind kind;
};

Skolemized skolemize_shape(const ArraySystem& sys, const TemporalProperty& prop) {
    PropShape shape = decompose(prop.ast, sys.vocab);
    if (shape.kind == PropShape::Kind::Other)
        throw NotAbstractable("property shape not supported: " + to_string(prop.ast));
    Skolemized out;
    out.vocab = sys.vocab;
    out.kind = shape.kind;
    out.psi1 = shape.psi1;
    out.psi2 = shape.psi2;
    std::set<std::string> used;
    for (const auto& n : out.vocab.order) used.insert(n);
    for (const auto& q : shape.quantified) {
        // predicate files declare the Skolem constants they mention; a
        // quantifier with the same name picks up that parameter
        std::string c;
        if (out.vocab.has(q) && out.vocab.is_param(q)) {
            c = q;
        } else {
            c = fresh_name("c_" + q, used);
            used.insert(c);
            out.vocab.add(c, VarInfo{Sort::Index, true, "", {}, {}});
        }
        if (c != q) {
            out.psi1 = substitute(out.psi1, t_var(c), q);
            out.psi2 = substitute(out.psi2, t_var(c), q);
        }
    }
    for (const auto& fp : shape.fairness) out.fairness.push_back({fp.gf, fp.body});
    return out;
}

}  // namespace

BuiltSafety build_safety_instance(const ArraySystem& sys, const TemporalProperty& prop,
                                  std::vector<IndexedPredicate> preds,
                                  solver::SolverSession& session,
                                  const engine::CstrOptions& opt) {
    Skolemized sk = skolemize_shape(sys, prop);
    if (sk.kind != PropShape::Kind::Safety)
        throw NotAbstractable("expected a safety-shaped property");
    BuiltSafety out;
    out.ab = std::make_shared<Abstraction>(sk.vocab, engine::PredicateSet(preds, sk.vocab),
                                           session);
    out.instance.I =
        engine::abstract_state_formula(*out.ab, f_and({sys.init, sk.psi1}), opt).automaton;
    out.transition_log = engine::abstract_transition(*out.ab, sys.commands, opt);
    out.instance.T = out.transition_log.automaton;
    out.instance.B = engine::abstract_state_formula(*out.ab, f_not(sk.psi2), opt).automaton;
    return out;
}

BuiltLiveness build_liveness_instance(const ArraySystem& sys, const TemporalProperty& prop,
                                      std::vector<IndexedPredicate> preds,
                                      solver::SolverSession& session,
                                      const engine::CstrOptions& opt) {
    Skolemized sk = skolemize_shape(sys, prop);
    if (sk.kind != PropShape::Kind::Liveness && sk.kind != PropShape::Kind::Recurrence)
        throw NotAbstractable("expected a liveness- or recurrence-shaped property");
    BuiltLiveness out;
    out.ab = std::make_shared<Abstraction>(sk.vocab, engine::PredicateSet(preds, sk.vocab),
                                           session);
    out.instance.mode = sk.kind == PropShape::Kind::Recurrence ? LivenessMode::Recurrence
                                                               : LivenessMode::Eventually;
    out.instance.I =
        engine::abstract_state_formula(*out.ab, f_and({sys.init, sk.psi1}), opt).automaton;
    out.transition_log = engine::abstract_transition(*out.ab, sys.commands, opt);
    out.instance.T = out.transition_log.automaton;
    TrackAutomaton e =
        engine::abstract_state_formula(*out.ab, nnf(f_not(sk.psi2)), opt).automaton;
    out.instance.F = difference(out.ab->state_space(), e);
    for (const auto& [gf, body] : sk.fairness) {
        FairnessObligation ob;
        ob.gf = gf;
        ob.E = engine::abstract_state_formula(*out.ab, body, opt).automaton;
        out.instance.fairness.push_back(std::move(ob));
    }
    return out;
}

BuiltSafety build_progress_instance(const ArraySystem& sys, const TemporalProperty& prop,
                                    std::vector<IndexedPredicate> preds,
                                    solver::SolverSession& session,
                                    const engine::CstrOptions& opt) {
    Skolemized sk = skolemize_shape(sys, prop);
    if (sk.kind != PropShape::Kind::Liveness)
        throw NotAbstractable("progress instances come from liveness-shaped properties");
    if (sys.commands.empty()) throw NotAbstractable("progress check needs a command-based system");
    BuiltSafety out;
    out.ab = std::make_shared<Abstraction>(sk.vocab, engine::PredicateSet(preds, sk.vocab),
                                           session);
    out.instance.I =
        engine::abstract_state_formula(*out.ab, f_and({sys.init, sk.psi1}), opt).automaton;

    FormulaPtr goal = nnf(f_not(sk.psi2));
    out.transition_log = engine::abstract_transition(*out.ab, sys.commands, opt);
    TrackAutomaton stay =
        engine::abstract_state_formula(*out.ab, goal, opt).automaton;
    out.instance.T =
        intersect(out.transition_log.automaton, engine::lift_to_relation(*out.ab, stay, false));

    // bad: no command enabled and the goal still not reached
    std::vector<FormulaPtr> blocked = {goal};
    for (const auto& cmd : sys.commands) blocked.push_back(nnf(f_not(cmd.guard)));
    out.instance.B = engine::abstract_state_formula(*out.ab, f_and(std::move(blocked)), opt)
                         .automaton;
    return out;
}

namespace {

struct MonodicCtx {
    const Vocabulary& vocab;
    std::vector<std::pair<TPropPtr, std::string>> monitors;  // G-subformula body -> array

    std::string monitor_for(const TPropPtr& body) {
        for (const auto& [b, g] : monitors)
            if (to_string(b) == to_string(body)) return g;
        std::string g = "g" + std::to_string(monitors.size() + 1);
        monitors.push_back({body, g});
        return g;
    }
};

// FO[phi]: first-order representation with monitor reads for G-subformulas.
FormulaPtr fo_rep(MonodicCtx& ctx, const TPropPtr& p) {
    switch (p->kind) {
        case TProp::Kind::Leaf:
            return p->leaf;
        case TProp::Kind::Not:
            return f_not(fo_rep(ctx, p->kids[0]));
        case TProp::Kind::And:
        case TProp::Kind::Or: {
            std::vector<FormulaPtr> kids;
            for (const auto& k : p->kids) kids.push_back(fo_rep(ctx, k));
            return p->kind == TProp::Kind::And ? f_and(std::move(kids)) : f_or(std::move(kids));
        }
        case TProp::Kind::Exists:
            return f_exists(p->var, fo_rep(ctx, p->kids[0]));
        case TProp::Kind::Forall:
            return f_forall(p->var, fo_rep(ctx, p->kids[0]));
        case TProp::Kind::G: {
            auto fv = free_vars(p);
            std::string pos;
            for (const auto& v : fv)
                if (!ctx.vocab.has(v)) pos = v;
            std::string g = ctx.monitor_for(p->kids[0]);
            Term idx = pos.empty() ? t_lit(1) : t_var(pos);
            return f_atom(t_read(g, idx), Rel::Ne, t_lit(0));
        }
        case TProp::Kind::F:
            // F psi = not G (not psi)
            return f_not(fo_rep(ctx, tp_g(tp_not(p->kids[0]))));
    }
    return f_true();
}

bool index_bounded(const Vocabulary& vocab) {
    for (const auto& x : vocab.int_vars())
        if (!vocab.is_param(x) && !vocab.vars.at(x).lo) return false;
    return true;
}

}  // namespace

MonodicReduction monodic_reduce(const ArraySystem& sys, const TemporalProperty& prop) {
    if (!classify(prop.ast, sys.vocab).monodic)
        throw NotMonodic("property has a temporal subformula with several free variables");
    if (!index_bounded(sys.vocab))
        throw NotIndexBounded("system index variables must carry declared bounds");

    // negate, push negations inward; G is handled natively, F via not-G-not
    SkolemResult sk = skolemize(prop.ast, sys.vocab);
    MonodicCtx ctx{sys.vocab, {}};
    TPropPtr neg = sk.property ? tp_not(sk.property) : tp_not(prop.ast);
    FormulaPtr fo_neg = fo_rep(ctx, neg);

    MonodicReduction out;
    out.product = sys;
    for (const auto& j : sk.fresh_index_vars)
        out.product.vocab.add(j, VarInfo{Sort::Index, false, "", t_lit(1),
                                         t_var(sys.vocab.extent)});
    for (const auto& c : sk.fresh_params)
        out.product.vocab.add(c, VarInfo{Sort::Index, true, "", {}, {}});
    for (const auto& [body, g] : ctx.monitors) {
        VarInfo vi;
        vi.sort = Sort::Array;
        vi.size_param = sys.vocab.extent;  // |g| = h
        out.product.vocab.add(g, vi);
        out.monitor_arrays.push_back(g);
    }

    const std::string h = sys.vocab.extent;
    std::set<std::string> used;
    for (const auto& n : out.product.vocab.order) used.insert(n);
    std::string i = fresh_name("i", used);

    out.init = f_and({sys.init, fo_neg});
    out.product.init = out.init;

    std::vector<FormulaPtr> steps;
    std::vector<TPropPtr> fair;
    for (const auto& [body, g] : ctx.monitors) {
        auto fv = free_vars(body);
        std::string pos;
        for (const auto& v : fv)
            if (!out.product.vocab.has(v) && !sys.vocab.has(v)) pos = v;
        // phi(i): the body with its free position variable renamed to i
        MonodicCtx inner{sys.vocab, ctx.monitors};
        FormulaPtr phi_i = fo_rep(inner, body);
        if (!pos.empty()) phi_i = substitute(phi_i, t_var(i), pos);
        FormulaPtr g_i = f_atom(t_read(g, t_var(i)), Rel::Ne, t_lit(0));
        FormulaPtr gp_i = f_atom(t_read(primed(g), t_var(i)), Rel::Ne, t_lit(0));
        steps.push_back(f_or({f_atom(t_var(i), Rel::Gt, t_var(h)),
                              f_iff(g_i, f_and({phi_i, gp_i}))}));
        fair.push_back(tp_g(tp_f(tp_leaf(f_or(
            {f_atom(t_var(i), Rel::Gt, t_var(h)), g_i, f_not(phi_i)})))));
    }
    out.monitor_transition = steps.empty() ? f_true() : f_forall(i, f_and(std::move(steps)));
    out.fairness = fair.empty() ? tp_leaf(f_true()) : tp_forall(i, tp_and(std::move(fair)));
    return out;
}

}  // namespace regabs::rmc
