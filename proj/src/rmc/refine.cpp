#include "regabs/rmc/refine.hpp"

#include <functional>

namespace regabs::rmc {

using namespace regabs::logic;
using engine::Abstraction;
using engine::AbstractState;
using engine::AbstractTrace;

namespace {

std::string step_name(const std::string& base, size_t j) {
    return base + "@" + std::to_string(j);
}

Term rename_term(const Term& t, size_t j, const Vocabulary& vocab) {
    switch (t.kind) {
        case Term::Kind::Lit:
            return t;
        case Term::Kind::Var: {
            Term r = t;
            if (vocab.has(unprimed(t.name)))
                r.name = is_primed(t.name) ? step_name(unprimed(t.name), j + 1)
                                           : step_name(t.name, j);
            return r;
        }
        case Term::Kind::Size:
            throw SortError("unresolved size in unrolling");
        case Term::Kind::Read: {
            Term r = t;
            r.name = is_primed(t.name) ? step_name(unprimed(t.name), j + 1)
                                       : step_name(t.name, j);
            r.idx = std::make_shared<const Term>(rename_term(*t.idx, j, vocab));
            return r;
        }
    }
    return t;
}

FormulaPtr rename_formula(const FormulaPtr& f, size_t j, const Vocabulary& vocab) {
    switch (f->kind) {
        case Formula::Kind::True:
        case Formula::Kind::False:
            return f;
        case Formula::Kind::Atom:
            return f_atom(Atom{rename_term(f->atom.lhs, j, vocab), f->atom.rel,
                               rename_term(f->atom.rhs, j, vocab)});
        default: {
            auto g = std::make_shared<Formula>(*f);
            for (auto& k : g->kids) k = rename_formula(k, j, vocab);
            return g;
        }
    }
}

// Quantifiers expanded over [0, hi]; sound for the range-guarded corpus.
FormulaPtr expand_bounded(const FormulaPtr& f, long long hi) {
    switch (f->kind) {
        case Formula::Kind::Exists:
        case Formula::Kind::Forall: {
            std::vector<FormulaPtr> parts;
            for (long long v = 0; v <= hi; ++v)
                parts.push_back(
                    expand_bounded(substitute(f->kids[0], t_lit(static_cast<int>(v)), f->var), hi));
            return f->kind == Formula::Kind::Exists ? f_or(std::move(parts))
                                                    : f_and(std::move(parts));
        }
        case Formula::Kind::Not:
            return f_not(expand_bounded(f->kids[0], hi));
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            std::vector<FormulaPtr> kids;
            for (const auto& k : f->kids) kids.push_back(expand_bounded(k, hi));
            return f->kind == Formula::Kind::And ? f_and(std::move(kids))
                                                 : f_or(std::move(kids));
        }
        default:
            return f;
    }
}

}  // namespace

bool trace_feasible_by_unrolling(const ArraySystem& sys, Abstraction& ab,
                                 const AbstractTrace& trace, size_t unroll_cycles) {
    if (trace.states.empty()) return true;
    const auto ints = ab.vocab.int_vars();
    long long extent = 0;
    for (size_t i = 0; i < ints.size(); ++i)
        if (ints[i] == ab.vocab.extent) extent = trace.states[0].ints[i];
    const long long hi = extent + 2;

    const size_t stem = trace.is_lasso() ? trace.cycle_start : trace.states.size();
    const size_t cycle_len = trace.is_lasso() ? trace.states.size() - trace.cycle_start : 0;

    std::vector<engine::CompactCommand> cmds;
    for (const auto& c : sys.commands) cmds.push_back(engine::compact(c, sys.vocab));

    auto state_at = [&](size_t j) -> const AbstractState& {
        if (j < trace.states.size()) return trace.states[j];
        return trace.states[stem + (j - stem) % cycle_len];
    };

    for (size_t rounds = trace.is_lasso() ? 1 : 0;
         rounds <= (trace.is_lasso() ? unroll_cycles : 0); ++rounds) {
        const size_t total = trace.is_lasso() ? stem + cycle_len * rounds + 1
                                              : trace.states.size();

        // step-independent conjuncts: initial condition and per-step state
        // valuations
        solver::Query base;
        std::vector<FormulaPtr> conj;
        conj.push_back(rename_formula(expand_bounded(resolve_sizes(sys.init, sys.vocab), hi), 0,
                                      sys.vocab));
        for (size_t j = 0; j < total; ++j) {
            const AbstractState& a = state_at(j);
            for (size_t i = 0; i < ints.size(); ++i)
                conj.push_back(f_atom(t_var(step_name(ints[i], j)), Rel::Eq,
                                      t_lit(static_cast<int>(a.ints[i]))));
            FormulaPtr phi = engine::phi_word(a.word, ab.P);
            conj.push_back(rename_formula(expand_bounded(phi, hi), j, sys.vocab));
        }
        if (trace.is_lasso()) {
            // window equality closes the concrete loop
            for (const auto& arr : sys.vocab.array_vars())
                for (long long p = 1; p <= extent; ++p)
                    conj.push_back(
                        f_atom(t_read(step_name(arr, stem), t_lit(static_cast<int>(p))), Rel::Eq,
                               t_read(step_name(arr, total - 1), t_lit(static_cast<int>(p)))));
        }
        base.formula = f_and(std::move(conj));

        // depth-first choice of a command per step, pruning unsatisfiable
        // prefixes
        std::function<bool(size_t, solver::Query)> dfs = [&](size_t j, solver::Query q) -> bool {
            auto v = ab.session.check_sat(q, sys.vocab);
            if (v.v == solver::V3::Unsat) return false;
            if (j + 1 >= total) return v.v == solver::V3::Sat;
            for (const auto& cc : cmds) {
                solver::Query q2 = q;
                std::vector<FormulaPtr> step = {
                    rename_formula(expand_bounded(cc.guard_qf, hi), j, sys.vocab),
                    rename_formula(expand_bounded(cc.guard_quantified, hi), j, sys.vocab)};
                for (const auto& u : cc.index_updates)
                    step.push_back(rename_formula(u, j, sys.vocab));
                q2.extra.push_back(f_and(std::move(step)));
                std::map<std::string, solver::ArrayDef> defs;
                for (const auto& arr : cc.copied_arrays) {
                    solver::ArrayDef d;
                    d.lhs = step_name(arr, j + 1);
                    d.base = step_name(arr, j);
                    defs.emplace(arr, std::move(d));
                }
                for (const auto& w : cc.writes) {
                    auto it = defs.find(w.array);
                    if (it == defs.end()) {
                        solver::ArrayDef d;
                        d.lhs = step_name(w.array, j + 1);
                        d.base = step_name(w.array, j);
                        it = defs.emplace(w.array, std::move(d)).first;
                    }
                    solver::ArrayDef::Write wr;
                    wr.pos = rename_term(w.pos, j, sys.vocab);
                    if (w.value) wr.value = rename_term(*w.value, j, sys.vocab);
                    it->second.writes.push_back(std::move(wr));
                }
                for (auto& [arr, d] : defs) q2.defs.push_back(std::move(d));
                if (dfs(j + 1, std::move(q2))) return true;
            }
            return false;
        };
        if (dfs(0, base)) return true;
    }
    return false;
}

RefineResult refine_loop(const ArraySystem& sys, const TemporalProperty& prop,
                         const std::vector<IndexedPredicate>& preds,
                         solver::SolverSession& session, const RefineOptions& opt) {
    RefineResult out;
    PropShape shape = decompose(prop.ast, sys.vocab);

    for (size_t round = 0; round <= opt.max_rounds; ++round) {
        engine::CstrOptions co = opt.base;
        co.max_clause_size = 1 + round;
        RefineRound log;
        log.clause_size_cap = co.max_clause_size;

        std::map<long long, Verdict> verdicts;
        std::shared_ptr<Abstraction> ab;
        if (shape.kind == PropShape::Kind::Safety) {
            BuiltSafety built = build_safety_instance(sys, prop, preds, session, co);
            ab = built.ab;
            for (const auto& c : built.transition_log.commands)
                for (const auto& d : c.disjuncts) log.clauses_used += d.constraint.clauses.size();
            verdicts = fixed_param_check(*ab, built.instance, opt.extents, opt.fixed);
        } else if (shape.kind == PropShape::Kind::Liveness ||
                   shape.kind == PropShape::Kind::Recurrence) {
            BuiltLiveness built = build_liveness_instance(sys, prop, preds, session, co);
            ab = built.ab;
            for (const auto& c : built.transition_log.commands)
                for (const auto& d : c.disjuncts) log.clauses_used += d.constraint.clauses.size();
            verdicts = fixed_param_check(*ab, built.instance, opt.extents, opt.fixed);
        } else {
            out.verdict.kind = Verdict::Kind::Unknown;
            out.verdict.reason = "property shape not supported by the refinement loop";
            return out;
        }

        bool all_proved = true;
        std::optional<Verdict> cex;
        for (const auto& [n, v] : verdicts) {
            if (v.kind == Verdict::Kind::Counterexample && !cex) cex = v;
            if (v.kind != Verdict::Kind::Proved) all_proved = false;
        }
        if (all_proved) {
            log.outcome = "Proved";
            out.log.push_back(log);
            out.verdict.kind = Verdict::Kind::Proved;
            out.verdict.iterations = round;
            return out;
        }
        if (!cex) {
            log.outcome = "unknown at some extent";
            out.log.push_back(log);
            out.verdict.kind = Verdict::Kind::Unknown;
            out.verdict.reason = "fixed-parameter check inconclusive";
            return out;
        }
        if (trace_feasible_by_unrolling(sys, *ab, cex->trace, opt.unroll_cycles)) {
            log.outcome = "genuine counterexample";
            out.log.push_back(log);
            out.verdict = *cex;
            return out;
        }
        log.outcome = "spurious counterexample; injecting larger clauses";
        out.log.push_back(log);
    }
    out.verdict.kind = Verdict::Kind::Unknown;
    out.verdict.reason = "clause budget exhausted in the refinement loop";
    return out;
}

}  // namespace regabs::rmc
