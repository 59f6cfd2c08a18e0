#include "regabs/engine/transition.hpp"

#include <algorithm>

namespace regabs::engine {

using namespace regabs::logic;
using namespace regabs::wa;
using solver::Clause;

namespace {

bool quantifier_free(const FormulaPtr& f) {
    if (f->kind == Formula::Kind::Exists || f->kind == Formula::Kind::Forall) return false;
    for (const auto& k : f->kids)
        if (!quantifier_free(k)) return false;
    return true;
}

std::optional<bool> static_term_eq(const Term& a, const Term& b) {
    Term x = a, y = b;
    int dx = x.offset, dy = y.offset;
    x.offset = y.offset = 0;
    if (x == y) return dx == dy;
    if (a.kind == Term::Kind::Lit && b.kind == Term::Kind::Lit) return a.offset == b.offset;
    return std::nullopt;
}

}  // namespace

solver::Query CompactCommand::query(const Vocabulary& vocab) const {
    solver::Query q;
    std::vector<FormulaPtr> parts = {guard_qf};
    for (const auto& u : index_updates) parts.push_back(u);
    q.formula = f_and(std::move(parts));
    std::map<std::string, solver::ArrayDef> defs;
    for (const auto& a : copied_arrays) {
        solver::ArrayDef d;
        d.lhs = primed(a);
        d.base = a;
        defs.emplace(a, std::move(d));
    }
    for (const auto& w : writes) {
        auto it = defs.find(w.array);
        if (it == defs.end()) {
            solver::ArrayDef d;
            d.lhs = primed(w.array);
            d.base = w.array;
            it = defs.emplace(w.array, std::move(d)).first;
        }
        it->second.writes.push_back({w.pos, w.value});
    }
    for (auto& [a, d] : defs) q.defs.push_back(std::move(d));
    (void)vocab;
    return q;
}

CompactCommand compact(const GuardedCommand& cmd, const Vocabulary& vocab) {
    check_sorted(cmd, vocab);
    CompactCommand c;
    c.name = cmd.name;

    FormulaPtr guard = nnf(resolve_sizes(cmd.guard, vocab));
    std::vector<FormulaPtr> qf, quant;
    std::vector<FormulaPtr> conjuncts =
        guard->kind == Formula::Kind::And ? guard->kids : std::vector<FormulaPtr>{guard};
    for (const auto& g : conjuncts)
        (quantifier_free(g) ? qf : quant).push_back(g);
    c.guard_qf = f_and(std::move(qf));
    c.guard_quantified = f_and(std::move(quant));

    std::set<std::string> written;
    for (const auto& u : cmd.updates) {
        switch (u.kind) {
            case Update::Kind::SetIndex:
                c.index_updates.push_back(f_atom(t_var(primed(u.target)), Rel::Eq,
                                                 resolve_sizes(u.rhs, vocab)));
                break;
            case Update::Kind::HavocIndex: {
                const auto& vi = vocab.info(u.target);
                Term lo = vi.lo ? resolve_sizes(*vi.lo, vocab) : t_lit(1);
                Term hi = vi.hi ? resolve_sizes(*vi.hi, vocab) : t_var(vocab.extent);
                c.index_updates.push_back(f_atom(lo, Rel::Le, t_var(primed(u.target))));
                c.index_updates.push_back(f_atom(t_var(primed(u.target)), Rel::Le, hi));
                break;
            }
            case Update::Kind::SetCell:
                c.writes.push_back({u.target, resolve_sizes(u.cell, vocab),
                                    resolve_sizes(u.rhs, vocab)});
                written.insert(u.target);
                break;
            case Update::Kind::HavocCell:
                c.writes.push_back({u.target, resolve_sizes(u.cell, vocab), std::nullopt});
                written.insert(u.target);
                break;
        }
    }
    // unassigned index variables are copied (parameters are immutable anyway)
    std::set<std::string> assigned;
    for (const auto& u : cmd.updates)
        if (u.kind == Update::Kind::SetIndex || u.kind == Update::Kind::HavocIndex)
            assigned.insert(u.target);
    for (const auto& x : vocab.int_vars())
        if (!vocab.is_param(x) && !assigned.count(x))
            c.index_updates.push_back(f_atom(t_var(primed(x)), Rel::Eq, t_var(x)));
    for (const auto& a : vocab.array_vars())
        if (!written.count(a)) c.copied_arrays.push_back(a);
    return c;
}

namespace {

std::vector<Atom> guard_atoms(const FormulaPtr& f) {
    std::vector<Atom> out;
    if (f->kind == Formula::Kind::Atom) out.push_back(f->atom);
    if (f->kind == Formula::Kind::And)
        for (const auto& k : f->kids)
            if (k->kind == Formula::Kind::Atom) out.push_back(k->atom);
    return out;
}

// One justification of a primed read a'[s]: the unprimed source term plus
// index side conditions that must hold (their negations join the clause).
struct Justification {
    Term source;                  // unprimed replacement for the read
    std::vector<Atom> clause_lits;  // index literals added to the clause
    bool ok = true;
};

std::vector<Justification> justify_read(const Term& read, const CompactCommand& cmd) {
    std::vector<Justification> out;
    const std::string arr = unprimed(read.name);
    const Term& s = *read.idx;
    std::vector<const CompactCommand::Write*> ws;
    for (const auto& w : cmd.writes)
        if (w.array == arr) ws.push_back(&w);

    // frame: s differs from every write position
    {
        Justification j;
        Term src = read;
        src.name = arr;
        j.source = src;
        for (const auto* w : ws) {
            auto st = static_term_eq(s, w->pos);
            if (st.has_value() && *st) { j.ok = false; break; }  // surely overwritten
            if (!st.has_value())
                j.clause_lits.push_back(canon(Atom{s, Rel::Eq, w->pos}));
        }
        if (j.ok) out.push_back(std::move(j));
    }
    // copy: s hits a write with a known value
    for (const auto* w : ws) {
        if (!w->value) continue;  // havoc: nothing known about the written cell
        auto st = static_term_eq(s, w->pos);
        if (st.has_value() && !*st) continue;
        Justification j;
        Term src = *w->value;
        src.offset += read.offset;
        j.source = src;
        if (!st.has_value()) j.clause_lits.push_back(canon(Atom{s, Rel::Ne, w->pos}));
        // a later write to the same cell would shadow this one; with at most
        // one update per cell (checked at parse) this cannot happen
        out.push_back(std::move(j));
    }
    return out;
}

Term replace_read(const Term& t, const Term& read, const Term& source) {
    if (t.kind == Term::Kind::Read && cmp(t, read) == 0) return source;
    return t;
}

}  // namespace

std::vector<Clause> instantiate_templates(const CompactCommand& cmd, const PredicateSet& P,
                                          const Vocabulary& vocab) {
    (void)vocab;
    // instantiation points: terms of the command's data atoms, the write
    // positions, and the designated variable itself
    std::vector<Atom> datoms = guard_atoms(cmd.guard_qf);
    for (const auto& w : cmd.writes) {
        if (w.value && w.value->kind == Term::Kind::Read)
            datoms.push_back(Atom{*w.value, Rel::Eq, *w.value});
        datoms.push_back(Atom{t_read(w.array, w.pos), Rel::Eq, t_read(w.array, w.pos)});
    }
    std::vector<Term> points = term_universe(datoms, P);
    points.push_back(t_var(kDesignated));

    std::vector<Atom> guards;
    for (const auto& a : guard_atoms(cmd.guard_qf)) guards.push_back(canon(a));

    std::vector<Clause> out;
    std::vector<Clause> seen;
    auto emit = [&](Clause c) {
        std::sort(c.begin(), c.end(), [](const Atom& a, const Atom& b) { return cmp(a, b) < 0; });
        c.erase(std::unique(c.begin(), c.end(),
                            [](const Atom& a, const Atom& b) { return cmp(a, b) == 0; }),
                c.end());
        for (const auto& s : seen)
            if (solver::cmp(s, c) == 0) return;
        seen.push_back(c);
        out.push_back(std::move(c));
    };

    for (size_t k = 1; k <= P.m(); ++k) {
        for (const auto& t : points) {
            for (int positive = 1; positive >= 0; --positive) {
                Atom conclusion = P.instantiate(k, t, true);
                if (!positive) conclusion = negate(conclusion);
                // justify every primed read of the conclusion
                std::vector<Term> reads = P.reads(k, t, true);
                std::vector<std::vector<Justification>> options;
                bool feasible = true;
                for (const auto& rd : reads) {
                    auto js = justify_read(rd, cmd);
                    if (js.empty()) { feasible = false; break; }
                    options.push_back(std::move(js));
                }
                if (!feasible) continue;

                std::vector<size_t> pick(options.size(), 0);
                while (true) {
                    Clause clause;
                    Atom premise = conclusion;
                    bool ok = true;
                    for (size_t i = 0; i < options.size(); ++i) {
                        const Justification& j = options[i][pick[i]];
                        premise.lhs = replace_read(premise.lhs, reads[i], j.source);
                        premise.rhs = replace_read(premise.rhs, reads[i], j.source);
                        for (const auto& lit : j.clause_lits) clause.push_back(lit);
                    }
                    // the premise either follows from the guard or joins the
                    // clause negated; either way it must be expressible
                    Atom pc = canon(premise);
                    bool premise_static_true = false;
                    {
                        Term l = pc.lhs, r = pc.rhs;
                        int dl = l.offset, dr = r.offset;
                        l.offset = r.offset = 0;
                        if (cmp(l, r) == 0) premise_static_true = eval_rel(pc.rel, dl, dr);
                    }
                    bool in_guard = false;
                    for (const auto& g : guards)
                        if (cmp(g, pc) == 0) in_guard = true;
                    if (!premise_static_true && !in_guard) {
                        if (P.match(premise, true).has_value()) {
                            clause.push_back(negate(premise));
                        } else {
                            ok = false;
                        }
                    }
                    if (ok) {
                        clause.push_back(conclusion);
                        emit(std::move(clause));
                    }
                    // next combination
                    size_t i = 0;
                    while (i < pick.size() && ++pick[i] == options[i].size()) pick[i++] = 0;
                    if (pick.empty() || i == pick.size()) break;
                }
            }
        }
    }
    return out;
}

namespace {

FOWPtr clause_schema_to_fow(const Abstraction& ab, const Clause& c, const std::string& var) {
    Clause inst;
    for (const auto& a : c) inst.push_back(substitute(a, t_var(var), kDesignated));
    return kappa_clause(ab, inst, true);
}

bool mentions_designated_clause(const Clause& c) {
    for (const auto& a : c) {
        auto fv = free_vars(f_atom(a));
        if (fv.count(kDesignated)) return true;
    }
    return false;
}

}  // namespace

TransitionAbstraction abstract_transition(Abstraction& ab,
                                          const std::vector<GuardedCommand>& cmds,
                                          const CstrOptions& opt) {
    TransitionAbstraction out;
    out.automaton = TrackAutomaton::empty(ab.relation_layout());
    bool first = true;

    for (const auto& cmd : cmds) {
        CommandAbstraction ca;
        ca.name = cmd.name;

        FormulaPtr full = command_to_transition(cmd, ab.vocab);
        NormalizedSia n = normalize_sia(full, ab.vocab);

        std::vector<FOWPtr> disjuncts;
        for (const auto& d : n.disjuncts) {
            DisjunctInfo info;
            std::vector<FOWPtr> parts;
            for (const auto& a : d.index_atoms) {
                parts.push_back(kappa_atom(ab, a, true));
                info.guard_text += (info.guard_text.empty() ? "" : " & ") + to_string(a);
            }
            {
                solver::Query psi;
                std::vector<FormulaPtr> conj;
                for (const auto& a : d.data_atoms) {
                    conj.push_back(f_atom(a));
                    info.data_text.push_back(to_string(a));
                }
                psi.formula = f_and(std::move(conj));
                info.constraint = cstr(ab, psi, d.data_atoms, true, opt);
                ca.complete = ca.complete && info.constraint.complete;
                for (const auto& c : info.constraint.clauses)
                    parts.push_back(kappa_clause(ab, c, true));
            }
            disjuncts.push_back(w_and(std::move(parts)));
            ca.disjuncts.push_back(std::move(info));
        }
        FOWPtr body = w_or(std::move(disjuncts));
        for (auto it = n.prefix.rbegin(); it != n.prefix.rend(); ++it)
            body = it->universal ? w_forall(it->var, body) : w_exists(it->var, body);

        // template-derived clauses, solver-verified and shrunk to minimal
        CompactCommand cc = compact(cmd, ab.vocab);
        solver::Query cq = cc.query(ab.vocab);
        std::set<std::string> used;
        for (const auto& nm : ab.vocab.order) used.insert(nm);
        std::string iv = fresh_name("_pos", used);
        std::vector<FOWPtr> extra = {body};
        std::vector<FOWPtr> schemas;
        for (Clause c : instantiate_templates(cc, ab.P, ab.vocab)) {
            Clause ground;
            for (const auto& a : c) ground.push_back(substitute(a, t_var(iv), kDesignated));
            if (!check_implication_valid(ab.session, cq, ground, ab.vocab)) continue;
            // deterministic shrink
            for (size_t i = 0; i < ground.size();) {
                if (ground.size() <= 1) break;
                Clause sub = ground;
                Clause sub_c = c;
                sub.erase(sub.begin() + static_cast<long>(i));
                sub_c.erase(sub_c.begin() + static_cast<long>(i));
                if (check_implication_valid(ab.session, cq, sub, ab.vocab)) {
                    ground = std::move(sub);
                    c = std::move(sub_c);
                } else {
                    ++i;
                }
            }
            if (kappa_trivially_valid(ab, c, true)) continue;
            bool dup = false;
            for (const auto& prev : ca.template_clauses)
                if (solver::cmp(prev, c) == 0) dup = true;
            if (dup) continue;
            ca.template_clauses.push_back(c);
            if (mentions_designated_clause(c)) {
                schemas.push_back(clause_schema_to_fow(ab, c, iv));
            } else {
                extra.push_back(kappa_clause(ab, c, true));
            }
        }
        if (!schemas.empty()) extra.push_back(w_forall(iv, w_and(std::move(schemas))));

        FOWPtr cmd_fow = w_and(std::move(extra));
        FOCompilerEnv env{ab.relation_layout()};
        TrackAutomaton cmd_aut = intersect(compile(cmd_fow, env), ab.relation_space());

        out.commands.push_back(std::move(ca));
        out.complete = out.complete && out.commands.back().complete;
        out.automaton = first ? std::move(cmd_aut) : unite(out.automaton, cmd_aut);
        first = false;
    }
    return out;
}

TrackAutomaton abstract_transition_formula(Abstraction& ab, const FormulaPtr& f,
                                           const CstrOptions& opt) {
    NormalizedSia n = normalize_sia(f, ab.vocab);
    std::vector<FOWPtr> disjuncts;
    for (const auto& d : n.disjuncts) {
        std::vector<FOWPtr> parts;
        for (const auto& a : d.index_atoms) parts.push_back(kappa_atom(ab, a, true));
        {
            solver::Query psi;
            std::vector<FormulaPtr> conj;
            for (const auto& a : d.data_atoms) conj.push_back(f_atom(a));
            psi.formula = f_and(std::move(conj));
            AbstractionConstraint ac = cstr(ab, psi, d.data_atoms, true, opt);
            for (const auto& c : ac.clauses) parts.push_back(kappa_clause(ab, c, true));
        }
        disjuncts.push_back(w_and(std::move(parts)));
    }
    FOWPtr body = w_or(std::move(disjuncts));
    for (auto it = n.prefix.rbegin(); it != n.prefix.rend(); ++it)
        body = it->universal ? w_forall(it->var, body) : w_exists(it->var, body);
    FOCompilerEnv env{ab.relation_layout()};
    return intersect(compile(body, env), ab.relation_space());
}

TrackAutomaton lift_to_relation(const Abstraction& ab, const TrackAutomaton& s, bool next) {
    TrackLayout rel = ab.relation_layout();
    size_t k = ab.state_layout().size();
    std::vector<size_t> map(k);
    for (size_t i = 0; i < k; ++i) map[i] = next ? k + i : i;
    return minimize(lift(s, rel, map));
}

}  // namespace regabs::engine
