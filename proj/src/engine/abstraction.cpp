#include "regabs/engine/abstraction.hpp"

#include <algorithm>

namespace regabs::engine {

using namespace regabs::logic;
using namespace regabs::wa;
using solver::Clause;

TrackLayout Abstraction::state_layout() const {
    TrackLayout l;
    for (const auto& x : vocab.int_vars()) l.tracks.push_back({x, 0});
    l.tracks.push_back({kWord, static_cast<int>(P.m())});
    return l;
}

TrackLayout Abstraction::relation_layout() const {
    TrackLayout l = state_layout();
    for (const auto& x : vocab.int_vars()) l.tracks.push_back({primed(x), 0});
    l.tracks.push_back({kWordNext, static_cast<int>(P.m())});
    return l;
}

TrackAutomaton Abstraction::state_space() const {
    FOCompilerEnv env{state_layout()};
    return compile(w_cmp(n_len(kWord), Rel::Eq, n_var(vocab.extent)), env);
}

TrackAutomaton Abstraction::relation_space() const {
    FOCompilerEnv env{relation_layout()};
    std::vector<FOWPtr> parts = {w_cmp(n_len(kWord), Rel::Eq, n_var(vocab.extent)),
                                 w_cmp(n_len(kWordNext), Rel::Eq, n_var(primed(vocab.extent)))};
    for (const auto& p : vocab.params())
        parts.push_back(w_cmp(n_var(primed(p)), Rel::Eq, n_var(p)));
    return compile(w_and(std::move(parts)), env);
}

NTerm index_to_nterm(const Term& t) {
    switch (t.kind) {
        case Term::Kind::Lit:
            return n_const(t.offset);
        case Term::Kind::Var:
            return n_var(t.name, t.offset);
        default:
            throw NotExpressible("index term expected: " + to_string(t));
    }
}

std::vector<Term> term_universe(const std::vector<Atom>& data_atoms, const PredicateSet& P) {
    std::vector<Term> t0;
    auto add_terms = [&](const Term& t) {
        if (t.kind == Term::Kind::Read) t0.push_back(*t.idx);
        else if (t.kind == Term::Kind::Var) t0.push_back(t);
    };
    for (const auto& a : data_atoms) {
        add_terms(a.lhs);
        add_terms(a.rhs);
    }
    for (const auto& t : P.plain_terms()) t0.push_back(t);
    std::sort(t0.begin(), t0.end());
    t0.erase(std::unique(t0.begin(), t0.end()), t0.end());

    // one level of composition: predicate offsets applied to offset-free terms
    std::vector<Term> out = t0;
    for (int off : P.designated_offsets()) {
        if (off == 0) continue;
        for (const auto& t : t0)
            if (t.offset == 0) out.push_back(t_shift(t, off));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Atom> atom_universe(const std::vector<Atom>& data_atoms, const PredicateSet& P,
                                bool with_primed) {
    std::vector<Term> terms = term_universe(data_atoms, P);
    std::vector<Atom> pos;
    std::vector<Atom> keys;
    for (int primed = 0; primed <= (with_primed ? 1 : 0); ++primed) {
        for (size_t k = 1; k <= P.m(); ++k) {
            for (const auto& t : terms) {
                Atom inst = P.instantiate(k, t, primed != 0);
                Atom key = canon(inst);
                bool dup = false;
                for (const auto& seen : keys)
                    if (cmp(seen, key) == 0) { dup = true; break; }
                if (dup) continue;
                keys.push_back(key);
                pos.push_back(inst);
            }
        }
    }
    std::vector<Atom> lits = pos;
    for (const auto& a : pos) lits.push_back(negate(a));
    return lits;
}

FOWPtr kappa_atom(const Abstraction& ab, const Atom& atom, bool with_primed) {
    if (!atom.is_data()) {
        return w_cmp(index_to_nterm(atom.lhs), atom.rel, index_to_nterm(atom.rhs));
    }
    auto lit = ab.P.match(atom, with_primed);
    if (!lit)
        throw NotExpressible("data atom is not a predicate instance: " + to_string(atom));
    std::vector<FOWPtr> bounds;
    for (const auto& rd : ab.P.reads(lit->k, lit->t, lit->primed)) {
        const std::string arr = unprimed(rd.name);
        NTerm pos = index_to_nterm(*rd.idx);
        bounds.push_back(w_cmp(n_const(1), Rel::Le, pos));
        bounds.push_back(w_cmp(pos, Rel::Le, n_var(ab.vocab.size_param_of(arr))));
    }
    FOWPtr delta = w_delta(static_cast<int>(lit->k), index_to_nterm(lit->t),
                           lit->primed ? kWordNext : kWord);
    if (!lit->positive) delta = w_not(delta);
    return w_implies(w_and(std::move(bounds)), delta);
}

FOWPtr kappa_clause(const Abstraction& ab, const Clause& c, bool with_primed) {
    std::vector<FOWPtr> lits;
    for (const auto& a : c) lits.push_back(kappa_atom(ab, a, with_primed));
    return w_or(std::move(lits));
}

FOWPtr kappa(const Abstraction& ab, const FormulaPtr& f, bool with_primed) {
    switch (f->kind) {
        case Formula::Kind::True:
            return w_true();
        case Formula::Kind::False:
            return w_false();
        case Formula::Kind::Atom:
            return kappa_atom(ab, f->atom, with_primed);
        case Formula::Kind::Not:
            return w_not(kappa(ab, f->kids[0], with_primed));
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            std::vector<FOWPtr> kids;
            for (const auto& k : f->kids) kids.push_back(kappa(ab, k, with_primed));
            return f->kind == Formula::Kind::And ? w_and(std::move(kids))
                                                 : w_or(std::move(kids));
        }
        case Formula::Kind::Exists:
        case Formula::Kind::Forall: {
            FOWPtr body = kappa(ab, f->kids[0], with_primed);
            return f->kind == Formula::Kind::Exists ? w_exists(f->var, body)
                                                    : w_forall(f->var, body);
        }
    }
    return w_true();
}

bool kappa_trivially_valid(const Abstraction& ab, const Clause& c, bool with_primed) {
    // fast path: a complementary literal pair
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = i + 1; j < c.size(); ++j)
            if (cmp(canon(negate(c[i])), canon(c[j])) == 0) return true;
    FOWPtr neg = w_not(kappa_clause(ab, c, with_primed));
    // validity over all of S_m: free variables get their own tracks
    TrackLayout layout = with_primed ? ab.relation_layout() : ab.state_layout();
    for (const auto& v : free_nat_vars(neg))
        if (layout.index_of(v) < 0) layout.tracks.push_back({v, 0});
    return is_empty(compile(neg, FOCompilerEnv{layout}));
}

AbstractionConstraint cstr(Abstraction& ab, const solver::Query& psi,
                           const std::vector<Atom>& data_atoms, bool with_primed,
                           const CstrOptions& opt) {
    AbstractionConstraint out;
    std::vector<Atom> lits = atom_universe(data_atoms, ab.P, with_primed);
    solver::MucResult r = enumerate_min_clauses(ab.session, psi, lits, ab.vocab, opt.muc);
    out.complete = r.complete;
    for (auto& c : r.clauses) {
        if (kappa_trivially_valid(ab, c, with_primed)) continue;
        if (c.size() > opt.max_clause_size && c.size() > 1) out.deferred.push_back(std::move(c));
        else out.clauses.push_back(std::move(c));
    }
    return out;
}

TrackAutomaton universe_abstraction(const Abstraction& ab) { return ab.state_space(); }

StateAbstraction abstract_state_formula(Abstraction& ab, const FormulaPtr& f,
                                        const CstrOptions& opt) {
    NormalizedSia n = normalize_sia(f, ab.vocab);
    StateAbstraction out;

    std::vector<FOWPtr> disjuncts;
    for (const auto& d : n.disjuncts) {
        DisjunctInfo info;
        std::vector<FOWPtr> parts;
        for (const auto& a : d.index_atoms) {
            parts.push_back(kappa_atom(ab, a, false));
            info.guard_text += (info.guard_text.empty() ? "" : " & ") + to_string(a);
        }
        {
            // a disjunct without data atoms still picks up the theory
            // tautologies over P (the paper's true^P), which Prop-5.4-style
            // closure depends on
            solver::Query psi;
            std::vector<FormulaPtr> conj;
            for (const auto& a : d.data_atoms) {
                conj.push_back(f_atom(a));
                info.data_text.push_back(to_string(a));
            }
            psi.formula = f_and(std::move(conj));
            info.constraint = cstr(ab, psi, d.data_atoms, false, opt);
            out.complete = out.complete && info.constraint.complete;
            for (const auto& c : info.constraint.clauses)
                parts.push_back(kappa_clause(ab, c, false));
        }
        disjuncts.push_back(w_and(std::move(parts)));
        out.disjuncts.push_back(std::move(info));
    }

    FOWPtr body = w_or(std::move(disjuncts));
    for (auto it = n.prefix.rbegin(); it != n.prefix.rend(); ++it)
        body = it->universal ? w_forall(it->var, body) : w_exists(it->var, body);

    FOCompilerEnv env{ab.state_layout()};
    TrackAutomaton a = compile(body, env);
    out.automaton = intersect(a, ab.state_space());
    return out;
}

}  // namespace regabs::engine
