#include "regabs/logic/ops.hpp"

#include <algorithm>
#include <cassert>

namespace regabs::logic {

std::string fresh_name(const std::string& stem, const std::set<std::string>& used) {
    if (!used.count(stem)) return stem;
    for (int k = 1;; ++k) {
        std::string cand = stem + std::to_string(k);
        if (!used.count(cand)) return cand;
    }
}

static void term_vars(const Term& t, std::set<std::string>& out) {
    if (t.kind == Term::Kind::Var) out.insert(t.name);
    if (t.kind == Term::Kind::Read) term_vars(*t.idx, out);
}

static void collect_free(const FormulaPtr& f, std::set<std::string>& bound,
                         std::set<std::string>& out) {
    switch (f->kind) {
        case Formula::Kind::True:
        case Formula::Kind::False:
            return;
        case Formula::Kind::Atom: {
            std::set<std::string> vs;
            term_vars(f->atom.lhs, vs);
            term_vars(f->atom.rhs, vs);
            for (auto& v : vs)
                if (!bound.count(v)) out.insert(v);
            return;
        }
        case Formula::Kind::Exists:
        case Formula::Kind::Forall: {
            bool fresh = bound.insert(f->var).second;
            collect_free(f->kids[0], bound, out);
            if (fresh) bound.erase(f->var);
            return;
        }
        default:
            for (const auto& k : f->kids) collect_free(k, bound, out);
    }
}

std::set<std::string> free_vars(const FormulaPtr& f) {
    std::set<std::string> bound, out;
    collect_free(f, bound, out);
    return out;
}

std::set<std::string> free_vars(const TPropPtr& p) {
    std::set<std::string> out;
    switch (p->kind) {
        case TProp::Kind::Leaf:
            return free_vars(p->leaf);
        case TProp::Kind::Exists:
        case TProp::Kind::Forall: {
            out = free_vars(p->kids[0]);
            out.erase(p->var);
            return out;
        }
        default:
            for (const auto& k : p->kids) {
                auto s = free_vars(k);
                out.insert(s.begin(), s.end());
            }
            return out;
    }
}

Term substitute(const Term& s, const Term& t, const std::string& x) {
    if (s.kind == Term::Kind::Var && s.name == x) return t_shift(t, s.offset);
    if (s.kind == Term::Kind::Read) {
        Term r = s;
        r.idx = std::make_shared<const Term>(substitute(*s.idx, t, x));
        return r;
    }
    return s;
}

Atom substitute(const Atom& a, const Term& t, const std::string& x) {
    return Atom{substitute(a.lhs, t, x), a.rel, substitute(a.rhs, t, x)};
}

FormulaPtr substitute(const FormulaPtr& f, const Term& t, const std::string& x) {
    switch (f->kind) {
        case Formula::Kind::True:
        case Formula::Kind::False:
            return f;
        case Formula::Kind::Atom:
            return f_atom(substitute(f->atom, t, x));
        case Formula::Kind::Exists:
        case Formula::Kind::Forall: {
            if (f->var == x) return f;  // bound occurrences untouched
            std::set<std::string> tvars;
            term_vars(t, tvars);
            FormulaPtr body = f->kids[0];
            std::string var = f->var;
            if (tvars.count(var)) {  // avoid capture
                auto used = free_vars(body);
                used.insert(tvars.begin(), tvars.end());
                used.insert(x);
                std::string nv = fresh_name(var, used);
                body = substitute(body, t_var(nv), var);
                var = nv;
            }
            body = substitute(body, t, x);
            return f->kind == Formula::Kind::Exists ? f_exists(var, body)
                                                    : f_forall(var, body);
        }
        default: {
            std::vector<FormulaPtr> kids;
            kids.reserve(f->kids.size());
            for (const auto& k : f->kids) kids.push_back(substitute(k, t, x));
            if (f->kind == Formula::Kind::Not) return f_not(kids[0]);
            return f->kind == Formula::Kind::And ? f_and(std::move(kids))
                                                 : f_or(std::move(kids));
        }
    }
}

TPropPtr substitute(const TPropPtr& p, const Term& t, const std::string& x) {
    switch (p->kind) {
        case TProp::Kind::Leaf:
            return tp_leaf(substitute(p->leaf, t, x));
        case TProp::Kind::Exists:
        case TProp::Kind::Forall: {
            if (p->var == x) return p;
            auto body = substitute(p->kids[0], t, x);
            return p->kind == TProp::Kind::Exists ? tp_exists(p->var, body)
                                                  : tp_forall(p->var, body);
        }
        default: {
            std::vector<TPropPtr> kids;
            for (const auto& k : p->kids) kids.push_back(substitute(k, t, x));
            switch (p->kind) {
                case TProp::Kind::Not: return tp_not(kids[0]);
                case TProp::Kind::G: return tp_g(kids[0]);
                case TProp::Kind::F: return tp_f(kids[0]);
                case TProp::Kind::And: return tp_and(std::move(kids));
                default: return tp_or(std::move(kids));
            }
        }
    }
}

FormulaPtr nnf(const FormulaPtr& f, bool neg) {
    switch (f->kind) {
        case Formula::Kind::True: return neg ? f_false() : f_true();
        case Formula::Kind::False: return neg ? f_true() : f_false();
        case Formula::Kind::Atom: return neg ? f_atom(negate(f->atom)) : f;
        case Formula::Kind::Not: return nnf(f->kids[0], !neg);
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            std::vector<FormulaPtr> kids;
            for (const auto& k : f->kids) kids.push_back(nnf(k, neg));
            bool conj = (f->kind == Formula::Kind::And) != neg;
            return conj ? f_and(std::move(kids)) : f_or(std::move(kids));
        }
        case Formula::Kind::Exists:
        case Formula::Kind::Forall: {
            auto body = nnf(f->kids[0], neg);
            bool ex = (f->kind == Formula::Kind::Exists) != neg;
            return ex ? f_exists(f->var, body) : f_forall(f->var, body);
        }
    }
    return f;
}

// Renames bound variables apart from each other and from `used`.
static FormulaPtr rename_apart(const FormulaPtr& f, std::set<std::string>& used) {
    switch (f->kind) {
        case Formula::Kind::True:
        case Formula::Kind::False:
        case Formula::Kind::Atom:
            return f;
        case Formula::Kind::Exists:
        case Formula::Kind::Forall: {
            std::string nv = fresh_name(f->var, used);
            used.insert(nv);
            FormulaPtr body = f->kids[0];
            if (nv != f->var) body = substitute(body, t_var(nv), f->var);
            body = rename_apart(body, used);
            return f->kind == Formula::Kind::Exists ? f_exists(nv, body)
                                                    : f_forall(nv, body);
        }
        default: {
            std::vector<FormulaPtr> kids;
            for (const auto& k : f->kids) kids.push_back(rename_apart(k, used));
            if (f->kind == Formula::Kind::Not) return f_not(kids[0]);
            return f->kind == Formula::Kind::And ? f_and(std::move(kids))
                                                 : f_or(std::move(kids));
        }
    }
}

static FormulaPtr prenex(const FormulaPtr& f, std::vector<NormalizedSia::Quant>& prefix) {
    switch (f->kind) {
        case Formula::Kind::Exists:
        case Formula::Kind::Forall: {
            prefix.push_back({f->kind == Formula::Kind::Forall, f->var});
            return prenex(f->kids[0], prefix);
        }
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            std::vector<FormulaPtr> kids;
            for (const auto& k : f->kids) kids.push_back(prenex(k, prefix));
            return f->kind == Formula::Kind::And ? f_and(std::move(kids))
                                                 : f_or(std::move(kids));
        }
        default:
            return f;
    }
}

// Trivially decidable atoms (both sides literals, or syntactically equal sides).
static std::optional<bool> const_truth(const Atom& a) {
    if (a.lhs.kind == Term::Kind::Lit && a.rhs.kind == Term::Kind::Lit)
        return eval_rel(a.rel, a.lhs.offset, a.rhs.offset);
    Term l = a.lhs, r = a.rhs;
    int dl = l.offset, dr = r.offset;
    l.offset = r.offset = 0;
    if (l == r) return eval_rel(a.rel, dl, dr);
    return std::nullopt;
}

using Cube = std::vector<Atom>;

// Appends atom to cube; returns false if the cube became contradictory.
static bool cube_add(Cube& c, const Atom& a0) {
    Atom a = canon(a0);
    if (auto t = const_truth(a)) return *t;
    Atom neg = canon(negate(a));
    for (const auto& b : c) {
        if (cmp(b, a) == 0) return true;   // duplicate
        if (cmp(b, neg) == 0) return false;
    }
    c.push_back(a);
    return true;
}

static void dnf(const FormulaPtr& f, std::vector<Cube>& out, size_t cap) {
    switch (f->kind) {
        case Formula::Kind::True:
            out.push_back({});
            break;
        case Formula::Kind::False:
            break;
        case Formula::Kind::Atom: {
            Cube c;
            if (cube_add(c, f->atom)) out.push_back(std::move(c));
            else if (const_truth(canon(f->atom)).value_or(false))
                out.push_back({});
            break;
        }
        case Formula::Kind::Or:
            for (const auto& k : f->kids) dnf(k, out, cap);
            break;
        case Formula::Kind::And: {
            std::vector<Cube> acc = {{}};
            for (const auto& k : f->kids) {
                std::vector<Cube> kd;
                dnf(k, kd, cap);
                std::vector<Cube> next;
                for (const auto& a : acc)
                    for (const auto& b : kd) {
                        Cube c = a;
                        bool ok = true;
                        for (const auto& atom : b)
                            if (!cube_add(c, atom)) { ok = false; break; }
                        if (ok) next.push_back(std::move(c));
                        if (next.size() > cap)
                            throw DnfBudgetExceeded("DNF exceeds clause cap");
                    }
                acc = std::move(next);
                if (acc.empty()) break;
            }
            for (auto& c : acc) out.push_back(std::move(c));
            break;
        }
        default:
            throw std::logic_error("dnf: input not quantifier-free NNF");
    }
    if (out.size() > cap) throw DnfBudgetExceeded("DNF exceeds clause cap");
}

static int count_quantified(const Atom& a, const std::set<std::string>& q) {
    std::set<std::string> vs;
    term_vars(a.lhs, vs);
    term_vars(a.rhs, vs);
    int n = 0;
    for (const auto& v : vs)
        if (q.count(v)) ++n;
    return n;
}

// The index position a fresh guard variable should stand for: the first
// element access of the atom.
static const Term* first_read_index(const Atom& a) {
    if (a.lhs.is_read()) return a.lhs.idx.get();
    if (a.rhs.is_read()) return a.rhs.idx.get();
    return nullptr;
}

static Atom replace_read_index(const Atom& a, const Term& from, const Term& to) {
    auto fix = [&](const Term& t) {
        if (t.is_read() && *t.idx == from) {
            Term r = t;
            r.idx = std::make_shared<const Term>(to);
            return r;
        }
        return t;
    };
    return Atom{fix(a.lhs), a.rel, fix(a.rhs)};
}

NormalizedSia normalize_sia(const FormulaPtr& f0, const Vocabulary& vocab, size_t dnf_cap) {
    FormulaPtr f = resolve_sizes(f0, vocab);
    f = nnf(f);
    std::set<std::string> used = free_vars(f);
    for (const auto& n : vocab.order) {
        used.insert(n);
        used.insert(primed(n));
    }
    f = rename_apart(f, used);

    NormalizedSia out;
    FormulaPtr matrix = prenex(f, out.prefix);
    for (const auto& q : out.prefix) out.quantified.insert(q.var);

    std::vector<Cube> cubes;
    dnf(matrix, cubes, dnf_cap);

    int fresh_counter = 0;
    for (auto& cube : cubes) {
        NormalizedSia::Disjunct d;
        for (const auto& a : cube) {
            if (!a.is_data()) {
                d.index_atoms.push_back(a);
                continue;
            }
            int nq = count_quantified(a, out.quantified);
            if (nq > 1)
                throw NotSinglyIndexed("data expression with several quantified index variables: " +
                                       to_string(a));
            if (nq == 1) {
                d.data_atoms.push_back(a);
                continue;
            }
            // no quantified variable: introduce an exists-guard for the
            // position of the first element access
            const Term* pos = first_read_index(a);
            assert(pos);
            std::string v;
            do {
                v = "_q" + std::to_string(fresh_counter++);
            } while (used.count(v));
            used.insert(v);
            out.prefix.push_back({false, v});
            out.quantified.insert(v);
            d.index_atoms.push_back(canon(Atom{t_var(v), Rel::Eq, *pos}));
            d.data_atoms.push_back(replace_read_index(a, *pos, t_var(v)));
        }
        std::sort(d.index_atoms.begin(), d.index_atoms.end(),
                  [](const Atom& a, const Atom& b) { return cmp(a, b) < 0; });
        std::sort(d.data_atoms.begin(), d.data_atoms.end(),
                  [](const Atom& a, const Atom& b) { return cmp(a, b) < 0; });
        out.disjuncts.push_back(std::move(d));
    }
    return out;
}

FormulaPtr to_formula(const NormalizedSia& n) {
    std::vector<FormulaPtr> djs;
    for (const auto& d : n.disjuncts) {
        std::vector<FormulaPtr> atoms;
        for (const auto& a : d.index_atoms) atoms.push_back(f_atom(a));
        for (const auto& a : d.data_atoms) atoms.push_back(f_atom(a));
        djs.push_back(f_and(std::move(atoms)));
    }
    FormulaPtr body = f_or(std::move(djs));
    for (auto it = n.prefix.rbegin(); it != n.prefix.rend(); ++it)
        body = it->universal ? f_forall(it->var, body) : f_exists(it->var, body);
    return body;
}

SkolemResult skolemize(const FormulaPtr& f0, const Vocabulary& vocab) {
    SkolemResult r;
    std::set<std::string> used = free_vars(f0);
    for (const auto& n : vocab.order) used.insert(n);
    FormulaPtr f = nnf(f0);
    while (f->kind == Formula::Kind::Exists) {
        std::string c = fresh_name("c_" + f->var, used);
        used.insert(c);
        r.fresh_params.push_back(c);
        f = substitute(f->kids[0], t_var(c), f->var);
    }
    r.formula = f;
    return r;
}

static bool has_temporal(const TPropPtr& p) {
    if (p->kind == TProp::Kind::G || p->kind == TProp::Kind::F) return true;
    for (const auto& k : p->kids)
        if (has_temporal(k)) return true;
    return false;
}

static TPropPtr tnnf(const TPropPtr& p, bool neg) {
    switch (p->kind) {
        case TProp::Kind::Leaf:
            return neg ? tp_leaf(nnf(p->leaf, true)) : tp_leaf(nnf(p->leaf, false));
        case TProp::Kind::Not:
            return tnnf(p->kids[0], !neg);
        case TProp::Kind::And:
        case TProp::Kind::Or: {
            std::vector<TPropPtr> kids;
            for (const auto& k : p->kids) kids.push_back(tnnf(k, neg));
            bool conj = (p->kind == TProp::Kind::And) != neg;
            return conj ? tp_and(std::move(kids)) : tp_or(std::move(kids));
        }
        case TProp::Kind::Exists:
        case TProp::Kind::Forall: {
            auto body = tnnf(p->kids[0], neg);
            bool ex = (p->kind == TProp::Kind::Exists) != neg;
            return ex ? tp_exists(p->var, body) : tp_forall(p->var, body);
        }
        case TProp::Kind::G:
            return neg ? tp_f(tnnf(p->kids[0], true)) : tp_g(tnnf(p->kids[0], false));
        case TProp::Kind::F:
            return neg ? tp_g(tnnf(p->kids[0], true)) : tp_f(tnnf(p->kids[0], false));
    }
    return p;
}

static TPropPtr skolemize_tp(const TPropPtr& p, bool under_g, std::set<std::string>& used,
                             SkolemResult& r) {
    switch (p->kind) {
        case TProp::Kind::Leaf:
            return p;
        case TProp::Kind::Not:
            if (has_temporal(p->kids[0]))
                throw NotAbstractable("negation over a temporal subformula");
            return p;
        case TProp::Kind::And:
        case TProp::Kind::Or: {
            std::vector<TPropPtr> kids;
            for (const auto& k : p->kids) kids.push_back(skolemize_tp(k, under_g, used, r));
            return p->kind == TProp::Kind::And ? tp_and(std::move(kids)) : tp_or(std::move(kids));
        }
        case TProp::Kind::G:
            return tp_g(skolemize_tp(p->kids[0], true, used, r));
        case TProp::Kind::F:
            return tp_f(skolemize_tp(p->kids[0], under_g, used, r));
        case TProp::Kind::Exists: {
            if (!has_temporal(p->kids[0]))
                return p;  // quantifier inside a maximal non-temporal subformula
            if (under_g)
                throw NotAbstractable("existential over a temporal subformula under G");
            std::string c = fresh_name("c_" + p->var, used);
            used.insert(c);
            r.fresh_params.push_back(c);
            return skolemize_tp(substitute(p->kids[0], t_var(c), p->var), under_g, used, r);
        }
        case TProp::Kind::Forall: {
            if (!has_temporal(p->kids[0])) return p;
            // universally quantified over a temporal body: fresh free index
            // variable, to be ranged by a monitor (monodic route)
            std::string j = fresh_name("j_" + p->var, used);
            used.insert(j);
            r.fresh_index_vars.push_back(j);
            return skolemize_tp(substitute(p->kids[0], t_var(j), p->var), under_g, used, r);
        }
    }
    return p;
}

SkolemResult skolemize(const TPropPtr& p0, const Vocabulary& vocab) {
    SkolemResult r;
    std::set<std::string> used = free_vars(p0);
    for (const auto& n : vocab.order) used.insert(n);
    r.property = skolemize_tp(tnnf(p0, false), false, used, r);
    return r;
}

FormulaPtr command_to_transition(const GuardedCommand& cmd, const Vocabulary& vocab) {
    check_sorted(cmd, vocab);

    std::set<std::string> assigned_ints;
    std::map<std::string, std::vector<Term>> written_cells;  // array -> positions
    for (const auto& u : cmd.updates) {
        if (u.kind == Update::Kind::SetIndex || u.kind == Update::Kind::HavocIndex)
            assigned_ints.insert(u.target);
        else
            written_cells[u.target].push_back(resolve_sizes(u.cell, vocab));
    }

    std::vector<FormulaPtr> parts;
    parts.push_back(resolve_sizes(cmd.guard, vocab));

    for (const auto& u : cmd.updates) {
        switch (u.kind) {
            case Update::Kind::SetIndex:
                parts.push_back(f_atom(t_var(primed(u.target)), Rel::Eq,
                                       resolve_sizes(u.rhs, vocab)));
                break;
            case Update::Kind::HavocIndex: {
                const auto& vi = vocab.info(u.target);
                Term lo = vi.lo ? *vi.lo : t_lit(1);
                Term hi = vi.hi ? *vi.hi : t_var(vocab.extent);
                parts.push_back(f_atom(resolve_sizes(lo, vocab), Rel::Le, t_var(primed(u.target))));
                parts.push_back(f_atom(t_var(primed(u.target)), Rel::Le, resolve_sizes(hi, vocab)));
                break;
            }
            case Update::Kind::SetCell:
                parts.push_back(f_atom(t_read(primed(u.target), resolve_sizes(u.cell, vocab)),
                                       Rel::Eq, resolve_sizes(u.rhs, vocab)));
                break;
            case Update::Kind::HavocCell:
                // written position left unconstrained; only excluded from the frame
                break;
        }
    }

    for (const auto& x : vocab.int_vars()) {
        if (vocab.is_param(x) || assigned_ints.count(x)) continue;
        parts.push_back(f_atom(t_var(primed(x)), Rel::Eq, t_var(x)));
    }

    std::set<std::string> used = free_vars(cmd.guard);
    for (const auto& n : vocab.order) used.insert(n);
    std::string i = fresh_name("i", used);

    std::vector<FormulaPtr> untouched;
    for (const auto& a : vocab.array_vars()) {
        if (written_cells.count(a)) continue;
        auto range = f_and({f_atom(t_lit(1), Rel::Le, t_var(i)),
                            f_atom(t_var(i), Rel::Le, t_var(vocab.size_param_of(a)))});
        untouched.push_back(f_implies(range, f_atom(t_read(primed(a), t_var(i)), Rel::Eq,
                                                    t_read(a, t_var(i)))));
    }
    if (!untouched.empty()) parts.push_back(f_forall(i, f_and(std::move(untouched))));

    for (const auto& [a, cells] : written_cells) {
        std::vector<FormulaPtr> cond = {f_atom(t_lit(1), Rel::Le, t_var(i)),
                                        f_atom(t_var(i), Rel::Le, t_var(vocab.size_param_of(a)))};
        for (const auto& c : cells) cond.push_back(f_atom(t_var(i), Rel::Ne, c));
        parts.push_back(f_forall(i, f_implies(f_and(std::move(cond)),
                                              f_atom(t_read(primed(a), t_var(i)), Rel::Eq,
                                                     t_read(a, t_var(i))))));
    }

    return f_and(std::move(parts));
}

// --- classification ------------------------------------------------------

// Converts a temporal-operator-free subtree back into a plain formula.
static std::optional<FormulaPtr> as_state_formula(const TPropPtr& p) {
    switch (p->kind) {
        case TProp::Kind::Leaf:
            return p->leaf;
        case TProp::Kind::G:
        case TProp::Kind::F:
            return std::nullopt;
        case TProp::Kind::Not: {
            auto k = as_state_formula(p->kids[0]);
            if (!k) return std::nullopt;
            return f_not(*k);
        }
        case TProp::Kind::And:
        case TProp::Kind::Or: {
            std::vector<FormulaPtr> kids;
            for (const auto& k : p->kids) {
                auto s = as_state_formula(k);
                if (!s) return std::nullopt;
                kids.push_back(*s);
            }
            return p->kind == TProp::Kind::And ? f_and(std::move(kids)) : f_or(std::move(kids));
        }
        case TProp::Kind::Exists:
        case TProp::Kind::Forall: {
            auto k = as_state_formula(p->kids[0]);
            if (!k) return std::nullopt;
            return p->kind == TProp::Kind::Exists ? f_exists(p->var, *k) : f_forall(p->var, *k);
        }
    }
    return std::nullopt;
}

static bool conforms_abstractable(const TPropPtr& p) {
    switch (p->kind) {
        case TProp::Kind::Leaf:
            return true;
        case TProp::Kind::Not:
            return !has_temporal(p->kids[0]);
        case TProp::Kind::Forall:
            return !has_temporal(p->kids[0]);
        case TProp::Kind::Exists:
        case TProp::Kind::G:
        case TProp::Kind::F:
            return conforms_abstractable(p->kids[0]);
        case TProp::Kind::And:
        case TProp::Kind::Or: {
            for (const auto& k : p->kids)
                if (!conforms_abstractable(k)) return false;
            return true;
        }
    }
    return false;
}

static bool is_fairness_eta(const TPropPtr& p) {
    if ((p->kind == TProp::Kind::G && p->kids[0]->kind == TProp::Kind::F) ||
        (p->kind == TProp::Kind::F && p->kids[0]->kind == TProp::Kind::G))
        return !has_temporal(p->kids[0]->kids[0]);
    if (p->kind == TProp::Kind::And || p->kind == TProp::Kind::Or) {
        for (const auto& k : p->kids)
            if (!is_fairness_eta(k)) return false;
        return true;
    }
    return false;
}

static bool check_monodic(const TPropPtr& p, const Vocabulary& vocab) {
    if (p->kind == TProp::Kind::G || p->kind == TProp::Kind::F) {
        int extra = 0;
        for (const auto& v : free_vars(p))
            if (!vocab.has(v)) ++extra;
        if (extra > 1) return false;
    }
    for (const auto& k : p->kids)
        if (!check_monodic(k, vocab)) return false;
    return true;
}

PropShape decompose(const TPropPtr& p0, const Vocabulary& vocab) {
    (void)vocab;
    PropShape shape;
    TPropPtr p = tnnf(p0, false);
    while (p->kind == TProp::Kind::Forall) {
        shape.quantified.push_back(p->var);
        p = p->kids[0];
    }
    shape.psi1 = f_true();

    // after NNF an implication is a disjunction: negated premise parts
    // (state formulas or negated fairness obligations) plus one temporal
    // conclusion
    std::vector<TPropPtr> kids =
        p->kind == TProp::Kind::Or ? p->kids : std::vector<TPropPtr>{p};

    std::vector<FormulaPtr> neg_premise_parts;
    std::vector<TPropPtr> temporal_kids;
    for (const auto& k : kids) {
        if (auto s = as_state_formula(k)) neg_premise_parts.push_back(*s);
        else temporal_kids.push_back(k);
    }
    if (!neg_premise_parts.empty())
        shape.psi1 = nnf(f_not(f_or(std::move(neg_premise_parts))));

    auto nested = [](const TPropPtr& k, TProp::Kind outer, TProp::Kind inner) {
        return k->kind == outer && k->kids.size() == 1 && k->kids[0]->kind == inner &&
               as_state_formula(k->kids[0]->kids[0]).has_value();
    };
    auto plain = [](const TPropPtr& k, TProp::Kind outer) {
        return k->kind == outer && as_state_formula(k->kids[0]).has_value();
    };

    // a single plain G/F disjunct is the conclusion; remaining GF/FG
    // disjuncts are negated fairness premises
    TPropPtr conclusion;
    std::vector<TPropPtr> rest;
    for (const auto& k : temporal_kids) {
        if (!conclusion && (plain(k, TProp::Kind::G) || plain(k, TProp::Kind::F)) &&
            !nested(k, TProp::Kind::G, TProp::Kind::F) && !nested(k, TProp::Kind::F, TProp::Kind::G))
            conclusion = k;
        else
            rest.push_back(k);
    }
    if (!conclusion && rest.size() == 1 && nested(rest[0], TProp::Kind::G, TProp::Kind::F)) {
        // bare recurrence GF psi
        shape.kind = PropShape::Kind::Recurrence;
        shape.psi2 = *as_state_formula(rest[0]->kids[0]->kids[0]);
        return shape;
    }
    for (const auto& k : rest) {
        // the premise eta appears negated: not(GF mu) = FG not(mu)
        if (nested(k, TProp::Kind::F, TProp::Kind::G)) {
            shape.fairness.push_back({true, nnf(f_not(*as_state_formula(k->kids[0]->kids[0])))});
        } else if (nested(k, TProp::Kind::G, TProp::Kind::F)) {
            shape.fairness.push_back({false, nnf(f_not(*as_state_formula(k->kids[0]->kids[0])))});
        } else {
            shape.kind = PropShape::Kind::Other;
            return shape;
        }
    }
    if (!conclusion) {
        shape.kind = PropShape::Kind::Other;
        return shape;
    }
    shape.psi2 = *as_state_formula(conclusion->kids[0]);
    shape.kind = conclusion->kind == TProp::Kind::G ? PropShape::Kind::Safety
                                                    : PropShape::Kind::Liveness;
    return shape;
}

PropertyFlags classify(const TPropPtr& p, const Vocabulary& vocab) {
    PropertyFlags flags;
    PropShape s = decompose(tnnf(p, false), vocab);
    flags.safety_shaped = s.kind == PropShape::Kind::Safety;
    flags.liveness_shaped = s.kind == PropShape::Kind::Liveness;
    TPropPtr q = tnnf(p, false);
    while (q->kind == TProp::Kind::Forall) q = q->kids[0];
    flags.fairness_shaped = is_fairness_eta(q);
    flags.monodic = check_monodic(tnnf(p, false), vocab);
    flags.abstractable = conforms_abstractable(tnnf(p, true));
    return flags;
}

// --- sort checking --------------------------------------------------------

static void check_term(const Term& t, const Vocabulary& vocab, bool allow_primed,
                       const std::set<std::string>& bound, bool as_read_index) {
    switch (t.kind) {
        case Term::Kind::Lit:
            return;
        case Term::Kind::Var: {
            if (bound.count(t.name)) return;
            std::string base = allow_primed ? unprimed(t.name) : t.name;
            if (is_primed(t.name) && !allow_primed)
                throw SortError("primed variable outside transition context: " + t.name);
            const auto& vi = vocab.info(base);
            if (vi.sort == Sort::Array)
                throw SortError("array used as scalar: " + t.name);
            if (as_read_index && vi.sort == Sort::Data)
                throw SortError("data variable used as array index: " + t.name);
            return;
        }
        case Term::Kind::Size: {
            std::string base = allow_primed ? unprimed(t.name) : t.name;
            if (!vocab.is_array(base)) throw SortError("|.| of non-array: " + t.name);
            return;
        }
        case Term::Kind::Read: {
            std::string base = allow_primed ? unprimed(t.name) : t.name;
            if (!vocab.is_array(base)) throw SortError("read of non-array: " + t.name);
            check_term(*t.idx, vocab, allow_primed, bound, true);
            return;
        }
    }
}

static void check_sorted_rec(const FormulaPtr& f, const Vocabulary& vocab, bool allow_primed,
                             std::set<std::string>& bound) {
    switch (f->kind) {
        case Formula::Kind::True:
        case Formula::Kind::False:
            return;
        case Formula::Kind::Atom:
            check_term(f->atom.lhs, vocab, allow_primed, bound, false);
            check_term(f->atom.rhs, vocab, allow_primed, bound, false);
            return;
        case Formula::Kind::Exists:
        case Formula::Kind::Forall: {
            if (vocab.has(f->var))
                throw SortError("quantified variable shadows declaration: " + f->var);
            bool fresh = bound.insert(f->var).second;
            check_sorted_rec(f->kids[0], vocab, allow_primed, bound);
            if (fresh) bound.erase(f->var);
            return;
        }
        default:
            for (const auto& k : f->kids) check_sorted_rec(k, vocab, allow_primed, bound);
    }
}

void check_sorted(const FormulaPtr& f, const Vocabulary& vocab, bool allow_primed) {
    std::set<std::string> bound;
    check_sorted_rec(f, vocab, allow_primed, bound);
}

void check_sorted(const GuardedCommand& cmd, const Vocabulary& vocab) {
    check_sorted(cmd.guard, vocab, false);
    std::set<std::string> bound;
    std::set<std::string> index_targets;
    std::vector<std::pair<std::string, Term>> cell_targets;
    for (const auto& u : cmd.updates) {
        switch (u.kind) {
            case Update::Kind::SetIndex:
            case Update::Kind::HavocIndex: {
                const auto& vi = vocab.info(u.target);
                if (vi.param) throw SortError("parameters are immutable: " + u.target);
                if (vi.sort != Sort::Index)
                    throw SortError("index assignment to non-index variable: " + u.target);
                if (!index_targets.insert(u.target).second)
                    throw SortError("multiple updates to " + u.target);
                if (u.kind == Update::Kind::SetIndex)
                    check_term(u.rhs, vocab, false, bound, false);
                break;
            }
            case Update::Kind::SetCell:
            case Update::Kind::HavocCell: {
                if (!vocab.is_array(u.target))
                    throw SortError("cell assignment to non-array: " + u.target);
                check_term(u.cell, vocab, false, bound, true);
                for (const auto& [a, c] : cell_targets)
                    if (a == u.target && c == u.cell)
                        throw SortError("multiple updates to " + u.target + "[" +
                                        to_string(u.cell) + "]");
                cell_targets.emplace_back(u.target, u.cell);
                if (u.kind == Update::Kind::SetCell)
                    check_term(u.rhs, vocab, false, bound, false);
                break;
            }
        }
    }
}

}  // namespace regabs::logic
