#include "regabs/logic/ast.hpp"

#include <algorithm>

namespace regabs::logic {

Rel negate_rel(Rel r) {
    switch (r) {
        case Rel::Eq: return Rel::Ne;
        case Rel::Ne: return Rel::Eq;
        case Rel::Le: return Rel::Gt;
        case Rel::Lt: return Rel::Ge;
        case Rel::Ge: return Rel::Lt;
        case Rel::Gt: return Rel::Le;
    }
    return Rel::Eq;
}

Rel flip_rel(Rel r) {
    switch (r) {
        case Rel::Eq: return Rel::Eq;
        case Rel::Ne: return Rel::Ne;
        case Rel::Le: return Rel::Ge;
        case Rel::Lt: return Rel::Gt;
        case Rel::Ge: return Rel::Le;
        case Rel::Gt: return Rel::Lt;
    }
    return Rel::Eq;
}

bool eval_rel(Rel r, long long a, long long b) {
    switch (r) {
        case Rel::Eq: return a == b;
        case Rel::Ne: return a != b;
        case Rel::Le: return a <= b;
        case Rel::Lt: return a < b;
        case Rel::Ge: return a >= b;
        case Rel::Gt: return a > b;
    }
    return false;
}

const char* rel_text(Rel r) {
    switch (r) {
        case Rel::Eq: return "=";
        case Rel::Ne: return "!=";
        case Rel::Le: return "<=";
        case Rel::Lt: return "<";
        case Rel::Ge: return ">=";
        case Rel::Gt: return ">";
    }
    return "?";
}

Term t_lit(int n) {
    Term t;
    t.kind = Term::Kind::Lit;
    t.offset = n;
    return t;
}

Term t_var(std::string name, int offset) {
    Term t;
    t.kind = Term::Kind::Var;
    t.name = std::move(name);
    t.offset = offset;
    return t;
}

Term t_size(std::string array, int offset) {
    Term t;
    t.kind = Term::Kind::Size;
    t.name = std::move(array);
    t.offset = offset;
    return t;
}

Term t_read(std::string array, Term idx, int offset) {
    Term t;
    t.kind = Term::Kind::Read;
    t.name = std::move(array);
    if (idx.kind == Term::Kind::Read)
        throw SortError("nested array reads are not supported");
    t.idx = std::make_shared<const Term>(std::move(idx));
    t.offset = offset;
    return t;
}

Term t_shift(Term t, int delta) {
    t.offset += delta;
    return t;
}

int cmp(const Term& a, const Term& b) {
    if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
    if (int c = a.name.compare(b.name)) return c < 0 ? -1 : 1;
    if (a.kind == Term::Kind::Read) {
        if (int c = cmp(*a.idx, *b.idx)) return c;
    }
    if (a.offset != b.offset) return a.offset < b.offset ? -1 : 1;
    return 0;
}

static void append_offset(std::string& s, int off) {
    if (off > 0) s += "+" + std::to_string(off);
    if (off < 0) s += std::to_string(off);
}

std::string to_string(const Term& t) {
    std::string s;
    switch (t.kind) {
        case Term::Kind::Lit: return std::to_string(t.offset);
        case Term::Kind::Var: s = t.name; break;
        case Term::Kind::Size: s = "|" + t.name + "|"; break;
        case Term::Kind::Read: s = t.name + "[" + to_string(*t.idx) + "]"; break;
    }
    append_offset(s, t.offset);
    return s;
}

Atom canon(const Atom& a) {
    Atom r = a;
    if (cmp(r.lhs, r.rhs) > 0) {
        std::swap(r.lhs, r.rhs);
        r.rel = flip_rel(r.rel);
    }
    return r;
}

Atom negate(const Atom& a) {
    Atom r = a;
    r.rel = negate_rel(r.rel);
    return r;
}

int cmp(const Atom& a, const Atom& b) {
    if (int c = cmp(a.lhs, b.lhs)) return c;
    if (a.rel != b.rel) return a.rel < b.rel ? -1 : 1;
    return cmp(a.rhs, b.rhs);
}

std::string to_string(const Atom& a) {
    return to_string(a.lhs) + " " + rel_text(a.rel) + " " + to_string(a.rhs);
}

FormulaPtr f_true() {
    static FormulaPtr t = std::make_shared<Formula>(Formula{Formula::Kind::True, {}, {}, {}});
    return t;
}

FormulaPtr f_false() {
    static FormulaPtr f = std::make_shared<Formula>(Formula{Formula::Kind::False, {}, {}, {}});
    return f;
}

FormulaPtr f_atom(Atom a) {
    auto f = std::make_shared<Formula>();
    f->kind = Formula::Kind::Atom;
    f->atom = std::move(a);
    return f;
}

FormulaPtr f_atom(Term lhs, Rel r, Term rhs) {
    return f_atom(Atom{std::move(lhs), r, std::move(rhs)});
}

FormulaPtr f_not(FormulaPtr k) {
    if (k->kind == Formula::Kind::True) return f_false();
    if (k->kind == Formula::Kind::False) return f_true();
    if (k->kind == Formula::Kind::Not) return k->kids[0];
    auto f = std::make_shared<Formula>();
    f->kind = Formula::Kind::Not;
    f->kids = {std::move(k)};
    return f;
}

static FormulaPtr nary(Formula::Kind kind, std::vector<FormulaPtr> kids) {
    const bool conj = kind == Formula::Kind::And;
    std::vector<FormulaPtr> out;
    for (auto& k : kids) {
        if (k->kind == kind) {
            out.insert(out.end(), k->kids.begin(), k->kids.end());
        } else if (k->kind == (conj ? Formula::Kind::True : Formula::Kind::False)) {
            continue;
        } else if (k->kind == (conj ? Formula::Kind::False : Formula::Kind::True)) {
            return conj ? f_false() : f_true();
        } else {
            out.push_back(std::move(k));
        }
    }
    if (out.empty()) return conj ? f_true() : f_false();
    if (out.size() == 1) return out[0];
    auto f = std::make_shared<Formula>();
    f->kind = kind;
    f->kids = std::move(out);
    return f;
}

FormulaPtr f_and(std::vector<FormulaPtr> kids) { return nary(Formula::Kind::And, std::move(kids)); }
FormulaPtr f_or(std::vector<FormulaPtr> kids) { return nary(Formula::Kind::Or, std::move(kids)); }
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b) { return f_or({f_not(std::move(a)), std::move(b)}); }
FormulaPtr f_iff(FormulaPtr a, FormulaPtr b) {
    return f_and({f_implies(a, b), f_implies(b, a)});
}

FormulaPtr f_exists(std::string var, FormulaPtr k) {
    auto f = std::make_shared<Formula>();
    f->kind = Formula::Kind::Exists;
    f->var = std::move(var);
    f->kids = {std::move(k)};
    return f;
}

FormulaPtr f_forall(std::string var, FormulaPtr k) {
    auto f = std::make_shared<Formula>();
    f->kind = Formula::Kind::Forall;
    f->var = std::move(var);
    f->kids = {std::move(k)};
    return f;
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
    if (a == b) return true;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Formula::Kind::True:
        case Formula::Kind::False:
            return true;
        case Formula::Kind::Atom:
            return cmp(a->atom, b->atom) == 0;
        case Formula::Kind::Exists:
        case Formula::Kind::Forall:
            if (a->var != b->var) return false;
            [[fallthrough]];
        default: {
            if (a->kids.size() != b->kids.size()) return false;
            for (size_t i = 0; i < a->kids.size(); ++i)
                if (!equal(a->kids[i], b->kids[i])) return false;
            return true;
        }
    }
}

static void print(const FormulaPtr& f, std::string& out, int parent_prec) {
    // precedence: quantifier 0, | 1, & 2, ! 3, atom 4
    auto wrap = [&](int prec, auto&& body) {
        if (prec < parent_prec) out += "(";
        body();
        if (prec < parent_prec) out += ")";
    };
    switch (f->kind) {
        case Formula::Kind::True: out += "true"; break;
        case Formula::Kind::False: out += "false"; break;
        case Formula::Kind::Atom: out += to_string(f->atom); break;
        case Formula::Kind::Not:
            wrap(3, [&] {
                out += "!";
                print(f->kids[0], out, 4);
            });
            break;
        case Formula::Kind::And:
            wrap(2, [&] {
                for (size_t i = 0; i < f->kids.size(); ++i) {
                    if (i) out += " & ";
                    print(f->kids[i], out, 3);
                }
            });
            break;
        case Formula::Kind::Or:
            wrap(1, [&] {
                for (size_t i = 0; i < f->kids.size(); ++i) {
                    if (i) out += " | ";
                    print(f->kids[i], out, 2);
                }
            });
            break;
        case Formula::Kind::Exists:
        case Formula::Kind::Forall:
            wrap(0, [&] {
                out += f->kind == Formula::Kind::Exists ? "exists " : "forall ";
                out += f->var + ". ";
                print(f->kids[0], out, 1);
            });
            break;
    }
}

std::string to_string(const FormulaPtr& f) {
    std::string s;
    print(f, s, 0);
    return s;
}

const VarInfo& Vocabulary::info(const std::string& n) const {
    auto it = vars.find(n);
    if (it == vars.end()) throw SortError("unknown identifier: " + n);
    return it->second;
}

void Vocabulary::add(const std::string& name, VarInfo vi) {
    if (vars.count(name)) throw SortError("duplicate declaration: " + name);
    if (is_primed(name)) throw SortError("primed name in vocabulary: " + name);
    order.push_back(name);
    vars.emplace(name, std::move(vi));
}

void Vocabulary::validate() const {
    for (const auto& n : order) {
        const auto& vi = vars.at(n);
        if (vi.sort == Sort::Array) {
            if (vi.size_param.empty())
                throw SortError("array " + n + " has no size binding");
            if (!has(vi.size_param) || !vars.at(vi.size_param).param)
                throw SortError("size of " + n + " must be bound to a parameter");
        }
        if (vi.param && vi.sort != Sort::Index)
            throw SortError("parameter " + n + " must have index sort");
    }
    if (!extent.empty() && (!has(extent) || !vars.at(extent).param))
        throw SortError("extent " + extent + " is not a parameter");
}

std::vector<std::string> Vocabulary::int_vars() const {
    std::vector<std::string> r;
    for (const auto& n : order)
        if (vars.at(n).sort == Sort::Index) r.push_back(n);
    return r;
}

std::vector<std::string> Vocabulary::array_vars() const {
    std::vector<std::string> r;
    for (const auto& n : order)
        if (vars.at(n).sort == Sort::Array) r.push_back(n);
    return r;
}

std::vector<std::string> Vocabulary::params() const {
    std::vector<std::string> r;
    for (const auto& n : order)
        if (vars.at(n).param) r.push_back(n);
    return r;
}

const std::string& Vocabulary::size_param_of(const std::string& array) const {
    const auto& vi = info(array);
    if (vi.sort != Sort::Array) throw SortError(array + " is not an array");
    return vi.size_param;
}

Vocabulary Vocabulary::with_primed() const {
    Vocabulary v = *this;
    for (const auto& n : order) {
        VarInfo vi = vars.at(n);
        if (vi.param) continue;  // parameters are immutable; no primed copy
        if (!vi.size_param.empty()) vi.size_param = vars.at(vi.size_param).param
                                       ? vi.size_param : primed(vi.size_param);
        v.order.push_back(primed(n));
        v.vars.emplace(primed(n), vi);
    }
    return v;
}

std::string primed(const std::string& name) { return name + "'"; }
bool is_primed(const std::string& name) { return !name.empty() && name.back() == '\''; }
std::string unprimed(const std::string& name) {
    return is_primed(name) ? name.substr(0, name.size() - 1) : name;
}

Term resolve_sizes(const Term& t, const Vocabulary& v) {
    Term r = t;
    if (t.kind == Term::Kind::Size) {
        const std::string base = unprimed(t.name);
        r = t_var(v.size_param_of(base), t.offset);
    } else if (t.kind == Term::Kind::Read) {
        r.idx = std::make_shared<const Term>(resolve_sizes(*t.idx, v));
    }
    return r;
}

FormulaPtr resolve_sizes(const FormulaPtr& f, const Vocabulary& v) {
    switch (f->kind) {
        case Formula::Kind::True:
        case Formula::Kind::False:
            return f;
        case Formula::Kind::Atom:
            return f_atom(Atom{resolve_sizes(f->atom.lhs, v), f->atom.rel,
                               resolve_sizes(f->atom.rhs, v)});
        default: {
            auto g = std::make_shared<Formula>(*f);
            for (auto& k : g->kids) k = resolve_sizes(k, v);
            return g;
        }
    }
}

TPropPtr tp_leaf(FormulaPtr f) {
    auto p = std::make_shared<TProp>();
    p->kind = TProp::Kind::Leaf;
    p->leaf = std::move(f);
    return p;
}

static TPropPtr tp1(TProp::Kind k, TPropPtr kid) {
    auto p = std::make_shared<TProp>();
    p->kind = k;
    p->kids = {std::move(kid)};
    return p;
}

TPropPtr tp_not(TPropPtr k) { return tp1(TProp::Kind::Not, std::move(k)); }
TPropPtr tp_g(TPropPtr k) { return tp1(TProp::Kind::G, std::move(k)); }
TPropPtr tp_f(TPropPtr k) { return tp1(TProp::Kind::F, std::move(k)); }

static TPropPtr tpn(TProp::Kind k, std::vector<TPropPtr> ks) {
    if (ks.size() == 1) return ks[0];
    auto p = std::make_shared<TProp>();
    p->kind = k;
    p->kids = std::move(ks);
    return p;
}

TPropPtr tp_and(std::vector<TPropPtr> ks) { return tpn(TProp::Kind::And, std::move(ks)); }
TPropPtr tp_or(std::vector<TPropPtr> ks) { return tpn(TProp::Kind::Or, std::move(ks)); }
TPropPtr tp_implies(TPropPtr a, TPropPtr b) { return tp_or({tp_not(std::move(a)), std::move(b)}); }

TPropPtr tp_exists(std::string v, TPropPtr k) {
    auto p = tp1(TProp::Kind::Exists, std::move(k));
    const_cast<TProp*>(p.get())->var = std::move(v);
    return p;
}

TPropPtr tp_forall(std::string v, TPropPtr k) {
    auto p = tp1(TProp::Kind::Forall, std::move(k));
    const_cast<TProp*>(p.get())->var = std::move(v);
    return p;
}

std::string to_string(const TPropPtr& p) {
    switch (p->kind) {
        case TProp::Kind::Leaf: return "(" + to_string(p->leaf) + ")";
        case TProp::Kind::Not: return "!" + to_string(p->kids[0]);
        case TProp::Kind::G: return "G " + to_string(p->kids[0]);
        case TProp::Kind::F: return "F " + to_string(p->kids[0]);
        case TProp::Kind::Exists: return "(exists " + p->var + ". " + to_string(p->kids[0]) + ")";
        case TProp::Kind::Forall: return "(forall " + p->var + ". " + to_string(p->kids[0]) + ")";
        case TProp::Kind::And:
        case TProp::Kind::Or: {
            std::string s = "(";
            for (size_t i = 0; i < p->kids.size(); ++i) {
                if (i) s += p->kind == TProp::Kind::And ? " & " : " | ";
                s += to_string(p->kids[i]);
            }
            return s + ")";
        }
    }
    return "?";
}

}  // namespace regabs::logic
