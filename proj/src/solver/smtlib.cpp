#include "regabs/solver/smtlib.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "regabs/logic/ops.hpp"

namespace regabs::solver {

using namespace regabs::logic;

namespace {

std::string sym(const std::string& name) { return "|" + name + "|"; }

void collect_term(const Term& t, std::set<std::string>& vars, std::set<std::string>& arrays) {
    switch (t.kind) {
        case Term::Kind::Lit:
            return;
        case Term::Kind::Var:
            vars.insert(t.name);
            return;
        case Term::Kind::Size:
            throw SortError("unresolved array size in solver query: " + to_string(t));
        case Term::Kind::Read:
            arrays.insert(t.name);
            collect_term(*t.idx, vars, arrays);
            return;
    }
}

void collect(const FormulaPtr& f, std::set<std::string>& vars, std::set<std::string>& arrays) {
    switch (f->kind) {
        case Formula::Kind::True:
        case Formula::Kind::False:
            return;
        case Formula::Kind::Atom:
            collect_term(f->atom.lhs, vars, arrays);
            collect_term(f->atom.rhs, vars, arrays);
            return;
        case Formula::Kind::Exists:
        case Formula::Kind::Forall:
            throw SortError("quantified formula in solver query");
        default:
            for (const auto& k : f->kids) collect(k, vars, arrays);
    }
}

std::string print_term(const Term& t) {
    std::string base;
    switch (t.kind) {
        case Term::Kind::Lit:
            return t.offset >= 0 ? std::to_string(t.offset)
                                 : "(- " + std::to_string(-t.offset) + ")";
        case Term::Kind::Var:
            base = sym(t.name);
            break;
        case Term::Kind::Read:
            base = "(select " + sym(t.name) + " " + print_term(*t.idx) + ")";
            break;
        case Term::Kind::Size:
            throw SortError("unresolved array size in solver query");
    }
    if (t.offset > 0) return "(+ " + base + " " + std::to_string(t.offset) + ")";
    if (t.offset < 0) return "(- " + base + " " + std::to_string(-t.offset) + ")";
    return base;
}

std::string print_formula(const FormulaPtr& f) {
    switch (f->kind) {
        case Formula::Kind::True:
            return "true";
        case Formula::Kind::False:
            return "false";
        case Formula::Kind::Atom: {
            const Atom& a = f->atom;
            const char* op = nullptr;
            switch (a.rel) {
                case Rel::Eq: op = "="; break;
                case Rel::Ne: op = "distinct"; break;
                case Rel::Le: op = "<="; break;
                case Rel::Lt: op = "<"; break;
                case Rel::Ge: op = ">="; break;
                case Rel::Gt: op = ">"; break;
            }
            return std::string("(") + op + " " + print_term(a.lhs) + " " + print_term(a.rhs) + ")";
        }
        case Formula::Kind::Not:
            return "(not " + print_formula(f->kids[0]) + ")";
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            std::string s = f->kind == Formula::Kind::And ? "(and" : "(or";
            for (const auto& k : f->kids) s += " " + print_formula(k);
            return s + ")";
        }
        default:
            throw SortError("quantified formula in solver query");
    }
}

struct Decls {
    std::set<std::string> vars, arrays;
};

Decls collect_query(const Query& q) {
    Decls d;
    collect(q.formula, d.vars, d.arrays);
    for (const auto& f : q.extra) collect(f, d.vars, d.arrays);
    int fresh = 0;
    for (const auto& def : q.defs) {
        d.arrays.insert(def.lhs);
        d.arrays.insert(def.base);
        for (const auto& w : def.writes) {
            collect_term(w.pos, d.vars, d.arrays);
            if (w.value) collect_term(*w.value, d.vars, d.arrays);
            else d.vars.insert("_havoc" + std::to_string(fresh++));
        }
    }
    return d;
}

std::vector<std::string> query_asserts(const Query& q) {
    std::vector<std::string> out;
    if (q.formula->kind != Formula::Kind::True) out.push_back(print_formula(q.formula));
    for (const auto& f : q.extra)
        if (f->kind != Formula::Kind::True) out.push_back(print_formula(f));
    int fresh = 0;
    for (const auto& def : q.defs) {
        std::string rhs = sym(def.base);
        for (const auto& w : def.writes) {
            std::string val = w.value ? print_term(*w.value)
                                      : sym("_havoc" + std::to_string(fresh++));
            rhs = "(store " + rhs + " " + print_term(w.pos) + " " + val + ")";
        }
        out.push_back("(= " + sym(def.lhs) + " " + rhs + ")");
    }
    return out;
}

}  // namespace

std::string to_smtlib(const Query& q, const logic::Vocabulary& vocab) {
    (void)vocab;
    Decls d = collect_query(q);
    std::string s = "(set-logic QF_AX)\n";
    for (const auto& v : d.vars) s += "(declare-const " + sym(v) + " Int)\n";
    for (const auto& a : d.arrays) s += "(declare-const " + sym(a) + " (Array Int Int))\n";
    for (const auto& f : query_asserts(q)) s += "(assert " + f + ")\n";
    s += "(check-sat)\n";
    return s;
}

std::string canonical_key(const Query& q, const logic::Vocabulary& vocab) {
    (void)vocab;
    std::vector<std::string> parts = query_asserts(q);
    std::sort(parts.begin(), parts.end());
    std::string joined;
    for (const auto& p : parts) joined += p + "\n";
    // rename |...| symbols in first-occurrence order
    std::map<std::string, std::string> names;
    std::string out;
    size_t i = 0;
    while (i < joined.size()) {
        if (joined[i] != '|') {
            out += joined[i++];
            continue;
        }
        size_t j = joined.find('|', i + 1);
        std::string name = joined.substr(i + 1, j - i - 1);
        auto it = names.find(name);
        if (it == names.end())
            it = names.emplace(name, "v" + std::to_string(names.size())).first;
        out += "|" + it->second + "|";
        i = j + 1;
    }
    return out;
}

}  // namespace regabs::solver
