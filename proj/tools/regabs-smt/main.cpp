// SMT-LIB 2 solver for quantifier-free extensional arrays over integer
// difference arithmetic: the theory fragment needed for indexed-array
// abstraction queries. Reads commands on stdin, answers check-sat on stdout.
//
// Decision procedure: arrays are eliminated eagerly (read-over-write case
// splits, Ackermann congruence, witness indices for negated equalities),
// the remaining difference atoms go through Tseitin + DPLL with a
// Bellman-Ford feasibility check on every atom assignment.

#include <cctype>
#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace {

struct SmtError {
    std::string msg;
};

// --- s-expressions ----------------------------------------------------------

struct Node {
    enum class Kind { Num, Sym, List };
    Kind kind = Kind::Sym;
    long long num = 0;
    std::string sym;
    std::vector<Node> kids;
};

struct Reader {
    std::string buf;
    size_t pos = 0;

    int peek() {
        while (true) {
            if (pos < buf.size()) return buf[pos];
            if (!std::getline(std::cin, buf)) return EOF;
            buf += '\n';
            pos = 0;
        }
    }
    int get() {
        int c = peek();
        if (c != EOF) ++pos;
        return c;
    }
    void skip_ws() {
        while (true) {
            int c = peek();
            if (c == ';') {
                while (c != EOF && c != '\n') c = get();
            } else if (c != EOF && std::isspace(c)) {
                get();
            } else {
                return;
            }
        }
    }
    std::optional<Node> read() {
        skip_ws();
        int c = peek();
        if (c == EOF) return std::nullopt;
        if (c == '(') {
            get();
            Node n;
            n.kind = Node::Kind::List;
            while (true) {
                skip_ws();
                c = peek();
                if (c == EOF) throw SmtError{"unexpected end of input"};
                if (c == ')') {
                    get();
                    return n;
                }
                auto k = read();
                if (!k) throw SmtError{"unexpected end of input"};
                n.kids.push_back(std::move(*k));
            }
        }
        if (c == ')') throw SmtError{"unexpected ')'"};
        if (c == '|') {
            get();
            Node n;
            n.kind = Node::Kind::Sym;
            while (true) {
                c = get();
                if (c == EOF) throw SmtError{"unterminated quoted symbol"};
                if (c == '|') break;
                n.sym += static_cast<char>(c);
            }
            return n;
        }
        if (c == '"') {
            get();
            Node n;
            n.kind = Node::Kind::Sym;
            while (true) {
                c = get();
                if (c == EOF) throw SmtError{"unterminated string"};
                if (c == '"') break;
                n.sym += static_cast<char>(c);
            }
            return n;
        }
        std::string tok;
        while (c != EOF && !std::isspace(c) && c != '(' && c != ')' && c != ';') {
            tok += static_cast<char>(get());
            c = peek();
        }
        Node n;
        bool numeric = !tok.empty() && (std::isdigit(static_cast<unsigned char>(tok[0])) ||
                                        (tok[0] == '-' && tok.size() > 1));
        if (numeric) {
            for (size_t i = 1; i < tok.size(); ++i)
                if (!std::isdigit(static_cast<unsigned char>(tok[i]))) numeric = false;
        }
        if (numeric) {
            n.kind = Node::Kind::Num;
            n.num = std::stoll(tok);
        } else {
            n.sym = tok;
        }
        return n;
    }
};

// --- theory structures ------------------------------------------------------

// index term in difference form: value(var) + off, var = -1 for constants
struct ITerm {
    int var = -1;
    long long off = 0;
    friend bool operator<(const ITerm& a, const ITerm& b) {
        return std::tie(a.var, a.off) < std::tie(b.var, b.off);
    }
    friend bool operator==(const ITerm& a, const ITerm& b) {
        return a.var == b.var && a.off == b.off;
    }
};

// boolean skeleton over difference atoms (u - v <= c)
struct Expr {
    enum class Kind { True, False, Leq, Not, And, Or };
    Kind kind = Kind::True;
    int u = -1, v = -1;  // Leq: int variable ids, -1 = zero node
    long long c = 0;
    std::vector<Expr> kids;
};

Expr e_true() { return {}; }
Expr e_false() { return {Expr::Kind::False, -1, -1, 0, {}}; }
Expr e_leq(int u, int v, long long c) {
    if (u == v) return c >= 0 ? e_true() : e_false();
    return {Expr::Kind::Leq, u, v, c, {}};
}
Expr e_nary(Expr::Kind k, std::vector<Expr> kids) {
    bool conj = k == Expr::Kind::And;
    std::vector<Expr> out;
    for (auto& x : kids) {
        if (x.kind == (conj ? Expr::Kind::True : Expr::Kind::False)) continue;
        if (x.kind == (conj ? Expr::Kind::False : Expr::Kind::True))
            return conj ? e_false() : e_true();
        out.push_back(std::move(x));
    }
    if (out.empty()) return conj ? e_true() : e_false();
    if (out.size() == 1) return out[0];
    Expr e;
    e.kind = k;
    e.kids = std::move(out);
    return e;
}
Expr e_and(std::vector<Expr> k) { return e_nary(Expr::Kind::And, std::move(k)); }
Expr e_or(std::vector<Expr> k) { return e_nary(Expr::Kind::Or, std::move(k)); }
Expr e_eq(int u, int v, long long c) {  // u - v = c
    return e_and({e_leq(u, v, c), e_leq(v, u, -c)});
}
Expr e_ne(int u, int v, long long c) {
    return e_or({e_leq(u, v, c - 1), e_leq(v, u, -c - 1)});
}

// --- solver session ---------------------------------------------------------

struct Session {
    std::map<std::string, bool> int_syms;    // name -> is_array
    std::vector<Node> asserts;
    long long step_budget = 40'000'000;

    void reset() {
        int_syms.clear();
        asserts.clear();
    }
};

struct Translator {
    Session& s;
    std::map<std::string, int> int_vars;       // int symbol -> variable id
    int next_var = 1;                          // 0 is the zero node
    std::map<std::string, int> array_of_sym;   // array symbol -> array node id

    struct ArrayNode {                         // plain variable or store
        bool is_store = false;
        int base = -1;
        ITerm index;
        int elem_u = -1;                       // element as term elem_u + elem_c
        long long elem_c = 0;
    };
    std::vector<ArrayNode> arrays;
    std::set<ITerm> read_terms;
    std::map<std::pair<int, ITerm>, int> read_vars;  // (array node, term) -> int var
    int fresh_counter = 0;

    explicit Translator(Session& sess) : s(sess) {}

    int intvar(const std::string& name) {
        auto it = int_vars.find(name);
        if (it != int_vars.end()) return it->second;
        int id = next_var++;
        int_vars.emplace(name, id);
        return id;
    }

    int fresh_intvar(const std::string& stem) {
        return intvar(" fresh_" + stem + std::to_string(fresh_counter++));
    }

    bool is_array_sym(const std::string& n) const {
        auto it = s.int_syms.find(n);
        return it != s.int_syms.end() && it->second;
    }

    int array_node(const Node& n) {
        if (n.kind == Node::Kind::Sym) {
            if (!is_array_sym(n.sym)) throw SmtError{"not an array: " + n.sym};
            auto it = array_of_sym.find(n.sym);
            if (it != array_of_sym.end()) return it->second;
            arrays.push_back({});
            array_of_sym.emplace(n.sym, static_cast<int>(arrays.size() - 1));
            return static_cast<int>(arrays.size() - 1);
        }
        if (n.kind == Node::Kind::List && !n.kids.empty() &&
            n.kids[0].kind == Node::Kind::Sym && n.kids[0].sym == "store") {
            if (n.kids.size() != 4) throw SmtError{"store arity"};
            int base = array_node(n.kids[1]);
            ITerm idx = iterm(n.kids[2]);
            auto [eu, ec] = int_term(n.kids[3]);
            ArrayNode node;
            node.is_store = true;
            node.base = base;
            node.index = idx;
            node.elem_u = eu;
            node.elem_c = ec;
            for (size_t i = 0; i < arrays.size(); ++i) {
                const auto& a = arrays[i];
                if (a.is_store && a.base == base && a.index == idx && a.elem_u == eu &&
                    a.elem_c == ec)
                    return static_cast<int>(i);
            }
            arrays.push_back(node);
            return static_cast<int>(arrays.size() - 1);
        }
        throw SmtError{"unsupported array term"};
    }

    ITerm iterm(const Node& n) {
        auto [u, c] = int_term(n);
        return ITerm{u, c};
    }

    // integer term in difference form: variable + constant
    std::pair<int, long long> int_term(const Node& n) {
        if (n.kind == Node::Kind::Num) return {-1, n.num};
        if (n.kind == Node::Kind::Sym) {
            if (is_array_sym(n.sym)) throw SmtError{"array used as integer: " + n.sym};
            if (!s.int_syms.count(n.sym)) throw SmtError{"undeclared symbol: " + n.sym};
            return {intvar(n.sym), 0};
        }
        if (n.kids.empty() || n.kids[0].kind != Node::Kind::Sym)
            throw SmtError{"unsupported term"};
        const std::string& op = n.kids[0].sym;
        if (op == "+" || op == "-") {
            int var = -1;
            long long c = 0;
            bool first = true;
            for (size_t i = 1; i < n.kids.size(); ++i) {
                auto [u, k] = int_term(n.kids[i]);
                long long sign = (op == "-" && !first) ? -1 : 1;
                if (op == "-" && n.kids.size() == 2) sign = -1;  // unary minus
                if (u >= 0) {
                    if (sign < 0) throw SmtError{"non-difference term (negated variable)"};
                    if (var >= 0) throw SmtError{"non-difference term (two variables)"};
                    var = u;
                }
                c += sign * k;
                first = false;
            }
            return {var, c};
        }
        if (op == "select") {
            if (n.kids.size() != 3) throw SmtError{"select arity"};
            int arr = array_node(n.kids[1]);
            ITerm idx = iterm(n.kids[2]);
            read_terms.insert(idx);
            return {read_var(arr, idx), 0};
        }
        throw SmtError{"unsupported operator: " + op};
    }

    int read_var(int arr, const ITerm& t) {
        auto key = std::make_pair(arr, t);
        auto it = read_vars.find(key);
        if (it != read_vars.end()) return it->second;
        int id = next_var++;
        read_vars.emplace(key, id);
        return id;
    }

    // static truth of t1 = t2 where both share a variable or are constants
    std::optional<bool> static_eq(const ITerm& a, const ITerm& b) {
        if (a.var == b.var) return a.off == b.off;
        return std::nullopt;
    }

    Expr term_eq(const ITerm& a, const ITerm& b) { return e_eq(a.var, b.var, b.off - a.off); }
    Expr term_ne(const ITerm& a, const ITerm& b) { return e_ne(a.var, b.var, b.off - a.off); }

    Expr formula(const Node& n, bool neg) {
        if (n.kind == Node::Kind::Sym) {
            if (n.sym == "true") return neg ? e_false() : e_true();
            if (n.sym == "false") return neg ? e_true() : e_false();
            throw SmtError{"boolean variables are not supported: " + n.sym};
        }
        if (n.kind != Node::Kind::List || n.kids.empty() || n.kids[0].kind != Node::Kind::Sym)
            throw SmtError{"unsupported formula"};
        const std::string& op = n.kids[0].sym;
        auto kid_formulas = [&](bool kneg) {
            std::vector<Expr> out;
            for (size_t i = 1; i < n.kids.size(); ++i) out.push_back(formula(n.kids[i], kneg));
            return out;
        };
        if (op == "and") return neg ? e_or(kid_formulas(true)) : e_and(kid_formulas(false));
        if (op == "or") return neg ? e_and(kid_formulas(true)) : e_or(kid_formulas(false));
        if (op == "not") return formula(n.kids[1], !neg);
        if (op == "=>") {
            Expr a = formula(n.kids[1], !neg ? true : false);
            Expr b = formula(n.kids[2], neg);
            if (!neg) return e_or({formula(n.kids[1], true), formula(n.kids[2], false)});
            return e_and({formula(n.kids[1], false), formula(n.kids[2], true)});
        }
        if (op == "=" || op == "distinct" || op == "<=" || op == "<" || op == ">=" || op == ">") {
            if (n.kids.size() != 3) throw SmtError{op + " arity"};
            // array equality?
            auto looks_array = [&](const Node& k) {
                if (k.kind == Node::Kind::Sym) return is_array_sym(k.sym);
                return k.kind == Node::Kind::List && !k.kids.empty() &&
                       k.kids[0].kind == Node::Kind::Sym && k.kids[0].sym == "store";
            };
            if (op == "=" && (looks_array(n.kids[1]) || looks_array(n.kids[2]))) {
                int a = array_node(n.kids[1]);
                int b = array_node(n.kids[2]);
                return array_eq(a, b, neg);
            }
            auto [u, cu] = int_term(n.kids[1]);
            auto [v, cv] = int_term(n.kids[2]);
            long long c = cv - cu;  // u - v ~ c
            std::string eff = op;
            if (op == "distinct") eff = neg ? "=" : "!=";
            else if (op == "=" && neg) eff = "!=";
            else if (neg) {
                if (op == "<=") eff = ">";
                else if (op == "<") eff = ">=";
                else if (op == ">=") eff = "<";
                else if (op == ">") eff = "<=";
            }
            if (eff == "=") return e_eq(u, v, c);
            if (eff == "!=") return e_ne(u, v, c);
            if (eff == "<=") return e_leq(u, v, c);
            if (eff == "<") return e_leq(u, v, c - 1);
            if (eff == ">=") return e_leq(v, u, -c);
            return e_leq(v, u, -c - 1);  // >
        }
        if (op == "ite") throw SmtError{"ite is not supported"};
        throw SmtError{"unsupported operator: " + op};
    }

    std::vector<std::pair<std::pair<int, int>, bool>> array_eqs;  // ((a,b), positive)

    Expr array_eq(int a, int b, bool neg) {
        // expansion is deferred until all read terms are known
        array_eqs.push_back({{a, b}, !neg});
        Expr e;
        e.kind = Expr::Kind::Leq;  // placeholder patched later
        e.u = -1000 - static_cast<int>(array_eqs.size() - 1);
        e.v = -1;
        e.c = 0;
        return e;
    }
};

// --- DPLL(BF) core -----------------------------------------------------------

struct Atom {
    int u, v;  // u - v <= c ; -1 for the zero node
    long long c;
    friend bool operator<(const Atom& a, const Atom& b) {
        return std::tie(a.u, a.v, a.c) < std::tie(b.u, b.v, b.c);
    }
};

struct Dpll {
    int nvars = 0;                       // total boolean variables
    int natoms = 0;                      // the first `natoms` are theory atoms
    std::vector<Atom> atoms;
    std::vector<std::vector<int>> clauses;  // literals: +v+1 / -(v+1)
    int nnodes = 0;                      // difference graph nodes
    long long budget = 0;

    std::vector<int8_t> value;           // 0 unknown, 1 true, 2 false
    std::vector<int> trail;

    bool feasible() {
        // Bellman-Ford over edges from assigned atoms
        struct E {
            int from, to;
            long long w;
        };
        std::vector<E> es;
        for (int i = 0; i < natoms; ++i) {
            if (value[i] == 0) continue;
            const Atom& a = atoms[i];
            int u = a.u + 1, v = a.v + 1;  // shift so zero node = 0
            if (value[i] == 1) es.push_back({v, u, a.c});
            else es.push_back({u, v, -a.c - 1});
        }
        int n = nnodes + 1;
        std::vector<long long> dist(n, 0);
        for (int round = 0; round < n; ++round) {
            bool changed = false;
            for (const auto& e : es)
                if (dist[e.from] + e.w < dist[e.to]) {
                    dist[e.to] = dist[e.from] + e.w;
                    changed = true;
                }
            if (!changed) return true;
        }
        return false;  // negative cycle
    }

    bool assign(int var, bool val) {
        value[var] = val ? 1 : 2;
        trail.push_back(var);
        if (var < natoms && !feasible()) return false;
        return true;
    }

    void undo_to(size_t mark) {
        while (trail.size() > mark) {
            value[trail.back()] = 0;
            trail.pop_back();
        }
    }

    // returns false on conflict
    bool propagate() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const auto& cl : clauses) {
                int unassigned = -1;
                int count = 0;
                bool sat = false;
                for (int lit : cl) {
                    int v = std::abs(lit) - 1;
                    if (value[v] == 0) {
                        ++count;
                        unassigned = lit;
                    } else if ((lit > 0) == (value[v] == 1)) {
                        sat = true;
                        break;
                    }
                }
                if (sat) continue;
                if (count == 0) return false;
                if (count == 1) {
                    if (!assign(std::abs(unassigned) - 1, unassigned > 0)) return false;
                    changed = true;
                }
            }
        }
        return true;
    }

    enum class Res { Sat, Unsat, Unknown };

    Res solve() {
        if (--budget < 0) return Res::Unknown;
        size_t mark = trail.size();
        if (!propagate()) {
            undo_to(mark);
            return Res::Unsat;
        }
        int var = -1;
        for (int i = 0; i < nvars; ++i)
            if (value[i] == 0) { var = i; break; }
        if (var < 0) return Res::Sat;
        for (int val = 1; val >= 0; --val) {
            size_t m2 = trail.size();
            if (assign(var, val)) {
                Res r = solve();
                if (r != Res::Unsat) return r;
            }
            undo_to(m2);
        }
        undo_to(mark);
        return Res::Unsat;
    }
};

// Tseitin encoding; returns the literal representing e.
int tseitin(const Expr& e, Dpll& d, std::map<Atom, int>& atom_ids,
            const std::vector<Expr>& patched) {
    switch (e.kind) {
        case Expr::Kind::True:
        case Expr::Kind::False: {
            int v = d.nvars++;
            d.value.push_back(0);
            d.clauses.push_back({e.kind == Expr::Kind::True ? v + 1 : -(v + 1)});
            return v + 1;
        }
        case Expr::Kind::Leq: {
            if (e.u <= -1000) return tseitin(patched[static_cast<size_t>(-1000 - e.u)], d,
                                             atom_ids, patched);
            Atom a{e.u, e.v, e.c};
            auto it = atom_ids.find(a);
            if (it != atom_ids.end()) return it->second + 1;
            int v = static_cast<int>(atom_ids.size());
            atom_ids.emplace(a, v);
            return v + 1;
        }
        case Expr::Kind::Not:
            return -tseitin(e.kids[0], d, atom_ids, patched);
        case Expr::Kind::And:
        case Expr::Kind::Or: {
            std::vector<int> lits;
            for (const auto& k : e.kids) lits.push_back(tseitin(k, d, atom_ids, patched));
            int v = d.nvars++;
            d.value.push_back(0);
            int self = v + 1;
            if (e.kind == Expr::Kind::And) {
                std::vector<int> big{self};
                for (int l : lits) {
                    d.clauses.push_back({-self, l});
                    big.push_back(-l);
                }
                d.clauses.push_back(big);
            } else {
                std::vector<int> big{-self};
                for (int l : lits) {
                    d.clauses.push_back({self, -l});
                    big.push_back(l);
                }
                d.clauses.push_back(big);
            }
            return self;
        }
    }
    return 0;
}

std::string check_sat(Session& s) {
    Translator tr(s);
    std::vector<Expr> conjuncts;
    for (const auto& a : s.asserts) conjuncts.push_back(tr.formula(a, false));

    // one witness index per negated array equality
    std::vector<ITerm> witnesses;
    for (const auto& [ab, positive] : tr.array_eqs) {
        if (!positive) {
            int w = tr.fresh_intvar("w");
            witnesses.push_back(ITerm{w, 0});
            tr.read_terms.insert(ITerm{w, 0});
        } else {
            witnesses.push_back(ITerm{});
        }
    }
    // store indices participate in reads
    for (const auto& a : tr.arrays)
        if (a.is_store) tr.read_terms.insert(a.index);

    std::vector<ITerm> terms(tr.read_terms.begin(), tr.read_terms.end());

    // resolve deferred array equalities
    std::vector<Expr> patched;
    {
        size_t wi = 0;
        for (const auto& [ab, positive] : tr.array_eqs) {
            auto [a, b] = ab;
            if (positive) {
                std::vector<Expr> eqs;
                for (const auto& t : terms)
                    eqs.push_back(e_eq(tr.read_var(a, t), tr.read_var(b, t), 0));
                patched.push_back(e_and(std::move(eqs)));
            } else {
                const ITerm& w = witnesses[wi];
                patched.push_back(e_ne(tr.read_var(a, w), tr.read_var(b, w), 0));
            }
            ++wi;
        }
    }

    // read-over-write axioms
    for (size_t ai = 0; ai < tr.arrays.size(); ++ai) {
        const auto& a = tr.arrays[ai];
        if (!a.is_store) continue;
        for (const auto& t : terms) {
            int vs = tr.read_var(static_cast<int>(ai), t);
            int vb = tr.read_var(a.base, t);
            auto st = tr.static_eq(t, a.index);
            Expr hit = e_eq(vs, a.elem_u, a.elem_c);
            Expr miss = e_eq(vs, vb, 0);
            if (st.has_value()) {
                conjuncts.push_back(*st ? hit : miss);
            } else {
                conjuncts.push_back(e_or({tr.term_ne(t, a.index), hit}));
                conjuncts.push_back(e_or({tr.term_eq(t, a.index), miss}));
            }
        }
    }

    // Ackermann congruence within each array node
    for (const auto& [key, rv] : tr.read_vars) {
        for (const auto& [key2, rv2] : tr.read_vars) {
            if (key.first != key2.first || !(key.second < key2.second)) continue;
            auto st = tr.static_eq(key.second, key2.second);
            if (st.has_value()) {
                if (*st) conjuncts.push_back(e_eq(rv, rv2, 0));
                continue;
            }
            conjuncts.push_back(e_or({tr.term_ne(key.second, key2.second), e_eq(rv, rv2, 0)}));
        }
    }

    Expr root = e_and(std::move(conjuncts));
    if (root.kind == Expr::Kind::True) return "sat";
    if (root.kind == Expr::Kind::False) return "unsat";

    Dpll d;
    std::map<Atom, int> atom_ids;
    // first pass to count atoms: tseitin assigns atom ids on the fly, so run
    // it with aux vars offset afterwards
    Dpll tmp;
    std::map<Atom, int> tmp_ids;
    tmp.nvars = 0;
    tseitin(root, tmp, tmp_ids, patched);
    int natoms = static_cast<int>(tmp_ids.size());

    d.natoms = natoms;
    d.nvars = natoms;
    d.value.assign(static_cast<size_t>(natoms), 0);
    int root_lit = tseitin(root, d, atom_ids, patched);
    d.clauses.push_back({root_lit});
    d.atoms.resize(atom_ids.size());
    for (const auto& [a, id] : atom_ids) d.atoms[static_cast<size_t>(id)] = a;
    d.nnodes = tr.next_var + 1;
    d.budget = s.step_budget;

    // aux var ids were allocated after atoms by construction: tseitin
    // increments d.nvars only for aux vars, and atoms got [0, natoms)
    Dpll::Res r = d.solve();
    if (r == Dpll::Res::Sat) return "sat";
    if (r == Dpll::Res::Unsat) return "unsat";
    return "unknown";
}

}  // namespace

int main() {
    std::ios::sync_with_stdio(false);
    Session session;
    Reader reader;
    while (true) {
        std::optional<Node> cmd;
        try {
            cmd = reader.read();
        } catch (const SmtError& e) {
            std::cout << "(error \"" << e.msg << "\")" << std::endl;
            continue;
        }
        if (!cmd) break;
        try {
            if (cmd->kind != Node::Kind::List || cmd->kids.empty() ||
                cmd->kids[0].kind != Node::Kind::Sym)
                throw SmtError{"expected a command"};
            const std::string& op = cmd->kids[0].sym;
            if (op == "exit") break;
            if (op == "reset") {
                session.reset();
            } else if (op == "set-logic" || op == "set-option" || op == "set-info" ||
                       op == "push" || op == "pop") {
                // push/pop unused by the client; accepted as no-ops after reset
            } else if (op == "declare-const" || op == "declare-fun") {
                if (cmd->kids.size() < 3) throw SmtError{op + " arity"};
                const std::string name = cmd->kids[1].sym;
                const Node& sort = cmd->kids.back();
                bool is_array = sort.kind == Node::Kind::List && !sort.kids.empty() &&
                                sort.kids[0].kind == Node::Kind::Sym &&
                                sort.kids[0].sym == "Array";
                if (!is_array &&
                    !(sort.kind == Node::Kind::Sym && sort.sym == "Int"))
                    throw SmtError{"unsupported sort"};
                if (op == "declare-fun" && cmd->kids[2].kind == Node::Kind::List &&
                    !cmd->kids[2].kids.empty())
                    throw SmtError{"only constants are supported"};
                session.int_syms[name] = is_array;
            } else if (op == "assert") {
                if (cmd->kids.size() != 2) throw SmtError{"assert arity"};
                session.asserts.push_back(cmd->kids[1]);
            } else if (op == "check-sat") {
                std::cout << check_sat(session) << std::endl;
            } else if (op == "get-info" || op == "echo") {
                std::cout << "unsupported" << std::endl;
            } else {
                throw SmtError{"unknown command: " + op};
            }
        } catch (const SmtError& e) {
            std::cout << "(error \"" << e.msg << "\")" << std::endl;
        }
    }
    return 0;
}
