#include <fstream>
#include <sstream>

#include "lexer.hpp"
#include "regabs/front/parse.hpp"
#include "regabs/logic/ops.hpp"

namespace regabs::front {

using namespace regabs::logic;

namespace {

struct Macro {
    std::vector<std::string> args;
    FormulaPtr body;       // non-temporal macros
    TPropPtr tbody;        // temporal macros (.rprop only)
};

class Parser {
public:
    Parser(const std::string& text, bool temporal_allowed)
        : toks_(lex(text)), temporal_(temporal_allowed) {}

    const Token& peek(int k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    const Token& cur() const { return peek(0); }
    void next() { if (pos_ + 1 < toks_.size()) ++pos_; }

    [[noreturn]] void err(const std::string& m) const {
        throw ParseError(m, cur().line, cur().col);
    }

    bool at(Tok k) const { return cur().kind == k; }
    bool at_ident(const char* kw) const { return at(Tok::Ident) && cur().text == kw; }

    void expect(Tok k, const char* what) {
        if (!at(k)) err(std::string("expected ") + what);
        next();
    }

    std::string expect_ident(const char* what) {
        if (!at(Tok::Ident)) err(std::string("expected ") + what);
        std::string s = cur().text;
        next();
        return s;
    }

    void skip_newlines() {
        while (at(Tok::Newline)) next();
    }

    void end_line() {
        if (at(Tok::End)) return;
        if (!at(Tok::Newline)) err("expected end of line");
        skip_newlines();
    }

    // --- terms -----------------------------------------------------------

    bool term_starts() const {
        return at(Tok::Number) || at(Tok::Ident) || at(Tok::Designated) ||
               (at(Tok::Bar) && peek(1).kind == Tok::Ident && peek(2).kind == Tok::Bar &&
                peek(1).glued_left && peek(2).glued_left) ||
               at(Tok::Minus);
    }

    Term parse_term() {
        Term base;
        if (at(Tok::Number)) {
            base = t_lit(static_cast<int>(cur().number));
            next();
        } else if (at(Tok::Minus)) {
            next();
            if (!at(Tok::Number)) err("expected number after '-'");
            base = t_lit(-static_cast<int>(cur().number));
            next();
        } else if (at(Tok::Designated)) {
            base = t_var(kDesignated);
            next();
        } else if (at(Tok::Bar)) {
            // |a| with no inner spaces
            next();
            std::string a = expect_ident("array name in |.|");
            expect(Tok::Bar, "'|'");
            base = t_size(a);
        } else if (at(Tok::Ident)) {
            std::string name = cur().text;
            next();
            if (at(Tok::LBracket)) {
                next();
                Term idx = parse_term();
                expect(Tok::RBracket, "']'");
                if (idx.kind == Term::Kind::Read) err("nested array reads are not supported");
                base = t_read(name, idx);
            } else {
                base = t_var(name);
            }
        } else {
            err("expected term");
        }
        while (at(Tok::Plus) || at(Tok::Minus)) {
            bool minus = at(Tok::Minus);
            next();
            if (!at(Tok::Number)) err("expected integer offset");
            int n = static_cast<int>(cur().number);
            next();
            base = t_shift(base, minus ? -n : n);
        }
        return base;
    }

    Rel parse_rel() {
        if (!at(Tok::Rel)) err("expected relation");
        std::string t = cur().text;
        next();
        if (t == "=") return Rel::Eq;
        if (t == "!=") return Rel::Ne;
        if (t == "<=") return Rel::Le;
        if (t == "<") return Rel::Lt;
        if (t == ">=") return Rel::Ge;
        return Rel::Gt;
    }

    // --- temporal formulas -------------------------------------------------
    // Parsed uniformly as TProp; collapse() lowers to Formula when no G/F.

    TPropPtr parse_tformula() { return parse_iff(); }

    TPropPtr parse_iff() {
        TPropPtr l = parse_imp();
        while (at(Tok::Iff)) {
            next();
            TPropPtr r = parse_imp();
            l = tp_and({tp_implies(l, r), tp_implies(r, l)});
        }
        return l;
    }

    TPropPtr parse_imp() {
        TPropPtr l = parse_or();
        if (at(Tok::Arrow)) {
            next();
            return tp_implies(l, parse_imp());
        }
        return l;
    }

    TPropPtr parse_or() {
        TPropPtr l = parse_and();
        while (at(Tok::Bar)) {
            next();
            l = tp_or({l, parse_and()});
        }
        return l;
    }

    TPropPtr parse_and() {
        TPropPtr l = parse_unary();
        while (at(Tok::Amp)) {
            next();
            l = tp_and({l, parse_unary()});
        }
        return l;
    }

    TPropPtr parse_unary() {
        if (at(Tok::Bang)) {
            next();
            return tp_not(parse_unary());
        }
        if (at(Tok::Ident) && (cur().text == "G" || cur().text == "F") && temporal_) {
            bool g = cur().text == "G";
            next();
            TPropPtr k = parse_unary();
            return g ? tp_g(k) : tp_f(k);
        }
        if (at_ident("forall") || at_ident("exists")) {
            bool uni = cur().text == "forall";
            next();
            std::string v = expect_ident("quantified variable");
            expect(Tok::Dot, "'.'");
            TPropPtr body = parse_iff();
            return uni ? tp_forall(v, body) : tp_exists(v, body);
        }
        if (at(Tok::LParen)) {
            next();
            TPropPtr f = parse_iff();
            expect(Tok::RParen, "')'");
            return f;
        }
        if (at_ident("true")) { next(); return tp_leaf(f_true()); }
        if (at_ident("false")) { next(); return tp_leaf(f_false()); }

        // macro reference?
        if (at(Tok::Ident) && macros_.count(cur().text) &&
            !(peek(1).kind == Tok::LBracket) && !(peek(1).kind == Tok::Rel) &&
            !(peek(1).kind == Tok::Plus) && !(peek(1).kind == Tok::Minus)) {
            std::string name = cur().text;
            next();
            const Macro& m = macros_.at(name);
            std::vector<Term> args;
            if (at(Tok::LParen)) {
                next();
                while (true) {
                    args.push_back(parse_term());
                    if (at(Tok::Comma)) { next(); continue; }
                    break;
                }
                expect(Tok::RParen, "')'");
            }
            if (args.size() != m.args.size())
                err("macro " + name + " expects " + std::to_string(m.args.size()) + " arguments");
            TPropPtr body = m.tbody ? m.tbody : tp_leaf(m.body);
            for (size_t i = 0; i < args.size(); ++i)
                body = substitute(body, args[i], m.args[i]);
            return body;
        }

        Term lhs = parse_term();
        Rel r = parse_rel();
        Term rhs = parse_term();
        return tp_leaf(f_atom(std::move(lhs), r, std::move(rhs)));
    }

    // Lowers a TProp without temporal operators to a Formula.
    FormulaPtr collapse(const TPropPtr& p) {
        switch (p->kind) {
            case TProp::Kind::Leaf: return p->leaf;
            case TProp::Kind::Not: return f_not(collapse(p->kids[0]));
            case TProp::Kind::And: {
                std::vector<FormulaPtr> ks;
                for (const auto& k : p->kids) ks.push_back(collapse(k));
                return f_and(std::move(ks));
            }
            case TProp::Kind::Or: {
                std::vector<FormulaPtr> ks;
                for (const auto& k : p->kids) ks.push_back(collapse(k));
                return f_or(std::move(ks));
            }
            case TProp::Kind::Exists: return f_exists(p->var, collapse(p->kids[0]));
            case TProp::Kind::Forall: return f_forall(p->var, collapse(p->kids[0]));
            default: err("temporal operator not allowed here");
        }
    }

    FormulaPtr parse_formula() { return collapse(parse_tformula()); }

    std::vector<Token> toks_;
    size_t pos_ = 0;
    bool temporal_ = false;
    std::map<std::string, Macro> macros_;
};

void parse_macro_line(Parser& p, bool temporal) {
    p.next();  // let
    std::string name = p.expect_ident("macro name");
    Macro m;
    if (p.at(Tok::LParen)) {
        p.next();
        while (true) {
            m.args.push_back(p.expect_ident("macro argument"));
            if (p.at(Tok::Comma)) { p.next(); continue; }
            break;
        }
        p.expect(Tok::RParen, "')'");
    }
    p.expect(Tok::Colon, "':'");
    if (temporal) {
        m.tbody = p.parse_tformula();
    } else {
        m.body = p.parse_formula();
    }
    p.macros_[name] = std::move(m);
    p.end_line();
}

}  // namespace

ArraySystem parse_system(const std::string& text) {
    Parser p(text, false);
    ArraySystem sys;
    bool saw_decl = false;
    p.skip_newlines();
    if (p.at(Tok::End))
        throw ParseError("expected vocabulary block", p.cur().line, p.cur().col);

    std::vector<std::pair<std::string, std::string>> pending_arrays;
    while (!p.at(Tok::End)) {
        if (p.at_ident("system")) {
            p.next();
            p.expect_ident("system name");
            p.end_line();
        } else if (p.at_ident("param")) {
            p.next();
            std::string n = p.expect_ident("parameter name");
            VarInfo vi;
            vi.sort = Sort::Index;
            vi.param = true;
            sys.vocab.add(n, vi);
            saw_decl = true;
            p.end_line();
        } else if (p.at_ident("extent")) {
            p.next();
            sys.vocab.extent = p.expect_ident("extent parameter");
            p.end_line();
        } else if (p.at_ident("index")) {
            p.next();
            std::string n = p.expect_ident("index variable name");
            VarInfo vi;
            vi.sort = Sort::Index;
            if (p.at_ident("bounds")) {
                p.next();
                vi.lo = p.parse_term();
                vi.hi = p.parse_term();
            }
            sys.vocab.add(n, vi);
            saw_decl = true;
            p.end_line();
        } else if (p.at_ident("data")) {
            p.next();
            std::string n = p.expect_ident("data variable name");
            VarInfo vi;
            vi.sort = Sort::Data;
            sys.vocab.add(n, vi);
            saw_decl = true;
            p.end_line();
        } else if (p.at_ident("array")) {
            p.next();
            std::string n = p.expect_ident("array name");
            if (!p.at_ident("size")) p.err("expected 'size'");
            p.next();
            std::string sz = p.expect_ident("size parameter");
            VarInfo vi;
            vi.sort = Sort::Array;
            vi.size_param = sz;
            sys.vocab.add(n, vi);
            saw_decl = true;
            p.end_line();
        } else if (p.at_ident("let")) {
            parse_macro_line(p, false);
        } else if (p.at_ident("init")) {
            p.next();
            p.expect(Tok::Colon, "':'");
            sys.init = p.parse_formula();
            p.end_line();
        } else if (p.at_ident("cmd")) {
            p.next();
            GuardedCommand cmd;
            cmd.name = p.expect_ident("command name");
            p.expect(Tok::Colon, "':'");
            cmd.guard = p.parse_formula();
            p.expect(Tok::Guard, "'|>'");
            while (true) {
                Update u;
                std::string tgt = p.expect_ident("update target");
                u.target = tgt;
                if (p.at(Tok::LBracket)) {
                    p.next();
                    u.cell = p.parse_term();
                    p.expect(Tok::RBracket, "']'");
                    p.expect(Tok::Assign, "':='");
                    if (p.at(Tok::Star)) {
                        p.next();
                        u.kind = Update::Kind::HavocCell;
                    } else {
                        u.kind = Update::Kind::SetCell;
                        u.rhs = p.parse_term();
                    }
                } else {
                    p.expect(Tok::Assign, "':='");
                    if (p.at(Tok::Star)) {
                        p.next();
                        u.kind = Update::Kind::HavocIndex;
                    } else {
                        u.kind = Update::Kind::SetIndex;
                        u.rhs = p.parse_term();
                    }
                }
                cmd.updates.push_back(std::move(u));
                if (p.at(Tok::Comma)) { p.next(); continue; }
                break;
            }
            sys.commands.push_back(std::move(cmd));
            p.end_line();
        } else {
            p.err("expected declaration, init, or cmd");
        }
    }

    if (!saw_decl) throw ParseError("expected vocabulary block", 1, 1);
    if (!sys.init) sys.init = f_true();

    // default extent: the unique array-size parameter
    if (sys.vocab.extent.empty()) {
        std::set<std::string> size_params;
        for (const auto& a : sys.vocab.array_vars())
            size_params.insert(sys.vocab.size_param_of(a));
        if (size_params.size() == 1) {
            sys.vocab.extent = *size_params.begin();
        } else {
            throw ParseError(size_params.empty()
                                 ? "no extent parameter declared"
                                 : "several array-size parameters; extent declaration is mandatory",
                             1, 1);
        }
    }

    sys.vocab.validate();
    check_sorted(sys.init, sys.vocab, false);
    for (const auto& c : sys.commands) check_sorted(c, sys.vocab);
    return sys;
}

PropertyFile parse_property_file(const std::string& text, const Vocabulary& vocab) {
    Parser p(text, true);
    PropertyFile out;
    out.vocab = vocab;
    p.skip_newlines();
    while (!p.at(Tok::End)) {
        if (p.at_ident("let")) {
            parse_macro_line(p, true);
        } else if (p.at_ident("param")) {
            p.next();
            std::string n = p.expect_ident("parameter name");
            VarInfo vi;
            vi.sort = Sort::Index;
            vi.param = true;
            out.vocab.add(n, vi);
            p.end_line();
        } else if (p.at_ident("prop")) {
            p.next();
            TemporalProperty tp;
            tp.name = p.expect_ident("property name");
            p.expect(Tok::Colon, "':'");
            tp.ast = p.parse_tformula();
            p.end_line();
            if (out.props.count(tp.name))
                throw ParseError("duplicate property " + tp.name, p.cur().line, p.cur().col);
            out.props.emplace(tp.name, std::move(tp));
        } else {
            p.err("expected 'let', 'param', or 'prop'");
        }
    }
    for (auto& [name, tp] : out.props) {
        // quantified variables must be index-sorted (fresh); leaves sort-checked
        struct Walk {
            const Vocabulary& v;
            void go(const TPropPtr& q, std::set<std::string>& bound) {
                if (q->kind == TProp::Kind::Leaf) {
                    Vocabulary ext = v;
                    for (const auto& b : bound)
                        if (!ext.has(b)) ext.add(b, VarInfo{Sort::Index, false, "", {}, {}});
                    check_sorted(q->leaf, ext, false);
                    return;
                }
                if (q->kind == TProp::Kind::Exists || q->kind == TProp::Kind::Forall) {
                    if (v.has(q->var))
                        throw SortError("quantified variable shadows declaration: " + q->var);
                    bool fresh = bound.insert(q->var).second;
                    go(q->kids[0], bound);
                    if (fresh) bound.erase(q->var);
                    return;
                }
                for (const auto& k : q->kids) go(k, bound);
            }
        } walk{out.vocab};
        std::set<std::string> bound;
        walk.go(tp.ast, bound);
        tp.flags = classify(tp.ast, out.vocab);
    }
    return out;
}

TemporalProperty parse_property(const std::string& text, const Vocabulary& vocab) {
    Parser p(text, true);
    p.skip_newlines();
    TemporalProperty tp;
    tp.name = "prop";
    tp.ast = p.parse_tformula();
    p.skip_newlines();
    if (!p.at(Tok::End)) p.err("trailing input after property");
    tp.flags = classify(tp.ast, vocab);
    return tp;
}

PredicateFile parse_predicates(const std::string& text, const Vocabulary& vocab) {
    Parser p(text, false);
    PredicateFile out;
    out.vocab = vocab;

    Vocabulary ext = vocab;  // with designated variable in scope
    ext.add(kDesignated, VarInfo{Sort::Index, false, "", {}, {}});

    std::vector<Atom> seen;
    p.skip_newlines();
    while (!p.at(Tok::End)) {
        if (p.at_ident("param")) {
            p.next();
            std::string n = p.expect_ident("parameter name");
            VarInfo vi;
            vi.sort = Sort::Index;
            vi.param = true;
            out.vocab.add(n, vi);
            ext.add(n, vi);
            p.end_line();
            continue;
        }
        if (p.at_ident("pred")) p.next();
        FormulaPtr f = p.parse_formula();
        if (f->kind != Formula::Kind::Atom)
            p.err("a predicate must be a single atom");
        IndexedPredicate ip;
        ip.atom = f->atom;
        check_sorted(f, ext, false);
        auto fv = free_vars(f);
        ip.mentions_designated = fv.count(kDesignated) != 0;
        if (!ip.mentions_designated)
            out.warnings.push_back("predicate without designated variable: " + to_string(ip.atom));
        Atom c = canon(ip.atom);
        Atom cn = canon(negate(ip.atom));
        Term l = c.lhs, r = c.rhs;
        int dl = l.offset, dr = r.offset;
        l.offset = r.offset = 0;
        if (l == r && dl == dr && (c.rel == Rel::Eq || c.rel == Rel::Le || c.rel == Rel::Ge)) {
            ip.tautological = true;
            out.warnings.push_back("tautological predicate: " + to_string(ip.atom));
        }
        for (const auto& s : seen)
            if (cmp(s, c) == 0 || cmp(s, cn) == 0)
                p.err("duplicate predicate " + to_string(ip.atom));
        seen.push_back(c);
        out.predicates.push_back(std::move(ip));
        if (p.at(Tok::Semi)) {
            p.next();
            p.skip_newlines();
            continue;
        }
        p.end_line();
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace regabs::front
