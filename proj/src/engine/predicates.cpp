#include "regabs/engine/predicates.hpp"

#include <algorithm>

#include "regabs/logic/ops.hpp"

namespace regabs::engine {

using namespace regabs::logic;

namespace {

Term prime_term(const Term& t, const Vocabulary& vocab) {
    Term r = t;
    switch (t.kind) {
        case Term::Kind::Lit:
            return r;
        case Term::Kind::Var:
            if (t.name != kDesignated && vocab.has(t.name) && !vocab.is_param(t.name))
                r.name = primed(t.name);
            return r;
        case Term::Kind::Size:
            return r;  // sizes are parameters after resolution
        case Term::Kind::Read:
            r.name = primed(t.name);
            r.idx = std::make_shared<const Term>(prime_term(*t.idx, vocab));
            return r;
    }
    return r;
}

void collect_reads(const Term& t, std::vector<Term>& out) {
    if (t.kind == Term::Kind::Read) out.push_back(t);
}

void collect_index_terms(const Term& t, std::vector<Term>& out) {
    if (t.kind == Term::Kind::Read) out.push_back(*t.idx);
    else if (t.kind == Term::Kind::Var) out.push_back(t);
}

bool mentions_designated(const Term& t) {
    if (t.kind == Term::Kind::Var) return t.name == kDesignated;
    if (t.kind == Term::Kind::Read) return mentions_designated(*t.idx);
    return false;
}

}  // namespace

PredicateSet::PredicateSet(std::vector<IndexedPredicate> preds, const Vocabulary& vocab) {
    for (auto& p : preds) {
        p.atom.lhs = resolve_sizes(p.atom.lhs, vocab);
        p.atom.rhs = resolve_sizes(p.atom.rhs, vocab);
        preds_.push_back(p);
        primed_.push_back(Atom{prime_term(p.atom.lhs, vocab), p.atom.rel,
                               prime_term(p.atom.rhs, vocab)});
    }
}

Atom PredicateSet::instantiate(size_t k, const Term& t, bool primed) const {
    const Atom& a = primed ? primed_.at(k - 1) : preds_.at(k - 1).atom;
    return substitute(a, t, kDesignated);
}

std::vector<Term> PredicateSet::reads(size_t k, const Term& t, bool primed) const {
    Atom a = instantiate(k, t, primed);
    std::vector<Term> out;
    collect_reads(a.lhs, out);
    collect_reads(a.rhs, out);
    return out;
}

std::optional<PredicateSet::PredLit> PredicateSet::match(const Atom& atom,
                                                         bool allow_primed) const {
    Atom target = canon(atom);
    Atom target_neg = canon(negate(atom));
    for (int primed = 0; primed <= (allow_primed ? 1 : 0); ++primed) {
        for (size_t k = 1; k <= m(); ++k) {
            const Atom& p = primed ? primed_[k - 1] : preds_[k - 1].atom;
            // candidate instantiation points, from aligning the atom's index
            // terms with the predicate's designated offsets
            std::vector<Term> cands;
            std::vector<Term> atom_terms;
            collect_index_terms(atom.lhs, atom_terms);
            collect_index_terms(atom.rhs, atom_terms);
            std::vector<int> offs;
            std::vector<Term> pterms;
            collect_index_terms(p.lhs, pterms);
            collect_index_terms(p.rhs, pterms);
            for (const auto& pt : pterms)
                if (pt.kind == Term::Kind::Var && pt.name == kDesignated) offs.push_back(pt.offset);
            for (const auto& at : atom_terms)
                for (int off : offs) cands.push_back(t_shift(at, -off));
            std::sort(cands.begin(), cands.end());
            cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
            for (const auto& t : cands) {
                Atom inst = substitute(p, t, kDesignated);
                Atom c = canon(inst);
                if (cmp(c, target) == 0)
                    return PredLit{k, primed != 0, true, t};
                if (cmp(c, target_neg) == 0)
                    return PredLit{k, primed != 0, false, t};
            }
        }
    }
    return std::nullopt;
}

std::vector<Term> PredicateSet::plain_terms() const {
    std::vector<Term> out;
    for (const auto& p : preds_) {
        std::vector<Term> ts;
        collect_index_terms(p.atom.lhs, ts);
        collect_index_terms(p.atom.rhs, ts);
        for (const auto& t : ts)
            if (!mentions_designated(t)) out.push_back(t);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<int> PredicateSet::designated_offsets() const {
    std::vector<int> out;
    for (const auto& p : preds_) {
        std::vector<Term> ts;
        collect_index_terms(p.atom.lhs, ts);
        collect_index_terms(p.atom.rhs, ts);
        for (const auto& t : ts)
            if (t.kind == Term::Kind::Var && t.name == kDesignated) out.push_back(t.offset);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace regabs::engine
