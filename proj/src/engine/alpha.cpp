#include "regabs/engine/alpha.hpp"

#include <functional>

namespace regabs::engine {

using namespace regabs::logic;
using sim::ConcreteState;

std::string to_string(const Abstraction& ab, const AbstractState& s) {
    std::string out = "(";
    auto ints = ab.vocab.int_vars();
    for (size_t i = 0; i < s.ints.size(); ++i) {
        out += ints[i] + "=" + std::to_string(s.ints[i]) + ",";
    }
    out += "[";
    for (size_t i = 0; i < s.word.size(); ++i) {
        if (i) out += ",";
        for (size_t k = 0; k < ab.P.m(); ++k)
            out += (s.word[i] >> k) & 1 ? "1" : "0";
    }
    return out + "])";
}

wa::ConvWord encode(const Abstraction& ab, const AbstractState& s) {
    std::vector<wa::TrackContent> parts;
    for (long long v : s.ints) {
        wa::TrackContent c;
        c.is_nat = true;
        c.nat = v;
        parts.push_back(c);
    }
    wa::TrackContent w;
    w.word = s.word;
    parts.push_back(w);
    return wa::convolve(ab.state_layout(), parts);
}

AbstractState decode(const Abstraction& ab, const wa::ConvWord& w) {
    auto parts = wa::deconvolve(ab.state_layout(), w);
    AbstractState s;
    for (size_t i = 0; i + 1 < parts.size(); ++i) s.ints.push_back(parts[i].nat);
    s.word = parts.back().word;
    return s;
}

wa::ConvWord encode_pair(const Abstraction& ab, const AbstractState& cur,
                         const AbstractState& nxt) {
    std::vector<wa::TrackContent> parts;
    auto add = [&](const AbstractState& s) {
        for (long long v : s.ints) {
            wa::TrackContent c;
            c.is_nat = true;
            c.nat = v;
            parts.push_back(c);
        }
        wa::TrackContent w;
        w.word = s.word;
        parts.push_back(w);
    };
    add(cur);
    add(nxt);
    return wa::convolve(ab.relation_layout(), parts);
}

FormulaPtr phi_word(const std::vector<int>& w, const PredicateSet& P) {
    std::vector<FormulaPtr> parts;
    for (size_t i = 0; i < w.size(); ++i) {
        for (size_t k = 1; k <= P.m(); ++k) {
            Atom inst = P.instantiate(k, t_lit(static_cast<int>(i + 1)));
            bool bit = (w[i] >> (k - 1)) & 1;
            parts.push_back(f_atom(bit ? inst : negate(inst)));
        }
    }
    return f_and(std::move(parts));
}

namespace {

struct Cell {
    std::string array;
    long long pos;
    friend bool operator<(const Cell& a, const Cell& b) {
        return std::tie(a.array, a.pos) < std::tie(b.array, b.pos);
    }
};

// Evaluates a term under the state plus a completion of out-of-window cells;
// returns nullopt if an unknown cell without completion value is hit.
std::optional<long long> eval_term(const Term& t, const ConcreteState& s,
                                   const std::map<Cell, long long>& completion,
                                   std::set<Cell>* missing) {
    switch (t.kind) {
        case Term::Kind::Lit:
            return t.offset;
        case Term::Kind::Var: {
            auto it = s.ints.find(t.name);
            if (it == s.ints.end()) return std::nullopt;
            return it->second + t.offset;
        }
        case Term::Kind::Size:
            return std::nullopt;
        case Term::Kind::Read: {
            auto idx = eval_term(*t.idx, s, completion, missing);
            if (!idx) return std::nullopt;
            auto it = s.arrays.find(t.name);
            if (it == s.arrays.end()) return std::nullopt;
            const auto& arr = it->second;
            if (*idx >= 1 && *idx <= static_cast<long long>(arr.size()))
                return arr[static_cast<size_t>(*idx - 1)] + t.offset;
            Cell c{t.name, *idx};
            auto cit = completion.find(c);
            if (cit != completion.end()) return cit->second + t.offset;
            if (missing) missing->insert(c);
            return std::nullopt;
        }
    }
    return std::nullopt;
}

}  // namespace

std::set<AbstractState> alpha_ref(const Abstraction& ab, const ConcreteState& s,
                                  long long data_lo, long long data_hi) {
    std::set<AbstractState> out;
    long long extent = s.ints.at(ab.vocab.extent);

    // instantiated predicate atoms for every position, and the unknown cells
    std::vector<std::vector<Atom>> atoms(static_cast<size_t>(extent));
    std::set<Cell> unknown;
    std::map<Cell, long long> empty;
    for (long long i = 1; i <= extent; ++i)
        for (size_t k = 1; k <= ab.P.m(); ++k) {
            Atom inst = ab.P.instantiate(k, t_lit(static_cast<int>(i)));
            atoms[static_cast<size_t>(i - 1)].push_back(inst);
            (void)eval_term(inst.lhs, s, empty, &unknown);
            (void)eval_term(inst.rhs, s, empty, &unknown);
        }

    std::vector<Cell> cells(unknown.begin(), unknown.end());
    std::vector<long long> values;
    for (long long v = data_lo; v <= data_hi + 1; ++v) values.push_back(v);  // +1: sentinel

    AbstractState base;
    for (const auto& x : ab.vocab.int_vars()) base.ints.push_back(s.ints.at(x));
    base.word.assign(static_cast<size_t>(extent), 0);

    std::map<Cell, long long> completion;
    std::function<void(size_t)> enumerate = [&](size_t ci) {
        if (ci == cells.size()) {
            AbstractState a = base;
            for (long long i = 1; i <= extent; ++i) {
                int letter = 0;
                for (size_t k = 0; k < ab.P.m(); ++k) {
                    const Atom& inst = atoms[static_cast<size_t>(i - 1)][k];
                    auto l = eval_term(inst.lhs, s, completion, nullptr);
                    auto r = eval_term(inst.rhs, s, completion, nullptr);
                    if (!l || !r) throw std::logic_error("alpha_ref: unevaluated term");
                    if (eval_rel(inst.rel, *l, *r)) letter |= 1 << k;
                }
                a.word[static_cast<size_t>(i - 1)] = letter;
            }
            out.insert(std::move(a));
            return;
        }
        for (long long v : values) {
            completion[cells[ci]] = v;
            enumerate(ci + 1);
        }
        completion.erase(cells[ci]);
    };
    enumerate(0);
    return out;
}

bool gamma_member(const Abstraction& ab, const ConcreteState& s, const wa::TrackAutomaton& R,
                  long long data_lo, long long data_hi) {
    if (!(R.layout == ab.state_layout()))
        throw wa::LayoutMismatch("gamma_member: automaton layout does not match vocabulary");
    for (const auto& a : alpha_ref(ab, s, data_lo, data_hi))
        if (!wa::member(R, encode(ab, a))) return false;
    return true;
}

}  // namespace regabs::engine
