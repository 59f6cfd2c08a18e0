#pragma once

// Brute-force evaluator for FO(S_m) formulas on explicit assignments: the
// independent oracle for the automata compiler.

#include <map>
#include <string>
#include <vector>

#include "regabs/wa/fo.hpp"

namespace regabs::testsupport {

struct SmAssignment {
    std::map<std::string, long long> nats;
    std::map<std::string, std::vector<int>> words;  // letter ids
};

inline long long nterm_value(const wa::NTerm& t, const SmAssignment& a) {
    long long base = 0;
    switch (t.kind) {
        case wa::NTerm::Kind::Const: return wa::apply_offset(0, t.offset);
        case wa::NTerm::Kind::Var: base = a.nats.at(t.name); break;
        case wa::NTerm::Kind::Len: base = static_cast<long long>(a.words.at(t.name).size()); break;
    }
    return wa::apply_offset(base, t.offset);
}

inline bool eval_fo(const wa::FOWPtr& f, SmAssignment& a, long long quant_bound) {
    using K = wa::FOW::Kind;
    switch (f->kind) {
        case K::True: return true;
        case K::False: return false;
        case K::Cmp:
            return logic::eval_rel(f->rel, nterm_value(f->lhs, a), nterm_value(f->rhs, a));
        case K::Delta: {
            long long p = nterm_value(f->pos, a);
            const auto& w = a.words.at(f->word);
            if (p < 1 || p > static_cast<long long>(w.size())) return false;
            return (w[static_cast<size_t>(p - 1)] >> (f->bit - 1)) & 1;
        }
        case K::Not: return !eval_fo(f->kids[0], a, quant_bound);
        case K::And:
            for (const auto& k : f->kids)
                if (!eval_fo(k, a, quant_bound)) return false;
            return true;
        case K::Or:
            for (const auto& k : f->kids)
                if (eval_fo(k, a, quant_bound)) return true;
            return false;
        case K::Exists:
        case K::Forall: {
            bool ex = f->kind == K::Exists;
            auto saved = a.nats.find(f->var) != a.nats.end()
                             ? std::optional<long long>(a.nats[f->var])
                             : std::nullopt;
            bool result = !ex;
            for (long long v = 0; v <= quant_bound; ++v) {
                a.nats[f->var] = v;
                bool b = eval_fo(f->kids[0], a, quant_bound);
                if (ex && b) { result = true; break; }
                if (!ex && !b) { result = false; break; }
            }
            if (saved) a.nats[f->var] = *saved;
            else a.nats.erase(f->var);
            return result;
        }
    }
    return false;
}

// Encodes an assignment as a convolved word for the given layout.
inline wa::ConvWord encode(const wa::TrackLayout& layout, const SmAssignment& a) {
    std::vector<wa::TrackContent> parts;
    for (const auto& t : layout.tracks) {
        wa::TrackContent c;
        if (t.bits == 0) {
            c.is_nat = true;
            c.nat = a.nats.at(t.name);
        } else {
            c.word = a.words.at(t.name);
        }
        parts.push_back(std::move(c));
    }
    return wa::convolve(layout, parts);
}

// Exhaustive agreement check of compiled automaton vs direct evaluation over
// all assignments with nat values <= nat_max and word lengths <= len_max.
// The quantifier bound is taken high enough to cover every decidable case at
// these sizes.
template <typename OnMismatch>
inline size_t check_compile_agreement(const wa::FOWPtr& f, const wa::FOCompilerEnv& env,
                                      long long nat_max, long long len_max,
                                      OnMismatch&& on_mismatch) {
    wa::TrackAutomaton aut = wa::compile(f, env);
    std::vector<size_t> nat_tracks, word_tracks;
    for (size_t i = 0; i < env.layout.size(); ++i)
        (env.layout.tracks[i].bits == 0 ? nat_tracks : word_tracks).push_back(i);

    size_t checked = 0;
    SmAssignment a;
    std::function<void(size_t)> go_words = [&](size_t wi) {
        if (wi == word_tracks.size()) {
            ++checked;
            bool truth = eval_fo(f, a, nat_max + len_max + 4);
            bool mem = wa::member(aut, encode(env.layout, a));
            if (truth != mem) on_mismatch(a, truth, mem);
            return;
        }
        const auto& tr = env.layout.tracks[word_tracks[wi]];
        std::vector<int> w;
        std::function<void(long long)> grow = [&](long long len) {
            a.words[tr.name] = w;
            go_words(wi + 1);
            if (len == len_max) return;
            for (int letter = 0; letter < (1 << tr.bits); ++letter) {
                w.push_back(letter);
                grow(len + 1);
                w.pop_back();
            }
        };
        grow(0);
    };
    std::function<void(size_t)> go_nats = [&](size_t ni) {
        if (ni == nat_tracks.size()) {
            go_words(0);
            return;
        }
        for (long long v = 0; v <= nat_max; ++v) {
            a.nats[env.layout.tracks[nat_tracks[ni]].name] = v;
            go_nats(ni + 1);
        }
    };
    go_nats(0);
    return checked;
}

}  // namespace regabs::testsupport
