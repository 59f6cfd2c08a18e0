#include "regabs/wa/fo.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>

#include "regabs/wa/ops.hpp"

namespace regabs::wa {

using logic::Rel;

NTerm n_const(int c) { return {NTerm::Kind::Const, "", c}; }
NTerm n_var(std::string name, int offset) { return {NTerm::Kind::Var, std::move(name), offset}; }
NTerm n_len(std::string word, int offset) { return {NTerm::Kind::Len, std::move(word), offset}; }

long long apply_offset(long long base, int offset) {
    long long v = base + offset;
    return offset < 0 && v < 0 ? 0 : v;
}

std::string to_string(const NTerm& t) {
    std::string s;
    switch (t.kind) {
        case NTerm::Kind::Const: return std::to_string(t.offset);
        case NTerm::Kind::Var: s = t.name; break;
        case NTerm::Kind::Len: s = "|" + t.name + "|"; break;
    }
    if (t.offset > 0) s += "+" + std::to_string(t.offset);
    if (t.offset < 0) s += std::to_string(t.offset);
    return s;
}

FOWPtr w_true() {
    static FOWPtr t = std::make_shared<FOW>(FOW{FOW::Kind::True, {}, {}, Rel::Eq, 0, {}, "", {}, ""});
    return t;
}
FOWPtr w_false() {
    static FOWPtr f = std::make_shared<FOW>(FOW{FOW::Kind::False, {}, {}, Rel::Eq, 0, {}, "", {}, ""});
    return f;
}

FOWPtr w_cmp(NTerm lhs, Rel r, NTerm rhs) {
    auto f = std::make_shared<FOW>();
    f->kind = FOW::Kind::Cmp;
    f->lhs = std::move(lhs);
    f->rel = r;
    f->rhs = std::move(rhs);
    return f;
}

FOWPtr w_delta(int bit, NTerm pos, std::string word) {
    auto f = std::make_shared<FOW>();
    f->kind = FOW::Kind::Delta;
    f->bit = bit;
    f->pos = std::move(pos);
    f->word = std::move(word);
    return f;
}

FOWPtr w_not(FOWPtr k) {
    if (k->kind == FOW::Kind::True) return w_false();
    if (k->kind == FOW::Kind::False) return w_true();
    if (k->kind == FOW::Kind::Not) return k->kids[0];
    auto f = std::make_shared<FOW>();
    f->kind = FOW::Kind::Not;
    f->kids = {std::move(k)};
    return f;
}

static FOWPtr w_nary(FOW::Kind kind, std::vector<FOWPtr> ks) {
    const bool conj = kind == FOW::Kind::And;
    std::vector<FOWPtr> out;
    for (auto& k : ks) {
        if (k->kind == kind) out.insert(out.end(), k->kids.begin(), k->kids.end());
        else if (k->kind == (conj ? FOW::Kind::True : FOW::Kind::False)) continue;
        else if (k->kind == (conj ? FOW::Kind::False : FOW::Kind::True))
            return conj ? w_false() : w_true();
        else out.push_back(std::move(k));
    }
    if (out.empty()) return conj ? w_true() : w_false();
    if (out.size() == 1) return out[0];
    auto f = std::make_shared<FOW>();
    f->kind = kind;
    f->kids = std::move(out);
    return f;
}

FOWPtr w_and(std::vector<FOWPtr> ks) { return w_nary(FOW::Kind::And, std::move(ks)); }
FOWPtr w_or(std::vector<FOWPtr> ks) { return w_nary(FOW::Kind::Or, std::move(ks)); }
FOWPtr w_implies(FOWPtr a, FOWPtr b) { return w_or({w_not(std::move(a)), std::move(b)}); }

FOWPtr w_exists(std::string v, FOWPtr k) {
    auto f = std::make_shared<FOW>();
    f->kind = FOW::Kind::Exists;
    f->var = std::move(v);
    f->kids = {std::move(k)};
    return f;
}

FOWPtr w_forall(std::string v, FOWPtr k) {
    auto f = std::make_shared<FOW>();
    f->kind = FOW::Kind::Forall;
    f->var = std::move(v);
    f->kids = {std::move(k)};
    return f;
}

std::string to_string(const FOWPtr& f) {
    switch (f->kind) {
        case FOW::Kind::True: return "true";
        case FOW::Kind::False: return "false";
        case FOW::Kind::Cmp:
            return to_string(f->lhs) + " " + logic::rel_text(f->rel) + " " + to_string(f->rhs);
        case FOW::Kind::Delta:
            return "D" + std::to_string(f->bit) + "(" + to_string(f->pos) + ", " + f->word + ")";
        case FOW::Kind::Not: return "!(" + to_string(f->kids[0]) + ")";
        case FOW::Kind::And:
        case FOW::Kind::Or: {
            std::string s = "(";
            for (size_t i = 0; i < f->kids.size(); ++i) {
                if (i) s += f->kind == FOW::Kind::And ? " & " : " | ";
                s += to_string(f->kids[i]);
            }
            return s + ")";
        }
        case FOW::Kind::Exists:
            return "(exists " + f->var + ". " + to_string(f->kids[0]) + ")";
        case FOW::Kind::Forall:
            return "(forall " + f->var + ". " + to_string(f->kids[0]) + ")";
    }
    return "?";
}

static void vars_rec(const FOWPtr& f, std::set<std::string>& nat, std::set<std::string>& word,
                     std::set<std::string>& bound) {
    auto term = [&](const NTerm& t) {
        if (t.kind == NTerm::Kind::Var && !bound.count(t.name)) nat.insert(t.name);
        if (t.kind == NTerm::Kind::Len) word.insert(t.name);
    };
    switch (f->kind) {
        case FOW::Kind::Cmp:
            term(f->lhs);
            term(f->rhs);
            return;
        case FOW::Kind::Delta:
            term(f->pos);
            word.insert(f->word);
            return;
        case FOW::Kind::Exists:
        case FOW::Kind::Forall: {
            bool fresh = bound.insert(f->var).second;
            vars_rec(f->kids[0], nat, word, bound);
            if (fresh) bound.erase(f->var);
            return;
        }
        default:
            for (const auto& k : f->kids) vars_rec(k, nat, word, bound);
    }
}

std::set<std::string> free_nat_vars(const FOWPtr& f) {
    std::set<std::string> nat, word, bound;
    vars_rec(f, nat, word, bound);
    return nat;
}

std::set<std::string> word_vars(const FOWPtr& f) {
    std::set<std::string> nat, word, bound;
    vars_rec(f, nat, word, bound);
    return word;
}

FOCompilerEnv FOCompilerEnv::for_vars(const std::vector<std::string>& nat_vars,
                                      const std::vector<std::pair<std::string, int>>& words) {
    FOCompilerEnv env;
    for (const auto& v : nat_vars) env.layout.tracks.push_back({v, 0});
    for (const auto& [w, bits] : words) env.layout.tracks.push_back({w, bits});
    return env;
}

namespace {

// --- comparison machines ---------------------------------------------------

struct SymVal {
    long long lo = 0;
    bool unbounded = false;  // value in [lo, inf) instead of exactly lo
};

// Evaluates `base rel base2` where the two bases come from the capped
// counters of a two-track comparison machine.
bool eval_two_track(Rel rel, int who, long long common, long long delta, long long K,
                    bool lhs_on_first, int off_l, int off_r) {
    bool common_exact = common < K;
    bool delta_exact = delta < K;
    long long n1 = common + (who == 1 ? delta : 0);  // first track value
    long long n2 = common + (who == 2 ? delta : 0);
    long long nl = lhs_on_first ? n1 : n2;
    long long nr = lhs_on_first ? n2 : n1;
    bool nl_exact, nr_exact;
    if (who == 0) {
        nl_exact = nr_exact = common_exact;
    } else {
        bool longer_is_l = (who == 1) == lhs_on_first;
        nl_exact = longer_is_l ? (common_exact && delta_exact) : common_exact;
        nr_exact = longer_is_l ? common_exact : (common_exact && delta_exact);
    }
    if (nl_exact && nr_exact)
        return logic::eval_rel(rel, apply_offset(nl, off_l), apply_offset(nr, off_r));
    // at least one side is large; clamping is inactive on large sides
    if (!nl_exact && !nr_exact) {
        // both large: the difference is known (exactly or by sign)
        long long raw = nl - nr;  // +-delta or 0, possibly capped
        if (delta_exact || who == 0) {
            long long d = raw + off_l - off_r;
            return logic::eval_rel(rel, d, 0);
        }
        return logic::eval_rel(rel, raw > 0 ? 1 : -1, 0);  // |diff| >= K dominates offsets
    }
    // one exact, one large: the large side dominates
    bool large_is_l = !nl_exact;
    return logic::eval_rel(rel, large_is_l ? 1 : -1, 0);
}

struct MachineState {
    std::vector<int> key;
    bool accept = false;
};

// Generic construction harness: small DFAs over one or two tracks of the
// full layout, all other tracks unconstrained.
struct AtomMachine {
    const TrackLayout& layout;
    TrackAutomaton out;
    std::map<std::vector<int>, uint32_t> ids;
    std::vector<std::vector<int>> todo;

    explicit AtomMachine(const TrackLayout& l) : layout(l) { out.layout = l; }

    uint32_t get(const std::vector<int>& key, bool accept) {
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        uint32_t id = out.add_state(accept);
        ids.emplace(key, id);
        todo.push_back(key);
        return id;
    }

    Label base_label() const {
        Label l;
        for (const auto& t : layout.tracks) l.push_back(TrackSet::all(t.bits));
        return l;
    }
};

TrackSet real_any(int bits) { return TrackSet::letters_only(bits); }
TrackSet pad_mark(int bits) { return TrackSet::pad_only(bits); }
TrackSet real_bit(int bits, int bit /*1-based*/, bool set) {
    util::Bitset s(size_t{1} << bits);
    for (size_t v = 0; v < (size_t{1} << bits); ++v)
        if ((((v >> (bit - 1)) & 1) != 0) == set) s.set(v);
    return TrackSet{s, false};
}

// Comparison over zero tracks (both constants).
TrackAutomaton compile_const(bool truth, const TrackLayout& layout) {
    if (!truth) return TrackAutomaton::empty(layout);
    return universe(layout);
}

// Comparison where both terms read the same counter (one track), or one term
// is constant.
TrackAutomaton compile_cmp_one_track(const NTerm& lhs, Rel rel, const NTerm& rhs, int track,
                                     const TrackLayout& layout) {
    long long maxabs = std::max({std::abs(lhs.offset), std::abs(rhs.offset), 1});
    if (lhs.kind == NTerm::Kind::Const) maxabs = std::max<long long>(maxabs, std::abs(lhs.offset));
    if (rhs.kind == NTerm::Kind::Const) maxabs = std::max<long long>(maxabs, std::abs(rhs.offset));
    const long long K = 2 * maxabs + 4;
    const int bits = layout.tracks[static_cast<size_t>(track)].bits;

    auto value = [&](const NTerm& t, long long n, bool exact) -> SymVal {
        if (t.kind == NTerm::Kind::Const) return {apply_offset(0, t.offset), false};
        if (exact) return {apply_offset(n, t.offset), false};
        return {n + t.offset, true};
    };
    auto accepts = [&](long long n) {
        bool exact = n < K;
        SymVal l = value(lhs, n, exact), r = value(rhs, n, exact);
        if (!l.unbounded && !r.unbounded) return logic::eval_rel(rel, l.lo, r.lo);
        if (l.unbounded && r.unbounded) return logic::eval_rel(rel, l.lo - r.lo, 0);
        return logic::eval_rel(rel, l.unbounded ? 1 : -1, 0);
    };

    AtomMachine m(layout);
    // key = {count, frozen}
    m.out.initial.push_back(m.get({0, 0}, accepts(0)));
    while (!m.todo.empty()) {
        auto key = m.todo.back();
        m.todo.pop_back();
        uint32_t from = m.ids.at(key);
        long long n = key[0];
        bool frozen = key[1];
        if (!frozen) {
            Label l = m.base_label();
            l[static_cast<size_t>(track)] = real_any(bits);
            long long n2 = std::min(n + 1, K);
            m.out.add_edge(from, l, m.get({static_cast<int>(n2), 0}, accepts(n2)));
        }
        Label lp = m.base_label();
        lp[static_cast<size_t>(track)] = pad_mark(bits);
        m.out.add_edge(from, lp, m.get({key[0], 1}, accepts(n)));
    }
    return m.out;
}

TrackAutomaton compile_cmp_two_tracks(const NTerm& lhs, Rel rel, const NTerm& rhs, int t_l,
                                      int t_r, const TrackLayout& layout) {
    const long long maxabs = std::max({std::abs(lhs.offset), std::abs(rhs.offset), 1});
    const long long K = 2 * maxabs + 4;
    int t1 = std::min(t_l, t_r), t2 = std::max(t_l, t_r);
    bool lhs_on_first = t_l == t1;
    const int bits1 = layout.tracks[static_cast<size_t>(t1)].bits;
    const int bits2 = layout.tracks[static_cast<size_t>(t2)].bits;

    auto accepts = [&](int who, long long common, long long delta) {
        return eval_two_track(rel, who, common, delta, K, lhs_on_first, lhs.offset, rhs.offset);
    };

    AtomMachine m(layout);
    // key = {who, common, delta, frozen}; who: 0 both alive, 1 first longer,
    // 2 second longer
    m.out.initial.push_back(m.get({0, 0, 0, 0}, accepts(0, 0, 0)));
    while (!m.todo.empty()) {
        auto key = m.todo.back();
        m.todo.pop_back();
        uint32_t from = m.ids.at(key);
        int who = key[0];
        long long common = key[1], delta = key[2];
        bool frozen = key[3];
        auto edge = [&](bool r1, bool r2, std::vector<int> nkey, long long c, long long d) {
            Label l = m.base_label();
            l[static_cast<size_t>(t1)] = r1 ? real_any(bits1) : pad_mark(bits1);
            l[static_cast<size_t>(t2)] = r2 ? real_any(bits2) : pad_mark(bits2);
            m.out.add_edge(from, l, m.get(nkey, accepts(nkey[0], c, d)));
        };
        if (!frozen) {
            if (who == 0) {
                long long c2 = std::min(common + 1, K);
                edge(true, true, {0, static_cast<int>(c2), 0, 0}, c2, 0);
                edge(true, false, {1, static_cast<int>(common), 1, 0}, common, 1);
                edge(false, true, {2, static_cast<int>(common), 1, 0}, common, 1);
            } else {
                long long d2 = std::min(delta + 1, K);
                if (who == 1) edge(true, false, {1, key[1], static_cast<int>(d2), 0}, common, d2);
                else edge(false, true, {2, key[1], static_cast<int>(d2), 0}, common, d2);
            }
        }
        edge(false, false, {key[0], key[1], key[2], 1}, common, delta);
    }
    return m.out;
}

int term_track(const NTerm& t, const TrackLayout& layout) {
    if (t.kind == NTerm::Kind::Const) return -1;
    int idx = layout.index_of(t.name);
    if (idx < 0) throw UnboundVariable("unbound variable " + t.name);
    if (t.kind == NTerm::Kind::Var && layout.tracks[static_cast<size_t>(idx)].bits != 0)
        throw UnboundVariable(t.name + " is not a natural-number track");
    if (t.kind == NTerm::Kind::Len && layout.tracks[static_cast<size_t>(idx)].bits == 0)
        throw UnboundVariable(t.name + " is not a word track");
    return idx;
}

TrackAutomaton compile_cmp(const FOW& f, const TrackLayout& layout) {
    int t_l = term_track(f.lhs, layout);
    int t_r = term_track(f.rhs, layout);
    if (t_l < 0 && t_r < 0) {
        bool truth = logic::eval_rel(f.rel, apply_offset(0, f.lhs.offset),
                                     apply_offset(0, f.rhs.offset));
        return compile_const(truth, layout);
    }
    if (t_l >= 0 && t_r >= 0 && t_l != t_r)
        return compile_cmp_two_tracks(f.lhs, f.rel, f.rhs, t_l, t_r, layout);
    return compile_cmp_one_track(f.lhs, f.rel, f.rhs, t_l >= 0 ? t_l : t_r, layout);
}

// Delta_k(pos, w): 1 <= pos <= |w| and bit k of w[pos] is 1.
TrackAutomaton compile_delta(const FOW& f, const TrackLayout& layout) {
    int tw = layout.index_of(f.word);
    if (tw < 0) throw UnboundVariable("unbound word variable " + f.word);
    const int wbits = layout.tracks[static_cast<size_t>(tw)].bits;
    if (wbits == 0 || f.bit < 1 || f.bit > wbits)
        throw UnboundVariable("Delta bit index out of range for " + f.word);

    const int c = f.pos.offset;
    AtomMachine m(layout);
    auto done_key = [](bool ok) { return std::vector<int>{9, ok ? 1 : 0, 0}; };

    if (f.pos.kind == NTerm::Kind::Const) {
        long long p = apply_offset(0, c);
        if (p < 1) return TrackAutomaton::empty(layout);
        // key = {0, j, 0} counting up to p; done states {9, ok, 0}
        m.out.initial.push_back(m.get({0, 1, 0}, false));
        while (!m.todo.empty()) {
            auto key = m.todo.back();
            m.todo.pop_back();
            uint32_t from = m.ids.at(key);
            if (key[0] == 9) {  // done, absorb
                Label l = m.base_label();
                m.out.add_edge(from, l, from);
                continue;
            }
            long long j = key[1];
            Label l = m.base_label();
            if (j == p) {
                l[static_cast<size_t>(tw)] = real_bit(wbits, f.bit, true);
                m.out.add_edge(from, l, m.get(done_key(true), true));
                Label l0 = m.base_label();
                l0[static_cast<size_t>(tw)] = real_bit(wbits, f.bit, false);
                m.out.add_edge(from, l0, m.get(done_key(false), false));
                Label lp = m.base_label();
                lp[static_cast<size_t>(tw)] = pad_mark(wbits);
                m.out.add_edge(from, lp, m.get(done_key(false), false));
            } else {
                l[static_cast<size_t>(tw)] = real_any(wbits);
                m.out.add_edge(from, l, m.get({0, static_cast<int>(j + 1), 0}, false));
                Label lp = m.base_label();
                lp[static_cast<size_t>(tw)] = pad_mark(wbits);
                m.out.add_edge(from, lp, m.get(done_key(false), false));
            }
        }
        return m.out;
    }

    int ts = term_track(f.pos, layout);
    const int sbits = layout.tracks[static_cast<size_t>(ts)].bits;
    const bool same = ts == tw;
    const int B = c <= 0 ? 1 - c : 0;  // ring buffer length for lookback

    // buffer entries: 0 = bit clear, 1 = bit set, 2 = no letter (w padded)
    // key layout: {phase, a, b} with phase 0 = counting (a encodes buffer),
    // phase 1 = tail skip (a = remaining), phase 9 = done (a = verdict)
    auto enc_buf = [&](const std::vector<int>& buf) {
        int v = 0;
        for (int e : buf) v = v * 3 + e;
        return v;
    };
    auto dec_buf = [&](int v) {
        std::vector<int> buf(static_cast<size_t>(B), 2);
        for (int i = B - 1; i >= 0; --i) {
            buf[static_cast<size_t>(i)] = v % 3;
            v /= 3;
        }
        return buf;
    };
    // counting-state acceptance: word ends while src still alive => n_s is the
    // count so far; target = n_s + c must be <= n_s, looked up in the buffer
    auto count_accepts = [&](const std::vector<int>& buf, long long n_s) {
        if (c >= 1) return false;
        long long tgt = n_s + c;
        if (tgt < 1) return false;  // clamped position 0 or out of window
        int slot = B - 1 + c;       // bits seen at positions n_s+c .. n_s
        return buf[static_cast<size_t>(slot)] == 1;
    };

    std::vector<int> buf0(static_cast<size_t>(B), 2);
    // track n_s only capped at B (we only need buffer contents); acceptance at
    // count n_s uses position validity: n_s + c >= 1 needs n_s known up to |c|+1
    const int NCAP = std::max(B, -c + 2) + 1;
    // key: {0, enc(buf), min(n_s, NCAP)}
    m.out.initial.push_back(m.get({0, enc_buf(buf0), 0}, count_accepts(buf0, 0)));
    while (!m.todo.empty()) {
        auto key = m.todo.back();
        m.todo.pop_back();
        uint32_t from = m.ids.at(key);
        int phase = key[0];
        if (phase == 9) {
            Label l = m.base_label();
            l[static_cast<size_t>(ts)] = pad_mark(sbits);
            if (!same) {
                m.out.add_edge(from, l, from);
                // w may still be running or padded; unconstrained
            } else {
                m.out.add_edge(from, l, from);
            }
            continue;
        }
        if (phase == 1) {  // tail skip: src already padded
            int remaining = key[1];
            if (remaining > 1) {
                Label l = m.base_label();
                l[static_cast<size_t>(ts)] = pad_mark(sbits);
                m.out.add_edge(from, l, m.get({1, remaining - 1, 0}, false));
            } else {
                Label l1 = m.base_label();
                l1[static_cast<size_t>(ts)] = pad_mark(sbits);
                l1[static_cast<size_t>(tw)] =
                    l1[static_cast<size_t>(tw)].intersect(real_bit(wbits, f.bit, true));
                m.out.add_edge(from, l1, m.get(done_key(true), true));
                Label l0 = m.base_label();
                l0[static_cast<size_t>(ts)] = pad_mark(sbits);
                l0[static_cast<size_t>(tw)] =
                    l0[static_cast<size_t>(tw)].intersect(real_bit(wbits, f.bit, false));
                m.out.add_edge(from, l0, m.get(done_key(false), false));
                Label lp = m.base_label();
                lp[static_cast<size_t>(ts)] = pad_mark(sbits);
                lp[static_cast<size_t>(tw)] = pad_mark(wbits);
                m.out.add_edge(from, lp, m.get(done_key(false), false));
            }
            continue;
        }
        // counting phase
        std::vector<int> buf = dec_buf(key[1]);
        int n_s = key[2];
        int n_s2 = std::min(n_s + 1, NCAP);
        auto push = [&](int entry) {
            std::vector<int> b2;
            if (B > 0) {
                b2.assign(buf.begin() + 1, buf.end());
                b2.push_back(entry);
            }
            return b2;
        };
        if (same) {
            // src length is |w| itself
            std::vector<int> b1 = push(1), b0 = push(0);
            Label l1 = m.base_label();
            l1[static_cast<size_t>(tw)] = real_bit(wbits, f.bit, true);
            m.out.add_edge(from, l1, m.get({0, enc_buf(b1), n_s2}, count_accepts(b1, n_s2 >= NCAP ? NCAP : n_s + 1)));
            Label l0 = m.base_label();
            l0[static_cast<size_t>(tw)] = real_bit(wbits, f.bit, false);
            m.out.add_edge(from, l0, m.get({0, enc_buf(b0), n_s2}, count_accepts(b0, n_s + 1)));
            // w pads: the word has ended; for c >= 1 the target is past the end
            Label lp = m.base_label();
            lp[static_cast<size_t>(tw)] = pad_mark(wbits);
            bool ok = c <= 0 && n_s + c >= 1 && buf[static_cast<size_t>(B - 1 + c)] == 1;
            m.out.add_edge(from, lp, m.get(done_key(ok), ok));
            continue;
        }
        // distinct src and w tracks: columns split by (src real?, w letter)
        struct WCase {
            TrackSet set;
            int entry;
        };
        std::vector<WCase> wcases = {{real_bit(wbits, f.bit, true), 1},
                                     {real_bit(wbits, f.bit, false), 0},
                                     {pad_mark(wbits), 2}};
        for (const auto& wc : wcases) {
            // src real
            std::vector<int> b2 = push(wc.entry);
            Label l = m.base_label();
            l[static_cast<size_t>(ts)] = real_any(sbits);
            l[static_cast<size_t>(tw)] = wc.set;
            int nn = n_s2;
            m.out.add_edge(from, l, m.get({0, enc_buf(b2), nn}, count_accepts(b2, std::min<long long>(n_s + 1, NCAP))));
            // src pads here: n_s is final
            Label lp = m.base_label();
            lp[static_cast<size_t>(ts)] = pad_mark(sbits);
            lp[static_cast<size_t>(tw)] = wc.set;
            if (c <= 0) {
                long long tgt = n_s + c;
                bool ok = tgt >= 1 && buf[static_cast<size_t>(B - 1 + c)] == 1;
                m.out.add_edge(from, lp, m.get(done_key(ok), ok));
            } else if (c == 1) {
                bool ok = wc.entry == 1;
                m.out.add_edge(from, lp, m.get(done_key(ok), ok));
            } else {
                m.out.add_edge(from, lp, m.get({1, c - 1, 0}, false));
            }
        }
    }
    return m.out;
}

}  // namespace

TrackAutomaton compile(const FOWPtr& f0, const FOCompilerEnv& env) {
    std::function<TrackAutomaton(const FOWPtr&, const TrackLayout&, bool)> rec =
        [&](const FOWPtr& f, const TrackLayout& layout, bool neg) -> TrackAutomaton {
        switch (f->kind) {
            case FOW::Kind::True:
                return neg ? TrackAutomaton::empty(layout) : universe(layout);
            case FOW::Kind::False:
                return neg ? universe(layout) : TrackAutomaton::empty(layout);
            case FOW::Kind::Cmp: {
                FOW g = *f;
                if (neg) g.rel = logic::negate_rel(g.rel);
                return minimize(compile_cmp(g, layout));
            }
            case FOW::Kind::Delta: {
                TrackAutomaton a = minimize(compile_delta(*f, layout));
                return neg ? complement(a) : a;
            }
            case FOW::Kind::Not:
                return rec(f->kids[0], layout, !neg);
            case FOW::Kind::And:
            case FOW::Kind::Or: {
                bool conj = (f->kind == FOW::Kind::And) != neg;
                TrackAutomaton acc;
                bool first = true;
                for (const auto& k : f->kids) {
                    TrackAutomaton ka = rec(k, layout, neg);
                    if (first) {
                        acc = std::move(ka);
                        first = false;
                    } else {
                        acc = conj ? intersect(acc, ka) : unite(acc, ka);
                    }
                    if (conj && is_empty(acc)) break;
                }
                return acc;
            }
            case FOW::Kind::Exists:
            case FOW::Kind::Forall: {
                bool ex = (f->kind == FOW::Kind::Exists) != neg;
                if (layout.index_of(f->var) >= 0)
                    throw UnboundVariable("quantifier shadows a track: " + f->var);
                TrackLayout inner = layout;
                inner.tracks.push_back({f->var, 0});
                // forall x. phi  ==  not exists x. not phi
                TrackAutomaton body = rec(f->kids[0], inner, ex ? neg : !neg);
                TrackAutomaton projected = project(body, {layout.size()});
                return ex ? projected : complement(projected);
            }
        }
        return TrackAutomaton::empty(layout);
    };
    return rec(f0, env.layout, false);
}

}  // namespace regabs::wa
