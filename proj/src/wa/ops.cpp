#include "regabs/wa/ops.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <queue>
#include <functional>

namespace regabs::wa {

namespace {

void check_layouts(const TrackAutomaton& a, const TrackAutomaton& b) {
    if (!(a.layout == b.layout))
        throw LayoutMismatch("track layouts differ: " + dump(a).substr(0, dump(a).find('\n')) +
                             " vs " + dump(b).substr(0, dump(b).find('\n')));
}

TrackAutomaton reverse(const TrackAutomaton& a) {
    TrackAutomaton r;
    r.layout = a.layout;
    r.edges.resize(a.num_states());
    r.accepting.assign(a.num_states(), false);
    for (uint32_t i : a.initial) r.accepting[i] = true;
    for (uint32_t s = 0; s < a.num_states(); ++s) {
        if (a.accepting[s]) r.initial.push_back(s);
        for (const auto& e : a.edges[s]) r.edges[e.to].push_back({e.label, s});
    }
    return r;
}

TrackAutomaton trim(const TrackAutomaton& a) {
    size_t n = a.num_states();
    std::vector<bool> fwd(n, false), bwd(n, false);
    std::deque<uint32_t> q;
    for (uint32_t i : a.initial)
        if (!fwd[i]) { fwd[i] = true; q.push_back(i); }
    while (!q.empty()) {
        uint32_t s = q.front();
        q.pop_front();
        for (const auto& e : a.edges[s])
            if (!fwd[e.to]) { fwd[e.to] = true; q.push_back(e.to); }
    }
    std::vector<std::vector<uint32_t>> rev(n);
    for (uint32_t s = 0; s < n; ++s)
        for (const auto& e : a.edges[s]) rev[e.to].push_back(s);
    for (uint32_t s = 0; s < n; ++s)
        if (a.accepting[s] && !bwd[s]) { bwd[s] = true; q.push_back(s); }
    while (!q.empty()) {
        uint32_t s = q.front();
        q.pop_front();
        for (uint32_t p : rev[s])
            if (!bwd[p]) { bwd[p] = true; q.push_back(p); }
    }
    std::vector<uint32_t> remap(n, UINT32_MAX);
    TrackAutomaton r;
    r.layout = a.layout;
    for (uint32_t s = 0; s < n; ++s)
        if (fwd[s] && bwd[s]) remap[s] = r.add_state(a.accepting[s]);
    for (uint32_t s = 0; s < n; ++s) {
        if (remap[s] == UINT32_MAX) continue;
        for (const auto& e : a.edges[s])
            if (remap[e.to] != UINT32_MAX) r.edges[remap[s]].push_back({e.label, remap[e.to]});
    }
    for (uint32_t i : a.initial)
        if (remap[i] != UINT32_MAX) r.initial.push_back(remap[i]);
    std::sort(r.initial.begin(), r.initial.end());
    r.initial.erase(std::unique(r.initial.begin(), r.initial.end()), r.initial.end());
    return r;
}

// One per-track letter class: either the padding mark or a set of real
// letters with identical membership across the relevant edges.
struct Cls {
    bool pad = false;
    util::Bitset letters;       // real classes only
    util::Bitset edge_mask;     // which edges contain this class
};

std::vector<Cls> track_classes(const TrackLayout& layout, size_t t,
                               const std::vector<const Edge*>& es) {
    size_t letters = layout.tracks[t].letter_count();
    std::map<util::Bitset, util::Bitset> groups;  // signature -> letter set
    for (size_t v = 0; v < letters; ++v) {
        util::Bitset sig(es.size());
        for (size_t j = 0; j < es.size(); ++j)
            if (es[j]->label[t].letters.test(v)) sig.set(j);
        auto it = groups.try_emplace(sig, util::Bitset(letters)).first;
        it->second.set(v);
    }
    std::vector<Cls> out;
    for (auto& [sig, set] : groups) {
        Cls c;
        c.letters = set;
        c.edge_mask = sig;
        out.push_back(std::move(c));
    }
    Cls pad;
    pad.pad = true;
    pad.edge_mask = util::Bitset(es.size());
    for (size_t j = 0; j < es.size(); ++j)
        if (es[j]->label[t].pad) pad.edge_mask.set(j);
    out.push_back(std::move(pad));
    return out;
}

struct DState {
    std::vector<uint32_t> states;
    uint32_t padmask = 0;
    friend bool operator<(const DState& a, const DState& b) {
        if (a.padmask != b.padmask) return a.padmask < b.padmask;
        return a.states < b.states;
    }
};

}  // namespace

TrackAutomaton determinize(const TrackAutomaton& a, PadMode mode, bool complete) {
    const size_t T = a.layout.size();
    TrackAutomaton d;
    d.layout = a.layout;

    DState init;
    init.states.assign(a.initial.begin(), a.initial.end());
    std::sort(init.states.begin(), init.states.end());
    init.states.erase(std::unique(init.states.begin(), init.states.end()), init.states.end());
    init.padmask = mode == PadMode::Forward ? 0u : (T >= 32 ? ~0u : (1u << T) - 1u);
    if (init.states.empty() && !complete) return d;

    std::map<DState, uint32_t> ids;
    std::deque<DState> work;
    auto get_id = [&](DState s) {
        auto it = ids.find(s);
        if (it != ids.end()) return it->second;
        bool acc = false;
        for (uint32_t q : s.states) acc = acc || a.accepting[q];
        uint32_t id = d.add_state(acc);
        ids.emplace(s, id);
        work.push_back(std::move(s));
        return id;
    };
    d.initial.push_back(get_id(init));

    while (!work.empty()) {
        DState cur = work.front();
        work.pop_front();
        uint32_t cur_id = ids.at(cur);

        std::vector<const Edge*> es;
        for (uint32_t q : cur.states)
            for (const auto& e : a.edges[q]) es.push_back(&e);

        std::vector<std::vector<Cls>> classes(T);
        for (size_t t = 0; t < T; ++t) classes[t] = track_classes(a.layout, t, es);

        // enumerate class combinations
        Label label(T);
        util::Bitset mask(es.size(), true);
        std::vector<std::pair<util::Bitset, bool>> stack;  // saved (mask, dummy)

        std::function<void(size_t, uint32_t, bool, util::Bitset)> rec =
            [&](size_t t, uint32_t pads, bool any_real, util::Bitset m) {
                if (t == T) {
                    if (!any_real) return;  // all-padding column
                    uint32_t padmask2;
                    if (mode == PadMode::Forward) {
                        padmask2 = cur.padmask | pads;
                    } else {
                        // pads must be within the pad phase; real letters leave it
                        if ((pads & cur.padmask) != pads) return;
                        padmask2 = cur.padmask & pads;
                    }
                    DState nxt;
                    nxt.padmask = padmask2;
                    for (size_t j = m.first(); j < m.size(); j = m.next(j))
                        nxt.states.push_back(es[j]->to);
                    std::sort(nxt.states.begin(), nxt.states.end());
                    nxt.states.erase(std::unique(nxt.states.begin(), nxt.states.end()),
                                     nxt.states.end());
                    if (nxt.states.empty() && !complete) return;
                    uint32_t to = get_id(std::move(nxt));
                    d.edges[cur_id].push_back({label, to});
                    return;
                }
                bool track_padded = (cur.padmask >> t) & 1;
                for (const auto& c : classes[t]) {
                    if (mode == PadMode::Forward) {
                        if (track_padded && !c.pad) continue;   // monotone padding
                    } else {
                        if (c.pad && !track_padded) continue;   // pad only in pad phase
                    }
                    util::Bitset m2 = m & c.edge_mask;
                    if (m2.none() && !complete) continue;
                    if (c.pad) {
                        label[t] = TrackSet::pad_only(a.layout.tracks[t].bits);
                        rec(t + 1, pads | (1u << t), any_real, m2);
                    } else {
                        if (c.letters.none()) continue;
                        label[t] = TrackSet{c.letters, false};
                        rec(t + 1, pads, true, m2);
                    }
                }
            };
        rec(0, 0, false, mask);
    }
    return d;
}

namespace {

// Canonical state numbering: BFS from the initial state following edges in
// sorted label order.
TrackAutomaton canonical(const TrackAutomaton& a) {
    TrackAutomaton t = trim(a);
    if (t.num_states() == 0) return t;
    size_t n = t.num_states();
    for (auto& es : t.edges)
        std::sort(es.begin(), es.end(), [](const Edge& x, const Edge& y) {
            if (int c = label_cmp(x.label, y.label)) return c < 0;
            return x.to < y.to;
        });
    std::vector<uint32_t> order(n, UINT32_MAX);
    uint32_t next = 0;
    std::deque<uint32_t> q;
    for (uint32_t i : t.initial)
        if (order[i] == UINT32_MAX) { order[i] = next++; q.push_back(i); }
    while (!q.empty()) {
        uint32_t s = q.front();
        q.pop_front();
        for (const auto& e : t.edges[s])
            if (order[e.to] == UINT32_MAX) { order[e.to] = next++; q.push_back(e.to); }
    }
    TrackAutomaton r;
    r.layout = t.layout;
    r.edges.resize(n);
    r.accepting.assign(n, false);
    for (uint32_t s = 0; s < n; ++s) {
        assert(order[s] != UINT32_MAX);
        r.accepting[order[s]] = t.accepting[s];
        for (const auto& e : t.edges[s]) r.edges[order[s]].push_back({e.label, order[e.to]});
    }
    for (uint32_t i : t.initial) r.initial.push_back(order[i]);
    std::sort(r.initial.begin(), r.initial.end());
    for (auto& es : r.edges)
        std::sort(es.begin(), es.end(), [](const Edge& x, const Edge& y) {
            if (int c = label_cmp(x.label, y.label)) return c < 0;
            return x.to < y.to;
        });
    return r;
}

}  // namespace

TrackAutomaton minimize(const TrackAutomaton& a) {
    TrackAutomaton d1 = determinize(reverse(a), PadMode::Backward, false);
    d1 = trim(d1);
    TrackAutomaton d2 = determinize(reverse(d1), PadMode::Forward, false);
    return canonical(d2);
}

TrackAutomaton intersect(const TrackAutomaton& a, const TrackAutomaton& b) {
    check_layouts(a, b);
    TrackAutomaton p;
    p.layout = a.layout;
    std::map<std::pair<uint32_t, uint32_t>, uint32_t> ids;
    std::deque<std::pair<uint32_t, uint32_t>> work;
    auto get = [&](uint32_t x, uint32_t y) {
        auto key = std::make_pair(x, y);
        auto it = ids.find(key);
        if (it != ids.end()) return it->second;
        uint32_t id = p.add_state(a.accepting[x] && b.accepting[y]);
        ids.emplace(key, id);
        work.push_back(key);
        return id;
    };
    for (uint32_t x : a.initial)
        for (uint32_t y : b.initial) p.initial.push_back(get(x, y));
    while (!work.empty()) {
        auto [x, y] = work.front();
        work.pop_front();
        uint32_t from = ids.at({x, y});
        for (const auto& ea : a.edges[x])
            for (const auto& eb : b.edges[y]) {
                Label l = label_intersect(ea.label, eb.label);
                if (label_empty(l)) continue;
                uint32_t to = get(ea.to, eb.to);
                p.edges[from].push_back({std::move(l), to});
            }
    }
    return minimize(p);
}

TrackAutomaton unite(const TrackAutomaton& a, const TrackAutomaton& b) {
    check_layouts(a, b);
    TrackAutomaton u;
    u.layout = a.layout;
    u.edges = a.edges;
    u.accepting = a.accepting;
    u.initial = a.initial;
    uint32_t off = static_cast<uint32_t>(a.num_states());
    for (uint32_t s = 0; s < b.num_states(); ++s) {
        u.add_state(b.accepting[s]);
        for (const auto& e : b.edges[s]) u.edges[off + s].push_back({e.label, off + e.to});
    }
    for (uint32_t i : b.initial) u.initial.push_back(off + i);
    return minimize(u);
}

TrackAutomaton complement(const TrackAutomaton& a) {
    TrackAutomaton d = determinize(a, PadMode::Forward, true);
    for (size_t s = 0; s < d.num_states(); ++s) d.accepting[s] = !d.accepting[s];
    return minimize(d);
}

TrackAutomaton difference(const TrackAutomaton& a, const TrackAutomaton& b) {
    return intersect(a, complement(b));
}

TrackAutomaton project(const TrackAutomaton& a, const std::vector<size_t>& drop) {
    std::vector<bool> dropped(a.layout.size(), false);
    for (size_t t : drop) dropped[t] = true;
    std::vector<size_t> kept;
    for (size_t t = 0; t < a.layout.size(); ++t)
        if (!dropped[t]) kept.push_back(t);

    // A state becomes accepting if an accepting state is reachable along
    // edges that can read padding on every kept track (such positions vanish
    // after projection).
    auto vanishing = [&](const Label& l) {
        bool dropped_real = false;
        for (size_t t = 0; t < l.size(); ++t) {
            if (dropped[t]) dropped_real = dropped_real || l[t].has_real();
            else if (!l[t].pad) return false;
        }
        return dropped_real;
    };
    size_t n = a.num_states();
    std::vector<std::vector<uint32_t>> rev(n);
    for (uint32_t s = 0; s < n; ++s)
        for (const auto& e : a.edges[s])
            if (vanishing(e.label)) rev[e.to].push_back(s);
    std::vector<bool> acc(a.accepting.begin(), a.accepting.end());
    std::deque<uint32_t> q;
    for (uint32_t s = 0; s < n; ++s)
        if (acc[s]) q.push_back(s);
    while (!q.empty()) {
        uint32_t s = q.front();
        q.pop_front();
        for (uint32_t p : rev[s])
            if (!acc[p]) { acc[p] = true; q.push_back(p); }
    }

    TrackAutomaton r;
    for (size_t t : kept) r.layout.tracks.push_back(a.layout.tracks[t]);
    r.edges.resize(n);
    r.accepting = acc;
    r.initial = a.initial;
    for (uint32_t s = 0; s < n; ++s) {
        for (const auto& e : a.edges[s]) {
            Label base;
            bool all_pad_possible = true;
            for (size_t t : kept) {
                base.push_back(e.label[t]);
                all_pad_possible = all_pad_possible && e.label[t].pad;
            }
            if (label_empty(base)) continue;
            if (!all_pad_possible) {
                r.edges[s].push_back({std::move(base), e.to});
                continue;
            }
            // split off the all-padding column, which no longer exists
            for (size_t j = 0; j < base.size(); ++j) {
                if (!base[j].has_real()) continue;
                Label piece = base;
                for (size_t i = 0; i < j; ++i)
                    piece[i] = TrackSet::pad_only(r.layout.tracks[i].bits);
                piece[j].pad = false;
                r.edges[s].push_back({std::move(piece), e.to});
            }
        }
    }
    return minimize(r);
}

TrackAutomaton lift(const TrackAutomaton& a, const TrackLayout& target,
                    const std::vector<size_t>& pos_map) {
    TrackAutomaton r;
    r.layout = target;
    if (a.num_states() == 0) return r;
    std::vector<int> from_target(target.size(), -1);
    for (size_t i = 0; i < pos_map.size(); ++i) {
        if (a.layout.tracks[i].bits != target.tracks[pos_map[i]].bits)
            throw LayoutMismatch("lift: track shape mismatch");
        from_target[pos_map[i]] = static_cast<int>(i);
    }
    auto expand = [&](const Label& l) {
        Label out;
        out.reserve(target.size());
        for (size_t t = 0; t < target.size(); ++t) {
            if (from_target[t] >= 0) out.push_back(l[static_cast<size_t>(from_target[t])]);
            else out.push_back(TrackSet::all(target.tracks[t].bits));
        }
        return out;
    };
    r.edges.resize(a.num_states() + 1);
    r.accepting.assign(a.num_states() + 1, false);
    for (uint32_t s = 0; s < a.num_states(); ++s) {
        r.accepting[s] = a.accepting[s];
        for (const auto& e : a.edges[s]) r.edges[s].push_back({expand(e.label), e.to});
    }
    uint32_t absorb = static_cast<uint32_t>(a.num_states());
    r.accepting[absorb] = true;
    Label pad_label;
    for (size_t t = 0; t < target.size(); ++t) {
        if (from_target[t] >= 0) pad_label.push_back(TrackSet::pad_only(target.tracks[t].bits));
        else pad_label.push_back(TrackSet::all(target.tracks[t].bits));
    }
    for (uint32_t s = 0; s < a.num_states(); ++s)
        if (a.accepting[s]) r.edges[s].push_back({pad_label, absorb});
    r.edges[absorb].push_back({pad_label, absorb});
    r.initial = a.initial;
    return r;
}

TrackAutomaton rename_tracks(TrackAutomaton a, const std::vector<std::string>& names) {
    if (names.size() != a.layout.size()) throw LayoutMismatch("rename: arity mismatch");
    for (size_t t = 0; t < names.size(); ++t) a.layout.tracks[t].name = names[t];
    return a;
}

TrackAutomaton post_image(const TrackAutomaton& s, const TrackAutomaton& r) {
    size_t k = s.layout.size();
    if (r.layout.size() != 2 * k) throw LayoutMismatch("post_image: relation arity");
    std::vector<size_t> cur(k), nxt(k);
    for (size_t i = 0; i < k; ++i) {
        cur[i] = i;
        nxt[i] = k + i;
        if (s.layout.tracks[i].bits != r.layout.tracks[i].bits ||
            s.layout.tracks[i].bits != r.layout.tracks[k + i].bits ||
            s.layout.tracks[i].name != r.layout.tracks[i].name)
            throw LayoutMismatch("post_image: layout mismatch on track " +
                                 s.layout.tracks[i].name);
    }
    TrackAutomaton p = intersect(r, lift(s, r.layout, cur));
    TrackAutomaton q = project(p, cur);
    std::vector<std::string> names;
    for (size_t i = 0; i < k; ++i) names.push_back(s.layout.tracks[i].name);
    return rename_tracks(std::move(q), names);
}

TrackAutomaton pre_image(const TrackAutomaton& s, const TrackAutomaton& r) {
    size_t k = s.layout.size();
    if (r.layout.size() != 2 * k) throw LayoutMismatch("pre_image: relation arity");
    std::vector<size_t> nxt(k);
    for (size_t i = 0; i < k; ++i) nxt[i] = k + i;
    TrackAutomaton p = intersect(r, lift(s, r.layout, nxt));
    std::vector<size_t> drop(k);
    for (size_t i = 0; i < k; ++i) drop[i] = k + i;
    TrackAutomaton q = project(p, drop);
    std::vector<std::string> names;
    for (size_t i = 0; i < k; ++i) names.push_back(s.layout.tracks[i].name);
    return rename_tracks(std::move(q), names);
}

bool is_empty(const TrackAutomaton& a) {
    std::vector<bool> seen(a.num_states(), false);
    std::deque<uint32_t> q;
    for (uint32_t i : a.initial)
        if (!seen[i]) { seen[i] = true; q.push_back(i); }
    while (!q.empty()) {
        uint32_t s = q.front();
        q.pop_front();
        if (a.accepting[s]) return false;
        for (const auto& e : a.edges[s])
            if (!seen[e.to]) { seen[e.to] = true; q.push_back(e.to); }
    }
    return true;
}

bool includes(const TrackAutomaton& a, const TrackAutomaton& b) {
    return is_empty(intersect(b, complement(a)));
}

bool equivalent(const TrackAutomaton& a, const TrackAutomaton& b) {
    return includes(a, b) && includes(b, a);
}

std::optional<ConvWord> witness(const TrackAutomaton& a0) {
    TrackAutomaton a = determinize(a0, PadMode::Forward, false);
    if (a.num_states() == 0) return std::nullopt;
    std::vector<int> parent(a.num_states(), -1);
    std::vector<Column> via(a.num_states());
    std::vector<bool> seen(a.num_states(), false);
    std::deque<uint32_t> q;
    for (uint32_t i : a.initial) { seen[i] = true; q.push_back(i); }
    int goal = -1;
    for (uint32_t i : a.initial)
        if (a.accepting[i]) goal = static_cast<int>(i);
    while (goal < 0 && !q.empty()) {
        uint32_t s = q.front();
        q.pop_front();
        std::vector<const Edge*> es;
        for (const auto& e : a.edges[s]) es.push_back(&e);
        std::sort(es.begin(), es.end(), [](const Edge* x, const Edge* y) {
            return label_cmp(x->label, y->label) < 0;
        });
        for (const Edge* e : es) {
            if (seen[e->to]) continue;
            seen[e->to] = true;
            parent[e->to] = static_cast<int>(s);
            Column col;
            for (size_t t = 0; t < e->label.size(); ++t) {
                const auto& ts = e->label[t];
                col.push_back(ts.has_real() ? static_cast<int>(ts.letters.first()) : -1);
            }
            via[e->to] = std::move(col);
            if (a.accepting[e->to]) { goal = static_cast<int>(e->to); break; }
            q.push_back(e->to);
        }
    }
    if (goal < 0) return std::nullopt;
    ConvWord w;
    for (int s = goal; parent[s] >= 0; s = parent[s]) w.push_back(via[static_cast<size_t>(s)]);
    std::reverse(w.begin(), w.end());
    return w;
}

TrackAutomaton universe(TrackLayout layout) {
    const size_t T = layout.tracks.size();
    TrackAutomaton u;
    u.layout = std::move(layout);
    std::map<uint32_t, uint32_t> ids;
    std::deque<uint32_t> work;
    auto get = [&](uint32_t mask) {
        auto it = ids.find(mask);
        if (it != ids.end()) return it->second;
        uint32_t id = u.add_state(true);
        ids.emplace(mask, id);
        work.push_back(mask);
        return id;
    };
    u.initial.push_back(get(0));
    const uint32_t full = T >= 32 ? ~0u : (1u << T) - 1u;
    while (!work.empty()) {
        uint32_t mask = work.front();
        work.pop_front();
        uint32_t from = ids.at(mask);
        // enumerate supersets of mask (other than all-tracks)
        uint32_t freebits = full & ~mask;
        for (uint32_t sub = freebits;; sub = (sub - 1) & freebits) {
            uint32_t m2 = mask | (freebits & ~sub);  // tracks padding now
            if (m2 != full) {
                Label l;
                for (size_t t = 0; t < T; ++t) {
                    int bits = u.layout.tracks[t].bits;
                    l.push_back((m2 >> t) & 1 ? TrackSet::pad_only(bits)
                                              : TrackSet::letters_only(bits));
                }
                uint32_t to = get(m2);
                u.edges[from].push_back({std::move(l), to});
            }
            if (sub == 0) break;
        }
    }
    return u;
}

TrackAutomaton singleton(TrackLayout layout, const ConvWord& w) {
    TrackAutomaton a;
    a.layout = std::move(layout);
    uint32_t prev = a.add_state(w.empty());
    a.initial.push_back(prev);
    for (size_t p = 0; p < w.size(); ++p) {
        uint32_t nxt = a.add_state(p + 1 == w.size());
        Label l;
        for (size_t t = 0; t < a.layout.size(); ++t) {
            int bits = a.layout.tracks[t].bits;
            l.push_back(w[p][t] < 0 ? TrackSet::pad_only(bits)
                                    : TrackSet::single(bits, static_cast<size_t>(w[p][t])));
        }
        a.edges[prev].push_back({std::move(l), nxt});
        prev = nxt;
    }
    return a;
}

}  // namespace regabs::wa
