#include <algorithm>
#include <deque>
#include <functional>

#include "regabs/rmc/check.hpp"

namespace regabs::rmc {

using namespace regabs::wa;
using engine::AbstractState;
using engine::Abstraction;

namespace {

// Enumerates the concrete columns admitted by a label, restricted so that a
// track never resumes after padding and nat tracks other than the extent
// stay below the cap.
struct SliceWalk {
    const Abstraction& ab;
    long long extent;
    long long cap;

    int extent_track() const {
        auto ints = ab.vocab.int_vars();
        for (size_t i = 0; i < ints.size(); ++i)
            if (ints[i] == ab.vocab.extent) return static_cast<int>(i);
        return -1;
    }
};

}  // namespace

std::vector<AbstractState> enumerate_slice(const Abstraction& ab, const TrackAutomaton& a0,
                                           long long extent, long long cap, size_t max_states) {
    const TrackLayout& layout = a0.layout;
    // restrict the extent track, then walk accepting paths
    FOCompilerEnv env{layout};
    TrackAutomaton a = intersect(
        a0, compile(w_cmp(n_len(engine::kWord), logic::Rel::Eq, n_const(static_cast<int>(extent))),
                    env));
    {
        // extent track itself
        int et = -1;
        for (size_t i = 0; i < layout.size(); ++i)
            if (layout.tracks[i].name == ab.vocab.extent) et = static_cast<int>(i);
        if (et >= 0)
            a = intersect(a, compile(w_cmp(n_var(ab.vocab.extent), logic::Rel::Eq,
                                           n_const(static_cast<int>(extent))),
                                     env));
    }

    std::vector<AbstractState> out;
    std::set<AbstractState> dedup;
    std::vector<long long> lengths(layout.size(), 0);
    std::vector<bool> ended(layout.size(), false);
    std::vector<std::vector<int>> letters(layout.size());

    std::function<void(uint32_t, size_t)> walk = [&](uint32_t state, size_t pos) {
        if (dedup.size() >= max_states)
            throw sim::StateCapExceeded("abstract slice cap exceeded");
        if (a.accepting[state]) {
            bool all_done = true;  // word may end only where every track ended
            (void)all_done;
            AbstractState s;
            for (size_t t = 0; t < layout.size(); ++t) {
                if (layout.tracks[t].bits == 0) s.ints.push_back(lengths[t]);
                else s.word = letters[t];
            }
            if (dedup.insert(s).second) out.push_back(std::move(s));
        }
        for (const auto& e : a.edges[state]) {
            // enumerate per-track choices of this edge
            std::vector<std::vector<int>> options(layout.size());
            bool dead = false;
            for (size_t t = 0; t < layout.size() && !dead; ++t) {
                const TrackSet& ts = e.label[t];
                auto& opt = options[t];
                if (ended[t]) {
                    if (ts.pad) opt.push_back(-1);
                } else {
                    bool is_nat = layout.tracks[t].bits == 0;
                    bool capped = is_nat && lengths[t] >= cap &&
                                  layout.tracks[t].name != ab.vocab.extent;
                    if (!capped)
                        for (size_t v = ts.letters.first(); v < ts.letters.size();
                             v = ts.letters.next(v))
                            opt.push_back(static_cast<int>(v));
                    if (ts.pad) opt.push_back(-1);
                }
                if (opt.empty()) dead = true;
            }
            if (dead) continue;
            std::vector<size_t> pick(layout.size(), 0);
            while (true) {
                bool any_real = false;
                for (size_t t = 0; t < layout.size(); ++t)
                    any_real = any_real || options[t][pick[t]] >= 0;
                if (any_real) {
                    std::vector<bool> ended_save = ended;
                    for (size_t t = 0; t < layout.size(); ++t) {
                        int v = options[t][pick[t]];
                        if (v < 0) {
                            ended[t] = true;
                        } else {
                            ++lengths[t];
                            if (layout.tracks[t].bits > 0) letters[t].push_back(v);
                        }
                    }
                    walk(e.to, pos + 1);
                    for (size_t t = 0; t < layout.size(); ++t) {
                        int v = options[t][pick[t]];
                        if (v >= 0) {
                            --lengths[t];
                            if (layout.tracks[t].bits > 0) letters[t].pop_back();
                        }
                    }
                    ended = ended_save;
                }
                size_t t = 0;
                while (t < layout.size() && ++pick[t] == options[t].size()) pick[t++] = 0;
                if (t == layout.size()) break;
            }
        }
    };
    for (uint32_t i : a.initial) walk(i, 0);
    return out;
}

std::vector<AbstractState> slice_successors(const Abstraction& ab,
                                            const TrackAutomaton& relation,
                                            const AbstractState& s, long long cap) {
    const TrackLayout& layout = relation.layout;
    const size_t k = layout.size() / 2;
    ConvWord cur = engine::encode(ab, s);

    std::vector<AbstractState> out;
    std::set<AbstractState> dedup;
    std::vector<long long> lengths(k, 0);
    std::vector<bool> ended(k, false);
    std::vector<std::vector<int>> letters(k);
    long long extent_value = 0;
    {
        auto ints = ab.vocab.int_vars();
        for (size_t i = 0; i < ints.size(); ++i)
            if (ints[i] == ab.vocab.extent) extent_value = s.ints[i];
    }

    std::function<void(uint32_t, size_t)> walk = [&](uint32_t state, size_t pos) {
        bool cur_done = pos >= cur.size();
        if (relation.accepting[state] && cur_done) {
            AbstractState t;
            for (size_t i = 0; i < k; ++i) {
                if (layout.tracks[k + i].bits == 0) t.ints.push_back(lengths[i]);
                else t.word = letters[i];
            }
            if (dedup.insert(t).second) out.push_back(t);
        }
        for (const auto& e : relation.edges[state]) {
            // the current half is fixed by s (padding past its end)
            bool cur_ok = true;
            for (size_t i = 0; i < k && cur_ok; ++i) {
                int v = pos < cur.size() ? cur[pos][i] : -1;
                cur_ok = e.label[i].contains(v);
            }
            if (!cur_ok) continue;
            bool cur_real = false;
            for (size_t i = 0; i < k && !cur_real; ++i)
                cur_real = (pos < cur.size() ? cur[pos][i] : -1) >= 0;

            std::vector<std::vector<int>> options(k);
            bool dead = false;
            for (size_t i = 0; i < k && !dead; ++i) {
                const TrackSet& ts = e.label[k + i];
                auto& opt = options[i];
                if (ended[i]) {
                    if (ts.pad) opt.push_back(-1);
                } else {
                    bool is_nat = layout.tracks[k + i].bits == 0;
                    bool capped = is_nat && lengths[i] >= std::max(cap, extent_value + 1);
                    if (!capped)
                        for (size_t v = ts.letters.first(); v < ts.letters.size();
                             v = ts.letters.next(v))
                            opt.push_back(static_cast<int>(v));
                    if (ts.pad) opt.push_back(-1);
                }
                if (opt.empty()) dead = true;
            }
            if (dead) continue;
            std::vector<size_t> pick(k, 0);
            while (true) {
                bool any_real = cur_real;
                for (size_t i = 0; i < k; ++i) any_real = any_real || options[i][pick[i]] >= 0;
                if (any_real) {
                    std::vector<bool> ended_save = ended;
                    for (size_t i = 0; i < k; ++i) {
                        int v = options[i][pick[i]];
                        if (v < 0) {
                            ended[i] = true;
                        } else {
                            ++lengths[i];
                            if (layout.tracks[k + i].bits > 0) letters[i].push_back(v);
                        }
                    }
                    walk(e.to, pos + 1);
                    for (size_t i = 0; i < k; ++i) {
                        int v = options[i][pick[i]];
                        if (v >= 0) {
                            --lengths[i];
                            if (layout.tracks[k + i].bits > 0) letters[i].pop_back();
                        }
                    }
                    ended = ended_save;
                }
                size_t i = 0;
                while (i < k && ++pick[i] == options[i].size()) pick[i++] = 0;
                if (i == k) break;
            }
        }
    };
    for (uint32_t i : relation.initial) walk(i, 0);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

long long cap_for(const Abstraction& ab, long long extent, const FixedParamOptions& opt) {
    (void)ab;
    return extent + opt.slack + 2;
}

struct SliceGraph {
    std::vector<AbstractState> states;
    std::map<AbstractState, size_t> index;
    std::vector<std::vector<size_t>> succ;
    std::vector<size_t> init;

    size_t add(const AbstractState& s) {
        auto it = index.find(s);
        if (it != index.end()) return it->second;
        size_t id = states.size();
        index.emplace(s, id);
        states.push_back(s);
        succ.emplace_back();
        return id;
    }
};

SliceGraph explore(const Abstraction& ab, const TrackAutomaton& I, const TrackAutomaton& T,
                   long long extent, const FixedParamOptions& opt,
                   const std::function<bool(const AbstractState&)>& keep) {
    SliceGraph g;
    long long cap = cap_for(ab, extent, opt);
    std::deque<size_t> work;
    for (const auto& s : enumerate_slice(ab, I, extent, cap, opt.max_states)) {
        if (!keep(s)) continue;
        size_t id = g.add(s);
        if (g.succ[id].empty()) work.push_back(id);
    }
    g.init.assign(work.begin(), work.end());
    std::set<size_t> expanded;
    while (!work.empty()) {
        size_t id = work.front();
        work.pop_front();
        if (!expanded.insert(id).second) continue;
        if (g.states.size() > opt.max_states)
            throw sim::StateCapExceeded("slice graph cap exceeded");
        for (const auto& t : slice_successors(ab, T, g.states[id], cap)) {
            if (!keep(t)) continue;
            size_t tid = g.add(t);
            g.succ[id].push_back(tid);
            if (!expanded.count(tid)) work.push_back(tid);
        }
    }
    return g;
}

engine::AbstractTrace path_trace(const SliceGraph& g, const std::vector<int>& parent,
                                 size_t target) {
    engine::AbstractTrace tr;
    std::vector<size_t> rev;
    for (long long v = static_cast<long long>(target); v >= 0;
         v = parent[static_cast<size_t>(v)])
        rev.push_back(static_cast<size_t>(v));
    for (auto it = rev.rbegin(); it != rev.rend(); ++it) tr.states.push_back(g.states[*it]);
    return tr;
}

}  // namespace

std::map<long long, Verdict> fixed_param_check(const Abstraction& ab, const SafetyInstance& inst,
                                               const std::vector<long long>& extents,
                                               const FixedParamOptions& opt) {
    std::map<long long, Verdict> out;
    for (long long n : extents) {
        if (n > opt.extent_cap) {
            Verdict v;
            v.kind = Verdict::Kind::Unknown;
            v.reason = "extent exceeds the configured cap";
            out.emplace(n, std::move(v));
            continue;
        }
        Verdict v;
        try {
            SliceGraph g = explore(ab, inst.I, inst.T, n, opt,
                                   [](const AbstractState&) { return true; });
            std::vector<int> parent(g.states.size(), -1);
            std::deque<size_t> work(g.init.begin(), g.init.end());
            std::set<size_t> seen(g.init.begin(), g.init.end());
            std::optional<size_t> bad;
            for (size_t id : g.init)
                if (wa::member(inst.B, engine::encode(ab, g.states[id]))) bad = id;
            while (!work.empty() && !bad) {
                size_t id = work.front();
                work.pop_front();
                for (size_t t : g.succ[id]) {
                    if (seen.count(t)) continue;
                    seen.insert(t);
                    parent[t] = static_cast<int>(id);
                    if (wa::member(inst.B, engine::encode(ab, g.states[t]))) {
                        bad = t;
                        break;
                    }
                    work.push_back(t);
                }
            }
            if (bad) {
                v.kind = Verdict::Kind::Counterexample;
                v.trace = path_trace(g, parent, *bad);
            } else {
                v.kind = Verdict::Kind::Proved;
            }
            v.reason = "explicit slice, parameter cap " + std::to_string(cap_for(ab, n, opt));
            v.iterations = g.states.size();
        } catch (const sim::StateCapExceeded& e) {
            v.kind = Verdict::Kind::Unknown;
            v.reason = e.what();
        }
        out.emplace(n, std::move(v));
    }
    return out;
}

std::map<long long, Verdict> fixed_param_check(const Abstraction& ab,
                                               const LivenessInstance& inst,
                                               const std::vector<long long>& extents,
                                               const FixedParamOptions& opt) {
    std::map<long long, Verdict> out;
    for (long long n : extents) {
        if (n > opt.extent_cap) {
            Verdict v;
            v.kind = Verdict::Kind::Unknown;
            v.reason = "extent exceeds the configured cap";
            out.emplace(n, std::move(v));
            continue;
        }
        Verdict v;
        try {
            // Eventually: the whole counterexample path avoids F.
            // Recurrence: only the cycle does; FG obligations confine it too.
            auto in_f = [&](const AbstractState& s) {
                return wa::member(inst.F, engine::encode(ab, s));
            };
            auto keep = [&](const AbstractState& s) {
                return inst.mode == LivenessMode::Recurrence || !in_f(s);
            };
            SliceGraph g = explore(ab, inst.I, inst.T, n, opt, keep);

            // cycle candidates: states allowed inside the lasso's loop
            std::vector<bool> loopable(g.states.size(), true);
            for (size_t i = 0; i < g.states.size(); ++i) {
                if (in_f(g.states[i])) loopable[i] = false;
                for (const auto& ob : inst.fairness)
                    if (!ob.gf && !wa::member(ob.E, engine::encode(ab, g.states[i])))
                        loopable[i] = false;
            }

            // Tarjan SCC over the loopable subgraph
            std::vector<int> idx(g.states.size(), -1), low(g.states.size(), 0),
                comp(g.states.size(), -1);
            std::vector<bool> onstack(g.states.size(), false);
            std::vector<size_t> stack;
            int counter = 0, ncomp = 0;
            std::function<void(size_t)> tarjan = [&](size_t u) {
                idx[u] = low[u] = counter++;
                stack.push_back(u);
                onstack[u] = true;
                for (size_t w : g.succ[u]) {
                    if (!loopable[w]) continue;
                    if (idx[w] < 0) {
                        tarjan(w);
                        low[u] = std::min(low[u], low[w]);
                    } else if (onstack[w]) {
                        low[u] = std::min(low[u], idx[w]);
                    }
                }
                if (low[u] == idx[u]) {
                    while (true) {
                        size_t w = stack.back();
                        stack.pop_back();
                        onstack[w] = false;
                        comp[w] = ncomp;
                        if (w == u) break;
                    }
                    ++ncomp;
                }
            };
            for (size_t i = 0; i < g.states.size(); ++i)
                if (loopable[i] && idx[i] < 0) tarjan(i);

            // a component is a fair loop if it has an internal edge and
            // visits every GF obligation
            std::vector<bool> nontrivial(static_cast<size_t>(ncomp), false);
            for (size_t u = 0; u < g.states.size(); ++u) {
                if (!loopable[u]) continue;
                for (size_t w : g.succ[u])
                    if (loopable[w] && comp[u] == comp[w]) nontrivial[static_cast<size_t>(comp[u])] = true;
            }
            std::vector<std::vector<bool>> visits(
                static_cast<size_t>(ncomp),
                std::vector<bool>(inst.fairness.size(), false));
            for (size_t u = 0; u < g.states.size(); ++u) {
                if (!loopable[u] || comp[u] < 0) continue;
                for (size_t k = 0; k < inst.fairness.size(); ++k)
                    if (inst.fairness[k].gf &&
                        wa::member(inst.fairness[k].E, engine::encode(ab, g.states[u])))
                        visits[static_cast<size_t>(comp[u])][k] = true;
            }

            std::optional<size_t> witness_state;
            for (size_t u = 0; u < g.states.size() && !witness_state; ++u) {
                if (!loopable[u] || comp[u] < 0 || !nontrivial[static_cast<size_t>(comp[u])])
                    continue;
                bool fair = true;
                for (size_t k = 0; k < inst.fairness.size(); ++k)
                    if (inst.fairness[k].gf && !visits[static_cast<size_t>(comp[u])][k])
                        fair = false;
                if (fair) witness_state = u;
            }

            if (!witness_state) {
                v.kind = Verdict::Kind::Proved;
            } else {
                // reachability of the component from the initial states
                std::vector<int> parent(g.states.size(), -1);
                std::set<size_t> seen(g.init.begin(), g.init.end());
                std::deque<size_t> work(g.init.begin(), g.init.end());
                std::optional<size_t> entry;
                for (size_t id : g.init)
                    if (comp[id] == comp[*witness_state] && loopable[id]) entry = id;
                while (!work.empty() && !entry) {
                    size_t id = work.front();
                    work.pop_front();
                    for (size_t t : g.succ[id]) {
                        if (seen.count(t)) continue;
                        seen.insert(t);
                        parent[t] = static_cast<int>(id);
                        if (loopable[t] && comp[t] == comp[*witness_state]) {
                            entry = t;
                            break;
                        }
                        work.push_back(t);
                    }
                }
                if (!entry) {
                    v.kind = Verdict::Kind::Proved;  // component unreachable
                } else {
                    engine::AbstractTrace tr = path_trace(g, parent, *entry);
                    tr.cycle_start = tr.states.size() - 1;
                    // walk the cycle: visit each GF obligation, then close
                    const int target_comp = comp[*entry];
                    auto leg = [&](size_t from, auto pred) -> std::vector<size_t> {
                        std::map<size_t, int> par;
                        std::deque<size_t> q{from};
                        par[from] = -1;
                        while (!q.empty()) {
                            size_t u = q.front();
                            q.pop_front();
                            for (size_t w : g.succ[u]) {
                                if (!loopable[w] || comp[w] != target_comp) continue;
                                if (pred(w)) {  // may revisit the start (cycle closing)
                                    std::vector<size_t> path{w};
                                    for (size_t x = u;;) {
                                        path.push_back(x);
                                        int p = par.at(x);
                                        if (p < 0) break;
                                        x = static_cast<size_t>(p);
                                    }
                                    std::reverse(path.begin(), path.end());
                                    return path;
                                }
                                if (par.count(w)) continue;
                                par[w] = static_cast<int>(u);
                                q.push_back(w);
                            }
                        }
                        return {};
                    };
                    size_t cur = *entry;
                    for (size_t k = 0; k < inst.fairness.size(); ++k) {
                        if (!inst.fairness[k].gf) continue;
                        if (wa::member(inst.fairness[k].E, engine::encode(ab, g.states[cur])))
                            continue;
                        auto path = leg(cur, [&](size_t w) {
                            return wa::member(inst.fairness[k].E,
                                              engine::encode(ab, g.states[w]));
                        });
                        for (size_t i = 1; i < path.size(); ++i)
                            tr.states.push_back(g.states[path[i]]);
                        if (!path.empty()) cur = path.back();
                    }
                    auto back = leg(cur, [&](size_t w) { return w == *entry; });
                    for (size_t i = 1; i + 1 < back.size(); ++i)
                        tr.states.push_back(g.states[back[i]]);
                    if (back.empty() && cur == *entry) {
                        // self-loop; nothing to add
                    }
                    v.kind = Verdict::Kind::Counterexample;
                    v.trace = std::move(tr);
                }
            }
            v.reason = "explicit fair-cycle search, parameter cap " +
                       std::to_string(cap_for(ab, n, opt));
            v.iterations = g.states.size();
        } catch (const sim::StateCapExceeded& e) {
            v.kind = Verdict::Kind::Unknown;
            v.reason = e.what();
        }
        out.emplace(n, std::move(v));
    }
    return out;
}

}  // namespace regabs::rmc
