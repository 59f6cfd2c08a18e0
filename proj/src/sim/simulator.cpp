#include "regabs/sim/simulator.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "regabs/logic/ops.hpp"

namespace regabs::sim {

using namespace regabs::logic;

std::string to_string(const ConcreteState& s) {
    std::string out = "(";
    bool first = true;
    for (const auto& [k, v] : s.ints) {
        if (!first) out += ",";
        out += k + "=" + std::to_string(v);
        first = false;
    }
    for (const auto& [a, vals] : s.arrays) {
        out += "," + a + "=[";
        for (size_t i = 0; i < vals.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(vals[i]);
        }
        out += "]";
    }
    return out + ")";
}

std::optional<long long> eval_term3(const Term& t, const ConcreteState& s) {
    switch (t.kind) {
        case Term::Kind::Lit:
            return t.offset;
        case Term::Kind::Var: {
            auto it = s.ints.find(t.name);
            if (it == s.ints.end()) return std::nullopt;
            return it->second + t.offset;
        }
        case Term::Kind::Size:
            return std::nullopt;  // sizes are resolved to parameters upstream
        case Term::Kind::Read: {
            auto idx = eval_term3(*t.idx, s);
            if (!idx) return std::nullopt;
            auto it = s.arrays.find(t.name);
            if (it == s.arrays.end()) return std::nullopt;
            if (*idx < 1 || *idx > static_cast<long long>(it->second.size()))
                return std::nullopt;  // out of window
            return it->second[static_cast<size_t>(*idx - 1)] + t.offset;
        }
    }
    return std::nullopt;
}

std::optional<bool> eval3(const FormulaPtr& f, const ConcreteState& s, long long quant_hi) {
    switch (f->kind) {
        case Formula::Kind::True:
            return true;
        case Formula::Kind::False:
            return false;
        case Formula::Kind::Atom: {
            auto l = eval_term3(f->atom.lhs, s);
            auto r = eval_term3(f->atom.rhs, s);
            if (!l || !r) return std::nullopt;
            return eval_rel(f->atom.rel, *l, *r);
        }
        case Formula::Kind::Not: {
            auto k = eval3(f->kids[0], s, quant_hi);
            if (!k) return std::nullopt;
            return !*k;
        }
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            bool conj = f->kind == Formula::Kind::And;
            bool unknown = false;
            for (const auto& k : f->kids) {
                auto v = eval3(k, s, quant_hi);
                if (!v) unknown = true;
                else if (*v != conj) return !conj;
            }
            if (unknown) return std::nullopt;
            return conj;
        }
        case Formula::Kind::Exists:
        case Formula::Kind::Forall: {
            bool ex = f->kind == Formula::Kind::Exists;
            bool unknown = false;
            for (long long v = 0; v <= quant_hi; ++v) {
                ConcreteState s2 = s;
                s2.ints[f->var] = v;
                auto b = eval3(f->kids[0], s2, quant_hi);
                if (!b) unknown = true;
                else if (*b == ex) return ex;
            }
            if (unknown) return std::nullopt;
            return !ex;
        }
    }
    return std::nullopt;
}

ConcreteState pair_state(const ConcreteState& cur, const ConcreteState& nxt) {
    ConcreteState p = cur;
    for (const auto& [k, v] : nxt.ints) p.ints[primed(k)] = v;
    for (const auto& [k, v] : nxt.arrays) p.arrays[primed(k)] = v;
    return p;
}

namespace {

long long quant_slack(const ConcreteState& s, const Vocabulary& vocab) {
    long long hi = 2;
    for (const auto& p : vocab.params()) {
        auto it = s.ints.find(p);
        if (it != s.ints.end()) hi = std::max(hi, it->second);
    }
    return hi + 2;
}

}  // namespace

std::vector<ConcreteState> initial_states(const ArraySystem& sys, const Bounds& b) {
    std::vector<ConcreteState> out;
    ConcreteState base;
    for (const auto& [p, v] : b.params) base.ints[p] = v;

    std::vector<std::string> index_vars;
    for (const auto& x : sys.vocab.int_vars())
        if (!sys.vocab.is_param(x)) index_vars.push_back(x);
    std::vector<std::string> data_vars;
    for (const auto& x : sys.vocab.order)
        if (sys.vocab.vars.at(x).sort == Sort::Data) data_vars.push_back(x);
    std::vector<std::string> arrays = sys.vocab.array_vars();

    FormulaPtr init = resolve_sizes(sys.init, sys.vocab);

    std::function<void(size_t)> fill_arrays = [&](size_t ai) {
        if (ai == arrays.size()) {
            if (eval3(init, base, quant_slack(base, sys.vocab)).value_or(false)) {
                out.push_back(base);
                if (out.size() > b.max_states)
                    throw StateCapExceeded("too many initial states");
            }
            return;
        }
        const std::string& a = arrays[ai];
        long long size = base.ints.at(sys.vocab.size_param_of(a));
        std::vector<long long>& vals = base.arrays[a];
        vals.assign(static_cast<size_t>(size), b.data_lo);
        std::function<void(size_t)> fill = [&](size_t i) {
            if (i == vals.size()) {
                fill_arrays(ai + 1);
                return;
            }
            for (long long v = b.data_lo; v <= b.data_hi; ++v) {
                vals[i] = v;
                fill(i + 1);
            }
        };
        fill(0);
        base.arrays.erase(a);
    };
    std::function<void(size_t)> fill_index = [&](size_t xi) {
        if (xi == index_vars.size()) {
            fill_arrays(0);
            return;
        }
        const auto& vi = sys.vocab.vars.at(index_vars[xi]);
        long long lo = 0, hi = quant_slack(base, sys.vocab) - 2;
        if (vi.lo) lo = eval_term3(resolve_sizes(*vi.lo, sys.vocab), base).value_or(lo);
        if (vi.hi) hi = eval_term3(resolve_sizes(*vi.hi, sys.vocab), base).value_or(hi);
        for (long long v = lo; v <= hi; ++v) {
            base.ints[index_vars[xi]] = v;
            fill_index(xi + 1);
        }
        base.ints.erase(index_vars[xi]);
    };
    std::function<void(size_t)> fill_data = [&](size_t di) {
        if (di == data_vars.size()) {
            fill_index(0);
            return;
        }
        for (long long v = b.data_lo; v <= b.data_hi; ++v) {
            base.ints[data_vars[di]] = v;
            fill_data(di + 1);
        }
        base.ints.erase(data_vars[di]);
    };
    fill_data(0);
    return out;
}

std::vector<ConcreteState> command_successors(const ArraySystem& sys, const GuardedCommand& cmd,
                                              const ConcreteState& s, const Bounds& b) {
    std::vector<ConcreteState> out;
    FormulaPtr guard = resolve_sizes(cmd.guard, sys.vocab);
    if (!eval3(guard, s, quant_slack(s, sys.vocab)).value_or(false)) return out;

    // havoc choices enumerated one update at a time, assignments in parallel
    std::vector<ConcreteState> pending = {s};
    std::vector<ConcreteState> staged;
    // evaluate all right-hand sides against the pre-state first
    struct Effect {
        bool is_cell;
        std::string target;
        long long pos = 0;
        std::optional<long long> value;  // nullopt: havoc
        long long lo = 0, hi = 0;        // havoc range
    };
    std::vector<Effect> effects;
    for (const auto& u : cmd.updates) {
        Effect e;
        switch (u.kind) {
            case Update::Kind::SetIndex: {
                auto v = eval_term3(resolve_sizes(u.rhs, sys.vocab), s);
                if (!v) return out;
                e = {false, u.target, 0, *v, 0, 0};
                break;
            }
            case Update::Kind::HavocIndex: {
                const auto& vi = sys.vocab.vars.at(u.target);
                Term lo = vi.lo ? resolve_sizes(*vi.lo, sys.vocab) : t_lit(1);
                Term hi = vi.hi ? resolve_sizes(*vi.hi, sys.vocab)
                                : t_var(sys.vocab.extent);
                auto lov = eval_term3(lo, s), hiv = eval_term3(hi, s);
                if (!lov || !hiv) return out;
                e = {false, u.target, 0, std::nullopt, *lov, *hiv};
                break;
            }
            case Update::Kind::SetCell: {
                auto p = eval_term3(resolve_sizes(u.cell, sys.vocab), s);
                auto v = eval_term3(resolve_sizes(u.rhs, sys.vocab), s);
                if (!p || !v) return out;
                e = {true, u.target, *p, *v, 0, 0};
                break;
            }
            case Update::Kind::HavocCell: {
                auto p = eval_term3(resolve_sizes(u.cell, sys.vocab), s);
                if (!p) return out;
                e = {true, u.target, *p, std::nullopt, b.data_lo, b.data_hi};
                break;
            }
        }
        effects.push_back(std::move(e));
    }
    for (const auto& e : effects) {
        staged.clear();
        for (const auto& st : pending) {
            auto apply = [&](long long v) {
                ConcreteState t = st;
                if (e.is_cell) {
                    auto& arr = t.arrays.at(e.target);
                    if (e.pos >= 1 && e.pos <= static_cast<long long>(arr.size()))
                        arr[static_cast<size_t>(e.pos - 1)] = v;
                    // out-of-window writes leave the window unchanged
                } else {
                    t.ints.at(e.target) = v;
                }
                staged.push_back(std::move(t));
            };
            if (e.value) {
                apply(*e.value);
            } else {
                for (long long v = e.lo; v <= e.hi; ++v) apply(v);
            }
        }
        pending = staged;
    }
    return pending;
}

std::vector<ConcreteState> successors(const ArraySystem& sys, const ConcreteState& s,
                                      const Bounds& b) {
    std::vector<ConcreteState> out;
    for (const auto& cmd : sys.commands) {
        auto cs = command_successors(sys, cmd, s, b);
        out.insert(out.end(), cs.begin(), cs.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::set<ConcreteState> enumerate_reachable(const ArraySystem& sys, const Bounds& b) {
    std::set<ConcreteState> seen;
    std::deque<ConcreteState> work;
    for (auto& s : initial_states(sys, b))
        if (seen.insert(s).second) work.push_back(s);
    size_t steps = 0;
    while (!work.empty() && steps < b.step_limit) {
        ConcreteState s = work.front();
        work.pop_front();
        ++steps;
        for (auto& t : successors(sys, s, b)) {
            if (seen.count(t)) continue;
            if (seen.size() >= b.max_states)
                throw StateCapExceeded("reachable state cap exceeded");
            seen.insert(t);
            work.push_back(t);
        }
    }
    return seen;
}

SoundnessReport check_alpha_soundness(const ArraySystem& sys, engine::Abstraction& ab,
                                      const wa::TrackAutomaton& abstract_reach, const Bounds& b) {
    SoundnessReport rep;
    for (const auto& s : enumerate_reachable(sys, b)) {
        ++rep.states_checked;
        for (const auto& a : engine::alpha_ref(ab, s, b.data_lo, b.data_hi)) {
            ++rep.images_checked;
            if (!wa::member(abstract_reach, engine::encode(ab, a)))
                rep.violations.push_back(to_string(s) + " -> " + engine::to_string(ab, a));
        }
    }
    return rep;
}

Replay replay_abstract_trace(const ArraySystem& sys, engine::Abstraction& ab,
                             const AbstractTrace& trace, const Bounds& b) {
    if (trace.states.empty()) return Replay::Feasible;

    auto matches = [&](const ConcreteState& s, const engine::AbstractState& a) {
        auto img = engine::alpha_ref(ab, s, b.data_lo, b.data_hi);
        return img.count(a) != 0;
    };

    // non-lasso: search a concrete path through the trace positions
    if (!trace.is_lasso()) {
        std::set<std::pair<ConcreteState, size_t>> seen;
        std::deque<std::pair<ConcreteState, size_t>> work;
        for (auto& s : initial_states(sys, b))
            if (matches(s, trace.states[0])) work.push_back({s, 0});
        while (!work.empty()) {
            auto [s, pos] = work.front();
            work.pop_front();
            if (pos + 1 == trace.states.size()) return Replay::Feasible;
            if (!seen.insert({s, pos}).second) continue;
            for (auto& t : successors(sys, s, b))
                if (matches(t, trace.states[pos + 1])) work.push_back({t, pos + 1});
        }
        return Replay::Spurious;
    }

    // lasso: feasible iff the product of concrete states with cycle offsets
    // has a cycle reachable from a stem-matching entry state
    const size_t cycle_len = trace.states.size() - trace.cycle_start;

    std::set<ConcreteState> entries;
    {
        std::set<std::pair<ConcreteState, size_t>> seen;
        std::deque<std::pair<ConcreteState, size_t>> work;
        for (auto& s : initial_states(sys, b))
            if (matches(s, trace.states[0])) work.push_back({s, 0});
        while (!work.empty()) {
            auto [s, pos] = work.front();
            work.pop_front();
            if (!seen.insert({s, pos}).second) continue;
            if (pos == trace.cycle_start) {
                entries.insert(s);
                continue;
            }
            for (auto& t : successors(sys, s, b))
                if (matches(t, trace.states[pos + 1])) work.push_back({t, pos + 1});
        }
    }

    using Node = std::pair<ConcreteState, size_t>;  // (state, cycle offset)
    auto cyc = [&](size_t off) { return trace.states[trace.cycle_start + off]; };
    std::map<Node, int> color;  // 0 unvisited, 1 on stack, 2 done
    std::function<bool(const Node&)> dfs = [&](const Node& n) -> bool {
        auto it = color.find(n);
        if (it != color.end()) return false;
        color[n] = 1;
        size_t off2 = (n.second + 1) % cycle_len;
        for (auto& t : successors(sys, n.first, b)) {
            if (!matches(t, cyc(off2))) continue;
            Node m{t, off2};
            auto jt = color.find(m);
            if (jt != color.end() && jt->second == 1) return true;  // back edge
            if (jt == color.end() && dfs(m)) return true;
        }
        color[n] = 2;
        return false;
    };
    for (const auto& e : entries)
        if (dfs({e, 0})) return Replay::Feasible;
    return Replay::Spurious;
}

}  // namespace regabs::sim
