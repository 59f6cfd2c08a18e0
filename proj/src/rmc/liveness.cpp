#include "regabs/rmc/check.hpp"

#include <functional>

namespace regabs::rmc {

using namespace regabs::logic;
using namespace regabs::wa;
using engine::Abstraction;

namespace {

// Reserved names for the recording tracks ('%' cannot clash with input
// identifiers).
std::string saved_name(const std::string& n) { return n + "%sv"; }
inline const std::string kFlag = "%flg";
std::string seen_name(size_t k) { return "%sn" + std::to_string(k); }

struct ReductionLayout {
    TrackLayout state;          // run block, saved block, flag, seen bits
    TrackLayout relation;       // doubled
    size_t run_count = 0;       // tracks in the run block
    size_t fairness_count = 0;

    std::vector<size_t> run_positions() const {
        std::vector<size_t> v(run_count);
        for (size_t i = 0; i < run_count; ++i) v[i] = i;
        return v;
    }
    std::vector<size_t> saved_positions() const {
        std::vector<size_t> v(run_count);
        for (size_t i = 0; i < run_count; ++i) v[i] = run_count + i;
        return v;
    }
    size_t flag_pos() const { return 2 * run_count; }
    size_t seen_pos(size_t k) const { return 2 * run_count + 1 + k; }
};

ReductionLayout make_layout(const Abstraction& ab, size_t fairness) {
    ReductionLayout rl;
    rl.state = ab.state_layout();
    rl.run_count = rl.state.size();
    rl.fairness_count = fairness;
    for (size_t i = 0; i < rl.run_count; ++i) {
        Track t = rl.state.tracks[i];
        t.name = saved_name(t.name);
        rl.state.tracks.push_back(t);
    }
    rl.state.tracks.push_back({kFlag, 0});
    for (size_t k = 0; k < fairness; ++k) rl.state.tracks.push_back({seen_name(k), 0});
    rl.relation = rl.state;
    for (const auto& t : rl.state.tracks) rl.relation.tracks.push_back({primed(t.name), t.bits});
    return rl;
}

// Pairwise equality of track groups (same letters, same lengths).
TrackAutomaton track_equality(const TrackLayout& layout,
                              const std::vector<std::pair<size_t, size_t>>& pairs) {
    TrackAutomaton a;
    a.layout = layout;
    uint32_t q = a.add_state(true);
    a.initial.push_back(q);
    std::function<void(size_t, Label&)> rec = [&](size_t pi, Label& l) {
        if (pi == pairs.size()) {
            a.edges[q].push_back({l, q});
            return;
        }
        auto [x, y] = pairs[pi];
        int bits = layout.tracks[x].bits;
        for (size_t v = 0; v < (size_t{1} << bits); ++v) {
            l[x] = TrackSet::single(bits, v);
            l[y] = TrackSet::single(bits, v);
            rec(pi + 1, l);
        }
        l[x] = TrackSet::pad_only(bits);
        l[y] = TrackSet::pad_only(bits);
        rec(pi + 1, l);
    };
    Label base;
    for (const auto& t : layout.tracks) base.push_back(TrackSet::all(t.bits));
    rec(0, base);
    return minimize(a);
}

TrackAutomaton embed(const TrackAutomaton& a, const TrackLayout& target,
                     const std::vector<size_t>& where) {
    return minimize(lift(a, target, where));
}

FOWPtr flag_is(const std::string& name, int v) {
    return w_cmp(n_var(name), logic::Rel::Eq, n_const(v));
}

}  // namespace

Verdict check_liveness(const Abstraction& ab, const LivenessInstance& inst,
                       const CheckStrategy& strategy) {
    SafetyInstance red = liveness_to_safety(ab, inst);
    Verdict v = check_safety(red, strategy);
    if (v.kind != Verdict::Kind::Counterexample) return v;

    // project the reduced trace to run-block states; the snapshot position
    // (last flag-0 state) starts the recorded cycle, and the final revisit
    // state duplicates it
    ReductionLayout rl = make_layout(ab, inst.fairness.size());
    engine::AbstractTrace tr;
    size_t first_flagged = v.raw_trace.size();
    for (size_t j = 0; j < v.raw_trace.size(); ++j) {
        auto parts = deconvolve(rl.state, v.raw_trace[j]);
        engine::AbstractState s;
        for (size_t i = 0; i < rl.run_count; ++i) {
            if (rl.state.tracks[i].bits == 0) s.ints.push_back(parts[i].nat);
            else s.word = parts[i].word;
        }
        if (first_flagged == v.raw_trace.size() &&
            parts[rl.flag_pos()].nat == 1)
            first_flagged = j;
        tr.states.push_back(std::move(s));
    }
    if (first_flagged > 0 && first_flagged < v.raw_trace.size()) {
        tr.cycle_start = first_flagged - 1;
        if (tr.states.size() > 1 &&
            tr.states.back() == tr.states[tr.cycle_start])
            tr.states.pop_back();
    }
    v.trace = std::move(tr);
    v.reason = "fair lasso found by the state-recording reduction";
    return v;
}

SafetyInstance liveness_to_safety(const Abstraction& ab, const LivenessInstance& inst) {
    const size_t g = inst.fairness.size();
    ReductionLayout rl = make_layout(ab, g);
    const TrackLayout& sl = ab.state_layout();

    TrackAutomaton nf = difference(ab.state_space(), inst.F);

    // positions of blocks within the doubled layout
    std::vector<size_t> run_cur = rl.run_positions();
    std::vector<size_t> saved_cur = rl.saved_positions();
    std::vector<size_t> run_nxt, saved_nxt;
    for (size_t i = 0; i < rl.run_count; ++i) run_nxt.push_back(rl.state.size() + i);
    for (size_t i = 0; i < rl.run_count; ++i)
        saved_nxt.push_back(rl.state.size() + rl.run_count + i);

    FOCompilerEnv state_env{rl.state};
    FOCompilerEnv rel_env{rl.relation};

    // ---- initial set: flag 0, seen bits 0, saved state guessed ------------
    std::vector<FOWPtr> init_bits = {flag_is(kFlag, 0)};
    for (size_t k = 0; k < g; ++k) init_bits.push_back(flag_is(seen_name(k), 0));
    // the guessed state shares the immutable parameters
    for (const auto& p : ab.vocab.params())
        init_bits.push_back(w_cmp(n_var(saved_name(p)), logic::Rel::Eq, n_var(p)));
    TrackAutomaton i_red = intersect(
        intersect(embed(inst.I, rl.state, rl.run_positions()),
                  embed(ab.state_space(), rl.state, rl.saved_positions())),
        compile(w_and(std::move(init_bits)), state_env));
    if (inst.mode == LivenessMode::Eventually)
        i_red = intersect(i_red, embed(nf, rl.state, rl.run_positions()));

    // ---- transition relation ----------------------------------------------
    TrackAutomaton t_lift = embed(inst.T, rl.relation, [&] {
        std::vector<size_t> m = run_cur;
        m.insert(m.end(), run_nxt.begin(), run_nxt.end());
        return m;
    }());
    std::vector<std::pair<size_t, size_t>> saved_id;
    for (size_t i = 0; i < rl.run_count; ++i) saved_id.push_back({saved_cur[i], saved_nxt[i]});
    TrackAutomaton saved_keep = track_equality(rl.relation, saved_id);

    std::vector<std::pair<size_t, size_t>> run_is_saved;
    for (size_t i = 0; i < rl.run_count; ++i) run_is_saved.push_back({run_cur[i], saved_cur[i]});
    TrackAutomaton at_snapshot = track_equality(rl.relation, run_is_saved);

    auto seen_zero_all = [&](bool next) {
        std::vector<FOWPtr> fs;
        for (size_t k = 0; k < g; ++k)
            fs.push_back(flag_is(next ? primed(seen_name(k)) : seen_name(k), 0));
        return w_and(std::move(fs));
    };

    TrackAutomaton base = intersect(t_lift, saved_keep);
    if (inst.mode == LivenessMode::Eventually)
        base = intersect(base, embed(nf, rl.relation, run_nxt));

    // seen-bit updates as a product over the obligations
    auto with_obligations = [&](TrackAutomaton piece, bool after_flag, bool at_flip) {
        for (size_t k = 0; k < g; ++k) {
            const auto& ob = inst.fairness[k];
            if (!ob.gf) {
                // FG: the recorded segment stays inside E
                TrackAutomaton stay = embed(ob.E, rl.relation, run_nxt);
                if (at_flip) stay = intersect(stay, embed(ob.E, rl.relation, run_cur));
                piece = intersect(piece, stay);
                // seen bit unused for FG; keep it at zero
                piece = intersect(piece,
                                  compile(w_and({flag_is(seen_name(k), 0),
                                                 flag_is(primed(seen_name(k)), 0)}),
                                          rel_env));
                continue;
            }
            TrackAutomaton in_e = embed(ob.E, rl.relation, run_nxt);
            if (at_flip) in_e = unite(in_e, embed(ob.E, rl.relation, run_cur));
            TrackAutomaton out_e = difference(
                embed(ab.state_space(), rl.relation, run_nxt), embed(ob.E, rl.relation, run_nxt));
            if (at_flip)
                out_e = intersect(out_e, difference(embed(ab.state_space(), rl.relation, run_cur),
                                                    embed(ob.E, rl.relation, run_cur)));
            FOWPtr seen1 = flag_is(primed(seen_name(k)), 1);
            FOWPtr seen0 = flag_is(primed(seen_name(k)), 0);
            FOWPtr was1 = flag_is(seen_name(k), 1);
            FOWPtr was0 = flag_is(seen_name(k), 0);
            TrackAutomaton keep_hit, fresh_hit, miss;
            if (after_flag) {
                keep_hit = intersect(piece, compile(w_and({was1, seen1}), rel_env));
                fresh_hit = intersect(intersect(piece, in_e),
                                      compile(w_and({was0, seen1}), rel_env));
                miss = intersect(intersect(piece, out_e),
                                 compile(w_and({was0, seen0}), rel_env));
                piece = unite(unite(keep_hit, fresh_hit), miss);
            } else {
                // at the flip the bits start from zero
                fresh_hit = intersect(intersect(piece, in_e),
                                      compile(w_and({was0, seen1}), rel_env));
                miss = intersect(intersect(piece, out_e),
                                 compile(w_and({was0, seen0}), rel_env));
                piece = unite(fresh_hit, miss);
            }
        }
        return piece;
    };

    // stay before the snapshot
    TrackAutomaton stay0 = intersect(
        base, compile(w_and({flag_is(kFlag, 0), flag_is(primed(kFlag), 0), seen_zero_all(false),
                             seen_zero_all(true)}),
                      rel_env));
    // take the snapshot: the current state is the guessed one
    TrackAutomaton flip = intersect(
        intersect(base, at_snapshot),
        compile(w_and({flag_is(kFlag, 0), flag_is(primed(kFlag), 1)}), rel_env));
    flip = with_obligations(flip, false, true);
    if (inst.mode == LivenessMode::Recurrence) {
        flip = intersect(flip, embed(nf, rl.relation, run_cur));
        flip = intersect(flip, embed(nf, rl.relation, run_nxt));
    }
    // run inside the recorded cycle
    TrackAutomaton stay1 = intersect(
        base, compile(w_and({flag_is(kFlag, 1), flag_is(primed(kFlag), 1)}), rel_env));
    stay1 = with_obligations(stay1, true, false);
    if (inst.mode == LivenessMode::Recurrence)
        stay1 = intersect(stay1, embed(nf, rl.relation, run_nxt));

    SafetyInstance red;
    red.I = i_red;
    red.T = unite(unite(stay0, flip), stay1);

    // bad: the recorded state is revisited with every obligation seen
    std::vector<FOWPtr> bad_bits = {flag_is(kFlag, 1)};
    for (size_t k = 0; k < g; ++k)
        if (inst.fairness[k].gf) bad_bits.push_back(flag_is(seen_name(k), 1));
    TrackAutomaton revisit = track_equality(rl.state, [&] {
        std::vector<std::pair<size_t, size_t>> ps;
        for (size_t i = 0; i < rl.run_count; ++i) ps.push_back({run_cur[i], saved_cur[i]});
        return ps;
    }());
    red.B = intersect(revisit, compile(w_and(std::move(bad_bits)), state_env));
    return red;
}

}  // namespace regabs::rmc
