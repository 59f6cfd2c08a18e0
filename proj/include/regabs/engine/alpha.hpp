#pragma once

#include <set>

#include "regabs/engine/abstraction.hpp"
#include "regabs/sim/state.hpp"

namespace regabs::engine {

// Abstract state (t, w): V_int valuation in declaration order plus a word
// over Sigma_m with |w| = extent.
struct AbstractState {
    std::vector<long long> ints;
    std::vector<int> word;

    friend bool operator<(const AbstractState& a, const AbstractState& b) {
        if (a.ints != b.ints) return a.ints < b.ints;
        return a.word < b.word;
    }
    friend bool operator==(const AbstractState& a, const AbstractState& b) {
        return a.ints == b.ints && a.word == b.word;
    }
};

std::string to_string(const Abstraction& ab, const AbstractState& s);

wa::ConvWord encode(const Abstraction& ab, const AbstractState& s);
AbstractState decode(const Abstraction& ab, const wa::ConvWord& w);
wa::ConvWord encode_pair(const Abstraction& ab, const AbstractState& cur,
                         const AbstractState& nxt);

// Phi_w: the conjunction of predicate instantiations encoded by w.
logic::FormulaPtr phi_word(const std::vector<int>& w, const PredicateSet& P);

// Reference abstraction function: all (t, w) consistent with some completion
// of the out-of-window cells (data range plus one sentinel above it).
std::set<AbstractState> alpha_ref(const Abstraction& ab, const sim::ConcreteState& s,
                                  long long data_lo = 0, long long data_hi = 2);

// gamma membership: alpha_ref(s) subset of L(R).
bool gamma_member(const Abstraction& ab, const sim::ConcreteState& s,
                  const wa::TrackAutomaton& R, long long data_lo = 0, long long data_hi = 2);

struct AbstractTrace {
    std::vector<AbstractState> states;
    size_t cycle_start = SIZE_MAX;  // < size(): lasso with this cycle entry

    bool is_lasso() const { return cycle_start < states.size(); }
};

}  // namespace regabs::engine
