#pragma once

#include <optional>
#include <set>

#include "regabs/engine/alpha.hpp"
#include "regabs/sim/state.hpp"

namespace regabs::sim {

// Three-valued evaluation: nullopt when an out-of-window read decides the
// result. Quantifiers range over [0, extent + slack]; sound for the
// range-guarded formulas of the modeling language.
std::optional<bool> eval3(const logic::FormulaPtr& f, const ConcreteState& s,
                          long long quant_hi);

std::optional<long long> eval_term3(const logic::Term& t, const ConcreteState& s);

// s . t' as one valuation over V (+) V'.
ConcreteState pair_state(const ConcreteState& cur, const ConcreteState& nxt);

std::vector<ConcreteState> initial_states(const logic::ArraySystem& sys, const Bounds& b);
std::vector<ConcreteState> successors(const logic::ArraySystem& sys, const ConcreteState& s,
                                      const Bounds& b);
std::vector<ConcreteState> command_successors(const logic::ArraySystem& sys,
                                              const logic::GuardedCommand& cmd,
                                              const ConcreteState& s, const Bounds& b);

// BFS closure of the initial states under enabled commands.
std::set<ConcreteState> enumerate_reachable(const logic::ArraySystem& sys, const Bounds& b);

struct SoundnessReport {
    size_t states_checked = 0;
    size_t images_checked = 0;
    std::vector<std::string> violations;  // must be empty

    bool ok() const { return violations.empty(); }
};

// Thm-4.8-style check: alpha images of every reachable state lie inside the
// abstract reachable set.
SoundnessReport check_alpha_soundness(const logic::ArraySystem& sys, engine::Abstraction& ab,
                                      const wa::TrackAutomaton& abstract_reach, const Bounds& b);

using engine::AbstractTrace;

enum class Replay { Feasible, Spurious };

// Searches for a concrete path whose stepwise alpha images hit the trace.
// For lassos, the cycle is unrolled until a concrete repeat proves a real
// fair loop or the bounded search space is exhausted (bounded-spurious).
Replay replay_abstract_trace(const logic::ArraySystem& sys, engine::Abstraction& ab,
                             const AbstractTrace& trace, const Bounds& b);

}  // namespace regabs::sim
