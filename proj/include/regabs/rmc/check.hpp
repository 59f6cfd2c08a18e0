#pragma once

#include <map>

#include "regabs/rmc/instances.hpp"
#include "regabs/sim/state.hpp"

namespace regabs::rmc {

// Forward fixpoint R_{k+1} = R_k u post(R_k, T) from I. Proved verdicts are
// re-certified through check_invariant; divergence surfaces as Unknown at
// the iteration bound. Counterexample traces are reconstructed by backward
// intersection and replay under T.
Verdict check_safety(const SafetyInstance& inst, const CheckStrategy& strategy = {});

// Inductive-invariant certificate: Inv covers I, is closed under post, and
// avoids B. The failing check is reported with a witness.
Verdict check_invariant(const SafetyInstance& inst, const wa::TrackAutomaton& inv);

// State-recording reduction: tracks are doubled (running + saved copy), a
// flag marks the recorded position, and one seen-bit per GF obligation; the
// bad set is "saved state revisited with all obligations seen". Sound for
// weakly finite abstract systems (index-bounded sources).
SafetyInstance liveness_to_safety(const engine::Abstraction& ab, const LivenessInstance& inst);

Verdict check_liveness(const engine::Abstraction& ab, const LivenessInstance& inst,
                       const CheckStrategy& strategy = {});

// Instance builders (Skolemization of the property, abstraction of init,
// transition, and bad/goal sets).
BuiltSafety build_safety_instance(const logic::ArraySystem& sys,
                                  const logic::TemporalProperty& prop,
                                  std::vector<logic::IndexedPredicate> preds,
                                  solver::SolverSession& session,
                                  const engine::CstrOptions& opt = {});

BuiltLiveness build_liveness_instance(const logic::ArraySystem& sys,
                                      const logic::TemporalProperty& prop,
                                      std::vector<logic::IndexedPredicate> preds,
                                      solver::SolverSession& session,
                                      const engine::CstrOptions& opt = {});

// Progress-as-safety: bad = "no command enabled and the goal not reached",
// transition = phi_T restricted to the goal's complement.
BuiltSafety build_progress_instance(const logic::ArraySystem& sys,
                                    const logic::TemporalProperty& prop,
                                    std::vector<logic::IndexedPredicate> preds,
                                    solver::SolverSession& session,
                                    const engine::CstrOptions& opt = {});

// Monodic monitor reduction: one fresh monitor array per G-subformula, the
// three displayed reduction formulas, and the fairness family.
struct MonodicReduction {
    logic::ArraySystem product;           // original commands + monitor arrays
    logic::FormulaPtr init;               // psi_I
    logic::FormulaPtr monitor_transition; // the forall-conjunct added to phi_T
    logic::TPropPtr fairness;             // lambda
    std::vector<std::string> monitor_arrays;
};

MonodicReduction monodic_reduce(const logic::ArraySystem& sys,
                                const logic::TemporalProperty& prop);

// Explicit finite-slice checking at fixed extent values: reachability for
// safety, fair-cycle search for liveness. Non-extent parameter tracks are
// capped at extent + offset slack (reported in the verdict reason).
struct FixedParamOptions {
    long long extent_cap = 6;
    long long slack = 2;  // caps = extent + max offset + slack
    size_t max_states = 200000;
};

std::map<long long, Verdict> fixed_param_check(const engine::Abstraction& ab,
                                               const SafetyInstance& inst,
                                               const std::vector<long long>& extents,
                                               const FixedParamOptions& opt = {});

std::map<long long, Verdict> fixed_param_check(const engine::Abstraction& ab,
                                               const LivenessInstance& inst,
                                               const std::vector<long long>& extents,
                                               const FixedParamOptions& opt = {});

// All abstract states of a sliced automaton (nat tracks capped).
std::vector<engine::AbstractState> enumerate_slice(const engine::Abstraction& ab,
                                                   const wa::TrackAutomaton& a,
                                                   long long extent, long long cap,
                                                   size_t max_states);

std::vector<engine::AbstractState> slice_successors(const engine::Abstraction& ab,
                                                    const wa::TrackAutomaton& relation,
                                                    const engine::AbstractState& s,
                                                    long long cap);

}  // namespace regabs::rmc
