#pragma once

#include "regabs/rmc/check.hpp"

namespace regabs::rmc {

struct RefineOptions {
    std::vector<long long> extents = {2, 3};
    size_t max_rounds = 4;  // clause sizes 1 .. 1+max_rounds
    FixedParamOptions fixed;
    engine::CstrOptions base;
    size_t unroll_cycles = 2;
};

struct RefineRound {
    size_t clause_size_cap = 0;
    size_t clauses_used = 0;
    std::string outcome;  // Proved / spurious counterexample / genuine / unknown
};

struct RefineResult {
    Verdict verdict;
    std::vector<RefineRound> log;
};

// Bounded concrete unrolling of an abstract trace through the solver: the
// trace is feasible iff some command sequence of matching length (lassos:
// with window-equal closure after up to `unroll_cycles` rounds) is
// satisfiable together with the per-step predicate valuations.
bool trace_feasible_by_unrolling(const logic::ArraySystem& sys, engine::Abstraction& ab,
                                 const engine::AbstractTrace& trace, size_t unroll_cycles);

// Incremental clause refinement: singleton and template clauses first,
// larger cstr clauses streamed in by size while counterexamples replay as
// spurious.
RefineResult refine_loop(const logic::ArraySystem& sys, const logic::TemporalProperty& prop,
                         const std::vector<logic::IndexedPredicate>& preds,
                         solver::SolverSession& session, const RefineOptions& opt = {});

}  // namespace regabs::rmc
