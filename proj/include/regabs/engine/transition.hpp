#pragma once

#include "regabs/engine/abstraction.hpp"

namespace regabs::engine {

// Guarded command in the compact solver-facing form: quantifier-free guard,
// index updates, and extensional array updates.
struct CompactCommand {
    std::string name;
    logic::FormulaPtr guard_qf = logic::f_true();
    logic::FormulaPtr guard_quantified = logic::f_true();  // not sent to the solver
    std::vector<logic::FormulaPtr> index_updates;          // x' = t, havoc ranges
    struct Write {
        std::string array;
        logic::Term pos;
        std::optional<logic::Term> value;  // nullopt: havoc
    };
    std::vector<Write> writes;
    std::vector<std::string> copied_arrays;

    // guard_qf /\ index updates /\ array definitions (primed arrays)
    solver::Query query(const logic::Vocabulary& vocab) const;
};

CompactCommand compact(const logic::GuardedCommand& cmd, const logic::Vocabulary& vocab);

// Fig.-2-style constraint templates: candidate clauses that copy predicate
// values across an update. Clauses may mention the designated variable; the
// caller quantifies those over all positions. Raw syntactic output; not yet
// solver-verified.
std::vector<solver::Clause> instantiate_templates(const CompactCommand& cmd,
                                                  const PredicateSet& P,
                                                  const logic::Vocabulary& vocab);

struct CommandAbstraction {
    std::string name;
    std::vector<DisjunctInfo> disjuncts;
    std::vector<solver::Clause> template_clauses;  // verified, minimal
    bool complete = true;
};

struct TransitionAbstraction {
    wa::TrackAutomaton automaton;  // relation over the doubled layout
    std::vector<CommandAbstraction> commands;
    bool complete = true;
};

TransitionAbstraction abstract_transition(Abstraction& ab,
                                          const std::vector<logic::GuardedCommand>& cmds,
                                          const CstrOptions& opt = {});

// General route for raw transition formulas over V (+) V' (used by the
// monodic product); no templates.
wa::TrackAutomaton abstract_transition_formula(Abstraction& ab, const logic::FormulaPtr& f,
                                               const CstrOptions& opt = {});

// Lifts an abstract state set to a constraint on the current (or next) half
// of the relation layout.
wa::TrackAutomaton lift_to_relation(const Abstraction& ab, const wa::TrackAutomaton& s,
                                    bool next);

}  // namespace regabs::engine
