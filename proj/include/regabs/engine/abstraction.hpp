#pragma once

#include "regabs/engine/predicates.hpp"
#include "regabs/logic/ops.hpp"
#include "regabs/solver/oracle.hpp"
#include "regabs/wa/fo.hpp"
#include "regabs/wa/ops.hpp"

namespace regabs::engine {

struct NotExpressible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Internal names of the word tracks ('%' cannot appear in identifiers).
inline const std::string kWord = "%w";
inline const std::string kWordNext = "%w'";

// Shared context of one abstraction computation.
struct Abstraction {
    logic::Vocabulary vocab;
    PredicateSet P;
    solver::SolverSession& session;

    Abstraction(logic::Vocabulary v, PredicateSet p, solver::SolverSession& s)
        : vocab(std::move(v)), P(std::move(p)), session(s) {}

    // state layout: one Nat track per V_int variable (declaration order),
    // then the Sigma_m word track
    wa::TrackLayout state_layout() const;
    wa::TrackLayout relation_layout() const;  // doubled, current block first

    // all well-formed abstract states with |w| = extent
    wa::TrackAutomaton state_space() const;
    wa::TrackAutomaton relation_space() const;  // adds parameter identity
};

struct CstrOptions {
    solver::MucBudget muc;
    size_t max_clause_size = SIZE_MAX;  // refinement ladder: clauses above kept aside
};

// cstr(psi): the minimal valid clauses over A(psi, P), kappa-trivial ones
// removed. `deferred` receives clauses beyond max_clause_size.
struct AbstractionConstraint {
    std::vector<solver::Clause> clauses;
    std::vector<solver::Clause> deferred;
    bool complete = true;
};

// A(psi, P): predicate instantiations over the index terms of psi and P,
// closed under one level of composition, deduplicated up to orientation.
std::vector<logic::Atom> atom_universe(const std::vector<logic::Atom>& data_atoms,
                                       const PredicateSet& P, bool with_primed);

std::vector<logic::Term> term_universe(const std::vector<logic::Atom>& data_atoms,
                                       const PredicateSet& P);

AbstractionConstraint cstr(Abstraction& ab, const solver::Query& psi,
                           const std::vector<logic::Atom>& data_atoms, bool with_primed,
                           const CstrOptions& opt = {});

// kappa translation into FO over the word structure. Index atoms pass
// through; data atoms must be +-P_k[t/i] instances.
wa::FOWPtr kappa_atom(const Abstraction& ab, const logic::Atom& atom, bool with_primed);
wa::FOWPtr kappa_clause(const Abstraction& ab, const solver::Clause& c, bool with_primed);
wa::FOWPtr kappa(const Abstraction& ab, const logic::FormulaPtr& f, bool with_primed);

// true iff kappa(C) holds in every S_m structure (such clauses constrain
// nothing and are dropped from cstr).
bool kappa_trivially_valid(const Abstraction& ab, const solver::Clause& c, bool with_primed);

wa::NTerm index_to_nterm(const logic::Term& t);

// Per-disjunct record of an abstraction run, for reports and refinement.
struct DisjunctInfo {
    std::string guard_text;
    std::vector<std::string> data_text;
    AbstractionConstraint constraint;
};

struct StateAbstraction {
    wa::TrackAutomaton automaton;
    std::vector<DisjunctInfo> disjuncts;
    bool complete = true;
};

// Steps 1-2 for a state formula: normalize, replace each data conjunct block
// with cstr, kappa, compile, and intersect with the abstract state space.
StateAbstraction abstract_state_formula(Abstraction& ab, const logic::FormulaPtr& f,
                                        const CstrOptions& opt = {});

// The trivial abstraction (whole state space), for non-SIA inputs.
wa::TrackAutomaton universe_abstraction(const Abstraction& ab);

}  // namespace regabs::engine
