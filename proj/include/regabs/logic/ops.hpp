#pragma once

#include <set>

#include "regabs/logic/ast.hpp"

namespace regabs::logic {

struct NotSinglyIndexed : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DnfBudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotAbstractable : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotMonodic : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotIndexBounded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::set<std::string> free_vars(const FormulaPtr& f);
std::set<std::string> free_vars(const TPropPtr& p);

// Capture-avoiding substitution of index term t for free occurrences of x.
Term substitute(const Term& s, const Term& t, const std::string& x);
Atom substitute(const Atom& a, const Term& t, const std::string& x);
FormulaPtr substitute(const FormulaPtr& f, const Term& t, const std::string& x);
TPropPtr substitute(const TPropPtr& p, const Term& t, const std::string& x);

// Negation normal form; eliminates Not nodes by pushing negation into
// atom relations.
FormulaPtr nnf(const FormulaPtr& f, bool neg = false);

struct NormalizedSia {
    struct Quant {
        bool universal = false;
        std::string var;
    };
    struct Disjunct {
        std::vector<Atom> index_atoms;
        std::vector<Atom> data_atoms;
    };
    std::vector<Quant> prefix;
    std::vector<Disjunct> disjuncts;
    std::set<std::string> quantified;  // prefix variable names
};

// Prenex + DNF + per-disjunct index/data split; every data atom ends up with
// exactly one quantified index variable (fresh exists-guards are introduced
// for position terms that have none). Sizes |a| are resolved to parameters.
NormalizedSia normalize_sia(const FormulaPtr& f, const Vocabulary& vocab,
                            size_t dnf_cap = 512);

FormulaPtr to_formula(const NormalizedSia& n);

struct SkolemResult {
    FormulaPtr formula;              // for plain formulas
    TPropPtr property;               // for temporal inputs
    std::vector<std::string> fresh_params;
    std::vector<std::string> fresh_index_vars;
};

SkolemResult skolemize(const FormulaPtr& f, const Vocabulary& vocab);
SkolemResult skolemize(const TPropPtr& p, const Vocabulary& vocab);

// Eq. 8/9 translation: guard /\ updates /\ frame over V (+) V'.
FormulaPtr command_to_transition(const GuardedCommand& cmd, const Vocabulary& vocab);

PropertyFlags classify(const TPropPtr& p, const Vocabulary& vocab);

// Decomposition of a property for the verification pipeline.
struct PropShape {
    enum class Kind { Safety, Liveness, Recurrence, Fairness, Other };
    Kind kind = Kind::Other;
    std::vector<std::string> quantified;  // leading forall block
    FormulaPtr psi1;                      // premise (true if absent)
    FormulaPtr psi2;                      // G/F body, or GF body for recurrence
    struct FairnessPart {
        bool gf = false;  // GF vs FG
        FormulaPtr body;
    };
    std::vector<FairnessPart> fairness;   // premise GF/FG conjuncts, if any
};

PropShape decompose(const TPropPtr& p, const Vocabulary& vocab);

// Well-sortedness of formulas/commands against a vocabulary; throws SortError.
void check_sorted(const FormulaPtr& f, const Vocabulary& vocab, bool allow_primed = false);
void check_sorted(const GuardedCommand& cmd, const Vocabulary& vocab);

std::string fresh_name(const std::string& stem, const std::set<std::string>& used);

}  // namespace regabs::logic
