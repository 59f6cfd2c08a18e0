#pragma once

#include <memory>
#include <set>

#include "regabs/logic/ast.hpp"
#include "regabs/wa/automaton.hpp"

namespace regabs::wa {

// Number term over the two-sorted word structure: a natural variable, a
// constant, or a word length, shifted by a constant. Negative shifts clamp
// at zero (pred semantics).
struct NTerm {
    enum class Kind { Const, Var, Len };
    Kind kind = Kind::Const;
    std::string name;  // Var: natural variable; Len: word variable
    int offset = 0;
};

NTerm n_const(int c);
NTerm n_var(std::string name, int offset = 0);
NTerm n_len(std::string word, int offset = 0);
std::string to_string(const NTerm& t);

long long apply_offset(long long base, int offset);  // clamped at 0 for negative shifts

struct FOW;
using FOWPtr = std::shared_ptr<const FOW>;

// First-order formula over S_m: comparisons of number terms, bit tests
// Delta_k(t, w), boolean connectives, quantifiers over number variables.
struct FOW {
    enum class Kind { True, False, Cmp, Delta, Not, And, Or, Exists, Forall };
    Kind kind = Kind::True;
    NTerm lhs, rhs;         // Cmp
    logic::Rel rel = logic::Rel::Eq;
    int bit = 0;            // Delta: bit index, 1-based
    NTerm pos;              // Delta: position term
    std::string word;       // Delta: word variable
    std::vector<FOWPtr> kids;
    std::string var;        // quantifiers (natural sort)
};

FOWPtr w_true();
FOWPtr w_false();
FOWPtr w_cmp(NTerm lhs, logic::Rel r, NTerm rhs);
FOWPtr w_delta(int bit, NTerm pos, std::string word);
FOWPtr w_not(FOWPtr k);
FOWPtr w_and(std::vector<FOWPtr> ks);
FOWPtr w_or(std::vector<FOWPtr> ks);
FOWPtr w_implies(FOWPtr a, FOWPtr b);
FOWPtr w_exists(std::string v, FOWPtr k);
FOWPtr w_forall(std::string v, FOWPtr k);
std::string to_string(const FOWPtr& f);

std::set<std::string> free_nat_vars(const FOWPtr& f);
std::set<std::string> word_vars(const FOWPtr& f);

struct FOCompilerEnv {
    TrackLayout layout;  // every free variable (nat and word) has a track

    static FOCompilerEnv for_vars(const std::vector<std::string>& nat_vars,
                                  const std::vector<std::pair<std::string, int>>& words);
};

struct UnboundVariable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// L(result) = well-formed encodings of exactly the satisfying assignments.
TrackAutomaton compile(const FOWPtr& f, const FOCompilerEnv& env);

}  // namespace regabs::wa
