#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace regabs::logic {

struct SortError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Rel { Eq, Ne, Le, Lt, Ge, Gt };

Rel negate_rel(Rel r);        // complement: = <-> !=, <= <-> >, ...
Rel flip_rel(Rel r);          // swap sides: <= <-> >=, ...
bool eval_rel(Rel r, long long a, long long b);
const char* rel_text(Rel r);

// Flattened term of the indexed array logic. Offset chains are kept
// normalized by construction: value = base + offset.
//   Lit:  integer literal (value in offset, name empty)
//   Var:  index/data variable or parameter
//   Size: |a| for array a (name = a)
//   Read: a[idx] (name = a, idx a non-Read term)
struct Term {
    enum class Kind { Lit, Var, Size, Read };
    Kind kind = Kind::Lit;
    int offset = 0;
    std::string name;
    std::shared_ptr<const Term> idx;

    bool is_read() const { return kind == Kind::Read; }
};

Term t_lit(int n);
Term t_var(std::string name, int offset = 0);
Term t_size(std::string array, int offset = 0);
Term t_read(std::string array, Term idx, int offset = 0);
Term t_shift(Term t, int delta);  // t + delta, flattened

int cmp(const Term& a, const Term& b);
inline bool operator==(const Term& a, const Term& b) { return cmp(a, b) == 0; }
inline bool operator!=(const Term& a, const Term& b) { return cmp(a, b) != 0; }
inline bool operator<(const Term& a, const Term& b) { return cmp(a, b) < 0; }
std::string to_string(const Term& t);

struct Atom {
    Term lhs;
    Rel rel = Rel::Eq;
    Term rhs;

    // A data expression contains an element access; everything else
    // (including |a| comparisons) is an index expression.
    bool is_data() const { return lhs.is_read() || rhs.is_read(); }
};

Atom canon(const Atom& a);            // order sides, flipping the relation
Atom negate(const Atom& a);
int cmp(const Atom& a, const Atom& b);
inline bool operator==(const Atom& a, const Atom& b) { return cmp(a, b) == 0; }
inline bool operator<(const Atom& a, const Atom& b) { return cmp(a, b) < 0; }
std::string to_string(const Atom& a);

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    enum class Kind { True, False, Atom, Not, And, Or, Exists, Forall };
    Kind kind = Kind::True;
    Atom atom;                      // Kind::Atom
    std::vector<FormulaPtr> kids;   // Not: 1, And/Or: n, quantifier: 1
    std::string var;                // quantifier variable (index sort)
};

FormulaPtr f_true();
FormulaPtr f_false();
FormulaPtr f_atom(Atom a);
FormulaPtr f_atom(Term lhs, Rel r, Term rhs);
FormulaPtr f_not(FormulaPtr k);
FormulaPtr f_and(std::vector<FormulaPtr> kids);   // flattens, drops true
FormulaPtr f_or(std::vector<FormulaPtr> kids);
FormulaPtr f_implies(FormulaPtr a, FormulaPtr b);
FormulaPtr f_iff(FormulaPtr a, FormulaPtr b);
FormulaPtr f_exists(std::string var, FormulaPtr k);
FormulaPtr f_forall(std::string var, FormulaPtr k);

bool equal(const FormulaPtr& a, const FormulaPtr& b);
std::string to_string(const FormulaPtr& f);

enum class Sort { Index, Data, Array };

struct VarInfo {
    Sort sort = Sort::Index;
    bool param = false;
    std::string size_param;            // arrays: the parameter identified with |a|
    std::optional<Term> lo, hi;        // index vars: declared bounds
};

// Sorted vocabulary of an array system. Declaration order is preserved;
// it fixes the track order of abstract-domain automata.
struct Vocabulary {
    std::vector<std::string> order;
    std::map<std::string, VarInfo> vars;
    std::string extent;

    bool has(const std::string& n) const { return vars.count(n) != 0; }
    const VarInfo& info(const std::string& n) const;
    bool is_param(const std::string& n) const { return has(n) && vars.at(n).param; }
    bool is_array(const std::string& n) const { return has(n) && vars.at(n).sort == Sort::Array; }

    void add(const std::string& name, VarInfo vi);
    void validate() const;  // throws SortError on broken invariants

    // index variables and parameters, in declaration order
    std::vector<std::string> int_vars() const;
    std::vector<std::string> array_vars() const;
    std::vector<std::string> params() const;
    const std::string& size_param_of(const std::string& array) const;

    // vocabulary over V (+) V' (primed copies appended, same order)
    Vocabulary with_primed() const;
};

std::string primed(const std::string& name);
bool is_primed(const std::string& name);
std::string unprimed(const std::string& name);

// Rewrites |a| into the bound size parameter everywhere.
Term resolve_sizes(const Term& t, const Vocabulary& v);
FormulaPtr resolve_sizes(const FormulaPtr& f, const Vocabulary& v);

struct Update {
    enum class Kind { SetIndex, HavocIndex, SetCell, HavocCell };
    Kind kind = Kind::SetIndex;
    std::string target;   // index variable or array name
    Term cell;            // SetCell/HavocCell: written position
    Term rhs;             // SetIndex/SetCell: assigned term
};

struct GuardedCommand {
    std::string name;
    FormulaPtr guard;
    std::vector<Update> updates;
};

struct ArraySystem {
    Vocabulary vocab;
    FormulaPtr init;
    std::vector<GuardedCommand> commands;
};

// ---------------------------------------------------------------------------
// Temporal properties

struct TProp;
using TPropPtr = std::shared_ptr<const TProp>;

struct TProp {
    enum class Kind { Leaf, Not, And, Or, Exists, Forall, G, F };
    Kind kind = Kind::Leaf;
    FormulaPtr leaf;
    std::vector<TPropPtr> kids;
    std::string var;
};

TPropPtr tp_leaf(FormulaPtr f);
TPropPtr tp_not(TPropPtr k);
TPropPtr tp_and(std::vector<TPropPtr> ks);
TPropPtr tp_or(std::vector<TPropPtr> ks);
TPropPtr tp_implies(TPropPtr a, TPropPtr b);
TPropPtr tp_exists(std::string v, TPropPtr k);
TPropPtr tp_forall(std::string v, TPropPtr k);
TPropPtr tp_g(TPropPtr k);
TPropPtr tp_f(TPropPtr k);

std::string to_string(const TPropPtr& p);

struct PropertyFlags {
    bool safety_shaped = false;    // forall i*. (psi1 => G psi2)
    bool liveness_shaped = false;  // forall i*. (psi1 => F psi2)
    bool fairness_shaped = false;  // boolean combination of GF/FG leaves
    bool monodic = false;
    bool abstractable = false;     // the counterexample form conforms
};

struct TemporalProperty {
    std::string name;
    TPropPtr ast;
    PropertyFlags flags;
};

struct IndexedPredicate {
    Atom atom;                 // over vocab + designated variable
    bool mentions_designated = false;
    bool tautological = false; // e.g. a[%i] = a[%i]
};

// Spelling of the designated position variable in predicate atoms.
inline const std::string kDesignated = "%i";

}  // namespace regabs::logic
