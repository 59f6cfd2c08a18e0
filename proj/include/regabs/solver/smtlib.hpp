#pragma once

#include <optional>

#include "regabs/logic/ast.hpp"

namespace regabs::solver {

// Extensional-array update bound to a primed array name:
// lhs = base{writes...}; a havoc write (no value) becomes a fresh element
// variable on the solver side.
struct ArrayDef {
    std::string lhs;
    std::string base;
    struct Write {
        logic::Term pos;
        std::optional<logic::Term> value;
    };
    std::vector<Write> writes;  // empty: lhs = base
};

// Quantifier-free satisfiability query.
struct Query {
    logic::FormulaPtr formula = logic::f_true();
    std::vector<logic::FormulaPtr> extra;  // additional conjuncts
    std::vector<ArrayDef> defs;
};

// SMT-LIB 2 rendering of a query: declarations, asserts, check-sat.
// Throws SortError on quantified input.
std::string to_smtlib(const Query& q, const logic::Vocabulary& vocab);

// Cache key: conjuncts sorted, variables renamed in first-occurrence order.
std::string canonical_key(const Query& q, const logic::Vocabulary& vocab);

}  // namespace regabs::solver
