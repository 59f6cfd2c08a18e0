#pragma once

#include <map>

#include "regabs/logic/ast.hpp"

namespace regabs::front {

struct ParseError : std::runtime_error {
    int line = 0, col = 0;
    ParseError(const std::string& msg, int line_, int col_)
        : std::runtime_error(msg + " (line " + std::to_string(line_) + ", column " +
                             std::to_string(col_) + ")"),
          line(line_), col(col_) {}
};

// .rspec: vocabulary, init, guarded commands, local macros.
logic::ArraySystem parse_system(const std::string& text);

// .rprop: named temporal properties (macros allowed); may declare fresh
// parameters, which are added to the returned vocabulary copy.
struct PropertyFile {
    std::map<std::string, logic::TemporalProperty> props;
    logic::Vocabulary vocab;  // input vocab plus declared parameters
};
PropertyFile parse_property_file(const std::string& text, const logic::Vocabulary& vocab);

// Single property expression.
logic::TemporalProperty parse_property(const std::string& text, const logic::Vocabulary& vocab);

// .rpred: ordered predicate list; may declare fresh parameters.
struct PredicateFile {
    std::vector<logic::IndexedPredicate> predicates;
    logic::Vocabulary vocab;
    std::vector<std::string> warnings;  // constant / tautological predicates
};
PredicateFile parse_predicates(const std::string& text, const logic::Vocabulary& vocab);

// Canonical printers (parse . print is identity on ASTs).
std::string print_system(const logic::ArraySystem& sys);
std::string print_predicates(const std::vector<logic::IndexedPredicate>& preds);

bool equal_systems(const logic::ArraySystem& a, const logic::ArraySystem& b);

std::string read_file(const std::string& path);

}  // namespace regabs::front
