#pragma once

#include <map>
#include <string>
#include <vector>

#include "regabs/logic/ast.hpp"

namespace regabs::sim {

struct StateCapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Explicit state: integer valuation plus finite array windows (position i is
// stored at index i-1; cells outside 1..|a| are unconstrained).
struct ConcreteState {
    std::map<std::string, long long> ints;
    std::map<std::string, std::vector<long long>> arrays;

    friend bool operator<(const ConcreteState& a, const ConcreteState& b) {
        if (a.ints != b.ints) return a.ints < b.ints;
        return a.arrays < b.arrays;
    }
    friend bool operator==(const ConcreteState& a, const ConcreteState& b) {
        return a.ints == b.ints && a.arrays == b.arrays;
    }
};

struct Bounds {
    std::map<std::string, long long> params;  // fixed parameter values
    long long data_lo = 0, data_hi = 2;
    size_t max_states = 200000;
    size_t step_limit = SIZE_MAX;
};

std::string to_string(const ConcreteState& s);

}  // namespace regabs::sim
