#include <algorithm>
#include <functional>

#include "regabs/solver/oracle.hpp"

namespace regabs::solver {

using logic::Atom;

namespace {

// Tiny prefer-true SAT solver for the MARCO map over selector variables.
struct MapSolver {
    int n = 0;
    std::vector<std::vector<int>> clauses;  // literals +v+1 / -(v+1)

    void block_superset(const std::vector<int>& set) {  // at least one member off
        std::vector<int> cl;
        for (int v : set) cl.push_back(-(v + 1));
        clauses.push_back(std::move(cl));
    }
    void block_subset(const std::vector<int>& set) {  // at least one non-member on
        std::vector<bool> in(static_cast<size_t>(n), false);
        for (int v : set) in[static_cast<size_t>(v)] = true;
        std::vector<int> cl;
        for (int v = 0; v < n; ++v)
            if (!in[static_cast<size_t>(v)]) cl.push_back(v + 1);
        clauses.push_back(std::move(cl));
    }
    void mutually_exclusive(int a, int b) { clauses.push_back({-(a + 1), -(b + 1)}); }

    std::optional<std::vector<int>> solve() {
        std::vector<int8_t> val(static_cast<size_t>(n), 0);
        std::vector<int> trail;
        auto assign = [&](int var, bool b) {
            val[static_cast<size_t>(var)] = b ? 1 : 2;
            trail.push_back(var);
        };
        std::function<bool()> propagate = [&]() {
            bool changed = true;
            while (changed) {
                changed = false;
                for (const auto& cl : clauses) {
                    int unass = 0, last = 0;
                    bool sat = false;
                    for (int lit : cl) {
                        int v = std::abs(lit) - 1;
                        int8_t x = val[static_cast<size_t>(v)];
                        if (x == 0) {
                            ++unass;
                            last = lit;
                        } else if ((lit > 0) == (x == 1)) {
                            sat = true;
                            break;
                        }
                    }
                    if (sat) continue;
                    if (unass == 0) return false;
                    if (unass == 1) {
                        assign(std::abs(last) - 1, last > 0);
                        changed = true;
                    }
                }
            }
            return true;
        };
        std::function<bool()> rec = [&]() {
            size_t mark = trail.size();
            if (!propagate()) {
                while (trail.size() > mark) {
                    val[static_cast<size_t>(trail.back())] = 0;
                    trail.pop_back();
                }
                return false;
            }
            int var = -1;
            for (int v = 0; v < n; ++v)
                if (val[static_cast<size_t>(v)] == 0) { var = v; break; }
            if (var < 0) return true;
            for (int b = 1; b >= 0; --b) {  // prefer true: maximal-biased seeds
                size_t m2 = trail.size();
                assign(var, b == 1);
                if (rec()) return true;
                while (trail.size() > m2) {
                    val[static_cast<size_t>(trail.back())] = 0;
                    trail.pop_back();
                }
            }
            while (trail.size() > mark) {
                val[static_cast<size_t>(trail.back())] = 0;
                trail.pop_back();
            }
            return false;
        };
        if (!rec()) return std::nullopt;
        std::vector<int> model;
        for (int v = 0; v < n; ++v)
            if (val[static_cast<size_t>(v)] == 1) model.push_back(v);
        return model;
    }
};

}  // namespace

MucResult enumerate_min_clauses(SolverSession& s, const Query& psi,
                                const std::vector<Atom>& literals,
                                const logic::Vocabulary& vocab, MucBudget budget) {
    MucResult out;
    size_t calls = 0;
    auto valid = [&](const std::vector<int>& idxs) {
        Clause c;
        for (int i : idxs) c.push_back(literals[static_cast<size_t>(i)]);
        ++calls;
        return check_implication_valid(s, psi, c, vocab);
    };
    auto over_budget = [&]() {
        return calls >= budget.max_solver_calls || out.clauses.size() >= budget.max_clauses;
    };

    ++calls;
    if (s.check_sat(psi, vocab).v == V3::Unsat) {
        out.clauses.push_back({});  // everything follows from false
        out.solver_calls = calls;
        return out;
    }

    const int n = static_cast<int>(literals.size());
    MapSolver map;
    map.n = n;
    // exclude complementary pairs (their clauses are trivially valid)
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (logic::cmp(logic::canon(logic::negate(literals[static_cast<size_t>(i)])),
                           logic::canon(literals[static_cast<size_t>(j)])) == 0)
                map.mutually_exclusive(i, j);

    std::vector<std::vector<int>> found;

    // singleton clauses first
    for (int i = 0; i < n && !over_budget(); ++i) {
        if (valid({i})) {
            found.push_back({i});
            map.block_superset({i});
        }
    }

    while (!over_budget()) {
        auto seed = map.solve();
        if (!seed) break;  // lattice exhausted
        if (valid(*seed)) {
            // shrink to a minimal valid clause
            std::vector<int> core = *seed;
            for (size_t k = 0; k < core.size() && !over_budget();) {
                std::vector<int> cand = core;
                cand.erase(cand.begin() + static_cast<long>(k));
                if (!cand.empty() && valid(cand)) core = std::move(cand);
                else ++k;
            }
            found.push_back(core);
            map.block_superset(core);
        } else {
            map.block_subset(*seed);
        }
    }
    out.complete = !over_budget() || !map.solve().has_value();

    for (auto& idxs : found) {
        Clause c;
        for (int i : idxs) c.push_back(literals[static_cast<size_t>(i)]);
        std::sort(c.begin(), c.end(), [](const Atom& a, const Atom& b) {
            return logic::cmp(a, b) < 0;
        });
        out.clauses.push_back(std::move(c));
    }
    std::sort(out.clauses.begin(), out.clauses.end(),
              [](const Clause& a, const Clause& b) { return cmp(a, b) < 0; });
    out.clauses.erase(std::unique(out.clauses.begin(), out.clauses.end(),
                                  [](const Clause& a, const Clause& b) { return cmp(a, b) == 0; }),
                      out.clauses.end());
    out.solver_calls = calls;
    return out;
}

}  // namespace regabs::solver
