#pragma once

#include "regabs/solver/smtlib.hpp"

namespace regabs::solver {

enum class V3 { Sat, Unsat, Unknown };

struct Verdict3 {
    V3 v = V3::Unknown;
    std::string reason;  // Unknown only: timeout / process / solver error
};

struct SolverStats {
    size_t queries = 0;
    size_t cache_hits = 0;
    size_t sat = 0, unsat = 0, unknown = 0;
};

// One external solver process speaking SMT-LIB 2 over stdio. One in-flight
// query at a time; results cached by canonical query text.
class SolverSession {
public:
    explicit SolverSession(std::string path = "", int timeout_ms = 10000);
    ~SolverSession();
    SolverSession(const SolverSession&) = delete;
    SolverSession& operator=(const SolverSession&) = delete;

    Verdict3 check_sat(const Query& q, const logic::Vocabulary& vocab);
    const SolverStats& stats() const { return stats_; }
    int timeout_ms() const { return timeout_ms_; }

    // $REGABS_SOLVER if set, else the bundled regabs-smt next to the running
    // executable.
    static std::string default_solver_path();

private:
    void spawn();
    void shutdown();
    bool send(const std::string& text);
    std::optional<std::string> read_line();

    std::string path_;
    int timeout_ms_;
    int pid_ = -1;
    int to_child_ = -1, from_child_ = -1;
    std::string rdbuf_;
    SolverStats stats_;
    std::map<std::string, V3> cache_;
};

using Clause = std::vector<logic::Atom>;  // disjunction of literals

std::string to_string(const Clause& c);
int cmp(const Clause& a, const Clause& b);

// true iff psi /\ not C is unsat; Unknown maps to false.
bool check_implication_valid(SolverSession& s, const Query& psi, const Clause& c,
                             const logic::Vocabulary& vocab);

struct MucBudget {
    size_t max_clauses = 64;
    size_t max_solver_calls = 20000;
};

struct MucResult {
    std::vector<Clause> clauses;  // ordered by size, then lexicographically
    bool complete = true;
    size_t solver_calls = 0;
};

// All literal-minimal clauses C over `literals` with psi => \/C valid,
// enumerated MARCO-style (seed, shrink, block) under the budget. Clauses
// containing a complementary literal pair are excluded up front. If psi
// itself is unsat, the single empty clause is returned.
MucResult enumerate_min_clauses(SolverSession& s, const Query& psi,
                                const std::vector<logic::Atom>& literals,
                                const logic::Vocabulary& vocab, MucBudget budget = {});

}  // namespace regabs::solver
