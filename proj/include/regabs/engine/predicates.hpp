#pragma once

#include <optional>

#include "regabs/logic/ast.hpp"

namespace regabs::engine {

// Ordered indexed predicates <P_1..P_m>; the order fixes the bit positions
// of the abstract alphabet Sigma_m. For transitions the set is extended to
// P*P' with primed copies (parameters stay unprimed; they are immutable).
class PredicateSet {
public:
    PredicateSet() = default;
    PredicateSet(std::vector<logic::IndexedPredicate> preds, const logic::Vocabulary& vocab);

    size_t m() const { return preds_.size(); }
    const std::vector<logic::IndexedPredicate>& predicates() const { return preds_; }

    // P_k[t/i], 1-based k; primed variant uses the P*P' extension
    logic::Atom instantiate(size_t k, const logic::Term& t, bool primed = false) const;

    // Recognizes +-P_k[t/i] (or a primed instance when allow_primed), up to
    // side orientation; smallest (primed, k) and then smallest t wins, which
    // keeps the bit mapping of semantically equal instantiations unique.
    struct PredLit {
        size_t k = 0;  // 1-based
        bool primed = false;
        bool positive = true;
        logic::Term t;
    };
    std::optional<PredLit> match(const logic::Atom& atom, bool allow_primed) const;

    // element accesses of the instantiated predicate, for boundary checks
    std::vector<logic::Term> reads(size_t k, const logic::Term& t, bool primed) const;

    // index terms of the predicates (designated-variable terms dropped),
    // and designated offsets for term-universe composition
    std::vector<logic::Term> plain_terms() const;
    std::vector<int> designated_offsets() const;

private:
    std::vector<logic::IndexedPredicate> preds_;
    std::vector<logic::Atom> primed_;  // P_k with non-parameter symbols primed
};

}  // namespace regabs::engine
