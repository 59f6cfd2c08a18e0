#pragma once

#include "regabs/engine/alpha.hpp"
#include "regabs/engine/transition.hpp"

namespace regabs::rmc {

struct SafetyInstance {
    wa::TrackAutomaton I, T, B;  // T relational (doubled layout)
};

enum class LivenessMode {
    Eventually,  // counterexample path avoids F everywhere (psi1 => F psi2)
    Recurrence,  // counterexample lasso's cycle avoids F (GF psi)
};

struct FairnessObligation {
    bool gf = true;  // GF vs FG
    wa::TrackAutomaton E;
};

struct LivenessInstance {
    wa::TrackAutomaton I, T, F;
    std::vector<FairnessObligation> fairness;
    LivenessMode mode = LivenessMode::Eventually;
};

struct Verdict {
    enum class Kind { Proved, Counterexample, Unknown };
    Kind kind = Kind::Unknown;
    engine::AbstractTrace trace;       // Counterexample: replays under T
    std::vector<wa::ConvWord> raw_trace;  // same trace over the instance layout
    std::string reason;                // Unknown: bound / budget note
    size_t iterations = 0;

    bool proved() const { return kind == Kind::Proved; }
};

std::string to_string(Verdict::Kind k);

struct CheckStrategy {
    size_t max_iterations = 60;
    std::optional<wa::TrackAutomaton> invariant;  // certificate route
};

// Instances built from a system, a property shape, and predicates; the
// vocabulary inside `ab` is extended with Skolem parameters.
struct BuiltSafety {
    std::shared_ptr<engine::Abstraction> ab;
    SafetyInstance instance;
    engine::TransitionAbstraction transition_log;
};

struct BuiltLiveness {
    std::shared_ptr<engine::Abstraction> ab;
    LivenessInstance instance;
    engine::TransitionAbstraction transition_log;
};

}  // namespace regabs::rmc
