#pragma once

#include <optional>

#include "regabs/wa/automaton.hpp"

namespace regabs::wa {

enum class PadMode { Forward, Backward };

// Subset construction restricted to well-formed encodings (per-track
// monotone padding, no all-padding column). With `complete`, a sink is
// materialized so every well-formed word has a run.
TrackAutomaton determinize(const TrackAutomaton& a, PadMode mode = PadMode::Forward,
                           bool complete = false);

// Minimal canonical DFA of the well-formed part of L(a) (Brzozowski).
TrackAutomaton minimize(const TrackAutomaton& a);

TrackAutomaton intersect(const TrackAutomaton& a, const TrackAutomaton& b);
TrackAutomaton unite(const TrackAutomaton& a, const TrackAutomaton& b);
TrackAutomaton difference(const TrackAutomaton& a, const TrackAutomaton& b);
TrackAutomaton complement(const TrackAutomaton& a);

// Removes the given tracks (positions vanish where all remaining tracks are
// padded); result is minimized.
TrackAutomaton project(const TrackAutomaton& a, const std::vector<size_t>& drop);

// Embeds `a` into `target`: track i of `a` becomes track pos_map[i]; the
// other tracks are unconstrained, and words may extend beyond a's tracks.
TrackAutomaton lift(const TrackAutomaton& a, const TrackLayout& target,
                    const std::vector<size_t>& pos_map);

TrackAutomaton rename_tracks(TrackAutomaton a, const std::vector<std::string>& names);

// {t : exists s in S. (s,t) in R}. R's layout must be S's layout doubled
// (current block first, then next block).
TrackAutomaton post_image(const TrackAutomaton& s, const TrackAutomaton& r);
TrackAutomaton pre_image(const TrackAutomaton& s, const TrackAutomaton& r);

bool is_empty(const TrackAutomaton& a);
bool includes(const TrackAutomaton& a, const TrackAutomaton& b);  // L(b) subset of L(a)
bool equivalent(const TrackAutomaton& a, const TrackAutomaton& b);
std::optional<ConvWord> witness(const TrackAutomaton& a);  // shortest accepted word

// All well-formed encodings over the layout.
TrackAutomaton universe(TrackLayout layout);

// Singleton automaton accepting exactly w.
TrackAutomaton singleton(TrackLayout layout, const ConvWord& w);

}  // namespace regabs::wa
