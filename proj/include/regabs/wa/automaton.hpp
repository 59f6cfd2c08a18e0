#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "regabs/util/bitset.hpp"

namespace regabs::wa {

struct LayoutMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A track is either a unary natural (bits = 0: one real letter, value =
// number of non-padding positions) or a word over m-bit vectors.
struct Track {
    std::string name;
    int bits = 0;

    size_t letter_count() const { return size_t{1} << bits; }
    friend bool operator==(const Track& a, const Track& b) {
        return a.name == b.name && a.bits == b.bits;
    }
};

struct TrackLayout {
    std::vector<Track> tracks;

    size_t size() const { return tracks.size(); }
    int index_of(const std::string& name) const;
    bool same_shape(const TrackLayout& o) const;  // bits equal, names ignored
    friend bool operator==(const TrackLayout& a, const TrackLayout& b) {
        return a.tracks == b.tracks;
    }
};

// Set of per-track symbols: a subset of the track's real letters plus
// optionally the padding mark.
struct TrackSet {
    util::Bitset letters;
    bool pad = false;

    bool empty() const { return !pad && letters.none(); }
    bool has_real() const { return letters.any(); }
    static TrackSet none(int bits) { return {util::Bitset(size_t{1} << bits), false}; }
    static TrackSet all(int bits) { return {util::Bitset(size_t{1} << bits, true), true}; }
    static TrackSet letters_only(int bits) { return {util::Bitset(size_t{1} << bits, true), false}; }
    static TrackSet pad_only(int bits) { return {util::Bitset(size_t{1} << bits), true}; }
    static TrackSet single(int bits, size_t letter) {
        TrackSet s = none(bits);
        s.letters.set(letter);
        return s;
    }

    TrackSet intersect(const TrackSet& o) const { return {letters & o.letters, pad && o.pad}; }
    bool contains(int letter) const {  // letter < 0 means pad
        return letter < 0 ? pad : letters.test(static_cast<size_t>(letter));
    }
    friend bool operator==(const TrackSet& a, const TrackSet& b) {
        return a.pad == b.pad && a.letters == b.letters;
    }
    friend bool operator<(const TrackSet& a, const TrackSet& b) {
        if (a.pad != b.pad) return a.pad < b.pad;
        return a.letters < b.letters;
    }
};

using Label = std::vector<TrackSet>;  // one TrackSet per track

bool label_empty(const Label& l);
Label label_intersect(const Label& a, const Label& b);
int label_cmp(const Label& a, const Label& b);

struct Edge {
    Label label;
    uint32_t to = 0;
};

// One position of a convolved word: per-track letter id, -1 for padding.
using Column = std::vector<int>;
using ConvWord = std::vector<Column>;

bool column_well_formed(const Column& c);

// NFA over convolved tracks. The padding discipline (monotone padding, no
// all-padding column) is the well-formed-encoding universe; determinization
// restricts to it.
struct TrackAutomaton {
    TrackLayout layout;
    std::vector<std::vector<Edge>> edges;  // indexed by source state
    std::vector<uint32_t> initial;
    std::vector<bool> accepting;

    size_t num_states() const { return edges.size(); }
    size_t num_edges() const {
        size_t n = 0;
        for (const auto& es : edges) n += es.size();
        return n;
    }
    uint32_t add_state(bool accept = false) {
        edges.emplace_back();
        accepting.push_back(accept);
        return static_cast<uint32_t>(edges.size() - 1);
    }
    void add_edge(uint32_t from, Label l, uint32_t to) {
        if (!label_empty(l)) edges[from].push_back({std::move(l), to});
    }

    static TrackAutomaton empty(TrackLayout layout);
};

bool member(const TrackAutomaton& a, const ConvWord& w);

// Convolution of per-track contents (Eq.-1 style, left aligned, padding mark
// on the shorter tracks). Nat tracks pass their value, word tracks their
// letter sequence.
struct TrackContent {
    bool is_nat = false;
    long long nat = 0;
    std::vector<int> word;
};
ConvWord convolve(const TrackLayout& layout, const std::vector<TrackContent>& parts);
std::vector<TrackContent> deconvolve(const TrackLayout& layout, const ConvWord& w);

// Paper-faithful zero-padded rendering of a convolved word (padding erased
// to all-zero bitvectors).
std::string render_zero_padded(const TrackLayout& layout, const ConvWord& w);

std::string export_dot(const TrackAutomaton& a);
std::string dump(const TrackAutomaton& a);  // line-based golden format
std::string format_label(const TrackLayout& layout, const Label& l);
std::string format_word(const TrackLayout& layout, const ConvWord& w);

}  // namespace regabs::wa
