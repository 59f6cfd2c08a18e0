#include "regabs/wa/automaton.hpp"

#include <algorithm>
#include <set>

namespace regabs::wa {

int TrackLayout::index_of(const std::string& name) const {
    for (size_t i = 0; i < tracks.size(); ++i)
        if (tracks[i].name == name) return static_cast<int>(i);
    return -1;
}

bool TrackLayout::same_shape(const TrackLayout& o) const {
    if (tracks.size() != o.tracks.size()) return false;
    for (size_t i = 0; i < tracks.size(); ++i)
        if (tracks[i].bits != o.tracks[i].bits) return false;
    return true;
}

bool label_empty(const Label& l) {
    for (const auto& ts : l)
        if (ts.empty()) return true;
    return false;
}

Label label_intersect(const Label& a, const Label& b) {
    Label r;
    r.reserve(a.size());
    for (size_t i = 0; i < a.size(); ++i) r.push_back(a[i].intersect(b[i]));
    return r;
}

int label_cmp(const Label& a, const Label& b) {
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == b[i]) continue;
        return a[i] < b[i] ? -1 : 1;
    }
    return 0;
}

bool column_well_formed(const Column& c) {
    for (int v : c)
        if (v >= 0) return true;
    return false;
}

TrackAutomaton TrackAutomaton::empty(TrackLayout layout) {
    TrackAutomaton a;
    a.layout = std::move(layout);
    return a;
}

bool member(const TrackAutomaton& a, const ConvWord& w) {
    std::set<uint32_t> cur(a.initial.begin(), a.initial.end());
    for (const auto& col : w) {
        std::set<uint32_t> nxt;
        for (uint32_t s : cur)
            for (const auto& e : a.edges[s]) {
                bool ok = true;
                for (size_t t = 0; t < col.size(); ++t)
                    if (!e.label[t].contains(col[t])) { ok = false; break; }
                if (ok) nxt.insert(e.to);
            }
        cur = std::move(nxt);
        if (cur.empty()) return false;
    }
    for (uint32_t s : cur)
        if (a.accepting[s]) return true;
    return false;
}

ConvWord convolve(const TrackLayout& layout, const std::vector<TrackContent>& parts) {
    size_t len = 0;
    for (size_t t = 0; t < parts.size(); ++t) {
        size_t n = parts[t].is_nat ? static_cast<size_t>(parts[t].nat) : parts[t].word.size();
        len = std::max(len, n);
    }
    ConvWord w(len, Column(layout.size(), -1));
    for (size_t t = 0; t < parts.size(); ++t) {
        if (parts[t].is_nat) {
            for (long long i = 0; i < parts[t].nat; ++i) w[static_cast<size_t>(i)][t] = 0;
        } else {
            for (size_t i = 0; i < parts[t].word.size(); ++i) w[i][t] = parts[t].word[i];
        }
    }
    return w;
}

std::vector<TrackContent> deconvolve(const TrackLayout& layout, const ConvWord& w) {
    std::vector<TrackContent> parts(layout.size());
    for (size_t t = 0; t < layout.size(); ++t) {
        parts[t].is_nat = layout.tracks[t].bits == 0;
        for (const auto& col : w) {
            if (col[t] < 0) break;
            if (parts[t].is_nat) ++parts[t].nat;
            else parts[t].word.push_back(col[t]);
        }
    }
    return parts;
}

static std::string bits_of(int letter, int bits) {
    std::string s;
    for (int k = 0; k < bits; ++k) s += (letter >> k) & 1 ? '1' : '0';
    return s;
}

std::string render_zero_padded(const TrackLayout& layout, const ConvWord& w) {
    std::string out;
    for (const auto& col : w) {
        out += "(";
        for (size_t t = 0; t < col.size(); ++t) {
            if (t) out += ",";
            int bits = layout.tracks[t].bits;
            if (bits == 0) out += col[t] < 0 ? "0" : "1";
            else out += bits_of(col[t] < 0 ? 0 : col[t], bits);
        }
        out += ")";
    }
    return out;
}

std::string format_word(const TrackLayout& layout, const ConvWord& w) {
    std::string out;
    for (const auto& col : w) {
        out += "(";
        for (size_t t = 0; t < col.size(); ++t) {
            if (t) out += ",";
            int bits = layout.tracks[t].bits;
            if (col[t] < 0) out += "#";
            else if (bits == 0) out += "1";
            else out += bits_of(col[t], bits);
        }
        out += ")";
    }
    return out.empty() ? "()" : out;
}

// Greedy cube cover of a letter set, for printing.
static std::vector<std::pair<int, int>> cube_cover(const util::Bitset& set, int bits) {
    std::vector<std::pair<int, int>> cubes;  // (value, care_mask)
    util::Bitset left = set;
    for (size_t v = left.first(); v < left.size(); v = left.first()) {
        int value = static_cast<int>(v);
        int care = (1 << bits) - 1;
        for (int k = 0; k < bits; ++k) {
            int trial_care = care & ~(1 << k);
            // check all letters matching (value, trial_care) are in `set`
            bool ok = true;
            int free_mask = ~trial_care & ((1 << bits) - 1);
            for (int sub = free_mask;; sub = (sub - 1) & free_mask) {
                int letter = (value & trial_care) | sub;
                if (!set.test(static_cast<size_t>(letter))) { ok = false; break; }
                if (sub == 0) break;
            }
            if (ok) care = trial_care;
        }
        int free_mask = ~care & ((1 << bits) - 1);
        for (int sub = free_mask;; sub = (sub - 1) & free_mask) {
            left.reset(static_cast<size_t>((value & care) | sub));
            if (sub == 0) break;
        }
        cubes.emplace_back(value & care, care);
    }
    return cubes;
}

static std::string format_trackset(const TrackSet& ts, int bits) {
    size_t n = size_t{1} << bits;
    if (ts.pad && ts.letters.count() == n) return "*";
    std::vector<std::string> alts;
    if (bits == 0) {
        if (ts.letters.test(0)) alts.push_back("1");
    } else {
        for (auto [value, care] : cube_cover(ts.letters, bits)) {
            std::string s;
            for (int k = 0; k < bits; ++k) {
                if (!((care >> k) & 1)) s += '-';
                else s += ((value >> k) & 1) ? '1' : '0';
            }
            alts.push_back(s);
        }
    }
    if (ts.pad) alts.push_back("#");
    std::string out;
    for (size_t i = 0; i < alts.size(); ++i) {
        if (i) out += "/";
        out += alts[i];
    }
    return out.empty() ? "(none)" : out;
}

std::string format_label(const TrackLayout& layout, const Label& l) {
    std::string out;
    for (size_t t = 0; t < l.size(); ++t) {
        if (t) out += " ";
        out += layout.tracks[t].name + ":" + format_trackset(l[t], layout.tracks[t].bits);
    }
    return out;
}

std::string export_dot(const TrackAutomaton& a) {
    std::string out = "digraph automaton {\n  rankdir=LR;\n";
    if (a.num_states() == 0) {
        out += "  empty [shape=plaintext, label=\"(empty)\"];\n}\n";
        return out;
    }
    for (uint32_t s = 0; s < a.num_states(); ++s) {
        out += "  q" + std::to_string(s) + " [shape=" +
               (a.accepting[s] ? "doublecircle" : "circle") + "];\n";
    }
    for (uint32_t i : a.initial)
        out += "  init" + std::to_string(i) + " [shape=point]; init" + std::to_string(i) +
               " -> q" + std::to_string(i) + ";\n";
    for (uint32_t s = 0; s < a.num_states(); ++s) {
        std::vector<std::string> lines;
        for (const auto& e : a.edges[s])
            lines.push_back("  q" + std::to_string(s) + " -> q" + std::to_string(e.to) +
                            " [label=\"" + format_label(a.layout, e.label) + "\"];\n");
        std::sort(lines.begin(), lines.end());
        for (auto& l : lines) out += l;
    }
    out += "}\n";
    return out;
}

std::string dump(const TrackAutomaton& a) {
    std::string out = "tracks:";
    for (const auto& t : a.layout.tracks)
        out += " " + t.name + ":" + std::to_string(t.bits);
    out += "\nstates: " + std::to_string(a.num_states()) + "\ninitial:";
    std::vector<uint32_t> init = a.initial;
    std::sort(init.begin(), init.end());
    for (uint32_t i : init) out += " " + std::to_string(i);
    out += "\naccepting:";
    for (uint32_t s = 0; s < a.num_states(); ++s)
        if (a.accepting[s]) out += " " + std::to_string(s);
    out += "\n";
    for (uint32_t s = 0; s < a.num_states(); ++s) {
        std::vector<std::string> lines;
        for (const auto& e : a.edges[s])
            lines.push_back(std::to_string(s) + " -> " + std::to_string(e.to) + " [" +
                            format_label(a.layout, e.label) + "]\n");
        std::sort(lines.begin(), lines.end());
        for (auto& l : lines) out += l;
    }
    return out;
}

}  // namespace regabs::wa
