#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

namespace regabs::util {

// Fixed-capacity dynamic bitset. Word count is decided at construction;
// all binary operations require equal capacity.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(size_t nbits, bool fill = false)
        : nbits_(nbits), words_((nbits + 63) / 64, fill ? ~0ull : 0ull) {
        trim();
    }

    size_t size() const { return nbits_; }

    bool test(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }
    void set(size_t i) { words_[i >> 6] |= (1ull << (i & 63)); }
    void reset(size_t i) { words_[i >> 6] &= ~(1ull << (i & 63)); }
    void set_all() { for (auto& w : words_) w = ~0ull; trim(); }
    void clear() { for (auto& w : words_) w = 0; }

    bool any() const {
        for (auto w : words_) if (w) return true;
        return false;
    }
    bool none() const { return !any(); }
    size_t count() const {
        size_t c = 0;
        for (auto w : words_) c += static_cast<size_t>(__builtin_popcountll(w));
        return c;
    }
    // Index of lowest set bit, or size() if none.
    size_t first() const {
        for (size_t k = 0; k < words_.size(); ++k)
            if (words_[k]) return k * 64 + static_cast<size_t>(__builtin_ctzll(words_[k]));
        return nbits_;
    }
    size_t next(size_t i) const {  // lowest set bit > i, or size()
        ++i;
        if (i >= nbits_) return nbits_;
        size_t k = i >> 6;
        uint64_t w = words_[k] & (~0ull << (i & 63));
        while (true) {
            if (w) return k * 64 + static_cast<size_t>(__builtin_ctzll(w));
            if (++k == words_.size()) return nbits_;
            w = words_[k];
        }
    }

    Bitset& operator&=(const Bitset& o) { for (size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k]; return *this; }
    Bitset& operator|=(const Bitset& o) { for (size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k]; return *this; }
    Bitset& operator-=(const Bitset& o) { for (size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k]; return *this; }
    Bitset operator&(const Bitset& o) const { Bitset r = *this; r &= o; return r; }
    Bitset operator|(const Bitset& o) const { Bitset r = *this; r |= o; return r; }
    Bitset operator-(const Bitset& o) const { Bitset r = *this; r -= o; return r; }
    Bitset complement() const {
        Bitset r = *this;
        for (auto& w : r.words_) w = ~w;
        r.trim();
        return r;
    }

    bool intersects(const Bitset& o) const {
        for (size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & o.words_[k]) return true;
        return false;
    }
    bool is_subset_of(const Bitset& o) const {
        for (size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & ~o.words_[k]) return false;
        return true;
    }

    friend bool operator==(const Bitset& a, const Bitset& b) { return a.nbits_ == b.nbits_ && a.words_ == b.words_; }
    friend bool operator<(const Bitset& a, const Bitset& b) {
        if (a.nbits_ != b.nbits_) return a.nbits_ < b.nbits_;
        return a.words_ < b.words_;
    }

    size_t hash() const {
        size_t h = nbits_ * 0x9e3779b97f4a7c15ull;
        for (auto w : words_) h = h * 1099511628211ull ^ w;
        return h;
    }

private:
    void trim() {
        if (nbits_ & 63 && !words_.empty())
            words_.back() &= (~0ull >> (64 - (nbits_ & 63)));
    }
    size_t nbits_ = 0;
    std::vector<uint64_t> words_;
};

inline size_t hash_combine(size_t h, size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
}

}  // namespace regabs::util
