// Dynamically sized bitset used for lattice down-sets and value-set tables.
#pragma once

#include <cstdint>
#include <vector>

namespace omlkit {

class Bitset {
  public:
    Bitset() : nbits_(0) {}
    explicit Bitset(int nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    int size() const { return nbits_; }

    void set(int i) { words_[i >> 6] |= (uint64_t{1} << (i & 63)); }
    void reset(int i) { words_[i >> 6] &= ~(uint64_t{1} << (i & 63)); }
    bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

    void clear()
    {
        for (auto& w : words_) w = 0;
    }

    bool any() const
    {
        for (auto w : words_)
            if (w) return true;
        return false;
    }

    int count() const
    {
        int c = 0;
        for (auto w : words_) c += __builtin_popcountll(w);
        return c;
    }

    Bitset& operator|=(const Bitset& o)
    {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }

    Bitset& operator&=(const Bitset& o)
    {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }

    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }

    bool operator==(const Bitset& o) const = default;

    /** True if every bit set here is also set in `o`. */
    bool subset_of(const Bitset& o) const
    {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    /** Calls fn(i) for each set bit, in ascending order. */
    template <typename Fn>
    void for_each(Fn&& fn) const
    {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            uint64_t w = words_[wi];
            while (w) {
                int b = __builtin_ctzll(w);
                fn(static_cast<int>(wi * 64 + b));
                w &= w - 1;
            }
        }
    }

    /** Like for_each, but stops (and returns true) when fn returns true. */
    template <typename Fn>
    bool for_each_until(Fn&& fn) const
    {
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            uint64_t w = words_[wi];
            while (w) {
                int b = __builtin_ctzll(w);
                if (fn(static_cast<int>(wi * 64 + b))) return true;
                w &= w - 1;
            }
        }
        return false;
    }

  private:
    int nbits_;
    std::vector<uint64_t> words_;
};

}   // namespace omlkit
