#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

namespace boxlab {

// Fixed-size dynamic bitset tuned for the counting kernels: word access for
// AND+popcount inner loops and cheap iteration over set bits.
class DynBitset {
public:
    DynBitset() = default;
    explicit DynBitset(int nbits) : n_(nbits), w_((nbits + 63) / 64, 0) {}

    int size() const { return n_; }

    bool test(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
    void set(int i) { w_[i >> 6] |= 1ull << (i & 63); }
    void reset(int i) { w_[i >> 6] &= ~(1ull << (i & 63)); }

    void clear() { std::fill(w_.begin(), w_.end(), 0); }

    // Clears bits [0, i).
    void reset_below(int i) {
        if (i <= 0) return;
        int full = i >> 6;
        for (int k = 0; k < full && k < static_cast<int>(w_.size()); ++k) w_[k] = 0;
        if (full < static_cast<int>(w_.size()) && (i & 63))
            w_[full] &= ~((1ull << (i & 63)) - 1);
    }

    int count() const {
        int c = 0;
        for (uint64_t x : w_) c += std::popcount(x);
        return c;
    }

    bool any() const {
        for (uint64_t x : w_)
            if (x) return true;
        return false;
    }

    // popcount(*this & o); both operands must have equal size.
    int count_and(const DynBitset& o) const {
        int c = 0;
        for (size_t i = 0; i < w_.size(); ++i) c += std::popcount(w_[i] & o.w_[i]);
        return c;
    }

    DynBitset& operator&=(const DynBitset& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }

    DynBitset& operator|=(const DynBitset& o) {
        for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }

    bool operator==(const DynBitset& o) const = default;

    template <typename F>
    void for_each_set(F&& f) const {
        for (size_t wi = 0; wi < w_.size(); ++wi) {
            uint64_t x = w_[wi];
            while (x) {
                int b = std::countr_zero(x);
                f(static_cast<int>(wi * 64 + b));
                x &= x - 1;
            }
        }
    }

    const std::vector<uint64_t>& words() const { return w_; }

private:
    int n_ = 0;
    std::vector<uint64_t> w_;
};

}  // namespace boxlab
