#pragma once

#include <cstdint>
#include <cstddef>
#include <string>
#include <vector>

namespace atomnfa {

/// Dynamic bitset with a fixed word order (64-bit words, bit i lives in
/// word i/64 at position i%64). All subset enumeration in the library
/// ascends numerically over indices, so iteration order is deterministic.
class Bits {
public:
    Bits() = default;

    explicit Bits(int size) : size_(size), words_((size + 63) / 64, 0) {}

    static Bits zeros(int size) { return Bits(size); }

    static Bits ones(int size) {
        Bits b(size);
        for (int i = 0; i < size; ++i) b.set(i);
        return b;
    }

    static Bits single(int size, int i) {
        Bits b(size);
        b.set(i);
        return b;
    }

    int size() const { return size_; }

    bool test(int i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }

    void set(int i) { words_[i >> 6] |= std::uint64_t(1) << (i & 63); }

    void reset(int i) { words_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }

    void assign(int i, bool v) { v ? set(i) : reset(i); }

    void flip(int i) { words_[i >> 6] ^= std::uint64_t(1) << (i & 63); }

    bool any() const {
        for (auto w : words_) if (w) return true;
        return false;
    }

    bool none() const { return !any(); }

    int count() const {
        int c = 0;
        for (auto w : words_) c += __builtin_popcountll(w);
        return c;
    }

    Bits& operator|=(const Bits& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
        return *this;
    }

    Bits& operator&=(const Bits& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
        return *this;
    }

    /// Set difference: remove every bit of o.
    Bits& operator-=(const Bits& o) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
        return *this;
    }

    friend Bits operator|(Bits a, const Bits& b) { return a |= b; }
    friend Bits operator&(Bits a, const Bits& b) { return a &= b; }
    friend Bits operator-(Bits a, const Bits& b) { return a -= b; }

    bool operator==(const Bits& o) const {
        return size_ == o.size_ && words_ == o.words_;
    }

    bool operator!=(const Bits& o) const { return !(*this == o); }

    bool is_subset_of(const Bits& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~o.words_[i]) return false;
        return true;
    }

    bool intersects(const Bits& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & o.words_[i]) return true;
        return false;
    }

    /// First set bit at index >= from, or -1.
    int next(int from = 0) const {
        for (int i = from; i < size_; ) {
            std::uint64_t w = words_[i >> 6] >> (i & 63);
            if (w) return i + __builtin_ctzll(w);
            i = ((i >> 6) + 1) << 6;
        }
        return -1;
    }

    template <typename F>
    void for_each(F f) const {
        for (int i = next(0); i >= 0; i = next(i + 1)) f(i);
    }

    std::vector<int> indices() const {
        std::vector<int> v;
        for_each([&](int i) { v.push_back(i); });
        return v;
    }

    /// Bit-pattern order: compare bit 0 first, a clear bit sorts before a
    /// set one (the order of the patterns read as 0/1 strings).
    bool lex_less(const Bits& o) const {
        for (std::size_t i = 0; i < words_.size(); ++i) {
            std::uint64_t d = words_[i] ^ o.words_[i];
            if (d) return (d & -d) & o.words_[i];
        }
        return false;
    }

    std::string to_string01() const {
        std::string s(size_, '0');
        for (int i = 0; i < size_; ++i) if (test(i)) s[i] = '1';
        return s;
    }

    std::uint64_t hash() const {
        std::uint64_t h = 1469598103934665603ull;
        for (auto w : words_) {
            h ^= w;
            h *= 1099511628211ull;
        }
        return h ^ std::uint64_t(size_);
    }

    const std::vector<std::uint64_t>& words() const { return words_; }

private:
    int size_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Canonical order used wherever subsets are listed: size first, then
/// bit-pattern order.
inline bool canonical_less(const Bits& a, const Bits& b) {
    int ca = a.count(), cb = b.count();
    if (ca != cb) return ca < cb;
    return a.lex_less(b);
}

/// Row-major boolean matrix; every row is a Bits of uniform width.
class BitMatrix {
public:
    BitMatrix() = default;

    BitMatrix(int rows, int cols)
        : rows_(rows), cols_(cols), data_(rows, Bits(cols)) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    bool test(int r, int c) const { return data_[r].test(c); }
    void set(int r, int c) { data_[r].set(c); }
    void assign(int r, int c, bool v) { data_[r].assign(c, v); }
    void flip(int r, int c) { data_[r].flip(c); }

    const Bits& row(int r) const { return data_[r]; }
    Bits& row(int r) { return data_[r]; }

    /// Union of rows indexed by x.
    Bits image(const Bits& x) const {
        Bits out(cols_);
        x.for_each([&](int r) { out |= data_[r]; });
        return out;
    }

    BitMatrix transposed() const {
        BitMatrix t(cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            data_[r].for_each([&](int c) { t.set(c, r); });
        return t;
    }

    /// Relation composition (this ; other).
    BitMatrix compose(const BitMatrix& other) const {
        BitMatrix out(rows_, other.cols());
        for (int r = 0; r < rows_; ++r)
            data_[r].for_each([&](int m) { out.row(r) |= other.row(m); });
        return out;
    }

    static BitMatrix identity(int n) {
        BitMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.set(i, i);
        return m;
    }

    bool operator==(const BitMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    bool operator!=(const BitMatrix& o) const { return !(*this == o); }

    std::uint64_t hash() const {
        std::uint64_t h = 14695981039346656037ull;
        for (const auto& r : data_) {
            h ^= r.hash();
            h *= 1099511628211ull;
        }
        return h;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<Bits> data_;
};

}  // namespace atomnfa
