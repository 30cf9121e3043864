#ifndef FRECHET_BITS_HPP
#define FRECHET_BITS_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace frechet {

/**
 * Fixed-length binary vector of arbitrary length.
 *
 * Used both for support points x in {0,1}^d and for square-free monomial
 * exponents alpha in {0,1}^(d-1). Ordering is reverse-lexicographic: the
 * first coordinate varies fastest, so 000 < 100 < 010 < 110 < 001 < ...
 * which is the order of the binary number sum_i x_i 2^i.
 */
class Bits {
public:
    Bits() = default;
    explicit Bits(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

    /// Point number `index` (0-based) in reverse-lexicographic order.
    static Bits from_index(std::size_t size, std::uint64_t index);
    /// Parses "0110"; first character is coordinate 1.
    static Bits parse(std::string_view text);
    /// Ones at the given 0-based positions.
    static Bits from_positions(std::size_t size, const std::vector<std::size_t>& positions);

    std::size_t size() const { return size_; }
    bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1U; }
    void set(std::size_t i, bool value = true);
    std::size_t count() const;
    bool none() const { return count() == 0; }

    /// 0-based reverse-lexicographic index; requires size() <= 63.
    std::uint64_t index() const;
    std::vector<std::size_t> positions() const;

    Bits complement() const;
    /// First `n` coordinates.
    Bits prefix(std::size_t n) const;
    /// This vector with one more coordinate appended.
    Bits extended(bool last) const;

    bool is_subset_of(const Bits& other) const;

    std::string str() const;

    friend bool operator==(const Bits& a, const Bits& b) { return a.size_ == b.size_ && a.words_ == b.words_; }
    friend bool operator!=(const Bits& a, const Bits& b) { return !(a == b); }
    /// Reverse-lexicographic comparison (lengths compared first).
    friend bool operator<(const Bits& a, const Bits& b);

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace frechet

#endif  // FRECHET_BITS_HPP
