#include "frechet/bits.hpp"

#include <bit>
#include <stdexcept>

namespace frechet {

Bits Bits::from_index(std::size_t size, std::uint64_t index) {
    if (size > 63) throw std::invalid_argument("index construction limited to 63 coordinates");
    Bits b(size);
    if (size && (index >> size) != 0) throw std::out_of_range("index exceeds 2^size");
    if (size) b.words_[0] = index;
    return b;
}

Bits Bits::parse(std::string_view text) {
    Bits b(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '1') {
            b.set(i);
        } else if (text[i] != '0') {
            throw std::invalid_argument("binary vector must contain only 0 and 1: '" + std::string(text) + "'");
        }
    }
    return b;
}

Bits Bits::from_positions(std::size_t size, const std::vector<std::size_t>& positions) {
    Bits b(size);
    for (std::size_t p : positions) {
        if (p >= size) throw std::out_of_range("bit position out of range");
        b.set(p);
    }
    return b;
}

void Bits::set(std::size_t i, bool value) {
    const std::uint64_t mask = std::uint64_t{1} << (i % 64);
    if (value) {
        words_[i / 64] |= mask;
    } else {
        words_[i / 64] &= ~mask;
    }
}

std::size_t Bits::count() const {
    std::size_t n = 0;
    for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

std::uint64_t Bits::index() const {
    if (size_ > 63) throw std::length_error("index() requires at most 63 coordinates");
    return size_ ? words_[0] : 0;
}

std::vector<std::size_t> Bits::positions() const {
    std::vector<std::size_t> out;
    for (std::size_t w = 0; w < words_.size(); ++w) {
        std::uint64_t x = words_[w];
        while (x) {
            out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(x)));
            x &= x - 1;
        }
    }
    return out;
}

Bits Bits::complement() const {
    Bits b(size_);
    for (std::size_t w = 0; w < words_.size(); ++w) b.words_[w] = ~words_[w];
    if (size_ % 64) b.words_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
    return b;
}

Bits Bits::prefix(std::size_t n) const {
    if (n > size_) throw std::out_of_range("prefix longer than vector");
    Bits b(n);
    for (std::size_t w = 0; w < b.words_.size(); ++w) b.words_[w] = words_[w];
    if (n % 64) b.words_.back() &= (std::uint64_t{1} << (n % 64)) - 1;
    return b;
}

Bits Bits::extended(bool last) const {
    Bits b(size_ + 1);
    for (std::size_t w = 0; w < words_.size(); ++w) b.words_[w] = words_[w];
    b.set(size_, last);
    return b;
}

bool Bits::is_subset_of(const Bits& other) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
        if (words_[w] & ~other.words_[w]) return false;
    return true;
}

std::string Bits::str() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i)
        if (test(i)) s[i] = '1';
    return s;
}

bool operator<(const Bits& a, const Bits& b) {
    if (a.size_ != b.size_) return a.size_ < b.size_;
    for (std::size_t w = a.words_.size(); w-- > 0;)
        if (a.words_[w] != b.words_[w]) return a.words_[w] < b.words_[w];
    return false;
}

}  // namespace frechet
