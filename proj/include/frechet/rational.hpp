#ifndef FRECHET_RATIONAL_HPP
#define FRECHET_RATIONAL_HPP

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace frechet {

using BigInt = mpz_class;

/**
 * Exact rational number, always held in lowest terms with a positive
 * denominator. Serializes as "num/den" ("3/10", "-1/2") or as a bare
 * integer when the denominator is one.
 */
class Rat {
public:
    Rat() = default;
    Rat(int v) : v_(v) {}  // NOLINT(google-explicit-constructor)
    Rat(long v) : v_(v) {}  // NOLINT(google-explicit-constructor)
    Rat(long long v) : v_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
    explicit Rat(const BigInt& n) : v_(n) {}
    Rat(const BigInt& num, const BigInt& den);
    explicit Rat(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    /// Parses "a/b", "a" or "-a/b"; throws std::invalid_argument.
    static Rat parse(std::string_view text);

    std::string str() const;

    BigInt num() const { return v_.get_num(); }
    BigInt den() const { return v_.get_den(); }
    const mpq_class& raw() const { return v_; }

    int sign() const { return sgn(v_); }
    bool is_zero() const { return sign() == 0; }
    bool is_integer() const { return v_.get_den() == 1; }
    Rat abs() const { return Rat(mpq_class(::abs(v_))); }

    /// Largest integer <= value.
    BigInt floor() const;
    /// Smallest integer >= value.
    BigInt ceil() const;
    double to_double() const { return v_.get_d(); }

    Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
    Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
    Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
    friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.v_)); }

    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rat& a, const Rat& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rat& a, const Rat& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rat& a, const Rat& b) { return a.v_ >= b.v_; }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

private:
    mpq_class v_;
};

using RatVector = std::vector<Rat>;

/// Parses a whitespace or comma separated list of rationals.
RatVector parse_vector(std::string_view text);
std::string to_string(std::span<const Rat> v);

BigInt binomial(unsigned long n, unsigned long k);

/// Dense row-major matrix of rationals.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rat> entries);

    static RatMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rat& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Rat> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    RatVector column(std::size_t c) const;

    /// Rows listed in `rows`, columns listed in `cols`, in the given order.
    RatMatrix submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const;
    RatMatrix select_columns(std::span<const std::size_t> cols) const;
    /// Vertical concatenation.
    RatMatrix stack(const RatMatrix& below) const;

    RatVector operator*(std::span<const Rat> v) const;

    friend bool operator==(const RatMatrix& a, const RatMatrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rat> data_;
};

std::ostream& operator<<(std::ostream& os, const RatMatrix& m);

// Exact elimination. Each row is first scaled to integers, then reduced with
// Bareiss fraction-free elimination; the pivot in each column is the first
// row (top-down) holding a nonzero entry.

std::size_t rank(const RatMatrix& m);

/// Basis of {v : m v = 0}, one vector per free column, in reduced-echelon form:
/// the free coordinate is 1 and the remaining free coordinates are 0.
std::vector<RatVector> null_space(const RatMatrix& m);

/// One solution of m x = b (free variables set to zero), or nullopt when the
/// system is inconsistent.
std::optional<RatVector> solve(const RatMatrix& m, std::span<const Rat> b);

/// The solution of m x = b when it exists and is unique (full column rank).
std::optional<RatVector> solve_unique(const RatMatrix& m, std::span<const Rat> b);

/// Scales v by a positive rational so its entries are coprime integers with a
/// positive first nonzero entry. The zero vector is returned unchanged.
RatVector primitive_integer(std::span<const Rat> v);

}  // namespace frechet

#endif  // FRECHET_RATIONAL_HPP
