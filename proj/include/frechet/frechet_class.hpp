#ifndef FRECHET_FRECHET_CLASS_HPP
#define FRECHET_FRECHET_CLASS_HPP

#include "frechet/bits.hpp"
#include "frechet/errors.hpp"
#include "frechet/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace frechet {

/**
 * The Frechet class F_d(p): joint laws of d Bernoulli(p) variables, p = s/t.
 *
 * Only 0 < p <= 1/2 is representable; for p > 1/2 model the complemented
 * variables 1 - X_i instead. s/t is reduced to lowest terms on construction.
 */
class FrechetClass {
public:
    FrechetClass(std::size_t d, std::int64_t s, std::int64_t t);

    std::size_t d() const { return d_; }
    std::int64_t s() const { return s_; }
    std::int64_t t() const { return t_; }

    const Rat& p() const { return p_; }
    const Rat& q() const { return q_; }
    /// Odds of X_i = 0, q/p >= 1.
    const Rat& c() const { return c_; }
    /// (2s - t)/s <= 0.
    const Rat& a() const { return a_; }
    /// t - 2s.
    std::int64_t a1() const { return t_ - 2 * s_; }
    /// s.
    std::int64_t a2() const { return s_; }

    Rat pd() const { return p_ * Rat(static_cast<long>(d_)); }

    /// 2^d; throws for d > 63.
    std::uint64_t num_points() const;
    BigInt num_points_big() const;

    std::string str() const;

    friend bool operator==(const FrechetClass& a, const FrechetClass& b) {
        return a.d_ == b.d_ && a.s_ == b.s_ && a.t_ == b.t_;
    }

private:
    std::size_t d_;
    std::int64_t s_;
    std::int64_t t_;
    Rat p_, q_, c_, a_;
};

/// Support point number `index` (1-based, reverse-lexicographic).
Bits support_point(std::size_t d, std::uint64_t index);
/// 1-based reverse-lexicographic index of a support point.
std::uint64_t support_index(const Bits& x);

/// d x 2^d matrix with entry 1 where bit i of point j is 0 and -c where it is 1.
RatMatrix build_H(const FrechetClass& cls);

/**
 * A validated member of F_d(p). Stored sparsely (support points with nonzero
 * mass only) so that large-d constructions remain representable.
 */
class Pmf {
public:
    const FrechetClass& cls() const { return cls_; }
    std::size_t d() const { return cls_.d(); }

    const std::map<Bits, Rat>& support() const { return mass_; }
    std::size_t support_size() const { return mass_.size(); }
    Rat at(const Bits& x) const;
    /// 1-based reverse-lexicographic index.
    Rat at(std::uint64_t index) const;

    /// Length 2^d vector; throws for d > 20.
    RatVector dense() const;
    /// Canonical serialization: the dense vector "v1,v2,..." for d <= 16,
    /// otherwise "bits=value;..." over the support.
    std::string key() const;

    friend bool operator==(const Pmf& a, const Pmf& b) { return a.cls_ == b.cls_ && a.mass_ == b.mass_; }

private:
    Pmf(FrechetClass cls, std::map<Bits, Rat> mass) : cls_(std::move(cls)), mass_(std::move(mass)) {}

    friend Pmf validate_pmf(const FrechetClass&, std::map<Bits, Rat>);

    FrechetClass cls_;
    std::map<Bits, Rat> mass_;
};

/// Throws ValidationError naming the first violated constraint: length,
/// negative entry, total mass, then margins in order.
Pmf validate_pmf(const FrechetClass& cls, std::span<const Rat> values);
Pmf validate_pmf(const FrechetClass& cls, std::map<Bits, Rat> mass);
/// Divides a nonnegative mass vector by its total, then validates.
Pmf normalize_mass(const FrechetClass& cls, std::map<Bits, Rat> mass);

/// Margins E[X_i], i = 1..d, of an arbitrary sparse mass vector.
RatVector margins(std::size_t d, const std::map<Bits, Rat>& mass);

struct ExtremalCertificate {
    bool is_extremal = false;
    BigInt rank_found;
    BigInt rank_required;  // 2^d - 1
};

/**
 * Rank test on H stacked with the unit rows e_j of every zero coordinate.
 *
 * The unit rows span exactly the zero coordinates, so the stacked rank equals
 * (#zeros) + rank(H restricted to the support columns); that identity is what
 * is evaluated here, which keeps the test usable for any d.
 */
ExtremalCertificate is_extremal(const Pmf& pmf);

/// Rank of the literal stacked matrix H // I*; d <= 8 only.
std::size_t stacked_rank(const Pmf& pmf);

struct EnumerationOptions {
    std::size_t max_support = 0;  // 0 means d + 1
    bool force_large_d = false;   // allow d > 5
    unsigned threads = 0;         // 0 means hardware concurrency
};

/**
 * All vertices of F_d(p) by exhaustive search over supports of size at most
 * d + 1. A support yields a vertex when the columns of (H // 1) on it are
 * independent and the unique solution of the restricted system is
 * nonnegative; every candidate is certified with is_extremal. Returned sorted
 * by Pmf::key().
 */
std::vector<Pmf> enumerate_extremals_bruteforce(const FrechetClass& cls, EnumerationOptions opts = {});

/// True when {z >= 0, z != 0 : H_cols z = 0} is nonempty.
bool has_nonnegative_kernel(const FrechetClass& cls, std::span<const std::uint64_t> columns);

/**
 * Fraction of `trials` uniformly random (d+1)-column subsets of H that admit
 * a nonzero nonnegative kernel vector. Deterministic for a given seed.
 */
Rat support_success_experiment(const FrechetClass& cls, std::size_t trials, std::uint64_t seed);

}  // namespace frechet

#endif  // FRECHET_FRECHET_CLASS_HPP
