#ifndef FRECHET_POLY_IDEAL_HPP
#define FRECHET_POLY_IDEAL_HPP

#include "frechet/bits.hpp"
#include "frechet/frechet_class.hpp"
#include "frechet/rational.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace frechet {

/**
 * Square-free polynomial in variables x_1..x_n with rational coefficients.
 *
 * A monomial is identified by its exponent vector alpha in {0,1}^n; zero
 * coefficients are never stored.
 */
class MultilinearPoly {
public:
    MultilinearPoly() = default;
    explicit MultilinearPoly(std::size_t num_vars) : num_vars_(num_vars) {}

    static MultilinearPoly constant(std::size_t num_vars, const Rat& value);
    /// Product of the listed variables (1-based), times `coeff`.
    static MultilinearPoly monomial(std::size_t num_vars, const std::vector<std::size_t>& vars, const Rat& coeff = Rat(1));

    /**
     * Parses "-2*x1*x2 + 1/5*x3 - 1". Terms may appear in any order, a
     * missing coefficient means 1, and repeated monomials are summed.
     * Throws std::invalid_argument on malformed text, repeated variables
     * inside a term or indices above `num_vars`.
     */
    static MultilinearPoly parse(std::size_t num_vars, std::string_view text);

    std::size_t num_vars() const { return num_vars_; }
    const std::map<Bits, Rat>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    std::size_t degree() const;

    Rat coeff(const Bits& alpha) const;
    void add_term(const Bits& alpha, const Rat& coeff);

    Rat evaluate(std::span<const Rat> point) const;

    /// Terms from the highest monomial down (x1 most significant, so the
    /// constant comes last), every coefficient written out; "0" when empty.
    std::string str() const;

    MultilinearPoly& operator+=(const MultilinearPoly& o);
    MultilinearPoly& operator-=(const MultilinearPoly& o);
    MultilinearPoly& operator*=(const Rat& k);

    friend MultilinearPoly operator+(MultilinearPoly a, const MultilinearPoly& b) { return a += b; }
    friend MultilinearPoly operator-(MultilinearPoly a, const MultilinearPoly& b) { return a -= b; }
    friend MultilinearPoly operator*(MultilinearPoly a, const Rat& k) { return a *= k; }
    friend MultilinearPoly operator*(const Rat& k, MultilinearPoly a) { return a *= k; }
    friend MultilinearPoly operator-(MultilinearPoly a) { return a *= Rat(-1); }

    friend bool operator==(const MultilinearPoly& a, const MultilinearPoly& b) {
        return a.num_vars_ == b.num_vars_ && a.terms_ == b.terms_;
    }

private:
    void check_alpha(const Bits& alpha) const;

    std::size_t num_vars_ = 0;
    std::map<Bits, Rat> terms_;
};

/// Some lambda > 0 with a == lambda * b; both zero counts as proportional.
bool positively_proportional(const MultilinearPoly& a, const MultilinearPoly& b);

/// The d points {1, c_1, ..., c_{d-1}}; c_j is -c at position j, 1 elsewhere.
std::vector<RatVector> vanishing_points(const FrechetClass& cls);

/// 2^(d-1) x 2^d matrix mapping a pmf to the coefficient vector of its
/// polynomial, monomials in reverse-lexicographic order. d <= 16.
RatMatrix build_Q(const FrechetClass& cls);

/// Coefficient vector of `p` in reverse-lexicographic monomial order. d <= 20.
RatVector coefficient_vector(const MultilinearPoly& p);

/// Polynomial image of a mass vector: points with x_d = 0 contribute
/// f(x) x^alpha, points with x_d = 1 contribute f(x) (a - x^(~alpha)).
MultilinearPoly mass_to_poly(const FrechetClass& cls, const std::map<Bits, Rat>& mass);
MultilinearPoly pmf_to_poly(const Pmf& pmf);

/// Throws std::invalid_argument when the point length is not num_vars.
Rat eval_poly(const MultilinearPoly& p, std::span<const Rat> point);

bool ideal_membership(const MultilinearPoly& p, const FrechetClass& cls);

/// Replaces every monomial of degree n >= 2 by sum of its variables - (n-1).
MultilinearPoly remainder(const MultilinearPoly& p);

/// A listed generator of the ideal: either (x_i - 1)(x_i + c) or
/// 1 - x_i - x_k + x_i x_k. Only used for display and vanishing checks.
struct GroebnerGenerator {
    std::size_t i = 0;  // 1-based
    std::size_t k = 0;  // 0 for the quadratic generator in x_i alone
    Rat c;

    bool is_quadratic() const { return k == 0; }
    Rat evaluate(std::span<const Rat> point) const;
    std::string name() const;
    std::string str() const;
};

std::vector<GroebnerGenerator> groebner_generators(const FrechetClass& cls);

/// prod x_j - sum x_j + (n - 1) over the 1-based `index_set`, |index_set| >= 2.
MultilinearPoly fundamental(const std::vector<std::size_t>& index_set, std::size_t num_vars);

/// Unnormalized type-0 preimage of `p`; mass_to_poly of the result equals p.
/// Throws ValidationError for non-members and the zero polynomial.
std::map<Bits, Rat> type0_mass(const MultilinearPoly& p, const FrechetClass& cls);
Pmf type0_pmf(const MultilinearPoly& p, const FrechetClass& cls);

/// The 2^(d-1) kernel vectors (q,0,...,0,p) and (1-2p; p at j; p at 2^d+1-j).
/// Every vector is itself a pmf of the class. d <= 20.
std::vector<RatVector> kernel_basis(const FrechetClass& cls);

enum class PmfType { Type0, Type1K, Type1 };
std::string to_string(PmfType type);

PmfType classify_pmf(const Pmf& pmf);

}  // namespace frechet

#endif  // FRECHET_POLY_IDEAL_HPP
