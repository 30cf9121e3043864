#ifndef FRECHET_EXTREMAL_SEARCH_HPP
#define FRECHET_EXTREMAL_SEARCH_HPP

#include "frechet/frechet_class.hpp"
#include "frechet/poly_ideal.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace frechet {

/// Remainder coefficients of every monomial of degree >= 2. Column for
/// x_{j1}...x_{jn} is (-(n-1); indicator of x_1; ...; indicator of x_{d-1}).
struct RemainderMatrixB {
    std::vector<Bits> monomials;  // reverse-lexicographic order
    RatMatrix matrix;             // d x (2^(d-1) - d)
};

/// Column of B for one monomial (length d).
RatVector remainder_column(const Bits& alpha);

/// Requires 3 <= d <= 16.
RemainderMatrixB build_B(const FrechetClass& cls);

/// "x1x2", "x1*x2" or "x1 x2" into an exponent vector of `num_vars` variables.
Bits parse_monomial(std::size_t num_vars, std::string_view text);
/// "x1x2".
std::string monomial_name(const Bits& alpha);

struct SearchSpec {
    std::vector<Bits> J;        // monomials of degree >= 2
    std::vector<std::size_t> K;  // rows 2..d of B; row k is variable x_(k-1)

    /// "J=x1x2,x1x3;K=2".
    std::string key() const;
};

/// Checks degrees, row range, duplicates and #J <= #K + 2.
void validate_spec(const SearchSpec& spec, const FrechetClass& cls);

struct SearchResult {
    RatVector coefficients;  // over J; empty for results not built from a spec
    MultilinearPoly polynomial;
    Pmf pmf;
    ExtremalCertificate certificate;
};

/**
 * Kernel of B restricted to rows K and columns J; each generator a (scaled
 * to coprime integers) gives P = sum_j a_j F_j, its type-0 pmf and a rank
 * certificate. Non-extremal candidates are kept and flagged.
 */
std::vector<SearchResult> search(const SearchSpec& spec, const FrechetClass& cls);

/// Type-0 pmf of F_{index_set} (or of -F_{index_set} when `negated`).
SearchResult fundamental_pmf(const std::vector<std::size_t>& index_set, const FrechetClass& cls, bool negated = false);
SearchResult negated_fundamental_pmf(const std::vector<std::size_t>& index_set, const FrechetClass& cls);

/**
 * Walks from `base` along kernel directions (each basis vector, its
 * negation and pairwise differences, plus `extra`) to the boundary of the
 * nonnegative orthant, normalizes, and keeps certified vertices. A
 * nonnegative direction with no boundary contributes its own normalization,
 * and the zero direction contributes `base`. Results are deduplicated and
 * sorted by pmf key. Requires d <= 8.
 */
std::vector<SearchResult> type1k_vertex_search(const Pmf& base, const std::vector<RatVector>& extra = {});

struct SweepOptions {
    std::size_t max_J = 2;
    std::uint64_t start_cursor = 0;
    std::optional<std::uint64_t> limit;  // number of (J, K) pairs to visit
};

/// Visits every admissible (J, K) pair with 1 <= #J <= max_J in a fixed
/// order; the callback receives the pair's ordinal so a run can resume.
/// Returns the cursor just past the last visited pair.
std::uint64_t sweep(const FrechetClass& cls, const SweepOptions& opts,
                    const std::function<void(std::uint64_t, const SearchSpec&, const std::vector<SearchResult>&)>& visit);

}  // namespace frechet

#endif  // FRECHET_EXTREMAL_SEARCH_HPP
