#ifndef FRECHET_CONVEX_ORDER_HPP
#define FRECHET_CONVEX_ORDER_HPP

#include "frechet/frechet_class.hpp"
#include "frechet/poly_ideal.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace frechet {

/// Distribution of S = X_1 + ... + X_d on {0, ..., d}.
struct SumPmf {
    std::size_t d = 0;
    RatVector probs;  // length d + 1
    Rat mean;

    /// Values k with probs[k] > 0.
    std::vector<std::size_t> support() const;
    friend bool operator==(const SumPmf&, const SumPmf&) = default;
};

SumPmf sum_pmf(const Pmf& pmf);

/// Builds a SumPmf from probabilities; throws ValidationError when they are
/// negative or do not sum to one.
SumPmf make_sum_pmf(RatVector probs);

/// j^M: largest integer strictly below pd.
std::int64_t j_max(std::size_t d, const Rat& p);
/// j^m: smallest integer strictly above pd.
std::int64_t j_min(std::size_t d, const Rat& p);

/// Two-point law on {j1, j2} with mean pd; j1 == j2 == pd gives the point mass.
struct SumExtremal {
    std::int64_t j1 = 0;
    std::int64_t j2 = 0;
    SumPmf pmf;
};

SumExtremal make_sum_extremal(std::size_t d, const Rat& p, std::int64_t j1, std::int64_t j2);

/// Every extremal law of the sums: j1 <= j^M, j2 >= j^m, plus the point mass
/// at pd when pd is an integer.
std::vector<SumExtremal> sum_extremals(std::size_t d, const Rat& p);

/// E[(S - l)^+]; l >= 0.
Rat stop_loss(const SumPmf& s, const Rat& l);

/// Quarter-integer retentions 0, 1/4, ..., d.
std::vector<Rat> stop_loss_grid(std::size_t d);

/// The convex-order minimal sum S_{j^M, j^m} (point mass when pd is an
/// integer). Its stop-loss is checked against every sum extremal on the
/// quarter-integer grid; a violation throws InternalConsistencyError.
SumExtremal min_convex_sum(std::size_t d, const Rat& p);

/**
 * Sum over i_1 < ... < i_tau of E[X_i1 ... X_itau], computed by visiting
 * every tau-subset and, independently, as sum_k C(k, tau) p_k. The two must
 * agree (InternalConsistencyError otherwise). When the subset walk would
 * exceed `max_direct_work` support checks it throws ValidationError unless
 * `allow_formula_only` is set, in which case only the closed form is used.
 */
Rat crossed_moment_sum(const Pmf& pmf, std::size_t tau, bool allow_formula_only = false,
                       std::uint64_t max_direct_work = 50'000'000);

/// Closed form sum_k C(k, tau) p_k.
Rat crossed_moment_formula(const SumPmf& s, std::size_t tau);

/// Average E[X_i X_j] over pairs: sum_k k(k-1) p_k / (d(d-1)).
Rat mean_second_moment(const SumPmf& s);

/// Mean of the pairwise correlations, (mean E[X_i X_j] - p^2) / (p q).
Rat mean_correlation(const Pmf& pmf);

enum class MinCxCase { NonIntegerLow, NonIntegerHigh, Integer };
std::string to_string(MinCxCase c);

enum class MinCxRoute {
    ClosedForm,     // lead monomial plus window monomials, type-0 preimage
    CyclicWindows,  // direct support: coordinates 1..d repeated s times, t windows
};
std::string to_string(MinCxRoute r);

struct MinCxConstruction {
    MinCxCase kind = MinCxCase::Integer;
    MinCxRoute route = MinCxRoute::ClosedForm;
    std::int64_t h = 0;
    std::int64_t k = 0;
    std::size_t lead_degree = 0;
    std::int64_t j_low = 0;   // j^M, or pd in the integer case
    std::int64_t j_high = 0;  // j^m, or pd in the integer case
    std::vector<Bits> alphas;  // h windows (closed-form route only)
    std::vector<Bits> betas;   // k windows (closed-form route only)
    MultilinearPoly polynomial;
    Pmf pmf;
};

/**
 * A member of the class whose sum is the convex-order minimum.
 *
 * The closed-form polynomial is used whenever its lead monomial stays
 * distinct from every window monomial and fits in the d - 1 variables.
 * Otherwise (p = 1/2, d = 2 j^M + 1 with a j^m window, pd < 1 with pd + p
 * < 1, ...) the two would cancel or the lead would need d variables, and the
 * support is built directly from cyclic windows instead; the polynomial is
 * then the image of that pmf. Postconditions are asserted on both routes.
 */
MinCxConstruction min_convex_bernoulli(const FrechetClass& cls);

/// f(x) = s(|x|) / C(d, |x|); d <= 20.
Pmf exchangeable_pmf(const FrechetClass& cls, const SumPmf& s);

/// Smallest m >= 1 with P(S >= m) = 0; d + 1 when P(S = d) > 0.
std::size_t exclusivity_order(const Pmf& pmf);

/// Whether some member of F_d(p) is mutually exclusive of order m, i.e.
/// P(S >= m) = 0 is attainable: m > ceil(pd).
bool minimality_feasibility(std::size_t d, const Rat& p, std::size_t m);

}  // namespace frechet

#endif  // FRECHET_CONVEX_ORDER_HPP
