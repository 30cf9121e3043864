#include "frechet/convex_order.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace frechet {

std::vector<std::size_t> SumPmf::support() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < probs.size(); ++k)
        if (!probs[k].is_zero()) out.push_back(k);
    return out;
}

SumPmf sum_pmf(const Pmf& pmf) {
    SumPmf s;
    s.d = pmf.d();
    s.probs.assign(s.d + 1, Rat(0));
    for (const auto& [x, m] : pmf.support()) s.probs[x.count()] += m;
    for (std::size_t k = 0; k <= s.d; ++k) s.mean += Rat(static_cast<long>(k)) * s.probs[k];
    return s;
}

SumPmf make_sum_pmf(RatVector probs) {
    if (probs.size() < 2) throw ValidationError("a sum distribution needs at least two values");
    SumPmf s;
    s.d = probs.size() - 1;
    Rat total;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        if (probs[k].sign() < 0)
            throw ValidationError(Constraint::Negative, k + 1, "P(S = " + std::to_string(k) + ") is negative");
        total += probs[k];
        s.mean += Rat(static_cast<long>(k)) * probs[k];
    }
    if (total != Rat(1)) throw ValidationError(Constraint::Sum, 0, "sum probabilities add to " + total.str());
    s.probs = std::move(probs);
    return s;
}

namespace {

std::int64_t to_int64(const BigInt& v) {
    if (!v.fits_slong_p()) throw std::overflow_error("integer out of range");
    return v.get_si();
}

}  // namespace

std::int64_t j_max(std::size_t d, const Rat& p) {
    const Rat pd = p * Rat(static_cast<long>(d));
    return to_int64(pd.is_integer() ? BigInt(pd.num() - 1) : pd.floor());
}

std::int64_t j_min(std::size_t d, const Rat& p) {
    const Rat pd = p * Rat(static_cast<long>(d));
    return to_int64(pd.is_integer() ? BigInt(pd.num() + 1) : pd.ceil());
}

SumExtremal make_sum_extremal(std::size_t d, const Rat& p, std::int64_t j1, std::int64_t j2) {
    const Rat pd = p * Rat(static_cast<long>(d));
    const auto dd = static_cast<std::int64_t>(d);
    if (j1 < 0 || j2 > dd || j1 > j2) throw ValidationError("two-point law needs 0 <= j1 <= j2 <= d");
    RatVector probs(d + 1);
    if (j1 == j2) {
        if (pd != Rat(static_cast<long>(j1))) throw ValidationError("a point mass must sit at pd");
        probs[static_cast<std::size_t>(j1)] = Rat(1);
    } else {
        const Rat lo(static_cast<long>(j1));
        const Rat hi(static_cast<long>(j2));
        if (!(lo <= pd && pd <= hi)) throw ValidationError("two-point law must straddle pd");
        probs[static_cast<std::size_t>(j1)] = (hi - pd) / (hi - lo);
        probs[static_cast<std::size_t>(j2)] += (pd - lo) / (hi - lo);
    }
    return SumExtremal{j1, j2, make_sum_pmf(std::move(probs))};
}

std::vector<SumExtremal> sum_extremals(std::size_t d, const Rat& p) {
    const std::int64_t lo = j_max(d, p);
    const std::int64_t hi = j_min(d, p);
    std::vector<SumExtremal> out;
    for (std::int64_t j1 = 0; j1 <= lo; ++j1)
        for (std::int64_t j2 = hi; j2 <= static_cast<std::int64_t>(d); ++j2) out.push_back(make_sum_extremal(d, p, j1, j2));
    const Rat pd = p * Rat(static_cast<long>(d));
    if (pd.is_integer()) out.push_back(make_sum_extremal(d, p, to_int64(pd.num()), to_int64(pd.num())));
    return out;
}

Rat stop_loss(const SumPmf& s, const Rat& l) {
    if (l.sign() < 0) throw ValidationError("retention level must be nonnegative");
    Rat total;
    for (std::size_t k = 0; k < s.probs.size(); ++k) {
        if (s.probs[k].is_zero()) continue;
        const Rat excess = Rat(static_cast<long>(k)) - l;
        if (excess.sign() > 0) total += excess * s.probs[k];
    }
    return total;
}

std::vector<Rat> stop_loss_grid(std::size_t d) {
    std::vector<Rat> grid;
    for (std::size_t i = 0; i <= 4 * d; ++i) grid.emplace_back(BigInt(static_cast<unsigned long>(i)), BigInt(4));
    return grid;
}

SumExtremal min_convex_sum(std::size_t d, const Rat& p) {
    const Rat pd = p * Rat(static_cast<long>(d));
    SumExtremal best = pd.is_integer() ? make_sum_extremal(d, p, to_int64(pd.num()), to_int64(pd.num()))
                                       : make_sum_extremal(d, p, j_max(d, p), j_min(d, p));
    const auto grid = stop_loss_grid(d);
    std::vector<Rat> curve;
    for (const Rat& l : grid) curve.push_back(stop_loss(best.pmf, l));
    for (const SumExtremal& other : sum_extremals(d, p))
        for (std::size_t i = 0; i < grid.size(); ++i)
            if (const Rat& l = grid[i]; curve[i] > stop_loss(other.pmf, l))
                throw InternalConsistencyError("S_{" + std::to_string(best.j1) + "," + std::to_string(best.j2) +
                                               "} is not below S_{" + std::to_string(other.j1) + "," +
                                               std::to_string(other.j2) + "} at l = " + l.str());
    return best;
}

Rat crossed_moment_formula(const SumPmf& s, std::size_t tau) {
    Rat total;
    for (std::size_t k = tau; k < s.probs.size(); ++k)
        if (!s.probs[k].is_zero()) total += Rat(binomial(k, tau)) * s.probs[k];
    return total;
}

Rat crossed_moment_sum(const Pmf& pmf, std::size_t tau, bool allow_formula_only, std::uint64_t max_direct_work) {
    const std::size_t d = pmf.d();
    if (tau < 2 || tau > d) throw ValidationError("moment order tau must lie in 2.." + std::to_string(d));
    const Rat formula = crossed_moment_formula(sum_pmf(pmf), tau);

    const BigInt work = binomial(d, tau) * BigInt(static_cast<unsigned long>(pmf.support_size()));
    if (work > BigInt(static_cast<unsigned long>(max_direct_work))) {
        if (allow_formula_only) return formula;
        throw ValidationError("direct crossed-moment walk over C(" + std::to_string(d) + "," + std::to_string(tau) +
                              ") subsets is too large");
    }
    std::vector<std::size_t> idx(tau);
    for (std::size_t i = 0; i < tau; ++i) idx[i] = i;
    Rat direct;
    while (true) {
        Bits subset = Bits::from_positions(d, idx);
        for (const auto& [x, m] : pmf.support())
            if (subset.is_subset_of(x)) direct += m;
        std::size_t i = tau;
        while (i > 0 && idx[i - 1] == d - tau + i - 1) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < tau; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (direct != formula)
        throw InternalConsistencyError("crossed moments of order " + std::to_string(tau) + ": direct " + direct.str() +
                                       " differs from binomial form " + formula.str());
    return direct;
}

Rat mean_second_moment(const SumPmf& s) {
    if (s.d < 2) throw ValidationError("mean second moment needs d >= 2");
    Rat total;
    for (std::size_t k = 2; k <= s.d; ++k) total += Rat(static_cast<long>(k * (k - 1))) * s.probs[k];
    return total / Rat(static_cast<long>(s.d * (s.d - 1)));
}

Rat mean_correlation(const Pmf& pmf) {
    const Rat& p = pmf.cls().p();
    const Rat mu2 = crossed_moment_sum(pmf, 2, true) / Rat(binomial(pmf.d(), 2));
    return (mu2 - p * p) / (p * pmf.cls().q());
}

std::string to_string(MinCxCase c) {
    switch (c) {
        case MinCxCase::NonIntegerLow: return "non-integer-low";
        case MinCxCase::NonIntegerHigh: return "non-integer-high";
        case MinCxCase::Integer: return "integer";
    }
    return "unknown";
}

std::string to_string(MinCxRoute r) {
    return r == MinCxRoute::ClosedForm ? "closed-form" : "cyclic-windows";
}

namespace {

std::set<std::size_t> support_set(const SumPmf& s) {
    auto v = s.support();
    return {v.begin(), v.end()};
}

// Coordinates 1..d listed s times, cut into t consecutive windows; each
// window is a support point with mass 1/t, so every coordinate is one in
// exactly s of the t points.
Pmf cyclic_window_pmf(const FrechetClass& cls) {
    const std::size_t d = cls.d();
    const auto s = static_cast<std::uint64_t>(cls.s());
    const auto t = static_cast<std::uint64_t>(cls.t());
    const std::uint64_t total = s * d;
    const std::uint64_t base = total / t;
    const std::uint64_t big = total - t * base;
    std::map<Bits, Rat> mass;
    std::uint64_t pos = 0;
    const Rat share(BigInt(1), BigInt(static_cast<unsigned long>(t)));
    for (std::uint64_t w = 0; w < t; ++w) {
        const std::uint64_t size = base + (w < big ? 1 : 0);
        Bits x(d);
        for (std::uint64_t i = 0; i < size; ++i, ++pos) {
            const auto coord = static_cast<std::size_t>(pos % d);
            if (x.test(coord)) throw InternalConsistencyError("cyclic window repeats a coordinate");
            x.set(coord);
        }
        mass[x] += share;
    }
    return validate_pmf(cls, std::move(mass));
}

}  // namespace

MinCxConstruction min_convex_bernoulli(const FrechetClass& cls) {
    const std::size_t d = cls.d();
    const std::size_t n = d - 1;
    const Rat pd = cls.pd();
    const std::int64_t a1 = cls.a1();
    const std::int64_t a2 = cls.a2();
    const auto dd = static_cast<std::int64_t>(d);

    MinCxCase kind;
    std::int64_t lead = 0;
    std::int64_t h = 0;
    std::int64_t k = 0;
    std::int64_t size_h = 0;
    std::int64_t size_k = 0;
    std::int64_t j_low = 0;
    std::int64_t j_high = 0;
    if (pd.is_integer()) {
        kind = MinCxCase::Integer;
        const std::int64_t m = to_int64(pd.num());
        lead = dd - m;
        h = a1 + a2;
        k = 0;
        size_h = size_k = m;
        j_low = j_high = m;
    } else {
        const std::int64_t m = j_max(d, cls.p());
        j_low = m;
        j_high = m + 1;
        const std::int64_t k_low = a2 * dd - 2 * a2 * m - a1 * m;
        if (pd + cls.p() < Rat(static_cast<long>(m + 1))) {
            kind = MinCxCase::NonIntegerLow;
            lead = dd - m;
            k = k_low;
        } else {
            kind = MinCxCase::NonIntegerHigh;
            lead = dd - m - 1;
            k = k_low - a2;
        }
        h = a1 + a2 - k;
        size_h = m;
        size_k = m + 1;
    }
    if (h < 0 || k < 0) throw InternalConsistencyError("negative window counts h = " + std::to_string(h) + ", k = " + std::to_string(k));
    if (h * size_h + k * size_k != a2 * lead)
        throw InternalConsistencyError("window sizes do not exhaust the repeated variable list");

    const auto expected_support = [&] {
        std::set<std::size_t> e{static_cast<std::size_t>(j_low), static_cast<std::size_t>(j_high)};
        return e;
    }();

    const bool lead_fits = lead <= static_cast<std::int64_t>(n);
    const bool collides = (h > 0 && size_h == lead) || (k > 0 && size_k == lead);
    if (!lead_fits || collides) {
        Pmf pmf = cyclic_window_pmf(cls);
        if (support_set(sum_pmf(pmf)) != expected_support)
            throw InternalConsistencyError("cyclic windows missed the minimal sum support");
        MultilinearPoly poly = pmf_to_poly(pmf);
        return MinCxConstruction{kind, MinCxRoute::CyclicWindows, h, k, static_cast<std::size_t>(lead), j_low, j_high,
                                 {}, {}, std::move(poly), std::move(pmf)};
    }

    const auto L = static_cast<std::size_t>(lead);
    std::vector<Bits> alphas;
    std::vector<Bits> betas;
    std::size_t pos = 0;
    auto take = [&](std::int64_t size) {
        Bits w(n);
        for (std::int64_t i = 0; i < size; ++i, ++pos) {
            const std::size_t v = pos % L;
            if (w.test(v)) throw InternalConsistencyError("window repeats variable x" + std::to_string(v + 1));
            w.set(v);
        }
        return w;
    };
    for (std::int64_t i = 0; i < h; ++i) alphas.push_back(take(size_h));
    for (std::int64_t i = 0; i < k; ++i) betas.push_back(take(size_k));

    MultilinearPoly poly(n);
    Bits lead_alpha(n);
    for (std::size_t i = 0; i < L; ++i) lead_alpha.set(i);
    poly.add_term(lead_alpha, Rat(static_cast<long>(-a2)));
    for (const Bits& w : alphas) poly.add_term(w, Rat(1));
    for (const Bits& w : betas) poly.add_term(w, Rat(1));
    poly.add_term(Bits(n), Rat(static_cast<long>(-a1)));

    if (!ideal_membership(poly, cls)) throw InternalConsistencyError("minimal polynomial " + poly.str() + " is not in the ideal");
    Pmf pmf = type0_pmf(poly, cls);
    if (support_set(sum_pmf(pmf)) != expected_support)
        throw InternalConsistencyError("type-0 pmf of " + poly.str() + " does not have the minimal sum");
    return MinCxConstruction{kind, MinCxRoute::ClosedForm, h, k, L, j_low, j_high,
                             std::move(alphas), std::move(betas), std::move(poly), std::move(pmf)};
}

Pmf exchangeable_pmf(const FrechetClass& cls, const SumPmf& s) {
    const std::size_t d = cls.d();
    if (d > 20) throw ValidationError("exchangeable pmf is built densely; d <= 20");
    if (s.d != d) throw ValidationError("sum distribution has the wrong dimension");
    std::map<Bits, Rat> mass;
    for (std::uint64_t i = 0; i < cls.num_points(); ++i) {
        Bits x = Bits::from_index(d, i);
        const std::size_t w = x.count();
        if (s.probs[w].is_zero()) continue;
        mass.emplace(std::move(x), s.probs[w] / Rat(binomial(d, w)));
    }
    return validate_pmf(cls, std::move(mass));
}

std::size_t exclusivity_order(const Pmf& pmf) {
    const SumPmf s = sum_pmf(pmf);
    std::size_t top = 0;
    for (std::size_t k = 0; k <= s.d; ++k)
        if (!s.probs[k].is_zero()) top = k;
    return top + 1;
}

bool minimality_feasibility(std::size_t d, const Rat& p, std::size_t m) {
    const Rat pd = p * Rat(static_cast<long>(d));
    return BigInt(static_cast<unsigned long>(m)) > pd.ceil();
}

}  // namespace frechet
