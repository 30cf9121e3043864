#include "frechet/convex_order.hpp"
#include "frechet/frechet_class.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <numeric>
#include <random>

using namespace frechet;

namespace {

Rat q(long n, long d) { return Rat(BigInt(n), BigInt(d)); }

const FrechetClass& f3() {
    static const FrechetClass cls(3, 2, 5);
    return cls;
}

Pmf d3(std::initializer_list<long> tenths) {
    RatVector v;
    for (long x : tenths) v.push_back(q(x, 10));
    return validate_pmf(f3(), v);
}

// All mass split between 0...0 and 1...1.
Pmf upper_frechet(const FrechetClass& cls) {
    std::map<Bits, Rat> mass;
    mass[Bits(cls.d())] = cls.q();
    mass[Bits(cls.d()).complement()] = cls.p();
    return validate_pmf(cls, mass);
}

std::vector<std::vector<oracle::Q>> dense_vertices(const FrechetClass& cls) {
    std::vector<std::vector<oracle::Q>> out;
    for (const Pmf& v : enumerate_extremals_bruteforce(cls)) {
        std::vector<oracle::Q> row;
        for (const Rat& r : v.dense()) row.push_back(r.raw());
        out.push_back(row);
    }
    return out;
}

// Hand evaluation of E[(S - l)^+].
Rat excess(const RatVector& probs, const Rat& l) {
    Rat total;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        const Rat e = Rat(static_cast<long>(k)) - l;
        if (e > Rat(0)) total += e * probs[k];
    }
    return total;
}

}  // namespace

TEST_CASE("sum distributions") {
    const SumPmf s6 = sum_pmf(d3({0, 2, 2, 2, 4, 0, 0, 0}));
    CHECK(s6.probs == RatVector{0, q(4, 5), q(1, 5), 0});
    CHECK(s6.mean == q(6, 5));
    CHECK(s6.support() == std::vector<std::size_t>{1, 2});
    CHECK(sum_pmf(d3({0, 3, 3, 0, 3, 0, 0, 1})).probs == RatVector{0, q(9, 10), 0, q(1, 10)});
    CHECK_THROWS_AS(make_sum_pmf({q(1, 2), q(1, 3)}), ValidationError);
    CHECK_THROWS_AS(make_sum_pmf({q(3, 2), q(-1, 2)}), ValidationError);
}

TEST_CASE("two-point sum extremals") {
    CHECK(j_max(3, q(2, 5)) == 1);
    CHECK(j_min(3, q(2, 5)) == 2);
    CHECK(j_max(5, q(2, 5)) == 1);
    CHECK(j_min(5, q(2, 5)) == 3);
    CHECK(sum_extremals(3, q(2, 5)).size() == 4);
    CHECK(sum_extremals(5, q(2, 5)).size() == 7);
    const SumExtremal s = make_sum_extremal(5, q(11, 20), 2, 3);
    CHECK(s.pmf.probs == RatVector{0, 0, q(1, 4), q(3, 4), 0, 0});
    CHECK_THROWS_AS(make_sum_extremal(5, q(11, 20), 3, 4), ValidationError);
    CHECK_THROWS_AS(make_sum_extremal(5, q(11, 20), 2, 2), ValidationError);
    for (std::size_t d = 2; d <= 12; ++d)
        for (long t = 2; t <= 9; ++t)
            for (long s = 1; s < t; ++s)
                for (const SumExtremal& e : sum_extremals(d, q(s, t))) {
                    CHECK(e.pmf.mean == q(s, t) * Rat(static_cast<long>(d)));
                    CHECK(e.pmf.support().size() <= 2);
                }
}

TEST_CASE("stop-loss transform") {
    const SumPmf s9 = sum_pmf(d3({0, 3, 3, 0, 3, 0, 0, 1}));
    CHECK(stop_loss(s9, Rat(2)) == q(1, 10));
    CHECK(stop_loss(s9, Rat(0)) == q(6, 5));
    CHECK(stop_loss(s9, q(3, 2)) == q(3, 20));
    CHECK(stop_loss(s9, Rat(3)) == Rat(0));
    CHECK_THROWS_AS(stop_loss(s9, q(-1, 4)), ValidationError);
    const auto grid = stop_loss_grid(3);
    CHECK(grid.size() == 13);
    CHECK(grid[1] == q(1, 4));
    CHECK(grid.back() == Rat(3));
    for (const Rat& l : grid) CHECK(stop_loss(s9, l) == excess(s9.probs, l));
}

TEST_CASE("convex-order minimal sum") {
    const SumExtremal m = min_convex_sum(3, q(2, 5));
    CHECK(m.j1 == 1);
    CHECK(m.j2 == 2);
    CHECK(m.pmf.probs == RatVector{0, q(4, 5), q(1, 5), 0});
    const SumExtremal i = min_convex_sum(5, q(2, 5));
    CHECK(i.j1 == 2);
    CHECK(i.j2 == 2);
    CHECK(i.pmf.probs[2] == Rat(1));
    for (std::size_t d = 2; d <= 30; ++d)
        for (long t = 2; t <= 11; ++t)
            for (long s = 1; s < t; ++s) CHECK_NOTHROW(min_convex_sum(d, q(s, t)));
}

TEST_CASE("crossed moments") {
    const Pmf spread = d3({0, 2, 2, 2, 4, 0, 0, 0});
    CHECK(crossed_moment_sum(spread, 2) == q(1, 5));
    CHECK(crossed_moment_sum(spread, 3) == Rat(0));
    CHECK(crossed_moment_sum(upper_frechet(f3()), 3) == q(2, 5));
    CHECK_THROWS_AS(crossed_moment_sum(spread, 1), ValidationError);
    CHECK_THROWS_AS(crossed_moment_sum(spread, 4), ValidationError);
    CHECK_THROWS_AS(crossed_moment_sum(spread, 2, false, 1), ValidationError);
    CHECK(crossed_moment_sum(spread, 2, true, 1) == q(1, 5));

    std::mt19937_64 rng(5);
    for (std::size_t d = 3; d <= 5; ++d) {
        const FrechetClass cls(d, 2, 5);
        const auto vertices = dense_vertices(cls);
        for (int i = 0; i < 25; ++i) {
            const auto f = oracle::random_mixture(vertices, rng);
            const Pmf pmf = validate_pmf(cls, oracle::to_rat(f));
            for (std::size_t tau = 2; tau <= d; ++tau)
                CHECK(crossed_moment_sum(pmf, tau) == Rat(oracle::direct_crossed_moment(f, d, tau)));
        }
    }
}

TEST_CASE("mean second moment and correlation") {
    CHECK(mean_second_moment(make_sum_extremal(5, q(11, 20), 2, 3).pmf) == q(1, 4));
    CHECK(mean_second_moment(min_convex_sum(3, q(2, 5)).pmf) == q(1, 15));
    const Pmf spread = d3({0, 2, 2, 2, 4, 0, 0, 0});
    CHECK(mean_second_moment(sum_pmf(spread)) == q(1, 15));
    CHECK(mean_correlation(spread) == q(-7, 18));
    CHECK(mean_correlation(upper_frechet(f3())) == Rat(1));
    for (auto [d, s, t] : std::vector<std::tuple<std::size_t, int, int>>{{3, 2, 5}, {6, 1, 3}, {10, 3, 7}}) {
        const FrechetClass cls(d, s, t);
        CHECK(mean_correlation(validate_pmf(cls, oracle::to_rat(oracle::independence(d, cls.p().raw())))) == Rat(0));
    }
}

TEST_CASE("closed form of the minimal mean second moment") {
    for (std::size_t d = 2; d <= 30; ++d)
        for (long t = 2; t <= 11; ++t)
            for (long s = 1; s < t; ++s) {
                const Rat p = q(s, t);
                const Rat pd = p * Rat(static_cast<long>(d));
                const Rat dd(static_cast<long>(d));
                Rat expected;
                if (pd.is_integer()) {
                    expected = pd * (pd - Rat(1)) / (dd * (dd - Rat(1)));
                } else {
                    const Rat jm(static_cast<long>(j_max(d, p)));
                    expected = jm * (Rat(2) * pd - jm - Rat(1)) / (dd * (dd - Rat(1)));
                }
                CHECK(mean_second_moment(min_convex_sum(d, p).pmf) == expected);
            }
}

TEST_CASE("minimal constructions") {
    struct Case {
        std::size_t d;
        int s, t;
        MinCxCase kind;
        std::int64_t h, k;
        const char* poly;
    };
    const std::vector<Case> cases{
        {7, 2, 5, MinCxCase::NonIntegerHigh, 1, 2, "-2*x1*x2*x3*x4 + 1*x1*x2 + 1*x1*x3*x4 + 1*x2*x3*x4 - 1"},
        {9, 2, 5, MinCxCase::NonIntegerHigh, 2, 1, "-2*x1*x2*x3*x4*x5 + 1*x1*x2*x3 + 1*x1*x4*x5 + 1*x2*x3*x4*x5 - 1"},
        {9, 2, 7, MinCxCase::NonIntegerLow, 1, 4,
         "-2*x1*x2*x3*x4*x5*x6*x7 + x1*x2 + x3*x4*x5 + x1*x6*x7 + x2*x3*x4 + x5*x6*x7 - 3"},
        {5, 2, 5, MinCxCase::Integer, 3, 0, "-2*x1*x2*x3 + x1*x2 + x1*x3 + x2*x3 - 1"},
    };
    for (const Case& c : cases) {
        const FrechetClass cls(c.d, c.s, c.t);
        const MinCxConstruction m = min_convex_bernoulli(cls);
        CHECK(m.kind == c.kind);
        CHECK(m.route == MinCxRoute::ClosedForm);
        CHECK(m.h == c.h);
        CHECK(m.k == c.k);
        CHECK(m.polynomial == MultilinearPoly::parse(c.d - 1, c.poly));
        CHECK(sum_pmf(m.pmf) == min_convex_sum(c.d, cls.p()).pmf);
    }
}

TEST_CASE("minimal construction at a large dimension") {
    const FrechetClass cls(216, 2, 5);
    const MinCxConstruction m = min_convex_bernoulli(cls);
    CHECK(m.kind == MinCxCase::NonIntegerLow);
    CHECK(m.h == 1);
    CHECK(m.k == 2);
    CHECK(m.lead_degree == 130);
    auto range = [](std::size_t lo, std::size_t hi) {
        std::vector<std::size_t> v;
        for (std::size_t i = lo; i <= hi; ++i) v.push_back(i);
        return v;
    };
    std::vector<std::size_t> mixed = range(1, 43);
    for (std::size_t i : range(87, 130)) mixed.push_back(i);
    const MultilinearPoly want = MultilinearPoly::monomial(215, range(1, 130), Rat(-2)) +
                                 MultilinearPoly::monomial(215, range(1, 86)) + MultilinearPoly::monomial(215, mixed) +
                                 MultilinearPoly::monomial(215, range(44, 130)) + MultilinearPoly::constant(215, Rat(-1));
    CHECK(m.polynomial == want);
    CHECK(m.pmf.support_size() <= 217);
    CHECK(sum_pmf(m.pmf).support() == std::vector<std::size_t>{86, 87});
    CHECK(margins(216, m.pmf.support()) == RatVector(216, q(2, 5)));
}

TEST_CASE("minimal constructions across classes") {
    for (std::size_t d = 2; d <= 30; ++d)
        for (long t = 2; t <= 11; ++t)
            for (long s = 1; 2 * s <= t; ++s) {
                if (std::gcd(s, t) != 1) continue;
                const FrechetClass cls(d, s, t);
                CAPTURE(cls.str());
                const MinCxConstruction m = min_convex_bernoulli(cls);
                const SumPmf sum = sum_pmf(m.pmf);
                CHECK(sum == min_convex_sum(d, cls.p()).pmf);
                CHECK(m.h >= 0);
                CHECK(m.k >= 0);
                CHECK(mean_second_moment(sum) == mean_second_moment(min_convex_sum(d, cls.p()).pmf));
                if (m.route == MinCxRoute::ClosedForm) CHECK(ideal_membership(m.polynomial, cls));
            }
}

TEST_CASE("fallback route") {
    CHECK(min_convex_bernoulli(FrechetClass(3, 2, 5)).route == MinCxRoute::CyclicWindows);
    CHECK(min_convex_bernoulli(FrechetClass(4, 1, 2)).route == MinCxRoute::CyclicWindows);
    CHECK(min_convex_bernoulli(FrechetClass(3, 1, 3)).route == MinCxRoute::ClosedForm);
    CHECK(to_string(MinCxRoute::CyclicWindows) == "cyclic-windows");
}

TEST_CASE("exclusivity") {
    CHECK(exclusivity_order(d3({0, 2, 2, 2, 4, 0, 0, 0})) == 3);
    CHECK(exclusivity_order(upper_frechet(f3())) == 4);
    // p = 1/5, d = 3: mass 3/5 at 000 and 1/5 at each unit vector.
    const FrechetClass small(3, 1, 5);
    std::map<Bits, Rat> mass{{Bits::parse("000"), q(2, 5)}, {Bits::parse("100"), q(1, 5)},
                             {Bits::parse("010"), q(1, 5)}, {Bits::parse("001"), q(1, 5)}};
    CHECK(exclusivity_order(validate_pmf(small, mass)) == 2);

    CHECK(minimality_feasibility(3, q(2, 5), 3));
    CHECK_FALSE(minimality_feasibility(3, q(2, 5), 2));
    CHECK(minimality_feasibility(5, q(2, 5), 3));
    CHECK_FALSE(minimality_feasibility(5, q(2, 5), 2));
    for (std::size_t d = 2; d <= 12; ++d)
        for (long t = 2; t <= 11; ++t)
            for (long s = 1; 2 * s <= t; ++s) {
                const Rat p = q(s, t);
                bool before = false;
                for (std::size_t m = 1; m <= d + 1; ++m) {
                    const bool now = minimality_feasibility(d, p, m);
                    CHECK((!before || now));
                    before = now;
                }
                // The minimal sum attains the smallest feasible order.
                const std::size_t top = min_convex_sum(d, p).pmf.support().back();
                CHECK(minimality_feasibility(d, p, top + 1));
                CHECK_FALSE(minimality_feasibility(d, p, top));
            }
}

TEST_CASE("exclusivity order bounds every vertex") {
    for (auto [d, s, t] : std::vector<std::tuple<std::size_t, int, int>>{{3, 2, 5}, {4, 1, 3}, {4, 1, 2}}) {
        const FrechetClass cls(d, s, t);
        const std::size_t least = min_convex_sum(d, cls.p()).pmf.support().back() + 1;
        for (const Pmf& v : enumerate_extremals_bruteforce(cls)) {
            const std::size_t order = exclusivity_order(v);
            CHECK(order >= least);
            const SumPmf sum = sum_pmf(v);
            for (std::size_t m = order; m <= d; ++m) CHECK(sum.probs[m].is_zero());
        }
    }
}

TEST_CASE("exchangeable pmf") {
    const SumExtremal m = min_convex_sum(4, q(1, 3));
    const FrechetClass cls(4, 1, 3);
    const Pmf f = exchangeable_pmf(cls, m.pmf);
    CHECK(sum_pmf(f) == m.pmf);
    CHECK(f.at(Bits::parse("1000")) == f.at(Bits::parse("0001")));
    CHECK_THROWS_AS(exchangeable_pmf(cls, min_convex_sum(5, q(1, 3)).pmf), ValidationError);
}
