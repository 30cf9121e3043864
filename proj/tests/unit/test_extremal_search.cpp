#include "frechet/extremal_search.hpp"
#include "frechet/frechet_class.hpp"
#include "frechet/poly_ideal.hpp"

#include <doctest.h>

#include <set>

using namespace frechet;

namespace {

Rat q(long n, long d) { return Rat(BigInt(n), BigInt(d)); }

Bits mono(std::size_t n, const char* text) { return parse_monomial(n, text); }

std::set<std::string> keys(const std::vector<Pmf>& v) {
    std::set<std::string> out;
    for (const Pmf& f : v) out.insert(f.key());
    return out;
}

}  // namespace

TEST_CASE("remainder matrix") {
    const FrechetClass cls(4, 2, 5);
    const RemainderMatrixB b = build_B(cls);
    REQUIRE(b.monomials.size() == 4);
    CHECK(monomial_name(b.monomials[0]) == "x1x2");
    CHECK(monomial_name(b.monomials[1]) == "x1x3");
    CHECK(monomial_name(b.monomials[2]) == "x2x3");
    CHECK(monomial_name(b.monomials[3]) == "x1x2x3");
    const RatMatrix want(4, 4,
                         {Rat(-1), Rat(-1), Rat(-1), Rat(-2),
                          Rat(1),  Rat(1),  Rat(0),  Rat(1),
                          Rat(1),  Rat(0),  Rat(1),  Rat(1),
                          Rat(0),  Rat(1),  Rat(1),  Rat(1)});
    CHECK(b.matrix == want);
    for (std::size_t d = 3; d <= 9; ++d) {
        const RemainderMatrixB bd = build_B(FrechetClass(d, 1, 3));
        CHECK(bd.matrix.rows() == d);
        CHECK(bd.matrix.cols() == (std::size_t{1} << (d - 1)) - d);
    }
    CHECK_THROWS_AS(build_B(FrechetClass(2, 1, 3)), ValidationError);
}

TEST_CASE("remainder columns reproduce remainders") {
    const std::size_t n = 5;
    for (std::uint64_t i = 0; i < (1U << n); ++i) {
        const Bits alpha = Bits::from_index(n, i);
        if (alpha.count() < 2) continue;
        const RatVector col = remainder_column(alpha);
        MultilinearPoly m(n);
        m.add_term(alpha, Rat(1));
        const MultilinearPoly r = remainder(m);
        CHECK(col[0] == r.coeff(Bits(n)));
        for (std::size_t j = 0; j < n; ++j) CHECK(col[j + 1] == r.coeff(Bits::from_positions(n, {j})));
    }
}

TEST_CASE("monomial names") {
    CHECK(monomial_name(mono(3, "x1x3")) == "x1x3");
    CHECK(mono(3, "x1*x3") == mono(3, "x1x3"));
    CHECK_THROWS_AS(mono(3, "x1x4"), std::invalid_argument);
    CHECK_THROWS_AS(mono(3, "x1x1"), std::invalid_argument);
    CHECK_THROWS_AS(mono(3, "y2"), std::invalid_argument);
}

TEST_CASE("spec validation") {
    const FrechetClass cls(4, 2, 5);
    auto spec = [](std::vector<Bits> J, std::vector<std::size_t> K) { return SearchSpec{std::move(J), std::move(K)}; };
    CHECK_NOTHROW(validate_spec(spec({mono(3, "x1x2")}, {}), cls));
    CHECK_THROWS_AS(validate_spec(spec({}, {2}), cls), ValidationError);
    CHECK_THROWS_AS(validate_spec(spec({mono(3, "x1")}, {}), cls), ValidationError);
    CHECK_THROWS_AS(validate_spec(spec({mono(3, "x1x2"), mono(3, "x1x2")}, {}), cls), ValidationError);
    CHECK_THROWS_AS(validate_spec(spec({mono(3, "x1x2")}, {1}), cls), ValidationError);
    CHECK_THROWS_AS(validate_spec(spec({mono(3, "x1x2")}, {5}), cls), ValidationError);
    CHECK_THROWS_AS(validate_spec(spec({mono(3, "x1x2")}, {2, 2}), cls), ValidationError);
    CHECK_THROWS_AS(validate_spec(spec({mono(3, "x1x2"), mono(3, "x1x3"), mono(3, "x2x3")}, {}), cls), ValidationError);
    CHECK(spec({mono(3, "x1x2"), mono(3, "x1x3")}, {2}).key() == "J=x1x2,x1x3;K=2");
}

TEST_CASE("search with two monomials and one annihilated row") {
    const FrechetClass cls(4, 2, 5);
    const auto results = search(SearchSpec{{mono(3, "x1x2"), mono(3, "x1x3")}, {2}}, cls);
    REQUIRE(results.size() == 1);
    const SearchResult& r = results[0];
    CHECK(r.coefficients == RatVector{Rat(1), Rat(-1)});
    CHECK(r.polynomial == MultilinearPoly::parse(3, "x1*x2 - x1*x3 - x2 + x3"));
    RatVector want(16);
    for (std::size_t i : {1, 4, 5, 11, 14}) want[i - 1] = q(1, 5);
    CHECK(r.pmf.dense() == want);
    CHECK(r.certificate.is_extremal);
    CHECK(stacked_rank(r.pmf) == 15);
    // The sign pattern x2 - x3 is not in the ideal.
    CHECK_FALSE(ideal_membership(MultilinearPoly::parse(3, "x1*x2 - x1*x3 + x2 - x3"), cls));
}

TEST_CASE("one monomial and no rows gives the fundamental polynomial") {
    const FrechetClass cls(5, 1, 3);
    const auto results = search(SearchSpec{{mono(4, "x1x2x4")}, {}}, cls);
    REQUIRE(results.size() == 1);
    CHECK(results[0].polynomial == fundamental({1, 2, 4}, 4));
    CHECK(results[0].pmf == fundamental_pmf({1, 2, 4}, cls).pmf);
}

TEST_CASE("annihilated rows leave no mass on the matching points") {
    const FrechetClass cls(5, 2, 5);
    std::size_t checked = 0;
    sweep(cls, SweepOptions{2, 0, std::nullopt}, [&](std::uint64_t, const SearchSpec& spec, const std::vector<SearchResult>& rs) {
        for (const SearchResult& r : rs) {
            for (std::size_t k : spec.K) {
                const Bits e = Bits::from_positions(4, {k - 2});
                CHECK(r.polynomial.coeff(e).is_zero());
                CHECK(r.pmf.at(e.extended(false)).is_zero());
                CHECK(r.pmf.at(e.complement().extended(true)).is_zero());
            }
            ++checked;
        }
    });
    CHECK(checked > 0);
}

TEST_CASE("sweep results are vertices found by the enumeration") {
    for (auto [s, t] : std::vector<std::pair<int, int>>{{2, 5}, {1, 3}, {1, 2}}) {
        const FrechetClass cls(4, s, t);
        const std::set<std::string> vertices = keys(enumerate_extremals_bruteforce(cls));
        std::set<std::string> extremal_found;
        sweep(cls, SweepOptions{4, 0, std::nullopt}, [&](std::uint64_t, const SearchSpec&, const std::vector<SearchResult>& rs) {
            for (const SearchResult& r : rs) {
                CHECK(r.certificate.is_extremal == (stacked_rank(r.pmf) == 15));
                if (r.certificate.is_extremal) extremal_found.insert(r.pmf.key());
            }
        });
        CHECK_FALSE(extremal_found.empty());
        for (const std::string& k : extremal_found) CHECK(vertices.count(k) == 1);
    }
}

TEST_CASE("fundamental pmfs") {
    const FrechetClass cls(3, 2, 5);
    CHECK(fundamental_pmf({1, 2}, cls).pmf.dense() ==
          RatVector{q(2, 5), 0, 0, q(1, 5), 0, q(1, 5), q(1, 5), 0});
    CHECK(negated_fundamental_pmf({1, 2}, cls).pmf.dense() ==
          RatVector{0, q(3, 10), q(3, 10), 0, q(3, 10), 0, 0, q(1, 10)});
    for (std::size_t d = 3; d <= 10; ++d) {
        const FrechetClass c(d, 2, 7);
        std::vector<std::size_t> all;
        for (std::size_t i = 1; i < d; ++i) all.push_back(i);
        CHECK(fundamental_pmf(all, c).certificate.is_extremal);
        CHECK(negated_fundamental_pmf({1, d - 1}, c).certificate.is_extremal);
    }
}

TEST_CASE("kernel-direction search from a type-0 vertex") {
    const FrechetClass cls(3, 2, 5);
    const Pmf base = fundamental_pmf({1, 2}, cls).pmf;
    const auto results = type1k_vertex_search(base);
    const std::set<std::string> vertices = keys(enumerate_extremals_bruteforce(cls));
    std::set<std::string> found;
    for (const SearchResult& r : results) {
        CHECK(r.certificate.is_extremal);
        CHECK(vertices.count(r.pmf.key()) == 1);
        found.insert(r.pmf.key());
    }
    CHECK(found.size() == results.size());
    CHECK(found.count(base.key()) == 1);
    CHECK(results.size() == 5);
    std::size_t kernel_members = 0;
    for (const SearchResult& r : results)
        if (classify_pmf(r.pmf) == PmfType::Type1K) ++kernel_members;
    CHECK(kernel_members == 4);

    CHECK(type1k_vertex_search(base, {RatVector(8)}).size() == results.size());
    RatVector bad(8);
    bad[1] = Rat(1);
    CHECK_THROWS_AS(type1k_vertex_search(base, {bad}), ValidationError);
    CHECK_THROWS_AS(type1k_vertex_search(base, {RatVector(4)}), ValidationError);
}

TEST_CASE("sweeps are deterministic and resumable") {
    const FrechetClass cls(5, 1, 3);
    std::vector<std::string> full;
    const std::uint64_t end = sweep(cls, SweepOptions{2, 0, std::nullopt},
                                    [&](std::uint64_t c, const SearchSpec& sp, const std::vector<SearchResult>& rs) {
                                        for (const SearchResult& r : rs) full.push_back(std::to_string(c) + sp.key() + r.pmf.key());
                                    });
    std::vector<std::string> again;
    sweep(cls, SweepOptions{2, 0, std::nullopt}, [&](std::uint64_t c, const SearchSpec& sp, const std::vector<SearchResult>& rs) {
        for (const SearchResult& r : rs) again.push_back(std::to_string(c) + sp.key() + r.pmf.key());
    });
    CHECK(full == again);

    std::vector<std::string> pieces;
    std::uint64_t cursor = 0;
    while (cursor < end) {
        cursor = sweep(cls, SweepOptions{2, cursor, 7}, [&](std::uint64_t c, const SearchSpec& sp, const std::vector<SearchResult>& rs) {
            for (const SearchResult& r : rs) pieces.push_back(std::to_string(c) + sp.key() + r.pmf.key());
        });
    }
    CHECK(pieces == full);
    CHECK(sweep(cls, SweepOptions{2, end, std::nullopt}, [](auto, const auto&, const auto&) {}) == end);
}
