// Independent reference computations for the unit tests. Everything here is
// written directly against GMP rationals and plain loops, sharing no code
// with the library beyond the Rat wrapper used to compare results.
#ifndef FRECHET_TESTS_ORACLE_HPP
#define FRECHET_TESTS_ORACLE_HPP

#include "frechet/rational.hpp"

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

namespace oracle {

using Q = mpq_class;
using QMatrix = std::vector<std::vector<Q>>;

inline std::size_t naive_rank(QMatrix a) {
    std::size_t r = 0;
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            const Q f = a[i][c] / a[r][c];
            for (std::size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    return r;
}

// Unique solution of a square-or-tall system by Gauss-Jordan, or nullopt.
inline std::optional<std::vector<Q>> naive_unique_solution(QMatrix a, std::vector<Q> b) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    for (std::size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) return std::nullopt;
        std::swap(a[piv], a[r]);
        const Q lead = a[r][c];
        for (std::size_t j = c; j <= cols; ++j) a[r][j] /= lead;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            const Q f = a[i][c];
            for (std::size_t j = c; j <= cols; ++j) a[i][j] -= f * a[r][j];
        }
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (a[i][cols] != 0) return std::nullopt;
    std::vector<Q> x(cols);
    for (std::size_t i = 0; i < cols; ++i) x[i] = a[i][cols];
    return x;
}

// Margin constraint rows H_ij = 1 - x_ij - c x_ij for point j = sum x_i 2^i.
inline QMatrix dense_H(std::size_t d, const Q& c) {
    const std::size_t n = std::size_t{1} << d;
    QMatrix h(d, std::vector<Q>(n));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < n; ++j) h[i][j] = ((j >> i) & 1U) ? Q(-c) : Q(1);
    return h;
}

// All vertices of {H f = 0, sum f = 1, f >= 0} as dense vectors, found by
// trying every column subset of size <= d + 1 with the naive solver.
inline std::vector<std::vector<Q>> naive_vertices(std::size_t d, const Q& p) {
    const Q c = (1 - p) / p;
    const QMatrix h = dense_H(d, c);
    const std::size_t n = std::size_t{1} << d;
    std::vector<std::vector<Q>> out;
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
        std::vector<std::size_t> cols;
        for (std::size_t j = 0; j < n; ++j)
            if ((mask >> j) & 1U) cols.push_back(j);
        if (cols.size() > d + 1) continue;
        QMatrix a(d + 1, std::vector<Q>(cols.size()));
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t k = 0; k < cols.size(); ++k) a[i][k] = h[i][cols[k]];
        for (std::size_t k = 0; k < cols.size(); ++k) a[d][k] = 1;
        std::vector<Q> b(d + 1, Q(0));
        b[d] = 1;
        auto x = naive_unique_solution(a, b);
        if (!x) continue;
        bool positive = true;
        for (const Q& v : *x) positive = positive && v > 0;
        if (!positive) continue;
        std::vector<Q> f(n, Q(0));
        for (std::size_t k = 0; k < cols.size(); ++k) f[cols[k]] = (*x)[k];
        out.push_back(std::move(f));
    }
    return out;
}

// Sum over tau-subsets of E[product] by walking every subset bitmask.
inline Q direct_crossed_moment(const std::vector<Q>& f, std::size_t d, std::size_t tau) {
    Q total = 0;
    for (std::uint64_t subset = 0; subset < (std::uint64_t{1} << d); ++subset) {
        if (static_cast<std::size_t>(__builtin_popcountll(subset)) != tau) continue;
        for (std::uint64_t x = 0; x < f.size(); ++x)
            if ((x & subset) == subset) total += f[x];
    }
    return total;
}

// Product law of d independent Bernoulli(p).
inline std::vector<Q> independence(std::size_t d, const Q& p) {
    std::vector<Q> f(std::size_t{1} << d);
    for (std::size_t x = 0; x < f.size(); ++x) {
        Q m = 1;
        for (std::size_t i = 0; i < d; ++i) m *= ((x >> i) & 1U) ? p : Q(1 - p);
        f[x] = m;
    }
    return f;
}

inline std::vector<frechet::Rat> to_rat(const std::vector<Q>& v) {
    std::vector<frechet::Rat> out;
    for (const Q& q : v) out.emplace_back(q);
    return out;
}

// Random member of the class: a random convex combination of vertices.
inline std::vector<Q> random_mixture(const std::vector<std::vector<Q>>& vertices, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> pick(0, vertices.size() - 1);
    std::uniform_int_distribution<int> weight(1, 9);
    const std::size_t parts = 1 + rng() % 4;
    std::vector<Q> f(vertices[0].size(), Q(0));
    Q total = 0;
    for (std::size_t i = 0; i < parts; ++i) {
        const Q w = weight(rng);
        const auto& v = vertices[pick(rng)];
        for (std::size_t k = 0; k < f.size(); ++k) f[k] += w * v[k];
        total += w;
    }
    for (Q& m : f) m /= total;
    return f;
}

}  // namespace oracle

#endif  // FRECHET_TESTS_ORACLE_HPP
