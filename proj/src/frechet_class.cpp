#include "frechet/frechet_class.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <random>
#include <set>
#include <thread>

namespace frechet {

FrechetClass::FrechetClass(std::size_t d, std::int64_t s, std::int64_t t) : d_(d) {
    if (d < 2) throw ValidationError("dimension d must be at least 2, got " + std::to_string(d));
    if (s <= 0 || t <= 0) throw ValidationError("p = s/t needs positive integers s and t");
    const std::int64_t g = std::gcd(s, t);
    s_ = s / g;
    t_ = t / g;
    if (2 * s_ > t_) {
        throw ValidationError("p = " + std::to_string(s_) + "/" + std::to_string(t_) +
                              " exceeds 1/2; model the complemented variables 1 - X_i, whose margin is " +
                              std::to_string(t_ - s_) + "/" + std::to_string(t_) + " <= 1/2");
    }
    p_ = Rat(BigInt(s_), BigInt(t_));
    q_ = Rat(1) - p_;
    c_ = q_ / p_;
    a_ = Rat(BigInt(2 * s_ - t_), BigInt(s_));
}

std::uint64_t FrechetClass::num_points() const {
    if (d_ > 63) throw std::length_error("2^d does not fit in 64 bits for d = " + std::to_string(d_));
    return std::uint64_t{1} << d_;
}

BigInt FrechetClass::num_points_big() const {
    BigInt r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, d_);
    return r;
}

std::string FrechetClass::str() const {
    return "F_" + std::to_string(d_) + "(" + p_.str() + ")";
}

Bits support_point(std::size_t d, std::uint64_t index) {
    if (index == 0) throw std::out_of_range("support point indices start at 1");
    return Bits::from_index(d, index - 1);
}

std::uint64_t support_index(const Bits& x) { return x.index() + 1; }

RatMatrix build_H(const FrechetClass& cls) {
    const std::size_t d = cls.d();
    if (d > 20) throw std::length_error("dense H limited to d <= 20");
    const std::uint64_t n = cls.num_points();
    RatMatrix h(d, n);
    const Rat minus_c = -cls.c();
    for (std::uint64_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < d; ++i) h(i, j) = ((j >> i) & 1U) ? minus_c : Rat(1);
    return h;
}

Rat Pmf::at(const Bits& x) const {
    auto it = mass_.find(x);
    return it == mass_.end() ? Rat(0) : it->second;
}

Rat Pmf::at(std::uint64_t index) const { return at(support_point(d(), index)); }

RatVector Pmf::dense() const {
    if (d() > 20) throw std::length_error("dense pmf limited to d <= 20");
    RatVector v(cls_.num_points());
    for (const auto& [x, m] : mass_) v[x.index()] = m;
    return v;
}

std::string Pmf::key() const {
    if (d() <= 16) return to_string(dense());
    std::string s;
    for (const auto& [x, m] : mass_) {
        if (!s.empty()) s += ';';
        s += x.str() + "=" + m.str();
    }
    return s;
}

RatVector margins(std::size_t d, const std::map<Bits, Rat>& mass) {
    RatVector out(d);
    for (const auto& [x, m] : mass)
        for (std::size_t i : x.positions()) out[i] += m;
    return out;
}

Pmf validate_pmf(const FrechetClass& cls, std::span<const Rat> values) {
    const std::size_t d = cls.d();
    if (d > 63 || values.size() != cls.num_points()) {
        throw ValidationError(Constraint::Length, 0,
                              "pmf has " + std::to_string(values.size()) + " entries, expected 2^" +
                                  std::to_string(d));
    }
    std::map<Bits, Rat> mass;
    for (std::size_t j = 0; j < values.size(); ++j) {
        if (values[j].sign() < 0) {
            throw ValidationError(Constraint::Negative, j + 1,
                                  "entry " + std::to_string(j + 1) + " is negative (" + values[j].str() + ")");
        }
        if (!values[j].is_zero()) mass.emplace(Bits::from_index(d, j), values[j]);
    }
    return validate_pmf(cls, std::move(mass));
}

Pmf validate_pmf(const FrechetClass& cls, std::map<Bits, Rat> mass) {
    const std::size_t d = cls.d();
    for (const auto& [x, m] : mass) {
        if (x.size() != d) {
            throw ValidationError(Constraint::Length, 0,
                                  "support point " + x.str() + " has length " + std::to_string(x.size()) +
                                      ", expected " + std::to_string(d));
        }
    }
    Rat total;
    for (const auto& [x, m] : mass) {
        if (m.sign() < 0) {
            const std::size_t idx = d <= 63 ? static_cast<std::size_t>(support_index(x)) : 0;
            throw ValidationError(Constraint::Negative, idx, "mass at " + x.str() + " is negative (" + m.str() + ")");
        }
        total += m;
    }
    if (total != Rat(1)) {
        throw ValidationError(Constraint::Sum, 0, "entries sum to " + total.str() + ", expected 1");
    }
    const RatVector marg = margins(d, mass);
    for (std::size_t i = 0; i < d; ++i) {
        if (marg[i] != cls.p()) {
            throw ValidationError(Constraint::Margin, i + 1,
                                  "margin " + std::to_string(i + 1) + " equals " + marg[i].str() + ", expected " +
                                      cls.p().str());
        }
    }
    std::erase_if(mass, [](const auto& kv) { return kv.second.is_zero(); });
    return Pmf(cls, std::move(mass));
}

Pmf normalize_mass(const FrechetClass& cls, std::map<Bits, Rat> mass) {
    std::erase_if(mass, [](const auto& kv) { return kv.second.is_zero(); });
    Rat total;
    for (const auto& [x, m] : mass) total += m;
    if (total.sign() <= 0) throw ValidationError(Constraint::Sum, 0, "cannot normalize a mass vector with total " + total.str());
    for (auto& [x, m] : mass) m /= total;
    return validate_pmf(cls, std::move(mass));
}

namespace {

RatMatrix support_columns(const FrechetClass& cls, const std::vector<Bits>& points) {
    RatMatrix h(cls.d(), points.size());
    const Rat minus_c = -cls.c();
    for (std::size_t j = 0; j < points.size(); ++j)
        for (std::size_t i = 0; i < cls.d(); ++i) h(i, j) = points[j].test(i) ? minus_c : Rat(1);
    return h;
}

}  // namespace

ExtremalCertificate is_extremal(const Pmf& pmf) {
    std::vector<Bits> points;
    points.reserve(pmf.support_size());
    for (const auto& [x, m] : pmf.support()) points.push_back(x);
    const BigInt total = pmf.cls().num_points_big();
    ExtremalCertificate cert;
    cert.rank_found = total - BigInt(static_cast<unsigned long>(points.size())) +
                      BigInt(static_cast<unsigned long>(rank(support_columns(pmf.cls(), points))));
    cert.rank_required = total - 1;
    cert.is_extremal = cert.rank_found == cert.rank_required;
    return cert;
}

std::size_t stacked_rank(const Pmf& pmf) {
    if (pmf.d() > 8) throw std::length_error("stacked rank limited to d <= 8");
    const RatMatrix h = build_H(pmf.cls());
    const RatVector f = pmf.dense();
    std::vector<std::size_t> zeros;
    for (std::size_t j = 0; j < f.size(); ++j)
        if (f[j].is_zero()) zeros.push_back(j);
    RatMatrix unit(zeros.size(), f.size());
    for (std::size_t r = 0; r < zeros.size(); ++r) unit(r, zeros[r]) = Rat(1);
    return rank(h.stack(unit));
}

namespace {

// Restricted systems (H // 1) f_S = e_last over chosen columns. H rows are
// scaled by s so that every entry is an integer: s at zero bits, s - t at
// one bits.
class SubsetSolver {
public:
    explicit SubsetSolver(const FrechetClass& cls) : d_(cls.d()), n_(cls.num_points()) {
        const BigInt one_bit(static_cast<long>(cls.s() - cls.t()));
        const BigInt zero_bit(static_cast<long>(cls.s()));
        columns_.resize(n_);
        for (std::uint64_t j = 0; j < n_; ++j) {
            auto& col = columns_[j];
            col.resize(d_ + 1);
            for (std::size_t i = 0; i < d_; ++i) col[i] = ((j >> i) & 1U) ? one_bit : zero_bit;
            col[d_] = 1;
        }
    }

    std::uint64_t num_points() const { return n_; }

    enum class Outcome { Dependent, Inconsistent, Negative, Vertex };

    // Classifies the column subset; on Vertex, `solution` holds the masses.
    Outcome solve(std::span<const std::uint64_t> cols, RatVector& solution) const {
        const std::size_t rows = d_ + 1;
        const std::size_t k = cols.size();
        if (k > rows) return Outcome::Dependent;
        std::vector<std::vector<BigInt>> a(rows, std::vector<BigInt>(k + 1));
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t c = 0; c < k; ++c) a[r][c] = columns_[cols[c]][r];
            a[r][k] = r == d_ ? 1 : 0;
        }
        BigInt prev = 1;
        for (std::size_t c = 0; c < k; ++c) {
            std::size_t piv = c;
            while (piv < rows && a[piv][c] == 0) ++piv;
            if (piv == rows) return Outcome::Dependent;
            std::swap(a[piv], a[c]);
            for (std::size_t r = c + 1; r < rows; ++r) {
                for (std::size_t j = c + 1; j <= k; ++j) {
                    a[r][j] = a[c][c] * a[r][j] - a[r][c] * a[c][j];
                    mpz_divexact(a[r][j].get_mpz_t(), a[r][j].get_mpz_t(), prev.get_mpz_t());
                }
                a[r][c] = 0;
            }
            prev = a[c][c];
        }
        for (std::size_t r = k; r < rows; ++r)
            if (a[r][k] != 0) return Outcome::Inconsistent;
        solution.assign(k, Rat(0));
        for (std::size_t c = k; c-- > 0;) {
            mpq_class acc(a[c][k]);
            for (std::size_t j = c + 1; j < k; ++j) acc -= mpq_class(a[c][j]) * solution[j].raw();
            acc /= mpq_class(a[c][c]);
            solution[c] = Rat(acc);
            if (solution[c].sign() < 0) return Outcome::Negative;
        }
        return Outcome::Vertex;
    }

    // Nonnegative solution supported inside `cols`, searching all sub-supports.
    bool feasible(std::span<const std::uint64_t> cols) const {
        std::vector<std::uint64_t> chosen;
        RatVector sol;
        return feasible_from(cols, 0, chosen, sol);
    }

private:
    bool feasible_from(std::span<const std::uint64_t> cols, std::size_t start, std::vector<std::uint64_t>& chosen,
                       RatVector& sol) const {
        for (std::size_t i = start; i < cols.size(); ++i) {
            chosen.push_back(cols[i]);
            const Outcome o = solve(chosen, sol);
            bool found = o == Outcome::Vertex;
            if (!found && o != Outcome::Dependent) found = feasible_from(cols, i + 1, chosen, sol);
            chosen.pop_back();
            if (found) return true;
        }
        return false;
    }

    std::size_t d_;
    std::uint64_t n_;
    std::vector<std::vector<BigInt>> columns_;
};

// Visits the subset `chosen` and, when its columns are independent, every
// extension by larger column indices up to `max_support` columns.
void visit(const FrechetClass& cls, const SubsetSolver& solver, std::size_t max_support,
           std::vector<std::uint64_t>& chosen, std::map<std::string, Pmf>& out) {
    RatVector sol;
    const auto outcome = solver.solve(chosen, sol);
    if (outcome == SubsetSolver::Outcome::Dependent) return;
    if (outcome == SubsetSolver::Outcome::Vertex) {
        std::map<Bits, Rat> mass;
        for (std::size_t i = 0; i < chosen.size(); ++i) mass.emplace(Bits::from_index(cls.d(), chosen[i]), sol[i]);
        Pmf pmf = validate_pmf(cls, std::move(mass));
        if (!is_extremal(pmf).is_extremal)
            throw InternalConsistencyError("independent support " + pmf.key() + " failed the rank certificate");
        std::string key = pmf.key();
        out.emplace(std::move(key), std::move(pmf));
    }
    if (chosen.size() >= max_support) return;
    for (std::uint64_t j = chosen.back() + 1; j < solver.num_points(); ++j) {
        chosen.push_back(j);
        visit(cls, solver, max_support, chosen, out);
        chosen.pop_back();
    }
}

}  // namespace

std::vector<Pmf> enumerate_extremals_bruteforce(const FrechetClass& cls, EnumerationOptions opts) {
    if (cls.d() > 5 && !opts.force_large_d) {
        throw ValidationError("brute-force enumeration is limited to d <= 5 (got d = " + std::to_string(cls.d()) +
                              "); pass force_large_d to override");
    }
    if (cls.d() > 20) throw ValidationError("brute-force enumeration cannot index 2^d points for d > 20");
    const std::size_t max_support = opts.max_support ? std::min(opts.max_support, cls.d() + 1) : cls.d() + 1;
    const SubsetSolver solver(cls);
    const std::uint64_t n = solver.num_points();

    unsigned threads = opts.threads ? opts.threads : std::max(1U, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, n));

    std::map<std::string, Pmf> merged;
    std::mutex merge_mutex;
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    auto worker = [&] {
        try {
            std::map<std::string, Pmf> local;
            for (std::uint64_t first = next++; first < n; first = next++) {
                std::vector<std::uint64_t> chosen{first};
                visit(cls, solver, max_support, chosen, local);
            }
            std::lock_guard lock(merge_mutex);
            merged.merge(local);
        } catch (...) {
            std::lock_guard lock(merge_mutex);
            if (!failure) failure = std::current_exception();
        }
    };
    std::vector<std::thread> pool;
    for (unsigned i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);

    std::vector<Pmf> out;
    out.reserve(merged.size());
    for (auto& [key, pmf] : merged) out.push_back(std::move(pmf));
    return out;
}

bool has_nonnegative_kernel(const FrechetClass& cls, std::span<const std::uint64_t> columns) {
    const SubsetSolver solver(cls);
    for (std::uint64_t c : columns)
        if (c >= solver.num_points()) throw std::out_of_range("column index out of range");
    return solver.feasible(columns);
}

Rat support_success_experiment(const FrechetClass& cls, std::size_t trials, std::uint64_t seed) {
    if (cls.d() > 6) throw ValidationError("success-rate experiment is limited to d <= 6");
    if (trials == 0) return Rat(0);
    const SubsetSolver solver(cls);
    const std::uint64_t n = solver.num_points();
    const std::size_t pick = cls.d() + 1;
    std::mt19937_64 rng(seed);
    std::vector<std::uint64_t> deck(n);
    std::iota(deck.begin(), deck.end(), 0);
    std::size_t successes = 0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        for (std::size_t i = 0; i < pick; ++i) {
            std::uniform_int_distribution<std::uint64_t> dist(i, n - 1);
            std::swap(deck[i], deck[dist(rng)]);
        }
        std::vector<std::uint64_t> subset(deck.begin(), deck.begin() + static_cast<std::ptrdiff_t>(pick));
        std::sort(subset.begin(), subset.end());
        if (solver.feasible(subset)) ++successes;
    }
    return Rat(BigInt(static_cast<unsigned long>(successes)), BigInt(static_cast<unsigned long>(trials)));
}

}  // namespace frechet
