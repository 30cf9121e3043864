#include "frechet/extremal_search.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <set>
#include <stdexcept>

namespace frechet {

RatVector remainder_column(const Bits& alpha) {
    RatVector col(alpha.size() + 1);
    const std::size_t n = alpha.count();
    col[0] = Rat(-static_cast<long>(n) + 1);
    for (std::size_t i : alpha.positions()) col[i + 1] = Rat(1);
    return col;
}

RemainderMatrixB build_B(const FrechetClass& cls) {
    if (cls.d() < 3) throw ValidationError("the remainder matrix needs d >= 3");
    if (cls.d() > 16) throw std::length_error("dense remainder matrix limited to d <= 16");
    const std::size_t n = cls.d() - 1;
    RemainderMatrixB b;
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) {
        Bits alpha = Bits::from_index(n, i);
        if (alpha.count() >= 2) b.monomials.push_back(std::move(alpha));
    }
    b.matrix = RatMatrix(cls.d(), b.monomials.size());
    for (std::size_t j = 0; j < b.monomials.size(); ++j) {
        const RatVector col = remainder_column(b.monomials[j]);
        for (std::size_t r = 0; r < col.size(); ++r) b.matrix(r, j) = col[r];
    }
    return b;
}

Bits parse_monomial(std::size_t num_vars, std::string_view text) {
    Bits alpha(num_vars);
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && (text[pos] == '*' || std::isspace(static_cast<unsigned char>(text[pos])))) ++pos;
    };
    skip();
    if (pos == text.size()) throw std::invalid_argument("empty monomial");
    while (pos < text.size()) {
        if (text[pos] != 'x') throw std::invalid_argument("bad monomial '" + std::string(text) + "'");
        ++pos;
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) throw std::invalid_argument("bad monomial '" + std::string(text) + "'");
        const std::size_t v = std::stoul(std::string(text.substr(start, pos - start)));
        if (v == 0 || v > num_vars)
            throw std::invalid_argument("variable x" + std::to_string(v) + " out of range (x1..x" + std::to_string(num_vars) + ")");
        if (alpha.test(v - 1)) throw std::invalid_argument("variable x" + std::to_string(v) + " repeated in '" + std::string(text) + "'");
        alpha.set(v - 1);
        skip();
    }
    return alpha;
}

std::string monomial_name(const Bits& alpha) {
    if (alpha.none()) return "1";
    std::string s;
    for (std::size_t i : alpha.positions()) s += "x" + std::to_string(i + 1);
    return s;
}

std::string SearchSpec::key() const {
    std::string s = "J=";
    for (std::size_t i = 0; i < J.size(); ++i) s += (i ? "," : "") + monomial_name(J[i]);
    s += ";K=";
    for (std::size_t i = 0; i < K.size(); ++i) s += (i ? "," : "") + std::to_string(K[i]);
    return s;
}

void validate_spec(const SearchSpec& spec, const FrechetClass& cls) {
    const std::size_t n = cls.d() - 1;
    if (spec.J.empty()) throw ValidationError("J must list at least one monomial");
    std::set<Bits> seen;
    for (const Bits& alpha : spec.J) {
        if (alpha.size() != n) throw ValidationError("monomial " + monomial_name(alpha) + " has the wrong variable count");
        if (alpha.count() < 2) throw ValidationError("monomial " + monomial_name(alpha) + " has degree below 2");
        if (!seen.insert(alpha).second) throw ValidationError("monomial " + monomial_name(alpha) + " repeated in J");
    }
    std::set<std::size_t> rows;
    for (std::size_t k : spec.K) {
        if (k < 2 || k > cls.d())
            throw ValidationError("row " + std::to_string(k) + " of K outside 2.." + std::to_string(cls.d()) +
                                  " (row 1 holds the constant and is never annihilated)");
        if (!rows.insert(k).second) throw ValidationError("row " + std::to_string(k) + " repeated in K");
    }
    if (spec.J.size() > spec.K.size() + 2)
        throw ValidationError("#J = " + std::to_string(spec.J.size()) + " exceeds #K + 2 = " + std::to_string(spec.K.size() + 2));
}

namespace {

std::vector<std::size_t> variables(const Bits& alpha) {
    std::vector<std::size_t> out;
    for (std::size_t i : alpha.positions()) out.push_back(i + 1);
    return out;
}

SearchResult certify(RatVector coefficients, MultilinearPoly poly, const FrechetClass& cls) {
    Pmf pmf = type0_pmf(poly, cls);
    ExtremalCertificate cert = is_extremal(pmf);
    return SearchResult{std::move(coefficients), std::move(poly), std::move(pmf), std::move(cert)};
}

}  // namespace

std::vector<SearchResult> search(const SearchSpec& spec, const FrechetClass& cls) {
    validate_spec(spec, cls);
    const std::size_t n = cls.d() - 1;
    RatMatrix sub(spec.K.size(), spec.J.size());
    for (std::size_t j = 0; j < spec.J.size(); ++j) {
        const RatVector col = remainder_column(spec.J[j]);
        for (std::size_t r = 0; r < spec.K.size(); ++r) sub(r, j) = col[spec.K[r] - 1];
    }
    std::vector<SearchResult> out;
    for (const RatVector& generator : null_space(sub)) {
        RatVector a = primitive_integer(generator);
        MultilinearPoly poly(n);
        for (std::size_t j = 0; j < a.size(); ++j)
            if (!a[j].is_zero()) poly += fundamental(variables(spec.J[j]), n) * a[j];
        if (poly.is_zero()) continue;
        if (!ideal_membership(poly, cls))
            throw InternalConsistencyError("combination of fundamental polynomials left the ideal: " + poly.str());
        out.push_back(certify(std::move(a), std::move(poly), cls));
    }
    return out;
}

SearchResult fundamental_pmf(const std::vector<std::size_t>& index_set, const FrechetClass& cls, bool negated) {
    MultilinearPoly poly = fundamental(index_set, cls.d() - 1);
    if (negated) poly = -poly;
    return certify({}, std::move(poly), cls);
}

SearchResult negated_fundamental_pmf(const std::vector<std::size_t>& index_set, const FrechetClass& cls) {
    return fundamental_pmf(index_set, cls, true);
}

std::vector<SearchResult> type1k_vertex_search(const Pmf& base, const std::vector<RatVector>& extra) {
    const FrechetClass& cls = base.cls();
    if (cls.d() > 8) throw ValidationError("kernel-direction search limited to d <= 8");
    const RatVector f = base.dense();
    const std::vector<RatVector> basis = kernel_basis(cls);

    std::vector<RatVector> directions;
    for (const RatVector& v : basis) {
        directions.push_back(v);
        RatVector neg(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) neg[i] = -v[i];
        directions.push_back(std::move(neg));
    }
    for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) {
            if (i == j) continue;
            RatVector diff(f.size());
            for (std::size_t k = 0; k < f.size(); ++k) diff[k] = basis[i][k] - basis[j][k];
            directions.push_back(std::move(diff));
        }
    for (const RatVector& e : extra) {
        if (e.size() != f.size()) throw ValidationError("kernel direction has the wrong length");
        directions.push_back(e);
    }

    const RatMatrix q = build_Q(cls);
    std::map<std::string, SearchResult> found;
    for (const RatVector& e : directions) {
        const RatVector image = q * std::span<const Rat>(e);
        if (!std::all_of(image.begin(), image.end(), [](const Rat& r) { return r.is_zero(); }))
            throw ValidationError("direction is not in the kernel of the polynomial map");

        std::optional<Rat> step;
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (e[i].sign() >= 0) continue;
            const Rat limit = f[i] / -e[i];
            if (!step || limit < *step) step = limit;
        }
        std::map<Bits, Rat> mass;
        const bool zero_direction = std::all_of(e.begin(), e.end(), [](const Rat& r) { return r.is_zero(); });
        for (std::size_t i = 0; i < f.size(); ++i) {
            Rat m;
            if (zero_direction) {
                m = f[i];
            } else if (step) {
                m = f[i] + *step * e[i];
            } else {
                m = e[i];
            }
            if (!m.is_zero()) mass.emplace(Bits::from_index(cls.d(), i), m);
        }
        if (mass.empty() || mass.size() > cls.d() + 1) continue;
        Rat total;
        for (const auto& [x, m] : mass) total += m;
        if (total.sign() <= 0) continue;
        Pmf pmf = normalize_mass(cls, std::move(mass));
        ExtremalCertificate cert = is_extremal(pmf);
        if (!cert.is_extremal) continue;
        std::string key = pmf.key();
        MultilinearPoly poly = pmf_to_poly(pmf);
        found.emplace(std::move(key), SearchResult{{}, std::move(poly), std::move(pmf), std::move(cert)});
    }
    std::vector<SearchResult> out;
    for (auto& [key, r] : found) out.push_back(std::move(r));
    return out;
}

namespace {

bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
    const std::size_t k = idx.size();
    for (std::size_t i = k; i-- > 0;) {
        if (idx[i] < n - k + i) {
            ++idx[i];
            for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
            return true;
        }
    }
    return false;
}

}  // namespace

std::uint64_t sweep(const FrechetClass& cls, const SweepOptions& opts,
                    const std::function<void(std::uint64_t, const SearchSpec&, const std::vector<SearchResult>&)>& visit) {
    if (cls.d() < 3) throw ValidationError("sweeps need d >= 3");
    if (cls.d() > 12) throw ValidationError("sweeps limited to d <= 12");
    const std::size_t n = cls.d() - 1;
    std::vector<Bits> monomials;
    for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) {
        Bits alpha = Bits::from_index(n, i);
        if (alpha.count() >= 2) monomials.push_back(std::move(alpha));
    }
    const std::uint64_t row_masks = std::uint64_t{1} << n;  // subsets of rows 2..d

    std::uint64_t cursor = 0;
    std::uint64_t visited = 0;
    const std::size_t max_J = std::min(opts.max_J, monomials.size());
    for (std::size_t size = 1; size <= max_J; ++size) {
        std::vector<std::size_t> idx(size);
        for (std::size_t i = 0; i < size; ++i) idx[i] = i;
        do {
            for (std::uint64_t mask = 0; mask < row_masks; ++mask) {
                const auto rows = static_cast<std::size_t>(std::popcount(mask));
                if (size > rows + 2) continue;
                if (cursor++ < opts.start_cursor) continue;
                if (opts.limit && visited >= *opts.limit) return cursor - 1;
                SearchSpec spec;
                for (std::size_t i : idx) spec.J.push_back(monomials[i]);
                for (std::size_t r = 0; r < n; ++r)
                    if ((mask >> r) & 1U) spec.K.push_back(r + 2);
                visit(cursor - 1, spec, search(spec, cls));
                ++visited;
            }
        } while (next_combination(idx, monomials.size()));
    }
    return cursor;
}

}  // namespace frechet
