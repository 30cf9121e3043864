#include "frechet/rational.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace frechet {

namespace {

bool parse_integer(std::string_view text, BigInt& out) {
    if (text.empty()) return false;
    std::size_t i = 0;
    if (text[0] == '+' || text[0] == '-') i = 1;
    if (i == text.size()) return false;
    for (std::size_t j = i; j < text.size(); ++j) {
        if (!std::isdigit(static_cast<unsigned char>(text[j]))) return false;
    }
    std::string digits(text.substr(text[0] == '+' ? 1 : 0));
    return out.set_str(digits, 10) == 0;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

}  // namespace

Rat::Rat(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rat Rat::parse(std::string_view text) {
    const std::string_view t = trim(text);
    const auto slash = t.find('/');
    BigInt num;
    BigInt den = 1;
    bool ok = false;
    if (slash == std::string_view::npos) {
        ok = parse_integer(t, num);
    } else {
        const std::string_view d = t.substr(slash + 1);
        ok = parse_integer(t.substr(0, slash), num) && !d.empty() && d[0] != '-' && d[0] != '+' &&
             parse_integer(d, den);
    }
    if (!ok) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    if (den == 0) throw std::invalid_argument("rational with zero denominator '" + std::string(text) + "'");
    return Rat(num, den);
}

std::string Rat::str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

BigInt Rat::floor() const {
    BigInt q;
    mpz_fdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
}

BigInt Rat::ceil() const {
    BigInt q;
    mpz_cdiv_q(q.get_mpz_t(), v_.get_num_mpz_t(), v_.get_den_mpz_t());
    return q;
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) throw std::domain_error("division by zero rational");
    v_ /= o.v_;
    return *this;
}

RatVector parse_vector(std::string_view text) {
    RatVector out;
    std::string token;
    auto flush = [&] {
        if (!token.empty()) out.push_back(Rat::parse(token));
        token.clear();
    };
    for (char ch : text) {
        if (ch == ',' || std::isspace(static_cast<unsigned char>(ch)) || ch == '(' || ch == ')') {
            flush();
        } else {
            token.push_back(ch);
        }
    }
    flush();
    return out;
}

std::string to_string(std::span<const Rat> v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += v[i].str();
    }
    return s + ")";
}

BigInt binomial(unsigned long n, unsigned long k) {
    BigInt r;
    if (k > n) return 0;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rat> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) throw std::invalid_argument("matrix entry count does not match shape");
}

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RatVector RatMatrix::column(std::size_t c) const {
    RatVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

RatMatrix RatMatrix::submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
    RatMatrix m(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = (*this)(rows[i], cols[j]);
    return m;
}

RatMatrix RatMatrix::select_columns(std::span<const std::size_t> cols) const {
    RatMatrix m(rows_, cols.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = (*this)(i, cols[j]);
    return m;
}

RatMatrix RatMatrix::stack(const RatMatrix& below) const {
    if (below.cols_ != cols_ && rows_ != 0 && below.rows_ != 0)
        throw std::invalid_argument("stacked matrices must have equal column counts");
    std::vector<Rat> d = data_;
    d.insert(d.end(), below.data_.begin(), below.data_.end());
    return RatMatrix(rows_ + below.rows_, rows_ ? cols_ : below.cols_, std::move(d));
}

RatVector RatMatrix::operator*(std::span<const Rat> v) const {
    if (v.size() != cols_) throw std::invalid_argument("matrix-vector size mismatch");
    RatVector out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        mpq_class acc;
        for (std::size_t c = 0; c < cols_; ++c) {
            const Rat& a = (*this)(r, c);
            if (!a.is_zero() && !v[c].is_zero()) acc += a.raw() * v[c].raw();
        }
        out[r] = Rat(acc);
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const RatMatrix& m) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m(r, c);
        os << '\n';
    }
    return os;
}

namespace {

struct Echelon {
    std::vector<std::vector<BigInt>> rows;  // integer rows, echelon form
    std::vector<std::size_t> pivots;        // pivot column of row i, i < rank
};

std::vector<std::vector<BigInt>> integer_rows(const RatMatrix& m, std::span<const Rat> extra_column) {
    const bool aug = !extra_column.empty();
    const std::size_t width = m.cols() + (aug ? 1 : 0);
    std::vector<std::vector<BigInt>> rows(m.rows(), std::vector<BigInt>(width));
    for (std::size_t r = 0; r < m.rows(); ++r) {
        BigInt l = 1;
        for (const Rat& x : m.row(r)) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.raw().get_den_mpz_t());
        if (aug) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), extra_column[r].raw().get_den_mpz_t());
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const mpq_class& q = m(r, c).raw();
            rows[r][c] = q.get_num() * (l / q.get_den());
        }
        if (aug) {
            const mpq_class& q = extra_column[r].raw();
            rows[r][m.cols()] = q.get_num() * (l / q.get_den());
        }
    }
    return rows;
}

// Bareiss elimination; pivots are searched only among the first `pivot_cols`
// columns.
Echelon bareiss(std::vector<std::vector<BigInt>> a, std::size_t pivot_cols) {
    Echelon e;
    const std::size_t n = a.size();
    const std::size_t width = n ? a[0].size() : 0;
    BigInt prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < pivot_cols && r < n; ++c) {
        std::size_t p = r;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) continue;
        std::swap(a[p], a[r]);
        const BigInt& piv = a[r][c];
        for (std::size_t i = r + 1; i < n; ++i) {
            const BigInt f = a[i][c];
            for (std::size_t j = c + 1; j < width; ++j) {
                a[i][j] = a[i][j] * piv - f * a[r][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            a[i][c] = 0;
        }
        prev = piv;
        e.pivots.push_back(c);
        ++r;
    }
    e.rows = std::move(a);
    return e;
}

// Reduced row-echelon form over the rationals from an integer echelon form.
std::vector<RatVector> reduce(const Echelon& e) {
    const std::size_t rk = e.pivots.size();
    std::vector<RatVector> rref(rk);
    for (std::size_t i = 0; i < rk; ++i) {
        const auto& row = e.rows[i];
        RatVector out(row.size());
        const BigInt& piv = row[e.pivots[i]];
        for (std::size_t j = 0; j < row.size(); ++j)
            if (row[j] != 0) out[j] = Rat(row[j], piv);
        rref[i] = std::move(out);
    }
    for (std::size_t i = rk; i-- > 0;) {
        const std::size_t pc = e.pivots[i];
        for (std::size_t k = 0; k < i; ++k) {
            const Rat f = rref[k][pc];
            if (f.is_zero()) continue;
            for (std::size_t j = pc; j < rref[k].size(); ++j)
                if (!rref[i][j].is_zero()) rref[k][j] -= f * rref[i][j];
        }
    }
    return rref;
}

}  // namespace

std::size_t rank(const RatMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    return bareiss(integer_rows(m, {}), m.cols()).pivots.size();
}

std::vector<RatVector> null_space(const RatMatrix& m) {
    const std::size_t n = m.cols();
    std::vector<RatVector> basis;
    if (m.rows() == 0) {
        for (std::size_t f = 0; f < n; ++f) {
            RatVector v(n);
            v[f] = 1;
            basis.push_back(std::move(v));
        }
        return basis;
    }
    const Echelon e = bareiss(integer_rows(m, {}), n);
    const auto rref = reduce(e);
    std::vector<bool> is_pivot(n, false);
    for (std::size_t pc : e.pivots) is_pivot[pc] = true;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        RatVector v(n);
        v[f] = 1;
        for (std::size_t i = 0; i < rref.size(); ++i) v[e.pivots[i]] = -rref[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<RatVector> solve(const RatMatrix& m, std::span<const Rat> b) {
    if (b.size() != m.rows()) throw std::invalid_argument("right-hand side length must equal row count");
    const std::size_t n = m.cols();
    RatVector x(n);
    if (m.rows() == 0) return x;
    const Echelon e = bareiss(integer_rows(m, b), n);
    for (std::size_t i = e.pivots.size(); i < e.rows.size(); ++i)
        if (e.rows[i][n] != 0) return std::nullopt;
    const auto rref = reduce(e);
    for (std::size_t i = 0; i < rref.size(); ++i) x[e.pivots[i]] = rref[i][n];
    return x;
}

std::optional<RatVector> solve_unique(const RatMatrix& m, std::span<const Rat> b) {
    if (b.size() != m.rows()) throw std::invalid_argument("right-hand side length must equal row count");
    const std::size_t n = m.cols();
    if (n > m.rows()) return std::nullopt;
    const Echelon e = bareiss(integer_rows(m, b), n);
    if (e.pivots.size() != n) return std::nullopt;
    for (std::size_t i = n; i < e.rows.size(); ++i)
        if (e.rows[i][n] != 0) return std::nullopt;
    const auto rref = reduce(e);
    RatVector x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rref[i][n];
    return x;
}

RatVector primitive_integer(std::span<const Rat> v) {
    BigInt l = 1;
    BigInt g = 0;
    for (const Rat& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.raw().get_den_mpz_t());
    std::vector<BigInt> ints;
    ints.reserve(v.size());
    for (const Rat& x : v) {
        ints.push_back(x.num() * (l / x.den()));
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ints.back().get_mpz_t());
    }
    if (g == 0) return RatVector(v.begin(), v.end());
    const auto lead = std::find_if(ints.begin(), ints.end(), [](const BigInt& z) { return z != 0; });
    if (*lead < 0) g = -g;
    RatVector out;
    out.reserve(v.size());
    for (const BigInt& z : ints) out.emplace_back(BigInt(z / g));
    return out;
}

}  // namespace frechet
