#include "frechet/poly_ideal.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace frechet {

namespace {

// True when alpha comes before beta in the printed order: the first
// coordinate where they differ is 1 in alpha.
bool printed_before(const Bits& alpha, const Bits& beta) {
    const auto pa = alpha.positions();
    const auto pb = beta.positions();
    for (std::size_t i = 0; i < pa.size() && i < pb.size(); ++i)
        if (pa[i] != pb[i]) return pa[i] < pb[i];
    return pa.size() > pb.size();
}

std::string monomial_text(const Bits& alpha) {
    std::string s;
    for (std::size_t i : alpha.positions()) {
        if (!s.empty()) s += '*';
        s += 'x' + std::to_string(i + 1);
    }
    return s;
}

}  // namespace

MultilinearPoly MultilinearPoly::constant(std::size_t num_vars, const Rat& value) {
    MultilinearPoly p(num_vars);
    p.add_term(Bits(num_vars), value);
    return p;
}

MultilinearPoly MultilinearPoly::monomial(std::size_t num_vars, const std::vector<std::size_t>& vars, const Rat& coeff) {
    Bits alpha(num_vars);
    for (std::size_t v : vars) {
        if (v == 0 || v > num_vars) throw std::invalid_argument("variable x" + std::to_string(v) + " out of range");
        if (alpha.test(v - 1)) throw std::invalid_argument("variable x" + std::to_string(v) + " repeated in a monomial");
        alpha.set(v - 1);
    }
    MultilinearPoly p(num_vars);
    p.add_term(alpha, coeff);
    return p;
}

MultilinearPoly MultilinearPoly::parse(std::size_t num_vars, std::string_view text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) throw std::invalid_argument("empty polynomial");

    MultilinearPoly out(num_vars);
    std::size_t pos = 0;
    while (pos < s.size()) {
        bool negative = false;
        if (s[pos] == '+' || s[pos] == '-') {
            negative = s[pos] == '-';
            ++pos;
        } else if (pos != 0) {
            throw std::invalid_argument("expected '+' or '-' in polynomial '" + std::string(text) + "'");
        }
        std::size_t end = s.find_first_of("+-", pos);
        if (end == std::string::npos) end = s.size();
        const std::string body = s.substr(pos, end - pos);
        if (body.empty()) throw std::invalid_argument("empty term in polynomial '" + std::string(text) + "'");

        Rat coeff(negative ? -1 : 1);
        Bits alpha(num_vars);
        std::size_t start = 0;
        while (start <= body.size()) {
            std::size_t star = body.find('*', start);
            if (star == std::string::npos) star = body.size();
            const std::string factor = body.substr(start, star - start);
            if (factor.empty()) throw std::invalid_argument("empty factor in term '" + body + "'");
            if (factor[0] == 'x') {
                const std::string digits = factor.substr(1);
                if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); }))
                    throw std::invalid_argument("bad variable '" + factor + "'");
                const std::size_t v = std::stoul(digits);
                if (v == 0 || v > num_vars)
                    throw std::invalid_argument("variable " + factor + " out of range (x1..x" + std::to_string(num_vars) + ")");
                if (alpha.test(v - 1)) throw std::invalid_argument("variable " + factor + " repeated in term '" + body + "'");
                alpha.set(v - 1);
            } else {
                coeff *= Rat::parse(factor);
            }
            start = star + 1;
        }
        out.add_term(alpha, coeff);
        pos = end;
    }
    return out;
}

std::size_t MultilinearPoly::degree() const {
    std::size_t deg = 0;
    for (const auto& [alpha, c] : terms_) deg = std::max(deg, alpha.count());
    return deg;
}

void MultilinearPoly::check_alpha(const Bits& alpha) const {
    if (alpha.size() != num_vars_)
        throw std::invalid_argument("monomial has " + std::to_string(alpha.size()) + " variables, expected " +
                                    std::to_string(num_vars_));
}

Rat MultilinearPoly::coeff(const Bits& alpha) const {
    auto it = terms_.find(alpha);
    return it == terms_.end() ? Rat(0) : it->second;
}

void MultilinearPoly::add_term(const Bits& alpha, const Rat& coeff) {
    check_alpha(alpha);
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.emplace(alpha, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Rat MultilinearPoly::evaluate(std::span<const Rat> point) const {
    if (point.size() != num_vars_)
        throw std::invalid_argument("point has " + std::to_string(point.size()) + " coordinates, expected " +
                                    std::to_string(num_vars_));
    Rat total;
    for (const auto& [alpha, c] : terms_) {
        Rat term = c;
        for (std::size_t i : alpha.positions()) term *= point[i];
        total += term;
    }
    return total;
}

std::string MultilinearPoly::str() const {
    if (terms_.empty()) return "0";
    std::vector<const std::pair<const Bits, Rat>*> order;
    for (const auto& kv : terms_) order.push_back(&kv);
    std::sort(order.begin(), order.end(), [](auto* a, auto* b) { return printed_before(a->first, b->first); });
    std::string s;
    for (const auto* kv : order) {
        const Rat& c = kv->second;
        if (s.empty()) {
            if (c.sign() < 0) s += '-';
        } else {
            s += c.sign() < 0 ? " - " : " + ";
        }
        s += c.abs().str();
        if (!kv->first.none()) s += '*' + monomial_text(kv->first);
    }
    return s;
}

MultilinearPoly& MultilinearPoly::operator+=(const MultilinearPoly& o) {
    if (o.num_vars_ != num_vars_) throw std::invalid_argument("adding polynomials in different variable counts");
    for (const auto& [alpha, c] : o.terms_) add_term(alpha, c);
    return *this;
}

MultilinearPoly& MultilinearPoly::operator-=(const MultilinearPoly& o) {
    if (o.num_vars_ != num_vars_) throw std::invalid_argument("subtracting polynomials in different variable counts");
    for (const auto& [alpha, c] : o.terms_) add_term(alpha, -c);
    return *this;
}

MultilinearPoly& MultilinearPoly::operator*=(const Rat& k) {
    if (k.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [alpha, c] : terms_) c *= k;
    return *this;
}

bool positively_proportional(const MultilinearPoly& a, const MultilinearPoly& b) {
    if (a.num_vars() != b.num_vars() || a.size() != b.size()) return false;
    if (a.is_zero()) return true;
    const Rat lambda = a.terms().begin()->second / b.coeff(a.terms().begin()->first);
    if (lambda.sign() <= 0) return false;
    return a == b * lambda;
}

std::vector<RatVector> vanishing_points(const FrechetClass& cls) {
    const std::size_t n = cls.d() - 1;
    std::vector<RatVector> pts;
    pts.emplace_back(n, Rat(1));
    for (std::size_t j = 0; j < n; ++j) {
        RatVector v(n, Rat(1));
        v[j] = -cls.c();
        pts.push_back(std::move(v));
    }
    return pts;
}

RatMatrix build_Q(const FrechetClass& cls) {
    if (cls.d() > 16) throw std::length_error("dense Q limited to d <= 16");
    const std::uint64_t half = cls.num_points() / 2;
    RatMatrix q(half, 2 * half);
    for (std::uint64_t i = 0; i < half; ++i) {
        q(i, i) = Rat(1);
        q(i, 2 * half - 1 - i) = Rat(-1);
    }
    for (std::uint64_t j = half; j < 2 * half; ++j) q(0, j) += cls.a();
    return q;
}

RatVector coefficient_vector(const MultilinearPoly& p) {
    if (p.num_vars() > 19) throw std::length_error("dense coefficient vector limited to 19 variables");
    RatVector v(std::size_t{1} << p.num_vars());
    for (const auto& [alpha, c] : p.terms()) v[alpha.index()] = c;
    return v;
}

MultilinearPoly mass_to_poly(const FrechetClass& cls, const std::map<Bits, Rat>& mass) {
    const std::size_t n = cls.d() - 1;
    MultilinearPoly p(n);
    Rat constant;
    for (const auto& [x, m] : mass) {
        if (x.size() != cls.d()) throw std::invalid_argument("support point has the wrong length");
        const Bits alpha = x.prefix(n);
        if (!x.test(n)) {
            p.add_term(alpha, m);
        } else {
            p.add_term(alpha.complement(), -m);
            constant += cls.a() * m;
        }
    }
    p.add_term(Bits(n), constant);
    return p;
}

MultilinearPoly pmf_to_poly(const Pmf& pmf) { return mass_to_poly(pmf.cls(), pmf.support()); }

Rat eval_poly(const MultilinearPoly& p, std::span<const Rat> point) { return p.evaluate(point); }

bool ideal_membership(const MultilinearPoly& p, const FrechetClass& cls) {
    if (p.num_vars() != cls.d() - 1) return false;
    // Evaluation at c_j only differs from evaluation at 1 on monomials
    // containing x_j, which lets all d points share one pass.
    Rat at_ones;
    RatVector with_j(p.num_vars());
    for (const auto& [alpha, c] : p.terms()) {
        at_ones += c;
        for (std::size_t j : alpha.positions()) with_j[j] += c;
    }
    if (!at_ones.is_zero()) return false;
    const Rat factor = -cls.c() - Rat(1);
    for (const Rat& w : with_j)
        if (!(at_ones + factor * w).is_zero()) return false;
    return true;
}

MultilinearPoly remainder(const MultilinearPoly& p) {
    MultilinearPoly r(p.num_vars());
    for (const auto& [alpha, c] : p.terms()) {
        const std::size_t n = alpha.count();
        if (n < 2) {
            r.add_term(alpha, c);
            continue;
        }
        for (std::size_t i : alpha.positions()) r.add_term(Bits::from_positions(p.num_vars(), {i}), c);
        r.add_term(Bits(p.num_vars()), -c * Rat(static_cast<long>(n - 1)));
    }
    return r;
}

Rat GroebnerGenerator::evaluate(std::span<const Rat> point) const {
    const Rat& xi = point[i - 1];
    if (is_quadratic()) return (xi - Rat(1)) * (xi + c);
    const Rat& xk = point[k - 1];
    return Rat(1) - xi - xk + xi * xk;
}

std::string GroebnerGenerator::name() const {
    return is_quadratic() ? "G_" + std::to_string(i) : "G_" + std::to_string(i) + "," + std::to_string(k);
}

std::string GroebnerGenerator::str() const {
    const std::string xi = "x" + std::to_string(i);
    if (!is_quadratic()) {
        const std::string xk = "x" + std::to_string(k);
        return "1 - " + xi + " - " + xk + " + " + xi + "*" + xk;
    }
    const Rat lin = c - Rat(1);
    std::string s = xi + "^2";
    if (!lin.is_zero()) s += (lin.sign() < 0 ? " - " : " + ") + lin.abs().str() + "*" + xi;
    return s + " - " + c.str();
}

std::vector<GroebnerGenerator> groebner_generators(const FrechetClass& cls) {
    const std::size_t n = cls.d() - 1;
    std::vector<GroebnerGenerator> out;
    for (std::size_t i = 1; i <= n; ++i) out.push_back({i, 0, cls.c()});
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t k = i + 1; k <= n; ++k) out.push_back({i, k, cls.c()});
    return out;
}

MultilinearPoly fundamental(const std::vector<std::size_t>& index_set, std::size_t num_vars) {
    if (index_set.size() < 2) throw std::invalid_argument("fundamental polynomials need at least two indices");
    MultilinearPoly p = MultilinearPoly::monomial(num_vars, index_set);
    for (std::size_t j : index_set) p.add_term(Bits::from_positions(num_vars, {j - 1}), Rat(-1));
    p.add_term(Bits(num_vars), Rat(static_cast<long>(index_set.size() - 1)));
    return p;
}

std::map<Bits, Rat> type0_mass(const MultilinearPoly& p, const FrechetClass& cls) {
    const std::size_t n = cls.d() - 1;
    if (p.num_vars() != n)
        throw ValidationError("polynomial has " + std::to_string(p.num_vars()) + " variables, expected " + std::to_string(n));
    if (p.is_zero())
        throw ValidationError("the zero polynomial has no type-0 preimage; its preimages are the kernel pmfs");
    if (!ideal_membership(p, cls))
        throw ValidationError("polynomial " + p.str() + " does not vanish on the points of the class");

    std::map<Bits, Rat> mass;
    Rat negative_sum;
    for (const auto& [alpha, c] : p.terms()) {
        if (alpha.none()) continue;
        if (c.sign() >= 0) {
            mass.emplace(alpha.extended(false), c);
        } else {
            mass.emplace(alpha.complement().extended(true), -c);
            negative_sum += c;
        }
    }
    const Rat c0 = p.coeff(Bits(n)) + cls.a() * negative_sum;
    if (c0.sign() > 0) {
        mass.emplace(Bits(cls.d()), c0);
    } else if (c0.sign() < 0) {
        mass.emplace(Bits(n).complement().extended(true), -c0 / cls.c());
    }
    return mass;
}

Pmf type0_pmf(const MultilinearPoly& p, const FrechetClass& cls) {
    std::map<Bits, Rat> mass = type0_mass(p, cls);
    Rat total;
    for (const auto& [x, m] : mass) total += m;
    if (total.is_zero()) throw ValidationError("type-0 construction produced no mass");
    try {
        return normalize_mass(cls, std::move(mass));
    } catch (const ValidationError& e) {
        throw InternalConsistencyError(std::string("type-0 preimage of an ideal member is not a pmf: ") + e.what());
    }
}

std::vector<RatVector> kernel_basis(const FrechetClass& cls) {
    if (cls.d() > 20) throw std::length_error("dense kernel basis limited to d <= 20");
    const std::uint64_t total = cls.num_points();
    const std::uint64_t half = total / 2;
    std::vector<RatVector> basis;
    basis.reserve(half);
    RatVector first(total);
    first[0] = cls.q();
    first[total - 1] = cls.p();
    basis.push_back(std::move(first));
    const Rat centre = Rat(1) - Rat(2) * cls.p();
    for (std::uint64_t j = 2; j <= half; ++j) {
        RatVector v(total);
        v[0] = centre;
        v[j - 1] = cls.p();
        v[total - j] = cls.p();
        basis.push_back(std::move(v));
    }
    return basis;
}

std::string to_string(PmfType type) {
    switch (type) {
        case PmfType::Type0: return "type-0";
        case PmfType::Type1K: return "type-1K";
        case PmfType::Type1: return "type-1";
    }
    return "unknown";
}

PmfType classify_pmf(const Pmf& pmf) {
    const MultilinearPoly poly = pmf_to_poly(pmf);
    if (poly.is_zero()) return PmfType::Type1K;
    return type0_pmf(poly, pmf.cls()) == pmf ? PmfType::Type0 : PmfType::Type1;
}

}  // namespace frechet
