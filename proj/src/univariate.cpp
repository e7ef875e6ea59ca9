#include "arithdyn/univariate.hpp"

#include <algorithm>

#include "arithdyn/errors.hpp"
#include "arithdyn/exact_linalg.hpp"

namespace arithdyn {

UniPoly::UniPoly(std::vector<BigRat> coeffs) : c_(std::move(coeffs)) { trim(); }

void UniPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UniPoly UniPoly::from_polynomial(const Polynomial& p) {
    if (p.nvars() != 1) throw DomainError("not a univariate polynomial");
    std::vector<BigRat> c(static_cast<std::size_t>(std::max(p.total_degree(), 0)) + 1, 0);
    for (const auto& [e, v] : p.terms()) c[e[0]] = v;
    return UniPoly(std::move(c));
}

Polynomial UniPoly::to_polynomial() const {
    Polynomial p(1);
    for (std::size_t k = 0; k < c_.size(); ++k) p.add_term({static_cast<unsigned>(k)}, c_[k]);
    return p;
}

const BigRat& UniPoly::lead() const {
    if (c_.empty()) throw DomainError("zero polynomial has no leading coefficient");
    return c_.back();
}

BigRat UniPoly::evaluate(const BigRat& z) const {
    BigRat acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
    return acc;
}

UniPoly UniPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<BigRat> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<unsigned long>(k);
    return UniPoly(std::move(d));
}

UniPoly UniPoly::monic() const {
    if (c_.empty()) return {};
    const BigRat l = c_.back();
    std::vector<BigRat> m = c_;
    for (auto& v : m) v /= l;
    return UniPoly(std::move(m));
}

UniPoly operator+(const UniPoly& a, const UniPoly& b) {
    std::vector<BigRat> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] += b.c_[k];
    return UniPoly(std::move(c));
}

UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    std::vector<BigRat> c(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t k = 0; k < a.c_.size(); ++k) c[k] += a.c_[k];
    for (std::size_t k = 0; k < b.c_.size(); ++k) c[k] -= b.c_[k];
    return UniPoly(std::move(c));
}

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigRat> c(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i] == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    }
    return UniPoly(std::move(c));
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& a, const UniPoly& b) {
    if (b.is_zero()) throw DomainError("division by zero polynomial");
    if (a.degree() < b.degree()) return {UniPoly{}, a};
    std::vector<BigRat> r = a.c_;
    std::vector<BigRat> q(a.c_.size() - b.c_.size() + 1, 0);
    const BigRat& lb = b.c_.back();
    for (std::size_t k = q.size(); k-- > 0;) {
        const BigRat factor = r[k + b.c_.size() - 1] / lb;
        q[k] = factor;
        if (factor == 0) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) r[k + j] -= factor * b.c_[j];
    }
    return {UniPoly(std::move(q)), UniPoly(std::move(r))};
}

namespace {

using IntPoly = std::vector<BigInt>;

void trim(IntPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

IntPoly primitive_part(IntPoly p) {
    trim(p);
    if (p.empty()) return p;
    BigInt g = gcd_many(p);
    if (p.back() < 0) g = -g;
    for (auto& v : p) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    return p;
}

IntPoly to_primitive_integers(const UniPoly& a) {
    return primitive_part(primitive_integer_row(a.coefficients()));
}

// lc(b)^k * a mod b, with k = deg a - deg b + 1 applied one step at a time.
IntPoly pseudo_remainder(IntPoly a, const IntPoly& b) {
    const std::size_t db = b.size() - 1;
    const BigInt& lb = b.back();
    while (!a.empty() && a.size() - 1 >= db) {
        const BigInt la = a.back();
        const std::size_t shift = a.size() - 1 - db;
        for (auto& v : a) v *= lb;
        for (std::size_t j = 0; j <= db; ++j) a[shift + j] -= la * b[j];
        trim(a);
    }
    return a;
}

} // namespace

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    IntPoly x = to_primitive_integers(a);
    IntPoly y = to_primitive_integers(b);
    if (x.size() < y.size()) std::swap(x, y);
    while (!y.empty()) {
        IntPoly r = primitive_part(pseudo_remainder(std::move(x), y));
        x = std::move(y);
        y = std::move(r);
    }
    std::vector<BigRat> c(x.begin(), x.end());
    return UniPoly(std::move(c)).monic();
}

std::vector<MultiplicityFactor> squarefree_multiplicities(const UniPoly& p) {
    if (p.is_zero()) throw DomainError("squarefree decomposition of zero polynomial");
    std::vector<MultiplicityFactor> out;
    if (p.degree() == 0) return out;
    auto exact_div = [](const UniPoly& a, const UniPoly& b) {
        auto [q, r] = UniPoly::divmod(a, b);
        if (!r.is_zero()) throw Error("internal: inexact division in squarefree decomposition");
        return q;
    };
    const UniPoly dp = p.derivative();
    const UniPoly a0 = gcd(p, dp);
    UniPoly b = exact_div(p, a0);
    UniPoly c = exact_div(dp, a0);
    UniPoly d = c - b.derivative();
    for (unsigned i = 1; b.degree() > 0; ++i) {
        const UniPoly a = gcd(b, d);
        if (a.degree() > 0) out.push_back({i, static_cast<unsigned>(a.degree())});
        b = exact_div(b, a);
        c = exact_div(d, a);
        d = c - b.derivative();
    }
    std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.multiplicity > r.multiplicity; });
    return out;
}

BigRat sylvester_resultant(const UniPoly& p, unsigned deg_p, const UniPoly& q, unsigned deg_q) {
    if (p.degree() > static_cast<int>(deg_p) || q.degree() > static_cast<int>(deg_q))
        throw DomainError("formal degree below actual degree");
    const std::size_t n = deg_p + deg_q;
    if (n == 0) return 1;
    RatMatrix m(n, std::vector<BigRat>(n, 0));
    // Row layout: coefficients from highest to lowest power.
    for (std::size_t r = 0; r < deg_q; ++r)
        for (std::size_t k = 0; k <= deg_p; ++k) m[r][r + k] = p.coeff(deg_p - k);
    for (std::size_t r = 0; r < deg_p; ++r)
        for (std::size_t k = 0; k <= deg_q; ++k) m[deg_q + r][r + k] = q.coeff(deg_q - k);
    return rational_determinant(m);
}

BigRat resultant_uni(const UniPoly& p, const UniPoly& q) {
    if (p.is_zero() && q.is_zero()) throw DomainError("resultant of two zero polynomials");
    if (p.is_zero()) return q.degree() == 0 ? 1 : 0;
    if (q.is_zero()) return p.degree() == 0 ? 1 : 0;
    return sylvester_resultant(p, static_cast<unsigned>(p.degree()), q, static_cast<unsigned>(q.degree()));
}

} // namespace arithdyn
