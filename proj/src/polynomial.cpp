#include "arithdyn/polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "arithdyn/errors.hpp"

namespace arithdyn {

unsigned total_degree(const Exponents& e) { return std::accumulate(e.begin(), e.end(), 0u); }

bool GradedLexGreater::operator()(const Exponents& a, const Exponents& b) const {
    const unsigned da = total_degree(a);
    const unsigned db = total_degree(b);
    if (da != db) return da > db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

// ---------------------------------------------------------------- Polynomial

Polynomial Polynomial::constant(std::size_t nvars, const BigRat& c) {
    Polynomial p(nvars);
    p.add_term(Exponents(nvars, 0), c);
    return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
    if (index >= nvars) throw DomainError("variable index out of range");
    Exponents e(nvars, 0);
    e[index] = 1;
    return monomial(std::move(e), 1);
}

Polynomial Polynomial::monomial(Exponents exponents, const BigRat& c) {
    Polynomial p(exponents.size());
    p.add_term(exponents, c);
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree() == 0);
}

int Polynomial::total_degree() const {
    if (terms_.empty()) return -1;
    return static_cast<int>(arithdyn::total_degree(terms_.begin()->first));
}

unsigned Polynomial::min_degree() const {
    if (terms_.empty()) throw DomainError("order undefined");
    return arithdyn::total_degree(terms_.rbegin()->first);
}

bool Polynomial::is_homogeneous() const {
    return terms_.empty() || static_cast<int>(min_degree()) == total_degree();
}

BigRat Polynomial::coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? BigRat(0) : it->second;
}

void Polynomial::add_term(const Exponents& e, const BigRat& c) {
    if (e.size() != nvars_) throw DomainError("exponent vector has wrong length");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial Polynomial::operator-() const {
    Polynomial r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (o.nvars_ != nvars_) throw DomainError("polynomial arity mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (o.nvars_ != nvars_) throw DomainError("polynomial arity mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Polynomial& Polynomial::operator*=(const BigRat& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ != b.nvars_) throw DomainError("polynomial arity mismatch");
    Polynomial r(a.nvars_);
    Exponents e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    }
    return r;
}

Polynomial Polynomial::pow(unsigned e) const {
    Polynomial result = constant(nvars_, 1);
    Polynomial base = *this;
    while (e) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

namespace {

// powers[i][k] = point[i]^k for k <= max exponent of variable i.
template <class T>
std::vector<std::vector<T>> power_table(const Polynomial::TermMap& terms, std::span<const T> point) {
    std::vector<unsigned> max_exp(point.size(), 0);
    for (const auto& [e, c] : terms)
        for (std::size_t i = 0; i < e.size(); ++i) max_exp[i] = std::max(max_exp[i], e[i]);
    std::vector<std::vector<T>> powers(point.size());
    for (std::size_t i = 0; i < point.size(); ++i) {
        powers[i].reserve(max_exp[i] + 1);
        powers[i].push_back(T(1));
        for (unsigned k = 1; k <= max_exp[i]; ++k) powers[i].push_back(powers[i].back() * point[i]);
    }
    return powers;
}

template <class T>
BigRat evaluate_impl(const Polynomial& p, std::span<const T> point) {
    if (point.size() != p.nvars()) throw DomainError("evaluation arity mismatch");
    const auto powers = power_table(p.terms(), point);
    BigRat sum = 0;
    T monomial;
    for (const auto& [e, c] : p.terms()) {
        monomial = 1;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i]) monomial *= powers[i][e[i]];
        }
        sum += c * BigRat(monomial);
    }
    return sum;
}

} // namespace

BigRat Polynomial::evaluate(std::span<const BigRat> point) const { return evaluate_impl(*this, point); }

BigRat Polynomial::evaluate(std::span<const BigInt> point) const { return evaluate_impl(*this, point); }

Polynomial Polynomial::compose(std::span<const Polynomial> subs) const {
    if (subs.size() != nvars_) throw DomainError("composition arity mismatch");
    if (subs.empty()) return *this;
    const std::size_t out_vars = subs.front().nvars();
    for (const auto& s : subs) {
        if (s.nvars() != out_vars) throw DomainError("substitutes have different arity");
    }
    // Lazily grown powers of each substitute.
    std::vector<std::vector<Polynomial>> powers(subs.size());
    auto power = [&](std::size_t i, unsigned k) -> const Polynomial& {
        auto& list = powers[i];
        if (list.empty()) list.push_back(constant(out_vars, 1));
        while (list.size() <= k) list.push_back(list.back() * subs[i]);
        return list[k];
    };
    Polynomial result(out_vars);
    for (const auto& [e, c] : terms_) {
        Polynomial term = constant(out_vars, c);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i]) term = term * power(i, e[i]);
        }
        result += term;
    }
    return result;
}

Polynomial Polynomial::derivative(std::size_t var) const {
    if (var >= nvars_) throw DomainError("variable index out of range");
    Polynomial r(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponents d = e;
        --d[var];
        r.add_term(d, c * e[var]);
    }
    return r;
}

Polynomial Polynomial::shift(std::span<const BigRat> point) const {
    if (point.size() != nvars_) throw DomainError("shift arity mismatch");
    Polynomial current = *this;
    for (std::size_t var = 0; var < nvars_; ++var) {
        if (point[var] == 0) continue;
        const BigRat& c = point[var];
        // Group by the exponents of the remaining variables.
        std::map<Exponents, std::vector<BigRat>> groups;
        for (const auto& [e, coeff] : current.terms_) {
            Exponents key = e;
            key[var] = 0;
            auto& dense = groups[key];
            if (dense.size() <= e[var]) dense.resize(e[var] + 1, 0);
            dense[e[var]] = coeff;
        }
        Polynomial next(nvars_);
        for (auto& [key, a] : groups) {
            // a(t) -> a(t + c): repeated synthetic division by (t - (-c)).
            const std::size_t deg = a.size() - 1;
            for (std::size_t j = 0; j < deg; ++j) {
                for (std::size_t k = deg; k-- > j;) a[k] += c * a[k + 1];
            }
            Exponents e = key;
            for (std::size_t k = 0; k <= deg; ++k) {
                e[var] = static_cast<unsigned>(k);
                next.add_term(e, a[k]);
            }
        }
        current = std::move(next);
    }
    return current;
}

Polynomial Polynomial::truncated(unsigned bound) const {
    Polynomial r(nvars_);
    for (const auto& [e, c] : terms_) {
        if (arithdyn::total_degree(e) < bound) r.terms_.emplace(e, c);
    }
    return r;
}

Polynomial Polynomial::dehomogenize(std::size_t chart) const {
    if (chart >= nvars_) throw DomainError("chart index out of range");
    Polynomial r(nvars_ - 1);
    for (const auto& [e, c] : terms_) {
        Exponents d;
        d.reserve(nvars_ - 1);
        for (std::size_t i = 0; i < nvars_; ++i) {
            if (i != chart) d.push_back(e[i]);
        }
        r.add_term(d, c);
    }
    return r;
}

std::string Polynomial::to_string(std::span<const std::string> names) const {
    if (names.size() < nvars_) throw DomainError("not enough variable names");
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        const bool negative = c < 0;
        const BigRat magnitude = negative ? BigRat(-c) : c;
        if (first) {
            if (negative) out << '-';
        } else {
            out << (negative ? " - " : " + ");
        }
        first = false;
        const bool is_const = arithdyn::total_degree(e) == 0;
        bool need_star = false;
        if (magnitude != 1 || is_const) {
            out << magnitude.get_str();
            need_star = true;
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (need_star) out << '*';
            out << names[i];
            if (e[i] > 1) out << '^' << e[i];
            need_star = true;
        }
    }
    return out.str();
}

unsigned vanishing_order(const Polynomial& g, std::span<const BigRat> point) {
    if (g.is_zero()) throw DomainError("order undefined");
    return g.shift(point).min_degree();
}

// ------------------------------------------------------------ HomogeneousForm

HomogeneousForm::HomogeneousForm(Polynomial p) : poly_(std::move(p)) {
    if (poly_.is_zero()) throw DomainError("zero form needs an explicit degree");
    if (!poly_.is_homogeneous()) throw DomainError("inhomogeneous expression");
    degree_ = static_cast<unsigned>(poly_.total_degree());
}

HomogeneousForm::HomogeneousForm(Polynomial p, unsigned degree) : poly_(std::move(p)), degree_(degree) {
    for (const auto& [e, c] : poly_.terms()) {
        if (total_degree(e) != degree) throw DomainError("inhomogeneous expression");
    }
}

HomogeneousForm HomogeneousForm::variable(std::size_t nvars, std::size_t index) {
    return HomogeneousForm(Polynomial::variable(nvars, index), 1);
}

BigRat HomogeneousForm::evaluate(std::span<const BigInt> coords) const { return poly_.evaluate(coords); }

BigRat HomogeneousForm::evaluate(std::span<const BigRat> coords) const { return poly_.evaluate(coords); }

HomogeneousForm HomogeneousForm::derivative(std::size_t var) const {
    return HomogeneousForm(poly_.derivative(var), degree_ == 0 ? 0 : degree_ - 1);
}

bool HomogeneousForm::has_integer_coefficients() const {
    return std::all_of(poly_.terms().begin(), poly_.terms().end(),
                       [](const auto& t) { return is_integer(t.second); });
}

BigInt HomogeneousForm::integer_content() const {
    BigInt g = 0;
    for (const auto& [e, c] : poly_.terms()) {
        if (!is_integer(c)) throw DomainError("form has non-integer coefficients");
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
    }
    return g;
}

HomogeneousForm operator*(const HomogeneousForm& a, const HomogeneousForm& b) {
    return HomogeneousForm(a.poly_ * b.poly_, a.degree_ + b.degree_);
}

HomogeneousForm operator*(const BigRat& c, const HomogeneousForm& a) {
    return HomogeneousForm(a.poly_ * c, a.degree_);
}

HomogeneousForm operator+(const HomogeneousForm& a, const HomogeneousForm& b) {
    if (a.degree_ != b.degree_) throw DomainError("adding forms of different degree");
    return HomogeneousForm(a.poly_ + b.poly_, a.degree_);
}

HomogeneousForm operator-(const HomogeneousForm& a, const HomogeneousForm& b) {
    if (a.degree_ != b.degree_) throw DomainError("subtracting forms of different degree");
    return HomogeneousForm(a.poly_ - b.poly_, a.degree_);
}

BigRat eval_form(const HomogeneousForm& f, std::span<const BigInt> coords) {
    if (coords.size() != f.nvars()) throw DomainError("evaluation arity mismatch");
    return f.evaluate(coords);
}

HomogeneousForm compose_form(const HomogeneousForm& f, std::span<const HomogeneousForm> g) {
    if (g.size() != f.nvars()) throw DomainError("composition arity mismatch");
    if (g.empty()) return f;
    const unsigned d = g.front().degree();
    std::vector<Polynomial> subs;
    subs.reserve(g.size());
    for (const auto& gi : g) {
        if (gi.degree() != d) throw DomainError("composition degree mismatch");
        if (gi.nvars() != g.front().nvars()) throw DomainError("composition arity mismatch");
        subs.push_back(gi.poly());
    }
    return HomogeneousForm(f.poly().compose(subs), f.degree() * d);
}

namespace {

HomogeneousForm cofactor_det(const std::vector<std::vector<HomogeneousForm>>& m,
                             std::vector<std::size_t>& cols, std::size_t row) {
    if (row + 1 == m.size()) return m[row][cols.front()];
    HomogeneousForm sum;
    bool have = false;
    for (std::size_t k = 0; k < cols.size(); ++k) {
        const std::size_t col = cols[k];
        std::vector<std::size_t> rest;
        rest.reserve(cols.size() - 1);
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (j != k) rest.push_back(cols[j]);
        }
        HomogeneousForm term = m[row][col] * cofactor_det(m, rest, row + 1);
        if (k % 2 == 1) term = BigRat(-1) * term;
        sum = have ? sum + term : term;
        have = true;
    }
    return sum;
}

} // namespace

HomogeneousForm jacobian_det(std::span<const HomogeneousForm> g) {
    const std::size_t n = g.size();
    if (n == 0) throw DomainError("empty system");
    for (const auto& gi : g) {
        if (gi.nvars() != n) throw DomainError("jacobian needs a square system");
        if (gi.degree() != g.front().degree()) throw DomainError("jacobian needs forms of one degree");
    }
    if (g.front().degree() == 0) throw DomainError("jacobian of constant forms");
    std::vector<std::vector<HomogeneousForm>> m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i].push_back(g[i].derivative(j));
    std::vector<std::size_t> cols(n);
    std::iota(cols.begin(), cols.end(), 0);
    return cofactor_det(m, cols, 0);
}

std::vector<HomogeneousForm> primitive_forms(std::span<const HomogeneousForm> forms, bool fix_sign) {
    BigInt den_lcm = 1;
    for (const auto& f : forms)
        for (const auto& [e, c] : f.poly().terms()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    BigInt content = 0;
    for (const auto& f : forms) {
        for (const auto& [e, c] : f.poly().terms()) {
            BigInt v = c.get_num() * (den_lcm / c.get_den());
            mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
        }
    }
    if (content == 0) throw DomainError("all forms are zero");
    BigRat scale = make_rat(den_lcm, content);
    if (fix_sign) {
        for (const auto& f : forms) {
            if (f.is_zero()) continue;
            if (f.poly().terms().begin()->second < 0) scale = -scale;
            break;
        }
    }
    std::vector<HomogeneousForm> out;
    out.reserve(forms.size());
    for (const auto& f : forms) out.push_back(scale * f);
    return out;
}

} // namespace arithdyn
