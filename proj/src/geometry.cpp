#include "arithdyn/geometry.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "arithdyn/errors.hpp"
#include "arithdyn/parser.hpp"
#include "arithdyn/univariate.hpp"

namespace arithdyn {

// ------------------------------------------------------------------ ProjPoint

ProjPoint ProjPoint::normalize(std::span<const BigRat> raw) {
    if (raw.size() < 2) throw DomainError("a projective point needs at least two coordinates");
    const BigInt scale = lcm_of_denominators(raw);
    std::vector<BigInt> ints;
    ints.reserve(raw.size());
    for (const auto& q : raw) ints.push_back(q.get_num() * (scale / q.get_den()));
    return normalize(std::span<const BigInt>(ints));
}

ProjPoint ProjPoint::normalize(std::span<const BigInt> raw) {
    if (raw.size() < 2) throw DomainError("a projective point needs at least two coordinates");
    BigInt g = 0;
    for (const auto& v : raw) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 0) throw DomainError("all-zero coordinates");
    for (const auto& v : raw) {
        if (v != 0) {
            if (v < 0) g = -g;
            break;
        }
    }
    std::vector<BigInt> coords(raw.begin(), raw.end());
    if (g != 1) {
        for (auto& v : coords) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    }
    return ProjPoint(std::move(coords));
}

ProjPoint ProjPoint::normalize(std::initializer_list<long> raw) {
    std::vector<BigInt> v;
    for (long x : raw) v.emplace_back(x);
    return normalize(std::span<const BigInt>(v));
}

std::size_t ProjPoint::max_abs_index() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < coords_.size(); ++i) {
        if (compare_abs(coords_[i], coords_[best]) > 0) best = i;
    }
    return best;
}

std::vector<BigRat> ProjPoint::as_rationals() const { return {coords_.begin(), coords_.end()}; }

std::size_t ProjPoint::max_bit_length() const {
    std::size_t b = 0;
    for (const auto& v : coords_) b = std::max(b, bit_length(v));
    return b;
}

std::string ProjPoint::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) s += " : ";
        s += arithdyn::to_string(coords_[i]);
    }
    return s + ")";
}

namespace {

std::string_view trim(std::string_view s, std::size_t& offset) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
        ++offset;
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

struct Piece {
    std::string_view text;
    std::size_t offset;
};

// Splits "( a : b : c )" at top-level colons. Without enclosing parentheses
// (or without any top-level colon inside them) a single piece is returned.
std::vector<Piece> split_tuple(std::string_view text) {
    std::size_t offset = 0;
    std::string_view body = trim(text, offset);
    if (body.empty()) throw ParseError("empty input", 0);
    bool wrapped = false;
    if (body.front() == '(' && body.back() == ')') {
        // Only strip if the opening paren matches the final one.
        int depth = 0;
        wrapped = true;
        for (std::size_t i = 0; i < body.size(); ++i) {
            if (body[i] == '(') ++depth;
            if (body[i] == ')') --depth;
            if (depth == 0 && i + 1 < body.size()) {
                wrapped = false;
                break;
            }
        }
    }
    std::size_t inner_offset = offset;
    std::string_view inner = body;
    if (wrapped) {
        inner = body.substr(1, body.size() - 2);
        inner_offset = offset + 1;
    }
    std::vector<Piece> pieces;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < inner.size(); ++i) {
        const char c = inner[i];
        if (c == '(') ++depth;
        if (c == ')') {
            if (--depth < 0) throw ParseError("unbalanced ')'", inner_offset + i);
        }
        if (c == ':' && depth == 0) {
            pieces.push_back({inner.substr(start, i - start), inner_offset + start});
            start = i + 1;
        }
    }
    if (pieces.empty()) return {{body, offset}};
    pieces.push_back({inner.substr(start), inner_offset + start});
    return pieces;
}

} // namespace

ProjPoint parse_point(std::string_view text) {
    const auto pieces = split_tuple(text);
    if (pieces.size() == 1) {
        std::size_t off = pieces[0].offset;
        const std::string_view t = trim(pieces[0].text, off);
        if (t == "inf" || t == "oo" || t == "infinity") return ProjPoint::normalize({1, 0});
        const BigRat q = parse_rational(t, off);
        const std::vector<BigRat> raw{q, 1};
        return ProjPoint::normalize(raw);
    }
    std::vector<BigRat> raw;
    for (const auto& p : pieces) raw.push_back(parse_rational(p.text, p.offset));
    bool all_zero = std::all_of(raw.begin(), raw.end(), [](const BigRat& q) { return q == 0; });
    if (all_zero) throw ParseError("all-zero coordinates", pieces.front().offset);
    return ProjPoint::normalize(raw);
}

std::vector<std::string> default_variable_names(std::size_t nvars) {
    if (nvars <= 3) {
        static const std::vector<std::string> xyz{"X", "Y", "Z"};
        return {xyz.begin(), xyz.begin() + static_cast<long>(nvars)};
    }
    std::vector<std::string> names;
    for (std::size_t i = 0; i < nvars; ++i) names.push_back("X" + std::to_string(i));
    return names;
}

// ------------------------------------------------------------------- Morphism

Morphism::Morphism(std::vector<HomogeneousForm> forms) {
    if (forms.size() < 2) throw DomainError("a morphism of P^N needs at least two forms");
    const std::size_t n = forms.size();
    const unsigned d = forms.front().degree();
    if (d == 0) throw DomainError("morphism degree must be at least 1");
    for (const auto& f : forms) {
        if (f.nvars() != n) throw DomainError("form arity does not match the number of forms");
        if (f.degree() != d) throw DomainError("forms have different degrees");
        if (f.is_zero()) throw DomainError("identically zero form");
    }
    forms_ = primitive_forms(forms, true);
    int_terms_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto& [e, c] : forms_[i].poly().terms()) int_terms_[i].push_back({e, c.get_num()});
    }
}

std::vector<BigInt> Morphism::evaluate(std::span<const BigInt> coords) const {
    if (coords.size() != nvars()) throw DomainError("point dimension does not match morphism");
    const unsigned d = degree();
    std::vector<std::vector<BigInt>> powers(coords.size());
    for (std::size_t i = 0; i < coords.size(); ++i) {
        powers[i].reserve(d + 1);
        powers[i].emplace_back(1);
        for (unsigned k = 1; k <= d; ++k) powers[i].push_back(powers[i].back() * coords[i]);
    }
    std::vector<BigInt> values(nvars());
    BigInt monomial;
    for (std::size_t f = 0; f < int_terms_.size(); ++f) {
        BigInt& acc = values[f];
        acc = 0;
        for (const auto& t : int_terms_[f]) {
            monomial = t.coeff;
            for (std::size_t i = 0; i < t.exponents.size(); ++i) {
                if (t.exponents[i]) monomial *= powers[i][t.exponents[i]];
            }
            acc += monomial;
        }
    }
    return values;
}

ProjPoint Morphism::apply(const ProjPoint& x) const {
    const auto values = evaluate(x.coords());
    if (std::all_of(values.begin(), values.end(), [](const BigInt& v) { return v == 0; }))
        throw IndeterminatePoint("indeterminate point " + x.to_string() + ": all forms vanish");
    return ProjPoint::normalize(std::span<const BigInt>(values));
}

Morphism Morphism::after(const Morphism& inner) const {
    if (inner.nvars() != nvars()) throw DomainError("composition dimension mismatch");
    std::vector<HomogeneousForm> out;
    out.reserve(nvars());
    for (const auto& f : forms_) out.push_back(compose_form(f, inner.forms_));
    return Morphism(std::move(out));
}

Morphism Morphism::iterate(unsigned n) const {
    std::vector<HomogeneousForm> id;
    for (std::size_t i = 0; i < nvars(); ++i) id.push_back(HomogeneousForm::variable(nvars(), i));
    Morphism result{std::move(id)};
    for (unsigned k = 0; k < n; ++k) result = after(result);
    return result;
}

std::string Morphism::to_string(std::span<const std::string> names) const {
    std::string s = "(";
    for (std::size_t i = 0; i < forms_.size(); ++i) {
        if (i) s += " : ";
        s += forms_[i].to_string(names);
    }
    return s + ")";
}

std::string Morphism::to_string() const { return to_string(default_variable_names(nvars())); }

Morphism parse_morphism(std::string_view text, std::span<const std::string> var_names) {
    const auto pieces = split_tuple(text);
    if (pieces.size() == 1) {
        const std::vector<std::string> affine{var_names.size() == 1 ? var_names[0] : std::string("z")};
        const Polynomial p = parse_polynomial(pieces[0].text, affine, pieces[0].offset);
        if (p.is_zero()) throw ParseError("constant zero map", pieces[0].offset);
        const int d = p.total_degree();
        if (d < 1) throw ParseError("constant map is not a morphism", pieces[0].offset);
        Polynomial num(2);
        for (const auto& [e, c] : p.terms()) num.add_term({e[0], static_cast<unsigned>(d) - e[0]}, c);
        Polynomial den = Polynomial::monomial({0, static_cast<unsigned>(d)}, 1);
        return Morphism({HomogeneousForm(std::move(num)), HomogeneousForm(std::move(den))});
    }
    std::vector<std::string> names = var_names.size() == pieces.size()
                                         ? std::vector<std::string>(var_names.begin(), var_names.end())
                                         : default_variable_names(pieces.size());
    if (!var_names.empty() && var_names.size() != pieces.size())
        throw ParseError("expected " + std::to_string(var_names.size()) + " forms, got " +
                             std::to_string(pieces.size()),
                         0);
    std::vector<HomogeneousForm> forms;
    for (const auto& p : pieces) {
        HomogeneousForm f = parse_form(p.text, names, p.offset);
        if (f.is_zero()) throw ParseError("identically zero form", p.offset);
        if (!forms.empty() && f.degree() != forms.front().degree())
            throw ParseError("forms have different degrees", p.offset);
        forms.push_back(std::move(f));
    }
    if (forms.front().degree() == 0) throw ParseError("constant forms do not define a morphism", 0);
    return Morphism(std::move(forms));
}

// ------------------------------------------------------------------ LinearAut

LinearAut::LinearAut(RatMatrix matrix) : matrix_(std::move(matrix)) {
    if (matrix_.size() < 2) throw DomainError("linear automorphism needs size at least 2");
    inverse_ = rational_inverse(matrix_);
}

LinearAut LinearAut::identity(std::size_t n) {
    RatMatrix m(n, std::vector<BigRat>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return LinearAut(std::move(m));
}

ProjPoint LinearAut::apply(const ProjPoint& x) const {
    if (x.size() != size()) throw DomainError("point dimension does not match matrix");
    std::vector<BigRat> out(size(), 0);
    for (std::size_t i = 0; i < size(); ++i)
        for (std::size_t j = 0; j < size(); ++j) out[i] += matrix_[i][j] * x[j];
    return ProjPoint::normalize(out);
}

LinearAut LinearAut::inverse() const { return LinearAut(inverse_, matrix_); }

std::vector<HomogeneousForm> LinearAut::as_forms() const {
    std::vector<HomogeneousForm> forms;
    for (const auto& row : matrix_) {
        Polynomial p(size());
        for (std::size_t j = 0; j < size(); ++j) p += Polynomial::variable(size(), j) * row[j];
        forms.emplace_back(std::move(p), 1);
    }
    return forms;
}

Morphism conjugate(const Morphism& g, const LinearAut& s) {
    if (g.nvars() != s.size()) throw DomainError("conjugation dimension mismatch");
    const auto linear = s.as_forms();
    std::vector<HomogeneousForm> g_after_s;
    for (const auto& form : g.forms()) g_after_s.push_back(compose_form(form, linear));
    const auto& inv = s.inverse_matrix();
    std::vector<HomogeneousForm> out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        HomogeneousForm acc(Polynomial(s.size()), g.degree());
        for (std::size_t k = 0; k < s.size(); ++k) {
            if (inv[i][k] != 0) acc = acc + inv[i][k] * g_after_s[k];
        }
        out.push_back(std::move(acc));
    }
    return Morphism(std::move(out));
}

// ----------------------------------------------------------------- validation

ValidationReport validate_morphism(const Morphism& f) {
    if (f.dimension() == 1) {
        const unsigned d = f.degree();
        const UniPoly p = UniPoly::from_polynomial(f.forms()[0].dehomogenize(1));
        const UniPoly q = UniPoly::from_polynomial(f.forms()[1].dehomogenize(1));
        BigRat res = sylvester_resultant(p, d, q, d);
        if (res != 0) return {MorphismStatus::Certified, res, "resultant nonzero"};
        return {MorphismStatus::Rejected, res, "forms share a root: not a morphism"};
    }
    return {MorphismStatus::RuntimeGuarded, std::nullopt,
            "no base-point certificate for N >= 2; base points are detected when an orbit hits one"};
}

std::string to_string(MorphismStatus s) {
    switch (s) {
    case MorphismStatus::Certified: return "certified";
    case MorphismStatus::Rejected: return "rejected";
    case MorphismStatus::RuntimeGuarded: return "runtime-guarded";
    }
    return "unknown";
}

} // namespace arithdyn
