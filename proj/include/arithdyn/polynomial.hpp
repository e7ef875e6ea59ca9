#pragma once

// Sparse multivariate polynomials over Q, and homogeneous forms on top.
//
// Terms live in a std::map keyed by exponent vector under graded-lex
// descending order, so iteration order is also display order. Zero
// coefficients are never stored.

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "arithdyn/exactnum.hpp"

namespace arithdyn {

using Exponents = std::vector<unsigned>;

unsigned total_degree(const Exponents& e);

// Graded lex, higher monomials first.
struct GradedLexGreater {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

class Polynomial {
public:
    using TermMap = std::map<Exponents, BigRat, GradedLexGreater>;

    explicit Polynomial(std::size_t nvars = 0) : nvars_(nvars) {}

    static Polynomial constant(std::size_t nvars, const BigRat& c);
    static Polynomial variable(std::size_t nvars, std::size_t index);
    static Polynomial monomial(Exponents exponents, const BigRat& c);

    std::size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // -1 for the zero polynomial.
    int total_degree() const;
    // Lowest total degree carrying a nonzero coefficient. Throws on zero.
    unsigned min_degree() const;
    bool is_homogeneous() const;

    BigRat coefficient(const Exponents& e) const;
    void add_term(const Exponents& e, const BigRat& c);

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const BigRat& c);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, const BigRat& c) { return a *= c; }
    friend Polynomial operator*(const BigRat& c, Polynomial a) { return a *= c; }
    friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

    Polynomial pow(unsigned e) const;

    BigRat evaluate(std::span<const BigRat> point) const;
    BigRat evaluate(std::span<const BigInt> point) const;

    // p(subs[0], ..., subs[n-1]); all substitutes share one nvars.
    Polynomial compose(std::span<const Polynomial> subs) const;
    Polynomial derivative(std::size_t var) const;

    // q(x) = p(x + point), one variable at a time by repeated synthetic
    // division.
    Polynomial shift(std::span<const BigRat> point) const;

    // Terms of total degree < bound.
    Polynomial truncated(unsigned bound) const;

    // Sets variable `chart` to 1 and drops it.
    Polynomial dehomogenize(std::size_t chart) const;

    std::string to_string(std::span<const std::string> names) const;

private:
    std::size_t nvars_;
    TermMap terms_;
};

// Local equations live in the same representation.
using DehomPoly = Polynomial;

// Order of vanishing of g at point: lowest total degree after moving
// point to the origin. Throws DomainError("order undefined") for g == 0.
unsigned vanishing_order(const Polynomial& g, std::span<const BigRat> point);

class HomogeneousForm {
public:
    HomogeneousForm() = default;
    // Degree taken from the terms; throws DomainError if inhomogeneous or
    // if p is zero (use the two-argument form for the zero form).
    explicit HomogeneousForm(Polynomial p);
    HomogeneousForm(Polynomial p, unsigned degree);

    static HomogeneousForm variable(std::size_t nvars, std::size_t index);

    std::size_t nvars() const { return poly_.nvars(); }
    unsigned degree() const { return degree_; }
    const Polynomial& poly() const { return poly_; }
    bool is_zero() const { return poly_.is_zero(); }

    BigRat evaluate(std::span<const BigInt> coords) const;
    BigRat evaluate(std::span<const BigRat> coords) const;
    HomogeneousForm derivative(std::size_t var) const;
    Polynomial dehomogenize(std::size_t chart) const { return poly_.dehomogenize(chart); }

    bool has_integer_coefficients() const;
    // Positive gcd of the (integer) coefficients; 0 for the zero form.
    BigInt integer_content() const;

    std::string to_string(std::span<const std::string> names) const { return poly_.to_string(names); }

    friend HomogeneousForm operator*(const HomogeneousForm& a, const HomogeneousForm& b);
    friend HomogeneousForm operator*(const BigRat& c, const HomogeneousForm& a);
    friend HomogeneousForm operator+(const HomogeneousForm& a, const HomogeneousForm& b);
    friend HomogeneousForm operator-(const HomogeneousForm& a, const HomogeneousForm& b);
    friend bool operator==(const HomogeneousForm& a, const HomogeneousForm& b) = default;

private:
    Polynomial poly_;
    unsigned degree_ = 0;
};

BigRat eval_form(const HomogeneousForm& f, std::span<const BigInt> coords);

// F(G_0, ..., G_N). Degree deg F * deg G.
HomogeneousForm compose_form(const HomogeneousForm& f, std::span<const HomogeneousForm> g);

// det(dG_i/dX_j). Degree (N+1)(d-1).
HomogeneousForm jacobian_det(std::span<const HomogeneousForm> g);

// Clears denominators and divides out the content across all forms so the
// result has integer coefficients with overall gcd 1. If a sign is fixed,
// the leading term of the first nonzero form is positive.
std::vector<HomogeneousForm> primitive_forms(std::span<const HomogeneousForm> forms, bool fix_sign);

} // namespace arithdyn
