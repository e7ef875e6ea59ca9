#pragma once

// Points of P^N(Q), endomorphisms of P^N given by integer forms, and
// linear changes of coordinates.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "arithdyn/exact_linalg.hpp"
#include "arithdyn/exactnum.hpp"
#include "arithdyn/polynomial.hpp"

namespace arithdyn {

// Canonical representative of a point of P^N(Q): coprime integers, first
// nonzero coordinate positive. Structural equality is projective equality.
class ProjPoint {
public:
    // Clears denominators, divides by the gcd and fixes the sign.
    // Throws DomainError on the all-zero vector.
    static ProjPoint normalize(std::span<const BigRat> raw);
    static ProjPoint normalize(std::span<const BigInt> raw);
    static ProjPoint normalize(std::initializer_list<long> raw);

    std::size_t size() const { return coords_.size(); }
    std::size_t dimension() const { return coords_.size() - 1; }
    const std::vector<BigInt>& coords() const { return coords_; }
    const BigInt& operator[](std::size_t i) const { return coords_[i]; }

    // Index of the first coordinate of largest absolute value.
    std::size_t max_abs_index() const;
    const BigInt& max_abs() const { return coords_[max_abs_index()]; }
    std::vector<BigRat> as_rationals() const;
    std::size_t max_bit_length() const;

    // "(2 : 3 : -4)"
    std::string to_string() const;

    friend bool operator==(const ProjPoint& a, const ProjPoint& b) { return a.coords_ == b.coords_; }
    friend bool operator<(const ProjPoint& a, const ProjPoint& b) { return a.coords_ < b.coords_; }

private:
    explicit ProjPoint(std::vector<BigInt> coords) : coords_(std::move(coords)) {}
    std::vector<BigInt> coords_;
};

inline ProjPoint normalize(std::span<const BigRat> raw) { return ProjPoint::normalize(raw); }

// "(a0 : ... : aN)" with rational-constant entries. For P^1 the shorthand
// "inf" means (1 : 0) and a bare rational q means (q : 1).
ProjPoint parse_point(std::string_view text);

// X, Y for P^1; X, Y, Z for P^2; X0..XN beyond.
std::vector<std::string> default_variable_names(std::size_t nvars);

// An endomorphism of P^N: N+1 forms of one degree d >= 1 in N+1 variables,
// integer coefficients with overall content 1, leading coefficient of the
// first form positive. d is also the first dynamical degree.
class Morphism {
public:
    // Throws DomainError on arity/degree mismatch or an identically zero form.
    explicit Morphism(std::vector<HomogeneousForm> forms);

    std::size_t dimension() const { return forms_.size() - 1; }
    std::size_t nvars() const { return forms_.size(); }
    unsigned degree() const { return forms_.front().degree(); }
    const std::vector<HomogeneousForm>& forms() const { return forms_; }

    // Throws IndeterminatePoint when every form vanishes at x.
    ProjPoint apply(const ProjPoint& x) const;
    // Raw integer values F_i(x), before normalization.
    std::vector<BigInt> evaluate(std::span<const BigInt> coords) const;

    // this o inner
    Morphism after(const Morphism& inner) const;
    Morphism iterate(unsigned n) const;

    std::string to_string(std::span<const std::string> names) const;
    std::string to_string() const;

    friend bool operator==(const Morphism& a, const Morphism& b) { return a.forms_ == b.forms_; }

private:
    struct IntTerm {
        Exponents exponents;
        BigInt coeff;
    };
    std::vector<HomogeneousForm> forms_;
    std::vector<std::vector<IntTerm>> int_terms_;
};

inline ProjPoint apply(const Morphism& f, const ProjPoint& x) { return f.apply(x); }

// "(F0 : F1 : ... : FN)". With no top-level ':' the text is read as a
// polynomial p(z) in the single variable z (or var_names[0] if exactly one
// name is given) and homogenized to (Y^d p(X/Y) : Y^d).
Morphism parse_morphism(std::string_view text, std::span<const std::string> var_names = {});

class LinearAut {
public:
    // Throws DomainError if the matrix is not square or is singular.
    explicit LinearAut(RatMatrix matrix);
    static LinearAut identity(std::size_t n);

    std::size_t size() const { return matrix_.size(); }
    const RatMatrix& matrix() const { return matrix_; }
    const RatMatrix& inverse_matrix() const { return inverse_; }

    ProjPoint apply(const ProjPoint& x) const;
    LinearAut inverse() const;
    std::vector<HomogeneousForm> as_forms() const;

private:
    LinearAut(RatMatrix matrix, RatMatrix inverse) : matrix_(std::move(matrix)), inverse_(std::move(inverse)) {}
    RatMatrix matrix_;
    RatMatrix inverse_;
};

inline ProjPoint apply_linear(const LinearAut& s, const ProjPoint& x) { return s.apply(x); }
inline LinearAut inverse_linear(const LinearAut& s) { return s.inverse(); }

// s^-1 o g o s, content-reduced.
Morphism conjugate(const Morphism& g, const LinearAut& s);

enum class MorphismStatus { Certified, Rejected, RuntimeGuarded };

struct ValidationReport {
    MorphismStatus status;
    // Binary-form resultant of the two forms (P^1 only).
    std::optional<BigRat> resultant;
    std::string message;
};

// P^1: certified iff the resultant of the two forms is nonzero. For N >= 2
// there is no elimination-theoretic check here; base points surface as
// IndeterminatePoint from apply() when an orbit runs into one.
ValidationReport validate_morphism(const Morphism& f);

std::string to_string(MorphismStatus s);

} // namespace arithdyn
