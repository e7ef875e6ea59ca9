#pragma once

// Dense univariate polynomials over Q, used for maps of P^1.

#include <compare>
#include <utility>
#include <vector>

#include "arithdyn/exactnum.hpp"
#include "arithdyn/polynomial.hpp"

namespace arithdyn {

class UniPoly {
public:
    UniPoly() = default;
    // coeffs[k] multiplies z^k; trailing zeros are stripped.
    explicit UniPoly(std::vector<BigRat> coeffs);

    static UniPoly from_polynomial(const Polynomial& p);
    Polynomial to_polynomial() const;

    // -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<BigRat>& coefficients() const { return c_; }
    BigRat coeff(std::size_t k) const { return k < c_.size() ? c_[k] : BigRat(0); }
    const BigRat& lead() const;

    BigRat evaluate(const BigRat& z) const;
    UniPoly derivative() const;
    UniPoly monic() const;

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator-(const UniPoly& a, const UniPoly& b);
    friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
    friend bool operator==(const UniPoly& a, const UniPoly& b) = default;

    // Division over Q: a = q*b + r with deg r < deg b.
    static std::pair<UniPoly, UniPoly> divmod(const UniPoly& a, const UniPoly& b);

private:
    void trim();
    std::vector<BigRat> c_;
};

// Monic gcd computed by a primitive-part pseudo-remainder sequence over Z.
UniPoly gcd(const UniPoly& a, const UniPoly& b);

struct MultiplicityFactor {
    unsigned multiplicity;
    unsigned degree;
    auto operator<=>(const MultiplicityFactor&) const = default;
};

// Yun's squarefree decomposition, highest multiplicity first. Reports only
// the profile: for each multiplicity, the degree of the product of the
// corresponding squarefree factor.
std::vector<MultiplicityFactor> squarefree_multiplicities(const UniPoly& p);

// Sylvester-determinant resultant with respect to the actual degrees.
// Convention when one input is zero: 1 if the other is a nonzero constant,
// else 0. Both zero throws.
BigRat resultant_uni(const UniPoly& p, const UniPoly& q);

// Resultant of formal degree (deg_p, deg_q): the binary-form resultant of
// the homogenizations. Vanishes whenever both leading coefficients do.
BigRat sylvester_resultant(const UniPoly& p, unsigned deg_p, const UniPoly& q, unsigned deg_q);

} // namespace arithdyn
