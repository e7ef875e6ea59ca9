#pragma once

// Places of Q, local absolute values, naive heights, local heights of
// divisors and subschemes of P^N, and the arithmetic distance.
//
// Local heights are only defined up to bounded functions; the
// representatives used here are
//
//   lambda_{D,v}(x) = log( max_i |x_i|_v^{deg F} / |F(x)|_v )
//   lambda_{Y,v}(x) = min over generators F of lambda_{(F),v}(x)
//   delta_v(x, y)   = log( max_i |x_i|_v * max_j |y_j|_v / max_{i<j} |x_i y_j - x_j y_i|_v )
//
// With coprime integer coordinates max_i |x_i|_p = 1, so at a prime p the
// first one is v_p(F(x)) log p, computed exactly before the conversion.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "arithdyn/exactnum.hpp"
#include "arithdyn/geometry.hpp"
#include "arithdyn/polynomial.hpp"

namespace arithdyn {

class Place {
public:
    static Place infinite() { return Place(0); }
    // Throws DomainError unless p is prime.
    static Place finite(std::uint64_t p);
    // "inf" or a prime, as in configs.
    static Place parse(std::string_view text);

    bool is_infinite() const { return p_ == 0; }
    // Throws DomainError for the infinite place.
    std::uint64_t prime() const;

    std::string to_string() const;
    // "lambda_inf", "lambda_p<p>"
    std::string column_name() const;

    // inf sorts first, then primes ascending.
    auto operator<=>(const Place&) const = default;

private:
    explicit Place(std::uint64_t p) : p_(p) {}
    std::uint64_t p_;
};

// |q|_v with |p|_p = 1/p. Throws DomainError for q == 0.
double local_abs(const BigRat& q, const Place& v);
// Exact v_p(q) for the finite-place accessor.
long local_valuation(const BigRat& q, const Place& v);

// log max_i |x_i| for the canonical coprime representative.
double naive_height(const ProjPoint& x);

// An effective divisor (F): integer coefficients, content 1.
class DivisorData {
public:
    // Rescales to integer coefficients with content 1. Throws on F == 0.
    explicit DivisorData(const HomogeneousForm& form);

    const HomogeneousForm& form() const { return form_; }
    unsigned degree() const { return form_.degree(); }
    std::size_t nvars() const { return form_.nvars(); }
    // Exact integer F(x).
    BigInt value_at(const ProjPoint& x) const;

private:
    HomogeneousForm form_;
};

// Y = D_1 cap ... cap D_r.
class SubschemeData {
public:
    explicit SubschemeData(std::vector<DivisorData> generators);
    SubschemeData(std::initializer_list<HomogeneousForm> generators);

    const std::vector<DivisorData>& generators() const { return generators_; }
    std::size_t nvars() const { return generators_.front().nvars(); }
    bool contains(const ProjPoint& x) const;

private:
    std::vector<DivisorData> generators_;
};

// The reduced point y, cut out by the nonzero 2x2 minors X_i y_j - X_j y_i.
SubschemeData point_subscheme(const ProjPoint& y);
// e_i, cut out by the coordinate forms X_j, j != i.
SubschemeData coordinate_point_subscheme(std::size_t nvars, std::size_t i);

// Throws OnSupport when F(x) = 0.
double local_height_divisor(const ProjPoint& x, const DivisorData& d, const Place& v);
// v_p(F(x)); throws OnSupport when F(x) = 0.
unsigned long local_height_divisor_valuation(const ProjPoint& x, const DivisorData& d, std::uint64_t p);

// Generators vanishing at x contribute +infinity to the min and are
// skipped. Throws OnSupport when all vanish.
double local_height_subscheme(const ProjPoint& x, const SubschemeData& y, const Place& v);

struct GlobalHeight {
    double archimedean;
    // sum over all primes, = log finite_gcd.
    double finite;
    BigInt finite_gcd;
    double total;
};

// Sum over every place. The finite part needs no factorization: for
// coprime x, min_i v_p(G_i(x)) = v_p(gcd_i G_i(x)) at every p.
GlobalHeight global_height_subscheme(const ProjPoint& x, const SubschemeData& y);

// Throws OnSupport when x == y.
double arithmetic_distance(const ProjPoint& x, const ProjPoint& y, const Place& v);

// gcd of the 2x2 minors x_i y_j - x_j y_i; zero iff x == y.
BigInt minors_gcd(const ProjPoint& x, const ProjPoint& y);

} // namespace arithdyn
