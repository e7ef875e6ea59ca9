#pragma once
// Helpers shared by the unit tests: parsing shortcuts and random generators.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "arithdyn/exact_linalg.hpp"
#include "arithdyn/geometry.hpp"
#include "arithdyn/parser.hpp"
#include "arithdyn/polynomial.hpp"

namespace testing {

using namespace arithdyn;

inline const std::vector<std::string>& xyz() {
    static const std::vector<std::string> v{"X", "Y", "Z"};
    return v;
}

inline const std::vector<std::string>& xy() {
    static const std::vector<std::string> v{"X", "Y"};
    return v;
}

inline HomogeneousForm form(const std::string& text, const std::vector<std::string>& vars = xyz()) {
    return parse_form(text, vars);
}

inline Morphism morph(const std::string& text) { return parse_morphism(text); }

inline ProjPoint pt(std::initializer_list<long> c) { return ProjPoint::normalize(c); }

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    long range(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }

    long nonzero(long bound) {
        long v = 0;
        while (v == 0) v = range(-bound, bound);
        return v;
    }

    bool coin() { return range(0, 1) == 1; }

    BigInt big(unsigned bits) {
        BigInt v = 0;
        for (unsigned k = 0; k < bits; k += 30) v = (v << 30) + range(0, (1L << 30) - 1);
        return coin() ? -v : v;
    }

    ProjPoint point(std::size_t nvars, long bound) {
        std::vector<BigInt> c(nvars);
        do {
            for (auto& a : c) a = range(-bound, bound);
        } while (std::all_of(c.begin(), c.end(), [](const BigInt& a) { return a == 0; }));
        return ProjPoint::normalize(std::span<const BigInt>(c));
    }

    // Random homogeneous form with integer coefficients, possibly sparse.
    HomogeneousForm form(std::size_t nvars, unsigned degree, long bound) {
        for (;;) {
            Polynomial p(nvars);
            add_monomials(p, Exponents(nvars, 0), 0, degree, bound);
            if (!p.is_zero()) return HomogeneousForm(p, degree);
        }
    }

    // Invertible integer matrix with small entries.
    RatMatrix invertible(std::size_t n, long bound) {
        for (;;) {
            RatMatrix m(n, std::vector<BigRat>(n));
            for (auto& row : m)
                for (auto& a : row) a = range(-bound, bound);
            if (rational_determinant(m) != 0) return m;
        }
    }

    std::mt19937_64& engine() { return gen_; }

private:
    void add_monomials(Polynomial& p, Exponents e, std::size_t var, unsigned left, long bound) {
        if (var + 1 == e.size()) {
            e[var] = left;
            if (range(0, 2) != 0) p.add_term(e, BigRat(range(-bound, bound)));
            return;
        }
        for (unsigned k = 0; k <= left; ++k) {
            e[var] = k;
            add_monomials(p, e, var + 1, left - k, bound);
        }
    }

    std::mt19937_64 gen_;
};

// Morphism (l_0 : ... : l_N) for an invertible matrix.
inline Morphism linear_map(const RatMatrix& m) { return Morphism(LinearAut(m).as_forms()); }

// The monomial map X_i^d, precomposed and postcomposed with linear maps.
inline Morphism twisted_power_map(std::size_t nvars, unsigned d, const RatMatrix& outer, const RatMatrix& inner) {
    std::vector<HomogeneousForm> forms;
    for (std::size_t i = 0; i < nvars; ++i) {
        Exponents e(nvars, 0);
        e[i] = d;
        forms.emplace_back(Polynomial::monomial(e, 1), d);
    }
    return linear_map(outer).after(Morphism(forms)).after(linear_map(inner));
}

// A base-point-free triangular map on P^2:
// (X^d : Y^d + X*A : Z^d + X*B + Y*C) with A, B, C of degree d-1.
inline Morphism triangular_map(Rng& rng, unsigned d, long bound) {
    const auto X = HomogeneousForm::variable(3, 0);
    const auto Y = HomogeneousForm::variable(3, 1);
    const auto Z = HomogeneousForm::variable(3, 2);
    auto power = [](const HomogeneousForm& v, unsigned k) {
        HomogeneousForm r = v;
        for (unsigned i = 1; i < k; ++i) r = r * v;
        return r;
    };
    auto low = [&] {
        HomogeneousForm a = rng.form(3, d - 1, bound);
        return a;
    };
    return Morphism({power(X, d), power(Y, d) + X * low(), power(Z, d) + X * low() + Y * low()});
}

// Linear automorphism sending the last basis vector to y.
inline RatMatrix matrix_with_last_column(Rng& rng, const ProjPoint& y) {
    const std::size_t n = y.size();
    for (;;) {
        RatMatrix m(n, std::vector<BigRat>(n));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j + 1 < n; ++j) m[i][j] = rng.range(-3, 3);
            m[i][n - 1] = y[i];
        }
        if (rational_determinant(m) != 0) return m;
    }
}

} // namespace testing
