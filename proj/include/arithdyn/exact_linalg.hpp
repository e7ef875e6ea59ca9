#pragma once

// Dense exact linear algebra at desk scale: fraction-free (Bareiss)
// elimination over Z, and Gauss-Jordan over Q for small inverses.

#include <cstddef>
#include <vector>

#include "arithdyn/exactnum.hpp"

namespace arithdyn {

using IntMatrix = std::vector<std::vector<BigInt>>;
using RatMatrix = std::vector<std::vector<BigRat>>;

BigInt bareiss_determinant(IntMatrix m);

// Rank by fraction-free elimination. Every intermediate entry is a minor
// of the input, so the per-step division is exact.
std::size_t bareiss_rank(IntMatrix m);

// Clears denominators row by row, then runs bareiss_rank.
std::size_t rational_rank(const RatMatrix& m);

BigRat rational_determinant(const RatMatrix& m);

// Throws DomainError when the matrix is singular or not square.
RatMatrix rational_inverse(const RatMatrix& m);

RatMatrix multiply(const RatMatrix& a, const RatMatrix& b);

// Scales a rational row to a primitive integer row (same span over Q).
std::vector<BigInt> primitive_integer_row(const std::vector<BigRat>& row);

} // namespace arithdyn
