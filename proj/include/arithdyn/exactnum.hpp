#pragma once

// Exact integer / rational primitives. Everything above this layer goes
// through BigInt and BigRat; the only place a double appears is the
// explicit log_* functions.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace arithdyn {

using BigInt = mpz_class;
// mpq_class stays canonical (gcd(num, den) = 1, den > 0) under arithmetic;
// make_rat() canonicalizes values built from a raw numerator/denominator.
using BigRat = mpq_class;

BigRat make_rat(const BigInt& num, const BigInt& den);
BigInt parse_bigint(std::string_view text);
std::string to_string(const BigInt& n);
std::string to_string(const BigRat& q);

bool is_integer(const BigRat& q);

// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

// Largest k with p^k | n. Throws DomainError if n == 0 or p is not prime.
unsigned long padic_valuation(const BigInt& n, std::uint64_t p);
// v_p(num) - v_p(den).
long padic_valuation(const BigRat& q, std::uint64_t p);

// Natural log of |n|, from the bit length and the leading 53 bits of n.
double log_abs(const BigInt& n);
double log_abs(const BigRat& q);

// Positive gcd of all entries; throws if all are zero.
BigInt gcd_many(std::span<const BigInt> values);
BigInt lcm_of_denominators(std::span<const BigRat> values);

std::size_t bit_length(const BigInt& n);

// Sign of |a| - |b|.
inline int compare_abs(const BigInt& a, const BigInt& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

} // namespace arithdyn
