#include "arithdyn/exactnum.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "arithdyn/errors.hpp"

namespace arithdyn {

BigRat make_rat(const BigInt& num, const BigInt& den) {
    if (den == 0) throw DomainError("zero denominator");
    BigRat q(num, den);
    q.canonicalize();
    return q;
}

BigInt parse_bigint(std::string_view text) {
    BigInt n;
    if (text.empty() || n.set_str(std::string(text), 10) != 0)
        throw DomainError("not an integer: '" + std::string(text) + "'");
    return n;
}

std::string to_string(const BigInt& n) { return n.get_str(10); }

std::string to_string(const BigRat& q) { return q.get_str(10); }

bool is_integer(const BigRat& q) { return q.get_den() == 1; }

namespace {

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    base %= m;
    while (e) {
        if (e & 1) r = mulmod(r, base, m);
        base = mulmod(base, base, m);
        e >>= 1;
    }
    return r;
}

} // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    static constexpr std::array<std::uint64_t, 12> small{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    for (auto p : small) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // These twelve bases are a deterministic witness set below 2^64.
    for (auto a : small) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

unsigned long padic_valuation(const BigInt& n, std::uint64_t p) {
    if (n == 0) throw DomainError("valuation of zero");
    if (!is_prime(p)) throw DomainError("valuation at non-prime " + std::to_string(p));
    if (p == 2) return mpz_scan1(n.get_mpz_t(), 0);
    BigInt prime;
    mpz_import(prime.get_mpz_t(), 1, 1, sizeof(p), 0, 0, &p);
    BigInt rest;
    return mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), prime.get_mpz_t());
}

long padic_valuation(const BigRat& q, std::uint64_t p) {
    if (q == 0) throw DomainError("valuation of zero");
    return static_cast<long>(padic_valuation(q.get_num(), p)) -
           static_cast<long>(padic_valuation(q.get_den(), p));
}

double log_abs(const BigInt& n) {
    if (n == 0) throw DomainError("log of zero");
    if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 53) return std::log(std::fabs(n.get_d()));
    long exponent = 0;
    // |mantissa| in [0.5, 1), n = mantissa * 2^exponent (truncated to 53 bits).
    double mantissa = mpz_get_d_2exp(&exponent, n.get_mpz_t());
    return std::log(std::fabs(mantissa)) + static_cast<double>(exponent) * std::numbers::ln2;
}

double log_abs(const BigRat& q) { return log_abs(q.get_num()) - log_abs(q.get_den()); }

BigInt gcd_many(std::span<const BigInt> values) {
    BigInt g = 0;
    for (const auto& v : values) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        if (g == 1) break;
    }
    if (g == 0) throw DomainError("gcd of all-zero list");
    return g;
}

BigInt lcm_of_denominators(std::span<const BigRat> values) {
    BigInt l = 1;
    for (const auto& q : values) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    return l;
}

std::size_t bit_length(const BigInt& n) {
    if (n == 0) return 0;
    return mpz_sizeinbase(n.get_mpz_t(), 2);
}

} // namespace arithdyn
