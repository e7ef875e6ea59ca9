#include "arithdyn/exact_linalg.hpp"

#include <utility>

#include "arithdyn/errors.hpp"

namespace arithdyn {

namespace {

void require_square(std::size_t rows, const auto& m) {
    for (const auto& row : m) {
        if (row.size() != rows) throw DomainError("matrix is not square");
    }
}

} // namespace

BigInt bareiss_determinant(IntMatrix m) {
    const std::size_t n = m.size();
    require_square(n, m);
    if (n == 0) return 1;
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t p = k + 1;
            while (p < n && m[p][k] == 0) ++p;
            if (p == n) return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                m[i][j] = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                mpz_divexact(m[i][j].get_mpz_t(), m[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    BigInt det = m[n - 1][n - 1];
    return sign > 0 ? det : BigInt(-det);
}

std::size_t bareiss_rank(IntMatrix m) {
    const std::size_t rows = m.size();
    if (rows == 0) return 0;
    const std::size_t cols = m.front().size();
    BigInt prev = 1;
    BigInt t;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[r], m[p]);
        const auto& pivot_row = m[r];
        const BigInt& pivot = pivot_row[c];
        for (std::size_t i = r + 1; i < rows; ++i) {
            auto& row = m[i];
            for (std::size_t j = c + 1; j < cols; ++j) {
                // row[j] = (pivot * row[j] - row[c] * pivot_row[j]) / prev
                mpz_mul(row[j].get_mpz_t(), row[j].get_mpz_t(), pivot.get_mpz_t());
                mpz_mul(t.get_mpz_t(), row[c].get_mpz_t(), pivot_row[j].get_mpz_t());
                mpz_sub(row[j].get_mpz_t(), row[j].get_mpz_t(), t.get_mpz_t());
                mpz_divexact(row[j].get_mpz_t(), row[j].get_mpz_t(), prev.get_mpz_t());
            }
            row[c] = 0;
        }
        prev = pivot;
        ++r;
    }
    return r;
}

std::vector<BigInt> primitive_integer_row(const std::vector<BigRat>& row) {
    const BigInt scale = lcm_of_denominators(row);
    std::vector<BigInt> out;
    out.reserve(row.size());
    BigInt g = 0;
    for (const auto& q : row) {
        BigInt v = q.get_num() * (scale / q.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        out.push_back(std::move(v));
    }
    if (g > 1) {
        for (auto& v : out) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    }
    return out;
}

std::size_t rational_rank(const RatMatrix& m) {
    IntMatrix im;
    im.reserve(m.size());
    for (const auto& row : m) im.push_back(primitive_integer_row(row));
    return bareiss_rank(std::move(im));
}

BigRat rational_determinant(const RatMatrix& m) {
    const std::size_t n = m.size();
    require_square(n, m);
    BigRat det = 1;
    IntMatrix im;
    for (const auto& row : m) {
        const BigInt scale = lcm_of_denominators(row);
        det /= scale;
        std::vector<BigInt> irow;
        for (const auto& q : row) irow.push_back(q.get_num() * (scale / q.get_den()));
        im.push_back(std::move(irow));
    }
    det *= BigRat(bareiss_determinant(std::move(im)));
    return det;
}

RatMatrix rational_inverse(const RatMatrix& m) {
    const std::size_t n = m.size();
    require_square(n, m);
    RatMatrix a = m;
    RatMatrix inv(n, std::vector<BigRat>(n, 0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && a[p][c] == 0) ++p;
        if (p == n) throw DomainError("singular matrix");
        std::swap(a[c], a[p]);
        std::swap(inv[c], inv[p]);
        const BigRat pivot = a[c][c];
        for (std::size_t j = 0; j < n; ++j) {
            a[c][j] /= pivot;
            inv[c][j] /= pivot;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || a[i][c] == 0) continue;
            const BigRat factor = a[i][c];
            for (std::size_t j = 0; j < n; ++j) {
                a[i][j] -= factor * a[c][j];
                inv[i][j] -= factor * inv[c][j];
            }
        }
    }
    return inv;
}

RatMatrix multiply(const RatMatrix& a, const RatMatrix& b) {
    if (a.empty()) return {};
    const std::size_t inner = b.size();
    for (const auto& row : a) {
        if (row.size() != inner) throw DomainError("matrix dimension mismatch");
    }
    const std::size_t cols = inner == 0 ? 0 : b.front().size();
    RatMatrix out(a.size(), std::vector<BigRat>(cols, 0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t k = 0; k < inner; ++k)
            for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
    return out;
}

} // namespace arithdyn
