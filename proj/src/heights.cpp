#include "arithdyn/heights.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "arithdyn/errors.hpp"

namespace arithdyn {

Place Place::finite(std::uint64_t p) {
    if (!is_prime(p)) throw DomainError("place " + std::to_string(p) + " is not a prime");
    return Place(p);
}

Place Place::parse(std::string_view text) {
    if (text == "inf" || text == "infinity" || text == "oo") return infinite();
    std::uint64_t p = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), p);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw DomainError("place must be 'inf' or a prime below 2^64, got '" + std::string(text) + "'");
    return finite(p);
}

std::uint64_t Place::prime() const {
    if (is_infinite()) throw DomainError("the infinite place has no prime");
    return p_;
}

std::string Place::to_string() const { return is_infinite() ? "inf" : std::to_string(p_); }

std::string Place::column_name() const { return is_infinite() ? "lambda_inf" : "lambda_p" + std::to_string(p_); }

double local_abs(const BigRat& q, const Place& v) {
    if (q == 0) throw DomainError("absolute value of zero");
    if (v.is_infinite()) return std::fabs(q.get_d());
    return std::pow(static_cast<double>(v.prime()), -static_cast<double>(padic_valuation(q, v.prime())));
}

long local_valuation(const BigRat& q, const Place& v) { return padic_valuation(q, v.prime()); }

double naive_height(const ProjPoint& x) { return log_abs(x.max_abs()); }

// ------------------------------------------------------------------ divisors

DivisorData::DivisorData(const HomogeneousForm& form) {
    if (form.is_zero()) throw DomainError("divisor of the zero form");
    form_ = primitive_forms(std::span<const HomogeneousForm>(&form, 1), true).front();
}

BigInt DivisorData::value_at(const ProjPoint& x) const {
    if (x.size() != nvars()) throw DomainError("point dimension does not match divisor");
    return form_.evaluate(x.coords()).get_num();
}

SubschemeData::SubschemeData(std::vector<DivisorData> generators) : generators_(std::move(generators)) {
    if (generators_.empty()) throw DomainError("subscheme needs at least one generator");
    for (const auto& g : generators_) {
        if (g.nvars() != generators_.front().nvars()) throw DomainError("generators live in different spaces");
    }
}

SubschemeData::SubschemeData(std::initializer_list<HomogeneousForm> generators)
    : SubschemeData([&] {
          std::vector<DivisorData> d;
          for (const auto& f : generators) d.emplace_back(f);
          return d;
      }()) {}

bool SubschemeData::contains(const ProjPoint& x) const {
    return std::all_of(generators_.begin(), generators_.end(),
                       [&](const DivisorData& d) { return d.value_at(x) == 0; });
}

SubschemeData point_subscheme(const ProjPoint& y) {
    const std::size_t n = y.size();
    std::vector<DivisorData> gens;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            Polynomial p = Polynomial::variable(n, i) * BigRat(y[j]) - Polynomial::variable(n, j) * BigRat(y[i]);
            if (!p.is_zero()) gens.emplace_back(HomogeneousForm(std::move(p), 1));
        }
    }
    return SubschemeData(std::move(gens));
}

SubschemeData coordinate_point_subscheme(std::size_t nvars, std::size_t i) {
    if (i >= nvars) throw DomainError("coordinate index out of range");
    std::vector<DivisorData> gens;
    for (std::size_t j = 0; j < nvars; ++j) {
        if (j != i) gens.emplace_back(HomogeneousForm::variable(nvars, j));
    }
    return SubschemeData(std::move(gens));
}

double local_height_divisor(const ProjPoint& x, const DivisorData& d, const Place& v) {
    const BigInt value = d.value_at(x);
    if (value == 0) throw OnSupport("point on divisor: " + x.to_string());
    if (v.is_infinite()) return d.degree() * naive_height(x) - log_abs(value);
    return static_cast<double>(padic_valuation(value, v.prime())) * std::log(static_cast<double>(v.prime()));
}

unsigned long local_height_divisor_valuation(const ProjPoint& x, const DivisorData& d, std::uint64_t p) {
    const BigInt value = d.value_at(x);
    if (value == 0) throw OnSupport("point on divisor: " + x.to_string());
    return padic_valuation(value, p);
}

double local_height_subscheme(const ProjPoint& x, const SubschemeData& y, const Place& v) {
    double best = std::numeric_limits<double>::infinity();
    bool any = false;
    for (const auto& g : y.generators()) {
        if (g.value_at(x) == 0) continue;
        best = std::min(best, local_height_divisor(x, g, v));
        any = true;
    }
    if (!any) throw OnSupport("point on subscheme: " + x.to_string());
    return best;
}

GlobalHeight global_height_subscheme(const ProjPoint& x, const SubschemeData& y) {
    const double arch = local_height_subscheme(x, y, Place::infinite());
    std::vector<BigInt> values;
    for (const auto& g : y.generators()) values.push_back(g.value_at(x));
    BigInt gcd = gcd_many(values);
    const double fin = log_abs(gcd);
    return {arch, fin, std::move(gcd), arch + fin};
}

namespace {

std::vector<BigInt> minors(const ProjPoint& x, const ProjPoint& y) {
    if (x.size() != y.size()) throw DomainError("points live in different spaces");
    std::vector<BigInt> m;
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t j = i + 1; j < x.size(); ++j) m.push_back(x[i] * y[j] - x[j] * y[i]);
    return m;
}

} // namespace

BigInt minors_gcd(const ProjPoint& x, const ProjPoint& y) {
    BigInt g = 0;
    for (const auto& m : minors(x, y)) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), m.get_mpz_t());
    return g;
}

double arithmetic_distance(const ProjPoint& x, const ProjPoint& y, const Place& v) {
    const auto m = minors(x, y);
    if (v.is_infinite()) {
        const BigInt* largest = nullptr;
        for (const auto& v2 : m) {
            if (!largest || compare_abs(v2, *largest) > 0) largest = &v2;
        }
        if (*largest == 0) throw OnSupport("distance to itself is infinite");
        return naive_height(x) + naive_height(y) - log_abs(*largest);
    }
    BigInt g = 0;
    for (const auto& v2 : m) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v2.get_mpz_t());
    if (g == 0) throw OnSupport("distance to itself is infinite");
    return static_cast<double>(padic_valuation(g, v.prime())) * std::log(static_cast<double>(v.prime()));
}

} // namespace arithdyn
