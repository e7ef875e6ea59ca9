#include "arithdyn/multiplicity.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "arithdyn/errors.hpp"
#include "arithdyn/exact_linalg.hpp"
#include "arithdyn/univariate.hpp"

namespace arithdyn {

LocalIdeal::LocalIdeal(std::vector<DehomPoly> generators, std::vector<BigRat> base_point)
    : generators_(std::move(generators)), base_point_(std::move(base_point)) {
    if (generators_.empty() ||
        std::all_of(generators_.begin(), generators_.end(), [](const DehomPoly& g) { return g.is_zero(); }))
        throw DomainError("local ideal needs a nonzero generator");
    for (const auto& g : generators_) {
        if (g.nvars() != base_point_.size()) throw DomainError("generator arity does not match base point");
        if (g.evaluate(base_point_) != 0) throw DomainError("generator does not vanish at the base point");
        centered_.push_back(g.shift(base_point_));
    }
}

namespace {

struct Chart {
    std::size_t index;
    std::vector<BigRat> coords; // x_k / x_index, k != index
};

Chart chart_of(const ProjPoint& x) {
    Chart c{x.max_abs_index(), {}};
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (k != c.index) c.coords.push_back(make_rat(x[k], x[c.index]));
    }
    return c;
}

void monomials_below(std::size_t nvars, unsigned bound, Exponents& current, std::size_t var, unsigned used,
                     std::vector<Exponents>& out) {
    if (var == nvars) {
        out.push_back(current);
        return;
    }
    for (unsigned k = 0; used + k < bound; ++k) {
        current[var] = k;
        monomials_below(nvars, bound, current, var + 1, used + k, out);
    }
    current[var] = 0;
}

// dim_Q Q[u]/(I + m^bound) for generators centered at the origin.
std::size_t truncated_dimension(const std::vector<DehomPoly>& gens, std::size_t nvars, unsigned bound) {
    std::vector<Exponents> basis;
    Exponents scratch(nvars, 0);
    monomials_below(nvars, bound, scratch, 0, 0, basis);
    std::map<Exponents, std::size_t> column;
    for (std::size_t i = 0; i < basis.size(); ++i) column.emplace(basis[i], i);

    RatMatrix rows;
    Exponents e(nvars);
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        const unsigned order = g.min_degree();
        if (order >= bound) continue;
        for (const auto& m : basis) {
            if (total_degree(m) + order >= bound) continue;
            std::vector<BigRat> row(basis.size(), 0);
            for (const auto& [ge, c] : g.terms()) {
                for (std::size_t i = 0; i < nvars; ++i) e[i] = ge[i] + m[i];
                auto it = column.find(e);
                if (it != column.end()) row[it->second] = c;
            }
            rows.push_back(std::move(row));
        }
    }
    return basis.size() - rational_rank(rows);
}

} // namespace

LocalIdeal fiber_ideal(const Morphism& f, const ProjPoint& x) {
    const ProjPoint y = f.apply(x);
    const Chart source = chart_of(x);
    const std::size_t i = y.max_abs_index();
    const auto& forms = f.forms();
    std::vector<DehomPoly> gens;
    for (std::size_t k = 0; k < forms.size(); ++k) {
        if (k == i) continue;
        const HomogeneousForm g = BigRat(y[i]) * forms[k] - BigRat(y[k]) * forms[i];
        gens.push_back(g.dehomogenize(source.index));
    }
    return LocalIdeal(std::move(gens), source.coords);
}

MultiplicityReport local_length(const LocalIdeal& ideal, unsigned m_max) {
    MultiplicityReport report;
    const std::size_t n = ideal.nvars();
    if (n == 0) throw DomainError("local ring of a point in P^0");
    report.dimensions.push_back(truncated_dimension(ideal.centered(), n, 1));
    for (unsigned m = 1; m < m_max; ++m) {
        report.dimensions.push_back(truncated_dimension(ideal.centered(), n, m + 1));
        if (report.dimensions[m] == report.dimensions[m - 1]) {
            report.value = static_cast<unsigned>(report.dimensions[m]);
            report.truncation_level = m;
            report.stabilized = true;
            return report;
        }
    }
    throw NotIsolated("truncated dimensions did not stabilize by M = " + std::to_string(m_max) +
                      ": not isolated or M_max too small");
}

MultiplicityReport e_f_report(const Morphism& f, const ProjPoint& x, unsigned m_max) {
    return local_length(fiber_ideal(f, x), m_max);
}

unsigned e_f_p1(const Morphism& f, const ProjPoint& x) {
    if (f.dimension() != 1) throw DomainError("P^1 fast path needs a map of P^1");
    const LocalIdeal ideal = fiber_ideal(f, x);
    return vanishing_order(ideal.generators().front(), ideal.base_point());
}

unsigned e_f_at(const Morphism& f, const ProjPoint& x, unsigned m_max) {
    if (f.dimension() == 1) return e_f_p1(f, x);
    return e_f_report(f, x, m_max).value;
}

unsigned mult_point_subscheme(const SubschemeData& y, const ProjPoint& x) {
    if (x.size() != y.nvars()) throw DomainError("point dimension does not match subscheme");
    if (!y.contains(x)) return 0;
    const Chart chart = chart_of(x);
    unsigned best = ~0u;
    for (const auto& g : y.generators()) {
        best = std::min(best, vanishing_order(g.form().dehomogenize(chart.index), chart.coords));
    }
    return best;
}

SubschemeData pullback(const SubschemeData& y, const Morphism& f) {
    if (y.nvars() != f.nvars()) throw DomainError("subscheme and morphism live in different spaces");
    std::vector<DivisorData> gens;
    for (const auto& g : y.generators()) gens.emplace_back(compose_form(g.form(), f.forms()));
    return SubschemeData(std::move(gens));
}

PullbackCheck pullback_mult_check(const Morphism& f, const SubschemeData& y, const ProjPoint& x, unsigned m_max) {
    const ProjPoint image = f.apply(x);
    if (!y.contains(image)) throw DomainError("f(x) = " + image.to_string() + " is not on Y");
    PullbackCheck c{};
    c.lhs = mult_point_subscheme(pullback(y, f), x);
    c.e = e_f_at(f, x, m_max);
    c.mult_image = mult_point_subscheme(y, image);
    c.rhs = c.e * (c.mult_image + 1);
    c.holds = c.lhs < c.rhs;
    return c;
}

bool is_ramified(const Morphism& f, const ProjPoint& x) {
    const HomogeneousForm jac = jacobian_det(f.forms());
    return jac.evaluate(x.coords()) == 0;
}

PeriodicMultiplicity e_plus_periodic(const Morphism& f, const ProjPoint& x, std::size_t budget, unsigned m_max) {
    PeriodicMultiplicity out;
    out.cycle.push_back(x);
    ProjPoint cur = f.apply(x);
    while (!(cur == x)) {
        if (out.cycle.size() >= budget)
            throw DomainError("point " + x.to_string() + " is not periodic within " + std::to_string(budget) +
                              " steps");
        out.cycle.push_back(cur);
        cur = f.apply(cur);
    }
    out.product = 1;
    for (const auto& p : out.cycle) {
        const unsigned e = e_f_at(f, p, m_max);
        out.multiplicities.push_back(e);
        out.product *= e;
    }
    out.value = std::exp(log_abs(out.product) / static_cast<double>(out.cycle.size()));
    return out;
}

namespace {

// Order of vanishing at w = 0 of a univariate Polynomial.
unsigned order_at_zero(const Polynomial& p) { return p.is_zero() ? ~0u : p.min_degree(); }

} // namespace

std::vector<BackwardTerm> e_minus_p1(const Morphism& f, const ProjPoint& y, unsigned n_max,
                                     unsigned long degree_budget) {
    if (f.dimension() != 1 || y.size() != 2) throw DomainError("e_minus_p1 needs a map of P^1 and a point of P^1");
    std::vector<BackwardTerm> out;
    Morphism iterate = f;
    for (unsigned n = 1; n <= n_max; ++n) {
        if (n > 1) {
            if (static_cast<unsigned long>(iterate.degree()) * f.degree() > degree_budget)
                throw BudgetExceeded("degree of f^" + std::to_string(n) + " exceeds budget " +
                                     std::to_string(degree_budget));
            iterate = f.after(iterate);
        } else if (f.degree() > degree_budget) {
            throw BudgetExceeded("degree of f exceeds budget " + std::to_string(degree_budget));
        }
        const auto& forms = iterate.forms();
        const HomogeneousForm fiber = BigRat(y[1]) * forms[0] - BigRat(y[0]) * forms[1];
        unsigned long best = 0;
        const UniPoly affine = UniPoly::from_polynomial(fiber.dehomogenize(1));
        if (affine.degree() > 0) {
            for (const auto& factor : squarefree_multiplicities(affine)) best = std::max<unsigned long>(best, factor.multiplicity);
        }
        // Coordinate swap: (X : Y) -> (Y : X) moves infinity to w = 0.
        const unsigned at_infinity = order_at_zero(fiber.dehomogenize(0));
        best = std::max<unsigned long>(best, at_infinity);
        out.push_back({n, best, std::pow(static_cast<double>(best), 1.0 / n)});
    }
    return out;
}

std::vector<ForwardTerm> e_forward_sequence(const Morphism& f, const ProjPoint& x, unsigned n_max, unsigned m_max) {
    const HomogeneousForm jac = jacobian_det(f.forms());
    std::map<ProjPoint, unsigned> cache;
    std::vector<ForwardTerm> out;
    BigInt product = 1;
    ProjPoint cur = x;
    for (unsigned n = 1; n <= n_max; ++n) {
        auto it = cache.find(cur);
        unsigned e;
        if (it != cache.end()) {
            e = it->second;
        } else {
            e = jac.evaluate(cur.coords()) != 0 ? 1u : e_f_at(f, cur, m_max);
            cache.emplace(cur, e);
        }
        product *= e;
        out.push_back({n, product, std::exp(log_abs(product) / n)});
        cur = f.apply(cur);
    }
    return out;
}

} // namespace arithdyn
