#pragma once

// Local multiplicities e_f(x) at rational points, computed as the length of
// O_x / (f^* m_{f(x)}) by exact linear algebra on truncations
// Q[u]/(I + m^M), M = 1, 2, ...
//
// If dim_M == dim_{M+1} then m^M lies in I + m^{M+1}, hence in I O_x by
// Nakayama, so the truncated dimension is the length itself. For a finite
// map the fiber ideal is m-primary, m^e lies in I, and the first such M is
// at most e.

#include <cstddef>
#include <span>
#include <vector>

#include "arithdyn/exactnum.hpp"
#include "arithdyn/geometry.hpp"
#include "arithdyn/heights.hpp"
#include "arithdyn/polynomial.hpp"

namespace arithdyn {

inline constexpr unsigned kDefaultTruncationLimit = 64;

// Polynomial generators in N affine variables, each vanishing at base_point.
class LocalIdeal {
public:
    // Throws DomainError if the generators are all zero or one of them does
    // not vanish at base_point.
    LocalIdeal(std::vector<DehomPoly> generators, std::vector<BigRat> base_point);

    std::size_t nvars() const { return base_point_.size(); }
    const std::vector<DehomPoly>& generators() const { return generators_; }
    const std::vector<BigRat>& base_point() const { return base_point_; }
    // Generators after moving base_point to the origin.
    const std::vector<DehomPoly>& centered() const { return centered_; }

private:
    std::vector<DehomPoly> generators_;
    std::vector<BigRat> base_point_;
    std::vector<DehomPoly> centered_;
};

struct MultiplicityReport {
    unsigned value = 0;
    // First M with dim_M == dim_{M+1}.
    unsigned truncation_level = 0;
    bool stabilized = false;
    // dim_Q Q[u]/(I + m^M) for M = 1 .. truncation_level + 1.
    std::vector<std::size_t> dimensions;
};

// Affine chart of x at its largest coordinate, target chart at the largest
// coordinate i of y = f(x); generators y_i F_k - y_k F_i for k != i.
LocalIdeal fiber_ideal(const Morphism& f, const ProjPoint& x);

// Throws NotIsolated if the dimensions have not stabilized by m_max.
MultiplicityReport local_length(const LocalIdeal& ideal, unsigned m_max = kDefaultTruncationLimit);

// e_f(x) through local_length (any N).
MultiplicityReport e_f_report(const Morphism& f, const ProjPoint& x, unsigned m_max = kDefaultTruncationLimit);

// P^1 fast path: the vanishing order of the single local equation.
unsigned e_f_p1(const Morphism& f, const ProjPoint& x);

// e_f(x): the P^1 fast path when N = 1, local_length otherwise.
unsigned e_f_at(const Morphism& f, const ProjPoint& x, unsigned m_max = kDefaultTruncationLimit);

// max { m : I_Y subset m_x^m }, 0 when x is not on Y.
unsigned mult_point_subscheme(const SubschemeData& y, const ProjPoint& x);

// Scheme-theoretic preimage: generators G o f.
SubschemeData pullback(const SubschemeData& y, const Morphism& f);

struct PullbackCheck {
    unsigned lhs;        // mult_x f^-1(Y)
    unsigned e;          // e_f(x)
    unsigned mult_image; // mult_{f(x)} Y
    unsigned rhs;        // e * (mult_image + 1)
    bool holds;          // lhs < rhs
};

// Throws DomainError unless f(x) lies on Y.
PullbackCheck pullback_mult_check(const Morphism& f, const SubschemeData& y, const ProjPoint& x,
                                  unsigned m_max = kDefaultTruncationLimit);

// Jacobian determinant of the forms vanishes at x.
bool is_ramified(const Morphism& f, const ProjPoint& x);

struct PeriodicMultiplicity {
    std::vector<ProjPoint> cycle;
    std::vector<unsigned> multiplicities;
    BigInt product;
    // product^(1/cycle.size())
    double value;
};

// Geometric mean of e_f over the cycle through x. Throws DomainError if x
// does not return to itself within `budget` steps.
PeriodicMultiplicity e_plus_periodic(const Morphism& f, const ProjPoint& x, std::size_t budget = 1000,
                                     unsigned m_max = kDefaultTruncationLimit);

struct BackwardTerm {
    unsigned n;
    // Largest root multiplicity of the fiber of f^n over y, over Qbar.
    unsigned long max_multiplicity;
    double value; // max_multiplicity^(1/n)
};

// Estimator of e_{f,-}(y) for maps of P^1. The fiber of f^n = (P : Q) over
// y = (y0 : y1) is the binary form y1 P - y0 Q; affine roots come from its
// squarefree profile, the root at infinity from the order at w = 0 of the
// swapped chart R(1, w). Throws BudgetExceeded once deg f^n > degree_budget.
std::vector<BackwardTerm> e_minus_p1(const Morphism& f, const ProjPoint& y, unsigned n_max,
                                     unsigned long degree_budget = 4096);

struct ForwardTerm {
    unsigned n;
    BigInt multiplicity; // e_{f^n}(x)
    double value;        // multiplicity^(1/n)
};

// e_{f^n}(x) = prod_{k<n} e_f(f^k(x)) along the orbit, never by composing
// forms. Orbit points off the ramification divisor contribute 1 without a
// local computation.
std::vector<ForwardTerm> e_forward_sequence(const Morphism& f, const ProjPoint& x, unsigned n_max,
                                            unsigned m_max = kDefaultTruncationLimit);

} // namespace arithdyn
