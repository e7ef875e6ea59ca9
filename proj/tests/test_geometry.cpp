#include <doctest.h>

#include "arithdyn/errors.hpp"
#include "arithdyn/geometry.hpp"
#include "support.hpp"

using namespace arithdyn;
using testing::morph;
using testing::pt;

namespace {

const RatMatrix kSigma{{1, 1, 1}, {2, 1, 1}, {1, -1, 1}};

ProjPoint from_rats(std::initializer_list<BigRat> q) {
    std::vector<BigRat> v(q);
    return ProjPoint::normalize(std::span<const BigRat>(v));
}

} // namespace

TEST_CASE("normalize examples") {
    CHECK(pt({2, 4, 6}).to_string() == "(1 : 2 : 3)");
    CHECK(pt({0, -2, 4}).to_string() == "(0 : 1 : -2)");
    CHECK(from_rats({BigRat(1, 2), BigRat(3, 2), BigRat(-5, 2)}) == pt({1, 3, -5}));
    CHECK_THROWS_AS(pt({0, 0, 0}), DomainError);
    CHECK_THROWS_AS(pt({5}), DomainError);
}

TEST_CASE("parse_point") {
    CHECK(parse_point("(2 : 3 : -4)") == pt({2, 3, -4}));
    CHECK(parse_point("(1/2:1/3)") == pt({3, 2}));
    CHECK(parse_point("inf") == pt({1, 0}));
    CHECK(parse_point("-3/4") == pt({-3, 4}));
    CHECK(parse_point("0") == pt({0, 1}));
    CHECK_THROWS_AS(parse_point("(1 : x)"), ParseError);
    CHECK_THROWS_AS(parse_point("(0 : 0)"), Error);
}

TEST_CASE("apply examples") {
    CHECK(morph("(X^3 : Y^3 : Z^3)").apply(pt({1, 3, -5})) == pt({1, 27, -125}));
    const Morphism f = conjugate(morph("(X^3 : Y^3 : Z^3)"), LinearAut(kSigma));
    CHECK(f.apply(pt({2, 3, -4})) == pt({26, 63, -88}));
    CHECK(morph("(X : Y : Z + X)").apply(pt({1, 1, 0})) == pt({1, 1, 1}));
    CHECK_THROWS_WITH_AS(morph("(X^2 : X*Y : X*Z)").apply(pt({0, 1, 1})), doctest::Contains("indeterminate point"),
                         IndeterminatePoint);
    CHECK_THROWS_AS(morph("(X^2 : Y^2)").apply(pt({1, 2, 3})), DomainError);
}

TEST_CASE("linear automorphisms") {
    const LinearAut s(kSigma);
    CHECK(apply_linear(s, pt({2, 3, -4})) == pt({1, 3, -5}));
    CHECK(apply_linear(inverse_linear(s), pt({1, 27, -125})) == pt({26, 63, -88}));
    CHECK(LinearAut::identity(3).apply(pt({7, -1, 2})) == pt({7, -1, 2}));
    CHECK_THROWS_WITH_AS(LinearAut(RatMatrix{{1, 2}, {2, 4}}), doctest::Contains("singular matrix"), DomainError);
    CHECK_THROWS_AS(LinearAut(RatMatrix{{1, 2}}), DomainError);
}

TEST_CASE("conjugate examples") {
    const Morphism g = morph("(X^3 : Y^3 : Z^3)");
    const LinearAut s(kSigma);
    const Morphism f = conjugate(g, s);
    CHECK(f.to_string() == "(7*X^3 + 9*X^2*Y + 9*X^2*Z + 3*X*Y^2 + 6*X*Y*Z + 3*X*Z^2 : "
                           "3*X^2*Y + 6*X*Y*Z + Y^3 + 3*Y*Z^2 : "
                           "-6*X^3 - 9*X^2*Y - 6*X^2*Z - 6*X*Y*Z + 3*Y^2*Z + Z^3)");
    CHECK(conjugate(g, LinearAut::identity(3)) == g);
    CHECK(conjugate(f, s.inverse()) == g);
    CHECK_THROWS_AS(conjugate(g, LinearAut::identity(2)), DomainError);
}

TEST_CASE("morphism construction") {
    CHECK_THROWS_AS(morph("(X^2 : Y)"), Error);
    CHECK_THROWS_AS(morph("(0 : 0)"), Error);
    CHECK_THROWS_AS(morph("(X^2)"), Error);
    // content and sign are normalized
    CHECK(morph("(2*X^2 : 4*Y^2)") == morph("(X^2 : 2*Y^2)"));
    CHECK(morph("(-X : -Y)") == morph("(X : Y)"));
    // affine shorthand on P^1
    CHECK(morph("z^2 - 1") == morph("(X^2 - Y^2 : Y^2)"));
}

TEST_CASE("composition and iteration") {
    const Morphism f = morph("(X^2 - Y^2 : Y^2)");
    const Morphism f3 = f.iterate(3);
    CHECK(f3.degree() == 8);
    testing::Rng rng(20);
    for (int i = 0; i < 20; ++i) {
        const ProjPoint x = rng.point(2, 30);
        CHECK(f3.apply(x) == f.apply(f.apply(f.apply(x))));
    }
    CHECK(f.iterate(0) == morph("(X : Y)"));
}

TEST_CASE("validate_morphism") {
    const auto certified = validate_morphism(morph("(X^2 + Y^2 : X*Y)"));
    CHECK(certified.status == MorphismStatus::Certified);
    REQUIRE(certified.resultant);
    CHECK(*certified.resultant == 1);
    CHECK(validate_morphism(morph("(X^2 - Y^2 : X*Y - Y^2)")).status == MorphismStatus::Rejected);
    CHECK(validate_morphism(morph("(X^2 : Y^2 : Z^2)")).status == MorphismStatus::RuntimeGuarded);
    // common root at infinity: both forms divisible by Y
    CHECK(validate_morphism(morph("(X*Y : Y^2)")).status == MorphismStatus::Rejected);
    CHECK(to_string(MorphismStatus::RuntimeGuarded) == "runtime-guarded");
}

TEST_CASE("apply respects projective equivalence") {
    testing::Rng rng(21);
    const Morphism f = conjugate(morph("(X^3 : Y^3 : Z^3)"), LinearAut(kSigma));
    for (int i = 0; i < 200; ++i) {
        const ProjPoint x = rng.point(3, 100);
        const long t = rng.nonzero(1000);
        std::vector<BigInt> tx;
        for (const auto& a : x.coords()) tx.push_back(a * t);
        CHECK(f.apply(ProjPoint::normalize(std::span<const BigInt>(tx))) == f.apply(x));
    }
}

TEST_CASE("conjugate agrees with pointwise conjugation") {
    testing::Rng rng(22);
    for (int i = 0; i < 50; ++i) {
        const unsigned d = static_cast<unsigned>(rng.range(1, 3));
        const Morphism g = testing::triangular_map(rng, d, 3);
        const LinearAut s(rng.invertible(3, 2));
        const Morphism f = conjugate(g, s);
        CHECK(f.degree() == g.degree());
        for (int k = 0; k < 5; ++k) {
            const ProjPoint x = rng.point(3, 20);
            CHECK(f.apply(x) == s.inverse().apply(g.apply(s.apply(x))));
        }
    }
}

TEST_CASE("orbit coordinates stay coprime") {
    const Morphism f = conjugate(morph("(X^3 : Y^3 : Z^3)"), LinearAut(kSigma));
    ProjPoint x = pt({2, 3, -4});
    for (int n = 0; n < 6; ++n) {
        x = f.apply(x);
        CHECK(gcd_many(x.coords()) == 1);
        CHECK(x.size() == 3);
    }
}
