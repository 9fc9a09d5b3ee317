#include <cmath>

#include "doctest.h"
#include "okalab/curvelab.hpp"
#include "okalab/errors.hpp"
#include "oracles.hpp"

using namespace okalab;

TEST_CASE("composition with the entire curve") {
    const cplx zeta(0.3, -1.2);
    const auto g1 = compose_curve(LaurentPoly::parse("z - 1"));
    CHECK(std::abs(g1(zeta) - (std::exp(zeta) - 1.0)) < 1e-14);
    const auto g2 = compose_curve(LaurentPoly::parse("w"));
    CHECK(std::abs(g2(zeta) - std::exp(cplx(0.0, 1.0) * zeta)) < 1e-14);
    const auto g3 = compose_curve(LaurentPoly::parse("z + w - 2"));
    CHECK(std::abs(g3(zeta) - (std::exp(zeta) + std::exp(cplx(0.0, 1.0) * zeta) - 2.0)) < 1e-14);
    CHECK(g3.max_frequency() == doctest::Approx(1.0));
    const auto g4 = compose_curve(LaurentPoly::parse("(0,2)*z^2*w^-1"));
    CHECK(std::abs(g4(zeta) - cplx(0.0, 2.0) * std::exp(cplx(2.0, -1.0) * zeta)) < 1e-13);
}

TEST_CASE("degeneracy and construction") {
    CHECK(nondegenerate(LaurentPoly::parse("z + w - 2")));
    CHECK_FALSE(nondegenerate(LaurentPoly::zero()));
    CHECK_FALSE(nondegenerate(LaurentPoly::parse("0")));
    CHECK_THROWS_AS(LaurentPoly({{1, 0, 1.0}, {1, 0, 2.0}}), PreconditionError);
    CHECK_THROWS_AS(LaurentPoly::parse("z + 2*z"), PreconditionError);
    CHECK_THROWS_AS(LaurentPoly({{1, 0, 0.0}}), PreconditionError);
    CHECK_THROWS_AS(LaurentPoly::parse("z^"), PreconditionError);
    const auto p = LaurentPoly::parse("2*z^3*w^-1 - (1,-2)*w + 3.5");
    CHECK(LaurentPoly::parse(to_string(p)).terms().size() == 3);
}

TEST_CASE("intersection counts against explicit zeros") {
    const auto p = LaurentPoly::parse("z - 1");
    CHECK(count_intersections(p, 7.0).count == oracle::exp_minus_one_zeros(7.0));
    CHECK(count_intersections(p, 7.0).count == 3);
    CHECK(count_intersections(p, 1.0).count == 1);
    CHECK(count_intersections(p, 20.0).count == oracle::exp_minus_one_zeros(20.0));
    // R = 2 pi puts two zeros on the contour; the radius is nudged outward
    const auto nudged = count_intersections(p, kTwoPi);
    CHECK(nudged.radius > kTwoPi);
    CHECK(nudged.count == 3);
    CHECK(count_intersections(LaurentPoly::parse("3"), 5.0).count == 0);
    CHECK_THROWS_AS(count_intersections(LaurentPoly::zero(), 5.0), PreconditionError);
    CHECK_THROWS_AS(count_intersections(p, -1.0), PreconditionError);
}

TEST_CASE("shifted Stein divisor misses the curve") {
    for (double r : {5.0, 10.0, 20.0}) {
        CAPTURE(r);
        CHECK(count_intersections(SteinShiftTarget{1.0}, r).count == 0);
    }
    CHECK_THROWS_AS(count_intersections(SteinShiftTarget{cplx(0.0, 6.0 * kPi)}, 5.0), IdenticallyZeroError);
}

TEST_CASE("z + w - 2 meets the curve more often on larger discs") {
    int prev = 0;
    for (double r : {4.0, 8.0, 16.0, 32.0}) {
        const int c = count_intersections(LaurentPoly::parse("z + w - 2"), r).count;
        CHECK(c >= prev);
        prev = c;
    }
    CHECK(prev > count_intersections(LaurentPoly::parse("z + w - 2"), 4.0).count);
}

TEST_CASE("Phi separates points") {
    const cplx zeta(0.2, -0.7);
    CHECK(phi_separation(zeta, zeta + kTwoPi) > 0.5);
    CHECK(phi_separation(zeta, zeta + cplx(0.0, kTwoPi)) > 0.5);
    const auto [z, w] = phi(zeta + cplx(0.0, kTwoPi));
    CHECK(std::abs(z - phi(zeta).first) < 1e-14);
    CHECK(std::abs(w / phi(zeta).second - std::exp(-kTwoPi)) < 1e-15);

    const auto rep = phi_injectivity(1000, 10.0);
    CHECK(rep.injective);
    CHECK(rep.samples == 1000);
    CHECK(rep.seed == kDefaultSeed);
    CHECK(phi_injectivity(1000, 10.0).min_separation == rep.min_separation);
    CHECK_THROWS_AS(phi_injectivity(50), PreconditionError);
}
