#include <cmath>

#include "doctest.h"
#include "okalab/errors.hpp"
#include "okalab/monodromy.hpp"

using namespace okalab;

TEST_CASE("z-loop factors") {
    const auto zb = BranchedPoint(2.0, std::log(2.0));
    const auto fp = z_loop_factor(FunctionHandle::fplus(), zb, 3.0);
    CHECK(std::abs(fp.value - 3.0) < 1e-10);
    CHECK(fp.rel_error_bound < 1e-10);
    const auto fm = z_loop_factor(FunctionHandle::fminus(), zb, 3.0);
    CHECK(std::abs(fm.value - 1.0 / 3.0) < 1e-10);
    const auto both = FunctionHandle::fplus() * FunctionHandle::fminus();
    CHECK(std::abs(z_loop_factor(both, zb, cplx(0.7, 0.4)).value - 1.0) < 1e-10);
    CHECK(std::abs(z_loop_factor(both, principal_branch(cplx(0.6, -0.3)), 1.7).value - 1.0) < 1e-10);
    // the shifted function picks up e^{-lambda} w, a constant multiple of w
    const auto sh = z_loop_factor(FunctionHandle::fplus_shift(1.0), zb, cplx(-1.0, 2.0));
    CHECK(std::abs(sh.value - std::exp(-1.0) * cplx(-1.0, 2.0)) < 1e-9);
}

TEST_CASE("w-loop factors are trivial") {
    const auto zb = BranchedPoint(2.0, std::log(2.0));
    for (const auto& f : {FunctionHandle::fplus(), FunctionHandle::fminus(), FunctionHandle::fplus_shift(1.0)}) {
        CAPTURE(f.tag());
        CHECK(std::abs(w_loop_factor(f, zb, 3.0).value - 1.0) < 1e-10);
    }
}

TEST_CASE("factor at a zero is refused") {
    CHECK_THROWS_AS(z_loop_factor(FunctionHandle::fplus(), principal_branch(1.0), 1.0), ZeroProximityError);
}

TEST_CASE("Chern pairings on the default torus") {
    const TorusCycle t;
    CHECK(chern_pairing(FunctionHandle::fplus(), t).pairing == 1);
    CHECK(chern_pairing(FunctionHandle::fminus(), t).pairing == -1);
    CHECK(chern_pairing(FunctionHandle::fplus() * FunctionHandle::fminus(), t).pairing == 0);
    const auto sh = chern_pairing(FunctionHandle::fplus_shift(1.0), t);
    CHECK(sh.pairing == 1);
    CHECK(sh.residual < 0.1);
    CHECK(sh.samples_used >= 64);
}

TEST_CASE("orientation reverses the pairing") {
    const TorusCycle rev{1.0, 1.3, -1};
    CHECK(chern_pairing(FunctionHandle::fplus(), rev).pairing == -1);
    CHECK(torus_intersection_count(FunctionHandle::fplus().zero_sheets(), rev).count == -1);
    CHECK_THROWS_AS((TorusCycle{1.0, 1.3, 0}).validate(), PreconditionError);
    CHECK_THROWS_AS((TorusCycle{-1.0, 1.3, 1}).validate(), PreconditionError);
}

TEST_CASE("torus intersection counts") {
    const auto dplus = FunctionHandle::fplus().zero_sheets();
    const auto unit = torus_intersection_count(dplus, {1.0, 1.0, 1});
    CHECK(unit.count == 1);
    REQUIRE(unit.crossings.size() == 1);
    CHECK(unit.crossings[0].phi == doctest::Approx(0.0));
    CHECK(unit.crossings[0].sheet == 0);

    const auto between = torus_intersection_count(dplus, {1.0, 2.0, 1});
    CHECK(between.count == 1);
    CHECK(between.crossings[0].phi == doctest::Approx(kTwoPi - std::log(2.0)));

    CHECK(torus_intersection_count(FunctionHandle::fplus_shift(1.0).zero_sheets(), {1.0, 1.0, 1}).count == 1);
    CHECK(torus_intersection_count(FunctionHandle::fminus().zero_sheets(), {1.0, 1.3, 1}).count == -1);
    // a constant-modulus family is tangent to the torus or misses it
    CHECK(torus_intersection_count({SheetFamily{0, cplx(0.5, 0.0)}}, {1.0, 1.3, 1}).count == 0);
    CHECK_THROWS_AS(torus_intersection_count({SheetFamily{0, cplx(std::log(1.3), 0.0)}}, {1.0, 1.3, 1}),
                    PreconditionError);
}

TEST_CASE("pairing is additive over products") {
    const auto f = FunctionHandle::fplus();
    const auto g = FunctionHandle::fplus_shift(cplx(0.5, 1.0));
    const TorusCycle t{1.0, 1.3, 1};
    CHECK(chern_pairing(f * g, t).pairing == chern_pairing(f, t).pairing + chern_pairing(g, t).pairing);
    CHECK((f * g).zero_sheets().size() == 2);
}
