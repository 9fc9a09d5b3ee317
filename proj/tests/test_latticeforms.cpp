#include "doctest.h"
#include "okalab/errors.hpp"
#include "okalab/latticeforms.hpp"
#include "oracles.hpp"

using namespace okalab;

namespace {

using V = GaussianLatticeVector;

oracle::GInt brute(const HermitianFormSpec& w, const V& u, const V& v) {
    return oracle::form_pairing_bruteforce(w.n, w.d, w.offdiag, u.a, u.b, v.a, v.b);
}

}  // namespace

TEST_CASE("pairings with the Takayama form") {
    for (std::int64_t d : {2, 4, 7}) {
        const HermitianFormSpec w{3, d, true};
        for (int j : {2, 3}) {
            CAPTURE(d);
            CAPTURE(j);
            CHECK(pair_form(w, V::ie(1, 3), V::e(j, 3)) == -2);
            CHECK(brute(w, V::ie(1, 3), V::e(j, 3)).re == -2);
        }
        CHECK(pair_form(w, V::e(1, 3), V::ie(1, 3)) == 2 * d);
        CHECK(brute(w, V::e(1, 3), V::ie(1, 3)).re == 2 * d);
        CHECK(pair_form(w, V::e(1, 3), V::e(2, 3)) == 0);
        CHECK(brute(w, V::e(1, 3), V::e(2, 3)).re == 0);
    }
    const HermitianFormSpec diag{3, 4, false};
    CHECK(pair_form(diag, V::ie(1, 3), V::e(2, 3)) == 0);
}

TEST_CASE("exact pairing is real") {
    const HermitianFormSpec w{4, 3, true};
    const V u{{1, -2, 0, 5}, {3, 1, -1, 0}};
    const V v{{0, 4, 2, -1}, {-2, 0, 1, 1}};
    const GaussianInt g = pair_form_exact(w, u, v);
    CHECK(g.im == 0);
    CHECK(g.re == brute(w, u, v).re);
    CHECK(brute(w, u, v).im == 0);
}

TEST_CASE("cycle survival") {
    const auto cov = SublatticeDecl::covering(3);
    CHECK(cycle_survives(V::ie(1, 3), V::e(2, 3), cov));
    CHECK_FALSE(cycle_survives(V::e(1, 3), V::e(2, 3), cov));
    CHECK(cycle_survives(V::ie(1, 3).scaled(2), V::e(2, 3) + V::e(3, 3).scaled(3), cov));
    // rational but not integral combination
    const SublatticeDecl two{{V::e(1, 2).scaled(2), V::ie(1, 2)}};
    CHECK_FALSE(cycle_survives(V::e(1, 2), V::ie(1, 2), two));
    CHECK(cycle_survives(V::e(1, 2).scaled(4), V::ie(1, 2).scaled(-3), two));
}

TEST_CASE("sublattice validation") {
    CHECK_NOTHROW(SublatticeDecl::covering(3).validate());
    CHECK_NOTHROW(SublatticeDecl::deck(3).validate());
    CHECK_THROWS_AS((SublatticeDecl{{V::e(1, 3), V::e(1, 3).scaled(2)}}).validate(), PreconditionError);
    CHECK_THROWS_AS((SublatticeDecl{{V::e(1, 3), V::e(1, 2)}}).validate(), PreconditionError);
}

TEST_CASE("Takayama verdicts") {
    const auto rep = takayama_verdict({3, 4, true}, SublatticeDecl::covering(3));
    CHECK(rep.obstruction);
    REQUIRE(rep.witness.has_value());
    CHECK(rep.witness->u == V::ie(1, 3));
    CHECK(rep.witness->v == V::e(2, 3));
    CHECK(rep.witness->value == -2);
    CHECK(rep.cycles_checked == 3);
    CHECK(rep.warnings.empty());

    const auto diag = takayama_verdict({3, 4, false}, SublatticeDecl::covering(3));
    CHECK_FALSE(diag.obstruction);
    CHECK(diag.cycles_checked == 3);

    const auto small = takayama_verdict({2, 4, true}, SublatticeDecl::covering(2));
    CHECK_FALSE(small.warnings.empty());
    CHECK(small.obstruction);
}

TEST_CASE("lattice vector syntax") {
    const V v = parse_lattice_vector("2*ie1 + e2 - 3*e3", 3);
    CHECK(v == V::ie(1, 3).scaled(2) + V::e(2, 3) + V::e(3, 3).scaled(-3));
    CHECK(parse_lattice_vector(to_string(v), 3) == v);
    CHECK_THROWS_AS(parse_lattice_vector("e4", 3), PreconditionError);
    CHECK_THROWS_AS(parse_lattice_vector("x1", 3), PreconditionError);
    CHECK_THROWS_AS(parse_lattice_vector("", 3), PreconditionError);
}

TEST_CASE("Gaussian integer overflow is reported") {
    const GaussianInt big{INT64_MAX / 2 + 1, 0};
    CHECK_THROWS((big + big));
    CHECK_THROWS((big * GaussianInt{4, 0}));
}
