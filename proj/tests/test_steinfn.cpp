#include <cmath>
#include <random>

#include "doctest.h"
#include "okalab/errors.hpp"
#include "okalab/steinfn.hpp"
#include "oracles.hpp"

using namespace okalab;

namespace {

double rel_diff(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

BranchedPoint log_point(double modulus, double arg) { return BranchedPoint::from_log(cplx(std::log(modulus), arg)); }

}  // namespace

TEST_CASE("F+ vanishes exactly on its own sheet") {
    const auto r = eval_fplus(principal_branch(1.0), 1.0);
    CHECK(r.value == cplx(0.0, 0.0));
    CHECK_FALSE(r.certified_nonzero());
    CHECK(eval_fminus(principal_branch(1.0), 1.0).value == cplx(0.0, 0.0));

    const auto zb = log_point(2.0, 0.4);
    for (int k = -3; k <= 3; ++k) {
        CAPTURE(k);
        CHECK(eval_fplus(zb, sheet_point(zb, k)).value == cplx(0.0, 0.0));
    }
}

TEST_CASE("F+ at w = -1 agrees with the extended-term reference") {
    const auto zb = principal_branch(1.0);
    const auto r = eval_fplus(zb, -1.0);
    CHECK(r.status == EvalStatus::certified);
    CHECK(r.rel_error_bound <= 1e-12);
    const cplx ref = oracle::stein_reference(zb.log_value(), -1.0, 1, r.nu_terms + 50, r.mu_terms + 50);
    CHECK(rel_diff(r.value, ref) <= r.rel_error_bound);
}

TEST_CASE("z-monodromy of the Stein functions") {
    const auto base = BranchedPoint(2.0, std::log(2.0));
    const auto turned = base.shifted(1);
    // w = 1 is not a sheet over z = 2, so both sides are nonzero and equal
    const auto one0 = eval_fplus(base, 1.0);
    const auto one1 = eval_fplus(turned, 1.0);
    CHECK(one0.certified_nonzero());
    CHECK(rel_diff(one1.value, one0.value) <= one0.rel_error_bound + one1.rel_error_bound + 1e-14);

    const cplx w = 3.0;
    const auto p0 = eval_fplus(base, w);
    const auto p1 = eval_fplus(turned, w);
    CHECK(rel_diff(p1.value, w * p0.value) <= p0.rel_error_bound + p1.rel_error_bound + 1e-14);

    const auto m0 = eval_fminus(base, w);
    const auto m1 = eval_fminus(turned, w);
    CHECK(rel_diff(m1.value, m0.value / w) <= m0.rel_error_bound + m1.rel_error_bound + 1e-14);
}

TEST_CASE("reflection identity F-(z, w) = F+(1/z, w)") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> lr(std::log(0.5), std::log(2.0)), ang(-kPi, kPi);
    for (int i = 0; i < 100; ++i) {
        const cplx l(lr(rng), ang(rng));
        const cplx w = std::polar(std::exp(lr(rng)), ang(rng));
        const auto m = eval_fminus(BranchedPoint::from_log(l), w);
        const auto p = eval_fplus(BranchedPoint::from_log(-l), w);
        CHECK(rel_diff(m.value, p.value) <= m.rel_error_bound + p.rel_error_bound);
    }
}

TEST_CASE("shifted function") {
    const auto zb = principal_branch(1.0);
    for (cplx w : {cplx(1.0, 0.0), cplx(-2.0, 0.5), cplx(0.3, -0.1)}) {
        CHECK(eval_fplus_shift({0.0}, zb, w).value == eval_fplus(zb, w).value);
    }
    const auto off = eval_fplus_shift({1.0}, zb, 1.0);
    CHECK(off.certified_nonzero());
    CHECK(std::abs(off.value) > 1e3 * off.rel_error_bound * std::abs(off.value));

    CHECK(ShiftParam{cplx(0.0, 6.0 * kPi)}.inverse_multiplier() == cplx(1.0, 0.0));
    CHECK(eval_fplus_shift({cplx(0.0, 6.0 * kPi)}, zb, 1.0).value == cplx(0.0, 0.0));
    // a real shift of 2 pi moves the w = 1 sheet onto the k = 1 sheet, which
    // is e^{2 pi} up to rounding
    const auto lifted = eval_fplus_shift({kTwoPi}, zb, sheet_point(zb, 1));
    CHECK(std::abs(lifted.value) < 1e-10);
}

TEST_CASE("sheet points") {
    CHECK(sheet_point(principal_branch(1.0), 0) == cplx(1.0, 0.0));
    CHECK(sheet_point(principal_branch(1.0), 1).real() == doctest::Approx(535.4916555247646).epsilon(1e-14));
    const auto i_pt = principal_branch(cplx(0.0, 1.0));
    CHECK(std::abs(sheet_point(i_pt, 0) - std::exp(-kPi / 2)) < 1e-15);
    CHECK(sheet_modulus(i_pt, 2) == doctest::Approx(std::exp(-kPi / 2 + 4 * kPi)));
    CHECK_THROWS_AS(sheet_point(i_pt, 51), PreconditionError);
}

TEST_CASE("annulus zero counts") {
    const auto one = principal_branch(1.0);
    CHECK(zero_count_annulus(one, 0.5, 2.0).winding == 1);
    CHECK(zero_count_annulus(one, 0.5, 600.0).winding == 2);
    CHECK(zero_count_annulus(one, 2.0, 3.0).winding == 0);
    CHECK(zero_count_annulus(one, 1e-4, 1e4).winding == oracle::sheet_count(0.0, 1e-4, 1e4));
    CHECK_THROWS_AS(zero_count_annulus(one, 1.0005, 2.0), PreconditionError);
    CHECK_THROWS_AS(zero_count_annulus(one, 2.0, 1.0), PreconditionError);
}

TEST_CASE("budget validation and exhaustion") {
    CHECK_THROWS_AS(TruncationBudget(1e-16, 200), PreconditionError);
    CHECK_THROWS_AS(TruncationBudget(1e-12, 0), PreconditionError);
    CHECK_THROWS_AS(TruncationBudget(1e-12, 10001), PreconditionError);
    CHECK_THROWS_AS(eval_fplus(principal_branch(1.0), 0.0), PreconditionError);
    // |w| far above the first sheets needs more nu terms than one allows
    CHECK_THROWS_AS(eval_fplus(principal_branch(1.0), 1e6, TruncationBudget(1e-12, 1)), CertificationError);
    const auto loose = eval_fplus(principal_branch(1.0), -1.0, TruncationBudget(1e-3, 200));
    const auto tight = eval_fplus(principal_branch(1.0), -1.0, TruncationBudget(1e-14, 200));
    CHECK(loose.nu_terms + loose.mu_terms <= tight.nu_terms + tight.mu_terms);
    CHECK(loose.rel_error_bound <= 1e-3);
}
