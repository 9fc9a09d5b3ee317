#pragma once

#include "okalab/branchlog.hpp"

namespace okalab {

/// Accuracy request for one evaluation of a Stein product.
class TruncationBudget {
public:
    static constexpr double kMinTarget = 1e-15;
    static constexpr int kMaxTermsCap = 10'000;

    TruncationBudget() = default;
    TruncationBudget(double target_rel_error, int max_terms);

    double target_rel_error() const { return target_; }
    int max_terms() const { return max_terms_; }

private:
    double target_ = 1e-12;
    int max_terms_ = 200;
};

enum class EvalStatus {
    certified,         // rel_error_bound <= target
    rounding_limited,  // truncation meets the target but rounding does not (e.g. near a zero)
};

/// A function value with a bound on |exact - value| / |value|. For an exact
/// zero (a head factor vanishes) the value is 0 and the bound is the one the
/// remaining factors would carry.
struct EvalResult {
    cplx value;
    double rel_error_bound = 0.0;
    int nu_terms = 0;
    int mu_terms = 0;
    EvalStatus status = EvalStatus::certified;

    /// |value| exceeds ten times its own error bound.
    bool certified_nonzero() const {
        return (value.real() != 0.0 || value.imag() != 0.0) && 10.0 * rel_error_bound < 1.0;
    }
};

/// Divisor shift: F+_lambda(z, w) = F+(z, e^{-lambda} w).
struct ShiftParam {
    cplx lambda;

    /// e^{-lambda}, with Im(lambda) reduced modulo 2*pi first; a residue that
    /// is within rounding of zero is snapped so that lambda in 2*pi*i*Z gives
    /// exactly 1.
    cplx inverse_multiplier() const;
};

/// Stein's function whose zero set is the multivalued divisor w = z^i,
/// evaluated on the branch carried by `zb`.
EvalResult eval_fplus(const BranchedPoint& zb, cplx w, const TruncationBudget& budget = {});

/// The companion function for w = z^{-i}; F-(z, w) = F+(1/z, w).
EvalResult eval_fminus(const BranchedPoint& zb, cplx w, const TruncationBudget& budget = {});

EvalResult eval_fplus_shift(const ShiftParam& lam, const BranchedPoint& zb, cplx w,
                            const TruncationBudget& budget = {});

/// exp(i * log z + 2 k pi): the k-th sheet of w = z^i over zb. Bitwise equal
/// to the sheet value used inside eval_fplus, so eval_fplus vanishes exactly
/// there. Requires |k| <= 50.
cplx sheet_point(const BranchedPoint& zb, int k);

/// |sheet_point(zb, k)| = exp(-Im(log z) + 2 k pi), computed without overflow guard.
double sheet_modulus(const BranchedPoint& zb, int k);

/// Number of zeros of w -> F+(zb, w) in r1 < |w| < r2, by the argument
/// principle on both boundary circles.
WindingResult zero_count_annulus(const BranchedPoint& zb, double r1, double r2,
                                 const TruncationBudget& budget = {});

}  // namespace okalab
