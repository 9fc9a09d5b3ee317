#include "okalab/steinfn.hpp"

#include <cfloat>
#include <cmath>
#include <string>
#include <vector>

#include "okalab/errors.hpp"

namespace okalab {

namespace {

constexpr double kUlp = DBL_EPSILON;
constexpr double kTailRatio = 0.0018674427317079893;  // e^{-2 pi}
constexpr double kLn2 = 0.69314718055994530942;

// exp(phase_log + 2 k pi); shared by the sheet enumeration and the products.
cplx sheet_value(cplx phase_log, int k) {
    return std::exp(cplx(phase_log.real() + kTwoPi * k, phase_log.imag()));
}

struct Factor {
    cplx value;
    double rounding = 0.0;  // first-order relative rounding estimate
    bool zero = false;
};

// (s - w) / s with s the nu-th sheet. Past the overflow range of exp the
// equivalent 1 - w e^{-x} is used; those factors round to 1 anyway.
Factor nu_factor(cplx phase_log, int nu, cplx w) {
    const double re = phase_log.real() + kTwoPi * nu;
    if (re > 700.0) {
        const cplx q = w * std::exp(-cplx(re, phase_log.imag()));
        return {1.0 - q, 6.0 * kUlp, false};
    }
    const cplx s = sheet_value(phase_log, nu);
    const cplx diff = s - w;
    if (diff == cplx(0.0, 0.0)) return {cplx(0.0, 0.0), 0.0, true};
    const double exp_err = kUlp * (4.0 + std::abs(cplx(re, phase_log.imag())));
    return {diff / s, 6.0 * kUlp + exp_err * std::abs(w) / std::abs(diff), false};
}

// (w - s) / w with s the (-mu)-th sheet.
Factor mu_factor(cplx phase_log, int mu, cplx w) {
    const cplx x(phase_log.real() - kTwoPi * mu, phase_log.imag());
    const cplx s = sheet_value(phase_log, -mu);
    const cplx diff = w - s;
    if (diff == cplx(0.0, 0.0)) return {cplx(0.0, 0.0), 0.0, true};
    const double exp_err = kUlp * (4.0 + std::abs(x));
    return {diff / w, 6.0 * kUlp + exp_err * std::abs(s) / std::abs(diff), false};
}

// exp(prefactor) * prod_{nu<N} (1 - w / s_nu) * prod_{1<=mu<=M} (1 - s_{-mu} / w),
// where s_k = exp(phase_log + 2 k pi). N and M grow until the certified tail
// bound plus rounding estimate meets the target.
EvalResult stein_product(cplx prefactor, cplx phase_log, cplx w, const TruncationBudget& budget,
                         double exponent_scale) {
    if (w == cplx(0.0, 0.0)) throw PreconditionError("Stein function: w must be nonzero");
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
        throw PreconditionError("Stein function: w must be finite");
    }
    // Leading tail term moduli: nu-side |w| e^{-Re L}, mu-side e^{Re L} / |w|.
    const double log_a = std::log(std::abs(w)) - phase_log.real();
    const double log_b = -log_a;

    auto first_ok = [](double log_lead, int offset) {
        // smallest n >= 0 with exp(log_lead - 2 pi (n + offset)) < 1/2
        double n = std::floor((log_lead + kLn2) / kTwoPi) + 1.0 - offset;
        if (n < 0.0) n = 0.0;
        int k = static_cast<int>(n);
        while (k > 0 && log_lead - kTwoPi * (k - 1 + offset) < -kLn2) --k;
        while (log_lead - kTwoPi * (k + offset) >= -kLn2) ++k;
        return k;
    };
    int n_terms = first_ok(log_a, 0);
    int m_terms = first_ok(log_b, 1);

    auto tail_sum = [&](int n, int m) {
        return (std::exp(log_a - kTwoPi * n) + std::exp(log_b - kTwoPi * (m + 1))) /
               (1.0 - kTailRatio);
    };

    // 10 ulp for exp itself plus the rounding of its argument.
    const double prefactor_rounding = kUlp * (10.0 + 2.0 * exponent_scale);

    std::vector<Factor> nu;
    std::vector<Factor> mu;
    const int cap = budget.max_terms();
    EvalStatus status = EvalStatus::certified;
    double truncation = 0.0;
    double rounding = 0.0;
    for (;;) {
        if (n_terms > cap || m_terms > cap) {
            throw CertificationError("Stein function: truncation budget of " + std::to_string(cap) +
                                     " terms exhausted");
        }
        while (static_cast<int>(nu.size()) < n_terms) nu.push_back(nu_factor(phase_log, static_cast<int>(nu.size()), w));
        while (static_cast<int>(mu.size()) < m_terms) mu.push_back(mu_factor(phase_log, static_cast<int>(mu.size()) + 1, w));
        rounding = prefactor_rounding;
        for (const Factor& f : nu) rounding += f.rounding;
        for (const Factor& f : mu) rounding += f.rounding;

        const double s = tail_sum(n_terms, m_terms);
        truncation = std::expm1(s);
        const double slack = budget.target_rel_error() - rounding;
        if (slack > 0.0 && truncation <= slack) break;
        if (slack <= 0.0 && truncation <= rounding) {
            status = EvalStatus::rounding_limited;
            break;
        }
        const double nu_part = std::exp(log_a - kTwoPi * n_terms);
        const double mu_part = std::exp(log_b - kTwoPi * (m_terms + 1));
        if (nu_part >= mu_part) {
            ++n_terms;
        } else {
            ++m_terms;
        }
    }

    bool zero = false;
    cplx product(1.0, 0.0);
    for (const Factor& f : nu) {
        zero = zero || f.zero;
        product *= f.value;
    }
    for (const Factor& f : mu) {
        zero = zero || f.zero;
        product *= f.value;
    }
    EvalResult r;
    r.nu_terms = n_terms;
    r.mu_terms = m_terms;
    r.rel_error_bound = truncation + rounding;
    r.status = status;
    if (zero) {
        r.value = cplx(0.0, 0.0);
        return r;
    }
    r.value = std::exp(prefactor) * product;
    if (!std::isfinite(r.value.real()) || !std::isfinite(r.value.imag())) {
        throw NumericalError("Stein function: value overflows double precision");
    }
    return r;
}

// i * l, exactly.
cplx times_i(cplx l) { return cplx(-l.imag(), l.real()); }

}  // namespace

TruncationBudget::TruncationBudget(double target_rel_error, int max_terms)
    : target_(target_rel_error), max_terms_(max_terms) {
    if (!(target_rel_error >= kMinTarget) || !std::isfinite(target_rel_error)) {
        throw PreconditionError("TruncationBudget: target_rel_error must be >= 1e-15");
    }
    if (max_terms < 1 || max_terms > kMaxTermsCap) {
        throw PreconditionError("TruncationBudget: max_terms must lie in [1, 10000]");
    }
}

cplx ShiftParam::inverse_multiplier() const {
    double phase = std::remainder(lambda.imag(), kTwoPi);
    if (std::abs(phase) <= 8.0 * kUlp * std::max(1.0, std::abs(lambda.imag()))) phase = 0.0;
    return std::exp(cplx(-lambda.real(), -phase));
}

EvalResult eval_fplus(const BranchedPoint& zb, cplx w, const TruncationBudget& budget) {
    const cplx l = zb.log_value();
    const cplx prefactor = l * l / (4.0 * kPi) + l / cplx(1.0, -1.0);
    return stein_product(prefactor, times_i(l), w, budget, std::abs(l) * std::abs(l) / (4.0 * kPi) + std::abs(l));
}

EvalResult eval_fminus(const BranchedPoint& zb, cplx w, const TruncationBudget& budget) {
    const cplx l = zb.log_value();
    const cplx prefactor = l * l / (4.0 * kPi) - l / cplx(1.0, -1.0);
    return stein_product(prefactor, -times_i(l), w, budget, std::abs(l) * std::abs(l) / (4.0 * kPi) + std::abs(l));
}

EvalResult eval_fplus_shift(const ShiftParam& lam, const BranchedPoint& zb, cplx w,
                            const TruncationBudget& budget) {
    return eval_fplus(zb, lam.inverse_multiplier() * w, budget);
}

cplx sheet_point(const BranchedPoint& zb, int k) {
    if (k < -50 || k > 50) throw PreconditionError("sheet_point: |k| must be <= 50");
    return sheet_value(times_i(zb.log_value()), k);
}

double sheet_modulus(const BranchedPoint& zb, int k) {
    return std::exp(-zb.log_value().imag() + kTwoPi * k);
}

WindingResult zero_count_annulus(const BranchedPoint& zb, double r1, double r2,
                                 const TruncationBudget& budget) {
    if (!(r1 > 0.0) || !(r2 > r1) || !std::isfinite(r2)) {
        throw PreconditionError("zero_count_annulus: need 0 < r1 < r2");
    }
    const double theta = zb.log_value().imag();
    for (double r : {r1, r2}) {
        // sheet moduli e^{-theta + 2 k pi}; check the two nearest in log scale
        const double k_near = (std::log(r) + theta) / kTwoPi;
        for (double k : {std::floor(k_near), std::ceil(k_near)}) {
            const double m = std::exp(-theta + kTwoPi * k);
            if (std::abs(r / m - 1.0) < 1e-3) {
                throw PreconditionError("zero_count_annulus: circle |w| = " + std::to_string(r) +
                                        " is within 1e-3 of a sheet");
            }
        }
    }
    auto circle_winding = [&](double r) {
        return adaptive_winding(
            [&](double t) {
                const EvalResult e = eval_fplus(zb, std::polar(r, kTwoPi * t), budget);
                if (!e.certified_nonzero()) {
                    throw ZeroProximityError("zero_count_annulus: F+ not certified nonzero on |w| = " +
                                             std::to_string(r));
                }
                return e.value;
            },
            64);
    };
    const WindingResult outer = circle_winding(r2);
    const WindingResult inner = circle_winding(r1);
    return {outer.winding - inner.winding, std::max(outer.residual, inner.residual)};
}

}  // namespace okalab
