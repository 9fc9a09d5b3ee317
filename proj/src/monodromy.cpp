#include "okalab/monodromy.hpp"

#include <cfloat>
#include <cmath>
#include <sstream>

#include "okalab/errors.hpp"

namespace okalab {

namespace {

EvalResult multiply(const EvalResult& a, const EvalResult& b) {
    EvalResult r;
    r.value = a.value * b.value;
    r.rel_error_bound = (1.0 + a.rel_error_bound) * (1.0 + b.rel_error_bound) - 1.0 + 2.0 * DBL_EPSILON;
    r.nu_terms = std::max(a.nu_terms, b.nu_terms);
    r.mu_terms = std::max(a.mu_terms, b.mu_terms);
    r.status = (a.status == EvalStatus::certified && b.status == EvalStatus::certified)
                   ? EvalStatus::certified
                   : EvalStatus::rounding_limited;
    return r;
}

FactorResult ratio(const EvalResult& num, const EvalResult& den) {
    return {num.value / den.value,
            (num.rel_error_bound + den.rel_error_bound) / (1.0 - den.rel_error_bound) + 2.0 * DBL_EPSILON};
}

std::string describe(cplx z) {
    std::ostringstream os;
    os.precision(6);
    os << "(" << z.real() << ", " << z.imag() << ")";
    return os.str();
}

EvalResult checked_eval(const FunctionHandle& f, const BranchedPoint& zb, cplx w,
                        const TruncationBudget& budget) {
    EvalResult e = f(zb, w, budget);
    if (!e.certified_nonzero()) {
        throw ZeroProximityError(f.tag() + " is not certified nonzero at z = " + describe(zb.point()) +
                                 ", w = " + describe(w) + " (divisor meets the sampled cycle)");
    }
    return e;
}

BranchedPoint continued_once(const BranchedPoint& zb) {
    return continue_branch(zb, LoopPath::circle_through(zb.point(), 1, 16));
}

}  // namespace

FunctionHandle::FunctionHandle(std::string tag, Evaluator eval, std::vector<SheetFamily> zero_sheets)
    : tag_(std::move(tag)), eval_(std::move(eval)), sheets_(std::move(zero_sheets)) {}

FunctionHandle FunctionHandle::fplus() {
    return FunctionHandle("fplus", [](const BranchedPoint& zb, cplx w, const TruncationBudget& b) {
        return eval_fplus(zb, w, b);
    }, {SheetFamily{1, {0.0, 0.0}}});
}

FunctionHandle FunctionHandle::fminus() {
    return FunctionHandle("fminus", [](const BranchedPoint& zb, cplx w, const TruncationBudget& b) {
        return eval_fminus(zb, w, b);
    }, {SheetFamily{-1, {0.0, 0.0}}});
}

FunctionHandle FunctionHandle::fplus_shift(cplx lambda) {
    const ShiftParam lam{lambda};
    return FunctionHandle("fplus_shift", [lam](const BranchedPoint& zb, cplx w, const TruncationBudget& b) {
        return eval_fplus_shift(lam, zb, w, b);
    }, {SheetFamily{1, lambda}});
}

FunctionHandle operator*(const FunctionHandle& a, const FunctionHandle& b) {
    std::vector<SheetFamily> sheets = a.sheets_;
    sheets.insert(sheets.end(), b.sheets_.begin(), b.sheets_.end());
    return FunctionHandle(a.tag_ + "*" + b.tag_,
                          [ea = a.eval_, eb = b.eval_](const BranchedPoint& zb, cplx w, const TruncationBudget& bud) {
                              return multiply(ea(zb, w, bud), eb(zb, w, bud));
                          },
                          std::move(sheets));
}

void TorusCycle::validate() const {
    if (!(r_z > 0.0) || !(r_w > 0.0) || !std::isfinite(r_z) || !std::isfinite(r_w)) {
        throw PreconditionError("TorusCycle: radii must be positive and finite");
    }
    if (orientation != 1 && orientation != -1) {
        throw PreconditionError("TorusCycle: orientation must be +1 or -1");
    }
}

FactorResult z_loop_factor(const FunctionHandle& f, const BranchedPoint& zb, cplx w,
                           const TruncationBudget& budget) {
    const EvalResult before = checked_eval(f, zb, w, budget);
    const EvalResult after = checked_eval(f, continued_once(zb), w, budget);
    return ratio(after, before);
}

FactorResult w_loop_factor(const FunctionHandle& f, const BranchedPoint& zb, cplx w,
                           const TruncationBudget& budget) {
    if (w == cplx(0.0, 0.0)) throw PreconditionError("w_loop_factor: w must be nonzero");
    const double r = std::abs(w);
    const double a0 = std::arg(w);
    // Open sampled path t in [0, 1]; refinement rejects any zero crossing.
    const LoopPath path = refine_loop(
        [&](double t) { return checked_eval(f, zb, std::polar(r, a0 + kTwoPi * t), budget).value; }, 64,
        false);
    (void)path;
    const EvalResult start = checked_eval(f, zb, w, budget);
    const EvalResult end = checked_eval(f, zb, std::polar(r, a0 + kTwoPi), budget);
    return ratio(end, start);
}

PairingResult chern_pairing(const FunctionHandle& f, const TorusCycle& torus,
                            const TruncationBudget& budget) {
    torus.validate();
    const BranchedPoint base = principal_branch(cplx(torus.r_z, 0.0));
    const BranchedPoint turned = continued_once(base);
    std::size_t used = 0;
    const WindingResult w = adaptive_winding(
        [&](double t) {
            const cplx wv = std::polar(torus.r_w, kTwoPi * t);
            const EvalResult before = checked_eval(f, base, wv, budget);
            const EvalResult after = checked_eval(f, turned, wv, budget);
            return ratio(after, before).value;
        },
        64, &used);
    return {torus.orientation * w.winding, w.residual, used};
}

IntersectionCount torus_intersection_count(const std::vector<SheetFamily>& divisor,
                                           const TorusCycle& torus) {
    torus.validate();
    constexpr double kMargin = 1e-3;
    const double log_rw = std::log(torus.r_w);
    const double log_rz = std::log(torus.r_z);
    IntersectionCount out;
    for (const SheetFamily& fam : divisor) {
        const int s = fam.z_exponent;
        // Sheet k has log-modulus Re(shift) - s * phi + 2 k pi along z = r_z e^{i phi}.
        const double base = fam.shift.real() - log_rw;
        if (s == 0) {
            const double k_near = std::round(-base / kTwoPi);
            if (std::abs(base + kTwoPi * k_near) < kMargin) {
                throw PreconditionError("torus_intersection_count: sheet tangent to |w| = r_w");
            }
            continue;
        }
        const double lo = std::min(-base, -base + kTwoPi * s) / kTwoPi;
        const double hi = std::max(-base, -base + kTwoPi * s) / kTwoPi;
        for (int k = static_cast<int>(std::floor(lo)) - 1; k <= static_cast<int>(std::ceil(hi)) + 1; ++k) {
            const double phi = (base + kTwoPi * k) / s;
            if (!(phi >= 0.0 && phi < kTwoPi)) continue;
            // Local degree of (phi, psi) -> w - g(z) at the crossing: columns
            // A = -dg/dphi and B = d(r_w e^{i psi})/dpsi = i w.
            const cplx log_g = fam.shift + static_cast<double>(s) * cplx(-phi, log_rz) + kTwoPi * k;
            const cplx g = std::exp(log_g);
            const double dlog_rate = std::abs(static_cast<double>(s));
            if (dlog_rate < kMargin) {
                throw PreconditionError("torus_intersection_count: non-transversal crossing");
            }
            const cplx a = -(g * static_cast<double>(-s));
            const cplx b = cplx(0.0, 1.0) * g;
            const double det = (std::conj(a) * b).imag();
            const int sign = (det > 0.0 ? 1 : -1) * torus.orientation;
            out.crossings.push_back({phi, k, sign});
            out.count += sign;
        }
    }
    return out;
}

}  // namespace okalab
