#include "okalab/branchlog.hpp"

#include <cmath>
#include <string>

#include "okalab/errors.hpp"
#include "okalab/parallel.hpp"

namespace okalab {

namespace {

bool is_zero(cplx z) { return z.real() == 0.0 && z.imag() == 0.0; }

bool is_finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Principal phase of b / a without forming the quotient.
double phase_step(cplx a, cplx b) { return std::arg(b * std::conj(a)); }

}  // namespace

BranchedPoint::BranchedPoint(cplx point, cplx log_value) : point_(point), log_value_(log_value) {
    if (is_zero(point) || !is_finite(point)) {
        throw PreconditionError("BranchedPoint: point must be finite and nonzero");
    }
    if (!is_finite(log_value)) throw PreconditionError("BranchedPoint: non-finite log value");
    const cplx back = std::exp(log_value);
    if (std::abs(back - point) > 1e-12 * std::abs(point)) {
        throw PreconditionError("BranchedPoint: exp(log_value) does not reproduce point");
    }
}

BranchedPoint BranchedPoint::from_log(cplx log_value) {
    if (!is_finite(log_value)) throw PreconditionError("BranchedPoint: non-finite log value");
    const cplx p = std::exp(log_value);
    if (is_zero(p) || !is_finite(p)) {
        throw PreconditionError("BranchedPoint: exp(log_value) under/overflows");
    }
    return BranchedPoint(p, log_value, Unchecked{});
}

BranchedPoint BranchedPoint::shifted(int turns) const {
    return BranchedPoint(point_, log_value_ + cplx(0.0, kTwoPi * turns), Unchecked{});
}

LoopPath::LoopPath(std::vector<cplx> samples, bool closed)
    : samples_(std::move(samples)), closed_(closed) {
    if (samples_.size() < 8) throw PreconditionError("LoopPath: at least 8 samples required");
    for (const cplx& s : samples_) {
        if (is_zero(s) || !is_finite(s)) {
            throw ContinuationError("LoopPath: sample is zero or non-finite");
        }
    }
}

LoopPath LoopPath::circle_through(cplx start, int turns, std::size_t per_turn) {
    if (is_zero(start)) throw PreconditionError("circle_through: start must be nonzero");
    if (per_turn < 8) per_turn = 8;
    const double r = std::abs(start);
    const double a0 = std::arg(start);
    const std::size_t n = per_turn * static_cast<std::size_t>(turns == 0 ? 1 : std::abs(turns));
    std::vector<cplx> s;
    s.reserve(n);
    s.push_back(start);
    const double dir = turns >= 0 ? 1.0 : -1.0;
    for (std::size_t k = 1; k < n; ++k) {
        s.push_back(std::polar(r, a0 + dir * kTwoPi * static_cast<double>(k) / static_cast<double>(per_turn)));
    }
    if (turns == 0) {
        // Degenerate request: constant path at start.
        std::fill(s.begin(), s.end(), start);
    }
    return LoopPath(std::move(s), true);
}

BranchedPoint principal_branch(cplx z) {
    if (is_zero(z)) throw PreconditionError("principal_branch: log of zero");
    if (!is_finite(z)) throw PreconditionError("principal_branch: non-finite input");
    double phase = std::arg(z);
    // arg(-x - 0i) is -pi; the convention here is (-pi, pi].
    if (phase == -kPi) phase = kPi;
    return BranchedPoint(z, cplx(std::log(std::abs(z)), phase));
}

BranchedPoint continue_branch(const BranchedPoint& start, const LoopPath& path) {
    const auto s = path.samples();
    if (std::abs(s.front() - start.point()) > 1e-9 * std::abs(start.point())) {
        throw PreconditionError("continue_branch: path does not begin at the start point");
    }
    double turned = 0.0;
    const std::size_t steps = path.closed() ? s.size() : s.size() - 1;
    for (std::size_t k = 0; k < steps; ++k) {
        const double d = phase_step(s[k], s[(k + 1) % s.size()]);
        if (std::abs(d) >= kMaxPhaseStep) {
            throw ContinuationError("continue_branch: phase step " + std::to_string(d) +
                                    " exceeds pi/2 at sample " + std::to_string(k));
        }
        turned += d;
    }
    if (path.closed()) {
        const double w = std::round(turned / kTwoPi);
        if (std::abs(turned - kTwoPi * w) >= kPi) {
            throw WindingRejection("continue_branch: closed loop angle sum is not a whole turn");
        }
        return start.shifted(static_cast<int>(w));
    }
    const cplx end = s.back();
    return BranchedPoint(end, cplx(std::log(std::abs(end)), start.log_value().imag() + turned));
}

WindingResult winding_number(std::span<const cplx> values) {
    if (values.empty()) throw PreconditionError("winding_number: no samples");
    double total = 0.0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        const cplx a = values[k];
        const cplx b = values[(k + 1) % values.size()];
        if (is_zero(a) || !is_finite(a)) {
            throw WindingRejection("winding_number: zero or non-finite sample at " + std::to_string(k));
        }
        const double d = phase_step(a, b);
        if (std::abs(d) >= kMaxPhaseStep) {
            throw WindingRejection("winding_number: phase step exceeds pi/2 at sample " +
                                   std::to_string(k));
        }
        total += d;
    }
    const double turns = std::round(total / kTwoPi);
    WindingResult r{static_cast<int>(turns), std::abs(total - kTwoPi * turns)};
    if (!(r.residual < kPi)) throw WindingRejection("winding_number: residual >= pi");
    return r;
}

namespace {

struct Sample {
    double t;
    cplx v;
};

void check_sample(const Sample& s) {
    if (is_zero(s.v) || !is_finite(s.v)) {
        throw WindingRejection("refine_loop: zero or non-finite value at t = " + std::to_string(s.t));
    }
}

// Appends samples strictly after `a` up to and including `b`.
void refine_interval(const LoopSampler& f, const Sample& a, const Sample& b, int depth,
                     int max_depth, std::vector<Sample>& out) {
    if (std::abs(phase_step(a.v, b.v)) < kMaxPhaseStep) {
        out.push_back(b);
        return;
    }
    if (depth >= max_depth) {
        throw WindingRejection("refine_loop: phase jump persists after " +
                               std::to_string(max_depth) + " doublings near t = " +
                               std::to_string(a.t));
    }
    const Sample mid{0.5 * (a.t + b.t), f(0.5 * (a.t + b.t))};
    check_sample(mid);
    refine_interval(f, a, mid, depth + 1, max_depth, out);
    refine_interval(f, mid, b, depth + 1, max_depth, out);
}

}  // namespace

LoopPath refine_loop(const LoopSampler& f, std::size_t initial, bool closed, int max_depth) {
    if (initial < 8) initial = 8;
    const std::size_t count = closed ? initial : initial + 1;
    const double denom = static_cast<double>(initial);
    std::vector<Sample> coarse = parallel_map<Sample>(count, [&](std::size_t k) {
        const double t = static_cast<double>(k) / denom;
        return Sample{t, f(t)};
    });
    for (const Sample& s : coarse) check_sample(s);

    std::vector<Sample> fine;
    fine.reserve(coarse.size() * 2);
    fine.push_back(coarse.front());
    for (std::size_t k = 0; k + 1 < coarse.size(); ++k) {
        refine_interval(f, coarse[k], coarse[k + 1], 0, max_depth, fine);
    }
    if (closed) {
        // Closing interval [t_last, 1); the value at t = 1 is the start value.
        Sample wrap{1.0, coarse.front().v};
        refine_interval(f, coarse.back(), wrap, 0, max_depth, fine);
        fine.pop_back();
    }
    std::vector<cplx> values;
    values.reserve(fine.size());
    for (const Sample& s : fine) values.push_back(s.v);
    return LoopPath(std::move(values), closed);
}

WindingResult adaptive_winding(const LoopSampler& f, std::size_t initial, std::size_t* samples_used,
                               int max_depth) {
    const LoopPath path = refine_loop(f, initial, true, max_depth);
    if (samples_used) *samples_used = path.samples().size();
    return winding_number(path.samples());
}

}  // namespace okalab
