#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace okalab {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

// Largest accepted phase step between consecutive samples.
inline constexpr double kMaxPhaseStep = kPi / 2.0;
inline constexpr int kMaxRefineDepth = 20;

/// A nonzero complex number together with one chosen value of its logarithm.
/// The branch is carried explicitly; nothing downstream recomputes it.
class BranchedPoint {
public:
    /// Checks exp(log_value) == point to relative tolerance 1e-12.
    BranchedPoint(cplx point, cplx log_value);

    /// Builds the point from a logarithm; exact by construction.
    static BranchedPoint from_log(cplx log_value);

    cplx point() const { return point_; }
    cplx log_value() const { return log_value_; }

    /// Same point, logarithm shifted by 2*pi*i*turns.
    BranchedPoint shifted(int turns) const;

private:
    struct Unchecked {};
    BranchedPoint(cplx point, cplx log_value, Unchecked) : point_(point), log_value_(log_value) {}

    cplx point_;
    cplx log_value_;
};

/// Ordered samples of a path in C*. Closed paths implicitly join last to first.
class LoopPath {
public:
    LoopPath(std::vector<cplx> samples, bool closed);

    std::span<const cplx> samples() const { return samples_; }
    bool closed() const { return closed_; }

    /// Circle of radius |start| through `start`, traversed `turns` times
    /// (negative = clockwise), with `per_turn` samples per revolution.
    static LoopPath circle_through(cplx start, int turns = 1, std::size_t per_turn = 32);

private:
    std::vector<cplx> samples_;
    bool closed_;
};

struct WindingResult {
    int winding = 0;
    double residual = 0.0;  // |raw angle sum - 2*pi*winding|, radians
};

/// Principal branch, arg in (-pi, pi]. Throws PreconditionError on z == 0.
BranchedPoint principal_branch(cplx z);

/// Continues the logarithm of `start` along `path`. For a closed path the
/// endpoint is start.point() and the log differs by exactly 2*pi*i*winding.
BranchedPoint continue_branch(const BranchedPoint& start, const LoopPath& path);

/// Winding number about 0 of a closed sampled loop.
WindingResult winding_number(std::span<const cplx> values);

/// Callback re-evaluating the loop at parameter t in [0, 1).
using LoopSampler = std::function<cplx(double)>;

/// Samples t -> f(t) on [0, 1) at `initial` equispaced points, then inserts
/// parameter midpoints wherever consecutive phases differ by >= pi/2, up to
/// `max_depth` doublings per initial interval.
LoopPath refine_loop(const LoopSampler& f, std::size_t initial, bool closed = true,
                     int max_depth = kMaxRefineDepth);

/// refine_loop followed by winding_number. `samples_used`, when non-null,
/// receives the number of evaluations.
WindingResult adaptive_winding(const LoopSampler& f, std::size_t initial,
                               std::size_t* samples_used = nullptr,
                               int max_depth = kMaxRefineDepth);

}  // namespace okalab
