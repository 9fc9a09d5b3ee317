#pragma once

#include <functional>
#include <string>
#include <vector>

#include "okalab/branchlog.hpp"
#include "okalab/steinfn.hpp"

namespace okalab {

/// One family of sheets w = e^{shift} z^{i * z_exponent}, i.e. the points
/// w = exp(shift + z_exponent * i * log z + 2 k pi) over all k.
struct SheetFamily {
    int z_exponent = 1;
    cplx shift{0.0, 0.0};
};

/// A deterministic evaluator on (branch of z, w) together with the divisor
/// it cuts out, when that divisor is a union of sheet families.
class FunctionHandle {
public:
    using Evaluator = std::function<EvalResult(const BranchedPoint&, cplx, const TruncationBudget&)>;

    FunctionHandle(std::string tag, Evaluator eval, std::vector<SheetFamily> zero_sheets);

    static FunctionHandle fplus();
    static FunctionHandle fminus();
    static FunctionHandle fplus_shift(cplx lambda);

    const std::string& tag() const { return tag_; }
    const std::vector<SheetFamily>& zero_sheets() const { return sheets_; }

    EvalResult operator()(const BranchedPoint& zb, cplx w, const TruncationBudget& budget) const {
        return eval_(zb, w, budget);
    }

    /// Pointwise product; bounds compose, divisors add.
    friend FunctionHandle operator*(const FunctionHandle& a, const FunctionHandle& b);

private:
    std::string tag_;
    Evaluator eval_;
    std::vector<SheetFamily> sheets_;
};

/// Coordinate 2-torus |z| = r_z, |w| = r_w; orientation +1 is CCW x CCW.
struct TorusCycle {
    double r_z = 1.0;
    double r_w = 1.3;
    int orientation = 1;

    void validate() const;
};

struct FactorResult {
    cplx value;
    double rel_error_bound = 0.0;
};

struct PairingResult {
    int pairing = 0;
    double residual = 0.0;
    std::size_t samples_used = 0;
};

struct Crossing {
    double phi;  // arg z at the crossing, in [0, 2 pi)
    int sheet;   // k
    int sign;
};

struct IntersectionCount {
    int count = 0;
    std::vector<Crossing> crossings;
};

/// f after continuing z once CCW around |z| = |zb.point()|, divided by f.
FactorResult z_loop_factor(const FunctionHandle& f, const BranchedPoint& zb, cplx w,
                           const TruncationBudget& budget = {});

/// f after continuing w once CCW around |w'| = |w| by sampling, divided by f.
FactorResult w_loop_factor(const FunctionHandle& f, const BranchedPoint& zb, cplx w,
                           const TruncationBudget& budget = {});

/// <c1(L(D_f)), T> as the winding, over the w-circle, of the z-loop factor.
PairingResult chern_pairing(const FunctionHandle& f, const TorusCycle& torus,
                            const TruncationBudget& budget = {});

/// Signed count of points where the sheets meet the torus as z runs once
/// around |z| = r_z. Independent of any evaluator.
IntersectionCount torus_intersection_count(const std::vector<SheetFamily>& divisor,
                                           const TorusCycle& torus);

}  // namespace okalab
