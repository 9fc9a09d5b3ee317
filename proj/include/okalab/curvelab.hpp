#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "okalab/branchlog.hpp"
#include "okalab/steinfn.hpp"

namespace okalab {

inline constexpr std::uint64_t kDefaultSeed = 20090417;

/// sum c_{jk} z^j w^k with distinct exponent pairs.
class LaurentPoly {
public:
    struct Term {
        int j;
        int k;
        cplx c;
    };

    /// Rejects duplicate (j, k) and term lists whose coefficients are all zero.
    explicit LaurentPoly(std::vector<Term> terms);
    static LaurentPoly zero() { return LaurentPoly(); }

    /// Syntax: terms like "2*z^3*w^-1", "(1,-2)*w", "-z", "3.5", joined by + or -.
    static LaurentPoly parse(const std::string& text);

    const std::vector<Term>& terms() const { return terms_; }

private:
    LaurentPoly() = default;
    std::vector<Term> terms_;
};

std::string to_string(const LaurentPoly& p);

/// g(zeta) = sum c e^{(j + i k) zeta}: the polynomial pulled back along
/// zeta -> (e^zeta, e^{i zeta}).
class ExponentialSum {
public:
    struct Mode {
        cplx frequency;
        cplx coefficient;
    };

    explicit ExponentialSum(std::vector<Mode> modes) : modes_(std::move(modes)) {}

    cplx operator()(cplx zeta) const;
    /// sum |c| |e^{f zeta}|
    double magnitude_scale(cplx zeta) const;
    /// sum |c| |f| |e^{f zeta}|, a local bound on |g'|
    double derivative_scale(cplx zeta) const;
    double max_frequency() const;

    const std::vector<Mode>& modes() const { return modes_; }

private:
    std::vector<Mode> modes_;
};

ExponentialSum compose_curve(const LaurentPoly& p);

/// True iff some coefficient is nonzero; then g is not identically zero since
/// exponentials with distinct frequencies are linearly independent.
bool nondegenerate(const LaurentPoly& p);

/// F+_lambda composed with the curve, on the branch log z = zeta.
struct SteinShiftTarget {
    cplx lambda;
};

using CurveTarget = std::variant<LaurentPoly, SteinShiftTarget>;

struct CountResult {
    int count = 0;
    double radius = 0.0;  // radius actually used (after any perturbation)
    double residual = 0.0;
    std::size_t samples_used = 0;
};

/// Zeros (with multiplicity) of the target along the curve in |zeta| < R, by
/// the argument principle on |zeta| = R. If a zero may lie within 1e-4 R of
/// the circle, R is increased by 1e-2, at most 10 times.
CountResult count_intersections(const CurveTarget& target, double radius,
                                const TruncationBudget& budget = {});

/// Phi(zeta) = (e^zeta, e^{i zeta}).
std::pair<cplx, cplx> phi(cplx zeta);

/// Largest relative coordinate difference of Phi(a) and Phi(b).
double phi_separation(cplx a, cplx b);

struct InjectivityReport {
    bool injective = true;
    double min_separation = 0.0;
    std::uint64_t seed = kDefaultSeed;
    int samples = 0;
};

/// Draws random pairs in the square |Re|, |Im| <= halfwidth and checks that
/// Phi separates every pair by more than 1e-12 (relative).
InjectivityReport phi_injectivity(int sample_count, double box_halfwidth = kPi,
                                  std::uint64_t seed = kDefaultSeed);

}  // namespace okalab
