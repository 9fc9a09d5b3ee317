#include "okalab/curvelab.hpp"

#include <algorithm>
#include <cctype>
#include <cfloat>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "okalab/errors.hpp"
#include "okalab/parallel.hpp"

namespace okalab {

namespace {

constexpr double kProximity = 1e-4;
constexpr double kNudge = 1e-2;
constexpr int kMaxNudges = 10;

enum class SampleKind { clear, near_zero, zero };

struct CurveSample {
    cplx value;
    SampleKind kind;
};

// Raised inside the winding sampler to request a radius nudge.
struct NearBoundary {};

class PolyParser {
public:
    explicit PolyParser(const std::string& text) : text_(text) {}

    std::vector<LaurentPoly::Term> parse() {
        std::vector<LaurentPoly::Term> terms;
        skip();
        if (rest() == "0") return terms;
        bool first = true;
        while (true) {
            skip();
            if (at_end()) {
                if (first) fail("empty polynomial");
                break;
            }
            double sign = 1.0;
            if (peek() == '+' || peek() == '-') {
                sign = peek() == '-' ? -1.0 : 1.0;
                ++pos_;
                skip();
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            terms.push_back(term(sign));
            first = false;
        }
        return terms;
    }

private:
    LaurentPoly::Term term(double sign) {
        LaurentPoly::Term t{0, 0, cplx(sign, 0.0)};
        bool have_factor = false;
        while (true) {
            skip();
            if (at_end()) break;
            const char c = peek();
            if (c == 'z' || c == 'w') {
                ++pos_;
                int e = 1;
                skip();
                if (!at_end() && peek() == '^') {
                    ++pos_;
                    e = exponent();
                }
                (c == 'z' ? t.j : t.k) += e;
            } else if (c == '(') {
                t.c *= complex_literal();
            } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                t.c *= real_literal();
            } else {
                fail(std::string("unexpected '") + c + "'");
            }
            have_factor = true;
            skip();
            if (at_end() || peek() != '*') break;
            ++pos_;
        }
        if (!have_factor) fail("empty term");
        return t;
    }

    int exponent() {
        skip();
        bool paren = false;
        if (!at_end() && peek() == '(') {
            paren = true;
            ++pos_;
            skip();
        }
        int sign = 1;
        if (!at_end() && (peek() == '-' || peek() == '+')) {
            sign = peek() == '-' ? -1 : 1;
            ++pos_;
        }
        const std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) fail("expected integer exponent");
        const int e = sign * std::stoi(text_.substr(start, pos_ - start));
        if (paren) {
            skip();
            if (at_end() || peek() != ')') fail("expected ')'");
            ++pos_;
        }
        return e;
    }

    double real_literal() {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(text_.substr(pos_), &used);
        } catch (const std::exception&) {
            fail("bad number");
        }
        pos_ += used;
        return v;
    }

    cplx complex_literal() {
        ++pos_;  // '('
        skip();
        const double re = signed_real();
        skip();
        if (at_end() || peek() != ',') fail("expected ',' in complex literal");
        ++pos_;
        skip();
        const double im = signed_real();
        skip();
        if (at_end() || peek() != ')') fail("expected ')'");
        ++pos_;
        return {re, im};
    }

    double signed_real() {
        double s = 1.0;
        if (!at_end() && (peek() == '-' || peek() == '+')) {
            s = peek() == '-' ? -1.0 : 1.0;
            ++pos_;
        }
        return s * real_literal();
    }

    void skip() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    std::string rest() const { return text_.substr(pos_); }
    [[noreturn]] void fail(const std::string& why) const {
        throw PreconditionError("polynomial '" + text_ + "': " + why + " at offset " + std::to_string(pos_));
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

// Shared driver: sample the boundary, nudge on proximity, count by winding.
template <class Sampler>
CountResult count_by_winding(const Sampler& sample, double radius, std::size_t initial) {
    for (int attempt = 0; attempt <= kMaxNudges; ++attempt) {
        const double r = radius + kNudge * attempt;
        const auto coarse = parallel_map<CurveSample>(initial, [&](std::size_t k) {
            return sample(std::polar(r, kTwoPi * static_cast<double>(k) / static_cast<double>(initial)), r);
        });
        const bool all_zero = std::all_of(coarse.begin(), coarse.end(),
                                          [](const CurveSample& s) { return s.kind == SampleKind::zero; });
        if (all_zero) {
            throw IdenticallyZeroError("count_intersections: target vanishes at every boundary sample; "
                                       "the curve lies inside the divisor");
        }
        const bool near = std::any_of(coarse.begin(), coarse.end(),
                                      [](const CurveSample& s) { return s.kind != SampleKind::clear; });
        if (near) continue;
        try {
            std::size_t used = 0;
            const WindingResult w = adaptive_winding(
                [&](double t) {
                    const CurveSample s = sample(std::polar(r, kTwoPi * t), r);
                    if (s.kind != SampleKind::clear) throw NearBoundary{};
                    return s.value;
                },
                initial, &used);
            if (w.winding < 0) {
                throw NumericalError("count_intersections: negative zero count for an entire function");
            }
            return {w.winding, r, w.residual, used};
        } catch (const NearBoundary&) {
            continue;
        } catch (const WindingRejection&) {
            continue;
        }
    }
    throw NumericalError("count_intersections: a zero stays within 1e-4 R of the boundary after " +
                         std::to_string(kMaxNudges) + " radius nudges");
}

}  // namespace

LaurentPoly::LaurentPoly(std::vector<Term> terms) : terms_(std::move(terms)) {
    std::set<std::pair<int, int>> seen;
    bool any_nonzero = false;
    for (const Term& t : terms_) {
        if (!seen.insert({t.j, t.k}).second) {
            throw PreconditionError("LaurentPoly: duplicate monomial z^" + std::to_string(t.j) + " w^" +
                                    std::to_string(t.k));
        }
        if (!std::isfinite(t.c.real()) || !std::isfinite(t.c.imag())) {
            throw PreconditionError("LaurentPoly: non-finite coefficient");
        }
        any_nonzero = any_nonzero || t.c != cplx(0.0, 0.0);
    }
    if (!terms_.empty() && !any_nonzero) {
        throw PreconditionError("LaurentPoly: all coefficients are zero; use LaurentPoly::zero()");
    }
}

LaurentPoly LaurentPoly::parse(const std::string& text) {
    auto terms = PolyParser(text).parse();
    if (terms.empty()) return zero();
    return LaurentPoly(std::move(terms));
}

std::string to_string(const LaurentPoly& p) {
    if (p.terms().empty()) return "0";
    std::ostringstream os;
    os.precision(17);
    bool first = true;
    for (const auto& t : p.terms()) {
        if (!first) os << " + ";
        first = false;
        os << "(" << t.c.real() << "," << t.c.imag() << ")";
        if (t.j != 0) os << "*z^" << t.j;
        if (t.k != 0) os << "*w^" << t.k;
    }
    return os.str();
}

cplx ExponentialSum::operator()(cplx zeta) const {
    cplx sum(0.0, 0.0);
    for (const Mode& m : modes_) sum += m.coefficient * std::exp(m.frequency * zeta);
    return sum;
}

double ExponentialSum::magnitude_scale(cplx zeta) const {
    double s = 0.0;
    for (const Mode& m : modes_) s += std::abs(m.coefficient) * std::exp((m.frequency * zeta).real());
    return s;
}

double ExponentialSum::derivative_scale(cplx zeta) const {
    double s = 0.0;
    for (const Mode& m : modes_) {
        s += std::abs(m.coefficient) * std::abs(m.frequency) * std::exp((m.frequency * zeta).real());
    }
    return s;
}

double ExponentialSum::max_frequency() const {
    double f = 0.0;
    for (const Mode& m : modes_) f = std::max(f, std::abs(m.frequency));
    return f;
}

ExponentialSum compose_curve(const LaurentPoly& p) {
    std::vector<ExponentialSum::Mode> modes;
    for (const auto& t : p.terms()) {
        modes.push_back({cplx(static_cast<double>(t.j), static_cast<double>(t.k)), t.c});
    }
    return ExponentialSum(std::move(modes));
}

bool nondegenerate(const LaurentPoly& p) {
    return std::any_of(p.terms().begin(), p.terms().end(),
                       [](const LaurentPoly::Term& t) { return t.c != cplx(0.0, 0.0); });
}

CountResult count_intersections(const CurveTarget& target, double radius, const TruncationBudget& budget) {
    if (!(radius > 0.0) || !std::isfinite(radius)) {
        throw PreconditionError("count_intersections: radius must be positive");
    }
    if (const auto* poly = std::get_if<LaurentPoly>(&target)) {
        if (!nondegenerate(*poly)) {
            throw PreconditionError("count_intersections: the zero polynomial has no isolated intersections");
        }
        const ExponentialSum g = compose_curve(*poly);
        const auto initial = static_cast<std::size_t>(
            std::max(64.0, 16.0 * std::ceil(radius * std::max(1.0, g.max_frequency()))));
        auto sample = [&g](cplx zeta, double r) {
            const cplx v = g(zeta);
            const double mag = g.magnitude_scale(zeta);
            if (std::abs(v) <= 64.0 * DBL_EPSILON * mag) {
                return CurveSample{v, v == cplx(0.0, 0.0) ? SampleKind::zero : SampleKind::near_zero};
            }
            // A zero within distance delta forces |g| <= delta * sup|g'| nearby.
            if (std::abs(v) < kProximity * r * g.derivative_scale(zeta)) return CurveSample{v, SampleKind::near_zero};
            return CurveSample{v, SampleKind::clear};
        };
        return count_by_winding(sample, radius, initial);
    }
    const ShiftParam lam{std::get<SteinShiftTarget>(target).lambda};
    const auto initial = static_cast<std::size_t>(64.0 + 16.0 * std::ceil(radius * (radius / kTwoPi + 1.0)));
    auto sample = [&](cplx zeta, double) {
        const auto [z, w] = phi(zeta);
        (void)z;
        const EvalResult e = eval_fplus_shift(lam, BranchedPoint::from_log(zeta), w, budget);
        if (e.value == cplx(0.0, 0.0)) return CurveSample{e.value, SampleKind::zero};
        if (!e.certified_nonzero()) return CurveSample{e.value, SampleKind::zero};
        return CurveSample{e.value, SampleKind::clear};
    };
    return count_by_winding(sample, radius, initial);
}

std::pair<cplx, cplx> phi(cplx zeta) {
    // e^{i zeta} via exp of (-Im, Re), matching the sheet evaluation bitwise.
    return {std::exp(zeta), std::exp(cplx(-zeta.imag(), zeta.real()))};
}

double phi_separation(cplx a, cplx b) {
    const auto [a1, a2] = phi(a);
    const auto [b1, b2] = phi(b);
    const double s1 = std::abs(a1 - b1) / std::max(std::abs(a1), std::abs(b1));
    const double s2 = std::abs(a2 - b2) / std::max(std::abs(a2), std::abs(b2));
    return std::max(s1, s2);
}

InjectivityReport phi_injectivity(int sample_count, double box_halfwidth, std::uint64_t seed) {
    if (sample_count < 100) throw PreconditionError("phi_injectivity: sample_count must be >= 100");
    if (!(box_halfwidth > 0.0) || !std::isfinite(box_halfwidth)) {
        throw PreconditionError("phi_injectivity: halfwidth must be positive");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(-box_halfwidth, box_halfwidth);
    InjectivityReport rep;
    rep.seed = seed;
    rep.samples = sample_count;
    rep.min_separation = INFINITY;
    for (int s = 0; s < sample_count; ++s) {
        const cplx a(coord(rng), coord(rng));
        cplx b(coord(rng), coord(rng));
        while (b == a) b = cplx(coord(rng), coord(rng));
        const double sep = phi_separation(a, b);
        rep.min_separation = std::min(rep.min_separation, sep);
        if (!(sep > 1e-12)) rep.injective = false;
    }
    return rep;
}

}  // namespace okalab
