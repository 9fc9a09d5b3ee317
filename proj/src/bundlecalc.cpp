#include "okalab/bundlecalc.hpp"

#include <string>

#include "okalab/errors.hpp"

namespace okalab {

namespace {

void check_entry(std::int64_t v) {
    if (v > ExponentMatrix::kMaxEntry || v < -ExponentMatrix::kMaxEntry) {
        throw PreconditionError("ExponentMatrix: entry " + std::to_string(v) + " exceeds 1e6 in magnitude");
    }
}

void check_index(int n, int a, const char* who) {
    if (a < 1 || a > n) {
        throw PreconditionError(std::string(who) + ": loop index " + std::to_string(a) +
                                " outside [1, " + std::to_string(n) + "]");
    }
}

}  // namespace

ExponentMatrix::ExponentMatrix(int n) : n_(n), m_(static_cast<std::size_t>(n) * n, 0) {
    if (n < 1) throw PreconditionError("ExponentMatrix: dimension must be positive");
}

ExponentMatrix::ExponentMatrix(std::vector<std::vector<std::int64_t>> rows)
    : ExponentMatrix(static_cast<int>(rows.size())) {
    for (int a = 0; a < n_; ++a) {
        if (static_cast<int>(rows[a].size()) != n_) {
            throw PreconditionError("ExponentMatrix: matrix must be square");
        }
        for (int b = 0; b < n_; ++b) set(a + 1, b + 1, rows[a][b]);
    }
}

std::int64_t ExponentMatrix::at(int a, int b) const {
    check_index(n_, a, "ExponentMatrix");
    check_index(n_, b, "ExponentMatrix");
    return m_[static_cast<std::size_t>(a - 1) * n_ + (b - 1)];
}

void ExponentMatrix::set(int a, int b, std::int64_t value) {
    check_index(n_, a, "ExponentMatrix");
    check_index(n_, b, "ExponentMatrix");
    check_entry(value);
    m_[static_cast<std::size_t>(a - 1) * n_ + (b - 1)] = value;
}

bool ExponentMatrix::is_zero() const {
    for (auto v : m_) {
        if (v != 0) return false;
    }
    return true;
}

ExponentMatrix ExponentMatrix::operator-() const {
    ExponentMatrix out(n_);
    out.m_ = m_;
    for (auto& v : out.m_) v = -v;
    return out;
}

void SupportCycleDecl::validate(int n) const {
    if (terms.empty()) throw PreconditionError("support cycle: no terms");
    for (const CycleTerm& t : terms) {
        if (!(1 <= t.a && t.a < t.b && t.b <= n)) {
            throw PreconditionError("support cycle: need 1 <= a < b <= n, got (" + std::to_string(t.a) +
                                    ", " + std::to_string(t.b) + ")");
        }
        if (t.coefficient == 0) throw PreconditionError("support cycle: zero coefficient");
        check_entry(t.coefficient);
    }
}

int DivisorSpec::n() const {
    if (components.empty()) throw PreconditionError("DivisorSpec: no components");
    return components.front().exponents.n();
}

void DivisorSpec::validate() const {
    const int dim = n();
    for (const DivisorComponent& c : components) {
        if (c.exponents.n() != dim) {
            throw PreconditionError("DivisorSpec: component '" + c.name + "' has dimension " +
                                    std::to_string(c.exponents.n()) + ", expected " + std::to_string(dim));
        }
    }
    if (dim < 2) throw PreconditionError("DivisorSpec: ambient dimension must be at least 2");
    if (support_dim < 1) {
        throw PreconditionError("DivisorSpec: support_dim must be >= 1 to host 2-cycles");
    }
    if (support_dim > dim - 1) {
        throw PreconditionError("DivisorSpec: a divisor in (C*)^" + std::to_string(dim) +
                                " has support dimension " + std::to_string(dim - 1));
    }
    for (const SupportCycleDecl& c : support_cycles) c.validate(dim);
}

std::int64_t symbolic_pairing(const ExponentMatrix& m, int a, int b) {
    check_index(m.n(), a, "symbolic_pairing");
    check_index(m.n(), b, "symbolic_pairing");
    return m.at(a, b) - m.at(b, a);
}

std::int64_t cycle_pairing(const ExponentMatrix& m, const SupportCycleDecl& cycle) {
    std::int64_t total = 0;
    for (const CycleTerm& t : cycle.terms) total += t.coefficient * symbolic_pairing(m, t.a, t.b);
    return total;
}

ExponentMatrix operator+(const ExponentMatrix& x, const ExponentMatrix& y) {
    if (x.n() != y.n()) {
        throw PreconditionError("sum_spec: dimension mismatch (" + std::to_string(x.n()) + " vs " +
                                std::to_string(y.n()) + ")");
    }
    ExponentMatrix out(x.n());
    for (int a = 1; a <= x.n(); ++a) {
        for (int b = 1; b <= x.n(); ++b) out.set(a, b, x.at(a, b) + y.at(a, b));
    }
    return out;
}

ExponentMatrix sum_spec(const std::vector<ExponentMatrix>& specs) {
    if (specs.empty()) throw PreconditionError("sum_spec: empty list");
    ExponentMatrix total = specs.front();
    for (std::size_t i = 1; i < specs.size(); ++i) total = total + specs[i];
    return total;
}

Verdict restrict_and_decide(const DivisorSpec& spec) {
    spec.validate();
    const int n = spec.n();
    std::vector<ExponentMatrix> mats;
    for (const DivisorComponent& c : spec.components) mats.push_back(c.exponents);
    const ExponentMatrix total = sum_spec(mats);

    Verdict v;
    v.cousin2_on_tested = true;
    for (int a = 1; a <= n; ++a) {
        for (int b = a + 1; b <= n; ++b) {
            const std::int64_t p = symbolic_pairing(total, a, b);
            v.ambient_pairings.push_back({SupportCycleDecl{{{a, b, 1}}}, p});
            if (p != 0) v.cousin2_on_tested = false;
        }
    }

    if (spec.support_dim == 1 && n == 2) {
        // A Stein curve has no 2-dimensional homology to obstruct anything.
        if (!spec.support_cycles.empty()) {
            throw PreconditionError("DivisorSpec: a curve in (C*)^2 carries no 2-cycles; "
                                    "support_cycles must be empty");
        }
        v.rule_applied = VerdictRule::dimension_two;
        v.extra_zero_on_tested = true;
        return v;
    }

    v.rule_applied = VerdictRule::cycle_test;
    v.extra_zero_on_tested = true;
    for (const SupportCycleDecl& c : spec.support_cycles) {
        const std::int64_t p = cycle_pairing(total, c);
        v.support_pairings.push_back({c, p});
        if (p != 0 && !v.witness) {
            v.witness = CyclePairing{c, p};
            v.extra_zero_on_tested = false;
        }
    }
    return v;
}

const char* to_string(VerdictRule rule) {
    return rule == VerdictRule::dimension_two ? "dimension-two" : "cycle-test";
}

}  // namespace okalab
