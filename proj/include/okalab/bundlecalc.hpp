#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace okalab {

/// Monomial factors of automorphy on (C*)^n. Row a holds the exponents of the
/// monomial a section picks up when coordinate a runs once around its circle:
/// entry (a, b) is the power of coordinate b. Indices are 1-based.
class ExponentMatrix {
public:
    static constexpr std::int64_t kMaxEntry = 1'000'000;

    explicit ExponentMatrix(int n);
    ExponentMatrix(std::vector<std::vector<std::int64_t>> rows);

    int n() const { return n_; }
    std::int64_t at(int a, int b) const;
    void set(int a, int b, std::int64_t value);
    const std::vector<std::int64_t>& data() const { return m_; }

    bool is_zero() const;
    ExponentMatrix operator-() const;
    bool operator==(const ExponentMatrix&) const = default;

private:
    int n_;
    std::vector<std::int64_t> m_;
};

struct CycleTerm {
    int a;
    int b;
    std::int64_t coefficient;
};

/// An element of the exterior square of the loop lattice that the user
/// asserts is carried by supp D.
struct SupportCycleDecl {
    std::vector<CycleTerm> terms;

    void validate(int n) const;
};

struct DivisorComponent {
    std::string name;
    ExponentMatrix exponents;
};

struct DivisorSpec {
    std::vector<DivisorComponent> components;
    int support_dim = 1;
    std::vector<SupportCycleDecl> support_cycles;

    int n() const;
    void validate() const;
};

enum class VerdictRule { dimension_two, cycle_test };

struct CyclePairing {
    SupportCycleDecl cycle;
    std::int64_t pairing;
};

struct Verdict {
    std::vector<CyclePairing> ambient_pairings;  // coordinate tori (a, b), a < b
    std::vector<CyclePairing> support_pairings;  // declared cycles, in input order
    bool cousin2_on_tested = false;
    bool extra_zero_on_tested = false;
    VerdictRule rule_applied = VerdictRule::cycle_test;
    std::optional<CyclePairing> witness;  // first support cycle with nonzero pairing
};

/// <c1, (a, b)-torus> = M[a][b] - M[b][a].
std::int64_t symbolic_pairing(const ExponentMatrix& m, int a, int b);

/// Pairing of c1 with a lattice 2-cycle, by bilinearity.
std::int64_t cycle_pairing(const ExponentMatrix& m, const SupportCycleDecl& cycle);

ExponentMatrix sum_spec(const std::vector<ExponentMatrix>& specs);
ExponentMatrix operator+(const ExponentMatrix& x, const ExponentMatrix& y);

/// Extra-zero decision over the declared support cycles: an extra zero can
/// exist only if c1(N(D)) vanishes on every declared cycle of supp D; the
/// divisor is principal on the tested cycles iff every ambient pairing is 0.
/// A curve in a surface is always decided positively.
Verdict restrict_and_decide(const DivisorSpec& spec);

const char* to_string(VerdictRule rule);

}  // namespace okalab
