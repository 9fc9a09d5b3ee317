#include "okalab/latticeforms.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cctype>
#include <sstream>

#include "okalab/errors.hpp"

namespace okalab {

namespace {

using Big = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

std::int64_t add(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_add_overflow(x, y, &r)) throw PreconditionError("lattice arithmetic overflow");
    return r;
}

std::int64_t mul(std::int64_t x, std::int64_t y) {
    std::int64_t r;
    if (__builtin_mul_overflow(x, y, &r)) throw PreconditionError("lattice arithmetic overflow");
    return r;
}

void check_dims(int n, const GaussianLatticeVector& v) {
    if (v.n() != n || static_cast<int>(v.b.size()) != n) {
        throw PreconditionError("lattice vector has dimension " + std::to_string(v.n()) + ", expected " +
                                std::to_string(n));
    }
}

// Real coordinates (a_1..a_n, b_1..b_n).
std::vector<Rational> coords(const GaussianLatticeVector& v) {
    std::vector<Rational> out;
    for (auto x : v.a) out.emplace_back(Big(x));
    for (auto x : v.b) out.emplace_back(Big(x));
    return out;
}

// Solves sum_i c_i g_i = target exactly; nullopt if target is outside the
// rational span. Generators are assumed independent.
std::optional<std::vector<Rational>> solve(const std::vector<GaussianLatticeVector>& gens,
                                           const GaussianLatticeVector& target) {
    const std::size_t m = gens.size();
    const std::size_t rows = 2 * static_cast<std::size_t>(target.n());
    // Augmented matrix rows x (m + 1), columns are generators.
    std::vector<std::vector<Rational>> mat(rows, std::vector<Rational>(m + 1));
    for (std::size_t c = 0; c < m; ++c) {
        const auto col = coords(gens[c]);
        for (std::size_t r = 0; r < rows; ++r) mat[r][c] = col[r];
    }
    const auto t = coords(target);
    for (std::size_t r = 0; r < rows; ++r) mat[r][m] = t[r];

    std::size_t pivot_row = 0;
    std::vector<std::size_t> pivot_col;
    for (std::size_t c = 0; c < m && pivot_row < rows; ++c) {
        std::size_t p = pivot_row;
        while (p < rows && mat[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(mat[p], mat[pivot_row]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == pivot_row || mat[r][c] == 0) continue;
            const Rational factor = mat[r][c] / mat[pivot_row][c];
            for (std::size_t k = c; k <= m; ++k) mat[r][k] -= factor * mat[pivot_row][k];
        }
        pivot_col.push_back(c);
        ++pivot_row;
    }
    for (std::size_t r = pivot_row; r < rows; ++r) {
        if (mat[r][m] != 0) return std::nullopt;
    }
    std::vector<Rational> sol(m);
    for (std::size_t i = 0; i < pivot_col.size(); ++i) {
        sol[pivot_col[i]] = mat[i][m] / mat[i][pivot_col[i]];
    }
    return sol;
}

std::size_t rank(const std::vector<GaussianLatticeVector>& gens) {
    if (gens.empty()) return 0;
    const std::size_t rows = 2 * static_cast<std::size_t>(gens.front().n());
    std::vector<std::vector<Rational>> mat;
    for (const auto& g : gens) mat.push_back(coords(g));
    std::size_t r = 0;
    for (std::size_t c = 0; c < rows && r < mat.size(); ++c) {
        std::size_t p = r;
        while (p < mat.size() && mat[p][c] == 0) ++p;
        if (p == mat.size()) continue;
        std::swap(mat[p], mat[r]);
        for (std::size_t q = r + 1; q < mat.size(); ++q) {
            if (mat[q][c] == 0) continue;
            const Rational f = mat[q][c] / mat[r][c];
            for (std::size_t k = c; k < rows; ++k) mat[q][k] -= f * mat[r][k];
        }
        ++r;
    }
    return r;
}

bool in_integer_span(const GaussianLatticeVector& v, const SublatticeDecl& sub) {
    const auto sol = solve(sub.generators, v);
    if (!sol) return false;
    for (const Rational& c : *sol) {
        if (boost::multiprecision::denominator(c) != 1) return false;
    }
    return true;
}

}  // namespace

GaussianInt operator+(GaussianInt x, GaussianInt y) { return {add(x.re, y.re), add(x.im, y.im)}; }
GaussianInt operator-(GaussianInt x, GaussianInt y) { return {add(x.re, -y.re), add(x.im, -y.im)}; }
GaussianInt operator*(GaussianInt x, GaussianInt y) {
    return {add(mul(x.re, y.re), -mul(x.im, y.im)), add(mul(x.re, y.im), mul(x.im, y.re))};
}

GaussianLatticeVector GaussianLatticeVector::e(int j, int n) {
    if (j < 1 || j > n) throw PreconditionError("e_j: index out of range");
    GaussianLatticeVector v{std::vector<std::int64_t>(n, 0), std::vector<std::int64_t>(n, 0)};
    v.a[j - 1] = 1;
    return v;
}

GaussianLatticeVector GaussianLatticeVector::ie(int j, int n) {
    if (j < 1 || j > n) throw PreconditionError("ie_j: index out of range");
    GaussianLatticeVector v{std::vector<std::int64_t>(n, 0), std::vector<std::int64_t>(n, 0)};
    v.b[j - 1] = 1;
    return v;
}

GaussianLatticeVector GaussianLatticeVector::operator+(const GaussianLatticeVector& o) const {
    check_dims(n(), o);
    GaussianLatticeVector out = *this;
    for (int j = 0; j < n(); ++j) {
        out.a[j] = add(out.a[j], o.a[j]);
        out.b[j] = add(out.b[j], o.b[j]);
    }
    return out;
}

GaussianLatticeVector GaussianLatticeVector::scaled(std::int64_t k) const {
    GaussianLatticeVector out = *this;
    for (auto& x : out.a) x = mul(x, k);
    for (auto& x : out.b) x = mul(x, k);
    return out;
}

void SublatticeDecl::validate() const {
    if (generators.empty()) throw PreconditionError("sublattice: no generators");
    const int n = generators.front().n();
    for (const auto& g : generators) check_dims(n, g);
    if (rank(generators) != generators.size()) {
        throw PreconditionError("sublattice: generators are linearly dependent over Q");
    }
}

SublatticeDecl SublatticeDecl::covering(int n) {
    SublatticeDecl s;
    s.generators.push_back(GaussianLatticeVector::ie(1, n));
    for (int j = 2; j <= n; ++j) s.generators.push_back(GaussianLatticeVector::e(j, n));
    return s;
}

SublatticeDecl SublatticeDecl::deck(int n) {
    SublatticeDecl s;
    s.generators.push_back(GaussianLatticeVector::e(1, n));
    for (int j = 2; j <= n; ++j) s.generators.push_back(GaussianLatticeVector::ie(j, n));
    return s;
}

GaussianInt pair_form_exact(const HermitianFormSpec& omega, const GaussianLatticeVector& u,
                            const GaussianLatticeVector& v) {
    if (omega.n < 1) throw PreconditionError("pair_form: dimension must be positive");
    check_dims(omega.n, u);
    check_dims(omega.n, v);
    GaussianInt sum;
    for (int j = 0; j < omega.n; ++j) {
        for (int k = 0; k < omega.n; ++k) {
            const std::int64_t h = omega.weight(j, k);
            if (h == 0) continue;
            const GaussianInt wedge = u.dz(j) * v.dzbar(k) - v.dz(j) * u.dzbar(k);
            sum = sum + GaussianInt{h, 0} * wedge;
        }
    }
    return GaussianInt{0, 1} * sum;
}

std::int64_t pair_form(const HermitianFormSpec& omega, const GaussianLatticeVector& u,
                       const GaussianLatticeVector& v) {
    const GaussianInt z = pair_form_exact(omega, u, v);
    if (z.im != 0) throw std::logic_error("pair_form: Hermitian pairing produced an imaginary part");
    return z.re;
}

bool cycle_survives(const GaussianLatticeVector& u, const GaussianLatticeVector& v,
                    const SublatticeDecl& sub) {
    sub.validate();
    const int n = sub.generators.front().n();
    check_dims(n, u);
    check_dims(n, v);
    return in_integer_span(u, sub) && in_integer_span(v, sub);
}

TakayamaReport takayama_verdict(const HermitianFormSpec& omega, const SublatticeDecl& sub) {
    sub.validate();
    TakayamaReport report;
    if (omega.n < 3) {
        report.warnings.push_back("n = " + std::to_string(omega.n) +
                                  " is below the n >= 3 hypothesis of the irreducible example");
    }
    if (omega.d < 4) {
        report.warnings.push_back("d = " + std::to_string(omega.d) +
                                  " is below the very-ampleness threshold d >= 4");
    }
    const auto& g = sub.generators;
    for (std::size_t p = 0; p < g.size(); ++p) {
        for (std::size_t q = p + 1; q < g.size(); ++q) {
            ++report.cycles_checked;
            const std::int64_t val = pair_form(omega, g[p], g[q]);
            if (val != 0 && !report.witness) {
                report.witness = FormWitness{static_cast<int>(p) + 1, static_cast<int>(q) + 1, g[p], g[q], val};
            }
        }
    }
    report.obstruction = report.witness.has_value();
    return report;
}

GaussianLatticeVector parse_lattice_vector(const std::string& text, int n) {
    GaussianLatticeVector out{std::vector<std::int64_t>(n, 0), std::vector<std::int64_t>(n, 0)};
    std::size_t i = 0;
    auto skip = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    auto fail = [&](const std::string& why) {
        throw PreconditionError("lattice vector '" + text + "': " + why);
    };
    auto number = [&]() -> std::int64_t {
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (start == i) fail("expected a number");
        return std::stoll(text.substr(start, i - start));
    };
    skip();
    if (text.substr(i) == "0") return out;
    bool first = true;
    while (true) {
        skip();
        if (i >= text.size()) {
            if (first) fail("empty expression");
            break;
        }
        std::int64_t sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
            skip();
        } else if (!first) {
            fail("expected '+' or '-'");
        }
        std::int64_t coeff = 1;
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            coeff = number();
            skip();
            if (i >= text.size() || text[i] != '*') fail("expected '*' after coefficient");
            ++i;
            skip();
        }
        bool imaginary = false;
        if (i < text.size() && text[i] == 'i') {
            imaginary = true;
            ++i;
        }
        if (i >= text.size() || text[i] != 'e') fail("expected e<j> or ie<j>");
        ++i;
        const std::int64_t j = number();
        if (j < 1 || j > n) fail("index out of range");
        auto& slot = imaginary ? out.b[j - 1] : out.a[j - 1];
        slot = add(slot, mul(sign, coeff));
        first = false;
    }
    return out;
}

std::string to_string(const GaussianLatticeVector& v) {
    std::ostringstream os;
    bool any = false;
    auto emit = [&](std::int64_t c, const char* prefix, int j) {
        if (c == 0) return;
        if (c < 0) {
            os << (any ? " - " : "-");
        } else if (any) {
            os << " + ";
        }
        const std::int64_t mag = c < 0 ? -c : c;
        if (mag != 1) os << mag << "*";
        os << prefix << j;
        any = true;
    };
    for (int j = 0; j < v.n(); ++j) {
        emit(v.a[j], "e", j + 1);
        emit(v.b[j], "ie", j + 1);
    }
    if (!any) os << "0";
    return os.str();
}

}  // namespace okalab
