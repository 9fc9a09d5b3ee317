#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace okalab {

struct GaussianInt {
    std::int64_t re = 0;
    std::int64_t im = 0;

    friend GaussianInt operator+(GaussianInt x, GaussianInt y);
    friend GaussianInt operator-(GaussianInt x, GaussianInt y);
    friend GaussianInt operator*(GaussianInt x, GaussianInt y);
    bool operator==(const GaussianInt&) const = default;
};

/// sum_j a_j e_j + b_j (i e_j) in C^n.
struct GaussianLatticeVector {
    std::vector<std::int64_t> a;
    std::vector<std::int64_t> b;

    int n() const { return static_cast<int>(a.size()); }
    GaussianInt dz(int j) const { return {a[j], b[j]}; }       // 0-based
    GaussianInt dzbar(int j) const { return {a[j], -b[j]}; }

    static GaussianLatticeVector e(int j, int n);   // 1-based
    static GaussianLatticeVector ie(int j, int n);

    GaussianLatticeVector operator+(const GaussianLatticeVector& o) const;
    GaussianLatticeVector scaled(std::int64_t k) const;
    bool operator==(const GaussianLatticeVector&) const = default;
};

/// omega = d i sum_j dz_j ^ dzbar_j  (+ i sum_{j != k} dz_j ^ dzbar_k when offdiag).
struct HermitianFormSpec {
    int n = 3;
    std::int64_t d = 4;
    bool offdiag = true;

    std::int64_t weight(int j, int k) const { return j == k ? d : (offdiag ? 1 : 0); }
};

struct SublatticeDecl {
    std::vector<GaussianLatticeVector> generators;

    /// Same dimension throughout and linearly independent over Q.
    void validate() const;

    /// <i e_1, e_2, ..., e_n>: the lattice with C^n / it = (C*)^n.
    static SublatticeDecl covering(int n);
    /// <e_1, i e_2, ..., i e_n>: the deck lattice of (C*)^n -> C^n / Gamma.
    static SublatticeDecl deck(int n);
};

/// omega(u, v) over Z[i]; the imaginary part vanishes for every input.
GaussianInt pair_form_exact(const HermitianFormSpec& omega, const GaussianLatticeVector& u,
                            const GaussianLatticeVector& v);

/// Real value of omega(u, v).
std::int64_t pair_form(const HermitianFormSpec& omega, const GaussianLatticeVector& u,
                       const GaussianLatticeVector& v);

/// Whether u and v both lie in the integer span of sub's generators.
bool cycle_survives(const GaussianLatticeVector& u, const GaussianLatticeVector& v,
                    const SublatticeDecl& sub);

struct FormWitness {
    int first;   // generator indices, 1-based
    int second;
    GaussianLatticeVector u;
    GaussianLatticeVector v;
    std::int64_t value;
};

struct TakayamaReport {
    std::vector<std::string> warnings;
    bool obstruction = false;
    std::optional<FormWitness> witness;
    int cycles_checked = 0;
};

/// Searches the basis 2-cycles g_p ^ g_q (p < q) of `sub` for a nonzero
/// pairing with omega. Any hit obstructs extra zeros for divisors whose
/// Chern class is omega pulled back to the cover.
TakayamaReport takayama_verdict(const HermitianFormSpec& omega, const SublatticeDecl& sub);

/// Parses "2*ie1 + e2 - 3*e3" (1-based indices) into a vector of dimension n.
GaussianLatticeVector parse_lattice_vector(const std::string& text, int n);
std::string to_string(const GaussianLatticeVector& v);

}  // namespace okalab
