#pragma once

// Independent reference computations used by the unit and acceptance suites.
// None of these call into the library's evaluation paths.

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace oracle {

using ldc = std::complex<long double>;
constexpr long double kPiL = 3.141592653589793238462643383279502884L;

// Stein's product written literally, in extended precision:
//   exp(l^2/4pi + s l/(1-i)) prod_{nu<N}(1 - w/e^{s i l + 2 nu pi}) prod_{1<=mu<=M}(1 - 1/(w e^{-s i l + 2 mu pi}))
// with s = +1 for F+ and s = -1 for F-.
inline std::complex<double> stein_reference(std::complex<double> log_z, std::complex<double> w_in, int s,
                                            int nu_terms, int mu_terms) {
    const ldc l(log_z.real(), log_z.imag());
    const ldc w(w_in.real(), w_in.imag());
    const ldc i(0.0L, 1.0L);
    const long double sign = static_cast<long double>(s);
    ldc value = std::exp(l * l / (4.0L * kPiL) + sign * l / ldc(1.0L, -1.0L));
    for (int nu = 0; nu < nu_terms; ++nu) value *= 1.0L - w / std::exp(sign * i * l + 2.0L * nu * kPiL);
    for (int mu = 1; mu <= mu_terms; ++mu) value *= 1.0L - 1.0L / (w * std::exp(-sign * i * l + 2.0L * mu * kPiL));
    return {static_cast<double>(value.real()), static_cast<double>(value.imag())};
}

// #{k : r1 < |sheet k| < r2}, sheets of w = z^i having modulus e^{-theta + 2 k pi}.
inline int sheet_count(double theta, double r1, double r2) {
    int count = 0;
    for (int k = -200; k <= 200; ++k) {
        const double m = std::exp(-theta + 2.0 * static_cast<double>(kPiL) * k);
        if (m > r1 && m < r2) ++count;
    }
    return count;
}

// Zeros of e^zeta - 1 in |zeta| < R: zeta = 2 pi i m.
inline int exp_minus_one_zeros(double radius) {
    int count = 0;
    for (int m = -1000; m <= 1000; ++m) {
        if (std::abs(2.0 * static_cast<double>(kPiL) * m) < radius) ++count;
    }
    return count;
}

// omega(u, v) via the real 2n x 2n matrix of the form in coordinates
// (x_1..x_n, y_1..y_n). Each i dz_j ^ dzbar_k expands to
//   i dx_j^dx_k + dx_j^dy_k - dy_j^dx_k + i dy_j^dy_k.
struct GInt {
    std::int64_t re = 0;
    std::int64_t im = 0;
};

inline GInt form_pairing_bruteforce(int n, std::int64_t d, bool offdiag, const std::vector<std::int64_t>& ua,
                                    const std::vector<std::int64_t>& ub, const std::vector<std::int64_t>& va,
                                    const std::vector<std::int64_t>& vb) {
    const int dim = 2 * n;
    std::vector<GInt> mat(static_cast<std::size_t>(dim) * dim);
    auto wedge = [&](int p, int q, GInt c) {
        mat[p * dim + q].re += c.re;
        mat[p * dim + q].im += c.im;
        mat[q * dim + p].re -= c.re;
        mat[q * dim + p].im -= c.im;
    };
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            const std::int64_t h = j == k ? d : (offdiag ? 1 : 0);
            if (h == 0) continue;
            wedge(j, k, {0, h});          // i dx_j ^ dx_k
            wedge(j, n + k, {h, 0});      // dx_j ^ dy_k
            wedge(n + j, k, {-h, 0});     // -dy_j ^ dx_k
            wedge(n + j, n + k, {0, h});  // i dy_j ^ dy_k
        }
    }
    std::vector<std::int64_t> u(dim), v(dim);
    for (int j = 0; j < n; ++j) {
        u[j] = ua[j];
        u[n + j] = ub[j];
        v[j] = va[j];
        v[n + j] = vb[j];
    }
    GInt out;
    for (int p = 0; p < dim; ++p) {
        for (int q = 0; q < dim; ++q) {
            out.re += u[p] * mat[p * dim + q].re * v[q];
            out.im += u[p] * mat[p * dim + q].im * v[q];
        }
    }
    return out;
}

}  // namespace oracle
