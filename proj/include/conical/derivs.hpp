#pragma once

#include "conical/metric.hpp"

#include <array>
#include <functional>
#include <utility>

namespace conical {

inline constexpr int n_cap = 6;

// m: order in z-bar, n: order in z
struct DerivIdx {
    int m = 0, n = 0;
};

// Truncated Taylor coefficients c[m][n] of a function of (z-bar, z) around a point:
// f = sum c[m][n] X^m Y^n with X = z-bar - conj(z0), Y = z - z0.
class BiSeries {
public:
    explicit BiSeries(int order = 0);

    int order() const { return n_; }
    cplx& at(int m, int n) { return c_[m][n]; }
    cplx at(int m, int n) const { return c_[m][n]; }

    static BiSeries constant(int order, cplx v);
    // f(z) with c[0][n] = h[n]
    static BiSeries holomorphic(int order, const cplx* h);
    // conj(g(z)) with c[m][0] = conj(h[m])
    static BiSeries antiholomorphic(int order, const cplx* h);

    BiSeries& operator+=(const BiSeries& o);
    BiSeries& operator-=(const BiSeries& o);
    BiSeries& operator*=(cplx s);
    friend BiSeries operator+(BiSeries a, const BiSeries& b) { return a += b; }
    friend BiSeries operator-(BiSeries a, const BiSeries& b) { return a -= b; }
    friend BiSeries operator*(BiSeries a, cplx s) { return a *= s; }
    friend BiSeries operator*(cplx s, BiSeries a) { return a *= s; }
    friend BiSeries operator*(const BiSeries& a, const BiSeries& b);

    BiSeries log() const;
    BiSeries exp() const;

private:
    int n_;
    std::array<std::array<cplx, n_cap + 1>, n_cap + 1> c_{};
};

// values[m][n] = dbar^m d^n f at the point
struct WirtingerJet {
    int order = 0;
    std::array<std::array<cplx, n_cap + 1>, n_cap + 1> values{};

    cplx operator()(int m, int n) const { return values[m][n]; }
    cplx at(DerivIdx i) const { return values[i.m][i.n]; }

    static WirtingerJet from_series(const BiSeries& s);
};

enum class RemainderKind { V_corner, W_cusp };

cplx phi2_deriv(const MetricConstants& mc, CPoint p, int n);
cplx m_deriv(const MetricConstants& mc, CPoint p, DerivIdx idx);

WirtingerJet m_jet(const MetricConstants& mc, CPoint p, int order);
WirtingerJet log_m_jet(const MetricConstants& mc, CPoint p, int order);
WirtingerJet u_jet(const MetricConstants& mc, CPoint p, int order);
// From u_jet by the Leibniz recursion dbar^m d^n lambda = sum C(n-1,j) C(m,i) dbar^{m-i} d^{n-j} u dbar^i d^j lambda.
WirtingerJet lambda_jet(const MetricConstants& mc, CPoint p, int order);

double remainder(const MetricConstants& mc, CPoint p, RemainderKind kind);
WirtingerJet remainder_jet(const MetricConstants& mc, CPoint p, int order, RemainderKind kind);

// Taylor coefficients h[k] = f^(k)(z0)/k!, k = 0..order, of the holomorphic pieces.
std::array<cplx, n_cap + 1> phi1_taylor(const MetricConstants& mc, CPoint p, int order);
std::array<cplx, n_cap + 1> phi2_taylor(const MetricConstants& mc, CPoint p, int order);
std::array<cplx, n_cap + 1> stabilized_taylor(const MetricConstants& mc, CPoint p, int order);

// d^n log log(1/|z|) = sum_j C^(n)_j / (z^n log^j(1/|z|)); (A_n, B_n) = (C^(n)_1, C^(n)_2).
std::pair<double, double> loglog_deriv_coeffs(int n);
// leading coefficients (C_m, D_m) of dbar^m d^n log log(1/|z|) against z-bar^m z^n log^2, log^3
std::pair<double, double> loglog_mixed_coeffs(int m, int n);

using ScalarField = std::function<double(cplx)>;

// Tensor central differences, O(h^2).
cplx wirtinger_fd(const ScalarField& f, cplx z, DerivIdx idx, double h);
// Richardson extrapolation over h, h/2, ...; levels = 1 gives (4 D(h/2) - D(h)) / 3, O(h^4),
// each further level adds two orders.
cplx wirtinger_fd_richardson(const ScalarField& f, cplx z, DerivIdx idx, double h, int levels = 1);

} // namespace conical
