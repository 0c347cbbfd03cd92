#pragma once

#include "conical/specfun.hpp"

#include <string>

namespace conical {

struct Orders {
    double alpha = 0, beta = 0, gamma = 0;
};

struct MetricConstants {
    Orders orders;
    double a = 0, b = 0, c = 0;
    double K1 = 0, K2 = 0, K3 = 0;
    double delta = 0;  // NaN in the cusp case
    double B = 0, R = 0;
    double S = 0;      // cusp only, NaN otherwise
    bool is_cusp = false;

    // Gamma(a+b-c+1) Gamma(c) / (Gamma(a) Gamma(b)); the scale of the z^{1-c} branch of φ2
    double gamma_ratio = 0;
    // M(0) = K1 - 1/K2 (corner only)
    double m0 = 0;
};

MetricConstants derive_constants(const Orders& o);

// A point of C \ {0,1}; construction is cheap and never throws.
struct CPoint {
    cplx z;
    CPoint(cplx z_) : z(z_) {}
    CPoint(double x) : z(x, 0) {}

    bool is_puncture() const { return z == cplx(0) || z == cplx(1); }
    bool on_cut_one() const { return z.imag() == 0 && z.real() >= 1; }   // cut of φ1, φ3
    bool on_cut_zero() const { return z.imag() == 0 && z.real() <= 0; }  // cut of φ2
    bool excluded() const { return is_puncture() || on_cut_one() || on_cut_zero(); }
};

enum class Formula { F1, F2, Auto };

cplx phi1(const MetricConstants& mc, CPoint p);
cplx phi2(const MetricConstants& mc, CPoint p);
cplx phi3(const MetricConstants& mc, CPoint p);

// K2 φ2 + φ1, via the z^{1-c} form near the origin (corner case only).
cplx stabilized_factor(const MetricConstants& mc, CPoint p);

double m_fn(const MetricConstants& mc, CPoint p);

double lambda_corner_f1(const MetricConstants& mc, CPoint p);
double lambda_corner_f2(const MetricConstants& mc, CPoint p);
double lambda_cusp(const MetricConstants& mc, CPoint p);

struct LambdaValue {
    double value;
    const char* path;  // "f1", "f2" or "cusp"
};

LambdaValue lambda_eval(const MetricConstants& mc, CPoint p, Formula f = Formula::Auto);
double lambda(const MetricConstants& mc, CPoint p, Formula f = Formula::Auto);

// -Δ log λ / λ² from 5-point Laplacians at steps h and 2h, Richardson-combined.
double curvature_fd(const MetricConstants& mc, CPoint p, double h);

inline constexpr double stabilize_radius = 0.1;
inline constexpr double f2_axis_band = 1e-8;

} // namespace conical
