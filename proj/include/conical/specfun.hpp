#pragma once

#include <complex>

namespace conical {

using cplx = std::complex<double>;

struct HypTriple {
    double a = 0, b = 0, c = 1;
};

enum class Region { Series, NearOne, NearOneLog, Continued };

const char* region_name(Region r);

struct EvalRegion {
    Region tag = Region::Series;
    double radius = 0;   // switch radius that selected the region
    bool euler = false;  // evaluated as (1-z)^{c-a-b} F(c-a, c-b; c; z)
};

struct Hyp2f1Result {
    cplx value;
    EvalRegion region;
};

inline constexpr double r_series = 0.5;
inline constexpr double r_near_one = 0.75;
inline constexpr double r_near_log = 0.5;
inline constexpr double eps_int = 1e-9;
inline constexpr double eps_band = 1e-4;
inline constexpr int n_max_terms = 10000;

double gamma_fn(double x);
double rgamma(double x);  // 1/gamma_fn(x), zero at the poles
double digamma(double x);
double pochhammer(double a, int n);
double beta_fn(double a, double b);
double r_ab(double a, double b);
double g_fn(double x);
double harmonic(int n);

// Plain power series; accepts |z| < 1 (the dispatcher only uses it for |z| <= r_series).
cplx hyp2f1_series(const HypTriple& p, cplx z);
// Two-term connection formula around z = 1.
cplx hyp2f1_near_one(const HypTriple& p, cplx z);
// F(a, b; a+b+n; z) in logarithmic form; p.c is checked against a+b+n.
cplx hyp2f1_log_case(const HypTriple& p, int n, cplx z);
// Same, with w = 1 - z given directly (no rounding of 1 - z for tiny w).
cplx hyp2f1_log_case_comp(const HypTriple& p, int n, cplx w);

Hyp2f1Result hyp2f1_eval(const HypTriple& p, cplx z);
cplx hyp2f1(const HypTriple& p, cplx z);
// d^n/dz^n F(a,b;c;z); n = 0 returns F itself.
cplx hyp2f1_deriv(const HypTriple& p, cplx z, int n);

} // namespace conical
