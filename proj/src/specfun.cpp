#include "conical/specfun.hpp"

#include "conical/errors.hpp"

#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/sin_pi.hpp>
#include <boost/math/special_functions/cos_pi.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace conical {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double eps_series = std::numeric_limits<double>::epsilon() / 2;

bool is_nonpos_int(double x) { return x <= 0 && x == std::floor(x); }

void check_finite(double x, const char* what)
{
    if (!std::isfinite(x))
        throw DomainError(std::string(what) + ": non-finite argument");
}

void check_triple(const HypTriple& p)
{
    check_finite(p.a, "hyp2f1");
    check_finite(p.b, "hyp2f1");
    check_finite(p.c, "hyp2f1");
    if (is_nonpos_int(p.c))
        throw DomainError("hyp2f1: c = " + std::to_string(p.c) + " is a non-positive integer");
}

bool on_cut(cplx z) { return z.imag() == 0 && z.real() >= 1; }

// Neumaier summation, componentwise.
struct CompSum {
    double re = 0, im = 0, cre = 0, cim = 0;
    static void add(double& s, double& c, double x)
    {
        double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    void operator+=(cplx x)
    {
        add(re, cre, x.real());
        add(im, cim, x.imag());
    }
    cplx value() const { return {re + cre, im + cim}; }
};

// Upper bound for |(x+j)/(y+j)| over all j >= k, valid once y + k > 0.
double ratio_sup(double x, double y, int k)
{
    double num = std::abs(x) + k;
    double den = y + k;
    return std::max(1.0, num / den);
}

cplx dispatch(const HypTriple& p, cplx z, bool allow_continued, EvalRegion& reg);

// Taylor stepping of the hypergeometric ODE from a seed point to z.
cplx continue_ode(const HypTriple& p, cplx z, bool seed_at_one)
{
    const double a = p.a, b = p.b, c = p.c;
    cplx zs;
    if (seed_at_one) {
        cplx d = z - 1.0;
        zs = 1.0 + 0.5 * d / std::abs(d);
    } else {
        zs = 0.45 * z / std::abs(z);
    }
    EvalRegion r0, r1;
    cplx w = dispatch(p, zs, false, r0);
    cplx dw = (a * b / c) * dispatch({a + 1, b + 1, c + 1}, zs, false, r1);

    cplx zk = zs;
    const cplx q1 = -(a + b + 1);
    for (int step = 0; step < 2000; ++step) {
        cplx rem = z - zk;
        double dist = std::abs(rem);
        if (dist == 0)
            return w;
        double reach = 0.5 * std::min(std::abs(zk), std::abs(1.0 - zk));
        cplx h = dist <= reach ? rem : rem * (reach / dist);

        const cplx P0 = zk * (1.0 - zk);
        const cplx P1 = 1.0 - 2.0 * zk;
        const cplx Q0 = c - (a + b + 1) * zk;
        cplx wkm1 = w, wk = dw;  // coefficients w_0, w_1
        CompSum val, der;
        val += wkm1;
        val += wk * h;
        der += wk;
        cplx hp = h;  // h^k for k = 1
        int quiet = 0;
        for (int k = 0; k < 400; ++k) {
            // w_{k+2} from w_{k+1} (= wk) and w_k (= wkm1)
            double kk = k;
            cplx next = -((P1 * (kk * (kk + 1)) + Q0 * (kk + 1)) * wk +
                          (-(kk * (kk - 1)) + q1 * kk - a * b) * wkm1) /
                        (P0 * ((kk + 2) * (kk + 1)));
            cplx dterm = (kk + 2) * next * hp;
            hp *= h;
            cplx term = next * hp;
            val += term;
            der += dterm;
            wkm1 = wk;
            wk = next;
            double scale = std::abs(val.value());
            if (std::abs(term) <= 1e-18 * scale && std::abs(dterm) * std::abs(h) <= 1e-18 * scale) {
                if (++quiet == 2)
                    break;
            } else {
                quiet = 0;
            }
        }
        w = val.value();
        dw = der.value();
        zk += h;
        if (dist <= reach)
            return w;
    }
    throw NoConvergence("hyp2f1: analytic continuation did not reach the target");
}

cplx dispatch(const HypTriple& p, cplx z, bool allow_continued, EvalRegion& reg)
{
    if (std::abs(z) <= r_series) {
        reg.tag = Region::Series;
        reg.radius = r_series;
        return hyp2f1_series(p, z);
    }
    const double s = p.c - p.a - p.b;
    const double n = std::round(s);
    const double frac = std::abs(s - n);
    const bool exact = frac < eps_int;
    const bool band = !exact && frac < eps_band;
    cplx w = 1.0 - z;
    if (std::abs(w) <= r_near_one) {
        if (s < 0) {
            // Euler transform moves c-a-b to the non-negative side
            reg.euler = true;
            return std::pow(w, s) * dispatch({p.c - p.a, p.c - p.b, p.c}, z, allow_continued, reg);
        }
        if (exact && std::abs(w) <= r_near_log) {
            reg.tag = Region::NearOneLog;
            reg.radius = r_near_log;
            return hyp2f1_log_case(p, static_cast<int>(n), z);
        }
        if (!band && !exact) {
            reg.tag = Region::NearOne;
            reg.radius = r_near_one;
            return hyp2f1_near_one(p, z);
        }
    }
    if (!allow_continued)
        throw DomainError("hyp2f1: seed point outside the direct regions");
    reg.tag = Region::Continued;
    // near-integer c-a-b: the z = 1 side forms lose digits, seed from the series
    const bool from_one = !band && !exact && z.real() >= 0.5;
    reg.radius = from_one ? r_near_one : r_series;
    return continue_ode(p, z, from_one);
}

} // namespace

const char* region_name(Region r)
{
    switch (r) {
    case Region::Series: return "Series";
    case Region::NearOne: return "NearOne";
    case Region::NearOneLog: return "NearOneLog";
    case Region::Continued: return "Continued";
    }
    return "?";
}

double gamma_fn(double x)
{
    check_finite(x, "gamma");
    if (is_nonpos_int(x))
        throw PoleError("gamma: pole at " + std::to_string(x));
    if (x < 0.5)
        return pi / (boost::math::sin_pi(x) * std::tgamma(1 - x));
    return std::tgamma(x);
}

double rgamma(double x)
{
    if (is_nonpos_int(x))
        return 0.0;
    return 1.0 / gamma_fn(x);
}

double digamma(double x)
{
    check_finite(x, "digamma");
    if (is_nonpos_int(x))
        throw PoleError("digamma: pole at " + std::to_string(x));
    if (x < 0.5)
        return boost::math::digamma(1 - x) - pi * boost::math::cos_pi(x) / boost::math::sin_pi(x);
    return boost::math::digamma(x);
}

double pochhammer(double a, int n)
{
    if (n < 0)
        throw DomainError("pochhammer: negative n");
    double r = 1;
    for (int k = 0; k < n; ++k)
        r *= a + k;
    return r;
}

double beta_fn(double a, double b) { return gamma_fn(a) * gamma_fn(b) / gamma_fn(a + b); }

double r_ab(double a, double b) { return 2 * digamma(1) - digamma(a) - digamma(b); }

double g_fn(double x)
{
    if (!(x > 0 && x < 1))
        throw DomainError("g_fn: x must lie in (0,1)");
    double lo = std::min(x, 1 - x), hi = std::max(x, 1 - x);
    return 2 * digamma(1) - (digamma(lo) + digamma(hi));
}

double harmonic(int n)
{
    double h = 0;
    for (int k = 1; k <= n; ++k)
        h += 1.0 / k;
    return h;
}

cplx hyp2f1_series(const HypTriple& p, cplx z)
{
    check_triple(p);
    const double az = std::abs(z);
    if (!(az < 1))
        throw DomainError("hyp2f1_series: |z| >= 1");
    const double a = p.a, b = p.b, c = p.c;
    CompSum sum;
    sum += 1.0;
    cplx term = 1.0;
    for (int k = 0; k < n_max_terms; ++k) {
        term *= ((a + k) * (b + k) / ((c + k) * (k + 1.0))) * z;
        if (term == 0.0)
            return sum.value();
        sum += term;
        // remaining tail starts at index k+2; ratios from j = k+1 on
        int j = k + 1;
        if (c + j > 0) {
            double rho = az * ratio_sup(a, 1, j) * ratio_sup(b, c, j);
            if (rho < 1) {
                double tail = std::abs(term) * rho / (1 - rho);
                if (tail <= eps_series * std::abs(sum.value()))
                    return sum.value();
            }
        }
    }
    throw NoConvergence("hyp2f1_series: term budget exhausted");
}

cplx hyp2f1_near_one(const HypTriple& p, cplx z)
{
    check_triple(p);
    if (on_cut(z))
        throw CutError("hyp2f1: z on the cut [1,+inf)", "[1,+inf)");
    const cplx w = 1.0 - z;
    if (!(std::abs(w) < 1))
        throw DomainError("hyp2f1_near_one: |1-z| >= 1");
    const double a = p.a, b = p.b, c = p.c;
    const double s = c - a - b;
    const double n = std::round(s);
    if (std::abs(s - n) < eps_int) {
        if (n >= 0)
            throw DegenerateCase("hyp2f1_near_one: c-a-b is a non-negative integer");
        throw DomainError("hyp2f1_near_one: c-a-b is a negative integer");
    }
    const double gc = gamma_fn(c);
    const double A1 = gc * gamma_fn(s) * rgamma(c - a) * rgamma(c - b);
    const double A2 = gc * gamma_fn(-s) * rgamma(a) * rgamma(b);
    cplx r = 0;
    if (A1 != 0)
        r += A1 * hyp2f1_series({a, b, 1 - s}, w);
    if (A2 != 0)
        r += A2 * std::pow(w, s) * hyp2f1_series({c - a, c - b, 1 + s}, w);
    return r;
}

cplx hyp2f1_log_case(const HypTriple& p, int n, cplx z)
{
    check_triple(p);
    if (n < 0)
        throw DomainError("hyp2f1_log_case: n < 0");
    const double a = p.a, b = p.b;
    if (std::abs(p.c - (a + b + n)) > eps_int * std::max(1.0, std::abs(p.c)))
        throw DomainError("hyp2f1_log_case: c != a+b+n");
    if (on_cut(z))
        throw CutError("hyp2f1: z on the cut [1,+inf)", "[1,+inf)");
    return hyp2f1_log_case_comp(p, n, 1.0 - z);
}

cplx hyp2f1_log_case_comp(const HypTriple& p, int n, cplx w)
{
    check_triple(p);
    if (n < 0)
        throw DomainError("hyp2f1_log_case: n < 0");
    const double a = p.a, b = p.b;
    if (std::abs(p.c - (a + b + n)) > eps_int * std::max(1.0, std::abs(p.c)))
        throw DomainError("hyp2f1_log_case: c != a+b+n");
    if (w.imag() == 0 && w.real() <= 0)
        throw CutError("hyp2f1: z on the cut [1,+inf)", "[1,+inf)");
    const double aw = std::abs(w);
    if (!(aw < 1))
        throw DomainError("hyp2f1_log_case: |1-z| >= 1");

    const double gabn = gamma_fn(a + b + n);
    cplx finite = 0;
    if (n > 0) {
        CompSum s;
        cplx t = 1.0;
        s += t;
        for (int j = 0; j + 1 < n; ++j) {
            t *= (a + j) * (b + j) / ((j + 1.0) * (1.0 - n + j)) * w;
            s += t;
        }
        finite = gamma_fn(n) * gabn * rgamma(a + n) * rgamma(b + n) * s.value();
    }

    const double pref = gabn * rgamma(a) * rgamma(b);
    if (pref == 0)
        return finite;

    const cplx lw = std::log(w);
    double psi_j1 = digamma(1);           // psi(j+1)
    double psi_jn1 = digamma(n + 1.0);    // psi(j+n+1)
    double psi_a = digamma(a + n);        // psi(a+j+n)
    double psi_b = digamma(b + n);        // psi(b+j+n)
    double t = 1;
    for (int k = 1; k <= n; ++k)
        t /= k;  // 1/n!
    cplx tz = t;
    CompSum s;
    for (int j = 0; j < n_max_terms; ++j) {
        cplx bracket = lw - psi_j1 - psi_jn1 + psi_a + psi_b;
        cplx term = tz * bracket;
        s += term;
        // advance to j+1
        tz *= (a + n + j) * (b + n + j) / ((j + 1.0) * (j + n + 1.0)) * w;
        psi_j1 += 1.0 / (j + 1);
        psi_jn1 += 1.0 / (j + n + 1);
        psi_a += 1.0 / (a + n + j);
        psi_b += 1.0 / (b + n + j);
        if (tz == 0.0)
            break;
        int jj = j + 1;
        {
            double rho = aw * ratio_sup(a + n, 1, jj) * ratio_sup(b + n, n + 1, jj);
            if (rho < 1) {
                // the bracket converges, 2x covers its drift over the tail
                double tail = 2 * std::abs(tz) * (std::abs(bracket) + 1) / (1 - rho);
                if (tail <= eps_series * std::abs(s.value()))
                    break;
            }
        }
        if (j + 1 == n_max_terms)
            throw NoConvergence("hyp2f1_log_case: term budget exhausted");
    }
    cplx mw = std::pow(-w, n);
    return finite - pref * mw * s.value();
}

Hyp2f1Result hyp2f1_eval(const HypTriple& p, cplx z)
{
    check_triple(p);
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw DomainError("hyp2f1: non-finite z");
    if (on_cut(z))
        throw CutError("hyp2f1: z on the cut [1,+inf)", "[1,+inf)");
    Hyp2f1Result r;
    if (z.imag() < 0) {
        r.value = std::conj(dispatch(p, std::conj(z), true, r.region));
    } else {
        r.value = dispatch(p, z, true, r.region);
    }
    return r;
}

cplx hyp2f1(const HypTriple& p, cplx z) { return hyp2f1_eval(p, z).value; }

cplx hyp2f1_deriv(const HypTriple& p, cplx z, int n)
{
    if (n < 0)
        throw DomainError("hyp2f1_deriv: negative order");
    if (n == 0)
        return hyp2f1(p, z);
    double coef = pochhammer(p.a, n) * pochhammer(p.b, n) / pochhammer(p.c, n);
    if (coef == 0)
        return 0.0;
    return coef * hyp2f1({p.a + n, p.b + n, p.c + n}, z);
}

} // namespace conical
