#include "conical/metric.hpp"

#include "conical/errors.hpp"

#include <boost/math/special_functions/sin_pi.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace conical {

namespace {

using boost::math::sin_pi;
constexpr double nan = std::numeric_limits<double>::quiet_NaN();

std::string fmt_orders(const Orders& o)
{
    std::ostringstream s;
    s.precision(17);
    s << "(" << o.alpha << ", " << o.beta << ", " << o.gamma << ")";
    return s.str();
}

void require(bool ok, const Orders& o, const std::string& why)
{
    if (!ok)
        throw InadmissibleOrders("orders " + fmt_orders(o) + ": " + why);
}

void check_point(CPoint p, bool need_one, bool need_zero)
{
    if (!std::isfinite(p.z.real()) || !std::isfinite(p.z.imag()))
        throw DomainError("non-finite z");
    if (p.is_puncture())
        throw DomainError("z is a puncture (0 or 1)");
    if (need_one && p.on_cut_one())
        throw CutError("z lies on the cut [1,+inf) of phi1/phi3", "[1,+inf)");
    if (need_zero && p.on_cut_zero())
        throw CutError("z lies on the cut (-inf,0] of phi2", "(-inf,0]");
}

double check_density(double lam, const char* what)
{
    if (!(lam > 0) || !std::isfinite(lam))
        throw NonPositiveDensity(std::string(what) + ": density is not positive");
    return lam;
}

} // namespace

MetricConstants derive_constants(const Orders& o)
{
    const double al = o.alpha, be = o.beta, ga = o.gamma;
    require(std::isfinite(al) && std::isfinite(be) && std::isfinite(ga), o, "non-finite order");
    require(al > 0 && al <= 1, o, "alpha must lie in (0,1]");
    require(be > 0 && be < 1, o, "beta must lie in (0,1)");
    require(ga > 0 && ga <= 1, o, "gamma must lie in (0,1]");
    require(al + be + ga > 2, o, "alpha+beta+gamma must exceed 2");

    MetricConstants mc;
    mc.orders = o;
    mc.a = (al + be - ga) / 2;
    mc.b = (al + be + ga - 2) / 2;
    mc.c = al;
    mc.is_cusp = (al == 1);
    const double a = mc.a, b = mc.b, c = mc.c;
    require(b > 0, o, "b must be positive");

    mc.B = beta_fn(a, b);
    mc.R = r_ab(a, b);
    mc.gamma_ratio = gamma_fn(a + b - c + 1) * gamma_fn(c) / (gamma_fn(a) * gamma_fn(b));

    if (mc.is_cusp) {
        require(a > 0 && a < 1 && b < 0.5 && a + b < 1, o, "cusp parameters out of range");
        mc.K2 = 0;
        mc.K3 = 1 / mc.B;
        mc.S = std::numbers::pi * sin_pi(a + b) / (sin_pi(a) * sin_pi(b));
        mc.K1 = -mc.S / mc.B;
        mc.delta = nan;
        mc.m0 = nan;
        require(2 * mc.R - mc.S > 0, o, "2R - S must be positive");
        return mc;
    }

    require(a > -0.5 && a < 1 && b > -1 && b < 0.5 && c > 0 && c < 1, o,
            "corner parameters out of range");
    mc.S = nan;
    mc.K1 = -gamma_fn(c - a) * gamma_fn(c - b) / (gamma_fn(c) * gamma_fn(c - a - b));
    mc.K2 = -gamma_fn(a + 1 - c) * gamma_fn(b + 1 - c) / (gamma_fn(1 - c) * gamma_fn(a + b + 1 - c));
    const double rad = sin_pi(a) * sin_pi(b) / (sin_pi(c - a) * sin_pi(c - b));
    require(rad > 0, o, "K3 radicand is not positive");
    mc.K3 = std::sqrt(rad) * gamma_fn(a + b + 1 - c) * gamma_fn(c) / (gamma_fn(a) * gamma_fn(b));
    const double drad = gamma_fn(1 - a) * gamma_fn(1 - b) * gamma_fn(a + 1 - c) * gamma_fn(b + 1 - c) /
                        (gamma_fn(a) * gamma_fn(b) * gamma_fn(c - a) * gamma_fn(c - b));
    require(drad > 0, o, "delta radicand is not positive");
    mc.delta = gamma_fn(c) / gamma_fn(2 - c) * std::sqrt(drad);
    mc.m0 = mc.K1 - 1 / mc.K2;
    require(mc.m0 > 0, o, "K1 - 1/K2 must be positive");
    return mc;
}

cplx phi1(const MetricConstants& mc, CPoint p)
{
    check_point(p, true, false);
    return hyp2f1({mc.a, mc.b, mc.c}, p.z);
}

cplx phi2(const MetricConstants& mc, CPoint p)
{
    check_point(p, false, true);
    const double c3 = mc.is_cusp ? mc.a + mc.b : mc.a + mc.b - mc.c + 1;
    if (std::abs(p.z) < stabilize_radius) {
        // 1 - z rounds away the information near the origin
        if (mc.is_cusp)
            return hyp2f1_log_case_comp({mc.a, mc.b, c3}, 0, p.z);
        return (stabilized_factor(mc, p) - phi1(mc, p)) / mc.K2;
    }
    return hyp2f1({mc.a, mc.b, c3}, 1.0 - p.z);
}

cplx phi3(const MetricConstants& mc, CPoint p)
{
    if (mc.is_cusp)
        throw CuspUnsupported("phi3 is not defined for alpha = 1");
    check_point(p, true, false);
    return hyp2f1({mc.a - mc.c + 1, mc.b - mc.c + 1, 2 - mc.c}, p.z);
}

cplx stabilized_factor(const MetricConstants& mc, CPoint p)
{
    if (mc.is_cusp)
        return phi1(mc, p);
    if (std::abs(p.z) < stabilize_radius) {
        check_point(p, true, true);
        const double e = 1 - mc.c;
        cplx f = hyp2f1({mc.b - mc.c + 1, mc.a - mc.c + 1, 2 - mc.c}, p.z);
        return (-mc.K2 / e) * mc.gamma_ratio * std::pow(p.z, e) * f;
    }
    return mc.K2 * phi2(mc, p) + phi1(mc, p);
}

double m_fn(const MetricConstants& mc, CPoint p)
{
    check_point(p, true, true);
    const cplx f1 = phi1(mc, p);
    const cplx f2 = phi2(mc, p);
    // M = Re[(K1 conj φ1 + conj φ2) φ1 + conj(K2 φ2 + φ1) φ2]
    const cplx s = stabilized_factor(mc, p);
    return ((mc.K1 * std::conj(f1) + std::conj(f2)) * f1 + std::conj(s) * f2).real();
}

double lambda_corner_f1(const MetricConstants& mc, CPoint p)
{
    if (mc.is_cusp)
        throw CuspUnsupported("corner formula requires alpha < 1");
    const double M = m_fn(mc, p);
    const double al = mc.orders.alpha, be = mc.orders.beta;
    const double lam = mc.K3 / (std::pow(std::abs(p.z), al) * std::pow(std::abs(1.0 - p.z), be) * M);
    return check_density(lam, "lambda_corner_f1");
}

double lambda_corner_f2(const MetricConstants& mc, CPoint p)
{
    if (mc.is_cusp)
        throw CuspUnsupported("corner formula requires alpha < 1");
    check_point(p, true, false);
    const double al = mc.orders.alpha, be = mc.orders.beta;
    const double r = std::abs(p.z);
    const double d = std::norm(phi1(mc, p)) -
                     mc.delta * mc.delta * std::pow(r, 2 - 2 * al) * std::norm(phi3(mc, p));
    const double lam = mc.delta * (1 - al) / (std::pow(r, al) * std::pow(std::abs(1.0 - p.z), be) * d);
    return check_density(lam, "lambda_corner_f2");
}

double lambda_cusp(const MetricConstants& mc, CPoint p)
{
    if (!mc.is_cusp)
        throw DomainError("lambda_cusp requires alpha = 1");
    check_point(p, true, true);
    const cplx f1 = phi1(mc, p);
    const cplx f2 = phi2(mc, p);
    const double M = mc.K1 * std::norm(f1) + 2 * (f1 * std::conj(f2)).real();
    const double lam = mc.K3 / (std::abs(p.z) * std::pow(std::abs(1.0 - p.z), mc.orders.beta) * M);
    return check_density(lam, "lambda_cusp");
}

LambdaValue lambda_eval(const MetricConstants& mc, CPoint p, Formula f)
{
    if (mc.is_cusp) {
        if (f == Formula::F2)
            throw CuspUnsupported("formula f2 needs phi3, undefined for alpha = 1");
        return {lambda_cusp(mc, p), "cusp"};
    }
    if (f == Formula::Auto)
        f = (std::abs(p.z.imag()) < f2_axis_band && p.z.real() < 0) ? Formula::F2 : Formula::F1;
    if (f == Formula::F2)
        return {lambda_corner_f2(mc, p), "f2"};
    return {lambda_corner_f1(mc, p), "f1"};
}

double lambda(const MetricConstants& mc, CPoint p, Formula f) { return lambda_eval(mc, p, f).value; }

double curvature_fd(const MetricConstants& mc, CPoint p, double h)
{
    if (!(h > 0))
        throw DomainError("curvature_fd: h must be positive");
    const cplx z = p.z;
    const cplx dirs[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    double ring1 = 0, ring2 = 0;
    auto logl = [&](cplx q) {
        CPoint cp(q);
        if (cp.excluded())
            throw StencilOutOfDomain("curvature_fd: stencil point on a cut or puncture");
        return std::log(lambda(mc, cp));
    };
    const double u0 = logl(z);
    for (cplx d : dirs) {
        ring1 += logl(z + h * d);
        ring2 += logl(z + 2 * h * d);
    }
    // 4 L_h - L_2h over 3, written out
    const double lap = (16 * ring1 - ring2 - 60 * u0) / (12 * h * h);
    const double lam = std::exp(u0);
    return -lap / (lam * lam);
}

} // namespace conical
