#include "conical/derivs.hpp"

#include "conical/errors.hpp"

#include <cmath>
#include <vector>

namespace conical {

namespace {

using Taylor = std::array<cplx, n_cap + 1>;

void check_order(int order)
{
    if (order < 0 || order > n_cap)
        throw DomainError("jet order outside [0, " + std::to_string(n_cap) + "]");
}

double factorial(int n) { return std::tgamma(n + 1.0); }

double binom(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    return std::round(factorial(n) / (factorial(k) * factorial(n - k)));
}

// falling factorial e (e-1) ... (e-k+1)
double falling(double e, int k)
{
    double r = 1;
    for (int i = 0; i < k; ++i)
        r *= e - i;
    return r;
}

void check_point(CPoint p, bool need_one, bool need_zero)
{
    if (p.is_puncture())
        throw DomainError("z is a puncture (0 or 1)");
    if (need_one && p.on_cut_one())
        throw CutError("z lies on the cut [1,+inf)", "[1,+inf)");
    if (need_zero && p.on_cut_zero())
        throw CutError("z lies on the cut (-inf,0]", "(-inf,0]");
}

// d^n of C0 z^e F(b-c+1, a-c+1; 2-c; z), C0 = -K2 Γr / e
cplx stabilized_deriv_near_zero(const MetricConstants& mc, cplx z, int n)
{
    const double e = 1 - mc.c;
    const double c0 = -mc.K2 * mc.gamma_ratio / e;
    const HypTriple t{mc.b - mc.c + 1, mc.a - mc.c + 1, 2 - mc.c};
    const cplx ze = std::pow(z, e);
    cplx s = 0;
    cplx zk = 1;  // z^{-k}
    for (int k = 0; k <= n; ++k) {
        s += binom(n, k) * falling(e, k) * ze * zk * hyp2f1_deriv(t, z, n - k);
        zk /= z;
    }
    return c0 * s;
}

// (1/2)(log f + conj log f) for a holomorphic f with Taylor coefficients h
BiSeries real_part_log(int order, const Taylor& h) { return 0.5 * (BiSeries::holomorphic(order, h.data()) + BiSeries::antiholomorphic(order, h.data())); }

// Taylor coefficients of log z and log(1-z) at z0
Taylor log_z_taylor(cplx z0, int order)
{
    Taylor h{};
    h[0] = std::log(z0);
    cplx p = 1;
    for (int k = 1; k <= order; ++k) {
        p /= z0;
        h[k] = (k % 2 ? 1.0 : -1.0) * p / double(k);
    }
    return h;
}

Taylor log_1mz_taylor(cplx z0, int order)
{
    Taylor h{};
    const cplx w = 1.0 - z0;
    h[0] = std::log(w);
    cplx p = 1;
    for (int k = 1; k <= order; ++k) {
        p /= w;
        h[k] = -p / double(k);
    }
    return h;
}

BiSeries log_abs_z(cplx z0, int order) { return real_part_log(order, log_z_taylor(z0, order)); }
BiSeries log_abs_1mz(cplx z0, int order) { return real_part_log(order, log_1mz_taylor(z0, order)); }

BiSeries m_series(const MetricConstants& mc, CPoint p, int order)
{
    check_order(order);
    check_point(p, true, true);
    const Taylor p1 = phi1_taylor(mc, p, order);
    const Taylor p2 = phi2_taylor(mc, p, order);
    const Taylor s = stabilized_taylor(mc, p, order);
    BiSeries out(order);
    for (int m = 0; m <= order; ++m)
        for (int n = 0; n <= order; ++n)
            out.at(m, n) = (mc.K1 * std::conj(p1[m]) + std::conj(p2[m])) * p1[n] + std::conj(s[m]) * p2[n];
    return out;
}

BiSeries u_series(const MetricConstants& mc, CPoint p, int order)
{
    const BiSeries logm = m_series(mc, p, order).log();
    return BiSeries::constant(order, std::log(mc.K3)) - mc.orders.alpha * log_abs_z(p.z, order) -
           mc.orders.beta * log_abs_1mz(p.z, order) - logm;
}

void check_kind(const MetricConstants& mc, CPoint p, RemainderKind kind)
{
    if ((kind == RemainderKind::W_cusp) != mc.is_cusp)
        throw DomainError(mc.is_cusp ? "remainder v needs alpha < 1" : "remainder w needs alpha = 1");
    if (kind == RemainderKind::W_cusp && !(std::abs(p.z) < 1))
        throw DomainError("remainder w needs 0 < |z| < 1");
}

} // namespace

// BiSeries

BiSeries::BiSeries(int order) : n_(order) { check_order(order); }

BiSeries BiSeries::constant(int order, cplx v)
{
    BiSeries s(order);
    s.c_[0][0] = v;
    return s;
}

BiSeries BiSeries::holomorphic(int order, const cplx* h)
{
    BiSeries s(order);
    for (int n = 0; n <= order; ++n)
        s.c_[0][n] = h[n];
    return s;
}

BiSeries BiSeries::antiholomorphic(int order, const cplx* h)
{
    BiSeries s(order);
    for (int m = 0; m <= order; ++m)
        s.c_[m][0] = std::conj(h[m]);
    return s;
}

BiSeries& BiSeries::operator+=(const BiSeries& o)
{
    n_ = std::min(n_, o.n_);
    for (int m = 0; m <= n_; ++m)
        for (int n = 0; n <= n_; ++n)
            c_[m][n] += o.c_[m][n];
    return *this;
}

BiSeries& BiSeries::operator-=(const BiSeries& o)
{
    n_ = std::min(n_, o.n_);
    for (int m = 0; m <= n_; ++m)
        for (int n = 0; n <= n_; ++n)
            c_[m][n] -= o.c_[m][n];
    return *this;
}

BiSeries& BiSeries::operator*=(cplx s)
{
    for (auto& row : c_)
        for (auto& v : row)
            v *= s;
    return *this;
}

BiSeries operator*(const BiSeries& a, const BiSeries& b)
{
    const int N = std::min(a.n_, b.n_);
    BiSeries r(N);
    for (int m = 0; m <= N; ++m)
        for (int n = 0; n <= N; ++n) {
            cplx s = 0;
            for (int i = 0; i <= m; ++i)
                for (int j = 0; j <= n; ++j)
                    s += a.c_[i][j] * b.c_[m - i][n - j];
            r.c_[m][n] = s;
        }
    return r;
}

BiSeries BiSeries::log() const
{
    const cplx f0 = c_[0][0];
    if (f0 == 0.0)
        throw DomainError("BiSeries::log of a series with zero constant term");
    BiSeries g(n_);
    g.c_[0][0] = std::log(f0);
    // f dX g = dX f on the Y^0 column
    for (int m = 0; m < n_; ++m) {
        cplx s = double(m + 1) * c_[m + 1][0];
        for (int i = 1; i <= m; ++i)
            s -= c_[i][0] * double(m - i + 1) * g.c_[m - i + 1][0];
        g.c_[m + 1][0] = s / (double(m + 1) * f0);
    }
    // f dY g = dY f
    for (int m = 0; m <= n_; ++m)
        for (int n = 0; n < n_; ++n) {
            cplx s = double(n + 1) * c_[m][n + 1];
            for (int i = 0; i <= m; ++i)
                for (int j = 0; j <= n; ++j) {
                    if (i == 0 && j == 0)
                        continue;
                    s -= c_[i][j] * double(n - j + 1) * g.c_[m - i][n - j + 1];
                }
            g.c_[m][n + 1] = s / (double(n + 1) * f0);
        }
    return g;
}

BiSeries BiSeries::exp() const
{
    BiSeries e(n_);
    e.c_[0][0] = std::exp(c_[0][0]);
    for (int m = 0; m < n_; ++m) {
        cplx s = 0;
        for (int i = 0; i <= m; ++i)
            s += e.c_[i][0] * double(m - i + 1) * c_[m - i + 1][0];
        e.c_[m + 1][0] = s / double(m + 1);
    }
    for (int m = 0; m <= n_; ++m)
        for (int n = 0; n < n_; ++n) {
            cplx s = 0;
            for (int i = 0; i <= m; ++i)
                for (int j = 0; j <= n; ++j)
                    s += e.c_[i][j] * double(n - j + 1) * c_[m - i][n - j + 1];
            e.c_[m][n + 1] = s / double(n + 1);
        }
    return e;
}

WirtingerJet WirtingerJet::from_series(const BiSeries& s)
{
    WirtingerJet j;
    j.order = s.order();
    for (int m = 0; m <= j.order; ++m)
        for (int n = 0; n <= j.order; ++n)
            j.values[m][n] = factorial(m) * factorial(n) * s.at(m, n);
    return j;
}

// holomorphic pieces

cplx phi2_deriv(const MetricConstants& mc, CPoint p, int n)
{
    if (n < 0)
        throw DomainError("phi2_deriv: negative order");
    if (n == 0)
        return phi2(mc, p);
    check_point(p, false, true);
    const cplx z = p.z;
    if (std::abs(z) < stabilize_radius) {
        if (mc.is_cusp) {
            // Euler: F(a+n, b+n; a+b+n; 1-z) = z^{-n} F(b, a; a+b+n; 1-z)
            const double coef = pochhammer(mc.a, n) * pochhammer(mc.b, n) / pochhammer(mc.a + mc.b, n);
            const cplx f = hyp2f1_log_case_comp({mc.b, mc.a, mc.a + mc.b + n}, n, z);
            return (n % 2 ? -1.0 : 1.0) * coef * f / std::pow(z, n);
        }
        const cplx d1 = hyp2f1_deriv({mc.a, mc.b, mc.c}, z, n);
        return (stabilized_deriv_near_zero(mc, z, n) - d1) / mc.K2;
    }
    const double c3 = mc.is_cusp ? mc.a + mc.b : mc.a + mc.b - mc.c + 1;
    return (n % 2 ? -1.0 : 1.0) * hyp2f1_deriv({mc.a, mc.b, c3}, 1.0 - z, n);
}

std::array<cplx, n_cap + 1> phi1_taylor(const MetricConstants& mc, CPoint p, int order)
{
    check_order(order);
    check_point(p, true, false);
    Taylor h{};
    for (int k = 0; k <= order; ++k)
        h[k] = hyp2f1_deriv({mc.a, mc.b, mc.c}, p.z, k) / factorial(k);
    return h;
}

std::array<cplx, n_cap + 1> phi2_taylor(const MetricConstants& mc, CPoint p, int order)
{
    check_order(order);
    Taylor h{};
    for (int k = 0; k <= order; ++k)
        h[k] = phi2_deriv(mc, p, k) / factorial(k);
    return h;
}

std::array<cplx, n_cap + 1> stabilized_taylor(const MetricConstants& mc, CPoint p, int order)
{
    check_order(order);
    if (mc.is_cusp)
        return phi1_taylor(mc, p, order);
    check_point(p, true, true);
    Taylor h{};
    if (std::abs(p.z) < stabilize_radius) {
        for (int k = 0; k <= order; ++k)
            h[k] = stabilized_deriv_near_zero(mc, p.z, k) / factorial(k);
        return h;
    }
    const Taylor p1 = phi1_taylor(mc, p, order);
    const Taylor p2 = phi2_taylor(mc, p, order);
    for (int k = 0; k <= order; ++k)
        h[k] = mc.K2 * p2[k] + p1[k];
    return h;
}

cplx m_deriv(const MetricConstants& mc, CPoint p, DerivIdx idx)
{
    if (idx.m < 0 || idx.n < 0)
        throw DomainError("m_deriv: negative index");
    const int order = std::max(idx.m, idx.n);
    return factorial(idx.m) * factorial(idx.n) * m_series(mc, p, order).at(idx.m, idx.n);
}

// jets

WirtingerJet m_jet(const MetricConstants& mc, CPoint p, int order) { return WirtingerJet::from_series(m_series(mc, p, order)); }

WirtingerJet log_m_jet(const MetricConstants& mc, CPoint p, int order)
{
    const BiSeries m = m_series(mc, p, order);
    if (!(m.at(0, 0).real() > 0))
        throw NonPositiveDensity("M(z) is not positive");
    return WirtingerJet::from_series(m.log());
}

WirtingerJet u_jet(const MetricConstants& mc, CPoint p, int order) { return WirtingerJet::from_series(u_series(mc, p, order)); }

WirtingerJet lambda_jet(const MetricConstants& mc, CPoint p, int order)
{
    const WirtingerJet u = u_jet(mc, p, order);
    WirtingerJet l;
    l.order = order;
    l.values[0][0] = std::exp(u(0, 0).real());
    for (int m = 1; m <= order; ++m) {
        cplx s = 0;
        for (int i = 0; i < m; ++i)
            s += binom(m - 1, i) * u(m - i, 0) * l.values[i][0];
        l.values[m][0] = s;
    }
    for (int n = 1; n <= order; ++n)
        for (int m = 0; m <= order; ++m) {
            cplx s = 0;
            for (int j = 0; j < n; ++j)
                for (int i = 0; i <= m; ++i)
                    s += binom(n - 1, j) * binom(m, i) * u(m - i, n - j) * l.values[i][j];
            l.values[m][n] = s;
        }
    return l;
}

double remainder(const MetricConstants& mc, CPoint p, RemainderKind kind)
{
    check_kind(mc, p, kind);
    const double r = -mc.orders.beta * std::log(std::abs(1.0 - p.z)) + std::log(mc.K3) - std::log(m_fn(mc, p));
    if (kind == RemainderKind::W_cusp)
        return r + std::log(-std::log(std::abs(p.z)));
    return r;
}

WirtingerJet remainder_jet(const MetricConstants& mc, CPoint p, int order, RemainderKind kind)
{
    check_kind(mc, p, kind);
    BiSeries s = BiSeries::constant(order, std::log(mc.K3)) - mc.orders.beta * log_abs_1mz(p.z, order) -
                 m_series(mc, p, order).log();
    if (kind == RemainderKind::W_cusp)
        s += (-1.0 * log_abs_z(p.z, order)).log();
    return WirtingerJet::from_series(s);
}

std::pair<double, double> loglog_deriv_coeffs(int n)
{
    if (n < 1)
        throw DomainError("loglog_deriv_coeffs: n must be >= 1");
    const double f = factorial(n - 1);
    const double sgn = n % 2 ? -1.0 : 1.0;
    return {sgn / 2 * f, -sgn / 4 * f * harmonic(n - 1)};
}

std::pair<double, double> loglog_mixed_coeffs(int m, int n)
{
    if (m < 1 || n < 1)
        throw DomainError("loglog_mixed_coeffs: m, n must be >= 1");
    const double f = factorial(m - 1) * factorial(n - 1);
    const double sgn = (m + n) % 2 ? -1.0 : 1.0;
    return {-sgn / 4 * f, sgn / 4 * f * (harmonic(n - 1) + harmonic(m - 1))};
}

// finite differences

namespace {

// Fornberg weights for the k-th derivative on nodes -K..K (unit spacing)
std::vector<double> central_weights(int k)
{
    if (k == 0)
        return {1.0};
    const int K = (k + 1) / 2;
    const int np = 2 * K + 1;
    std::vector<double> x(np);
    for (int i = 0; i < np; ++i)
        x[i] = i - K;
    // c[j][d]: weight of node j for derivative d
    std::vector<std::vector<double>> c(np, std::vector<double>(k + 1, 0.0));
    double c1 = 1, c4 = x[0];
    c[0][0] = 1;
    for (int i = 1; i < np; ++i) {
        const int mn = std::min(i, k);
        double c2 = 1;
        const double c5 = c4;
        c4 = x[i];
        for (int j = 0; j < i; ++j) {
            const double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int d = mn; d >= 1; --d)
                    c[i][d] = c1 * (d * c[i - 1][d - 1] - c5 * c[i - 1][d]) / c2;
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for (int d = mn; d >= 1; --d)
                c[j][d] = (c4 * c[j][d] - d * c[j][d - 1]) / c3;
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(np);
    for (int i = 0; i < np; ++i)
        w[i] = c[i][k];
    return w;
}

} // namespace

cplx wirtinger_fd(const ScalarField& f, cplx z, DerivIdx idx, double h)
{
    if (idx.m < 0 || idx.n < 0)
        throw DomainError("wirtinger_fd: negative index");
    if (!(h > 0))
        throw DomainError("wirtinger_fd: h must be positive");
    const int k = idx.m + idx.n;
    const int K = (k + 1) / 2;
    const int side = 2 * K + 1;
    std::vector<double> grid(side * side, std::nan(""));
    auto value = [&](int jx, int jy) {
        double& v = grid[(jx + K) * side + (jy + K)];
        if (std::isnan(v)) {
            const cplx q = z + h * cplx(jx, jy);
            try {
                v = f(q);
            } catch (const Error& e) {
                throw StencilOutOfDomain(std::string("wirtinger_fd: ") + e.what());
            }
            if (!std::isfinite(v))
                throw StencilOutOfDomain("wirtinger_fd: non-finite value on the stencil");
        }
        return v;
    };
    auto partial = [&](int px, int py) {
        const auto wx = central_weights(px), wy = central_weights(py);
        const int kx = (int(wx.size()) - 1) / 2, ky = (int(wy.size()) - 1) / 2;
        double s = 0;
        for (int ix = 0; ix < int(wx.size()); ++ix) {
            if (wx[ix] == 0)
                continue;
            for (int iy = 0; iy < int(wy.size()); ++iy)
                if (wy[iy] != 0)
                    s += wx[ix] * wy[iy] * value(ix - kx, iy - ky);
        }
        return s / std::pow(h, px + py);
    };
    // dbar^m d^n = 2^{-(m+n)} (dx + i dy)^m (dx - i dy)^n
    const cplx I(0, 1);
    cplx total = 0;
    for (int a = 0; a <= idx.m; ++a)
        for (int b = 0; b <= idx.n; ++b) {
            const cplx coef = binom(idx.m, a) * binom(idx.n, b) * std::pow(I, a) * std::pow(-I, b);
            total += coef * partial(k - a - b, a + b);
        }
    return total / std::pow(2.0, k);
}

cplx wirtinger_fd_richardson(const ScalarField& f, cplx z, DerivIdx idx, double h, int levels)
{
    if (levels < 0)
        throw DomainError("wirtinger_fd_richardson: negative level count");
    std::vector<cplx> t(levels + 1);
    for (int i = 0; i <= levels; ++i)
        t[i] = wirtinger_fd(f, z, idx, h / std::pow(2.0, i));
    for (int k = 1; k <= levels; ++k) {
        const double p = std::pow(4.0, k);
        for (int i = levels; i >= k; --i)
            t[i] = (p * t[i] - t[i - 1]) / (p - 1);
    }
    return t[levels];
}

} // namespace conical
