#include "conical/limits.hpp"

#include "conical/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <thread>

namespace conical {

namespace {

struct TagInfo {
    CaseTag tag;
    const char* name;
    IndexKind kind;
    bool cusp;
};

const TagInfo tag_table[] = {
    {CaseTag::L0, "L0", IndexKind::None, false},
    {CaseTag::Mz1, "Mz1", IndexKind::None, false},
    {CaseTag::Mz2_expansion, "Mz2_expansion", IndexKind::None, false},
    {CaseTag::Mz3, "Mz3", IndexKind::N, false},
    {CaseTag::Mz4, "Mz4", IndexKind::MN, false},
    {CaseTag::Pu_i, "Pu_i", IndexKind::N, false},
    {CaseTag::Pu_ii, "Pu_ii", IndexKind::MN, false},
    {CaseTag::Pu_ii_zero, "Pu_ii_zero", IndexKind::MN, false},
    {CaseTag::Lc, "Lc", IndexKind::MN, false},
    {CaseTag::Vn_i, "Vn_i", IndexKind::None, false},
    {CaseTag::Vn_ii_expansion, "Vn_ii_expansion", IndexKind::None, false},
    {CaseTag::Vn_iii, "Vn_iii", IndexKind::N, false},
    {CaseTag::Vn_iv, "Vn_iv", IndexKind::MN, false},
    {CaseTag::W_i, "W_i", IndexKind::N, true},
    {CaseTag::W_ii, "W_ii", IndexKind::MN, true},
    {CaseTag::Pu2_i, "Pu2_i", IndexKind::N, true},
    {CaseTag::Pu2_ii, "Pu2_ii", IndexKind::MN, true},
    {CaseTag::Lctilte, "Lctilte", IndexKind::MN, true},
    {CaseTag::Minda_i, "Minda_i", IndexKind::None, true},
    {CaseTag::Minda_ii, "Minda_ii", IndexKind::None, true},
    {CaseTag::Minda_iii, "Minda_iii", IndexKind::None, true},
};

const TagInfo& info(CaseTag t)
{
    for (const auto& i : tag_table)
        if (i.tag == t)
            return i;
    throw DomainError("unknown case tag");
}

double factorial(int n) { return std::tgamma(n + 1.0); }
double sign(int k) { return k % 2 ? -1.0 : 1.0; }

bool is_half(double alpha) { return std::abs(alpha - 0.5) <= 1e-12; }

bool needs_m_ge_1(CaseTag t)
{
    switch (t) {
    case CaseTag::Mz4:
    case CaseTag::Pu_ii:
    case CaseTag::Pu_ii_zero:
    case CaseTag::Vn_iv:
    case CaseTag::W_ii:
    case CaseTag::Pu2_ii:
        return true;
    default:
        return false;
    }
}

// K2 Γr², the common factor of the corner limits
double k2_gamma2(const MetricConstants& mc) { return mc.K2 * mc.gamma_ratio * mc.gamma_ratio; }

double g_sum(const MetricConstants& mc) { return g_fn(mc.a) + g_fn(mc.b); }

} // namespace

const char* case_name(CaseTag t) { return info(t).name; }

std::optional<CaseTag> parse_case(const std::string& s)
{
    for (const auto& i : tag_table) {
        std::string a = i.name, b = s;
        std::transform(a.begin(), a.end(), a.begin(), ::tolower);
        std::transform(b.begin(), b.end(), b.begin(), ::tolower);
        if (a == b)
            return i.tag;
    }
    return std::nullopt;
}

const std::vector<CaseTag>& all_case_tags()
{
    static const std::vector<CaseTag> tags = [] {
        std::vector<CaseTag> v;
        for (const auto& i : tag_table)
            v.push_back(i.tag);
        return v;
    }();
    return tags;
}

IndexKind index_kind(CaseTag t) { return info(t).kind; }

std::string case_label(const LimitCase& c)
{
    std::string s = case_name(c.tag);
    switch (index_kind(c.tag)) {
    case IndexKind::None:
        return s;
    case IndexKind::N:
        return s + "(" + std::to_string(c.idx.n) + ")";
    case IndexKind::MN:
        return s + "(" + std::to_string(c.idx.m) + "," + std::to_string(c.idx.n) + ")";
    }
    return s;
}

bool is_admissible(const MetricConstants& mc, const LimitCase& c, std::string* why)
{
    auto fail = [&](const std::string& w) {
        if (why)
            *why = case_label(c) + ": " + w;
        return false;
    };
    const TagInfo& ti = info(c.tag);
    const double al = mc.orders.alpha;
    if (ti.cusp && !mc.is_cusp)
        return fail("requires alpha = 1");
    if (!ti.cusp && mc.is_cusp)
        return fail("requires alpha < 1");
    const int m = c.idx.m, n = c.idx.n;
    if (m < 0 || n < 0 || m > n_cap || n > n_cap)
        return fail("indices must lie in [0, " + std::to_string(n_cap) + "]");
    switch (ti.kind) {
    case IndexKind::None:
        if (m != 0 || n != 0)
            return fail("takes no indices");
        break;
    case IndexKind::N:
        if (m != 0)
            return fail("takes no m index");
        if (n < 1)
            return fail("requires n >= 1");
        break;
    case IndexKind::MN:
        if (needs_m_ge_1(c.tag) && (m < 1 || n < 1))
            return fail("requires m, n >= 1");
        break;
    }
    switch (c.tag) {
    case CaseTag::Mz1:
    case CaseTag::Vn_i:
        if (!(al < 0.5))
            return fail("requires 0 < alpha < 1/2");
        break;
    case CaseTag::Mz2_expansion:
    case CaseTag::Vn_ii_expansion:
        if (!is_half(al))
            return fail("requires alpha = 1/2");
        break;
    case CaseTag::Mz3:
    case CaseTag::Vn_iii:
        if (al <= 0.5 && n < 2)
            return fail("requires n >= 2 when alpha <= 1/2");
        break;
    default:
        break;
    }
    return true;
}

void require_admissible(const MetricConstants& mc, const LimitCase& c)
{
    std::string why;
    if (!is_admissible(mc, c, &why))
        throw CaseInadmissible(why);
}

double binom_real(double tau, int j)
{
    double r = 1;
    for (int i = 0; i < j; ++i)
        r *= (tau - i) / (i + 1);
    return r;
}

cplx expansion_coefficient(const MetricConstants& mc, CaseTag t)
{
    if (t == CaseTag::Mz2_expansion)
        return 2 * k2_gamma2(mc);
    if (t == CaseTag::Vn_ii_expansion)
        return -2 * k2_gamma2(mc) / mc.m0;  // = δ²/2 at α = 1/2
    throw DomainError("expansion_coefficient: not an expansion case");
}

cplx target(const MetricConstants& mc, const LimitCase& c)
{
    require_admissible(mc, c);
    const int m = c.idx.m, n = c.idx.n;
    const double al = mc.orders.alpha, be = mc.orders.beta;
    const double e = 1 - mc.c;
    auto poch_c = [&](int k) { return pochhammer(mc.c, k); };
    switch (c.tag) {
    case CaseTag::L0:
        return mc.delta * e;
    case CaseTag::Mz1:
        return mc.a * mc.b / mc.c * mc.m0;
    case CaseTag::Mz2_expansion:
        return 2 * mc.a * mc.b * mc.m0;
    case CaseTag::Mz3:
        return sign(n - 1) * poch_c(n - 1) * k2_gamma2(mc) / e;
    case CaseTag::Mz4:
        return sign(m + n) * poch_c(n - 1) * poch_c(m - 1) * k2_gamma2(mc);
    case CaseTag::Pu_i:
        return al / 2 * sign(n) * factorial(n - 1);
    case CaseTag::Pu_ii:
    case CaseTag::Vn_iv:
        return -sign(m + n) * poch_c(n - 1) * poch_c(m - 1) * k2_gamma2(mc) / mc.m0;
    case CaseTag::Pu_ii_zero:
        return 0.0;
    case CaseTag::Lc:
        return binom_real(-al / 2, n) * binom_real(-al / 2, m) * mc.delta * e;
    case CaseTag::Vn_i:
        return be / 2 - mc.a * mc.b / mc.c;
    case CaseTag::Vn_ii_expansion:
        return be / 2 - 2 * mc.a * mc.b;
    case CaseTag::Vn_iii:
        return -sign(n - 1) * poch_c(n - 1) * k2_gamma2(mc) / (e * mc.m0);
    case CaseTag::W_i:
        return sign(n) * factorial(n - 1) / 4 * g_sum(mc);
    case CaseTag::W_ii:
        return sign(m + n - 1) * factorial(n - 1) * factorial(m - 1) / 4 * g_sum(mc);
    case CaseTag::Pu2_i:
        return 0.5 * sign(n) * factorial(n - 1);
    case CaseTag::Pu2_ii:
        return sign(m + n) * factorial(n - 1) * factorial(m - 1) / 4;
    case CaseTag::Lctilte:
        return 0.5 * binom_real(-0.5, n) * binom_real(-0.5, m);
    case CaseTag::Minda_i:
        return -0.25;
    case CaseTag::Minda_ii:
        return 0.375;
    case CaseTag::Minda_iii:
        return 0.125;
    }
    throw DomainError("target: unhandled case");
}

cplx scaled_quantity(const MetricConstants& mc, const LimitCase& c, CPoint p)
{
    require_admissible(mc, c);
    const cplx z = p.z;
    const int m = c.idx.m, n = c.idx.n;
    const double r = std::abs(z);
    const double al = mc.orders.alpha;
    const int ord = std::max({m, n, 1});
    const cplx zmn = std::pow(std::conj(z), m) * std::pow(z, n);
    const double corner_scale = std::pow(r, 2 * al - 2);
    double L = 0;
    if (info(c.tag).cusp) {
        if (!(r < 1))
            throw DomainError("cusp limits need |z| < 1");
        L = std::log(1 / r);
    }
    const RemainderKind rk = mc.is_cusp ? RemainderKind::W_cusp : RemainderKind::V_corner;
    switch (c.tag) {
    case CaseTag::L0:
        return std::pow(r, al) * lambda(mc, p);
    case CaseTag::Mz1:
    case CaseTag::Mz2_expansion:
        return m_deriv(mc, p, {0, 1});
    case CaseTag::Mz3:
    case CaseTag::Mz4:
        return zmn * corner_scale * m_deriv(mc, p, c.idx);
    case CaseTag::Pu_i:
    case CaseTag::Pu2_i:
        return zmn * u_jet(mc, p, ord)(m, n);
    case CaseTag::Pu_ii:
        return zmn * corner_scale * u_jet(mc, p, ord)(m, n);
    case CaseTag::Pu_ii_zero:
        return zmn * u_jet(mc, p, ord)(m, n);
    case CaseTag::Lc:
        return std::pow(r, al) * zmn * lambda_jet(mc, p, ord)(m, n) / (factorial(m) * factorial(n));
    case CaseTag::Vn_i:
    case CaseTag::Vn_ii_expansion:
        return remainder_jet(mc, p, 1, rk)(0, 1);
    case CaseTag::Vn_iii:
    case CaseTag::Vn_iv:
        return zmn * corner_scale * remainder_jet(mc, p, ord, rk)(m, n);
    case CaseTag::W_i:
        return zmn * L * L * remainder_jet(mc, p, ord, rk)(m, n);
    case CaseTag::W_ii:
        return zmn * L * L * L * remainder_jet(mc, p, ord, rk)(m, n);
    case CaseTag::Pu2_ii:
        return zmn * L * L * u_jet(mc, p, ord)(m, n);
    case CaseTag::Lctilte:
        return r * L * zmn * lambda_jet(mc, p, ord)(m, n) / (factorial(m) * factorial(n));
    case CaseTag::Minda_i:
        return z * r * L * lambda_jet(mc, p, 1)(0, 1);
    case CaseTag::Minda_ii:
        return z * z * r * L * lambda_jet(mc, p, 2)(0, 2);
    case CaseTag::Minda_iii:
        return r * r * r * L * lambda_jet(mc, p, 1)(1, 1);
    }
    throw DomainError("scaled_quantity: unhandled case");
}

// paths

RadialPath RadialPath::corner_default(cplx dir) { return {dir / std::abs(dir), 1e-2, 0.5, 20}; }
RadialPath RadialPath::cusp_default(cplx dir) { return {dir / std::abs(dir), 1e-2, 0.25, 14}; }
RadialPath RadialPath::default_for(const MetricConstants& mc, cplx dir)
{
    return mc.is_cusp ? cusp_default(dir) : corner_default(dir);
}

std::vector<cplx> RadialPath::points() const
{
    std::vector<cplx> out;
    out.reserve(count);
    for (int k = 0; k < count; ++k)
        out.push_back(z0 * (r0 * std::pow(ratio, k)));
    return out;
}

double RadialPath::r_min() const { return r0 * std::pow(ratio, count - 1); }

void RadialPath::validate(bool cusp) const
{
    if (!(std::abs(std::abs(z0) - 1) < 1e-12))
        throw DomainError("radial path: direction must have modulus 1");
    if (!(ratio > 0 && ratio < 1))
        throw DomainError("radial path: ratio must lie in (0,1)");
    if (!(r0 > 0 && r0 < 1))
        throw DomainError("radial path: r0 must lie in (0,1)");
    if (count < 4)
        throw DomainError("radial path: at least 4 points needed");
    const double floor = cusp ? 1e-12 : 1e-8;
    if (r_min() < floor * (1 - 1e-12))
        throw DomainError("radial path: smallest radius below the floor for this case");
    for (cplx z : points())
        if (CPoint(z).excluded())
            throw DomainError("radial path: a point lies on a cut");
}

// extrapolation

std::vector<double> exponent_lattice(double eps, const std::vector<double>& shifts, double pmax)
{
    std::vector<double> out;
    for (double s : shifts)
        for (int k = 0; 2 * k * eps + s <= pmax + 1 && k < 200; ++k)
            for (int j = 0; j + 2 * k * eps + s <= pmax; ++j) {
                const double p = j + 2 * k * eps + s;
                if (p > 1e-9)
                    out.push_back(p);
            }
    std::sort(out.begin(), out.end());
    std::vector<double> uniq;
    for (double p : out)
        if (uniq.empty() || p - uniq.back() > 1e-6)
            uniq.push_back(p);
    return uniq;
}

namespace {

// least squares y ≈ L + sum c_i basis_i; returns L and the rms residual
std::pair<cplx, double> fit_constant(const Eigen::MatrixXd& A, const std::vector<cplx>& y)
{
    const int n = int(y.size());
    Eigen::VectorXd yr(n), yi(n);
    for (int i = 0; i < n; ++i) {
        yr[i] = y[i].real();
        yi[i] = y[i].imag();
    }
    auto qr = A.colPivHouseholderQr();
    Eigen::VectorXd cr = qr.solve(yr), ci = qr.solve(yi);
    double res = std::sqrt(((A * cr - yr).squaredNorm() + (A * ci - yi).squaredNorm()) / n);
    return {cplx(cr[0], ci[0]), res};
}

using Columns = std::vector<std::vector<double>>;

cplx fit_with(const Columns& cols, const std::vector<cplx>& y, double* residual)
{
    const int n = int(y.size());
    Eigen::MatrixXd A(n, int(cols.size()) + 1);
    for (int i = 0; i < n; ++i) {
        A(i, 0) = 1;
        for (size_t k = 0; k < cols.size(); ++k)
            A(i, int(k) + 1) = cols[k][i];
    }
    auto [est, res] = fit_constant(A, y);
    if (residual)
        *residual = res;
    return est;
}

double empirical_order(const std::vector<double>& var, const std::vector<cplx>& y, cplx est)
{
    // slope of log|y - est| against log var over the points above the noise floor
    const double floor = 1e-13 * std::max(1.0, std::abs(est));
    std::vector<double> slopes;
    for (size_t k = 0; k + 1 < y.size(); ++k) {
        const double d0 = std::abs(y[k] - est), d1 = std::abs(y[k + 1] - est);
        if (d0 > 100 * floor && d1 > 100 * floor)
            slopes.push_back(std::log(d0 / d1) / std::log(var[k] / var[k + 1]));
    }
    if (slopes.empty())
        return 0;
    std::nth_element(slopes.begin(), slopes.begin() + slopes.size() / 2, slopes.end());
    return slopes[slopes.size() / 2];
}

} // namespace

Extrapolation extrapolate(const std::vector<SeqPoint>& seq, const ErrorModel& model)
{
    if (seq.size() < 4)
        throw DomainError("extrapolate: at least 4 sequence points needed");
    for (size_t k = 0; k + 1 < seq.size(); ++k)
        if (!(seq[k + 1].r < seq[k].r))
            throw NonMonotoneSequence("extrapolate: radii must decrease strictly");
    std::vector<double> var, rs;
    std::vector<cplx> y;
    for (const auto& s : seq) {
        if (s.r > model.r_fit_max)
            continue;
        if (model.kind == ModelKind::InverseLog) {
            if (!(s.r < 1))
                throw DomainError("extrapolate: InverseLog needs r < 1");
            var.push_back(1 / std::log(1 / s.r));
        } else {
            var.push_back(s.r);
        }
        rs.push_back(s.r);
        y.push_back(s.value);
    }
    const int n = int(y.size());
    if (n < 4)
        throw DomainError("extrapolate: fewer than 4 points below r_fit_max");

    // columns are scaled to order one at the largest fitted radius
    const double vmax = var.front();
    Columns lead, extra;
    if (model.kind == ModelKind::PowerLaw) {
        for (double p : model.exponents) {
            std::vector<double> col;
            for (double v : var)
                col.push_back(std::pow(v / vmax, p));
            lead.push_back(std::move(col));
        }
    } else {
        for (int d = 1; d <= model.degree; ++d) {
            std::vector<double> col;
            for (double v : var)
                col.push_back(std::pow(v / vmax, d));
            lead.push_back(std::move(col));
        }
        // r log^j(1/r) tails
        for (int j = 0; j < model.r_log_terms; ++j) {
            std::vector<double> col;
            for (int i = 0; i < n; ++i)
                col.push_back(rs[i] / rs.front() * std::pow(vmax / var[i], j));
            extra.push_back(std::move(col));
        }
    }
    const int K = std::min<int>(int(lead.size()), n - 2 - int(extra.size()));
    if (K < 1)
        throw DomainError("extrapolate: too few points for the model");
    lead.resize(K);
    auto with = [&](int k) {
        Columns c(lead.begin(), lead.begin() + k);
        c.insert(c.end(), extra.begin(), extra.end());
        return c;
    };

    Extrapolation out;
    out.points_used = n;
    out.terms = K + int(extra.size());
    out.estimate = fit_with(with(K), y, &out.fit_residual);
    out.spread = std::abs(fit_with(with(K - 1), y, nullptr) - out.estimate);
    out.order = empirical_order(var, y, out.estimate);

    // the residuals against the estimate must shrink along the sequence
    const double noise = 1e-12 * std::max(1.0, std::abs(out.estimate));
    const double head = std::abs(y[0] - out.estimate) + std::abs(y[1] - out.estimate);
    const double tail = std::abs(y[n - 1] - out.estimate) + std::abs(y[n - 2] - out.estimate);
    if (tail > noise && tail > head)
        throw NonMonotoneSequence("extrapolate: residuals do not decrease along the sequence");
    return out;
}

ErrorModel default_model(const MetricConstants& mc, const LimitCase& c)
{
    ErrorModel em;
    if (mc.is_cusp) {
        em.kind = ModelKind::InverseLog;
        em.degree = 5;
        em.r_log_terms = 3;
        em.r_fit_max = 1e-4;
        return em;
    }
    const double e = 1 - mc.c;
    std::vector<double> shifts{0};
    switch (c.tag) {
    case CaseTag::Mz1:
    case CaseTag::Vn_i:
        shifts.push_back(-1);
        break;
    case CaseTag::Mz3:
    case CaseTag::Mz4:
    case CaseTag::Pu_ii:
    case CaseTag::Vn_iii:
    case CaseTag::Vn_iv:
        shifts.push_back(-2 * e);
        break;
    case CaseTag::Mz2_expansion:
    case CaseTag::Vn_ii_expansion:
        shifts.push_back(-0.5);
        break;
    default:
        break;
    }
    em.kind = ModelKind::PowerLaw;
    em.r_fit_max = 1e-4;
    em.exponents = exponent_lattice(e, shifts, 3);
    return em;
}

double tolerance(const MetricConstants& mc, const LimitCase& c)
{
    (void)c;
    return mc.is_cusp ? 1e-3 : 1e-6;
}

bool uses_absolute_error(const LimitCase& c) { return c.tag == CaseTag::Pu_ii_zero; }

LimitReport verify(const MetricConstants& mc, const LimitCase& c, const RadialPath& path)
{
    require_admissible(mc, c);
    path.validate(mc.is_cusp);
    LimitReport rep;
    rep.lcase = c;
    rep.direction = std::arg(path.z0);
    rep.target = target(mc, c);
    rep.tol = tolerance(mc, c);

    const bool expansion = c.tag == CaseTag::Mz2_expansion || c.tag == CaseTag::Vn_ii_expansion;
    const cplx coef = expansion ? expansion_coefficient(mc, c.tag) : cplx(0);
    std::vector<SeqPoint> seq;
    for (cplx z : path.points()) {
        cplx v;
        try {
            v = scaled_quantity(mc, c, z);
        } catch (const NoConvergence& e) {
            rep.note = std::string("sequence truncated: ") + e.what();
            break;
        }
        if (expansion)
            v -= coef * std::conj(z) / std::abs(z);
        seq.push_back({std::abs(z), v});
        rep.sequence.emplace_back(std::abs(z), v);
    }
    if (seq.size() < 5)
        throw NoConvergence("verify: fewer than 5 sequence points survived for " + case_label(c));

    const Extrapolation ex = extrapolate(seq, default_model(mc, c));
    rep.estimate = ex.estimate;
    rep.order = ex.order;
    rep.abs_err = std::abs(rep.estimate - rep.target);
    rep.rel_err = uses_absolute_error(c) ? rep.abs_err : rep.abs_err / std::abs(rep.target);
    rep.converged = rep.rel_err <= rep.tol;
    return rep;
}

// α = 1/2 expansion

ExpansionReport verify_expansion_alpha_half(const MetricConstants& mc, CaseTag tag,
                                            const std::vector<double>& directions, const RadialPath& base)
{
    if (tag != CaseTag::Mz2_expansion && tag != CaseTag::Vn_ii_expansion)
        throw DomainError("verify_expansion_alpha_half: tag must be an expansion case");
    const LimitCase lc{tag, {}};
    require_admissible(mc, lc);
    if (directions.size() < 2)
        throw DomainError("verify_expansion_alpha_half: at least 2 directions needed");

    ExpansionReport rep;
    rep.tag = tag;
    rep.constant_target = target(mc, lc);
    rep.coefficient_target = expansion_coefficient(mc, tag);

    const int nd = int(directions.size());
    Eigen::MatrixXcd A(nd, 2);
    Eigen::VectorXcd rhs(nd);
    rep.q_min = INFINITY;
    for (int d = 0; d < nd; ++d) {
        RadialPath path = base;
        path.z0 = std::polar(1.0, directions[d]);
        path.validate(false);
        std::vector<SeqPoint> raw;
        std::vector<double> lr, ld;
        for (cplx z : path.points()) {
            const cplx v = scaled_quantity(mc, lc, z);
            const double r = std::abs(z);
            const cplx unit = std::conj(z) / r;
            raw.push_back({r, v});
            const cplx res = v - rep.constant_target - rep.coefficient_target * unit;
            lr.push_back(std::log(r));
            ld.push_back(std::log(std::abs(res)));
        }
        // slope of log|residual| against log r
        const int n = int(lr.size());
        double mx = 0, my = 0;
        for (int i = 0; i < n; ++i) {
            mx += lr[i];
            my += ld[i];
        }
        mx /= n;
        my /= n;
        double sxy = 0, sxx = 0;
        for (int i = 0; i < n; ++i) {
            sxy += (lr[i] - mx) * (ld[i] - my);
            sxx += (lr[i] - mx) * (lr[i] - mx);
        }
        ExpansionDirection ed;
        ed.direction = directions[d];
        ed.q = sxy / sxx;
        // z-bar/|z| is constant along the ray, so the raw limit is C0 + C1 e^{-iθ}
        ErrorModel em;
        em.kind = ModelKind::PowerLaw;
        em.exponents = exponent_lattice(0.5, {0, -0.5}, 3);
        em.r_fit_max = 1e-4;
        ed.limit = extrapolate(raw, em).estimate;
        rep.directions.push_back(ed);
        rep.q_min = std::min(rep.q_min, ed.q);

        A(d, 0) = 1;
        A(d, 1) = std::conj(path.z0);
        rhs[d] = ed.limit;
    }
    Eigen::VectorXcd sol = A.colPivHouseholderQr().solve(rhs);
    rep.constant_fit = sol[0];
    rep.coefficient_fit = sol[1];
    rep.constant_rel_err = std::abs(rep.constant_fit - rep.constant_target) / std::abs(rep.constant_target);
    rep.coefficient_rel_err = std::abs(rep.coefficient_fit - rep.coefficient_target) / std::abs(rep.coefficient_target);
    rep.converged = rep.q_min >= expansion_q_min && rep.constant_rel_err <= expansion_tol &&
                    rep.coefficient_rel_err <= expansion_tol;
    return rep;
}

const std::vector<double>& default_directions()
{
    static const std::vector<double> d = {0, std::numbers::pi / 4, std::numbers::pi / 2, 3 * std::numbers::pi / 4};
    return d;
}

std::vector<LimitCase> enumerate_cases(const MetricConstants& mc)
{
    std::vector<LimitCase> out;
    auto add = [&](LimitCase c) {
        if (is_admissible(mc, c))
            out.push_back(c);
    };
    for (CaseTag t : all_case_tags()) {
        switch (index_kind(t)) {
        case IndexKind::None:
            add({t, {}});
            break;
        case IndexKind::N:
            for (int n = 1; n <= 3; ++n)
                add({t, {0, n}});
            break;
        case IndexKind::MN: {
            const int lo = needs_m_ge_1(t) ? 1 : 0;
            for (int m = lo; m <= 2; ++m)
                for (int n = lo; n <= 2; ++n)
                    add({t, {m, n}});
            break;
        }
        }
    }
    return out;
}

std::vector<LimitReport> verify_all(const MetricConstants& mc, const std::vector<LimitCase>& cases,
                                    const std::vector<double>& directions, unsigned threads,
                                    const std::optional<RadialPath>& base)
{
    struct Job {
        LimitCase c;
        double dir;
    };
    std::vector<Job> jobs;
    for (const auto& c : cases)
        for (double d : directions)
            jobs.push_back({c, d});
    std::vector<LimitReport> out(jobs.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i = next++; i < jobs.size(); i = next++) {
            const Job& j = jobs[i];
            const cplx dir = std::polar(1.0, j.dir);
            try {
                RadialPath path = RadialPath::default_for(mc, dir);
                if (base) {
                    path.r0 = base->r0;
                    path.ratio = base->ratio;
                    path.count = base->count;
                }
                out[i] = verify(mc, j.c, path);
            } catch (const Error& e) {
                LimitReport r;
                r.lcase = j.c;
                r.direction = j.dir;
                r.tol = tolerance(mc, j.c);
                try {
                    r.target = target(mc, j.c);
                } catch (const Error&) {
                    r.target = NAN;
                }
                r.estimate = NAN;
                r.abs_err = r.rel_err = INFINITY;
                r.converged = false;
                r.note = e.what();
                out[i] = r;
            }
        }
    };
    if (threads == 0)
        threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, unsigned(jobs.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();
    std::sort(out.begin(), out.end(), [](const LimitReport& a, const LimitReport& b) {
        auto key = [](const LimitReport& r) {
            return std::make_tuple(int(r.lcase.tag), r.lcase.idx.m, r.lcase.idx.n, r.direction);
        };
        return key(a) < key(b);
    });
    return out;
}

std::vector<LimitReport> verify_all(const MetricConstants& mc)
{
    return verify_all(mc, enumerate_cases(mc), default_directions());
}

} // namespace conical
