#include "cli.hpp"

#include "conical/errors.hpp"
#include "conical/limits.hpp"

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iomanip>
#include <random>
#include <regex>
#include <sstream>
#include <thread>

namespace conical::cli {

using json = nlohmann::ordered_json;

namespace {

std::shared_ptr<spdlog::logger> logger()
{
    static std::shared_ptr<spdlog::logger> lg = [] {
        auto l = spdlog::stderr_logger_mt("conical-metric");
        l->set_pattern("[%l] %v");
        l->set_level(spdlog::level::warn);
        if (const char* env = std::getenv("CONICAL_METRIC_LOG"))
            l->set_level(spdlog::level::from_str(env));
        return l;
    }();
    return lg;
}

// A rendered result: scalar fields, plus optional rows under rows_key.
struct Output {
    json doc = json::object();
    std::string rows_key;
};

std::string fmt_num(double x, int p)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", p, x);
    return buf;
}

json num(double x, int p)
{
    if (!std::isfinite(x))
        return nullptr;
    return round_sig(x, p);
}

std::string cell(const json& v, int p)
{
    if (v.is_null())
        return "";
    if (v.is_boolean())
        return v.get<bool>() ? "true" : "false";
    if (v.is_number_float())
        return fmt_num(v.get<double>(), p);
    if (v.is_number())
        return v.dump();
    if (v.is_string())
        return v.get<std::string>();
    return v.dump();
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char ch : s) {
        if (ch == '"')
            q += '"';
        q += ch;
    }
    return q + "\"";
}

void write_csv_rows(std::ostream& out, const json& rows, int p)
{
    if (rows.empty())
        return;
    bool first = true;
    for (const auto& [k, v] : rows.front().items()) {
        out << (first ? "" : ",") << csv_field(k);
        first = false;
    }
    out << "\n";
    for (const auto& row : rows) {
        first = true;
        for (const auto& [k, v] : row.items()) {
            out << (first ? "" : ",") << csv_field(cell(v, p));
            first = false;
        }
        out << "\n";
    }
}

void write_table_rows(std::ostream& out, const json& rows, int p)
{
    if (rows.empty())
        return;
    std::vector<std::string> keys;
    for (const auto& [k, v] : rows.front().items())
        keys.push_back(k);
    std::vector<size_t> w(keys.size());
    for (size_t i = 0; i < keys.size(); ++i)
        w[i] = keys[i].size();
    std::vector<std::vector<std::string>> cells;
    for (const auto& row : rows) {
        std::vector<std::string> r;
        for (size_t i = 0; i < keys.size(); ++i) {
            r.push_back(row.contains(keys[i]) ? cell(row[keys[i]], p) : "");
            w[i] = std::max(w[i], r.back().size());
        }
        cells.push_back(std::move(r));
    }
    for (size_t i = 0; i < keys.size(); ++i)
        out << std::left << std::setw(int(w[i]) + 2) << keys[i];
    out << "\n";
    for (const auto& r : cells) {
        for (size_t i = 0; i < r.size(); ++i)
            out << std::left << std::setw(int(w[i]) + 2) << (r[i].empty() ? "-" : r[i]);
        out << "\n";
    }
}

void render(const Output& o, const CliConfig& cfg, std::ostream& out, std::ostream& err)
{
    const int p = cfg.precision;
    switch (cfg.format) {
    case Format::Json:
        out << o.doc.dump(2) << "\n";
        return;
    case Format::Csv:
        if (!o.rows_key.empty()) {
            write_csv_rows(out, o.doc[o.rows_key], p);
            // scalar summary fields go to stderr so the CSV stays rectangular
            for (const auto& [k, v] : o.doc.items())
                if (k != o.rows_key)
                    err << "# " << k << " = " << cell(v, p) << "\n";
        } else {
            json row = json::object();
            for (const auto& [k, v] : o.doc.items())
                row[k] = v;
            write_csv_rows(out, json::array({row}), p);
        }
        return;
    case Format::Table: {
        size_t w = 0;
        for (const auto& [k, v] : o.doc.items())
            if (k != o.rows_key)
                w = std::max(w, k.size());
        if (!o.rows_key.empty())
            write_table_rows(out, o.doc[o.rows_key], p);
        for (const auto& [k, v] : o.doc.items())
            if (k != o.rows_key)
                out << std::left << std::setw(int(w) + 2) << k << cell(v, p) << "\n";
        return;
    }
    }
}

struct Window {
    double x0 = -1, x1 = 2, y0 = -1, y1 = 1;
};

std::optional<Window> parse_window(const std::string& s)
{
    Window w;
    char extra;
    if (std::sscanf(s.c_str(), "%lf,%lf,%lf,%lf%c", &w.x0, &w.x1, &w.y0, &w.y1, &extra) != 4)
        return std::nullopt;
    if (!(w.x0 < w.x1 && w.y0 < w.y1))
        return std::nullopt;
    return w;
}

std::optional<std::pair<int, int>> parse_res(const std::string& s)
{
    int nx = 0, ny = 0;
    char extra;
    if (std::sscanf(s.c_str(), "%dx%d%c", &nx, &ny, &extra) == 2 ||
        (std::sscanf(s.c_str(), "%d%c", &nx, &extra) == 1 && (ny = nx)))
        if (nx >= 1 && ny >= 1)
            return std::make_pair(nx, ny);
    return std::nullopt;
}

// cell centres, row-major from the top-left corner (largest im first)
std::vector<cplx> grid_points(const Window& w, int nx, int ny)
{
    std::vector<cplx> pts;
    pts.reserve(size_t(nx) * ny);
    const double dx = (w.x1 - w.x0) / nx, dy = (w.y1 - w.y0) / ny;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i)
            pts.emplace_back(w.x0 + (i + 0.5) * dx, w.y1 - (j + 0.5) * dy);
    return pts;
}

template <class F>
void parallel_for(size_t n, F f)
{
    const unsigned nt = std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(), unsigned(n)));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nt; ++t)
        pool.emplace_back([&, t] {
            for (size_t i = t; i < n; i += nt)
                f(i);
        });
    for (auto& th : pool)
        th.join();
}

class InputError : public Error {
    using Error::Error;
};

Format parse_format(const std::string& s, bool tty)
{
    if (s.empty())
        return tty ? Format::Table : Format::Json;
    if (s == "json")
        return Format::Json;
    if (s == "csv")
        return Format::Csv;
    if (s == "table")
        return Format::Table;
    throw InputError("unknown format '" + s + "'");
}

Output cmd_constants(const CliConfig& cfg)
{
    const MetricConstants mc = derive_constants(cfg.orders);
    const int p = cfg.precision;
    Output o;
    o.doc["alpha"] = num(cfg.orders.alpha, p);
    o.doc["beta"] = num(cfg.orders.beta, p);
    o.doc["gamma"] = num(cfg.orders.gamma, p);
    o.doc["a"] = num(mc.a, p);
    o.doc["b"] = num(mc.b, p);
    o.doc["c"] = num(mc.c, p);
    o.doc["K1"] = num(mc.K1, p);
    o.doc["K2"] = num(mc.K2, p);
    o.doc["K3"] = num(mc.K3, p);
    o.doc["delta"] = num(mc.delta, p);
    o.doc["B"] = num(mc.B, p);
    o.doc["R"] = num(mc.R, p);
    o.doc["S"] = num(mc.S, p);
    o.doc["is_cusp"] = mc.is_cusp;
    return o;
}

Formula parse_formula(const std::string& s)
{
    if (s == "f1")
        return Formula::F1;
    if (s == "f2")
        return Formula::F2;
    if (s == "auto")
        return Formula::Auto;
    throw InputError("unknown formula '" + s + "' (f1, f2, auto)");
}

cplx require_complex(const std::string& s)
{
    auto z = parse_complex(s);
    if (!z)
        throw InputError("cannot parse complex number '" + s + "' (expected a+bi without spaces)");
    return *z;
}

Output cmd_eval(const CliConfig& cfg, cplx z, const std::string& formula)
{
    const MetricConstants mc = derive_constants(cfg.orders);
    const Formula f = parse_formula(formula);
    const int p = cfg.precision;
    logger()->info("eval z = {}{:+}i formula {}", z.real(), z.imag(), formula);
    const LambdaValue lv = lambda_eval(mc, z, f);
    Output o;
    o.doc["z_re"] = num(z.real(), p);
    o.doc["z_im"] = num(z.imag(), p);
    o.doc["formula"] = formula;
    o.doc["path"] = lv.path;
    o.doc["lambda"] = num(lv.value, p);
    o.doc["log_lambda"] = num(std::log(lv.value), p);
    o.doc["phi1_region"] = region_name(hyp2f1_eval({mc.a, mc.b, mc.c}, z).region.tag);
    if (std::abs(z) < stabilize_radius)
        o.doc["phi2_region"] = mc.is_cusp ? "log-form near 0" : "stabilized near 0";
    else if (CPoint(z).on_cut_zero())
        o.doc["phi2_region"] = "not used";
    else {
        const double c3 = mc.is_cusp ? mc.a + mc.b : mc.a + mc.b - mc.c + 1;
        o.doc["phi2_region"] = region_name(hyp2f1_eval({mc.a, mc.b, c3}, 1.0 - z).region.tag);
    }
    return o;
}

bool near_cut(cplx z, double margin)
{
    if (std::abs(z) < margin || std::abs(1.0 - z) < margin)
        return true;
    return std::abs(z.imag()) < margin && (z.real() <= 0 || z.real() >= 1);
}

Output cmd_curvature(const CliConfig& cfg, const Window& w, std::pair<int, int> res, double h, int samples)
{
    const MetricConstants mc = derive_constants(cfg.orders);
    if (!(h > 0))
        throw InputError("--h must be positive");
    std::vector<cplx> pts;
    if (samples > 0) {
        std::mt19937_64 rng(cfg.seed);
        std::uniform_real_distribution<double> ux(w.x0, w.x1), uy(w.y0, w.y1);
        for (int i = 0; i < samples; ++i) {
            const double x = ux(rng);
            pts.emplace_back(x, uy(rng));
        }
    } else {
        pts = grid_points(w, res.first, res.second);
    }
    std::vector<double> kappa(pts.size(), NAN);
    parallel_for(pts.size(), [&](size_t i) {
        if (near_cut(pts[i], 2 * h))
            return;
        try {
            kappa[i] = curvature_fd(mc, pts[i], h);
        } catch (const Error& e) {
            logger()->warn("curvature at {}{:+}i skipped: {}", pts[i].real(), pts[i].imag(), e.what());
        }
    });
    const int p = cfg.precision;
    Output o;
    o.rows_key = "points";
    json rows = json::array();
    double worst = 0;
    int skipped = 0;
    for (size_t i = 0; i < pts.size(); ++i) {
        rows.push_back({{"re", num(pts[i].real(), p)}, {"im", num(pts[i].imag(), p)}, {"kappa", num(kappa[i], p)}});
        if (std::isfinite(kappa[i]))
            worst = std::max(worst, std::abs(kappa[i] + 4));
        else
            ++skipped;
    }
    o.doc["points"] = std::move(rows);
    o.doc["h"] = num(h, p);
    o.doc["skipped"] = skipped;
    o.doc["max_abs_kappa_plus_4"] = num(worst, p);
    return o;
}

Output cmd_grid(const CliConfig& cfg, const Window& w, std::pair<int, int> res)
{
    const MetricConstants mc = derive_constants(cfg.orders);
    if (double(res.first) * res.second > 2048.0 * 2048.0)
        throw InputError("resolution exceeds 2048x2048 points");
    const std::vector<cplx> pts = grid_points(w, res.first, res.second);
    std::vector<double> val(pts.size(), NAN);
    parallel_for(pts.size(), [&](size_t i) {
        if (CPoint(pts[i]).excluded())
            return;
        try {
            val[i] = lambda(mc, pts[i]);
        } catch (const Error& e) {
            logger()->warn("lambda at {}{:+}i skipped: {}", pts[i].real(), pts[i].imag(), e.what());
        }
    });
    const int p = cfg.precision;
    Output o;
    o.rows_key = "points";
    json rows = json::array();
    for (size_t i = 0; i < pts.size(); ++i)
        rows.push_back({{"re", num(pts[i].real(), p)}, {"im", num(pts[i].imag(), p)}, {"lambda", num(val[i], p)}});
    o.doc["points"] = std::move(rows);
    return o;
}

struct LimitsArgs {
    std::string filter;
    std::optional<int> m, n;
    std::optional<double> r0, ratio;
    std::optional<int> count;
    std::vector<double> directions;
    unsigned threads = 0;
};

std::vector<LimitCase> select_cases(const MetricConstants& mc, const LimitsArgs& a)
{
    std::string f = a.filter;
    std::transform(f.begin(), f.end(), f.begin(), ::tolower);
    std::vector<CaseTag> tags;
    for (CaseTag t : all_case_tags()) {
        std::string name = case_name(t);
        std::transform(name.begin(), name.end(), name.begin(), ::tolower);
        if (name.rfind(f, 0) == 0)
            tags.push_back(t);
    }
    if (tags.empty())
        throw InputError("no limit case matches '" + a.filter + "'");

    std::vector<LimitCase> out;
    std::string why;
    if (a.m || a.n) {
        for (CaseTag t : tags) {
            const LimitCase c{t, {a.m.value_or(0), a.n.value_or(0)}};
            std::string w;
            if (is_admissible(mc, c, &w))
                out.push_back(c);
            else if (why.empty())
                why = w;
        }
    } else {
        for (const LimitCase& c : enumerate_cases(mc))
            if (std::find(tags.begin(), tags.end(), c.tag) != tags.end())
                out.push_back(c);
        if (out.empty()) {
            LimitCase probe{tags.front(), {}};
            if (index_kind(probe.tag) != IndexKind::None)
                probe.idx = {1, 1};
            if (index_kind(probe.tag) == IndexKind::N)
                probe.idx.m = 0;
            is_admissible(mc, probe, &why);
        }
    }
    if (out.empty())
        throw CaseInadmissible(why.empty() ? "no admissible case selected" : why);
    return out;
}

int cmd_limits(const CliConfig& cfg, const LimitsArgs& a, std::ostream& out, std::ostream& err)
{
    const MetricConstants mc = derive_constants(cfg.orders);
    const std::vector<LimitCase> cases = select_cases(mc, a);

    std::optional<RadialPath> base;
    if (a.r0 || a.ratio || a.count) {
        RadialPath p = RadialPath::default_for(mc, 1);
        p.r0 = a.r0.value_or(p.r0);
        p.ratio = a.ratio.value_or(p.ratio);
        p.count = a.count.value_or(p.count);
        base = p;
    }
    const std::vector<double> dirs = a.directions.empty() ? default_directions() : a.directions;
    for (double d : dirs) {
        RadialPath p = base.value_or(RadialPath::default_for(mc, 1));
        p.z0 = std::polar(1.0, d);
        try {
            p.validate(mc.is_cusp);
        } catch (const DomainError& e) {
            throw InputError(e.what());
        }
    }
    logger()->info("limits: {} cases x {} directions", cases.size(), dirs.size());
    const std::vector<LimitReport> reps = verify_all(mc, cases, dirs, a.threads, base);

    const int p = cfg.precision;
    Output o;
    o.rows_key = "reports";
    json rows = json::array();
    bool all = true;
    for (const LimitReport& r : reps) {
        rows.push_back({{"case", case_name(r.lcase.tag)},
                        {"m", r.lcase.idx.m},
                        {"n", r.lcase.idx.n},
                        {"direction", num(r.direction, p)},
                        {"target_re", num(r.target.real(), p)},
                        {"target_im", num(r.target.imag(), p)},
                        {"estimate_re", num(r.estimate.real(), p)},
                        {"estimate_im", num(r.estimate.imag(), p)},
                        {"rel_err", num(r.rel_err, p)},
                        {"converged", r.converged}});
        if (!r.converged) {
            all = false;
            err << "not converged: " << case_label(r.lcase) << " direction " << fmt_num(r.direction, 6)
                << " rel_err " << fmt_num(r.rel_err, 3) << (r.note.empty() ? "" : " (" + r.note + ")") << "\n";
        }
    }
    o.doc["reports"] = std::move(rows);
    o.doc["all_converged"] = all;
    render(o, cfg, out, err);
    return all ? exit_ok : exit_verify;
}

Output cmd_specfun(const CliConfig& cfg, double a, double b, double c, cplx z)
{
    const int p = cfg.precision;
    const Hyp2f1Result r = hyp2f1_eval({a, b, c}, z);
    Output o;
    o.doc["a"] = num(a, p);
    o.doc["b"] = num(b, p);
    o.doc["c"] = num(c, p);
    o.doc["z_re"] = num(z.real(), p);
    o.doc["z_im"] = num(z.imag(), p);
    o.doc["value_re"] = num(r.value.real(), p);
    o.doc["value_im"] = num(r.value.imag(), p);
    o.doc["region"] = region_name(r.region.tag);
    o.doc["switch_radius"] = num(r.region.radius, p);
    o.doc["euler"] = r.region.euler;
    return o;
}

} // namespace

std::optional<cplx> parse_complex(const std::string& s)
{
    static const std::string num = R"((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)";
    static const std::regex real_re("^([+-]?" + num + ")$");
    static const std::regex imag_re("^([+-]?" + num + "|[+-]?)i$");
    static const std::regex full_re("^([+-]?" + num + ")([+-]" + num + "|[+-])i$");
    auto coef = [](const std::string& t) {
        if (t.empty() || t == "+")
            return 1.0;
        if (t == "-")
            return -1.0;
        return std::stod(t);
    };
    std::smatch m;
    if (std::regex_match(s, m, real_re))
        return cplx(std::stod(m[1]), 0);
    if (std::regex_match(s, m, imag_re))
        return cplx(0, coef(m[1]));
    if (std::regex_match(s, m, full_re))
        return cplx(std::stod(m[1]), coef(m[2]));
    return std::nullopt;
}

double round_sig(double x, int digits)
{
    if (!std::isfinite(x) || x == 0)
        return x;
    return std::strtod(fmt_num(x, digits).c_str(), nullptr);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, bool tty)
{
    CLI::App app{"Hyperbolic metric with conical singularities on the thrice-punctured sphere", "conical-metric"};
    app.require_subcommand(1);

    CliConfig cfg;
    std::string format;
    auto common = [&](CLI::App* sub, bool orders) {
        sub->set_help_flag("--help", "print this help");  // -h would clash with --h
        if (orders) {
            sub->add_option("--alpha", cfg.orders.alpha, "order at 0")->required();
            sub->add_option("--beta", cfg.orders.beta, "order at 1")->required();
            sub->add_option("--gamma", cfg.orders.gamma, "order at infinity")->required();
        }
        sub->add_option("--format", format, "json, csv or table")->check(CLI::IsMember({"json", "csv", "table"}));
        sub->add_option("--precision", cfg.precision, "significant digits")->check(CLI::Range(6, 17));
        sub->add_option("--seed", cfg.seed, "seed for sampled points");
    };

    auto* s_const = app.add_subcommand("constants", "derived constants of the metric");
    common(s_const, true);

    std::string z_str, formula = "auto";
    auto* s_eval = app.add_subcommand("eval", "density at one point");
    common(s_eval, true);
    s_eval->add_option("--z", z_str, "point, a+bi")->required();
    s_eval->add_option("--formula", formula, "f1, f2 or auto");

    std::string window = "-1,2,-1,1", res = "10x10";
    double h = 1e-3;
    int samples = 0;
    auto* s_curv = app.add_subcommand("curvature", "finite-difference curvature over a grid");
    common(s_curv, true);
    s_curv->add_option("--window", window, "x0,x1,y0,y1");
    s_curv->add_option("--res,--grid", res, "NxM or N (cell centres)");
    s_curv->add_option("--h", h, "finite-difference step");
    s_curv->add_option("--samples", samples, "random points from --seed instead of the grid");

    LimitsArgs la;
    int lm = -1, ln = -1;
    double r0 = 0, ratio = 0;
    int count = 0;
    auto* s_lim = app.add_subcommand("limits", "verify limits at the puncture 0");
    common(s_lim, true);
    s_lim->add_option("--case", la.filter, "case-insensitive prefix of a case name");
    s_lim->add_option("--m", lm, "z-bar derivative order");
    s_lim->add_option("--n", ln, "z derivative order");
    auto* o_r0 = s_lim->add_option("--r0", r0, "first radius of the path");
    auto* o_ratio = s_lim->add_option("--ratio", ratio, "radius ratio of the path");
    auto* o_count = s_lim->add_option("--count", count, "number of path points");
    s_lim->add_option("--direction", la.directions, "path direction arg(z) in radians; repeatable");
    s_lim->add_option("--threads", la.threads, "worker threads (0: all cores)");

    std::string g_res = "256x256";
    auto* s_grid = app.add_subcommand("grid", "density on a grid, for plotting");
    common(s_grid, true);
    s_grid->add_option("--window", window, "x0,x1,y0,y1");
    s_grid->add_option("--res,--grid", g_res, "NxM or N (cell centres)");

    double fa = 0, fb = 0, fc = 1;
    auto* s_spec = app.add_subcommand("specfun", "hyp2f1 with region report");
    common(s_spec, false);
    s_spec->add_option("--a", fa)->required();
    s_spec->add_option("--b", fb)->required();
    s_spec->add_option("--c", fc)->required();
    s_spec->add_option("--z", z_str, "point, a+bi")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    }

    try {
        const bool default_csv = s_curv->parsed() || s_grid->parsed();
        cfg.format = format.empty() && default_csv ? Format::Csv : parse_format(format, tty);
        if (s_const->parsed()) {
            render(cmd_constants(cfg), cfg, out, err);
        } else if (s_eval->parsed()) {
            render(cmd_eval(cfg, require_complex(z_str), formula), cfg, out, err);
        } else if (s_curv->parsed() || s_grid->parsed()) {
            const auto w = parse_window(window);
            if (!w)
                throw InputError("cannot parse --window '" + window + "' (x0,x1,y0,y1 with x0<x1, y0<y1)");
            const std::string& rs = s_curv->parsed() ? res : g_res;
            const auto r = parse_res(rs);
            if (!r)
                throw InputError("cannot parse --res '" + rs + "' (NxM or N)");
            render(s_curv->parsed() ? cmd_curvature(cfg, *w, *r, h, samples) : cmd_grid(cfg, *w, *r), cfg, out, err);
        } else if (s_lim->parsed()) {
            if (lm >= 0)
                la.m = lm;
            if (ln >= 0)
                la.n = ln;
            if (o_r0->count())
                la.r0 = r0;
            if (o_ratio->count())
                la.ratio = ratio;
            if (o_count->count())
                la.count = count;
            return cmd_limits(cfg, la, out, err);
        } else if (s_spec->parsed()) {
            render(cmd_specfun(cfg, fa, fb, fc, require_complex(z_str)), cfg, out, err);
        }
    } catch (const CutError& e) {
        err << "error: " << e.what() << " (cut " << e.cut() << ")\n";
        return exit_domain;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const InadmissibleOrders& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const CaseInadmissible& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const CuspUnsupported& e) {
        err << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_domain;
    }
    return exit_ok;
}

} // namespace conical::cli
