#pragma once

#include "conical/derivs.hpp"

#include <optional>
#include <string>
#include <vector>

namespace conical {

enum class CaseTag {
    L0,
    Mz1,
    Mz2_expansion,
    Mz3,
    Mz4,
    Pu_i,
    Pu_ii,
    Pu_ii_zero,  // unscaled mixed derivative of u, limit 0
    Lc,
    Vn_i,
    Vn_ii_expansion,
    Vn_iii,
    Vn_iv,
    W_i,
    W_ii,
    Pu2_i,
    Pu2_ii,
    Lctilte,
    Minda_i,
    Minda_ii,
    Minda_iii,
};

const char* case_name(CaseTag t);
std::optional<CaseTag> parse_case(const std::string& s);
// all tags in declaration order
const std::vector<CaseTag>& all_case_tags();

struct LimitCase {
    CaseTag tag = CaseTag::L0;
    DerivIdx idx;  // unused entries are 0
};

std::string case_label(const LimitCase& c);  // e.g. "Mz4(1,2)"

// which indices a tag uses: none, n only, or (m, n)
enum class IndexKind { None, N, MN };
IndexKind index_kind(CaseTag t);

bool is_admissible(const MetricConstants& mc, const LimitCase& c, std::string* why = nullptr);
void require_admissible(const MetricConstants& mc, const LimitCase& c);  // throws CaseInadmissible

cplx target(const MetricConstants& mc, const LimitCase& c);
cplx scaled_quantity(const MetricConstants& mc, const LimitCase& c, CPoint p);

// z-bar/|z| coefficient of the α = 1/2 expansions (Mz2_expansion, Vn_ii_expansion)
cplx expansion_coefficient(const MetricConstants& mc, CaseTag t);

// binomial coefficient (tau choose j) for real tau
double binom_real(double tau, int j);

struct RadialPath {
    cplx z0 = 1;  // unit direction
    double r0 = 1e-2;
    double ratio = 0.5;
    int count = 20;

    static RadialPath corner_default(cplx dir);
    static RadialPath cusp_default(cplx dir);
    static RadialPath default_for(const MetricConstants& mc, cplx dir);

    std::vector<cplx> points() const;
    double r_min() const;
    // throws DomainError when an invariant fails
    void validate(bool cusp) const;
};

struct SeqPoint {
    double r;
    cplx value;
};

enum class ModelKind { PowerLaw, InverseLog };

struct ErrorModel {
    ModelKind kind = ModelKind::PowerLaw;
    std::vector<double> exponents;  // PowerLaw: error exponents in r, ascending, all > 0
    int degree = 4;                 // InverseLog: polynomial degree in t = 1/log(1/r)
    int r_log_terms = 0;            // InverseLog: extra r log^j(1/r) terms, j < r_log_terms
    double r_fit_max = 1;           // only points with r <= r_fit_max enter the fit
};

struct Extrapolation {
    cplx estimate;
    double order = 0;       // empirical leading order (in r, or in t for InverseLog)
    double fit_residual = 0;
    double spread = 0;      // change of the estimate between neighbouring fits
    int points_used = 0;
    int terms = 0;
};

Extrapolation extrapolate(const std::vector<SeqPoint>& seq, const ErrorModel& model);

// error exponents {j + 2kε + s} with ε = 1 - α, for the listed shifts s, capped at pmax
std::vector<double> exponent_lattice(double eps, const std::vector<double>& shifts, double pmax);
ErrorModel default_model(const MetricConstants& mc, const LimitCase& c);

double tolerance(const MetricConstants& mc, const LimitCase& c);
bool uses_absolute_error(const LimitCase& c);

struct LimitReport {
    LimitCase lcase;
    double direction = 0;  // arg of the path direction
    cplx target;
    cplx estimate;
    double abs_err = 0;
    double rel_err = 0;
    double tol = 0;
    double order = 0;
    std::vector<std::pair<double, cplx>> sequence;  // (|z_k|, scaled value)
    bool converged = false;
    std::string note;
};

LimitReport verify(const MetricConstants& mc, const LimitCase& c, const RadialPath& path);

struct ExpansionDirection {
    double direction = 0;
    cplx limit;       // extrapolated limit along the ray, C0 + C1 e^{-iθ}
    double q = 0;     // fitted residual exponent
};

struct ExpansionReport {
    CaseTag tag = CaseTag::Mz2_expansion;
    cplx constant_target, coefficient_target;
    cplx constant_fit, coefficient_fit;  // least squares over the directions
    double constant_rel_err = 0, coefficient_rel_err = 0;
    double q_min = 0;
    std::vector<ExpansionDirection> directions;
    bool converged = false;
};

inline constexpr double expansion_q_min = 0.45;
inline constexpr double expansion_tol = 1e-6;

// tag: Mz2_expansion or Vn_ii_expansion
ExpansionReport verify_expansion_alpha_half(const MetricConstants& mc, CaseTag tag,
                                            const std::vector<double>& directions, const RadialPath& base);

// default directions arg = 0, π/4, π/2, 3π/4
const std::vector<double>& default_directions();

// every admissible case with the index ranges of the acceptance suites
std::vector<LimitCase> enumerate_cases(const MetricConstants& mc);

// each case along each direction; concurrent, sorted by (tag, m, n, direction).
// base overrides r0, ratio and count of the default path; its direction is ignored.
std::vector<LimitReport> verify_all(const MetricConstants& mc, const std::vector<LimitCase>& cases,
                                    const std::vector<double>& directions, unsigned threads = 0,
                                    const std::optional<RadialPath>& base = std::nullopt);
std::vector<LimitReport> verify_all(const MetricConstants& mc);

} // namespace conical
