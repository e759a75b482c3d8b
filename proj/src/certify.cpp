#include "muskat/certify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "muskat/parallel.hpp"

namespace muskat {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// Which norm of g enters the fit, read off the lemma statement.
enum class FitNorm { C2, C1, C2_HOLDER, LINF, DX_LINF };

double fit_norm(const EnergyReport& r, FitNorm which) {
    switch (which) {
        case FitNorm::C2:
            return std::max({r.c_norms[0], r.c_norms[1], r.c_norms[2]});
        case FitNorm::C1:
            return std::max(r.c_norms[0], r.c_norms[1]);
        case FitNorm::C2_HOLDER:
            return std::max({r.c_norms[0], r.c_norms[1], r.c_norms[2]}) + r.holder_2_half;
        case FitNorm::LINF:
            return r.c_norms[0];
        case FitNorm::DX_LINF:
            return r.c_norms[1];
    }
    return 0.0;
}

double sup_abs_pv(const InterfaceState& state, IntegrandId id, const QuadratureScheme& quad) {
    const int n = state.g.spec.n;
    std::vector<double> vals(static_cast<std::size_t>(n), 0.0);
    parallel_for(0, n, [&](int i) {
        vals[static_cast<std::size_t>(i)] = std::abs(pv_integral(state, i, id, quad));
    });
    double m = 0.0;
    for (double v : vals) m = std::max(m, v);
    return m;
}

double sup_lambda_k0(const InterfaceState& state) {
    GridFunction k0;
    k0.spec = state.g.spec;
    k0.values.resize(state.g.values.size());
    for (int i = 0; i < state.g.spec.n; ++i)
        k0.values[static_cast<std::size_t>(i)] = kernel(state, i, 0.0, KernelId::K0);
    const GridFunction lk0 = lambda_op(k0);
    double m = 0.0;
    for (double v : lk0.values) m = std::max(m, std::abs(v));
    return m;
}

double sup_phi_holder(const InterfaceState& state) {
    const double dx = state.g.spec.dx;
    const int jmax = static_cast<int>(std::floor(1.0 / dx + 1e-9));
    const int n = state.g.spec.n;
    std::vector<double> vals(static_cast<std::size_t>(n), 0.0);
    parallel_for(0, n, [&](int i) {
        double m = 0.0;
        for (int j = 1; j <= jmax; ++j) {
            const double alpha = j * dx;
            const double scale = std::sqrt(alpha);
            m = std::max(m, std::abs(kernel(state, i, alpha, KernelId::PHI)) * scale);
            m = std::max(m, std::abs(kernel(state, i, -alpha, KernelId::PHI)) * scale);
        }
        vals[static_cast<std::size_t>(i)] = m;
    });
    double m = 0.0;
    for (double v : vals) m = std::max(m, v);
    return m;
}

// x-integrals of squared kernels at fixed grid-aligned alpha, over the
// extended range [-X, X], X = L + |alpha| + 1, with zero extension; beyond X
// both x and x - alpha are outside supp g, so only the pure-parabola tail
// remains (added in closed form for K, negligible by decay for the others).
enum class L2Kernel { K, G, DALPHA_K };

double kernel_l2(const InterfaceState& state, double alpha, L2Kernel which) {
    const GridSpec& spec = state.g.spec;
    const double dx = spec.dx;
    const long k = static_cast<long>(std::nearbyint(alpha / dx));
    const long pad = static_cast<long>(std::ceil((std::abs(alpha) + 1.0) / dx));
    const long lo = -pad;
    const long hi = static_cast<long>(spec.n) + pad - 1;
    auto gval = [&](long idx) { return state.g.at(idx); };
    auto dh_at = [&](long idx, long koff, double a) {
        const double x = spec.x(0) + static_cast<double>(idx) * dx;
        if (koff == 0) {
            // alpha = 0 limit: derivative of h (dx g = 0 outside the grid).
            return 2.0 * x + state.dxg.at(idx);
        }
        return (2.0 * x - a) + (gval(idx) - gval(idx - koff)) / a;
    };
    double acc = 0.0;
    for (long idx = lo; idx <= hi; ++idx) {
        double v = 0.0;
        const double x = spec.x(0) + static_cast<double>(idx) * dx;
        const double dh = dh_at(idx, k, alpha);
        switch (which) {
            case L2Kernel::K:
                v = F(dh);
                break;
            case L2Kernel::G: {
                const double df = 2.0 * x - alpha;
                v = -2.0 * (dh + df) * F(dh) * F(df);
                break;
            }
            case L2Kernel::DALPHA_K: {
                // d_alpha K = F'(dh) * centered difference of dh over +-dx.
                const double dh_p = dh_at(idx, k + 1, alpha + dx);
                const double dh_m = dh_at(idx, k - 1, alpha - dx);
                v = Fp(dh) * (dh_p - dh_m) / (2.0 * dx);
                break;
            }
        }
        const double wgt = (idx == lo || idx == hi) ? 0.5 : 1.0;
        acc += wgt * v * v;
    }
    acc *= dx;
    if (which == L2Kernel::K) {
        // Closed-form pure-parabola tail of int F(2x-alpha)^2 dx beyond X.
        const double X = spec.L + pad * dx;
        auto P = [](double M) {
            return M / (2.0 * (1.0 + M * M)) + 0.5 * std::atan(M);
        };
        acc += 0.5 * (kPi / 2.0 - P(2.0 * X - alpha) - P(2.0 * X + alpha));
    }
    return acc;
}

double sup_kernel_l2(const InterfaceState& state, L2Kernel which) {
    // Representative grid-aligned alpha sample, snapped to multiples of dx.
    const double dx = state.g.spec.dx;
    const double raw[] = {dx, 0.1, 0.5, 1.0, 2.0, 5.0};
    double m = 0.0;
    for (double a : raw) {
        const double alpha = std::max(1.0, std::nearbyint(a / dx)) * dx;
        m = std::max(m, kernel_l2(state, alpha, which));
        m = std::max(m, kernel_l2(state, -alpha, which));
    }
    if (which != L2Kernel::DALPHA_K) m = std::max(m, kernel_l2(state, 0.0, which));
    return m;
}

struct LemmaDef {
    const char* id;
    int degree;
    FitNorm norm;
};

const LemmaDef kLemmas[] = {
    {"K_SUP", 3, FitNorm::C2},
    {"G_SUP", 2, FitNorm::C2},
    {"DXK_SUP", 2, FitNorm::C2_HOLDER},
    {"LAMBDA_K0", 1, FitNorm::C2_HOLDER},
    {"PHI_HOLDER", 2, FitNorm::C2_HOLDER},
    {"K_L2", 1, FitNorm::DX_LINF},
    {"G_L2", 3, FitNorm::DX_LINF},
    {"DALPHA_K_L2", 3, FitNorm::DX_LINF},
    {"DXXK_TAIL", 2, FitNorm::C2_HOLDER},
    {"K3_TAIL", 1, FitNorm::LINF},
    {"GAMMA_TAIL", 3, FitNorm::LINF},
    {"B4_TAIL", 2, FitNorm::C1},
    {"GAMMACAP_TAIL", 1, FitNorm::LINF},
    {"THETACAP_TAIL", 2, FitNorm::LINF},
};

double lemma_lhs(const std::string& id, const InterfaceState& state,
                 const QuadratureScheme& quad) {
    if (id == "K_SUP") return sup_abs_pv(state, IntegrandId::K_OVER_ALPHA, quad);
    if (id == "G_SUP") return sup_abs_pv(state, IntegrandId::G_OVER_ALPHA, quad);
    if (id == "DXK_SUP") return sup_abs_pv(state, IntegrandId::DXK_OVER_ALPHA, quad);
    if (id == "LAMBDA_K0") return sup_lambda_k0(state);
    if (id == "PHI_HOLDER") return sup_phi_holder(state);
    if (id == "K_L2") return sup_kernel_l2(state, L2Kernel::K);
    if (id == "G_L2") return sup_kernel_l2(state, L2Kernel::G);
    if (id == "DALPHA_K_L2") return sup_kernel_l2(state, L2Kernel::DALPHA_K);
    if (id == "DXXK_TAIL") return sup_abs_pv(state, IntegrandId::DXXK_OVER_ALPHA, quad);
    if (id == "K3_TAIL") return sup_abs_pv(state, IntegrandId::K3_OVER_ALPHA, quad);
    if (id == "GAMMA_TAIL") return sup_abs_pv(state, IntegrandId::GAMMA_OVER_ALPHA, quad);
    if (id == "B4_TAIL") return sup_abs_pv(state, IntegrandId::B4_OVER_ALPHA, quad);
    if (id == "GAMMACAP_TAIL")
        return sup_abs_pv(state, IntegrandId::GAMMACAP_OVER_ALPHA, quad);
    if (id == "THETACAP_TAIL")
        return sup_abs_pv(state, IntegrandId::THETACAP_OVER_ALPHA, quad);
    throw std::invalid_argument("certify_scaling: unknown lemma id " + id);
}

}  // namespace

const std::vector<std::string>& lemma_ids() {
    static const std::vector<std::string> ids = [] {
        std::vector<std::string> v;
        for (const LemmaDef& d : kLemmas) v.emplace_back(d.id);
        return v;
    }();
    return ids;
}

CertReport certify_scaling(const std::string& lemma_id, const GridFunction& base,
                           const std::vector<double>& lambdas, const QuadratureScheme& quad) {
    const LemmaDef* def = nullptr;
    for (const LemmaDef& d : kLemmas)
        if (lemma_id == d.id) def = &d;
    if (def == nullptr) throw std::invalid_argument("certify_scaling: unknown lemma id " + lemma_id);
    if (lambdas.empty()) throw std::invalid_argument("certify_scaling: empty lambda list");

    CertReport rep;
    rep.lemma_id = lemma_id;
    rep.lambda_values = lambdas;
    rep.claimed_degree = def->degree;

    std::vector<double> s, y;
    bool all_finite = true;
    double cmax = 0.0;
    for (double lam : lambdas) {
        GridFunction g = base;
        for (double& v : g.values) v *= lam;
        const InterfaceState state(std::move(g));
        const double lhs = lemma_lhs(lemma_id, state, quad);
        rep.lhs_values.push_back(lhs);
        if (!std::isfinite(lhs)) all_finite = false;
        const double N = fit_norm(norms(state.g), def->norm);
        s.push_back(std::log1p(N));
        y.push_back(std::log(std::max(lhs, 1e-300)));
        cmax = std::max(cmax, lhs / std::pow(1.0 + N, def->degree));
    }

    // Least-squares slope of log LHS vs log(1 + N); a degenerate abscissa
    // family (e.g. base = 0) fits degree 0 by convention.
    const std::size_t n = s.size();
    double sm = 0.0, ym = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        sm += s[k];
        ym += y[k];
    }
    sm /= static_cast<double>(n);
    ym /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        sxx += (s[k] - sm) * (s[k] - sm);
        sxy += (s[k] - sm) * (y[k] - ym);
    }
    rep.fitted_degree = (sxx > 1e-12) ? sxy / sxx : 0.0;
    rep.constant_estimate = cmax;
    rep.pass = all_finite && rep.fitted_degree <= rep.claimed_degree + 0.25;
    return rep;
}

std::string cert_report_json(const CertReport& r) {
    char buf[64];
    std::string out = "{\n  \"lemma_id\": \"" + r.lemma_id + "\",\n  \"lambda_values\": [";
    for (std::size_t k = 0; k < r.lambda_values.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.17g", r.lambda_values[k]);
        out += (k ? ", " : "") + std::string(buf);
    }
    out += "],\n  \"lhs_values\": [";
    for (std::size_t k = 0; k < r.lhs_values.size(); ++k) {
        std::snprintf(buf, sizeof buf, "%.17g", r.lhs_values[k]);
        out += (k ? ", " : "") + std::string(buf);
    }
    std::snprintf(buf, sizeof buf, "%d", r.claimed_degree);
    out += "],\n  \"claimed_degree\": " + std::string(buf);
    std::snprintf(buf, sizeof buf, "%.17g", r.fitted_degree);
    out += ",\n  \"fitted_degree\": " + std::string(buf);
    std::snprintf(buf, sizeof buf, "%.17g", r.constant_estimate);
    out += ",\n  \"constant_estimate\": " + std::string(buf);
    out += ",\n  \"pass\": ";
    out += r.pass ? "true" : "false";
    out += "\n}\n";
    return out;
}

void write_cert_report(const CertReport& r, const std::string& dir) {
    const std::string path = dir + "/cert_" + r.lemma_id + ".json";
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    os << cert_report_json(r);
}

EnergyInequalityReport energy_inequality_check(const Trajectory& traj) {
    if (traj.reports.size() < 10)
        throw std::invalid_argument("energy_inequality_check: need >= 10 reports");
    if (traj.blew_up) throw std::invalid_argument("energy_inequality_check: trajectory blew up");
    EnergyInequalityReport rep;
    std::vector<double> dEdt, poly;
    for (std::size_t k = 1; k + 1 < traj.reports.size(); ++k) {
        const double dE = (traj.reports[k + 1].energy - traj.reports[k - 1].energy) /
                          (traj.times[k + 1] - traj.times[k - 1]);
        const double h3 = traj.reports[k].h3;
        double p = 0.0, hp = h3;
        for (int deg = 2; deg <= 5; ++deg) {
            hp *= h3;  // h3^deg
            p += hp;
        }
        dEdt.push_back(dE);
        poly.push_back(p);
    }
    double c = 0.0;
    for (std::size_t k = 0; k < dEdt.size(); ++k)
        if (poly[k] > 0.0) c = std::max(c, dEdt[k] / poly[k]);
    rep.c_fit = c;
    double res = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < dEdt.size(); ++k)
        res = std::max(res, dEdt[k] - c * poly[k]);
    rep.max_residual = std::isfinite(res) ? res : 0.0;
    return rep;
}

RiccatiReport riccati_envelope(const Trajectory& traj) {
    if (traj.reports.size() < 10)
        throw std::invalid_argument("riccati_envelope: need >= 10 reports");
    if (traj.blew_up) throw std::invalid_argument("riccati_envelope: trajectory blew up");
    RiccatiReport rep;
    const double h0 = traj.reports.front().h3;
    if (h0 <= 0.0) {
        rep.c_fit = 0.0;
        rep.t_star = std::numeric_limits<double>::infinity();
        rep.margin = 0.0;
        return rep;
    }
    const double phi0 = 1.0 + h0;
    const double phi03 = phi0 * phi0 * phi0;
    // Envelope h0/(1 - c*phi0^3 t)^{1/3} dominates h3(t) iff
    // c >= (1 - (h0/h3)^3)/(phi0^3 t) at every reported t > 0.
    double c = 0.0;
    for (std::size_t k = 1; k < traj.reports.size(); ++k) {
        const double t = traj.times[k];
        const double h3 = traj.reports[k].h3;
        if (t <= 0.0 || h3 <= 0.0) continue;
        const double r = h0 / h3;
        c = std::max(c, (1.0 - r * r * r) / (phi03 * t));
    }
    rep.c_fit = c;
    rep.t_star = c > 0.0 ? 1.0 / (c * phi03) : std::numeric_limits<double>::infinity();
    double margin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < traj.reports.size(); ++k) {
        const double t = traj.times[k];
        const double denom = 1.0 - c * phi03 * t;
        const double env = denom > 0.0 ? h0 / std::cbrt(denom)
                                       : std::numeric_limits<double>::infinity();
        margin = std::min(margin, env - traj.reports[k].h3);
    }
    rep.margin = margin;
    return rep;
}

namespace {

double l2_gap(const GridFunction& a, const GridFunction& b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        const double d = a.values[i] - b.values[i];
        const double w = (i == 0 || i + 1 == a.values.size()) ? 0.5 : 1.0;
        acc += w * d * d;
    }
    return std::sqrt(acc * a.spec.dx);
}

}  // namespace

CauchyReport cauchy_rate(const GridFunction& g0, const std::vector<double>& epsilons,
                         double T, SimConfig cfg) {
    for (std::size_t k = 1; k < epsilons.size(); ++k)
        if (!(epsilons[k] < epsilons[k - 1]))
            throw std::invalid_argument("cauchy_rate: epsilons must be strictly decreasing");
    for (double e : epsilons)
        if (e < 2.0 * cfg.grid.dx - 1e-12)
            throw std::invalid_argument("cauchy_rate: epsilon below 2*dx");
    cfg.t_end = T;
    cfg.keep_snapshots = true;
    std::vector<Trajectory> runs;
    runs.reserve(epsilons.size());
    for (double e : epsilons) {
        cfg.epsilon = e;
        runs.push_back(simulate(g0, cfg));
        if (runs.back().blew_up) throw std::invalid_argument("cauchy_rate: blow-up before T");
    }
    CauchyReport rep;
    for (std::size_t k = 0; k + 1 < runs.size(); ++k) {
        const std::size_t m = std::min(runs[k].snapshots.size(), runs[k + 1].snapshots.size());
        double gap = 0.0;
        for (std::size_t s = 0; s < m; ++s)
            gap = std::max(gap, l2_gap(runs[k].snapshots[s].second, runs[k + 1].snapshots[s].second));
        rep.eps_sums.push_back(epsilons[k] + epsilons[k + 1]);
        rep.gaps.push_back(gap);
    }
    // log-log slope of gap vs (eps + eps').
    double sm = 0.0, ym = 0.0;
    const std::size_t n = rep.gaps.size();
    std::vector<double> s(n), y(n);
    for (std::size_t k = 0; k < n; ++k) {
        s[k] = std::log(rep.eps_sums[k]);
        y[k] = std::log(std::max(rep.gaps[k], 1e-300));
        sm += s[k];
        ym += y[k];
    }
    if (n >= 2) {
        sm /= static_cast<double>(n);
        ym /= static_cast<double>(n);
        double sxx = 0.0, sxy = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            sxx += (s[k] - sm) * (s[k] - sm);
            sxy += (s[k] - sm) * (y[k] - ym);
        }
        rep.fitted_rate = sxx > 0.0 ? sxy / sxx : 0.0;
    }
    return rep;
}

CordobaReport cordoba_check(const GridFunction& g) {
    const GridFunction lg = lambda_op(g);
    GridFunction g2 = g;
    for (double& v : g2.values) v *= v;
    const GridFunction lg2 = lambda_op(g2);
    CordobaReport rep;
    const int n = g.spec.n;
    const int lo = n / 10;
    const int hi = n - n / 10;
    double mn = std::numeric_limits<double>::infinity();
    for (int i = lo; i < hi; ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        mn = std::min(mn, g.values[k] * lg.values[k] - 0.5 * lg2.values[k]);
    }
    rep.min_residual = std::isfinite(mn) ? mn : 0.0;
    const EnergyReport r = norms(g);
    const double c1 = std::max(r.c_norms[0], r.c_norms[1]);
    rep.tolerance = 1e-6 * (1.0 + c1 * c1);
    rep.pass = rep.min_residual >= -rep.tolerance;
    return rep;
}

GridFunction rt_profile(const InterfaceState& state) {
    GridFunction out;
    out.spec = state.g.spec;
    out.values.resize(state.g.values.size());
    for (int i = 0; i < state.g.spec.n; ++i) {
        const double dh = 2.0 * state.g.spec.x(i) + state.dxg.at(i);
        out.values[static_cast<std::size_t>(i)] = state.jump / std::sqrt(1.0 + dh * dh);
    }
    return out;
}

}  // namespace muskat
