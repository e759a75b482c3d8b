// Acceptance gate: twelve analytic-identity and property checks run end to
// end against the built library.  Each criterion prints a single [PASS] or
// [FAIL] line; the exit code is the number of failures.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "muskat/certify.hpp"
#include "muskat/parallel.hpp"

using namespace muskat;

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;
constexpr double kTwoPi = 2.0 * kPi;

int g_failures = 0;

void report(int idx, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", idx, name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), f, a);
    return buf;
}

std::string fmt2(const char* f, double a, double b) {
    char buf[192];
    std::snprintf(buf, sizeof(buf), f, a, b);
    return buf;
}

// ---------------------------------------------------------------------------
// 1. Exact-parabola residual with grid refinement.

void criterion_parabola() {
    std::vector<double> xs;
    for (int k = -5; k <= 5; ++k) xs.push_back(static_cast<double>(k));

    const GridSpec coarse = make_grid(10, 2001);  // dx = 0.01
    const GridSpec fine = make_grid(10, 4001);    // dx = 0.005
    const double r1 = parabola_residual(xs, make_scheme(coarse, 1e4, 256));
    const double r2 = parabola_residual(xs, make_scheme(fine, 1e4, 256));
    const bool pass = r1 < 1e-3 && r1 / r2 >= 3.0;
    report(1, "parabola velocity identity", pass,
           fmt2("residual %.3e, refinement ratio %.2f", r1, r1 / r2));
}

// ---------------------------------------------------------------------------
// 2. Hilbert transform closed forms vs an adaptive PV quadrature oracle.

long double rat_val(int m, int n, long double y) {
    return std::pow(y, m) / std::pow(1.0L + y * y, n);
}

long double rat_deriv(int m, int n, long double y) {
    const long double d = 1.0L + y * y;
    return std::pow(y, m - 1) * (m * d - 2.0L * n * y * y) / std::pow(d, n + 1);
}

long double adaptive_simpson(const std::function<long double(long double)>& f, long double a,
                             long double b, long double fa, long double fm, long double fb,
                             long double whole, long double tol, int depth) {
    const long double c = 0.5L * (a + b);
    const long double lm = f(0.5L * (a + c));
    const long double rm = f(0.5L * (c + b));
    const long double left = (c - a) / 6.0L * (fa + 4.0L * lm + fm);
    const long double right = (b - c) / 6.0L * (fm + 4.0L * rm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0L * tol)
        return left + right + (left + right - whole) / 15.0L;
    return adaptive_simpson(f, a, c, fa, lm, fm, left, 0.5L * tol, depth - 1) +
           adaptive_simpson(f, c, b, fm, rm, fb, right, 0.5L * tol, depth - 1);
}

long double integrate(const std::function<long double(long double)>& f, long double a,
                      long double b, long double tol) {
    const long double fa = f(a), fb = f(b), fm = f(0.5L * (a + b));
    const long double whole = (b - a) / 6.0L * (fa + 4.0L * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

// PV integrand folded over y > 0: phi(y) = (r(x-y) - r(x+y)) / y.
long double pv_phi(int m, int n, long double x, long double y) {
    if (y == 0.0L) return -2.0L * rat_deriv(m, n, x);
    return (rat_val(m, n, x - y) - rat_val(m, n, x + y)) / y;
}

long double oracle_inner(int m, int n, long double x) {
    auto f = [&](long double y) { return pv_phi(m, n, x, y); };
    return integrate(f, 0.0L, 1.0L, 1e-14L) / kPi;
}

long double oracle_full(int m, int n, long double x) {
    auto f = [&](long double y) { return pv_phi(m, n, x, y); };
    long double s = integrate(f, 0.0L, 1.0L, 1e-14L) + integrate(f, 1.0L, 2.0L, 1e-14L) +
                    integrate(f, 2.0L, 4.0L, 1e-14L) + integrate(f, 4.0L, 8.0L, 1e-14L);
    // Tail y > 8 under u = 1/y; the integrand stays bounded as u -> 0.
    const long double sign = (m % 2 == 0) ? 1.0L : -1.0L;
    auto tail = [&](long double u) -> long double {
        if (u == 0.0L) return (2 * n - m - 1 == 0) ? (sign - 1.0L) : 0.0L;
        const long double a = 1.0L - x * u, b = 1.0L + x * u;
        const long double A = std::pow(a, m) / std::pow(a * a + u * u, n);
        const long double B = std::pow(b, m) / std::pow(b * b + u * u, n);
        return std::pow(u, 2 * n - m - 1) * (sign * A - B);
    };
    s += integrate(tail, 0.0L, 0.125L, 1e-14L);
    return s / kPi;
}

void criterion_hilbert() {
    const std::vector<double> xs{0.37, -1.21, 2.3, -3.7};
    int samples = 0;
    double worst = 0.0;
    for (int n = 1; n <= 5; ++n)
        for (int m = 0; m < 2 * n; ++m)
            for (double x : xs) {
                const long double full = oracle_full(m, n, x);
                const long double inner = oracle_inner(m, n, x);
                const double vf = hilbert_rational(m, n, x);
                const double vi = hilbert_rational_truncated(m, n, x, HilbertRegion::inner);
                const double vo = hilbert_rational_truncated(m, n, x, HilbertRegion::outer);
                const double scale =
                    std::max({std::abs(static_cast<double>(full)), std::abs(vf), 1e-6});
                worst = std::max(worst, std::abs(vf - static_cast<double>(full)) / scale);
                worst = std::max(worst,
                                 std::abs(vi - static_cast<double>(inner)) / scale);
                worst = std::max(
                    worst, std::abs(vo - static_cast<double>(full - inner)) / scale);
                ++samples;
            }
    const bool pass = samples >= 100 && worst < 1e-8;
    report(2, "rational Hilbert transform closed forms", pass,
           fmt2("%.0f samples, worst relative error %.2e", static_cast<double>(samples),
                worst));
}

// ---------------------------------------------------------------------------
// 3. PV integral of K/alpha against the flat-interface closed form.

void criterion_k_over_alpha() {
    const GridSpec spec = make_grid(10, 1001);  // dx = 0.02
    const InterfaceState z(sample(spec, [](double) { return 0.0; }));
    const QuadratureScheme quad = make_scheme(spec, 1000.0, 256);
    std::vector<double> err(spec.n, 0.0);
    parallel_for(0, spec.n, [&](int i) {
        const double x = spec.x(i);
        const double exact = kTwoPi * x / (1.0 + 4.0 * x * x);
        err[i] = std::abs(pv_integral(z, i, IntegrandId::K_OVER_ALPHA, quad) - exact);
    });
    double sup = 0.0;
    for (double e : err) sup = std::max(sup, e);
    report(3, "PV K/alpha vs flat closed form", sup < 1e-3, fmt("sup error %.3e", sup));
}

// ---------------------------------------------------------------------------
// 4. L2 norm of K over x equals pi/4 for the flat perturbation, any offset.

void criterion_k_l2() {
    const GridSpec spec = make_grid(10, 1001);  // dx = 0.02
    const InterfaceState z(sample(spec, [](double) { return 0.0; }));
    auto P = [](double M) { return M / (2.0 * (1.0 + M * M)) + 0.5 * std::atan(M); };
    double worst = 0.0;
    for (double alpha : {0.0, 0.02, 0.1, 0.5, 1.0, 2.0, 5.0}) {
        double sum = 0.0;
        for (int i = 0; i < spec.n; ++i) {
            const double k = kernel(z, i, alpha, KernelId::K);
            const double w = (i == 0 || i == spec.n - 1) ? 0.5 : 1.0;
            sum += w * k * k * spec.dx;
        }
        // Exact tails |x| > L of F(2x - alpha)^2.
        sum += 0.5 * (0.5 * kPi - P(2.0 * spec.L - alpha) - P(2.0 * spec.L + alpha));
        worst = std::max(worst, std::abs(sum - kPi / 4.0));
    }
    report(4, "flat K L2 value pi/4", worst < 1e-4, fmt("worst deviation %.3e", worst));
}

// ---------------------------------------------------------------------------
// 5. Kernel invariant property suite over randomized bump states.

void criterion_invariants() {
    std::mt19937 rng(12345);
    const GridSpec spec = make_grid(5, 201);  // dx = 0.05
    std::uniform_real_distribution<double> amp(-0.5, 0.5), wid(0.5, 3.0), ctr(-3.0, 3.0);
    std::vector<InterfaceState> pool;
    for (int s = 0; s < 50; ++s) {
        const double a = amp(rng), w = wid(rng), c = ctr(rng);
        pool.emplace_back(
            sample(spec, [&](double x) { return bump(x, a, w, c); }));
    }
    std::uniform_int_distribution<int> pick(0, 49), node(0, spec.n - 1);
    std::uniform_int_distribution<int> off(-800, 800);

    bool k_ok = true, d_ok = true, zeta_ok = true;
    for (int s = 0; s < 10000; ++s) {
        const InterfaceState& st = pool[pick(rng)];
        const int i = node(rng);
        const double alpha = off(rng) * spec.dx;
        const double K = kernel(st, i, alpha, KernelId::K);
        const double G = kernel(st, i, alpha, KernelId::G);
        if (!(K > 0.0 && K <= 1.0) || !(std::abs(G) <= 2.0)) k_ok = false;
        if (std::abs(kernel(st, i, 0.0, KernelId::D)) > 1e-15) d_ok = false;
        int j = node(rng);
        if (j == i) j = (i + 1) % spec.n;
        if (std::abs(zeta(st, i, j) + zeta(st, j, i)) > 1e-12) zeta_ok = false;
    }

    const QuadratureScheme quad = make_scheme(spec, 40.0, 256);
    double mean_worst = 0.0;
    std::vector<double> worst_per(spec.n, 0.0);
    parallel_for(0, spec.n, [&](int i) {
        for (int rep = 0; rep < 25; ++rep) {  // 201 * 25 > 5000 samples per kernel
            const InterfaceState& st = pool[(i * 25 + rep) % 50];
            const double a = std::abs(pv_integral(st, i, IntegrandId::MEAN_GAMMA_F, quad));
            const double b = std::abs(pv_integral(st, i, IntegrandId::MEAN_THETA_F, quad));
            worst_per[i] = std::max({worst_per[i], a, b});
        }
    });
    for (double v : worst_per) mean_worst = std::max(mean_worst, v);

    const bool bounds_ok = k_ok && d_ok && zeta_ok;
    const bool pass = bounds_ok && mean_worst < 1e-10;
    std::string detail = bounds_ok ? "bounds ok" : "bounds violated";
    detail += fmt(", worst mean-zero defect %.2e", mean_worst);
    report(5, "kernel invariant suite", pass, detail);
}

// ---------------------------------------------------------------------------
// 6. Scaling certification of the 14 lemma bounds.

void criterion_lemmas() {
    const GridSpec spec = make_grid(10, 1001);  // dx = 0.02
    const QuadratureScheme quad = make_scheme(spec, 40.0, 256);
    const GridFunction base = sample(spec, [](double x) { return bump(x, 0.5, 2.0, 0.0); });
    const std::vector<double> lambdas{1.0, 2.0, 4.0, 8.0};
    bool pass = true;
    std::string detail;
    for (const std::string& id : lemma_ids()) {
        const CertReport r = certify_scaling(id, base, lambdas, quad);
        if (!r.pass) {
            pass = false;
            detail += (detail.empty() ? "" : ", ") + id +
                      fmt2(" fitted %.2f > claimed %.0f", r.fitted_degree,
                           static_cast<double>(r.claimed_degree));
        }
    }
    if (pass) detail = "all 14 lemma scalings within degree + 0.25";
    report(6, "lemma scaling certification", pass, detail);
}

// ---------------------------------------------------------------------------
// 7. Steady state and evolution self-convergence.

SimConfig sim_config(int n, double L, double A) {
    SimConfig cfg;
    cfg.grid = make_grid(L, n);
    cfg.quad = make_scheme(cfg.grid, A, 256);
    cfg.cfl = 0.25;
    cfg.t_end = 0.5;
    cfg.output_every = 1000000;  // first and last only
    return cfg;
}

void criterion_evolution() {
    const SimConfig c0 = sim_config(501, 5, 10.02);
    const InterfaceState z(sample(c0.grid, [](double) { return 0.0; }));
    double vsup = 0.0;
    for (double v : velocity(z, c0.quad).values) vsup = std::max(vsup, std::abs(v));

    auto run = [](SimConfig cfg) {
        cfg.keep_snapshots = true;
        const GridFunction g0 =
            sample(cfg.grid, [](double x) { return bump(x, 0.1, 1.5, 0.0); });
        return simulate(g0, cfg);
    };
    const Trajectory t1 = run(sim_config(251, 5, 12.0));
    const Trajectory t2 = run(sim_config(501, 5, 12.0));
    const Trajectory t3 = run(sim_config(1001, 5, 12.0));
    const bool finished = !t1.blew_up && !t2.blew_up && !t3.blew_up;
    // L2 norm of the solution difference at the shared nodes.
    auto diff_l2 = [](const GridFunction& a, const GridFunction& b) {
        double s = 0.0;
        for (int i = 0; i < a.spec.n; ++i) {
            const double d = a.values[i] - b.values[2 * i];
            s += d * d * a.spec.dx;
        }
        return std::sqrt(s);
    };
    const double e1 = diff_l2(t1.snapshots.back().second, t2.snapshots.back().second);
    const double e2 = diff_l2(t2.snapshots.back().second, t3.snapshots.back().second);
    const double order = (e1 > 0 && e2 > 0) ? std::log2(e1 / e2) : 0.0;
    const bool pass = vsup < 1e-10 && finished && order >= 2.0;
    report(7, "steady state and self-convergence", pass,
           fmt2("velocity sup %.2e, observed order %.2f", vsup, order));
}

// ---------------------------------------------------------------------------
// 8. Polynomial energy inequality, dt-stable constant.

void criterion_energy() {
    SimConfig cfg = sim_config(501, 5, 10.02);
    cfg.output_every = 5;
    const GridFunction g0 =
        sample(cfg.grid, [](double x) { return bump(x, 0.1, 1.5, 0.0); });
    const EnergyInequalityReport a = energy_inequality_check(simulate(g0, cfg));
    cfg.cfl = 0.125;
    cfg.output_every = 10;
    const EnergyInequalityReport b = energy_inequality_check(simulate(g0, cfg));
    const bool tiny = a.c_fit < 1e-10 && b.c_fit < 1e-10;
    const double ratio =
        (a.c_fit > 0 && b.c_fit > 0) ? std::max(a.c_fit / b.c_fit, b.c_fit / a.c_fit) : 0.0;
    const bool pass =
        std::isfinite(a.c_fit) && std::isfinite(b.c_fit) && (tiny || ratio <= 2.0);
    report(8, "polynomial energy inequality", pass,
           fmt2("c = %.4g, dt-refined ratio %.3f", a.c_fit, ratio));
}

// ---------------------------------------------------------------------------
// 9. Riccati envelope and blow-up time monotonicity.

void criterion_riccati() {
    double prev_tstar = std::numeric_limits<double>::infinity();
    double min_margin = std::numeric_limits<double>::infinity();
    bool monotone = true;
    for (double amp : {0.05, 0.1, 0.2}) {
        SimConfig cfg = sim_config(501, 5, 10.02);
        cfg.output_every = 5;
        const GridFunction g0 =
            sample(cfg.grid, [&](double x) { return bump(x, amp, 1.5, 0.0); });
        const RiccatiReport r = riccati_envelope(simulate(g0, cfg));
        min_margin = std::min(min_margin, r.margin);
        if (r.t_star > prev_tstar + 1e-12) monotone = false;
        prev_tstar = r.t_star;
    }
    const bool pass = min_margin >= -1e-9 && monotone;
    report(9, "Riccati envelope", pass,
           fmt2("min margin %.2e, largest-amplitude T* %.4g", min_margin, prev_tstar));
}

// ---------------------------------------------------------------------------
// 10. Cauchy rate in the mollification width.

void criterion_cauchy() {
    SimConfig cfg;
    cfg.grid = make_grid(5, 401);  // dx = 0.025
    cfg.quad = make_scheme(cfg.grid, 10.025, 256);
    cfg.cfl = 0.25;
    cfg.output_every = 5;
    const GridFunction g0 =
        sample(cfg.grid, [](double x) { return bump(x, 0.1, 1.5, 0.0); });
    const CauchyReport r = cauchy_rate(g0, {0.2, 0.1, 0.05}, 0.25, cfg);
    report(10, "Cauchy rate in the mollifier width", r.fitted_rate >= 0.9,
           fmt("fitted rate %.3f", r.fitted_rate));
}

// ---------------------------------------------------------------------------
// 11. Discrete pointwise inequality g * Lg >= 0.5 * L(g^2).

void criterion_cordoba() {
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> amp(-0.5, 0.5), wid(0.5, 3.0), ctr(-4.0, 4.0);
    const GridSpec spec = make_grid(10, 4001);  // dx = 0.005
    bool pass = true;
    double worst = 0.0;
    for (int s = 0; s < 20; ++s) {
        const double a = amp(rng), w = wid(rng), c = ctr(rng);
        const GridFunction g =
            sample(spec, [&](double x) { return bump(x, a, w, c); });
        const CordobaReport r = cordoba_check(g);
        if (!r.pass) pass = false;
        worst = std::min(worst, r.min_residual + r.tolerance);
    }
    report(11, "discrete pointwise convexity inequality", pass,
           fmt("worst residual margin %.2e", worst));
}

// ---------------------------------------------------------------------------
// 12. Rayleigh-Taylor profile at the outer nodes.

void criterion_rt() {
    const GridSpec spec = make_grid(10, 1001);
    const InterfaceState st(
        sample(spec, [](double x) { return bump(x, 0.1, 2.0, 0.0); }));
    const GridFunction p = rt_profile(st);
    const int outer = spec.n / 10;
    double worst = 0.0;
    for (int i = 0; i < spec.n; ++i) {
        if (i >= outer && i < spec.n - outer) continue;
        const double x = spec.x(i);
        worst = std::max(worst,
                         std::abs(p.values[i] * std::sqrt(1.0 + 4.0 * x * x) - kTwoPi));
    }
    report(12, "Rayleigh-Taylor outer profile", worst <= 0.01 * kTwoPi,
           fmt("worst outer deviation %.2e", worst));
}

}  // namespace

int main() {
    criterion_parabola();
    criterion_hilbert();
    criterion_k_over_alpha();
    criterion_k_l2();
    criterion_invariants();
    criterion_lemmas();
    criterion_evolution();
    criterion_energy();
    criterion_riccati();
    criterion_cauchy();
    criterion_cordoba();
    criterion_rt();
    if (g_failures == 0)
        std::printf("acceptance: all 12 criteria passed\n");
    else
        std::printf("acceptance: %d criteria failed\n", g_failures);
    return g_failures;
}
