#include "muskat/singular.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "muskat/parallel.hpp"

namespace muskat {

QuadratureScheme make_scheme(const GridSpec& spec, double A, int tail_nodes) {
    if (tail_nodes < 16) throw std::invalid_argument("make_scheme: tail_nodes must be >= 16");
    const double ratio = A / spec.dx;
    if (std::abs(ratio - std::nearbyint(ratio)) > 1e-6 * std::max(1.0, ratio))
        throw std::invalid_argument("make_scheme: A must be a multiple of dx");
    if (A < 2.0 * spec.L + spec.dx - 1e-9)
        throw std::invalid_argument("make_scheme: A must be >= 2L + dx");
    QuadratureScheme q;
    q.A = A;
    q.tail_nodes = tail_nodes;
    q.spec = spec;
    return q;
}

namespace {

// Per-node evaluation context: everything the integrand needs at fixed x.
struct NodeCtx {
    const InterfaceState* st;
    int i;
    double x;
    double gx;     // g(x)
    double dgx;    // dx g(x)
    double dxxgx;  // dxx g(x)
};

NodeCtx node_ctx(const InterfaceState& state, int i) {
    NodeCtx c;
    c.st = &state;
    c.i = i;
    c.x = state.g.spec.x(i);
    c.gx = state.g.at(i);
    c.dgx = state.dxg.at(i);
    c.dxxgx = state.dxxg.at(i);
    return c;
}

// Integrand value at grid offset j (alpha = j*dx, j != 0), grid path.
inline double near_value(const NodeCtx& c, long j, IntegrandId id) {
    const InterfaceState& st = *c.st;
    const double alpha = static_cast<double>(j) * st.g.spec.dx;
    SlopeSet s;
    s.df = 2.0 * c.x - alpha;
    s.dg = (c.gx - st.g.at(c.i - j)) / alpha;
    s.dh = s.df + s.dg;
    switch (id) {
        case IntegrandId::VEL1: {
            const double dx_dg = (c.dgx - st.dxg.at(c.i - j)) / alpha;
            return dx_dg * kernel_K(s);
        }
        case IntegrandId::VEL2:
            return s.dg * kernel_G(s);
        case IntegrandId::K_OVER_ALPHA:
            return kernel_K(s) / alpha;
        case IntegrandId::G_OVER_ALPHA:
            return kernel_G(s) / alpha;
        case IntegrandId::DXK_OVER_ALPHA:
            s.dxdh = 2.0 + (c.dgx - st.dxg.at(c.i - j)) / alpha;
            return kernel_dxK(s) / alpha;
        case IntegrandId::K3_OVER_ALPHA: {
            const double K = kernel_K(s);
            return K * K * K / alpha;
        }
        case IntegrandId::GAMMA_OVER_ALPHA:
            return kernel_gamma(s) / alpha;
        case IntegrandId::B4_OVER_ALPHA:
            s.dxdh = 2.0 + (c.dgx - st.dxg.at(c.i - j)) / alpha;
            return kernel_B4(s) / alpha;
        case IntegrandId::GAMMACAP_OVER_ALPHA:
            return kernel_Gamma_cap(s) / alpha;
        case IntegrandId::THETACAP_OVER_ALPHA:
            return kernel_Theta_cap(s) / alpha;
        case IntegrandId::DXXK_OVER_ALPHA: {
            s.dxdh = 2.0 + (c.dgx - st.dxg.at(c.i - j)) / alpha;
            const double dxx_dg = (c.dxxgx - st.dxxg.at(c.i - j)) / alpha;
            return kernel_dxxK(s, dxx_dg) / alpha;
        }
        case IntegrandId::MEAN_GAMMA_F:
            return kernel_gamma_f(s);
        case IntegrandId::MEAN_THETA_F:
            return kernel_theta_f(s);
    }
    throw std::invalid_argument("unknown integrand id");
}

// Finite alpha -> 0 limit for the forms that have one.
inline double center_value(const NodeCtx& c, IntegrandId id) {
    SlopeSet s;
    s.df = 2.0 * c.x;
    s.dg = c.dgx;
    s.dh = s.df + s.dg;
    s.dxdh = 2.0 + c.dxxgx;
    switch (id) {
        case IntegrandId::VEL1:
            return c.dxxgx * kernel_K(s);
        case IntegrandId::VEL2:
            return c.dgx * kernel_G(s);
        case IntegrandId::MEAN_GAMMA_F:
            return kernel_gamma_f(s);
        case IntegrandId::MEAN_THETA_F:
            return kernel_theta_f(s);
        default:
            throw std::invalid_argument("integrand has no alpha = 0 limit");
    }
}

// Far field: w(1/u)/u^2 with the zero-extension closed-form slopes
// (slope of g = g(x)*u, slope of dx g = dx g(x)*u).
inline double far_value(const NodeCtx& c, double u, IntegrandId id) {
    const double alpha = 1.0 / u;
    SlopeSet s;
    s.df = 2.0 * c.x - alpha;
    s.dg = c.gx * u;
    s.dh = s.df + s.dg;
    s.dxdh = 2.0 + c.dgx * u;
    double w = 0.0;
    switch (id) {
        case IntegrandId::VEL1:
            w = c.dgx * u * kernel_K(s);
            break;
        case IntegrandId::VEL2:
            w = c.gx * u * kernel_G(s);
            break;
        case IntegrandId::K_OVER_ALPHA:
            w = kernel_K(s) * u;
            break;
        case IntegrandId::G_OVER_ALPHA:
            w = kernel_G(s) * u;
            break;
        case IntegrandId::DXK_OVER_ALPHA:
            w = kernel_dxK(s) * u;
            break;
        case IntegrandId::K3_OVER_ALPHA: {
            const double K = kernel_K(s);
            w = K * K * K * u;
            break;
        }
        case IntegrandId::GAMMA_OVER_ALPHA:
            w = kernel_gamma(s) * u;
            break;
        case IntegrandId::B4_OVER_ALPHA:
            w = kernel_B4(s) * u;
            break;
        case IntegrandId::GAMMACAP_OVER_ALPHA:
            w = kernel_Gamma_cap(s) * u;
            break;
        case IntegrandId::THETACAP_OVER_ALPHA:
            w = kernel_Theta_cap(s) * u;
            break;
        case IntegrandId::DXXK_OVER_ALPHA:
            w = kernel_dxxK(s, c.dxxgx * u) * u;
            break;
        case IntegrandId::MEAN_GAMMA_F:
            w = kernel_gamma_f(s);
            break;
        case IntegrandId::MEAN_THETA_F:
            w = kernel_theta_f(s);
            break;
    }
    return w / (u * u);
}

bool is_pv_form(IntegrandId id) {
    return id == IntegrandId::K_OVER_ALPHA || id == IntegrandId::G_OVER_ALPHA ||
           id == IntegrandId::DXK_OVER_ALPHA;
}

bool is_tail_form(IntegrandId id) {
    return id == IntegrandId::K3_OVER_ALPHA || id == IntegrandId::GAMMA_OVER_ALPHA ||
           id == IntegrandId::B4_OVER_ALPHA || id == IntegrandId::GAMMACAP_OVER_ALPHA ||
           id == IntegrandId::THETACAP_OVER_ALPHA || id == IntegrandId::DXXK_OVER_ALPHA;
}

}  // namespace

double pv_integral(const InterfaceState& state, int i, IntegrandId integrand,
                   const QuadratureScheme& scheme) {
    if (!(scheme.spec == state.g.spec))
        throw std::invalid_argument("pv_integral: scheme is aligned to a different grid");
    const double dx = scheme.spec.dx;
    const long J = static_cast<long>(std::nearbyint(scheme.A / dx));
    const NodeCtx ctx = node_ctx(state, i);

    double near = 0.0;
    if (is_pv_form(integrand)) {
        // Paired trapezoid over the punctured grid.  The pair sum
        // phi(alpha) = w(alpha) + w(-alpha) is smooth and even; the missing
        // half-weight endpoint phi(0)/2 of the trapezoid is completed by
        // phi(dx)/2, i.e. the innermost pair carries weight 3/2.
        for (long j = 1; j <= J; ++j) {
            const double phi = near_value(ctx, j, integrand) + near_value(ctx, -j, integrand);
            const double wgt = (j == 1) ? 1.5 : (j == J ? 0.5 : 1.0);
            near += wgt * phi;
        }
        near *= dx;
    } else if (is_tail_form(integrand)) {
        // |alpha| > 1 only: trapezoid from alpha0 = dx*ceil(1/dx) to A.
        const long j0 = static_cast<long>(std::ceil(1.0 / dx - 1e-9));
        for (long j = j0; j <= J; ++j) {
            const double phi = near_value(ctx, j, integrand) + near_value(ctx, -j, integrand);
            const double wgt = (j == j0 || j == J) ? 0.5 : 1.0;
            near += wgt * phi;
        }
        near *= dx;
    } else {
        // Bounded integrands: plain trapezoid with the finite limit at 0.
        near = center_value(ctx, integrand);
        for (long j = 1; j <= J; ++j) {
            const double wgt = (j == J) ? 0.5 : 1.0;
            near += wgt * (near_value(ctx, j, integrand) + near_value(ctx, -j, integrand));
        }
        near *= dx;
    }

    // Far field in u = 1/alpha; the u -> 0 endpoint has analytic limit 0.
    const int m = scheme.tail_nodes;
    const double du = 1.0 / (scheme.A * m);
    double far = 0.0;
    for (int k = 1; k <= m; ++k) {
        const double u = k * du;
        const double wgt = (k == m) ? 0.5 : 1.0;
        far += wgt * (far_value(ctx, u, integrand) + far_value(ctx, -u, integrand));
    }
    far *= du;

    return near + far;
}

// ---------------------------------------------------------------------------
// Closed-form Hilbert transforms of r(y) = y^m/(1+y^2)^n.
//
// Complex partial fractions: r(y) = sum_k a_k/(y-i)^k + conj(a_k)/(y+i)^k,
// and H[1/(y-a)^k](x) = +i/(x-a)^k for Im a > 0, -i/(x-a)^k for Im a < 0,
// under Hf(x) = (1/pi) PV int f(x-y)/y dy.  Hence
// Hr(x) = 2 Re( i * sum_k a_k (x-i)^{-k} ).
// ---------------------------------------------------------------------------

namespace {

using cplx = std::complex<double>;

// Truncated product of two power series.
std::vector<cplx> series_mul(const std::vector<cplx>& a, const std::vector<cplx>& b,
                             std::size_t terms) {
    std::vector<cplx> out(terms, cplx(0.0, 0.0));
    for (std::size_t p = 0; p < terms && p < a.size(); ++p)
        for (std::size_t q = 0; p + q < terms && q < b.size(); ++q) out[p + q] += a[p] * b[q];
    return out;
}

// Taylor series of (c + tau)^m (m >= 0), terms coefficients.
std::vector<cplx> series_pow_shift(cplx c, int m, std::size_t terms) {
    std::vector<cplx> out(terms, cplx(0.0, 0.0));
    double binom = 1.0;
    cplx cp = std::pow(c, static_cast<double>(m));
    // (c + tau)^m = sum_j C(m,j) c^{m-j} tau^j, j <= m.
    for (int j = 0; j <= m && j < static_cast<int>(terms); ++j) {
        out[static_cast<std::size_t>(j)] =
            binom * std::pow(c, static_cast<double>(m - j));
        binom *= static_cast<double>(m - j) / static_cast<double>(j + 1);
    }
    (void)cp;
    return out;
}

// Taylor series of (c + tau)^{-n} (n >= 1).
std::vector<cplx> series_inv_pow_shift(cplx c, int n, std::size_t terms) {
    std::vector<cplx> out(terms);
    const cplx inv_c = 1.0 / c;
    cplx lead = std::pow(inv_c, static_cast<double>(n));
    double coef = 1.0;  // C(n+j-1, j) with alternating sign folded below
    for (std::size_t j = 0; j < terms; ++j) {
        out[j] = coef * lead;
        lead *= -inv_c;
        coef *= static_cast<double>(n + static_cast<int>(j)) / static_cast<double>(j + 1);
    }
    return out;
}

void check_family(int m, int n) {
    if (n < 1 || m < 0 || m >= 2 * n)
        throw std::invalid_argument("hilbert_rational: need 0 <= m < 2n, n >= 1");
}

}  // namespace

double hilbert_rational(int m, int n, double x) {
    check_family(m, n);
    const cplx I(0.0, 1.0);
    // Expand y^m/(y+i)^n around y = i: coefficients b_j; a_k = b_{n-k}.
    const std::size_t terms = static_cast<std::size_t>(n);
    const auto num = series_pow_shift(I, m, terms);           // (i + tau)^m
    const auto den = series_inv_pow_shift(2.0 * I, n, terms); // (2i + tau)^{-n}
    const auto b = series_mul(num, den, terms);
    cplx acc(0.0, 0.0);
    const cplx z = cplx(x, -1.0);  // x - i
    cplx zpow = 1.0 / z;
    for (int k = 1; k <= n; ++k) {
        acc += b[static_cast<std::size_t>(n - k)] * zpow;
        zpow /= z;
    }
    return 2.0 * std::real(I * acc);
}

double hilbert_rational_truncated(int m, int n, double x, HilbertRegion region) {
    check_family(m, n);
    // inner = (1/pi) int_{-1}^{1} s(y) dy with s(y) = (r(x-y) - r(x))/y;
    // s is a proper rational function with poles only at z = x - i and its
    // conjugate.  Writing y = z + tau, the pole part of s*(y-z)^n comes from
    // (-1)^n (i - tau)^m (2i - tau)^{-n} / (z + tau); the subtracted r(x)/y
    // piece contributes only at orders >= n and drops out.
    const cplx I(0.0, 1.0);
    const cplx z = cplx(x, -1.0);
    const std::size_t terms = static_cast<std::size_t>(n);
    const auto A = series_pow_shift(I, m, terms);  // (i - tau)^m via tau -> -tau below
    // (i - tau)^m: flip odd coefficients of (i + tau)^m.
    std::vector<cplx> Aflip(A);
    for (std::size_t j = 1; j < Aflip.size(); j += 2) Aflip[j] = -Aflip[j];
    auto B = series_inv_pow_shift(2.0 * I, n, terms);  // (2i + tau)^{-n}, flip odd
    for (std::size_t j = 1; j < B.size(); j += 2) B[j] = -B[j];
    auto C = series_inv_pow_shift(z, 1, terms);  // (z + tau)^{-1}
    auto psi = series_mul(series_mul(Aflip, B, terms), C, terms);
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;

    // I_k(z) = int_{-1}^{1} (y - z)^{-k} dy.
    const cplx w1 = cplx(1.0, 0.0) - z;    // 1 - z (upper half plane)
    const cplx w0 = cplx(-1.0, 0.0) - z;   // -1 - z (upper half plane)
    cplx acc(0.0, 0.0);
    for (int k = 1; k <= n; ++k) {
        const cplx ck = sign * psi[static_cast<std::size_t>(n - k)];
        cplx Ik;
        if (k == 1) {
            Ik = std::log(w1) - std::log(w0);
        } else {
            const double p = 1.0 - k;
            Ik = (std::pow(w1, p) - std::pow(w0, p)) / p;
        }
        acc += ck * Ik;
    }
    const double inner = 2.0 * std::real(acc) / 3.14159265358979323846264338327950288;
    if (region == HilbertRegion::inner) return inner;
    return hilbert_rational(m, n, x) - inner;
}

GridFunction discrete_hilbert(const GridFunction& g) {
    GridFunction out;
    out.spec = g.spec;
    out.values.assign(g.values.size(), 0.0);
    const int n = g.spec.n;
    const double inv_pi = 1.0 / 3.14159265358979323846264338327950288;
    const long M = static_cast<long>(n) - 1;  // |y| <= 2L
    parallel_for(0, n, [&](int i) {
        double acc = 0.0;
        for (long j = 1; j <= M; ++j) {
            const double phi =
                (g.at(i - j) - g.at(i + j)) / (static_cast<double>(j) * g.spec.dx);
            acc += (j == 1 ? 1.5 : 1.0) * phi;
        }
        out.values[static_cast<std::size_t>(i)] = acc * g.spec.dx * inv_pi;
    });
    return out;
}

GridFunction lambda_op(const GridFunction& g) { return discrete_hilbert(derivative(g, 1)); }

}  // namespace muskat
