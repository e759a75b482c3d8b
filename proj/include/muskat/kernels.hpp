#pragma once
// Pointwise evaluation of the interface kernels: slopes of the parabola f,
// the perturbation g and the full interface h = f + g; the kernels K and G of
// the perturbation equation; the difference D and its alpha-derivative
// combination Phi; the auxiliary family B1..B5, gamma, Gamma, Theta, gamma_f,
// theta_f; and the antisymmetric kernel zeta.

#include <cmath>

#include "muskat/grid.hpp"

namespace muskat {

inline constexpr double kJumpDefault = 6.283185307179586476925286766559;  // 2*pi

// Interface state h(x, t) = x^2 + jump*t + g(x).  h is derived, never stored.
// First and second derivatives of g are precomputed so kernel evaluation is
// pure and reentrant.
struct InterfaceState {
    GridFunction g;
    double t = 0.0;
    double jump = kJumpDefault;  // density jump rho^- - rho^+ > 0
    GridFunction dxg;            // derivative(g, 1)
    GridFunction dxxg;           // derivative(g, 2)

    InterfaceState() = default;
    InterfaceState(GridFunction g_in, double t_in = 0.0, double jump_in = kJumpDefault);
};

enum class KernelId {
    K,
    G,
    K0,
    D,
    PHI,
    B1,
    B2,
    B3,
    B4,
    B5,
    GAMMA,
    GAMMA_F,
    GAMMA_CAP,
    THETA_CAP,
    THETA_F,
};

// Shared scalar helper F(u) = 1/(1+u^2) and its closed-form derivative.
inline double F(double u) { return 1.0 / (1.0 + u * u); }
inline double Fp(double u) {
    const double d = 1.0 + u * u;
    return -2.0 * u / (d * d);
}

// Slope of the parabola: (f(x) - f(x-alpha))/alpha = 2x - alpha; the alpha = 0
// limit is the derivative 2x.  t and jump drop out of the difference.
inline double slope_f(double x, double alpha, double /*t*/ = 0.0, double /*jump*/ = kJumpDefault) {
    return 2.0 * x - alpha;
}

// Slope of g at node i: (g(x_i) - g(x_i - alpha))/alpha with zero extension;
// alpha must be grid-aligned.  alpha = 0 returns the derivative value.
double slope_g(const InterfaceState& state, int i, double alpha);

// Pointwise slope bundle from which every kernel is assembled.  Both the
// grid path and the far-field closed-form path produce one of these.
struct SlopeSet {
    double df = 0.0;    // slope of f
    double dg = 0.0;    // slope of g
    double dh = 0.0;    // df + dg
    double dxdh = 0.0;  // slope of dx h = 2 + slope of dx g
};

// --- kernel formulas as pure functions of slopes ----------------------------

inline double kernel_K(const SlopeSet& s) { return F(s.dh); }

inline double kernel_G(const SlopeSet& s) {
    return -2.0 * (s.dh + s.df) * F(s.dh) * F(s.df);
}

inline double kernel_B1(const SlopeSet& s) {
    const double K = F(s.dh);
    return (-2.0 + 8.0 * s.dh * s.dh * K) * K * K;
}

inline double kernel_B2(const SlopeSet& s) {
    const double K = F(s.dh);
    return -2.0 * s.dh * K * K;
}

inline double kernel_gamma(const SlopeSet& s) {
    const double K = F(s.dh);
    const double K3 = K * K * K;
    return 24.0 * s.dh * K3 - 48.0 * s.dh * s.dh * s.dh * K3 * K;
}

inline double kernel_B3(const SlopeSet& s) {
    return kernel_gamma(s) * s.dxdh * s.dxdh;
}

inline double kernel_B4(const SlopeSet& s) {
    const double K = F(s.dh);
    const double K3 = K * K * K;
    return 3.0 * (-2.0 * K3 + 8.0 * s.dh * s.dh * K3 * K) * s.dxdh;
}

inline double kernel_B5(const SlopeSet& s) { return kernel_B2(s); }

inline double kernel_gamma_f(const SlopeSet& s) {
    const double Ff = F(s.df);
    return s.df * Ff * Ff * Ff;
}

inline double kernel_theta_f(const SlopeSet& s) {
    const double Ff = F(s.df);
    const double Ff2 = Ff * Ff;
    return s.df * s.df * s.df * Ff2 * Ff2;
}

inline double kernel_Gamma_cap(const SlopeSet& s) {
    const double K = F(s.dh);
    const double Ff = F(s.df);
    const double K2 = K * K;
    return -s.df * (s.df + s.dh) * (K2 * K * Ff + K2 * Ff * Ff + K * Ff * Ff * Ff);
}

inline double kernel_Theta_cap(const SlopeSet& s) {
    const double K = F(s.dh);
    const double Ff = F(s.df);
    const double K2 = K * K;
    const double Ff2 = Ff * Ff;
    return -s.df * s.df * s.df * (s.df + s.dh) *
           (K2 * K2 * Ff + K2 * K * Ff2 + K2 * Ff2 * Ff + K * Ff2 * Ff2);
}

// dx K = F'(dh) * dxdh; dxx K = (dxdh)^2 B1 + dxx(slope of g) * B2.
inline double kernel_dxK(const SlopeSet& s) { return Fp(s.dh) * s.dxdh; }
inline double kernel_dxxK(const SlopeSet& s, double dxx_dg) {
    return s.dxdh * s.dxdh * kernel_B1(s) + dxx_dg * kernel_B2(s);
}

// --- grid-path evaluation ---------------------------------------------------

// Slopes at node i and grid-aligned alpha (zero extension).  alpha = 0 yields
// the derivative limits.
SlopeSet slopes_at(const InterfaceState& state, int i, double alpha);

// Kernel dispatch for the full id enumeration.  PHI requires alpha != 0.
double kernel(const InterfaceState& state, int i, double alpha, KernelId id);

// Antisymmetric kernel zeta(x_i, x_j) = dxK(x_i, x_i - x_j)/(x_i - x_j);
// rejects the diagonal i = j.
double zeta(const InterfaceState& state, int i, int j);

}  // namespace muskat
