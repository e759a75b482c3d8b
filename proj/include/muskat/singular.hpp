#pragma once
// Principal-value quadrature over alpha in R with analytic far-field
// treatment, closed-form (truncated) Hilbert transforms of the rational
// family x^m/(1+x^2)^n, and discrete Hilbert / Lambda operators.

#include "muskat/kernels.hpp"

namespace muskat {

// Near field: grid-aligned nodes |alpha| <= A; far field: u = 1/alpha with m
// trapezoid nodes per side on (0, 1/A].  A >= 2L + dx so far-field points
// have x - alpha outside the support of g.
struct QuadratureScheme {
    double A = 0.0;     // near cutoff, multiple of dx
    int tail_nodes = 256;
    GridSpec spec;
};

QuadratureScheme make_scheme(const GridSpec& spec, double A, int tail_nodes);

enum class IntegrandId {
    VEL1,                // dx(slope of g) * K      (finite limit at alpha=0)
    VEL2,                // (slope of g) * G        (finite limit at alpha=0)
    K_OVER_ALPHA,        // K / alpha               (PV)
    G_OVER_ALPHA,        // G / alpha               (PV)
    DXK_OVER_ALPHA,      // dxK / alpha             (PV)
    K3_OVER_ALPHA,       // K^3 / alpha,            |alpha| > 1 only
    GAMMA_OVER_ALPHA,    // gamma / alpha,          |alpha| > 1 only
    B4_OVER_ALPHA,       // B4 / alpha,             |alpha| > 1 only
    GAMMACAP_OVER_ALPHA, // Gamma / alpha,          |alpha| > 1 only
    THETACAP_OVER_ALPHA, // Theta / alpha,          |alpha| > 1 only
    DXXK_OVER_ALPHA,     // dxxK / alpha,           |alpha| > 1 only
    MEAN_GAMMA_F,        // gamma_f                 (plain integral)
    MEAN_THETA_F,        // theta_f                 (plain integral)
};

// PV integral over alpha of the registered form at node i.  Near field uses a
// symmetric-pair trapezoid (innermost pair completed to the trapezoid
// endpoint weight); far field uses the u = 1/alpha substitution with the
// zero-extension closed-form slopes.
double pv_integral(const InterfaceState& state, int i, IntegrandId integrand,
                   const QuadratureScheme& scheme);

// Closed-form Hilbert transform of y^m/(1+y^2)^n (m < 2n), convention
// Hf(x) = (1/pi) PV int f(x-y)/y dy.
double hilbert_rational(int m, int n, double x);

enum class HilbertRegion { inner, outer };  // |y| < 1 vs |y| > 1

// Truncated variants of the same family; inner + outer = hilbert_rational.
double hilbert_rational_truncated(int m, int n, double x, HilbertRegion region);

// Discrete Hilbert transform: symmetric-pair PV trapezoid over grid-aligned
// y with |y| <= 2L and zero extension (tail contribution vanishes).
GridFunction discrete_hilbert(const GridFunction& g);

// Lambda = H d/dx.
GridFunction lambda_op(const GridFunction& g);

}  // namespace muskat
