#include "muskat/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace muskat {

InterfaceState::InterfaceState(GridFunction g_in, double t_in, double jump_in)
    : g(std::move(g_in)), t(t_in), jump(jump_in) {
    if (!(jump > 0.0)) throw std::invalid_argument("InterfaceState: jump must be positive");
    dxg = derivative(g, 1);
    dxxg = derivative(g, 2);
}

namespace {

// Grid-aligned alpha -> node offset; rejects non-aligned values.
long alpha_offset(const GridSpec& spec, double alpha) {
    const double ratio = alpha / spec.dx;
    const double rounded = std::nearbyint(ratio);
    if (std::abs(ratio - rounded) > 1e-6)
        throw std::invalid_argument("alpha is not grid-aligned");
    return static_cast<long>(rounded);
}

}  // namespace

double slope_g(const InterfaceState& state, int i, double alpha) {
    if (alpha == 0.0) return state.dxg.at(i);
    const long k = alpha_offset(state.g.spec, alpha);
    if (k == 0) return state.dxg.at(i);
    return (state.g.at(i) - state.g.at(i - k)) / alpha;
}

SlopeSet slopes_at(const InterfaceState& state, int i, double alpha) {
    SlopeSet s;
    const double x = state.g.spec.x(i);
    s.df = slope_f(x, alpha);
    if (alpha == 0.0) {
        s.dg = state.dxg.at(i);
        s.dxdh = 2.0 + state.dxxg.at(i);
    } else {
        const long k = alpha_offset(state.g.spec, alpha);
        if (k == 0) {
            s.dg = state.dxg.at(i);
            s.dxdh = 2.0 + state.dxxg.at(i);
        } else {
            s.dg = (state.g.at(i) - state.g.at(i - k)) / alpha;
            s.dxdh = 2.0 + (state.dxg.at(i) - state.dxg.at(i - k)) / alpha;
        }
    }
    s.dh = s.df + s.dg;
    return s;
}

double kernel(const InterfaceState& state, int i, double alpha, KernelId id) {
    const SlopeSet s = slopes_at(state, i, alpha);
    switch (id) {
        case KernelId::K:
            return kernel_K(s);
        case KernelId::G:
            return kernel_G(s);
        case KernelId::K0:
            return kernel_K(slopes_at(state, i, 0.0));
        case KernelId::D:
            return kernel_K(s) - kernel_K(slopes_at(state, i, 0.0));
        case KernelId::PHI: {
            if (alpha == 0.0) throw std::invalid_argument("PHI has no finite limit at alpha = 0");
            const double dx = state.g.spec.dx;
            // d_alpha K = F'(dh) * d_alpha dh, centered difference over +-dx.
            const double dh_p = slopes_at(state, i, alpha + dx).dh;
            const double dh_m = slopes_at(state, i, alpha - dx).dh;
            const double dalpha_K = Fp(s.dh) * (dh_p - dh_m) / (2.0 * dx);
            const double D = kernel_K(s) - kernel_K(slopes_at(state, i, 0.0));
            return -D / (alpha * alpha) + dalpha_K / alpha;
        }
        case KernelId::B1:
            return kernel_B1(s);
        case KernelId::B2:
            return kernel_B2(s);
        case KernelId::B3:
            return kernel_B3(s);
        case KernelId::B4:
            return kernel_B4(s);
        case KernelId::B5:
            return kernel_B5(s);
        case KernelId::GAMMA:
            return kernel_gamma(s);
        case KernelId::GAMMA_F:
            return kernel_gamma_f(s);
        case KernelId::GAMMA_CAP:
            return kernel_Gamma_cap(s);
        case KernelId::THETA_CAP:
            return kernel_Theta_cap(s);
        case KernelId::THETA_F:
            return kernel_theta_f(s);
    }
    throw std::invalid_argument("unknown kernel id");
}

double zeta(const InterfaceState& state, int i, int j) {
    if (i == j) throw std::invalid_argument("zeta: diagonal i = j is singular");
    const double xi = state.g.spec.x(i);
    const double xj = state.g.spec.x(j);
    const double d = xi - xj;
    // Slopes of h and of dx h between the two nodes.
    const double hi = xi * xi + state.g.at(i);
    const double hj = xj * xj + state.g.at(j);
    const double dh = (hi - hj) / d;
    const double dhxi = 2.0 * xi + state.dxg.at(i);
    const double dhxj = 2.0 * xj + state.dxg.at(j);
    const double ddxh = (dhxi - dhxj) / d;
    const double den = 1.0 + dh * dh;
    return -2.0 * dh * ddxh / (den * den) / d;
}

}  // namespace muskat
