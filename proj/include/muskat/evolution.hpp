#pragma once
// Assembly of the perturbation velocity, the mollifier-regularized operator,
// explicit RK4 time stepping, and the exact-parabola residual check.

#include <optional>
#include <vector>

#include "muskat/singular.hpp"

namespace muskat {

// Even normalized bump mollifier chi_eps(x) = (1/eps) chi(x/eps),
// chi(x) ~ exp(-1/(1-x^2)); discrete weights renormalized to unit mass.
struct MollifierConfig {
    double epsilon = 0.0;
    std::vector<double> discrete_weights;  // at offsets -radius..radius
    int radius = 0;                        // support in nodes
};

MollifierConfig make_mollifier(const GridSpec& spec, double epsilon);

struct SimConfig {
    GridSpec grid;
    QuadratureScheme quad;
    double dt = 0.0;            // if 0, derived as cfl * dx
    double cfl = 0.25;
    double t_end = 0.0;
    double epsilon = 0.0;       // 0 = unregularized
    int output_every = 1;
    bool keep_snapshots = false;  // store g at every report time
    double blowup_guard = 1e6;    // C1 guard
    double jump = kJumpDefault;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<EnergyReport> reports;
    std::vector<std::pair<double, GridFunction>> snapshots;
    bool blew_up = false;
    double blow_up_time = 0.0;
};

// values[i] = pv_integral(VEL1, i) + pv_integral(VEL2, i).
GridFunction velocity(const InterfaceState& state, const QuadratureScheme& quad);

// Max over xs of |U_f(x) - 2pi| where U_f is the velocity of the pure
// parabola, via near-field trapezoid (alpha = 0 punctured and bridged) plus
// the exact arctan tail.
double parabola_residual(const std::vector<double>& xs, const QuadratureScheme& quad);

// Discrete convolution with the mollifier weights (zero extension).
GridFunction mollify(const GridFunction& g, const MollifierConfig& mol);

// M^eps(g) = chi_eps * velocity(chi_eps * g).
GridFunction velocity_regularized(const InterfaceState& state, const MollifierConfig& mol,
                                  const QuadratureScheme& quad);

// Classical RK4 update; throws BlowUpError on non-finite values.
struct BlowUpError {
    double time = 0.0;
};

InterfaceState step(const InterfaceState& state, double dt, const QuadratureScheme& quad,
                    const std::optional<MollifierConfig>& mol = std::nullopt);

Trajectory simulate(const GridFunction& g0, const SimConfig& cfg);

// Trajectory CSV: header "t,l2,d3_l2,energy,c0,c1,c2,c3,holder".
void write_trajectory_csv(const Trajectory& traj, const std::string& path);

}  // namespace muskat
