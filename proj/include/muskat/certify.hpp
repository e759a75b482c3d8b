#pragma once
// Numerical certification of the lemma-level bounds via scaling families, the
// energy inequality and Riccati envelope, the Cauchy-in-epsilon rate, the
// Cordoba-Cordoba pointwise inequality, and the Rayleigh-Taylor profile.

#include <string>
#include <vector>

#include "muskat/evolution.hpp"

namespace muskat {

struct CertReport {
    std::string lemma_id;
    std::vector<double> lambda_values;
    std::vector<double> lhs_values;
    int claimed_degree = 0;
    double fitted_degree = 0.0;
    double constant_estimate = 0.0;
    bool pass = false;
};

// The 14 certified lemma ids, in canonical order.
const std::vector<std::string>& lemma_ids();

// Evaluates the lemma LHS on g = lambda * base, fits log LHS against
// log(1 + N) where N is the norm printed in the lemma, and fills the report.
// pass = fitted_degree <= claimed_degree + 0.25 and all LHS finite.
CertReport certify_scaling(const std::string& lemma_id, const GridFunction& base,
                           const std::vector<double>& lambdas, const QuadratureScheme& quad);

std::string cert_report_json(const CertReport& r);
void write_cert_report(const CertReport& r, const std::string& dir);

struct EnergyInequalityReport {
    double c_fit = 0.0;         // least c with dE/dt <= c * sum_{k=2..5} h3^k
    double max_residual = 0.0;  // max of dE/dt - c_fit * poly (<= 0)
};

EnergyInequalityReport energy_inequality_check(const Trajectory& traj);

struct RiccatiReport {
    double c_fit = 0.0;
    double margin = 0.0;         // min over times of envelope - measured h3
    double t_star = 0.0;         // 1/(c * phi0^3); +inf when c = 0
};

RiccatiReport riccati_envelope(const Trajectory& traj);

struct CauchyReport {
    std::vector<double> eps_sums;  // eps_i + eps_{i+1} per consecutive pair
    std::vector<double> gaps;      // sup over output times of L2 gap
    double fitted_rate = 0.0;
};

CauchyReport cauchy_rate(const GridFunction& g0, const std::vector<double>& epsilons,
                         double T, SimConfig cfg);

struct CordobaReport {
    double min_residual = 0.0;  // min over interior nodes of g*Lg - 0.5*L(g^2)
    double tolerance = 0.0;     // 1e-6 * (1 + |g|_{C1}^2)
    bool pass = false;
};

CordobaReport cordoba_check(const GridFunction& g);

// Rayleigh-Taylor profile jump / sqrt(1 + (dx h)^2).
GridFunction rt_profile(const InterfaceState& state);

}  // namespace muskat
