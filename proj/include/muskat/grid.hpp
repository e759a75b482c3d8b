#pragma once
// Uniform-grid function representation, finite-difference derivatives up to
// fourth order, and the norm/seminorm computations used by the energy
// monitoring and certification machinery.

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace muskat {

// Uniform symmetric grid on [-L, L] with an odd node count so x = 0 is a node.
struct GridSpec {
    double L = 0.0;   // half-width
    int n = 0;        // node count (odd, >= 9)
    double dx = 0.0;  // spacing = 2L/(n-1)

    double x(int i) const { return -L + i * dx; }
    bool operator==(const GridSpec&) const = default;
};

// Real-valued function sampled on a GridSpec.  Values outside [-L, L] are
// zero by convention (compact support).
struct GridFunction {
    GridSpec spec;
    std::vector<double> values;

    // Zero-extended lookup by (possibly out-of-range) node index.
    double at(long i) const {
        return (i >= 0 && i < static_cast<long>(values.size())) ? values[static_cast<std::size_t>(i)] : 0.0;
    }
};

// Norm bundle: L2, third-derivative L2, energy, sup norms of derivatives
// 0..3, a C^{2,1/2} seminorm estimate, and the H3 convention
// sqrt(l2^2 + d3_l2^2).
struct EnergyReport {
    double l2 = 0.0;
    double d3_l2 = 0.0;
    double energy = 0.0;       // (l2^2 + d3_l2^2) / 2
    double c_norms[4] = {0, 0, 0, 0};
    double holder_2_half = 0.0;
    double h3 = 0.0;
};

GridSpec make_grid(double L, int n);

GridFunction sample(const GridSpec& spec, const std::function<double(double)>& f);

// Centered finite-difference derivative of formal order 4 with zero extension
// at the boundary; k in 1..4.
GridFunction derivative(const GridFunction& g, int k);

EnergyReport norms(const GridFunction& g);

// CSV io: header "x,g", 17 significant digits.  Readers reject files whose x
// column is not an arithmetic progression within 1e-9 relative.
void write_csv(const GridFunction& g, std::ostream& os);
void write_csv_file(const GridFunction& g, const std::string& path);
GridFunction read_csv(std::istream& is);
GridFunction read_csv_file(const std::string& path);

// Smooth compactly supported bump a*exp(-1/(1-((x-c)/w)^2)) on |x-c| < w.
double bump(double x, double amplitude, double width, double center);

}  // namespace muskat
