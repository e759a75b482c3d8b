#include "muskat/grid.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace muskat {

GridSpec make_grid(double L, int n) {
    if (!(L > 0.0)) throw std::invalid_argument("make_grid: L must be positive");
    if (n < 9) throw std::invalid_argument("make_grid: n must be >= 9");
    if (n % 2 == 0) throw std::invalid_argument("make_grid: n must be odd");
    GridSpec spec;
    spec.L = L;
    spec.n = n;
    spec.dx = 2.0 * L / (n - 1);
    return spec;
}

GridFunction sample(const GridSpec& spec, const std::function<double(double)>& f) {
    GridFunction g;
    g.spec = spec;
    g.values.resize(static_cast<std::size_t>(spec.n));
    for (int i = 0; i < spec.n; ++i) {
        const double v = f(spec.x(i));
        if (!std::isfinite(v)) throw std::invalid_argument("sample: non-finite value");
        g.values[static_cast<std::size_t>(i)] = v;
    }
    return g;
}

namespace {

// Centered stencils of formal order 4 (offsets are symmetric about 0).
struct Stencil {
    int radius;
    double c[7];  // coefficients at offsets -radius..radius, scaled by dx^-k
};

Stencil stencil_for(int k, double dx) {
    switch (k) {
        case 1: {
            const double s = 1.0 / (12.0 * dx);
            return {2, {0, 1 * s, -8 * s, 0, 8 * s, -1 * s, 0}};
        }
        case 2: {
            const double s = 1.0 / (12.0 * dx * dx);
            return {2, {0, -1 * s, 16 * s, -30 * s, 16 * s, -1 * s, 0}};
        }
        case 3: {
            const double s = 1.0 / (dx * dx * dx);
            return {3, {0.125 * s, -1 * s, 1.625 * s, 0, -1.625 * s, 1 * s, -0.125 * s}};
        }
        case 4: {
            const double s = 1.0 / (dx * dx * dx * dx);
            return {3, {-s / 6.0, 2 * s, -6.5 * s, 28.0 * s / 3.0, -6.5 * s, 2 * s, -s / 6.0}};
        }
        default:
            throw std::invalid_argument("derivative: k must be in 1..4");
    }
}

}  // namespace

namespace {

// One-sided / biased stencils for the boundary nodes, where the centered
// stencil would reach past the grid.  Evolved data picks up slow tails that
// are nonzero at the endpoints, and differencing those against the zero
// extension would inject an O(1) boundary artifact.  k = 1, 2 keep formal
// order 4 (they drive the evolution); k = 3, 4 fall back to order 2 at the
// edges (they only enter the reported norms).
// Coefficients sit at offsets `first..first + len - 1`, scaled by dx^-k.
struct EdgeStencil {
    int first;
    int len;
    double c[6];
};

// Rows are indexed by the distance d of the node from the boundary; the
// row for distance d uses offsets -d .. len - 1 - d on the left side.
constexpr double kD1Edge[2][6] = {{-25.0 / 12, 4.0, -3.0, 4.0 / 3, -0.25, 0},
                                  {-0.25, -5.0 / 6, 1.5, -0.5, 1.0 / 12, 0}};
constexpr double kD2Edge[2][6] = {
    {15.0 / 4, -77.0 / 6, 107.0 / 6, -13.0, 61.0 / 12, -5.0 / 6},
    {5.0 / 6, -1.25, -1.0 / 3, 7.0 / 6, -0.5, 1.0 / 12}};
constexpr double kD3Edge[3][6] = {{-2.5, 9.0, -12.0, 7.0, -1.5, 0},
                                  {-1.5, 5.0, -6.0, 3.0, -0.5, 0},
                                  {-0.5, 1.0, 0.0, -1.0, 0.5, 0}};
constexpr double kD4Edge[3][6] = {{3.0, -14.0, 26.0, -24.0, 11.0, -2.0},
                                  {2.0, -9.0, 16.0, -14.0, 6.0, -1.0},
                                  {1.0, -4.0, 6.0, -4.0, 1.0, 0}};

bool edge_stencil(int k, long i, long n, double dx, EdgeStencil* out) {
    const long edge = (k <= 2) ? 2 : 3;
    if (i >= edge && i < n - edge) return false;
    const bool left = i < edge;
    const long d = left ? i : (n - 1 - i);
    const double* coeff = nullptr;
    int len = 0;
    switch (k) {
        case 1: coeff = kD1Edge[d]; len = 5; break;
        case 2: coeff = kD2Edge[d]; len = 6; break;
        case 3: coeff = kD3Edge[d]; len = 5; break;
        case 4: coeff = kD4Edge[d]; len = 6; break;
    }
    double scale = 1.0;
    for (int j = 0; j < k; ++j) scale /= dx;
    out->len = len;
    if (left) {
        out->first = static_cast<int>(-d);
        for (int j = 0; j < len; ++j) out->c[j] = coeff[j] * scale;
    } else {
        // Mirror image: reverse the offsets and flip the sign for odd k.
        out->first = static_cast<int>(-(len - 1 - d));
        const double sgn = (k % 2 == 1) ? -1.0 : 1.0;
        for (int j = 0; j < len; ++j) out->c[j] = sgn * coeff[len - 1 - j] * scale;
    }
    return true;
}

}  // namespace

GridFunction derivative(const GridFunction& g, int k) {
    const Stencil st = stencil_for(k, g.spec.dx);
    GridFunction out;
    out.spec = g.spec;
    out.values.resize(g.values.size());
    const long n = static_cast<long>(g.values.size());
    for (long i = 0; i < n; ++i) {
        double acc = 0.0;
        EdgeStencil es;
        if (edge_stencil(k, i, n, g.spec.dx, &es)) {
            for (int j = 0; j < es.len; ++j) acc += es.c[j] * g.at(i + es.first + j);
        } else {
            for (int o = -st.radius; o <= st.radius; ++o) acc += st.c[o + 3] * g.at(i + o);
        }
        out.values[static_cast<std::size_t>(i)] = acc;
    }
    return out;
}

namespace {

double trapezoid_l2(const GridFunction& g) {
    // Zero extension makes the boundary half-weights immaterial for
    // compactly supported data; keep the exact trapezoid form regardless.
    double acc = 0.0;
    const std::size_t n = g.values.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
        acc += w * g.values[i] * g.values[i];
    }
    return std::sqrt(acc * g.spec.dx);
}

double sup_norm(const GridFunction& g) {
    double m = 0.0;
    for (double v : g.values) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

EnergyReport norms(const GridFunction& g) {
    EnergyReport r;
    r.l2 = trapezoid_l2(g);
    const GridFunction d1 = derivative(g, 1);
    const GridFunction d2 = derivative(g, 2);
    const GridFunction d3 = derivative(g, 3);
    r.d3_l2 = trapezoid_l2(d3);
    r.energy = 0.5 * (r.l2 * r.l2 + r.d3_l2 * r.d3_l2);
    r.c_norms[0] = sup_norm(g);
    r.c_norms[1] = sup_norm(d1);
    r.c_norms[2] = sup_norm(d2);
    r.c_norms[3] = sup_norm(d3);
    // C^{2,1/2} seminorm on dyadic pair separations d = dx, 2dx, 4dx, ... <= 1.
    const int n = g.spec.n;
    double holder = 0.0;
    for (int m = 1; m * g.spec.dx <= 1.0 + 1e-12; m *= 2) {
        const double inv_sqrt_d = 1.0 / std::sqrt(m * g.spec.dx);
        for (int i = 0; i + m < n; ++i) {
            const double diff = std::abs(d2.values[static_cast<std::size_t>(i + m)] -
                                         d2.values[static_cast<std::size_t>(i)]);
            holder = std::max(holder, diff * inv_sqrt_d);
        }
    }
    r.holder_2_half = holder;
    r.h3 = std::sqrt(r.l2 * r.l2 + r.d3_l2 * r.d3_l2);
    return r;
}

void write_csv(const GridFunction& g, std::ostream& os) {
    os << "x,g\n";
    char buf[80];
    for (int i = 0; i < g.spec.n; ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", g.spec.x(i),
                      g.values[static_cast<std::size_t>(i)]);
        os << buf;
    }
}

void write_csv_file(const GridFunction& g, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot open for writing: " + path);
    write_csv(g, os);
}

GridFunction read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("x,g", 0) != 0)
        throw std::runtime_error("grid csv: missing x,g header");
    std::vector<double> xs, vs;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error("grid csv: malformed row");
        xs.push_back(std::stod(line.substr(0, comma)));
        vs.push_back(std::stod(line.substr(comma + 1)));
    }
    if (xs.size() < 9 || xs.size() % 2 == 0)
        throw std::runtime_error("grid csv: node count must be odd and >= 9");
    const double dx = (xs.back() - xs.front()) / static_cast<double>(xs.size() - 1);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double expect = xs.front() + static_cast<double>(i) * dx;
        if (std::abs(xs[i] - expect) > 1e-9 * std::max(1.0, std::abs(expect)))
            throw std::runtime_error("grid csv: x column is not an arithmetic progression");
    }
    GridFunction g;
    g.spec = make_grid(-xs.front(), static_cast<int>(xs.size()));
    g.values = std::move(vs);
    return g;
}

GridFunction read_csv_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open: " + path);
    return read_csv(is);
}

double bump(double x, double amplitude, double width, double center) {
    const double u = (x - center) / width;
    if (std::abs(u) >= 1.0) return 0.0;
    return amplitude * std::exp(-1.0 / (1.0 - u * u));
}

}  // namespace muskat
