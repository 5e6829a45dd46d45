#include "carnot/quad.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

namespace carnot {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Neumaier compensated accumulator; summation order is the node order.
struct Accum {
    double sum = 0.0, comp = 0.0;
    void add(double v) {
        double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            comp += (sum - t) + v;
        else
            comp += (v - t) + sum;
        sum = t;
    }
    double total() const { return sum + comp; }
};

}  // namespace

const GaussRule& gauss_legendre(int order) {
    static std::map<int, GaussRule> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;
    if (order < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");

    GaussRule r;
    r.nodes.resize(order);
    r.weights.resize(order);
    for (int i = 0; i < order; ++i) {
        // Newton iteration from the Chebyshev-like initial guess.
        double x = std::cos(kPi * (i + 0.75) / (order + 0.5));
        double dp = 0.0;
        for (int it2 = 0; it2 < 100; ++it2) {
            double p0 = 1.0, p1 = x;
            if (order == 1) p1 = x;
            for (int k = 2; k <= order; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double pm = order == 1 ? 1.0 : p0;  // P_{order-1}
            dp = order * (x * p1 - pm) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.nodes[i] = x;
        r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return cache.emplace(order, std::move(r)).first->second;
}

double sphere_area(int N) {
    return 2.0 * std::pow(kPi, 0.5 * N) / std::tgamma(0.5 * N);
}

namespace {

std::vector<Panel1D> split_segments(const std::vector<double>& edges, int count, bool log_scale) {
    // edges: sorted segment boundaries. Distribute `count` panels by width.
    double total = 0.0;
    std::vector<double> widths;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        double w = log_scale ? std::log(edges[i + 1] / edges[i]) : edges[i + 1] - edges[i];
        widths.push_back(w);
        total += w;
    }
    std::vector<Panel1D> panels;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        int k = std::max(1, (int)std::lround(count * widths[i] / total));
        for (int j = 0; j < k; ++j) {
            double t0 = (double)j / k, t1 = (double)(j + 1) / k;
            double a, b;
            if (log_scale) {
                a = edges[i] * std::pow(edges[i + 1] / edges[i], t0);
                b = edges[i] * std::pow(edges[i + 1] / edges[i], t1);
                panels.push_back({std::log(a), std::log(b)});
            } else {
                a = edges[i] + (edges[i + 1] - edges[i]) * t0;
                b = edges[i] + (edges[i + 1] - edges[i]) * t1;
                panels.push_back({a, b});
            }
        }
    }
    return panels;
}

std::vector<double> make_edges(double lo, double hi, std::span<const double> seams) {
    std::vector<double> edges{lo};
    std::vector<double> s(seams.begin(), seams.end());
    std::sort(s.begin(), s.end());
    for (double v : s)
        if (v > lo * (1.0 + 1e-12) && v < hi * (1.0 - 1e-12) && v - edges.back() > 0.0)
            edges.push_back(v);
    edges.push_back(hi);
    return edges;
}

}  // namespace

std::vector<Panel1D> log_panels(double lo, double hi, std::span<const double> seams, int count) {
    if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("log_panels: need 0 < lo < hi");
    return split_segments(make_edges(lo, hi, seams), count, true);
}

std::vector<Panel1D> linear_panels(double lo, double hi, std::span<const double> seams, int count) {
    if (!(hi > lo)) throw std::invalid_argument("linear_panels: need lo < hi");
    std::vector<double> edges{lo};
    std::vector<double> s(seams.begin(), seams.end());
    std::sort(s.begin(), s.end());
    for (double v : s)
        if (v > lo + 1e-300 && v < hi && v - edges.back() > 1e-14 * (hi - lo)) edges.push_back(v);
    edges.push_back(hi);
    return split_segments(edges, count, false);
}

namespace {

double panels_pass(std::span<const Panel1D> panels, int order, int subdiv,
                   const std::function<double(double)>& f) {
    const GaussRule& gl = gauss_legendre(order);
    Accum acc;
    for (const Panel1D& p : panels) {
        for (int s = 0; s < subdiv; ++s) {
            const double a = p.a + (p.b - p.a) * s / subdiv;
            const double b = p.a + (p.b - p.a) * (s + 1) / subdiv;
            const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
            for (int i = 0; i < order; ++i) {
                const double t = mid + half * gl.nodes[i];
                const double v = f(t);
                if (!std::isfinite(v)) {
                    std::ostringstream os;
                    os << "non-finite integrand at t=" << t;
                    throw SingularEvaluation(os.str());
                }
                acc.add(half * gl.weights[i] * v);
            }
        }
    }
    return acc.total();
}

}  // namespace

IntegralResult integrate_panels(std::span<const Panel1D> panels, int order, int level,
                                const std::function<double(double)>& f) {
    const int subdiv = 1 << std::max(0, level);
    IntegralResult r;
    r.value = panels_pass(panels, order, subdiv, f);
    const double coarse = level >= 1 ? panels_pass(panels, order, subdiv / 2, f)
                                     : panels_pass(panels, std::max(2, order - 2), 1, f);
    r.error = std::abs(r.value - coarse);
    return r;
}

QuadratureGrid QuadratureGrid::build(const StratifiedGroup& g, const Support& sup,
                                     const GridSpec& spec) {
    QuadratureGrid grid;
    grid.N_ = g.first_stratum_dim();
    grid.n_ = g.dim();
    grid.spec_ = spec;
    grid.sup_ = sup;
    grid.materialize();
    return grid;
}

QuadratureGrid QuadratureGrid::with_level(int level) const {
    QuadratureGrid grid = *this;
    grid.spec_.level = level;
    // Angular resolution scales with level; panel subdivision happens at
    // summation time, so only the sphere rule must be rebuilt.
    grid.dirs_.clear();
    grid.dir_w_.clear();
    grid.build_sphere();
    return grid;
}

void QuadratureGrid::materialize() {
    const int N = N_;
    double rho_lo = spec_.rho_lo;
    double rho_hi = spec_.rho_hi;
    if (rho_lo <= 0.0) rho_lo = sup_.rho_min > 0.0 ? sup_.rho_min : 1e-6;
    if (rho_hi <= 0.0) {
        double r2 = 0.0;
        for (int i = 0; i < N; ++i) {
            const double m = std::max(std::abs(sup_.lo[i]), std::abs(sup_.hi[i]));
            r2 += m * m;
        }
        rho_hi = std::sqrt(r2);
    }
    if (!(rho_hi > rho_lo)) throw std::invalid_argument("grid: empty radial range");

    radial_ = log_panels(rho_lo, rho_hi, sup_.radial_seams, spec_.radial_panels);

    box_.clear();
    for (int i = N; i < n_; ++i) {
        std::span<const double> seams;
        if (static_cast<std::size_t>(i) < sup_.box_seams.size()) seams = sup_.box_seams[i];
        box_.push_back(linear_panels(sup_.lo[i], sup_.hi[i], seams, spec_.box_panels));
    }

    build_sphere();
}

void QuadratureGrid::build_sphere() {
    const int N = N_;
    const int scale = 1 << std::max(0, spec_.level);
    dirs_.clear();
    dir_w_.clear();
    if (N == 1) {
        dirs_ = {{1.0}, {-1.0}};
        dir_w_ = {1.0, 1.0};
        return;
    }
    const int M = std::max(4, spec_.angular_res * scale);
    if (N == 2) {
        for (int j = 0; j < M; ++j) {
            const double th = 2.0 * kPi * j / M;
            dirs_.push_back({std::cos(th), std::sin(th)});
            dir_w_.push_back(2.0 * kPi / M);
        }
        return;
    }
    if (N == 3) {
        const int G = std::max(2, (spec_.angular_res / 2) * scale);
        const GaussRule& gl = gauss_legendre(G);
        for (int i = 0; i < G; ++i) {
            const double c = gl.nodes[i];
            const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
            for (int j = 0; j < M; ++j) {
                const double th = 2.0 * kPi * j / M;
                dirs_.push_back({s * std::cos(th), s * std::sin(th), c});
                dir_w_.push_back(gl.weights[i] * 2.0 * kPi / M);
            }
        }
        return;
    }
    if (!spec_.allow_high_dim_sphere)
        throw Error("sphere rule for N > 3 is a full tensor product; enable it explicitly "
                    "(allow_high_dim_sphere) and expect cost growth");
    // Tensor hyperspherical rule: phi_1..phi_{N-2} in [0,pi] with sin powers,
    // trapezoid in theta.
    const int G = std::max(2, (spec_.angular_res / 2) * scale);
    const GaussRule& gl = gauss_legendre(G);
    std::vector<std::vector<double>> dirs{{}};
    std::vector<double> ws{1.0};
    for (int a = 0; a < N - 2; ++a) {
        const int spow = N - 2 - a;
        std::vector<std::vector<double>> nd;
        std::vector<double> nw;
        for (std::size_t d = 0; d < dirs.size(); ++d)
            for (int i = 0; i < G; ++i) {
                const double phi = 0.5 * kPi * (gl.nodes[i] + 1.0);
                auto v = dirs[d];
                v.push_back(phi);
                nd.push_back(std::move(v));
                nw.push_back(ws[d] * gl.weights[i] * 0.5 * kPi * std::pow(std::sin(phi), spow));
            }
        dirs = std::move(nd);
        ws = std::move(nw);
    }
    for (std::size_t d = 0; d < dirs.size(); ++d)
        for (int j = 0; j < M; ++j) {
            const double th = 2.0 * kPi * j / M;
            std::vector<double> x(N);
            double s = 1.0;
            for (int a = 0; a < N - 2; ++a) {
                x[a] = s * std::cos(dirs[d][a]);
                s *= std::sin(dirs[d][a]);
            }
            x[N - 2] = s * std::cos(th);
            x[N - 1] = s * std::sin(th);
            dirs_.push_back(std::move(x));
            dir_w_.push_back(ws[d] * 2.0 * kPi / M);
        }
}

std::size_t QuadratureGrid::node_count() const {
    const int subdiv = 1 << std::max(0, spec_.level);
    std::size_t radial = radial_.size() * subdiv * spec_.radial_order;
    std::size_t box = 1;
    for (const auto& b : box_) box *= b.size() * subdiv * spec_.box_order;
    return radial * std::max<std::size_t>(1, dirs_.size()) * box;
}

double QuadratureGrid::sum_nodes(
    const std::function<double(std::span<const double>, double)>& f) const {
    const int N = N_, n = n_;
    const int subdiv = 1 << std::max(0, spec_.level);
    const GaussRule& glr = gauss_legendre(spec_.radial_order);
    const GaussRule& glb = gauss_legendre(spec_.box_order);

    // Materialize the 1-D node lists, then run the product deterministically.
    std::vector<std::pair<double, double>> rnodes;  // (rho, w * rho^N) in u-space
    for (const Panel1D& p : radial_)
        for (int s = 0; s < subdiv; ++s) {
            const double a = p.a + (p.b - p.a) * s / subdiv;
            const double b = p.a + (p.b - p.a) * (s + 1) / subdiv;
            const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
            for (int i = 0; i < spec_.radial_order; ++i) {
                const double rho = std::exp(mid + half * glr.nodes[i]);
                rnodes.emplace_back(rho, half * glr.weights[i] * std::pow(rho, N));
            }
        }
    std::vector<std::vector<std::pair<double, double>>> ynodes;
    for (const auto& panels : box_) {
        std::vector<std::pair<double, double>> list;
        for (const Panel1D& p : panels)
            for (int s = 0; s < subdiv; ++s) {
                const double a = p.a + (p.b - p.a) * s / subdiv;
                const double b = p.a + (p.b - p.a) * (s + 1) / subdiv;
                const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
                for (int i = 0; i < spec_.box_order; ++i)
                    list.emplace_back(mid + half * glb.nodes[i], half * glb.weights[i]);
            }
        ynodes.push_back(std::move(list));
    }

    std::vector<double> x(n);
    std::vector<std::size_t> odo(ynodes.size(), 0);
    Accum acc;
    for (const auto& [rho, wr] : rnodes) {
        for (std::size_t d = 0; d < dirs_.size(); ++d) {
            for (int i = 0; i < N; ++i) x[i] = rho * dirs_[d][i];
            const double wrd = wr * dir_w_[d];
            // Odometer over higher-strata coordinates.
            std::fill(odo.begin(), odo.end(), 0);
            bool done = false;
            while (!done) {
                double wy = 1.0;
                for (std::size_t c = 0; c < ynodes.size(); ++c) {
                    x[N + c] = ynodes[c][odo[c]].first;
                    wy *= ynodes[c][odo[c]].second;
                }
                const double v = f(x, rho);
                if (!std::isfinite(v)) {
                    std::ostringstream os;
                    os << "non-finite integrand at node (";
                    for (int i = 0; i < n; ++i) os << (i ? "," : "") << x[i];
                    os << ")";
                    throw SingularEvaluation(os.str());
                }
                acc.add(wrd * wy * v);
                if (ynodes.empty()) break;
                std::size_t c = 0;
                while (c < ynodes.size() && ++odo[c] == ynodes[c].size()) {
                    odo[c] = 0;
                    ++c;
                }
                done = c == ynodes.size();
            }
        }
    }
    return acc.total();
}

IntegralResult integrate(const QuadratureGrid& grid,
                         const std::function<double(std::span<const double>, double)>& f) {
    IntegralResult r;
    r.value = grid.sum_nodes(f);
    QuadratureGrid coarse = grid.with_level(std::max(0, grid.level() - 1));
    if (grid.level() == 0) {
        // Same panels, reduced orders.
        GridSpec s = grid.spec();
        s.radial_order = std::max(2, s.radial_order - 2);
        s.box_order = std::max(2, s.box_order - 2);
        s.angular_res = std::max(4, s.angular_res / 2);
        coarse.spec_ = s;
        coarse.dirs_.clear();
        coarse.dir_w_.clear();
        coarse.build_sphere();
    }
    r.error = std::abs(r.value - coarse.sum_nodes(f));
    return r;
}

NormResult weighted_lp_norm(const std::function<double(std::span<const double>)>& f, double sigma,
                            double p, const QuadratureGrid& grid) {
    if (!(p > 0.0)) throw std::invalid_argument("weighted_lp_norm: p must be positive");
    IntegralResult I = integrate(grid, [&](std::span<const double> x, double rho) {
        const double v = std::abs(f(x));
        if (v == 0.0) return 0.0;
        return std::pow(v, p) * std::pow(rho, sigma * p);
    });
    NormResult r;
    if (I.value <= 0.0) {
        r.value = 0.0;
        r.error = I.error > 0.0 ? std::pow(I.error, 1.0 / p) : 0.0;
        return r;
    }
    r.value = std::pow(I.value, 1.0 / p);
    r.error = r.value / p * (I.error / I.value);
    return r;
}

NormResult weighted_lp_norm(const ScalarField& f, double sigma, double p,
                            const QuadratureGrid& grid) {
    return weighted_lp_norm([&f](std::span<const double> x) { return f.value(x); }, sigma, p,
                            grid);
}

}  // namespace carnot
