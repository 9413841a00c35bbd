#include "sighyp/pde_nested.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/Sparse>

#include "sighyp/format.hpp"
#include "sighyp/tensor.hpp"

namespace sighyp {

namespace {

constexpr int kDx[4] = {1, -1, 0, 0};
constexpr int kDy[4] = {0, 0, 1, -1};
constexpr double kMinArm = 1e-8;

using SpMat = Eigen::SparseMatrix<double, Eigen::RowMajor>;

std::size_t ipow(int d, int n)
{
    std::size_t r = 1;
    for (int i = 0; i < n; ++i) r *= static_cast<std::size_t>(d);
    return r;
}

// Value of `f` on arm a of unknown u: the neighbour's value, or the boundary value when cut.
double arm_value(const MaskedGrid& g, const LevelField& f, const std::vector<double>& vals,
                 std::size_t u, int a)
{
    if (g.arm(u, a) < 1.0) return f.boundary_value;
    const auto [ix, iy] = g.unknown_node(u);
    return vals[static_cast<std::size_t>(g.unknown(ix + kDx[a], iy + kDy[a]))];
}

// Three-point derivative along axis (0 = x, 1 = y) with unequal arms.
double gradient(const MaskedGrid& g, const LevelField& f, const std::vector<double>& vals,
                std::size_t u, int axis)
{
    const int ap = 2 * axis, am = 2 * axis + 1;
    const double hp = g.arm(u, ap) * g.h(), hm = g.arm(u, am) * g.h();
    const double fp = arm_value(g, f, vals, u, ap), fm = arm_value(g, f, vals, u, am);
    return (hm * hm * fp - hp * hp * fm + (hp * hp - hm * hm) * vals[u]) / (hp * hm * (hp + hm));
}

SpMat build_laplacian(const MaskedGrid& g, double boundary_value, Eigen::VectorXd& bc_rhs)
{
    const std::size_t n = g.unknowns();
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(5 * n);
    bc_rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    const double h2 = g.h() * g.h();
    for (std::size_t u = 0; u < n; ++u) {
        const auto [ix, iy] = g.unknown_node(u);
        double diag = 0.0;
        for (int axis = 0; axis < 2; ++axis) {
            const double tp = g.arm(u, 2 * axis), tm = g.arm(u, 2 * axis + 1);
            diag += 2.0 / (h2 * tp * tm);
            for (int s = 0; s < 2; ++s) {
                const int a = 2 * axis + s;
                const double t = s == 0 ? tp : tm;
                const double coef = -2.0 / (h2 * t * (tp + tm));
                if (t < 1.0)
                    bc_rhs[static_cast<Eigen::Index>(u)] -= coef * boundary_value;
                else
                    trip.emplace_back(static_cast<int>(u), g.unknown(ix + kDx[a], iy + kDy[a]),
                                      coef);
            }
        }
        trip.emplace_back(static_cast<int>(u), static_cast<int>(u), diag);
    }
    SpMat A(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    A.setFromTriplets(trip.begin(), trip.end());
    return A;
}

LevelField constant_level(const MaskedGrid& g, int n, double value)
{
    LevelField f;
    f.level = n;
    f.boundary_value = n == 0 ? 1.0 : 0.0;
    f.words.assign(ipow(2, n), std::vector<double>(g.unknowns(), value));
    return f;
}

}  // namespace

PdeConfig PdeConfig::from_json(const nlohmann::json& j)
{
    PdeConfig c;
    auto field = [&](const char* key, auto& dst) {
        if (!j.contains(key)) return;
        try {
            j.at(key).get_to(dst);
        } catch (const std::exception& e) {
            throw std::invalid_argument(std::string("config.pde.") + key + ": " + e.what());
        }
    };
    field("h", c.h);
    field("tol", c.tol);
    field("max_iter", c.max_iter);
    if (!(c.h > 0.0)) throw std::invalid_argument("config.pde.h: must be > 0");
    if (!(c.tol > 0.0)) throw std::invalid_argument("config.pde.tol: must be > 0");
    if (c.max_iter < 1) throw std::invalid_argument("config.pde.max_iter: must be >= 1");
    return c;
}

nlohmann::json PdeConfig::to_json() const
{
    return {{"h", h}, {"tol", tol}, {"max_iter", max_iter}};
}

MaskedGrid::MaskedGrid(const Domain& domain, double h) : domain_(domain), h_(h)
{
    if (domain.dim() != 2) throw std::invalid_argument("PDE grids are implemented for d = 2 only");
    if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("grid spacing must be > 0");
    const auto [lo, hi] = domain.bounding_box();
    ix0_ = static_cast<long>(std::floor(lo[0] / h)) - 1;
    iy0_ = static_cast<long>(std::floor(lo[1] / h)) - 1;
    const long ix1 = static_cast<long>(std::ceil(hi[0] / h)) + 1;
    const long iy1 = static_cast<long>(std::ceil(hi[1] / h)) + 1;
    const double cells = static_cast<double>(ix1 - ix0_ + 1) * static_cast<double>(iy1 - iy0_ + 1);
    if (cells > 5e7) throw std::length_error("grid too large; increase h");
    nx_ = static_cast<int>(ix1 - ix0_ + 1);
    ny_ = static_cast<int>(iy1 - iy0_ + 1);
    cells_.assign(static_cast<std::size_t>(nx_) * ny_, Cell::Exterior);
    unknown_.assign(cells_.size(), -1);
    for (int iy = 0; iy < ny_; ++iy)
        for (int ix = 0; ix < nx_; ++ix) {
            const double p[2] = {x(ix), y(iy)};
            if (domain.inside(p)) {
                cells_[node(ix, iy)] = Cell::Interior;
                unknown_[node(ix, iy)] = static_cast<int>(nodes_.size());
                nodes_.push_back({ix, iy});
            }
        }
    if (nodes_.empty()) throw std::invalid_argument("grid has no interior nodes; decrease h");
    arms_.resize(nodes_.size());
    for (std::size_t u = 0; u < nodes_.size(); ++u) {
        const auto [ix, iy] = nodes_[u];
        for (int a = 0; a < kArms; ++a) {
            const int jx = ix + kDx[a], jy = iy + kDy[a];
            if (unknown_[node(jx, jy)] >= 0) {
                arms_[u][a] = 1.0;
                continue;
            }
            double lo_s = 0.0, hi_s = 1.0;
            for (int it = 0; it < 60; ++it) {
                const double m = 0.5 * (lo_s + hi_s);
                const double p[2] = {x(ix) + m * kDx[a] * h_, y(iy) + m * kDy[a] * h_};
                if (domain.inside(p))
                    lo_s = m;
                else
                    hi_s = m;
            }
            arms_[u][a] = std::clamp(0.5 * (lo_s + hi_s), kMinArm, 1.0 - 1e-15);
            cells_[node(ix, iy)] = Cell::Boundary;
        }
    }
}

std::array<double, 2> MaskedGrid::arm_point(std::size_t u, int a) const
{
    const auto [ix, iy] = nodes_[u];
    return {x(ix) + arms_[u][a] * kDx[a] * h_, y(iy) + arms_[u][a] * kDy[a] * h_};
}

double LevelField::sup_norm() const
{
    double m = std::abs(boundary_value);
    for (const auto& w : words)
        for (double v : w) m = std::max(m, std::abs(v));
    return m;
}

LevelField solve_level(const MaskedGrid& grid, int n, const LevelField& prev1,
                       const LevelField& prev2, const PdeConfig& cfg)
{
    if (n < 2) throw std::invalid_argument("solve_level needs n >= 2");
    if (prev1.level != n - 1 || prev2.level != n - 2)
        throw std::invalid_argument("solve_level needs levels n-1 and n-2");
    const std::size_t nu = grid.unknowns();
    LevelField out;
    out.level = n;
    out.boundary_value = 0.0;
    out.words.resize(ipow(2, n));

    Eigen::VectorXd bc;
    const SpMat A = build_laplacian(grid, out.boundary_value, bc);
    Eigen::BiCGSTAB<SpMat, Eigen::IncompleteLUT<double>> solver;
    solver.setTolerance(cfg.tol);
    solver.setMaxIterations(cfg.max_iter);
    solver.compute(A);
    if (solver.info() != Eigen::Success) throw std::runtime_error("PDE preconditioner setup failed");

    const std::size_t tail1 = ipow(2, n - 1), tail2 = ipow(2, n - 2);
    Eigen::VectorXd rhs(static_cast<Eigen::Index>(nu)), x0 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(nu));
    for (std::size_t w = 0; w < out.words.size(); ++w) {
        // w = (w1, rest): w1 = w / 2^{n-1}; w2 = (w / 2^{n-2}) % 2.
        const int w1 = static_cast<int>(w / tail1);
        const int w2 = static_cast<int>((w / tail2) % 2);
        const std::size_t rest1 = w % tail1, rest2 = w % tail2;
        const auto& f1 = prev1.words[rest1];
        for (std::size_t u = 0; u < nu; ++u) {
            double s = 2.0 * gradient(grid, prev1, f1, u, w1);
            if (w1 == w2) s += prev2.words[rest2][u];
            rhs[static_cast<Eigen::Index>(u)] = s + bc[static_cast<Eigen::Index>(u)];
        }
        std::vector<double>& dst = out.words[w];
        dst.assign(nu, 0.0);
        const double bnorm = rhs.norm();
        if (bnorm == 0.0) continue;
        const Eigen::VectorXd sol = solver.solveWithGuess(rhs, x0);
        const double res = (rhs - A * sol).norm() / bnorm;
        if (solver.info() != Eigen::Success || !(res <= 10.0 * cfg.tol))
            throw std::runtime_error("PDE solve did not converge at level " + std::to_string(n) +
                                     ", word " + word_to_string(word_from_index(w, n, 2)) +
                                     ": relative residual " + fmt_double(res) + " after " +
                                     std::to_string(solver.iterations()) + " iterations");
        for (std::size_t u = 0; u < nu; ++u) dst[u] = sol[static_cast<Eigen::Index>(u)];
    }
    return out;
}

Cascade solve_cascade(const MaskedGrid& grid, int N, const PdeConfig& cfg)
{
    if (N < 0) throw std::invalid_argument("cascade level must be >= 0");
    Cascade c;
    c.levels.push_back(constant_level(grid, 0, 1.0));
    if (N >= 1) c.levels.push_back(constant_level(grid, 1, 0.0));
    for (int n = 2; n <= N; ++n)
        c.levels.push_back(solve_level(grid, n, c.levels[n - 1], c.levels[n - 2], cfg));
    for (const auto& f : c.levels) c.sup_norms.push_back(f.sup_norm());
    return c;
}

double field_value_at(const MaskedGrid& grid, const LevelField& f, std::size_t word,
                      std::span<const double> z)
{
    if (z.size() != 2) throw std::invalid_argument("point must be 2-D");
    const double gx = (z[0] - grid.x(0)) / grid.h(), gy = (z[1] - grid.y(0)) / grid.h();
    const int ix = static_cast<int>(std::floor(gx)), iy = static_cast<int>(std::floor(gy));
    const double fx = gx - ix, fy = gy - iy;
    auto val = [&](int jx, int jy) {
        if (jx < 0 || jy < 0 || jx >= grid.nx() || jy >= grid.ny()) return f.boundary_value;
        const int u = grid.unknown(jx, jy);
        return u < 0 ? f.boundary_value : f.words[word][static_cast<std::size_t>(u)];
    };
    return (1 - fx) * (1 - fy) * val(ix, iy) + fx * (1 - fy) * val(ix + 1, iy) +
           (1 - fx) * fy * val(ix, iy + 1) + fx * fy * val(ix + 1, iy + 1);
}

PdePointValues pde_point_values(const Domain& domain, int N, std::span<const double> z,
                                const PdeConfig& cfg)
{
    if (!domain.inside(z)) throw std::invalid_argument("evaluation point must be interior");
    PdeConfig coarse = cfg;
    coarse.h = 2.0 * cfg.h;
    const MaskedGrid gf(domain, cfg.h), gc(domain, coarse.h);
    const Cascade cf = solve_cascade(gf, N, cfg), cc = solve_cascade(gc, N, coarse);
    PdePointValues out;
    out.components = tensor_component_names(2, N);
    for (int n = 0; n <= N; ++n)
        for (std::size_t w = 0; w < ipow(2, n); ++w) {
            const double vf = field_value_at(gf, cf.levels[n], w, z);
            const double vc = field_value_at(gc, cc.levels[n], w, z);
            out.value.push_back(vf);
            out.grid_error.push_back(std::abs(vf - vc) / 3.0);
        }
    return out;
}

bool CompareReport::all_clear() const
{
    return std::none_of(rows.begin(), rows.end(), [](const CompareRow& r) { return r.flagged; });
}

CompareReport compare_mc_pde(const Domain& domain, int N, const McConfig& mc, const PdeConfig& pde)
{
    McConfig cfg = mc;
    cfg.level = N;
    const McEstimate est = mc_expected_signature(domain, cfg);
    const PdePointValues pv = pde_point_values(domain, N, cfg.start, pde);
    CompareReport rep;
    for (std::size_t i = 0; i < pv.components.size(); ++i) {
        CompareRow r;
        r.word = pv.components[i];
        r.mc = est.mean[i];
        r.stderr_mc = est.std_error[i];
        r.pde = pv.value[i];
        r.grid_error = pv.grid_error[i];
        const double diff = std::abs(r.mc - r.pde);
        const double scale = std::max(r.stderr_mc, r.grid_error);
        r.score = diff == 0.0 ? 0.0 : (scale > 0.0 ? diff / scale : INFINITY);
        r.flagged = r.score > 5.0;
        rep.rows.push_back(r);
    }
    return rep;
}

void write_field_csv(std::ostream& os, const MaskedGrid& grid, const Cascade& c)
{
    os << "ix,iy,level,word,value\n";
    for (const auto& f : c.levels)
        for (std::size_t w = 0; w < f.words.size(); ++w) {
            const std::string name = word_to_string(word_from_index(w, f.level, 2));
            for (std::size_t u = 0; u < grid.unknowns(); ++u) {
                const auto [ix, iy] = grid.unknown_node(u);
                os << ix << ',' << iy << ',' << f.level << ',' << name << ','
                   << fmt_double(f.words[w][u]) << '\n';
            }
        }
}

void write_compare_csv(std::ostream& os, const CompareReport& r)
{
    os << "word,mc_mean,mc_stderr,pde_value,grid_error,score,flag\n";
    for (const auto& row : r.rows)
        os << row.word << ',' << fmt_double(row.mc) << ',' << fmt_double(row.stderr_mc) << ','
           << fmt_double(row.pde) << ',' << fmt_double(row.grid_error) << ','
           << fmt_double(row.score) << ',' << (row.flagged ? 1 : 0) << '\n';
}

}  // namespace sighyp
