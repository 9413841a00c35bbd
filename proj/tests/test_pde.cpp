#include <doctest.h>

#include <cmath>
#include <sstream>

#include "sighyp/pde_nested.hpp"

using namespace sighyp;

namespace {

PdeConfig with_h(double h)
{
    PdeConfig c;
    c.h = h;
    return c;
}

}  // namespace

TEST_CASE("grid construction")
{
    const MaskedGrid g(Domain::ball({0.0, 0.0}, 1.0), 0.1);
    CHECK(g.unknowns() > 250);
    for (std::size_t u = 0; u < g.unknowns(); ++u)
        for (int a = 0; a < MaskedGrid::kArms; ++a) {
            CHECK(g.arm(u, a) > 0.0);
            CHECK(g.arm(u, a) <= 1.0);
            if (g.arm(u, a) < 1.0) {
                const auto p = g.arm_point(u, a);
                CHECK(std::abs(g.domain().level_fn(p)) < 1e-12);
            }
        }
    CHECK_THROWS(MaskedGrid(Domain::ball({0.0, 0.0, 0.0}, 1.0), 0.1));
    CHECK_THROWS(PdeConfig::from_json(nlohmann::json{{"h", -1.0}}));
    CHECK_THROWS_WITH(PdeConfig::from_json(nlohmann::json{{"tol", "x"}}), doctest::Contains("config.pde.tol"));
}

TEST_CASE("unit disc low levels")
{
    const MaskedGrid g(Domain::ball({0.0, 0.0}, 1.0), 0.02);
    const Cascade c = solve_cascade(g, 3, PdeConfig{});
    const double z[2] = {0.0, 0.0};
    CHECK(c.sup_norms[0] == 1.0);
    CHECK(c.sup_norms[1] == 0.0);
    // Shortley-Weller is exact on quadratics: f_ii = (1 - |z|^2) / 4.
    CHECK(field_value_at(g, c.levels[2], 0, z) == doctest::Approx(0.25).epsilon(1e-8));
    CHECK(field_value_at(g, c.levels[2], 3, z) == doctest::Approx(0.25).epsilon(1e-8));
    CHECK(std::abs(field_value_at(g, c.levels[2], 1, z)) < 1e-10);
    CHECK(std::abs(field_value_at(g, c.levels[2], 2, z)) < 1e-10);
    for (std::size_t w = 0; w < 8; ++w) CHECK(std::abs(field_value_at(g, c.levels[3], w, z)) < 1e-8);
    const double p[2] = {0.3, -0.4};
    CHECK(field_value_at(g, c.levels[2], 0, p) == doctest::Approx(0.25 * (1 - 0.25)).epsilon(1e-4));
}

TEST_CASE("sup-norm baselines up to level 8")
{
    // Regression baselines at h = 0.05.
    const double disc[] = {1.0, 0.0, 2.500000e-01, 4.800189e-02, 1.867372e-02,
                           5.197379e-03, 1.325400e-03, 3.661834e-04, 1.238560e-04};
    const double ell[] = {1.0, 0.0, 1.323529e-01, 1.819382e-02, 6.634064e-03,
                          1.483694e-03, 3.402110e-04, 7.047651e-05, 1.375405e-05};
    const Cascade a = solve_cascade(MaskedGrid(Domain::ball({0.0, 0.0}, 1.0), 0.05), 8, with_h(0.05));
    const Cascade b = solve_cascade(MaskedGrid(Domain::ellipsoid({1.0, 0.6}), 0.05), 8, with_h(0.05));
    for (int n = 0; n <= 8; ++n) {
        CHECK(a.sup_norms[n] == doctest::Approx(disc[n]).epsilon(1e-5));
        CHECK(b.sup_norms[n] == doctest::Approx(ell[n]).epsilon(1e-5));
    }
    for (int n = 4; n <= 8; ++n) {
        CHECK(a.sup_norms[n] / a.sup_norms[n - 2] < 0.2);
        CHECK(b.sup_norms[n] / b.sup_norms[n - 2] < 0.2);
    }
}

TEST_CASE("grid refinement converges at second order")
{
    const Domain e = Domain::ellipsoid({1.0, 0.6});
    const double z[2] = {0.1, 0.05};
    const double exact = (1.0 - 0.01 - 0.0025 / 0.36) / (2.0 * (1.0 + 1.0 / 0.36));
    double prev = 0.0;
    for (double h : {0.04, 0.02, 0.01}) {
        const MaskedGrid g(e, h);
        const Cascade c = solve_cascade(g, 2, with_h(h));
        const double err = std::abs(field_value_at(g, c.levels[2], 0, z) - exact);
        CHECK(err <= 0.2 * h * h);
        if (prev > 0.0) CHECK(err < prev);
        prev = err;
    }
    const std::vector<double> zz = {0.1, 0.05};
    const PdePointValues pv = pde_point_values(e, 2, zz, with_h(0.02));
    CHECK(pv.components.size() == 7);
    CHECK(pv.grid_error[3] < 1e-4);
}

TEST_CASE("Monte Carlo agrees with the PDE cascade")
{
    McConfig mc;
    mc.seed = 314;
    mc.paths = 2000;
    mc.step = 1e-3;
    mc.threads = 1;
    mc.start = {0.0, 0.0};
    const CompareReport disc = compare_mc_pde(Domain::ball({0.0, 0.0}, 1.0), 4, mc, PdeConfig{});
    CHECK(disc.rows.size() == 31);
    CHECK(disc.all_clear());
    CHECK(disc.rows[0].mc == 1.0);
    CHECK(disc.rows[0].score == 0.0);

    mc.start = {0.2, 0.1};
    const CompareReport ell = compare_mc_pde(Domain::ellipsoid({1.0, 0.6}), 3, mc, PdeConfig{});
    CHECK(ell.all_clear());
    std::ostringstream os;
    write_compare_csv(os, ell);
    CHECK(os.str().rfind("word,mc_mean,mc_stderr,pde_value,grid_error,score,flag\n", 0) == 0);
}
