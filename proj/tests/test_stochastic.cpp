#include <doctest.h>

#include <cmath>
#include <sstream>

#include "sighyp/bessel_cert.hpp"
#include "sighyp/domain.hpp"
#include "sighyp/stopped_bm.hpp"

using namespace sighyp;
using nlohmann::json;

namespace {

Eigen::MatrixXd rotation2(double a)
{
    Eigen::MatrixXd R(2, 2);
    R << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
    return R;
}

McConfig small_config(std::size_t paths, std::vector<double> start)
{
    McConfig c;
    c.seed = 99;
    c.paths = paths;
    c.step = 1e-3;
    c.start = std::move(start);
    c.threads = 1;
    return c;
}

}  // namespace

TEST_CASE("domain level functions and JSON")
{
    const Domain disc = Domain::ball({0.0, 0.0}, 1.0);
    const std::vector<double> in = {0.5, 0.5}, out = {0.8, 0.8};
    CHECK(disc.inside(in));
    CHECK_FALSE(disc.inside(out));
    CHECK(disc.boundary_distance(in) == doctest::Approx(1.0 - std::sqrt(0.5)));

    const Domain e = Domain::ellipsoid({1.0, 0.6});
    const std::vector<double> p = {0.0, 0.59}, q = {0.0, 0.61};
    CHECK(e.inside(p));
    CHECK_FALSE(e.inside(q));
    const auto proj = e.radial_projection(std::vector<double>{0.3, 0.3});
    CHECK(std::abs(e.level_fn(proj)) < 1e-14);

    const Domain nested = Domain::translated(Domain::reflected(Domain::rotated(e, rotation2(0.4))), {0.1, -0.2});
    const json j = nested.to_json();
    const Domain back = Domain::from_json(j);
    CHECK(back.to_json() == j);
    for (double x = -1.0; x <= 1.0; x += 0.1)
        for (double y = -1.0; y <= 1.0; y += 0.1) {
            const std::vector<double> z = {x, y};
            CHECK(back.level_fn(z) == doctest::Approx(nested.level_fn(z)).epsilon(1e-14));
        }
    const auto [lo, hi] = nested.bounding_box();
    for (double t = 0.0; t < 6.3; t += 0.05) {
        const std::vector<double> b = nested.radial_projection(std::vector<double>{0.1 + std::cos(t), -0.2 + std::sin(t)});
        CHECK(b[0] >= lo[0] - 1e-12);
        CHECK(b[0] <= hi[0] + 1e-12);
        CHECK(b[1] >= lo[1] - 1e-12);
        CHECK(b[1] <= hi[1] + 1e-12);
    }

    CHECK_THROWS_WITH(Domain::from_json(json{{"kind", "blob"}}), doctest::Contains("blob"));
    CHECK_THROWS(Domain::ball({0.0}, -1.0));
    Eigen::MatrixXd bad = Eigen::MatrixXd::Identity(2, 2);
    bad(0, 0) = -1.0;
    CHECK_THROWS(Domain::rotated(disc, bad));
}

TEST_CASE("configuration parsing and validation")
{
    const McConfig c = McConfig::from_json(json{{"seed", 5}, {"paths", 10}, {"start", {0.1, 0.2}}});
    CHECK(c.seed == 5);
    CHECK(c.paths == 10);
    CHECK(McConfig::from_json(c.to_json()).to_json() == c.to_json());
    CHECK_THROWS_WITH(McConfig::from_json(json{{"paths", -3}}), doctest::Contains("config.paths"));
    CHECK_THROWS_WITH(McConfig::from_json(json{{"step", "x"}}), doctest::Contains("config.step"));
    const Domain disc = Domain::ball({0.0, 0.0}, 1.0);
    McConfig v = small_config(10, {0.0, 0.0});
    CHECK_NOTHROW(v.validate(disc));
    v.start = {2.0, 0.0};
    CHECK_THROWS_WITH(v.validate(disc), doctest::Contains("config.start"));
    v.start = {0.0};
    CHECK_THROWS_WITH(v.validate(disc), doctest::Contains("config.start"));
    v = small_config(10, {0.0, 0.0});
    v.step = 0.0;
    CHECK_THROWS_WITH(v.validate(disc), doctest::Contains("config.step"));
}

TEST_CASE("exit paths end on the boundary")
{
    const Domain disc = Domain::ball({0.0, 0.0}, 1.0);
    const Domain ell = Domain::ellipsoid({1.0, 0.6});
    for (std::uint64_t s = 0; s < 200; ++s) {
        NormalSource g(s);
        const std::vector<double> start = {0.999, 0.0};  // closer than sqrt(dt) = 0.0316
        const ExitPath ep = simulate_exit_path(disc, start, 1e-3, g);
        CHECK(std::abs(disc.level_fn(ep.path.back())) < 1e-10);
        CHECK(ep.tau > 0.0);
        NormalSource g2(s + 1000);
        const std::vector<double> z = {0.2, 0.1};
        const ExitPath e2 = simulate_exit_path(ell, z, 1e-3, g2);
        CHECK(std::abs(ell.level_fn(e2.path.back())) < 1e-10);
        for (std::size_t i = 0; i + 1 < e2.path.size(); ++i) CHECK(ell.inside(e2.path.vertex(i)));
    }
}

TEST_CASE("reflection and rotation act pathwise")
{
    const Domain base = Domain::translated(Domain::ellipsoid({1.0, 0.6}), {0.05, 0.1});
    const Domain refl = Domain::reflected(base);
    Eigen::MatrixXd M = Eigen::MatrixXd::Identity(2, 2);
    M(1, 1) = -1.0;
    const Eigen::MatrixXd R = rotation2(0.7);
    const Domain rot = Domain::rotated(base, R);
    for (std::uint64_t s = 0; s < 30; ++s) {
        const std::vector<double> z = {0.1, 0.2};
        {
            const std::vector<double> mz = {z[0], -z[1]};
            NormalSource a(s), b(s);
            const ExitPath p = simulate_exit_path(refl, mz, 1e-3, a);
            const ExitPath q = simulate_exit_path(base, z, 1e-3, b, &M);
            REQUIRE(p.path.size() == q.path.size());
            CHECK(p.tau == doctest::Approx(q.tau).epsilon(1e-12));
            for (std::size_t i = 0; i < p.path.size(); ++i) {
                CHECK(p.path.vertex(i)[0] == doctest::Approx(q.path.vertex(i)[0]).epsilon(1e-9));
                CHECK(p.path.vertex(i)[1] == doctest::Approx(-q.path.vertex(i)[1]).epsilon(1e-9));
            }
        }
        {
            const Eigen::Vector2d rz = R * Eigen::Vector2d(z[0], z[1]);
            const std::vector<double> start = {rz[0], rz[1]};
            const Eigen::MatrixXd Rt = R.transpose();
            NormalSource a(s + 50), b(s + 50);
            const ExitPath p = simulate_exit_path(rot, start, 1e-3, a);
            const ExitPath q = simulate_exit_path(base, z, 1e-3, b, &Rt);
            REQUIRE(p.path.size() == q.path.size());
            const std::size_t last = p.path.size() - 1;
            const Eigen::Vector2d y = R * Eigen::Vector2d(q.path.vertex(last)[0], q.path.vertex(last)[1]);
            CHECK(std::abs(y[0] - p.path.vertex(last)[0]) < 1e-9);
            CHECK(std::abs(y[1] - p.path.vertex(last)[1]) < 1e-9);
        }
    }
}

TEST_CASE("estimators are deterministic and independent of the worker count")
{
    const Domain disc = Domain::ball({0.0, 0.0}, 1.0);
    McConfig c = small_config(600, {0.3, -0.2});
    c.level = 3;
    const McEstimate a = mc_expected_signature(disc, c);
    c.threads = 3;
    const McEstimate b = mc_expected_signature(disc, c);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    c.seed = 100;
    const McEstimate d = mc_expected_signature(disc, c);
    CHECK(a.mean != d.mean);

    std::ostringstream os;
    write_estimate_csv(os, a);
    CHECK(os.str().rfind("component,mean,stderr\n,1,0\n", 0) == 0);
    CHECK(a.mean_of("") == 1.0);
    CHECK(a.std_error_of("") == 0.0);
}

TEST_CASE("development estimator")
{
    const Domain ball = Domain::ball({0.0, 0.0, 0.0}, 1.0);
    McConfig c = small_config(300, {0.5, 0.0, 0.0});
    c.lambda = 0.0;
    const McEstimate z = mc_development(ball, c);
    CHECK(z.mean == std::vector<double>{0.0, 0.0, 0.0, 1.0});

    c.lambda = 1.0;
    c.paths = 1500;
    const McEstimate plain = mc_development(ball, c);
    const McEstimate one = mc_domain_averaged_development(ball, c, 1);
    CHECK(plain.mean == one.mean);
    for (const char* k : {"h2", "h3"}) CHECK(std::abs(plain.mean_of(k)) <= 4.0 * plain.std_error_of(k));
    CHECK(std::abs(plain.mean_of("h4") - hd1_closed_form(0.5, 1.0, 3)) <= 4.0 * plain.std_error_of("h4"));

    const McEstimate avg = mc_domain_averaged_development(ball, c, 8);
    const double diff = avg.mean_of("h4") - plain.mean_of("h4");
    CHECK(std::abs(diff) <= 4.0 * std::hypot(avg.std_error_of("h4"), plain.std_error_of("h4")));
}

TEST_CASE("averaged development at the centre of an ellipse")
{
    const Domain ell = Domain::ellipsoid({1.0, 0.6});
    McConfig c = small_config(1500, {0.0, 0.0});
    const McEstimate plain = mc_development(ell, c);
    const McEstimate avg = mc_domain_averaged_development(ell, c, 16);
    const double diff = avg.mean_of("h3") - plain.mean_of("h3");
    CHECK(std::abs(diff) <= 4.0 * std::hypot(avg.std_error_of("h3"), plain.std_error_of("h3")));
    // Every rotated copy must contain the start point.
    c.start = {0.7, 0.0};
    CHECK_THROWS(mc_domain_averaged_development(ell, c, 4));
}

TEST_CASE("exit time on the unit disc")
{
    const Domain disc = Domain::ball({0.0, 0.0}, 1.0);
    McConfig c = small_config(3000, {0.0, 0.0});
    c.step = 1e-4;
    const McEstimate e = mc_exit_time(disc, c);
    CHECK(std::abs(e.mean_of("tau") - 0.5) <= 4.0 * e.std_error_of("tau"));
    c.start = {0.6, 0.0};
    const McEstimate f = mc_exit_time(disc, c);
    CHECK(std::abs(f.mean_of("tau") - (1.0 - 0.36) / 2.0) <= 4.0 * f.std_error_of("tau"));
}

TEST_CASE("Haar rotations")
{
    NormalSource g(1);
    for (int d = 2; d <= 5; ++d)
        for (int t = 0; t < 10; ++t) {
            const Eigen::MatrixXd R = haar_rotation(d, g);
            CHECK((R.transpose() * R - Eigen::MatrixXd::Identity(d, d)).cwiseAbs().maxCoeff() < 1e-12);
            CHECK(R.determinant() == doctest::Approx(1.0).epsilon(1e-12));
        }
}
