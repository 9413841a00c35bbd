// Acceptance run: one line per criterion. The process exits 0 when every
// criterion passes or fails only for a documented blocking reason; any other
// failure exits 1.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "sighyp/bessel_cert.hpp"
#include "sighyp/development.hpp"
#include "sighyp/domain.hpp"
#include "sighyp/signature.hpp"
#include "sighyp/stopped_bm.hpp"
#include "sighyp/tensor.hpp"
#include "sighyp/verify.hpp"

using namespace sighyp;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Criterion -> check id that is known to fail, with the reason.
const std::map<int, std::pair<std::string, std::string>> kBlocked = {
    {4,
     {"lemma2d (d=2 numerator, n=6): T(2.5) = -0.1181564882",
      "published T(2.5) not reproducible at 1e-9 (C0 = -0.11915012 at the stated truncation)"}},
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, x);
    return buf;
}

std::vector<std::string> failed_ids(const Report& r)
{
    std::vector<std::string> out;
    for (const auto& c : r.checks)
        if (!c.pass) out.push_back(c.id);
    return out;
}

Outcome from_report(const Report& r)
{
    Outcome o;
    const auto bad = failed_ids(r);
    o.pass = bad.empty();
    std::size_t asserted = 0;
    for (const auto& c : r.checks) asserted += c.relation != "info";
    o.detail = std::to_string(asserted - bad.size()) + "/" + std::to_string(asserted) + " checks";
    for (const auto& id : bad) o.detail += "; failed: " + id;
    return o;
}

Outcome table_criterion(const Report& r, const std::vector<std::string>& suffixes)
{
    Outcome o = from_report(r);
    std::size_t matched = 0;
    for (const auto& c : r.checks)
        for (const auto& s : suffixes)
            if (c.id.size() >= s.size() && c.id.compare(c.id.size() - s.size(), s.size(), s) == 0) ++matched;
    if (matched < 6 * suffixes.size()) {
        o.pass = false;
        o.detail += "; missing rows";
    }
    return o;
}

Polyline random_polyline(int d, int segments, double scale, NormalSource& g)
{
    Polyline p(d);
    std::vector<double> x(static_cast<std::size_t>(d), 0.0);
    p.push_back(x);
    for (int s = 0; s < segments; ++s) {
        for (double& c : x) c += scale * g.normal();
        p.push_back(x);
    }
    return p;
}

double max_diff(const TruncatedTensor& a, const TruncatedTensor& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.raw().size(); ++i) m = std::max(m, std::abs(a.raw()[i] - b.raw()[i]));
    return m;
}

Outcome property_suites()
{
    NormalSource g(8);
    double chen = 0.0, scaling = 0.0, reversal = 0.0, hyper = 0.0, morph = 0.0, sheet = 0.0;
    for (int t = 0; t < 100; ++t) {
        const int d = 2 + t % 3;
        const Polyline p = random_polyline(d, 6, 0.5, g);
        Polyline q(d);
        const Polyline q0 = random_polyline(d, 5, 0.5, g);
        for (std::size_t i = 0; i < q0.size(); ++i) {
            std::vector<double> x(q0.vertex(i).begin(), q0.vertex(i).end());
            for (int k = 0; k < d; ++k) x[k] += p.back()[k];
            q.push_back(x);
        }
        chen = std::max(chen, max_diff(polyline_signature(concat(p, q), 4),
                                       tensor_mul(polyline_signature(p, 4), polyline_signature(q, 4))));
        const double lam = 0.5 + 2.0 * g.uniform();
        Polyline pl(d);
        for (std::size_t i = 0; i < p.size(); ++i) {
            std::vector<double> x(p.vertex(i).begin(), p.vertex(i).end());
            for (double& c : x) c *= lam;
            pl.push_back(x);
        }
        scaling = std::max(scaling, max_diff(dilation(lam, polyline_signature(p, 4)), polyline_signature(pl, 4)));
        reversal = std::max(reversal, max_diff(polyline_signature(concat(p, reverse(p)), 4),
                                               TruncatedTensor::unit(d, 4)));

        TruncatedTensor a(d, 4), b(d, 4);
        for (int n = 0; n <= 2; ++n) {
            for (double& x : a[n]) x = g.normal();
            for (double& x : b[n]) x = g.normal();
        }
        const auto basis = h_basis_all(d);
        const DevMatrix lhs = apply_morphism(tensor_mul(a, b), lam, basis);
        const DevMatrix rhs = apply_morphism(a, lam, basis) * apply_morphism(b, lam, basis);
        morph = std::max(morph, (lhs - rhs).cwiseAbs().maxCoeff() / (1.0 + rhs.cwiseAbs().maxCoeff()));
    }
    // Per-sample checks on stopped Brownian paths.
    const Domain disc = Domain::ball({0.0, 0.0}, 1.0);
    const Domain ball = Domain::ball({0.0, 0.0, 0.0}, 1.0);
    std::size_t samples = 0;
    for (std::uint64_t i = 0; i < 400; ++i) {
        NormalSource rng(substream_seed(2718, i));
        const bool three = i % 2;
        const std::vector<double> z = three ? std::vector<double>{0.5, 0.0, 0.0} : std::vector<double>{0.3, 0.2};
        const ExitPath ep = simulate_exit_path(three ? ball : disc, z, 1e-3, rng);
        for (double lam : {0.5, 1.0, 2.0}) {
            const DevVector x = polyline_development(ep.path, lam);
            const int d = static_cast<int>(x.size()) - 1;
            hyper = std::max(hyper, std::abs(hyperboloid_residual(x)));
            sheet = std::max(sheet, std::max(1.0, std::abs(x[0])) - x[d]);
            ++samples;
        }
    }
    // Remainder soundness against a 60-term sum.
    NormalSource gb(60);
    std::size_t cases = 0, unsound = 0;
    for (int t = 0; t < 2000; ++t) {
        const double nu = 0.5 * static_cast<int>(9 * gb.uniform());
        const int n = 4 + static_cast<int>(7 * gb.uniform());
        const std::complex<double> z = std::polar(5.0 * std::sqrt(gb.uniform()), 2 * std::numbers::pi * gb.uniform());
        const double err = std::abs(bessel_j(nu, z, n) - bessel_j(nu, z, 60));
        unsound += err > remainder_bound(nu, z, n + 1) + 1e-14;
        ++cases;
    }

    Outcome o;
    o.pass = chen <= 1e-10 && scaling <= 1e-10 && reversal <= 1e-10 && hyper <= 1e-9 && morph <= 1e-12 &&
             sheet <= 1e-12 && unsound == 0 && cases >= 1000;
    o.detail = "chen " + fmt("%.1e", chen) + ", scaling " + fmt("%.1e", scaling) + ", reversal " +
               fmt("%.1e", reversal) + ", hyperboloid " + fmt("%.1e", hyper) + " over " +
               std::to_string(samples) + " samples, morphism " + fmt("%.1e", morph) +
               ", sheet violation " + fmt("%.1e", sheet) + ", remainder unsound " +
               std::to_string(unsound) + "/" + std::to_string(cases);
    return o;
}

Outcome determinism()
{
    std::ostringstream a, b;
    write_report_csv(a, verify_all());
    write_report_csv(b, verify_all());
    bool ok = a.str() == b.str();

    const Domain disc = Domain::ellipsoid({1.0, 0.6});
    McConfig c;
    c.seed = 4242;
    c.paths = 3000;
    c.step = 1e-3;
    c.level = 3;
    c.start = {0.1, 0.1};
    std::string ref;
    for (int threads : {1, 4, 3, 1}) {
        c.threads = threads;
        std::ostringstream os;
        write_estimate_csv(os, mc_expected_signature(disc, c));
        write_estimate_csv(os, mc_domain_averaged_development(disc, c, 4));
        if (ref.empty())
            ref = os.str();
        else
            ok = ok && os.str() == ref;
    }
    return {ok, "verify-all CSV identical across runs; mc CSV identical for threads 1, 4, 3, 1"};
}

}  // namespace

int main(int argc, char** argv)
{
    std::size_t paths = 100000;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--paths") == 0 && i + 1 < argc) paths = std::stoul(argv[++i]);

    std::map<int, Outcome> out;
    std::map<int, std::string> title = {
        {1, "Table 1 reproduction (n=7, tol 1e-5, < 1 s)"},
        {2, "Table 2 reproduction (n=5, tol 1e-5) and certified sup N < 0"},
        {3, "Table 4 reproduction (n=6, tol 1e-5) and certified |N1| - |N2| > 0"},
        {4, "2-D lemma constants"},
        {5, "certified root brackets in ]2.5,3[, width <= 1e-8, d = 2..8"},
        {6, "blow-up at lambda* - delta, d = 2..8"},
        {7, "closed-form ODE residuals and boundary values"},
        {8, "property suites"},
        {9, "stochastic and deterministic cross-checks"},
        {10, "determinism across runs and thread counts"},
    };

    {
        const auto t0 = std::chrono::steady_clock::now();
        const Report r = reproduce_table1();
        const double dt = seconds_since(t0);
        Outcome o = table_criterion(r, {"[Theta+Err](2.5)", "[Theta-Err](3)"});
        o.pass = o.pass && dt < 1.0;
        o.detail += "; " + fmt("%.4f s", dt);
        out[1] = o;
    }
    out[2] = table_criterion(reproduce_table2(), {" N(2.5)", " Err", "certified sup N on [2.5,3]"});
    out[3] = table_criterion(reproduce_table4(), {" N(2.5)", " Err", "certified inf (|N1|-|N2|) on [2.5,3]"});
    {
        const Report r = verify_2d_lemma();
        Report wrapped{"all", {}};
        wrapped.append(r);
        out[4] = from_report(wrapped);
        // The tail is stated as <= 0.00036 but 0.00038 enters the final sum.
        for (const auto& c : r.checks)
            if (c.id.rfind("tail", 0) == 0) out[4].detail += "; " + c.id + ": " + fmt("%.6g", c.value);
    }
    out[5] = from_report(verify_brackets());
    out[6] = from_report(verify_blowup());
    out[7] = from_report(verify_closed_forms());
    out[8] = property_suites();
    {
        const auto t0 = std::chrono::steady_clock::now();
        CrosscheckOptions o;
        o.paths = paths;
        Outcome c = from_report(mc_crosscheck_suite(o));
        const double dt = seconds_since(t0);
        c.pass = c.pass && dt <= 600.0;
        c.detail += "; " + std::to_string(paths) + " paths; " + fmt("%.1f s", dt);
        out[9] = c;
    }
    out[10] = determinism();

    int unexpected = 0;
    for (const auto& [k, o] : out) {
        std::string status = o.pass ? "PASS" : "FAIL";
        std::string extra;
        if (!o.pass) {
            const auto it = kBlocked.find(k);
            const bool only_blocked =
                it != kBlocked.end() && o.detail.find("failed: " + it->second.first) != std::string::npos &&
                o.detail.find("failed: ") == o.detail.rfind("failed: ");
            if (only_blocked)
                extra = " [BLOCKED: " + it->second.second + "]";
            else
                ++unexpected;
        }
        std::printf("criterion %2d: %s  %s (%s)%s\n", k, status.c_str(), title[k].c_str(), o.detail.c_str(),
                    extra.c_str());
    }
    std::fflush(stdout);
    return unexpected == 0 ? 0 : 1;
}
