// sighyp: command-line front end for signatures, developments, stopped Brownian
// motion estimators, the nested PDE solver and the verification reports.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "sighyp/bessel_cert.hpp"
#include "sighyp/development.hpp"
#include "sighyp/domain.hpp"
#include "sighyp/format.hpp"
#include "sighyp/pde_nested.hpp"
#include "sighyp/signature.hpp"
#include "sighyp/stopped_bm.hpp"
#include "sighyp/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace sighyp;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string config;
    std::string out;
    std::uint64_t seed = 0;
    int threads = -1;
    bool seed_given = false;
};

// Writes named outputs into --out, or to stdout when no directory was given.
class Sink {
public:
    explicit Sink(const std::string& dir) : dir_(dir)
    {
        if (!dir_.empty()) {
            std::error_code ec;
            fs::create_directories(dir_, ec);
            if (ec) throw UsageError("cannot create output directory '" + dir_ + "': " + ec.message());
        }
    }

    template <class F>
    void write(const std::string& name, F&& body, bool to_stdout = true)
    {
        if (dir_.empty()) {
            if (to_stdout) body(std::cout);
            return;
        }
        const fs::path p = fs::path(dir_) / name;
        std::ofstream os(p, std::ios::binary);
        if (!os) throw UsageError("cannot write '" + p.string() + "'");
        body(os);
    }

    void record_config(const json& j)
    {
        write("config.json", [&](std::ostream& os) { os << j.dump(2) << '\n'; }, false);
    }

private:
    std::string dir_;
};

json load_config(const std::string& path)
{
    if (path.empty()) return json::object();
    std::ifstream is(path);
    if (!is) throw UsageError("cannot open config '" + path + "'");
    try {
        json j = json::parse(is);
        if (!j.is_object()) throw UsageError("config: top level must be an object");
        return j;
    } catch (const json::parse_error& e) {
        throw UsageError("config: " + std::string(e.what()));
    }
}

Domain domain_from(const json& cfg)
{
    if (!cfg.contains("domain")) throw UsageError("config.domain: missing");
    try {
        return Domain::from_json(cfg.at("domain"));
    } catch (const std::exception& e) {
        throw UsageError(std::string("config.domain: ") + e.what());
    }
}

Polyline read_path_file(const std::string& path)
{
    std::ifstream is(path);
    if (!is) throw UsageError("cannot open path file '" + path + "'");
    try {
        return read_polyline_csv(is);
    } catch (const std::exception& e) {
        throw UsageError(path + ": " + e.what());
    }
}

McConfig mc_config_from(const json& cfg, const Common& c)
{
    McConfig m;
    try {
        m = McConfig::from_json(cfg);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (c.seed_given) m.seed = c.seed;
    if (c.threads >= 0) m.threads = c.threads;
    return m;
}

int cmd_sig(const Common& c, const std::string& path, int level)
{
    if (level < 0) throw UsageError("--level must be >= 0");
    const Polyline p = read_path_file(path);
    const TruncatedTensor s = polyline_signature(p, level);
    Sink sink(c.out);
    sink.record_config({{"command", "sig"}, {"path", path}, {"level", level}});
    sink.write("signature.csv", [&](std::ostream& os) { write_tensor_csv(os, s); });
    return kExitPass;
}

int cmd_develop(const Common& c, const std::string& path, double lambda)
{
    if (!std::isfinite(lambda)) throw UsageError("--lambda must be finite");
    const Polyline p = read_path_file(path);
    const DevVector x = polyline_development(p, lambda);
    Sink sink(c.out);
    sink.record_config({{"command", "develop"}, {"path", path}, {"lambda", lambda}});
    sink.write("development.csv", [&](std::ostream& os) {
        os << "component,value\n";
        for (Eigen::Index i = 0; i < x.size(); ++i)
            os << 'h' << i + 1 << ',' << fmt_double(x[i]) << '\n';
    });
    return kExitPass;
}

int cmd_mc(const Common& c, std::string estimator, long long paths)
{
    json cfg = load_config(c.config);
    const Domain domain = domain_from(cfg);
    McConfig m = mc_config_from(cfg, c);
    if (paths > 0) m.paths = static_cast<std::size_t>(paths);
    if (estimator.empty()) estimator = cfg.value("estimator", std::string("signature"));
    if (m.start.empty()) m.start.assign(static_cast<std::size_t>(domain.dim()), 0.0);
    try {
        m.validate(domain);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    McEstimate e;
    if (estimator == "exit_time")
        e = mc_exit_time(domain, m);
    else if (estimator == "signature")
        e = mc_expected_signature(domain, m);
    else if (estimator == "development")
        e = mc_development(domain, m);
    else if (estimator == "averaged_development")
        e = mc_domain_averaged_development(domain, m, m.rotations);
    else
        throw UsageError("config.estimator: unknown estimator '" + estimator +
                         "' (exit_time, signature, development, averaged_development)");
    Sink sink(c.out);
    json rec = m.to_json();
    rec["command"] = "mc";
    rec["estimator"] = estimator;
    rec["domain"] = domain.to_json();
    sink.record_config(rec);
    sink.write("estimate.csv", [&](std::ostream& os) { write_estimate_csv(os, e); });
    return kExitPass;
}

int cmd_pde(const Common& c, int level_flag, double h_flag, bool compare)
{
    json cfg = load_config(c.config);
    const Domain domain = domain_from(cfg);
    if (domain.dim() != 2) throw UsageError("config.domain: the PDE solver supports d = 2 only");
    PdeConfig pc;
    try {
        pc = PdeConfig::from_json(cfg.value("pde", json::object()));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (h_flag > 0.0) pc.h = h_flag;
    int N = cfg.value("level", 2);
    if (level_flag >= 0) N = level_flag;
    if (N < 0) throw UsageError("config.level: must be >= 0");

    const MaskedGrid grid(domain, pc.h);
    const Cascade cas = solve_cascade(grid, N, pc);
    Sink sink(c.out);
    json rec = {{"command", "pde"}, {"domain", domain.to_json()}, {"level", N}, {"pde", pc.to_json()}};
    if (cfg.contains("point")) rec["point"] = cfg["point"];
    if (compare) {
        McConfig m = mc_config_from(cfg, c);
        m.level = N;
        rec["mc"] = m.to_json();
    }
    sink.record_config(rec);
    sink.write("field.csv", [&](std::ostream& os) { write_field_csv(os, grid, cas); });
    sink.write("sup_norms.csv", [&](std::ostream& os) {
        os << "level,sup_norm\n";
        for (std::size_t n = 0; n < cas.sup_norms.size(); ++n)
            os << n << ',' << fmt_double(cas.sup_norms[n]) << '\n';
    }, false);
    if (cfg.contains("point")) {
        const auto z = cfg["point"].get<std::vector<double>>();
        if (z.size() != 2) throw UsageError("config.point: expected 2 coordinates");
        const PdePointValues pv = pde_point_values(domain, N, z, pc);
        sink.write("point_values.csv", [&](std::ostream& os) {
            os << "word,value,grid_error\n";
            for (std::size_t i = 0; i < pv.components.size(); ++i)
                os << pv.components[i] << ',' << fmt_double(pv.value[i]) << ','
                   << fmt_double(pv.grid_error[i]) << '\n';
        }, false);
    }
    if (compare) {
        McConfig m = mc_config_from(cfg, c);
        m.level = N;
        const CompareReport r = compare_mc_pde(domain, N, m, pc);
        sink.write("compare.csv", [&](std::ostream& os) { write_compare_csv(os, r); }, false);
        if (!r.all_clear()) return kExitCheckFailed;
    }
    return kExitPass;
}

int cmd_verify(const Common& c, const std::string& which, const std::string& format, long long paths)
{
    Report r;
    json rec = {{"command", "verify"}, {"which", which}};
    if (which == "table1")
        r = reproduce_table1();
    else if (which == "table2")
        r = reproduce_table2();
    else if (which == "table4")
        r = reproduce_table4();
    else if (which == "lemma2d")
        r = verify_2d_lemma();
    else if (which == "brackets")
        r = verify_brackets();
    else if (which == "blowup")
        r = verify_blowup();
    else if (which == "closed")
        r = verify_closed_forms();
    else if (which == "all")
        r = verify_all();
    else if (which == "mc") {
        CrosscheckOptions o;
        const json cfg = load_config(c.config);
        if (cfg.contains("seed")) o.seed = cfg["seed"].get<std::uint64_t>();
        if (cfg.contains("paths")) o.paths = cfg["paths"].get<std::size_t>();
        if (cfg.contains("step")) o.step = cfg["step"].get<double>();
        if (c.seed_given) o.seed = c.seed;
        if (paths > 0) o.paths = static_cast<std::size_t>(paths);
        o.threads = c.threads >= 0 ? c.threads : 0;
        rec["seed"] = o.seed;
        rec["paths"] = o.paths;
        rec["step"] = o.step;
        r = mc_crosscheck_suite(o);
    } else
        throw UsageError("unknown report '" + which + "'");
    Sink sink(c.out);
    sink.record_config(rec);
    if (format == "csv")
        sink.write("report.csv", [&](std::ostream& os) { write_report_csv(os, r); });
    else if (format == "text")
        sink.write("report.txt", [&](std::ostream& os) { write_report_text(os, r); });
    else
        throw UsageError("--format must be text or csv");
    if (!c.out.empty()) {
        // Both forms are kept when writing to a directory.
        if (format == "csv")
            sink.write("report.txt", [&](std::ostream& os) { write_report_text(os, r); }, false);
        else
            sink.write("report.csv", [&](std::ostream& os) { write_report_csv(os, r); }, false);
    }
    return r.pass() ? kExitPass : kExitCheckFailed;
}

int cmd_profile(const Common& c, int d, double from, double to, int samples)
{
    if (d < 2 || d > 8) throw UsageError("--d must be in 2..8");
    if (!(from < to) || !(from > 0.0)) throw UsageError("--from/--to must satisfy 0 < from < to");
    if (samples < 2) throw UsageError("--samples must be >= 2");
    Sink sink(c.out);
    sink.record_config({{"command", "profile"}, {"d", d}, {"from", from}, {"to", to}, {"samples", samples}});
    sink.write("profile.csv", [&](std::ostream& os) {
        os << "lambda,theta,numerator,hd1_center\n";
        for (int i = 0; i < samples; ++i) {
            const double l = from + (to - from) * i / (samples - 1);
            const double t = theta(l, d), n = numerator_ball(l, d);
            os << fmt_double(l) << ',' << fmt_double(t) << ',' << fmt_double(n) << ','
               << fmt_double(n / t) << '\n';
        }
    });
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Signatures of stopped Brownian motion and their hyperbolic development"};
    app.require_subcommand(1);
    Common c;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", c.config, "JSON configuration file");
        sub->add_option("--out", c.out, "output directory (default: stdout)");
        sub->add_option_function<std::uint64_t>(
            "--seed", [&](std::uint64_t s) { 
                c.seed = s;
                c.seed_given = true;
             }, "master seed");
        sub->add_option("--threads", c.threads, "worker threads (default: SIGHYP_THREADS or all cores)")
            ->check(CLI::NonNegativeNumber);
    };

    std::string path;
    int level = 2;
    double lambda = 1.0;
    auto* sig = app.add_subcommand("sig", "truncated signature of a polyline CSV");
    add_common(sig);
    sig->add_option("--path", path, "polyline CSV (header x1,...,xd)")->required();
    sig->add_option("--level", level, "truncation level");

    auto* dev = app.add_subcommand("develop", "hyperbolic development of a polyline CSV");
    add_common(dev);
    dev->add_option("--path", path, "polyline CSV (header x1,...,xd)")->required();
    dev->add_option("--lambda", lambda, "scale");

    std::string estimator;
    long long paths = 0;
    auto* mc = app.add_subcommand("mc", "Monte Carlo estimators over a stopped Brownian motion");
    add_common(mc);
    mc->add_option("--estimator", estimator, "exit_time, signature, development, averaged_development");
    mc->add_option("--paths", paths, "override config.paths");

    int pde_level = -1;
    double h = 0.0;
    bool compare = false;
    auto* pde = app.add_subcommand("pde", "nested Poisson cascade on a planar domain");
    add_common(pde);
    pde->add_option("--level", pde_level, "override config.level");
    pde->add_option("--grid-step", h, "override config.pde.h");
    pde->add_flag("--compare", compare, "also run the Monte Carlo comparison");

    std::string which, format = "text";
    auto* ver = app.add_subcommand("verify", "verification reports");
    add_common(ver);
    ver->add_option("which", which, "table1, table2, table4, lemma2d, brackets, blowup, closed, all, mc")
        ->required();
    ver->add_option("--format", format, "text or csv");
    ver->add_option("--paths", paths, "path budget for `verify mc`");

    int d = 2, samples = 121;
    double from = 2.4, to = 3.0;
    auto* prof = app.add_subcommand("profile", "Theta, numerator and hd1(0) over a lambda range");
    add_common(prof);
    prof->add_option("--d", d, "dimension 2..8");
    prof->add_option("--from", from, "first lambda");
    prof->add_option("--to", to, "last lambda");
    prof->add_option("--samples", samples, "number of lambda values");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitPass : kExitUsage;
    }

    try {
        if (*sig) return cmd_sig(c, path, level);
        if (*dev) return cmd_develop(c, path, lambda);
        if (*mc) return cmd_mc(c, estimator, paths);
        if (*pde) return cmd_pde(c, pde_level, h, compare);
        if (*ver) return cmd_verify(c, which, format, paths);
        if (*prof) return cmd_profile(c, d, from, to, samples);
    } catch (const UsageError& e) {
        std::cerr << "sighyp: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "sighyp: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "sighyp: error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
