#include "sighyp/stopped_bm.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <type_traits>
#include <thread>

#include "sighyp/development.hpp"
#include "sighyp/format.hpp"

namespace sighyp {

namespace {

constexpr std::size_t kBlock = 256;
constexpr std::uint64_t kRotationStream = 0x526F746174696F6EULL;

struct Moments {
    double n = 0.0;
    std::vector<double> mean, m2;

    explicit Moments(std::size_t k) : mean(k, 0.0), m2(k, 0.0) {}

    void push(std::span<const double> x)
    {
        n += 1.0;
        for (std::size_t i = 0; i < mean.size(); ++i) {
            const double delta = x[i] - mean[i];
            mean[i] += delta / n;
            m2[i] += delta * (x[i] - mean[i]);
        }
    }

    void merge(const Moments& o)
    {
        if (o.n == 0.0) return;
        const double tot = n + o.n;
        for (std::size_t i = 0; i < mean.size(); ++i) {
            const double delta = o.mean[i] - mean[i];
            mean[i] += delta * (o.n / tot);
            m2[i] += o.m2[i] + delta * delta * (n * o.n / tot);
        }
        n = tot;
    }
};

double bisect_exit(const Domain& D, std::span<const double> a, std::span<const double> b,
                   std::span<double> out)
{
    const std::size_t d = a.size();
    double lo = 0.0, hi = 1.0, best = 1.0;
    double best_res = std::abs(D.level_fn(b));
    for (std::size_t i = 0; i < d; ++i) out[i] = b[i];
    std::vector<double> p(d);
    for (int it = 0; it < 200 && best_res >= 1e-12; ++it) {
        const double mid = 0.5 * (lo + hi);
        for (std::size_t i = 0; i < d; ++i) p[i] = a[i] + mid * (b[i] - a[i]);
        const double g = D.level_fn(p);
        if (std::abs(g) < best_res) {
            best_res = std::abs(g);
            best = mid;
            std::copy(p.begin(), p.end(), out.begin());
        }
        if (g < 0.0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-17) break;
    }
    return best;
}

}  // namespace

McConfig McConfig::from_json(const nlohmann::json& j)
{
    McConfig c;
    auto field = [&](const char* key, auto& dst) {
        if (!j.contains(key)) return;
        using T = std::decay_t<decltype(dst)>;
        if constexpr (std::is_unsigned_v<T>)
            if (!j.at(key).is_number_integer() ||
                (!j.at(key).is_number_unsigned() && j.at(key).get<long long>() < 0))
                throw std::invalid_argument(std::string("config.") + key +
                                            ": expected a non-negative integer");
        try {
            j.at(key).get_to(dst);
        } catch (const std::exception& e) {
            throw std::invalid_argument(std::string("config.") + key + ": " + e.what());
        }
    };
    field("seed", c.seed);
    field("paths", c.paths);
    field("step", c.step);
    field("level", c.level);
    field("lambda", c.lambda);
    field("start", c.start);
    field("threads", c.threads);
    field("rotations", c.rotations);
    return c;
}

nlohmann::json McConfig::to_json() const
{
    return {{"seed", seed},           {"paths", paths},   {"step", step},
            {"level", level},         {"lambda", lambda}, {"start", start},
            {"rotations", rotations}};
}

void McConfig::validate(const Domain& domain) const
{
    if (paths < 1) throw std::invalid_argument("config.paths: must be >= 1");
    if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("config.step: must be > 0");
    if (level < 0) throw std::invalid_argument("config.level: must be >= 0");
    if (!std::isfinite(lambda)) throw std::invalid_argument("config.lambda: must be finite");
    if (static_cast<int>(start.size()) != domain.dim())
        throw std::invalid_argument("config.start: expected " + std::to_string(domain.dim()) +
                                    " coordinates");
    if (!domain.inside(start)) throw std::invalid_argument("config.start: not interior to domain");
    if (rotations < 1) throw std::invalid_argument("config.rotations: must be >= 1");
}

double McEstimate::mean_of(const std::string& name) const
{
    auto it = std::find(components.begin(), components.end(), name);
    if (it == components.end()) throw std::out_of_range("no component '" + name + "'");
    return mean[static_cast<std::size_t>(it - components.begin())];
}

double McEstimate::std_error_of(const std::string& name) const
{
    auto it = std::find(components.begin(), components.end(), name);
    if (it == components.end()) throw std::out_of_range("no component '" + name + "'");
    return std_error[static_cast<std::size_t>(it - components.begin())];
}

ExitPath simulate_exit_path(const Domain& domain, std::span<const double> start, double step,
                            NormalSource& rng, const Eigen::MatrixXd* increment_map)
{
    if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("step must be > 0");
    const int d = domain.dim();
    if (static_cast<int>(start.size()) != d) throw std::invalid_argument("start dimension mismatch");
    if (!domain.inside(start)) throw std::invalid_argument("start point is not interior");

    ExitPath out{Polyline(d), 0.0};
    out.path.push_back(start);
    std::vector<double> x(start.begin(), start.end()), y(d), g(d), e(d);
    const double sq = std::sqrt(step);
    double dist_x = domain.boundary_distance(x);
    double t = 0.0;

    for (std::size_t k = 0; k < kMaxExitSteps; ++k) {
        for (int i = 0; i < d; ++i) g[i] = sq * rng.normal();
        if (increment_map) {
            for (int i = 0; i < d; ++i) {
                double s = 0.0;
                for (int j = 0; j < d; ++j) s += (*increment_map)(i, j) * g[j];
                y[i] = x[i] + s;
            }
        } else {
            for (int i = 0; i < d; ++i) y[i] = x[i] + g[i];
        }

        if (!domain.inside(y)) {
            const double s = bisect_exit(domain, x, y, e);
            out.path.push_back(e);
            out.tau = t + s * step;
            return out;
        }

        const double dist_y = domain.boundary_distance(y);
        // exp(-32.3) < 1e-14: crossing probability negligible, no draw.
        const double a = 2.0 * std::max(dist_x, 0.0) * std::max(dist_y, 0.0) / step;
        if (a < 32.3 && rng.uniform() < std::exp(-a)) {
            for (int i = 0; i < d; ++i) e[i] = 0.5 * (x[i] + y[i]);
            out.path.push_back(domain.radial_projection(e));
            out.tau = t + 0.5 * step;
            return out;
        }

        x.swap(y);
        dist_x = dist_y;
        t += step;
        out.path.push_back(x);
    }
    throw std::runtime_error("exit not reached within step cap (1e8 steps)");
}

int resolve_threads(int requested)
{
    if (requested > 0) return requested;
    if (const char* env = std::getenv("SIGHYP_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

McEstimate mc_reduce(std::size_t paths, int threads, std::vector<std::string> components,
                     const PathSampler& sample)
{
    const std::size_t k = components.size();
    const std::size_t nblocks = (paths + kBlock - 1) / kBlock;
    std::vector<Moments> blocks(nblocks, Moments(k));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        std::vector<double> buf(k);
        for (;;) {
            const std::size_t b = next.fetch_add(1);
            if (b >= nblocks) return;
            try {
                const std::size_t end = std::min(paths, (b + 1) * kBlock);
                for (std::size_t i = b * kBlock; i < end; ++i) {
                    std::fill(buf.begin(), buf.end(), 0.0);
                    sample(i, buf);
                    blocks[b].push(buf);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(nblocks);
                return;
            }
        }
    };

    const int nt = std::max(1, std::min<int>(resolve_threads(threads), static_cast<int>(nblocks)));
    if (nt == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < nt; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);

    Moments total(k);
    for (const auto& b : blocks) total.merge(b);
    McEstimate est;
    est.components = std::move(components);
    est.mean = total.mean;
    est.std_error.assign(k, 0.0);
    if (total.n > 1.0)
        for (std::size_t i = 0; i < k; ++i)
            est.std_error[i] = std::sqrt(std::max(total.m2[i], 0.0) / (total.n - 1.0) / total.n);
    est.paths = paths;
    return est;
}

McEstimate mc_exit_time(const Domain& domain, const McConfig& cfg)
{
    cfg.validate(domain);
    return mc_reduce(cfg.paths, cfg.threads, {"tau"}, [&](std::size_t i, std::span<double> out) {
        NormalSource rng(substream_seed(cfg.seed, i));
        out[0] = simulate_exit_path(domain, cfg.start, cfg.step, rng).tau;
    });
}

std::vector<std::string> tensor_component_names(int d, int level)
{
    std::vector<std::string> names;
    TruncatedTensor shape(d, level);
    for (int n = 0; n <= level; ++n)
        for (std::size_t i = 0; i < shape.level_size(n); ++i)
            names.push_back(word_to_string(word_from_index(i, n, d)));
    return names;
}

TruncatedTensor tensor_from_estimate(const std::vector<double>& values, int d, int level)
{
    TruncatedTensor t(d, level);
    if (values.size() != t.total_size()) throw std::invalid_argument("estimate size mismatch");
    t.raw() = values;
    return t;
}

McEstimate mc_expected_signature(const Domain& domain, const McConfig& cfg)
{
    cfg.validate(domain);
    const int d = domain.dim();
    return mc_reduce(cfg.paths, cfg.threads, tensor_component_names(d, cfg.level),
                     [&](std::size_t i, std::span<double> out) {
                         NormalSource rng(substream_seed(cfg.seed, i));
                         const ExitPath ep = simulate_exit_path(domain, cfg.start, cfg.step, rng);
                         const TruncatedTensor s = polyline_signature(ep.path, cfg.level);
                         std::copy(s.raw().begin(), s.raw().end(), out.begin());
                     });
}

namespace {

std::vector<std::string> dev_names(int d)
{
    std::vector<std::string> names;
    for (int k = 1; k <= d + 1; ++k) names.push_back("h" + std::to_string(k));
    return names;
}

}  // namespace

McEstimate mc_development(const Domain& domain, const McConfig& cfg)
{
    return mc_domain_averaged_development(domain, cfg, 1);
}

Eigen::MatrixXd haar_rotation(int d, NormalSource& rng)
{
    Eigen::MatrixXd G(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) G(i, j) = rng.normal();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
    Eigen::MatrixXd Q = qr.householderQ();
    const Eigen::MatrixXd R = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < d; ++j)
        if (R(j, j) < 0.0) Q.col(j) *= -1.0;
    if (Q.determinant() < 0.0) Q.col(0) *= -1.0;
    return Q;
}

McEstimate mc_domain_averaged_development(const Domain& domain, const McConfig& cfg,
                                          std::size_t rotations)
{
    cfg.validate(domain);
    if (rotations < 1) throw std::invalid_argument("rotations must be >= 1");
    const int d = domain.dim();
    std::vector<Domain> rotated;
    if (rotations == 1) {
        rotated.push_back(domain);
    } else {
        if (auto r = domain.rotation_inscribed_radius()) {
            double n = 0.0;
            for (double x : cfg.start) n += x * x;
            if (std::sqrt(n) >= *r)
                throw std::invalid_argument(
                    "config.start: not inside the intersection of rotated domains");
        }
        for (std::size_t j = 0; j < rotations; ++j) {
            NormalSource rng(substream_seed(cfg.seed ^ kRotationStream, j));
            rotated.push_back(Domain::rotated(domain, haar_rotation(d, rng)));
        }
    }
    return mc_reduce(cfg.paths, cfg.threads, dev_names(d),
                     [&](std::size_t i, std::span<double> out) {
                         NormalSource rng(substream_seed(cfg.seed, i));
                         const Domain& D = rotated[i % rotated.size()];
                         const ExitPath ep = simulate_exit_path(D, cfg.start, cfg.step, rng);
                         const DevVector h = polyline_development(ep.path, cfg.lambda);
                         for (int k = 0; k <= d; ++k) out[k] = h[k];
                     });
}

void write_estimate_csv(std::ostream& os, const McEstimate& e)
{
    os << "component,mean,stderr\n";
    for (std::size_t i = 0; i < e.components.size(); ++i)
        os << e.components[i] << ',' << fmt_double(e.mean[i]) << ',' << fmt_double(e.std_error[i])
           << '\n';
}

}  // namespace sighyp
