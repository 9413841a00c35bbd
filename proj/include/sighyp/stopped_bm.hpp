#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "sighyp/domain.hpp"
#include "sighyp/rng.hpp"
#include "sighyp/signature.hpp"
#include "sighyp/tensor.hpp"

namespace sighyp {

inline constexpr std::size_t kMaxExitSteps = 100'000'000;

struct McConfig {
    std::uint64_t seed = 20240611;
    std::size_t paths = 10000;
    double step = 1e-4;
    int level = 2;
    double lambda = 1.0;
    std::vector<double> start;
    int threads = 0;  // 0: SIGHYP_THREADS or hardware concurrency
    std::size_t rotations = 1;

    // Throws std::invalid_argument naming the offending field.
    static McConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
    void validate(const Domain& domain) const;
};

struct McEstimate {
    std::vector<std::string> components;
    std::vector<double> mean;
    std::vector<double> std_error;
    std::size_t paths = 0;

    double mean_of(const std::string& name) const;
    double std_error_of(const std::string& name) const;
};

struct ExitPath {
    Polyline path;
    double tau = 0.0;
};

// Euler walk with sqrt(step) N(0, I) increments until the first vertex outside
// the closed domain; the last vertex is moved onto the boundary by bisection.
// Between two interior vertices a Brownian-bridge crossing test (half-space
// approximation) may also end the path, with the exit point taken as the
// radial projection of the segment midpoint. `increment_map`, if given, is
// applied to every Gaussian increment.
ExitPath simulate_exit_path(const Domain& domain, std::span<const double> start, double step,
                            NormalSource& rng, const Eigen::MatrixXd* increment_map = nullptr);

int resolve_threads(int requested);

// Generic estimator: `sample(i, out)` fills the functional of path i. Paths are
// reduced in fixed blocks, so results do not depend on the worker count.
using PathSampler = std::function<void(std::size_t index, std::span<double> out)>;
McEstimate mc_reduce(std::size_t paths, int threads, std::vector<std::string> components,
                     const PathSampler& sample);

McEstimate mc_exit_time(const Domain& domain, const McConfig& cfg);
McEstimate mc_expected_signature(const Domain& domain, const McConfig& cfg);
McEstimate mc_development(const Domain& domain, const McConfig& cfg);
McEstimate mc_domain_averaged_development(const Domain& domain, const McConfig& cfg,
                                          std::size_t rotations);

std::vector<std::string> tensor_component_names(int d, int level);
TruncatedTensor tensor_from_estimate(const std::vector<double>& values, int d, int level);

// Haar-distributed element of SO(d) from QR of a Gaussian matrix.
Eigen::MatrixXd haar_rotation(int d, NormalSource& rng);

void write_estimate_csv(std::ostream& os, const McEstimate& e);

}  // namespace sighyp
