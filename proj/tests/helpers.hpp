#pragma once

#include <cmath>
#include <cstdint>

#include "sighyp/rng.hpp"
#include "sighyp/signature.hpp"
#include "sighyp/tensor.hpp"

namespace testing {

inline sighyp::TruncatedTensor random_tensor(int d, int level, std::uint64_t seed)
{
    sighyp::NormalSource g(seed);
    sighyp::TruncatedTensor t(d, level);
    for (double& x : t.raw()) x = g.normal();
    return t;
}

inline sighyp::Polyline random_polyline(int d, int segments, double scale, std::uint64_t seed)
{
    sighyp::NormalSource g(seed);
    sighyp::Polyline p(d);
    std::vector<double> x(static_cast<std::size_t>(d), 0.0);
    p.push_back(x);
    for (int s = 0; s < segments; ++s) {
        for (double& c : x) c += scale * g.normal();
        p.push_back(x);
    }
    return p;
}

inline double max_abs_diff(const sighyp::TruncatedTensor& a, const sighyp::TruncatedTensor& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.raw().size(); ++i)
        m = std::max(m, std::abs(a.raw()[i] - b.raw()[i]));
    return m;
}

}  // namespace testing
