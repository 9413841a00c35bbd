#include "sighyp/development.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sighyp {

DevMatrix h_basis(int i, int d)
{
    if (d < 1 || i < 1 || i > d)
        throw std::out_of_range("basis index " + std::to_string(i) + " outside 1.." +
                                std::to_string(d));
    DevMatrix m = DevMatrix::Zero(d + 1, d + 1);
    m(i - 1, d) = 1.0;
    m(d, i - 1) = 1.0;
    return m;
}

std::vector<DevMatrix> h_basis_all(int d)
{
    std::vector<DevMatrix> out;
    for (int i = 1; i <= d; ++i) out.push_back(h_basis(i, d));
    return out;
}

DevMatrix apply_morphism(const TruncatedTensor& a, double lambda,
                         const std::vector<DevMatrix>& basis_images)
{
    const int d = a.dim();
    if (static_cast<int>(basis_images.size()) != d)
        throw std::invalid_argument("need one basis image per letter");
    const Eigen::Index m = basis_images[0].rows();
    for (const auto& b : basis_images)
        if (b.rows() != m || b.cols() != m) throw std::invalid_argument("basis images must be square");

    // Prefix products B_{w1}...B_{wn}, one level at a time.
    DevMatrix result = a[0][0] * DevMatrix::Identity(m, m);
    std::vector<DevMatrix> prefix{DevMatrix::Identity(m, m)};
    double lp = 1.0;
    for (int n = 1; n <= a.level(); ++n) {
        lp *= lambda;
        std::vector<DevMatrix> next;
        next.reserve(prefix.size() * static_cast<std::size_t>(d));
        auto lv = a[n];
        DevMatrix acc = DevMatrix::Zero(m, m);
        for (std::size_t p = 0; p < prefix.size(); ++p)
            for (int j = 0; j < d; ++j) {
                next.push_back(prefix[p] * basis_images[j]);
                const double c = lv[p * static_cast<std::size_t>(d) + static_cast<std::size_t>(j)];
                if (c != 0.0) acc += c * next.back();
            }
        result += lp * acc;
        prefix.swap(next);
    }
    return result;
}

DevMatrix segment_development_exact(std::span<const double> v, double lambda)
{
    const int d = static_cast<int>(v.size());
    DevMatrix m = DevMatrix::Identity(d + 1, d + 1);
    for (int c = 0; c <= d; ++c) {
        std::vector<double> col(d + 1, 0.0);
        col[c] = 1.0;
        boost_apply(v, lambda, col);
        for (int r = 0; r <= d; ++r) m(r, c) = col[r];
    }
    return m;
}

void boost_apply(std::span<const double> v, double lambda, std::span<double> x)
{
    const std::size_t d = v.size();
    if (x.size() != d + 1) throw std::invalid_argument("boost vector must have d+1 entries");
    double n2 = 0.0;
    for (double c : v) n2 += c * c;
    if (n2 == 0.0 || lambda == 0.0) return;
    const double n = std::sqrt(n2);
    const double t = lambda * n;
    if (std::abs(t) > kMaxBoostExponent)
        throw std::range_error("boost exponent lambda*|v| exceeds overflow guard");
    // H(v) x = (v x_{d+1}, v.x);  H(v)^2 x = (v (v.x), |v|^2 x_{d+1}).
    double vx = 0.0;
    for (std::size_t i = 0; i < d; ++i) vx += v[i] * x[i];
    const double last = x[d];
    const double s = std::sinh(t) / n;
    const double sh = std::sinh(0.5 * t);
    const double cm1 = 2.0 * sh * sh / n2;  // (cosh t - 1) / |v|^2 without cancellation
    for (std::size_t i = 0; i < d; ++i) x[i] += s * v[i] * last + cm1 * v[i] * vx;
    x[d] += s * vx + cm1 * n2 * last;
}

DevVector polyline_development(const Polyline& p, double lambda)
{
    if (p.empty()) throw std::invalid_argument("polyline has no vertices");
    const int d = p.dim();
    if (std::abs(lambda) * p.one_variation() > kMaxBoostExponent)
        throw std::range_error("lambda times path 1-variation exceeds overflow guard (700)");
    std::vector<double> x(d + 1, 0.0), v(d);
    x[d] = 1.0;
    // H(S(p)) e = B_1 B_2 ... B_m e: apply the last segment first.
    for (std::size_t i = p.size(); i-- > 1;) {
        for (int k = 0; k < d; ++k) v[k] = p.vertex(i)[k] - p.vertex(i - 1)[k];
        boost_apply(v, lambda, x);
    }
    return Eigen::Map<DevVector>(x.data(), d + 1);
}

double squared_word_series(const TruncatedTensor& a, double lambda, int k)
{
    const int d = a.dim();
    if (k < 1 || k > d + 1)
        throw std::out_of_range("component " + std::to_string(k) + " outside 1.." +
                                std::to_string(d + 1));
    const int lead = (k <= d) ? 1 : 0;
    double total = 0.0;
    for (int n = 0; 2 * n + lead <= a.level(); ++n) {
        const int len = 2 * n + lead;
        auto lv = a[len];
        // Enumerate (j1..jn) and map to the word index of (k?, j1, j1, ..., jn, jn).
        std::size_t count = 1;
        for (int i = 0; i < n; ++i) count *= static_cast<std::size_t>(d);
        double s = 0.0;
        for (std::size_t c = 0; c < count; ++c) {
            Word js = word_from_index(c, n, d);
            std::size_t idx = lead ? static_cast<std::size_t>(k - 1) : 0;
            for (int j : js) {
                idx = idx * d + static_cast<std::size_t>(j - 1);
                idx = idx * d + static_cast<std::size_t>(j - 1);
            }
            s += lv[idx];
        }
        total += std::pow(lambda, len) * s;
    }
    return total;
}

double hyperboloid_residual(const DevVector& x)
{
    const Eigen::Index d = x.size() - 1;
    double s = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) s += x[i] * x[i];
    return s - x[d] * x[d] + 1.0;
}

}  // namespace sighyp
