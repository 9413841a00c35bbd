#include "sighyp/signature.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "sighyp/format.hpp"

namespace sighyp {

Polyline::Polyline(int dim, std::vector<double> coords) : d_(dim), xs_(std::move(coords))
{
    if (dim < 1) throw std::invalid_argument("polyline dimension must be >= 1");
    if (xs_.size() % static_cast<std::size_t>(dim) != 0)
        throw std::invalid_argument("coordinate count is not a multiple of the dimension");
    for (double x : xs_)
        if (!std::isfinite(x)) throw std::invalid_argument("non-finite polyline coordinate");
}

void Polyline::push_back(std::span<const double> x)
{
    if (static_cast<int>(x.size()) != d_) throw std::invalid_argument("vertex dimension mismatch");
    xs_.insert(xs_.end(), x.begin(), x.end());
}

double Polyline::one_variation() const
{
    double total = 0.0;
    for (std::size_t i = 1; i < size(); ++i) {
        double s = 0.0;
        for (int k = 0; k < d_; ++k) {
            const double dx = vertex(i)[k] - vertex(i - 1)[k];
            s += dx * dx;
        }
        total += std::sqrt(s);
    }
    return total;
}

TruncatedTensor segment_signature(std::span<const double> v, int level)
{
    const int d = static_cast<int>(v.size());
    TruncatedTensor s = TruncatedTensor::unit(d, level);
    mul_segment_inplace(s, v);
    return s;
}

void mul_segment_inplace(TruncatedTensor& s, std::span<const double> v)
{
    const int d = s.dim();
    if (static_cast<int>(v.size()) != d) throw std::invalid_argument("segment dimension mismatch");
    bool zero = true;
    for (double x : v) zero = zero && x == 0.0;
    if (zero) return;

    // Horner form of sum_k s_k (x) v^{(n-k)} / (n-k)!, top level first so that
    // lower levels still hold their old values.
    std::vector<double> acc, next;
    for (int n = s.level(); n >= 1; --n) {
        acc.assign(s[0].begin(), s[0].end());
        for (int k = 1; k <= n; ++k) {
            const double f = 1.0 / static_cast<double>(n - k + 1);
            next.resize(acc.size() * static_cast<std::size_t>(d));
            for (std::size_t i = 0; i < acc.size(); ++i)
                for (int j = 0; j < d; ++j) next[i * d + j] = acc[i] * v[j] * f;
            if (k < n) {
                auto lk = s[k];
                for (std::size_t i = 0; i < next.size(); ++i) next[i] += lk[i];
            }
            acc.swap(next);
        }
        auto ln = s[n];
        for (std::size_t i = 0; i < ln.size(); ++i) ln[i] += acc[i];
    }
}

TruncatedTensor polyline_signature(const Polyline& p, int level)
{
    if (p.empty()) throw std::invalid_argument("polyline has no vertices");
    const int d = p.dim();
    TruncatedTensor s = TruncatedTensor::unit(d, level);
    std::vector<double> v(d);
    for (std::size_t i = 1; i < p.size(); ++i) {
        for (int k = 0; k < d; ++k) v[k] = p.vertex(i)[k] - p.vertex(i - 1)[k];
        mul_segment_inplace(s, v);
    }
    return s;
}

Polyline reverse(const Polyline& p)
{
    Polyline r(p.dim());
    r.reserve(p.size());
    for (std::size_t i = p.size(); i-- > 0;) r.push_back(p.vertex(i));
    return r;
}

Polyline concat(const Polyline& p, const Polyline& q)
{
    if (p.dim() != q.dim()) throw std::invalid_argument("polyline dimension mismatch");
    Polyline r = p;
    std::size_t start = 0;
    if (!p.empty() && !q.empty()) {
        bool same = true;
        for (int k = 0; k < p.dim(); ++k) same = same && p.back()[k] == q.front()[k];
        if (same) start = 1;
    }
    for (std::size_t i = start; i < q.size(); ++i) r.push_back(q.vertex(i));
    return r;
}

Polyline read_polyline_csv(std::istream& is)
{
    std::string line;
    std::size_t lineno = 0;
    int d = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string tok;
        int k = 0;
        while (std::getline(ss, tok, ',')) {
            ++k;
            if (tok != "x" + std::to_string(k))
                throw std::runtime_error("line " + std::to_string(lineno) +
                                         ": expected header x1,...,xd");
        }
        d = k;
        break;
    }
    if (d == 0) throw std::runtime_error("empty polyline file");
    Polyline p(d);
    std::vector<double> x(d);
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string tok;
        int k = 0;
        while (std::getline(ss, tok, ',')) {
            if (k >= d)
                throw std::runtime_error("line " + std::to_string(lineno) + ": too many columns");
            std::size_t used = 0;
            try {
                x[k] = std::stod(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == 0 || used != tok.size() || !std::isfinite(x[k]))
                throw std::runtime_error("line " + std::to_string(lineno) + ": bad number '" +
                                         tok + "'");
            ++k;
        }
        if (k != d)
            throw std::runtime_error("line " + std::to_string(lineno) + ": expected " +
                                     std::to_string(d) + " columns");
        p.push_back(x);
    }
    if (p.empty()) throw std::runtime_error("polyline file has no vertices");
    return p;
}

void write_polyline_csv(std::ostream& os, const Polyline& p)
{
    for (int k = 1; k <= p.dim(); ++k) os << (k > 1 ? "," : "") << 'x' << k;
    os << '\n';
    for (std::size_t i = 0; i < p.size(); ++i) {
        for (int k = 0; k < p.dim(); ++k) os << (k ? "," : "") << fmt_double(p.vertex(i)[k]);
        os << '\n';
    }
}

}  // namespace sighyp
