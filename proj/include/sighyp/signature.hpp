#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "sighyp/tensor.hpp"

namespace sighyp {

// Piecewise-linear path; vertices stored row-major.
class Polyline {
public:
    Polyline() = default;
    explicit Polyline(int dim) : d_(dim) {}
    Polyline(int dim, std::vector<double> coords);

    int dim() const { return d_; }
    std::size_t size() const { return d_ ? xs_.size() / static_cast<std::size_t>(d_) : 0; }
    bool empty() const { return xs_.empty(); }

    std::span<const double> vertex(std::size_t i) const
    {
        return {xs_.data() + i * static_cast<std::size_t>(d_), static_cast<std::size_t>(d_)};
    }
    std::span<double> vertex(std::size_t i)
    {
        return {xs_.data() + i * static_cast<std::size_t>(d_), static_cast<std::size_t>(d_)};
    }
    std::span<const double> front() const { return vertex(0); }
    std::span<const double> back() const { return vertex(size() - 1); }

    void push_back(std::span<const double> x);
    void reserve(std::size_t n) { xs_.reserve(n * static_cast<std::size_t>(d_)); }
    void clear() { xs_.clear(); }

    const std::vector<double>& coords() const { return xs_; }

    double one_variation() const;

private:
    int d_ = 0;
    std::vector<double> xs_;
};

TruncatedTensor segment_signature(std::span<const double> v, int level);

// s <- s (x) exp(v), in place; v has s.dim() entries.
void mul_segment_inplace(TruncatedTensor& s, std::span<const double> v);

TruncatedTensor polyline_signature(const Polyline& p, int level);

Polyline reverse(const Polyline& p);
// Joins q after p; a shared endpoint is not duplicated.
Polyline concat(const Polyline& p, const Polyline& q);

// Header "x1,...,xd", one vertex per row. Errors carry the line number.
Polyline read_polyline_csv(std::istream& is);
void write_polyline_csv(std::ostream& os, const Polyline& p);

}  // namespace sighyp
