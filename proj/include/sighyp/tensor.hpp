#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace sighyp {

// Letters are 1-based, as in (i1, ..., in) with ik in {1..d}.
using Word = std::vector<int>;

inline constexpr std::size_t kMaxCoefficients = 100'000'000;

std::size_t word_index(const Word& w, int d);
Word word_from_index(std::size_t index, int n, int d);
// "1.2.1"; empty for the empty word.
std::string word_to_string(const Word& w);
Word word_from_string(const std::string& s);

// Dense truncated tensor series in T^(N)(R^d); level n holds d^n
// coefficients in lexicographic word order.
class TruncatedTensor {
public:
    TruncatedTensor() = default;
    TruncatedTensor(int dim, int level);

    static TruncatedTensor zero(int dim, int level) { return {dim, level}; }
    static TruncatedTensor unit(int dim, int level);

    int dim() const { return d_; }
    int level() const { return N_; }
    std::size_t level_size(int n) const { return offset_[n + 1] - offset_[n]; }
    std::size_t total_size() const { return c_.size(); }

    std::span<double> operator[](int n) { return {c_.data() + offset_[n], level_size(n)}; }
    std::span<const double> operator[](int n) const
    {
        return {c_.data() + offset_[n], level_size(n)};
    }

    double& at(const Word& w);
    double at(const Word& w) const;

    std::vector<double>& raw() { return c_; }
    const std::vector<double>& raw() const { return c_; }

private:
    int d_ = 1;
    int N_ = 0;
    std::vector<std::size_t> offset_{0, 1};
    std::vector<double> c_{0.0};
};

TruncatedTensor add(const TruncatedTensor& a, const TruncatedTensor& b);
TruncatedTensor scale(double lambda, const TruncatedTensor& a);
TruncatedTensor tensor_mul(const TruncatedTensor& a, const TruncatedTensor& b);
TruncatedTensor dilation(double lambda, const TruncatedTensor& a);
double l1_norm_level(const TruncatedTensor& a, int n);
bool all_finite(const TruncatedTensor& a);

void write_tensor_csv(std::ostream& os, const TruncatedTensor& t);

}  // namespace sighyp
