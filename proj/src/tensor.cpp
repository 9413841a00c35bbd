#include "sighyp/tensor.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "sighyp/format.hpp"

namespace sighyp {

namespace {

void require_same_shape(const TruncatedTensor& a, const TruncatedTensor& b)
{
    if (a.dim() != b.dim() || a.level() != b.level())
        throw std::invalid_argument("tensor shape mismatch: (d=" + std::to_string(a.dim()) +
                                    ",N=" + std::to_string(a.level()) + ") vs (d=" +
                                    std::to_string(b.dim()) + ",N=" + std::to_string(b.level()) +
                                    ")");
}

}  // namespace

std::size_t word_index(const Word& w, int d)
{
    std::size_t idx = 0;
    for (int letter : w) {
        if (letter < 1 || letter > d)
            throw std::out_of_range("word letter " + std::to_string(letter) + " outside 1.." +
                                    std::to_string(d));
        idx = idx * static_cast<std::size_t>(d) + static_cast<std::size_t>(letter - 1);
    }
    return idx;
}

Word word_from_index(std::size_t index, int n, int d)
{
    Word w(n);
    for (int k = n - 1; k >= 0; --k) {
        w[k] = static_cast<int>(index % static_cast<std::size_t>(d)) + 1;
        index /= static_cast<std::size_t>(d);
    }
    return w;
}

std::string word_to_string(const Word& w)
{
    std::string s;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k) s += '.';
        s += std::to_string(w[k]);
    }
    return s;
}

Word word_from_string(const std::string& s)
{
    Word w;
    if (s.empty()) return w;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, '.')) w.push_back(std::stoi(tok));
    return w;
}

TruncatedTensor::TruncatedTensor(int dim, int level) : d_(dim), N_(level)
{
    if (dim < 1) throw std::invalid_argument("tensor dimension must be >= 1");
    if (level < 0) throw std::invalid_argument("truncation level must be >= 0");
    offset_.assign(static_cast<std::size_t>(level) + 2, 0);
    std::size_t width = 1;
    for (int n = 0; n <= level; ++n) {
        offset_[n + 1] = offset_[n] + width;
        if (offset_[n + 1] > kMaxCoefficients)
            throw std::length_error("truncated tensor (d=" + std::to_string(dim) +
                                    ", N=" + std::to_string(level) +
                                    ") exceeds the coefficient budget");
        width *= static_cast<std::size_t>(dim);
    }
    c_.assign(offset_.back(), 0.0);
}

TruncatedTensor TruncatedTensor::unit(int dim, int level)
{
    TruncatedTensor t(dim, level);
    t.c_[0] = 1.0;
    return t;
}

double& TruncatedTensor::at(const Word& w)
{
    if (static_cast<int>(w.size()) > N_) throw std::out_of_range("word longer than truncation");
    return c_[offset_[w.size()] + word_index(w, d_)];
}

double TruncatedTensor::at(const Word& w) const
{
    if (static_cast<int>(w.size()) > N_) throw std::out_of_range("word longer than truncation");
    return c_[offset_[w.size()] + word_index(w, d_)];
}

TruncatedTensor add(const TruncatedTensor& a, const TruncatedTensor& b)
{
    require_same_shape(a, b);
    TruncatedTensor r = a;
    for (std::size_t i = 0; i < r.raw().size(); ++i) r.raw()[i] += b.raw()[i];
    return r;
}

TruncatedTensor scale(double lambda, const TruncatedTensor& a)
{
    TruncatedTensor r = a;
    for (double& x : r.raw()) x *= lambda;
    return r;
}

TruncatedTensor tensor_mul(const TruncatedTensor& a, const TruncatedTensor& b)
{
    require_same_shape(a, b);
    const int N = a.level();
    TruncatedTensor r(a.dim(), N);
    for (int n = 0; n <= N; ++n) {
        auto out = r[n];
        for (int k = 0; k <= n; ++k) {
            auto left = a[k];
            auto right = b[n - k];
            const std::size_t rs = right.size();
            for (std::size_t i = 0; i < left.size(); ++i) {
                const double x = left[i];
                if (x == 0.0) continue;
                double* dst = out.data() + i * rs;
                for (std::size_t j = 0; j < rs; ++j) dst[j] += x * right[j];
            }
        }
    }
    return r;
}

TruncatedTensor dilation(double lambda, const TruncatedTensor& a)
{
    TruncatedTensor r = a;
    double f = 1.0;
    for (int n = 0; n <= a.level(); ++n) {
        for (double& x : r[n]) x *= f;
        f *= lambda;
    }
    return r;
}

double l1_norm_level(const TruncatedTensor& a, int n)
{
    if (n < 0 || n > a.level())
        throw std::out_of_range("level " + std::to_string(n) + " outside 0.." +
                                std::to_string(a.level()));
    double s = 0.0;
    for (double x : a[n]) s += std::abs(x);
    return s;
}

bool all_finite(const TruncatedTensor& a)
{
    for (double x : a.raw())
        if (!std::isfinite(x)) return false;
    return true;
}

void write_tensor_csv(std::ostream& os, const TruncatedTensor& t)
{
    os << "level,word,value\n";
    for (int n = 0; n <= t.level(); ++n) {
        auto lv = t[n];
        for (std::size_t i = 0; i < lv.size(); ++i)
            os << n << ',' << word_to_string(word_from_index(i, n, t.dim())) << ','
               << fmt_double(lv[i]) << '\n';
    }
}

}  // namespace sighyp
