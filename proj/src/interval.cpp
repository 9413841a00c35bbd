#include "sighyp/interval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace sighyp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double down(double x) { return std::nextafter(x, -kInf); }
double up(double x) { return std::nextafter(x, kInf); }

}  // namespace

CertInterval::CertInterval(double lo, double hi) : lo_(lo), hi_(hi)
{
    if (!(lo <= hi)) throw std::invalid_argument("interval with lo > hi");
}

CertInterval CertInterval::around(double x) { return {down(x), up(x)}; }

CertInterval CertInterval::hull(const CertInterval& a, const CertInterval& b)
{
    return {std::min(a.lo_, b.lo_), std::max(a.hi_, b.hi_)};
}

double CertInterval::mag() const { return std::max(std::abs(lo_), std::abs(hi_)); }

std::string CertInterval::str() const
{
    char buf[96];
    std::snprintf(buf, sizeof buf, "[%.17g, %.17g]", lo_, hi_);
    return buf;
}

CertInterval operator+(const CertInterval& a, const CertInterval& b)
{
    return {down(a.lo() + b.lo()), up(a.hi() + b.hi())};
}

CertInterval operator-(const CertInterval& a, const CertInterval& b)
{
    return {down(a.lo() - b.hi()), up(a.hi() - b.lo())};
}

CertInterval operator-(const CertInterval& a) { return {-a.hi(), -a.lo()}; }

CertInterval operator*(const CertInterval& a, const CertInterval& b)
{
    const double p[4] = {a.lo() * b.lo(), a.lo() * b.hi(), a.hi() * b.lo(), a.hi() * b.hi()};
    return {down(*std::min_element(p, p + 4)), up(*std::max_element(p, p + 4))};
}

CertInterval operator/(const CertInterval& a, const CertInterval& b)
{
    if (b.contains(0.0)) throw std::domain_error("interval division by an interval containing 0");
    const double p[4] = {a.lo() / b.lo(), a.lo() / b.hi(), a.hi() / b.lo(), a.hi() / b.hi()};
    return {down(*std::min_element(p, p + 4)), up(*std::max_element(p, p + 4))};
}

CertInterval sqrt(const CertInterval& a)
{
    if (a.hi() < 0.0) throw std::domain_error("interval sqrt of a negative interval");
    return {std::max(0.0, down(std::sqrt(std::max(a.lo(), 0.0)))), up(std::sqrt(a.hi()))};
}

CertInterval sqr(const CertInterval& a)
{
    const double l = a.lo() * a.lo(), h = a.hi() * a.hi();
    if (a.contains(0.0)) return {0.0, up(std::max(l, h))};
    return {down(std::min(l, h)), up(std::max(l, h))};
}

CertInterval abs(const CertInterval& a)
{
    if (a.lo() >= 0.0) return a;
    if (a.hi() <= 0.0) return -a;
    return {0.0, a.mag()};
}

CertInterval symmetric(double r)
{
    if (!(r >= 0.0)) throw std::invalid_argument("negative radius");
    return {-r, r};
}

CertComplex operator+(const CertComplex& a, const CertComplex& b)
{
    return {a.re + b.re, a.im + b.im};
}

CertComplex operator-(const CertComplex& a, const CertComplex& b)
{
    return {a.re - b.re, a.im - b.im};
}

CertComplex operator*(const CertComplex& a, const CertComplex& b)
{
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

CertComplex operator*(const CertInterval& s, const CertComplex& a) { return {s * a.re, s * a.im}; }

CertComplex conj(const CertComplex& a) { return {a.re, -a.im}; }

CertInterval abs(const CertComplex& a) { return sqrt(sqr(a.re) + sqr(a.im)); }

CertComplex sqrt(const CertComplex& a)
{
    if (!a.re.positive()) throw std::domain_error("complex interval sqrt needs Re > 0");
    const CertInterval m = abs(a);
    const CertInterval half(0.5);
    const CertInterval re = sqrt(half * (m + a.re));
    // im = y / (2 re) avoids the cancellation in sqrt((m - x) / 2).
    const CertInterval im = a.im / (CertInterval(2.0) * re);
    return {re, im};
}

CertComplex pow_int(CertComplex a, int k)
{
    if (k < 0) throw std::invalid_argument("negative power");
    CertComplex r{CertInterval(1.0), CertInterval(0.0)};
    while (k) {
        if (k & 1) r = r * a;
        a = a * a;
        k >>= 1;
    }
    return r;
}

}  // namespace sighyp
