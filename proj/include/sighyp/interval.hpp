#pragma once

#include <string>

namespace sighyp {

// Closed interval with double endpoints. Every operation rounds its computed
// endpoints outward by one ulp, which encloses the exact result under
// round-to-nearest arithmetic.
class CertInterval {
public:
    CertInterval() = default;
    CertInterval(double x) : lo_(x), hi_(x) {}  // NOLINT: implicit from exact doubles
    CertInterval(double lo, double hi);

    // Smallest interval containing the rounded value x and its two neighbours.
    static CertInterval around(double x);
    static CertInterval hull(const CertInterval& a, const CertInterval& b);

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    double mid() const { return 0.5 * (lo_ + hi_); }
    double width() const { return hi_ - lo_; }
    double mag() const;  // max |x| over the interval
    bool contains(double x) const { return lo_ <= x && x <= hi_; }
    bool positive() const { return lo_ > 0.0; }
    bool negative() const { return hi_ < 0.0; }

    std::string str() const;

private:
    double lo_ = 0.0;
    double hi_ = 0.0;
};

CertInterval operator+(const CertInterval& a, const CertInterval& b);
CertInterval operator-(const CertInterval& a, const CertInterval& b);
CertInterval operator-(const CertInterval& a);
CertInterval operator*(const CertInterval& a, const CertInterval& b);
CertInterval operator/(const CertInterval& a, const CertInterval& b);
CertInterval sqrt(const CertInterval& a);
CertInterval sqr(const CertInterval& a);
CertInterval abs(const CertInterval& a);
// [-r, r] for r >= 0.
CertInterval symmetric(double r);

struct CertComplex {
    CertInterval re;
    CertInterval im;
};

CertComplex operator+(const CertComplex& a, const CertComplex& b);
CertComplex operator-(const CertComplex& a, const CertComplex& b);
CertComplex operator*(const CertComplex& a, const CertComplex& b);
CertComplex operator*(const CertInterval& s, const CertComplex& a);
CertComplex conj(const CertComplex& a);
CertInterval abs(const CertComplex& a);
// Principal square root; requires the real part to be positive.
CertComplex sqrt(const CertComplex& a);
CertComplex pow_int(CertComplex a, int k);

}  // namespace sighyp
