#include "sighyp/bessel_cert.hpp"
#include "sighyp/format.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <type_traits>
#include <vector>

namespace sighyp {

namespace {

void check_order(double nu)
{
    const double twice = 2.0 * nu;
    if (!(nu >= 0.0) || twice != std::floor(twice) || twice > 400.0)
        throw std::invalid_argument("Bessel order must be a non-negative integer or half-integer");
}

bool is_integer(double x) { return x == std::floor(x); }

void check_dim(int d)
{
    if (d < 2 || d > 9) throw std::invalid_argument("dimension must satisfy 2 <= d <= 9");
}

void check_table_dim(int d)
{
    if (d < 2 || d > 8) throw std::invalid_argument("dimension must satisfy 2 <= d <= 8");
}

CertInterval pi_interval() { return CertInterval::around(std::numbers::pi); }

CertComplex pow_order_certified(const CertComplex& z, double e)
{
    const int k = static_cast<int>(std::floor(e));
    CertComplex r = pow_int(z, k);
    if (!is_integer(e)) r = r * sqrt(z);
    return r;
}

CertInterval remainder_bound_certified(double nu, double abs_z_hi, int n)
{
    if (!(abs_z_hi < 2.0 * (n + 1)))
        throw std::domain_error("remainder bound invalid: |z| >= 2(n+1) (|z| = " +
                                std::to_string(abs_z_hi) + ", n = " + std::to_string(n) + ")");
    const CertInterval half_x = CertInterval(abs_z_hi) * CertInterval(0.5);
    CertInterval num = pow_int(CertComplex{half_x, CertInterval(0.0)}, 2 * n).re;
    if (is_integer(nu)) {
        num = num * pow_int(CertComplex{half_x, CertInterval(0.0)}, static_cast<int>(nu)).re;
    } else {
        num = num *
              pow_int(CertComplex{half_x, CertInterval(0.0)}, static_cast<int>(std::floor(nu))).re *
              sqrt(half_x);
    }
    CertInterval fact(1.0);
    for (int j = 2; j <= n; ++j) fact = fact * CertInterval(static_cast<double>(j));
    const CertInterval g = gamma_half_integer_certified(n + nu + 1.0);
    const CertInterval q = sqr(CertInterval(abs_z_hi)) /
                           CertInterval(4.0 * (n + 1.0) * (n + 1.0));
    return num / (fact * g) / (CertInterval(1.0) - q);
}

// F(r) = r^p sum_k (-1)^k (c/2)^{2k} r^{2k} / (k! Gamma(k + mu + 1)), with
// its first two r-derivatives.
struct CJet {
    CplxVal v, d1, d2;
};

double rpow(double r, int e)
{
    if (e < 0) return 0.0;
    if (e == 0) return 1.0;
    return std::pow(r, e);
}

CJet scaled_series(double mu, CplxVal c, double r, int p)
{
    const CplxVal w = -(c * 0.5) * (c * 0.5);
    CplxVal t = 1.0 / gamma_half_integer(mu + 1.0);
    CJet out{};
    const double big = std::max(1.0, r);
    for (int k = 0; k < 400; ++k) {
        const int m = 2 * k + p;
        out.v += t * rpow(r, m);
        out.d1 += t * (static_cast<double>(m) * rpow(r, m - 1));
        out.d2 += t * (static_cast<double>(m) * (m - 1) * rpow(r, m - 2));
        const double scale = std::abs(out.v) + std::abs(out.d1) + std::abs(out.d2);
        if (k > 2 && std::abs(t) * std::pow(big, m) * (m * m + 1.0) < 1e-18 * scale &&
            static_cast<double>(k) > std::abs(c) * r)
            break;
        t *= w / ((k + 1.0) * (k + 1.0 + mu));
    }
    return out;
}

double im_of(const CplxVal& z) { return z.imag(); }

}  // namespace

DimConstants dim_constants(int d)
{
    check_dim(d);
    DimConstants k;
    k.d = d;
    k.nu = d / 2.0;
    const double sd = std::sqrt(static_cast<double>(d));
    k.upsilon = std::sqrt(static_cast<double>(-(d - 1) * (d - 9)));
    k.beta_p = {std::sqrt(2.0 * sd + d - 3.0), std::sqrt(std::max(0.0, 2.0 * sd - d + 3.0))};
    k.beta_m = std::conj(k.beta_p);
    k.eta_p = {d + 3.0, k.upsilon};
    k.eta_m = {d + 3.0, -k.upsilon};
    if (d == 2) {
        k.zeta = k.beta_p / 2.0;
        k.alpha = k.zeta + k.zeta * k.zeta * k.zeta / 2.0;
    }
    return k;
}

CertDimConstants dim_constants_certified(int d)
{
    check_dim(d);
    CertDimConstants k;
    k.d = d;
    const CertInterval sd = sqrt(CertInterval(static_cast<double>(d)));
    const CertInterval two(2.0);
    const CertInterval re = sqrt(two * sd + CertInterval(d - 3.0));
    const CertInterval arg = two * sd - CertInterval(d - 3.0);
    const CertInterval im = arg.hi() <= 0.0 ? CertInterval(0.0) : sqrt(arg);
    const CertInterval ups = sqrt(CertInterval(static_cast<double>(-(d - 1) * (d - 9))));
    k.beta_p = {re, im};
    k.beta_m = {re, -im};
    k.eta_p = {CertInterval(d + 3.0), ups};
    k.eta_m = {CertInterval(d + 3.0), -ups};
    return k;
}

double gamma_half_integer(double x)
{
    if (!(x > 0.0)) throw std::invalid_argument("gamma argument must be positive");
    check_order(x);
    if (is_integer(x)) {
        double g = 1.0;
        for (int j = 2; j < static_cast<int>(x); ++j) g *= j;
        return g;
    }
    double g = std::sqrt(std::numbers::pi);
    for (double j = 0.5; j < x - 0.75; j += 1.0) g *= j;
    return g;
}

CertInterval gamma_half_integer_certified(double x)
{
    if (!(x > 0.0)) throw std::invalid_argument("gamma argument must be positive");
    check_order(x);
    CertInterval g(1.0);
    if (is_integer(x)) {
        for (int j = 2; j < static_cast<int>(x); ++j) g = g * CertInterval(static_cast<double>(j));
        return g;
    }
    g = sqrt(pi_interval());
    for (double j = 0.5; j < x - 0.75; j += 1.0) g = g * CertInterval(j);
    return g;
}

CplxVal pow_order(CplxVal z, double e)
{
    check_order(e);
    CplxVal r = 1.0;
    for (int j = 0; j < static_cast<int>(std::floor(e)); ++j) r *= z;
    if (!is_integer(e)) r *= std::sqrt(z);
    return r;
}

CplxVal bessel_j(double nu, CplxVal z, int n)
{
    check_order(nu);
    if (n < 0) throw std::invalid_argument("number of Taylor terms must be >= 0");
    const CplxVal w = -(z * 0.5) * (z * 0.5);
    CplxVal t = 1.0 / gamma_half_integer(nu + 1.0);
    CplxVal s = 0.0;
    for (int k = 0; k <= n; ++k) {
        s += t;
        t *= w / ((k + 1.0) * (k + 1.0 + nu));
    }
    return pow_order(z * 0.5, nu) * s;
}

CplxVal bessel_j(double nu, CplxVal z)
{
    check_order(nu);
    const CplxVal w = -(z * 0.5) * (z * 0.5);
    CplxVal t = 1.0 / gamma_half_integer(nu + 1.0);
    CplxVal s = 0.0;
    for (int k = 0; k < 500; ++k) {
        s += t;
        if (static_cast<double>(k) > std::abs(w) && std::abs(t) < 1e-18 * std::abs(s)) break;
        t *= w / ((k + 1.0) * (k + 1.0 + nu));
    }
    return pow_order(z * 0.5, nu) * s;
}

CertComplex bessel_j_certified(double nu, const CertComplex& z, int n)
{
    check_order(nu);
    if (n < 0) throw std::invalid_argument("number of Taylor terms must be >= 0");
    const CertComplex h = CertInterval(0.5) * z;
    const CertComplex w = h * h;
    std::vector<CertInterval> c(static_cast<std::size_t>(n) + 1);
    c[0] = CertInterval(1.0) / gamma_half_integer_certified(nu + 1.0);
    for (int k = 0; k < n; ++k)
        c[k + 1] = c[k] / CertInterval((k + 1.0) * (k + 1.0 + nu));
    CertComplex s{c[n], CertInterval(0.0)};
    for (int k = n - 1; k >= 0; --k) {
        const CertComplex ws = w * s;
        s = {c[k] - ws.re, -ws.im};
    }
    return pow_order_certified(h, nu) * s;
}

double remainder_bound(double nu, double abs_z, int n)
{
    check_order(nu);
    if (n < 0) throw std::invalid_argument("n must be >= 0");
    if (!(abs_z >= 0.0)) throw std::invalid_argument("|z| must be >= 0");
    if (!(abs_z < 2.0 * (n + 1)))
        throw std::domain_error("remainder bound invalid: |z| >= 2(n+1)");
    double fact = 1.0;
    for (int j = 2; j <= n; ++j) fact *= j;
    const double x2 = abs_z / 2.0;
    const double g = 1.0 / (1.0 - abs_z * abs_z / (4.0 * (n + 1.0) * (n + 1.0)));
    return std::pow(x2, 2.0 * n + nu) / (fact * gamma_half_integer(n + nu + 1.0)) * g;
}

double remainder_bound(double nu, CplxVal z, int n) { return remainder_bound(nu, std::abs(z), n); }

double remainder_bound_table(double nu, double abs_z, int n)
{
    check_order(nu);
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    if (!(abs_z < 2.0 * (n + 1)))
        throw std::domain_error("remainder bound invalid: |z| >= 2(n+1)");
    double fact = 1.0;
    for (int j = 2; j <= n; ++j) fact *= j;
    const double g = 1.0 / (1.0 - abs_z * abs_z / (4.0 * (n + 1.0) * (n + 1.0)));
    const double p = std::pow(abs_z / 2.0, 2.0 * n + nu) / (fact * fact) * g;
    if (is_integer(nu)) return p / std::pow(static_cast<double>(n), nu);
    return 2.0 / std::sqrt(std::numbers::pi) * p / std::pow(static_cast<double>(n), nu - 0.5);
}

double theta(double lambda, int d)
{
    const DimConstants k = dim_constants(d);
    const CplxVal z = lambda * k.beta_p / 2.0;
    return im_of(k.eta_m * k.beta_m * std::conj(bessel_j(k.nu - 1.0, z)) * bessel_j(k.nu, z));
}

double theta_truncated(double lambda, int d, int n)
{
    check_table_dim(d);
    const DimConstants k = dim_constants(d);
    const CplxVal z = lambda * k.beta_p / 2.0;
    return im_of(k.eta_m * k.beta_m * std::conj(bessel_j(k.nu - 1.0, z, n)) *
                 bessel_j(k.nu, z, n));
}

CertInterval theta_certified(const CertInterval& lambda, int d, int n)
{
    check_table_dim(d);
    const double nu = d / 2.0;
    const CertDimConstants k = dim_constants_certified(d);
    const CertComplex z = (lambda * CertInterval(0.5)) * k.beta_p;
    const CertComplex ja = bessel_j_certified(nu - 1.0, z, n);
    const CertComplex jb = bessel_j_certified(nu, z, n);
    const CertComplex em = k.eta_m * k.beta_m;
    const CertInterval core = (em * conj(ja) * jb).im;
    const double x = abs(z).hi();
    const CertInterval ea = remainder_bound_certified(nu - 1.0, x, n + 1);
    const CertInterval eb = remainder_bound_certified(nu, x, n + 1);
    const CertInterval err =
        abs(em) * (eb * abs(ja) + ea * abs(jb) + ea * eb);
    return core + symmetric(err.hi());
}

double numerator_ball(double lambda, int d)
{
    const DimConstants k = dim_constants(d);
    const CplxVal v = k.eta_m * k.beta_m * pow_order(lambda * k.beta_m / 4.0, k.nu - 1.0) *
                      bessel_j(k.nu, lambda * k.beta_p / 2.0);
    return v.imag() / gamma_half_integer(k.nu);
}

double numerator_ball_truncated(double lambda, int d, int n)
{
    check_table_dim(d);
    const DimConstants k = dim_constants(d);
    const CplxVal v = k.eta_m * k.beta_m * pow_order(lambda * k.beta_m / 4.0, k.nu - 1.0) *
                      bessel_j(k.nu, lambda * k.beta_p / 2.0, n);
    return v.imag() / gamma_half_integer(k.nu);
}

CertInterval numerator_ball_certified(const CertInterval& lambda, int d, int n)
{
    check_table_dim(d);
    const double nu = d / 2.0;
    const CertDimConstants k = dim_constants_certified(d);
    const CertInterval g = gamma_half_integer_certified(nu);
    const CertComplex pre =
        k.eta_m * k.beta_m * pow_order_certified((lambda * CertInterval(0.25)) * k.beta_m, nu - 1.0);
    const CertComplex z = (lambda * CertInterval(0.5)) * k.beta_p;
    const CertInterval core = (pre * bessel_j_certified(nu, z, n)).im / g;
    const CertInterval err = abs(pre) * remainder_bound_certified(nu, abs(z).hi(), n + 1) / g;
    return core + symmetric(err.hi());
}

std::pair<double, double> numerators_general(double mu, int d)
{
    const DimConstants k = dim_constants(d);
    const double g = gamma_half_integer(k.nu);
    const CplxVal kk = k.eta_p * k.beta_p * k.eta_m * k.beta_m / (8.0 * d);
    const CplxVal n2 = kk * bessel_j(k.nu - 1.0, mu * k.beta_m / 2.0) *
                       pow_order(mu * k.beta_p / 4.0, k.nu - 1.0);
    return {numerator_ball(mu, d), n2.imag() / g};
}

std::pair<double, double> numerators_general_truncated(double mu, int d, int n)
{
    check_table_dim(d);
    const DimConstants k = dim_constants(d);
    const double g = gamma_half_integer(k.nu);
    const CplxVal kk = k.eta_p * k.beta_p * k.eta_m * k.beta_m / (8.0 * d);
    const CplxVal n2 = kk * bessel_j(k.nu - 1.0, mu * k.beta_m / 2.0, n) *
                       pow_order(mu * k.beta_p / 4.0, k.nu - 1.0);
    return {numerator_ball_truncated(mu, d, n), n2.imag() / g};
}

std::pair<CertInterval, CertInterval> numerators_general_certified(const CertInterval& mu, int d,
                                                                   int n)
{
    check_table_dim(d);
    const double nu = d / 2.0;
    const CertDimConstants k = dim_constants_certified(d);
    const CertInterval g = gamma_half_integer_certified(nu);
    const CertComplex kk = CertInterval(1.0 / 8.0) * (k.eta_p * k.beta_p * k.eta_m * k.beta_m);
    const CertComplex kd{kk.re / CertInterval(static_cast<double>(d)),
                         kk.im / CertInterval(static_cast<double>(d))};
    const CertComplex pre =
        kd * pow_order_certified((mu * CertInterval(0.25)) * k.beta_p, nu - 1.0);
    const CertComplex z = (mu * CertInterval(0.5)) * k.beta_m;
    const CertInterval core = (pre * bessel_j_certified(nu - 1.0, z, n)).im / g;
    const CertInterval err =
        abs(pre) * remainder_bound_certified(nu - 1.0, abs(z).hi(), n + 1) / g;
    return {numerator_ball_certified(mu, d, n), core + symmetric(err.hi())};
}

BallJets ball_closed_form_jets(double r, double lambda, int d)
{
    if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("r must lie in [0, 1]");
    const DimConstants k = dim_constants(d);
    const CplxVal c = lambda * k.beta_p / 2.0;  // argument of J is c r
    const CplxVal jb = bessel_j(k.nu, c);
    const double th = theta(lambda, d);
    // Theta is the imaginary part of a product; compare against its modulus.
    const double scale = std::abs(k.eta_m * k.beta_m) * std::abs(bessel_j(k.nu - 1.0, c)) * std::abs(jb);
    if (!(std::abs(th) > 1e-12 * scale))
        throw PoleError("Theta(lambda) vanishes (Theta = " + fmt_double(th) + ")", th);
    const CplxVal pre1 = 8.0 * d * std::conj(jb) * pow_order(c / 2.0, k.nu);
    const CplxVal pre2 = k.eta_m * k.beta_m * jb;
    const CplxVal sc = std::conj(pow_order(c / 2.0, k.nu - 1.0));
    const CJet f1 = scaled_series(k.nu, c, r, 1);
    const CJet f0 = scaled_series(k.nu - 1.0, c, r, 0);
    BallJets j;
    j.h1 = {(pre1 * f1.v).imag() / th, (pre1 * f1.d1).imag() / th, (pre1 * f1.d2).imag() / th};
    j.hd1 = {(pre2 * sc * std::conj(f0.v)).imag() / th, (pre2 * sc * std::conj(f0.d1)).imag() / th,
             (pre2 * sc * std::conj(f0.d2)).imag() / th};
    return j;
}

double h1_closed_form(double r, double lambda, int d)
{
    return ball_closed_form_jets(r, lambda, d).h1.v;
}

double hd1_closed_form(double r, double lambda, int d)
{
    return ball_closed_form_jets(r, lambda, d).hd1.v;
}

BallJets h_general_domain_jets(double r, double eps, double lambda, int d, double p, double q)
{
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be > 0");
    if (!(r >= 0.0 && r <= eps)) throw std::invalid_argument("r must lie in [0, eps]");
    const DimConstants k = dim_constants(d);
    const CplxVal c = lambda * k.beta_p / 2.0;  // argument of J is c r
    const CplxVal sa = pow_order(c / 2.0, k.nu);
    const CplxVal sb = -k.eta_p * k.beta_p * pow_order(c / 2.0, k.nu - 1.0) / (4.0 * d);
    const CplxVal a = sa * scaled_series(k.nu, c, eps, 1).v;
    const CplxVal b = sb * scaled_series(k.nu - 1.0, c, eps, 0).v;
    // h1 = 2 Re(C a), hd1 = Re(C b) with C = x + i y.
    const double det = 2.0 * (a * std::conj(b)).imag();
    if (std::abs(det) < 1e-13 * std::abs(a) * std::abs(b) || det == 0.0)
        throw PoleError("boundary determinant vanishes (det = " + std::to_string(det) + ")", det);
    const double x = (-p * b.imag() + 2.0 * a.imag() * q) / det;
    const double y = (2.0 * a.real() * q - b.real() * p) / det;
    const CplxVal C{x, y};
    const CJet f1 = scaled_series(k.nu, c, r, 1);
    const CJet f0 = scaled_series(k.nu - 1.0, c, r, 0);
    BallJets j;
    j.h1 = {2.0 * (C * sa * f1.v).real(), 2.0 * (C * sa * f1.d1).real(),
            2.0 * (C * sa * f1.d2).real()};
    j.hd1 = {(C * sb * f0.v).real(), (C * sb * f0.d1).real(), (C * sb * f0.d2).real()};
    return j;
}

GeneralSolution h_general_domain(double r, double eps, double lambda, int d, double p, double q)
{
    const BallJets j = h_general_domain_jets(r, eps, lambda, d, p, q);
    return {j.h1.v, j.hd1.v};
}

double hd1_center_general(double eps, double lambda, int d, double p, double q)
{
    return h_general_domain_jets(0.0, eps, lambda, d, p, q).hd1.v;
}

std::pair<double, double> ode_residual(const BallJets& j, double r, double lambda, int d)
{
    if (!(r > 0.0)) throw std::invalid_argument("residual needs r > 0");
    const double dm = d - 1.0;
    const double a = j.h1.d2 + dm / r * j.h1.d1 - dm * j.h1.v / (r * r) + 2.0 * lambda * j.hd1.d1 +
                     lambda * lambda * j.h1.v;
    const double b = j.hd1.d2 + dm / r * j.hd1.d1 + 2.0 * lambda * (dm / r * j.h1.v + j.h1.d1) +
                     d * lambda * lambda * j.hd1.v;
    return {a, b};
}

namespace {

struct Ansatz2d {
    CplxVal u, v;
    CplxVal alpha, zeta;
};

Ansatz2d fit_ansatz_2d(double lambda, double eps, double b, double c)
{
    const DimConstants k = dim_constants(2);
    const CplxVal m = k.alpha * bessel_j(1.0, lambda * k.zeta * eps);
    const CplxVal n = bessel_j(0.0, lambda * k.zeta * eps);
    const CplxVal det = m * std::conj(n) - std::conj(m) * n;
    if (std::abs(det) < 1e-13 * std::abs(m) * std::abs(n))
        throw PoleError("2-D ansatz determinant vanishes", std::abs(det));
    return {(b * std::conj(n) - std::conj(m) * c) / det, (m * c - n * b) / det, k.alpha, k.zeta};
}

}  // namespace

GeneralSolution ansatz_2d(double r, double lambda, double eps, double b, double c)
{
    const Ansatz2d f = fit_ansatz_2d(lambda, eps, b, c);
    const CplxVal m = f.alpha * bessel_j(1.0, lambda * f.zeta * r);
    const CplxVal n = bessel_j(0.0, lambda * f.zeta * r);
    return {(f.u * m + f.v * std::conj(m)).real(), (f.u * n + f.v * std::conj(n)).real()};
}

double ansatz_2d_center(double lambda, double eps, double b, double c)
{
    const Ansatz2d f = fit_ansatz_2d(lambda, eps, b, c);
    return (f.u + f.v).real();
}

// ---- d = 9 --------------------------------------------------------------

namespace {

using LD = long double;

template <class S>
struct Jet2 {
    S v{}, d{}, dd{};
};

template <class S>
Jet2<S> operator+(Jet2<S> a, const Jet2<S>& b)
{
    return {a.v + b.v, a.d + b.d, a.dd + b.dd};
}
template <class S>
Jet2<S> operator-(Jet2<S> a, const Jet2<S>& b)
{
    return {a.v - b.v, a.d - b.d, a.dd - b.dd};
}
template <class S>
Jet2<S> operator-(const Jet2<S>& a)
{
    return {-a.v, -a.d, -a.dd};
}
template <class S>
Jet2<S> operator*(const Jet2<S>& a, const Jet2<S>& b)
{
    return {a.v * b.v, a.d * b.v + a.v * b.d, a.dd * b.v + 2 * a.d * b.d + a.v * b.dd};
}
template <class S>
Jet2<S> operator/(const Jet2<S>& a, const Jet2<S>& b)
{
    Jet2<S> q;
    q.v = a.v / b.v;
    q.d = (a.d - q.v * b.d) / b.v;
    q.dd = (a.dd - 2 * q.d * b.d - q.v * b.dd) / b.v;
    return q;
}
template <class S>
Jet2<S> operator*(S s, const Jet2<S>& a)
{
    return {s * a.v, s * a.d, s * a.dd};
}
template <class S>
Jet2<S> operator+(const Jet2<S>& a, S s)
{
    return {a.v + s, a.d, a.dd};
}
template <class S>
Jet2<S> sin(const Jet2<S>& a)
{
    const S s = std::sin(a.v), c = std::cos(a.v);
    return {s, c * a.d, c * a.dd - s * a.d * a.d};
}
template <class S>
Jet2<S> cos(const Jet2<S>& a)
{
    const S s = std::sin(a.v), c = std::cos(a.v);
    return {c, -s * a.d, -s * a.dd - c * a.d * a.d};
}

// Scalar overloads so the formulas below read the same for LD and Jet2<LD>.
inline LD sin(LD x) { return std::sin(x); }
inline LD cos(LD x) { return std::cos(x); }

template <class T>
T lift(LD x)
{
    if constexpr (std::is_same_v<T, LD>)
        return x;
    else
        return T{x, 0, 0};
}

template <class T>
T d9_h1(const T& t, LD l, LD C2, LD C4)
{
    const LD s3 = std::sqrt(3.0L);
    const T t2 = t * t, t4 = t2 * t2, t8 = t4 * t4;
    const T arg = (l * s3) * t;
    const T p1 = (l * l * (l * l * C4 + C2)) * t4 + (-35 * l * l * C4 - 5 * C2) * t2 +
                 lift<T>(105 * C4);
    const T p2 = (l * l * (2.5L * l * l * C4 + C2)) * t4 +
                 (-70 * l * l * C4 / 3 - 5 * C2 / 6) * t2 + lift<T>(35 * C4 / 2);
    return ((-3 * l) * (t * p1 * cos(arg)) + (6 * s3) * (sin(arg) * p2)) / t8;
}

template <class T>
T d9_hd(const T& t, LD l, LD C2, LD C4)
{
    const LD s3 = std::sqrt(3.0L);
    const LD l2 = l * l, l4 = l2 * l2, l6 = l4 * l2;
    const T t2 = t * t, t4 = t2 * t2, t7 = t4 * t2 * t;
    const T arg = (l * s3) * t;
    const T q1 = (l6 * C4) * t4 + (l4 * C2) * t4 + (-13 * l4 * C4) * t2 + (5 * l2 * C2) * t2 +
                 lift<T>(10 * l2 * C4 - 5 * C2);
    const T q2 = (l4 * C4) * t2 + lift<T>(-10 * l2 * C4 / 3 + 5 * C2 / 3);
    return (-s3 * (q1 * sin(arg)) + (-9 * l) * (t * cos(arg) * q2)) / (l * t7);
}

struct D9Ld {
    LD c2, c4, w;
};

D9Ld d9_constants_ld(LD l)
{
    const LD s3 = std::sqrt(3.0L);
    const LD c = std::cos(l * s3), s = std::sin(l * s3);
    const LD l2 = l * l, l4 = l2 * l2, l6 = l4 * l2, l8 = l4 * l4;
    const LD w = (-324 * l6 + 4410 * l4 - 8550 * l2 + 1575) * c * c -
                 18 * l * s3 * s * (l6 - 50 * l4 + 250 * l2 - 175) * c + 27 * l8 + 54 * l6 -
                 2385 * l4 + 3825 * l2 - 1575;
    if (w == 0) throw PoleError("d = 9 Wronskian vanishes", 0.0);
    const LD c2 = 3 * l / w * ((l4 * l - 35 * l2 * l + 105 * l) * c - 5 * (l4 - 28 * l2 / 3 + 7) * s * s3);
    const LD c4 = -3 / w * l * ((l2 * l - 5 * l) * c - 2 * (l2 - 5.0L / 6) * s * s3);
    return {c2, c4, w};
}

}  // namespace

D9Constants d9_constants(double lambda)
{
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
    const D9Ld k = d9_constants_ld(lambda);
    if (std::abs(k.w) < 1e-12L * (1 + std::pow(static_cast<LD>(lambda), 8)))
        throw PoleError("d = 9 Wronskian vanishes", static_cast<double>(k.w));
    return {static_cast<double>(k.c2), static_cast<double>(k.c4), static_cast<double>(k.w)};
}

GeneralSolution d9_solution(double r, double lambda, const D9Constants& k)
{
    if (!(r > 0.0 && r <= 1.0)) throw std::invalid_argument("r must lie in ]0, 1]");
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be > 0");
    const D9Ld kl = d9_constants_ld(lambda);
    // Prefer the extended-precision constants when they match the caller's.
    const bool same = static_cast<double>(kl.c2) == k.c2 && static_cast<double>(kl.c4) == k.c4;
    const LD c2 = same ? kl.c2 : static_cast<LD>(k.c2);
    const LD c4 = same ? kl.c4 : static_cast<LD>(k.c4);
    return {static_cast<double>(d9_h1<LD>(r, lambda, c2, c4)),
            static_cast<double>(d9_hd<LD>(r, lambda, c2, c4))};
}

std::pair<double, double> d9_residual(double r, double lambda)
{
    if (!(r > 0.0 && r <= 1.0)) throw std::invalid_argument("r must lie in ]0, 1]");
    const D9Ld k = d9_constants_ld(lambda);
    const Jet2<LD> t{static_cast<LD>(r), 1, 0};
    const Jet2<LD> h = d9_h1(t, lambda, k.c2, k.c4);
    const Jet2<LD> g = d9_hd(t, lambda, k.c2, k.c4);
    const LD R = r, L = lambda;
    const LD a = h.dd + 8 / R * h.d - 8 * h.v / (R * R) + 2 * L * g.d + L * L * h.v;
    const LD b = g.dd + 8 / R * g.d + 2 * L * (8 / R * h.v + h.d) + 9 * L * L * g.v;
    return {static_cast<double>(a), static_cast<double>(b)};
}

}  // namespace sighyp
