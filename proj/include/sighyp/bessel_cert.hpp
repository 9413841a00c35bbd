#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

#include "sighyp/interval.hpp"

namespace sighyp {

using CplxVal = std::complex<double>;

// Raised when a solution formula is evaluated at (or numerically at) a zero
// of its determinant.
class PoleError : public std::runtime_error {
public:
    PoleError(const std::string& what, double det) : std::runtime_error(what), det_(det) {}
    double determinant() const { return det_; }

private:
    double det_;
};

struct DimConstants {
    int d = 0;
    double nu = 0.0;  // d / 2
    double upsilon = 0.0;
    CplxVal beta_p, beta_m, eta_p, eta_m;
    CplxVal zeta, alpha;  // d = 2 only
};

// Supported for 2 <= d <= 9; at d = 9 the pairs beta and eta coincide.
DimConstants dim_constants(int d);

struct CertDimConstants {
    int d = 0;
    CertComplex beta_p, beta_m, eta_p, eta_m;
};
CertDimConstants dim_constants_certified(int d);

// Gamma at positive integers and half-integers.
double gamma_half_integer(double x);
CertInterval gamma_half_integer_certified(double x);

// z^e for integer or half-integer e >= 0 on the principal branch.
CplxVal pow_order(CplxVal z, double e);

// Taylor polynomial sum_{k=0}^{n} of J_nu(z); nu an integer or half-integer >= 0.
CplxVal bessel_j(double nu, CplxVal z, int n);
// Series summed to convergence.
CplxVal bessel_j(double nu, CplxVal z);
CertComplex bessel_j_certified(double nu, const CertComplex& z, int n);

// E(z, n, nu): bound on |J_nu(z) - sum_{k<n} (Taylor terms)| using the exact
// Gamma(n + nu + 1). Also bounds the error of bessel_j(nu, z, n).
// Requires |z| < 2(n + 1).
double remainder_bound(double nu, double abs_z, int n);
double remainder_bound(double nu, CplxVal z, int n);
// Coarser bound that replaces Gamma(k + nu + 1) / k! by its minimum over
// k >= n: n^nu for integer nu, (sqrt(pi) / 2) n^(nu - 1/2) for half-integer.
double remainder_bound_table(double nu, double abs_z, int n);

// Theta(lambda) = Im{eta_- beta_- conj(J_{nu-1}(lambda beta_+/2)) J_nu(lambda beta_+/2)}.
double theta(double lambda, int d);
double theta_truncated(double lambda, int d, int n);
// Truncated Theta on the interval lambda plus a pointwise remainder enclosure.
CertInterval theta_certified(const CertInterval& lambda, int d, int n);

// N(lambda) = Im(eta_- beta_- (lambda beta_-/4)^{nu-1} J_nu(lambda beta_+/2)) / Gamma(nu).
double numerator_ball(double lambda, int d);
double numerator_ball_truncated(double lambda, int d, int n);
CertInterval numerator_ball_certified(const CertInterval& lambda, int d, int n);

// N1 is numerator_ball; N2(mu) = Im(eta_+ beta_+ eta_- beta_- / (8d)
// J_{nu-1}(mu beta_-/2) (mu beta_+/4)^{nu-1}) / Gamma(nu).
std::pair<double, double> numerators_general(double mu, int d);
std::pair<double, double> numerators_general_truncated(double mu, int d, int n);
std::pair<CertInterval, CertInterval> numerators_general_certified(const CertInterval& mu, int d,
                                                                   int n);

struct Jet {
    double v = 0.0, d1 = 0.0, d2 = 0.0;
};

struct BallJets {
    Jet h1, hd1;
};

// Unit-ball solution with h1(1) = 0, hd1(1) = 1; r in [0, 1].
double h1_closed_form(double r, double lambda, int d);
double hd1_closed_form(double r, double lambda, int d);
BallJets ball_closed_form_jets(double r, double lambda, int d);

struct GeneralSolution {
    double h1 = 0.0, hd1 = 0.0;
};

// Solution on the ball of radius eps with h1(eps) = p, hd1(eps) = q.
GeneralSolution h_general_domain(double r, double eps, double lambda, int d, double p, double q);
BallJets h_general_domain_jets(double r, double eps, double lambda, int d, double p, double q);
// hd1(0) for the same data.
double hd1_center_general(double eps, double lambda, int d, double p, double q);

// Residuals of the radial ODE pair
//   h1'' + (d-1)/r h1' - (d-1)/r^2 h1 + 2 lambda hd1' + lambda^2 h1 = 0,
//   hd1'' + (d-1)/r hd1' + 2 lambda ((d-1)/r h1 + h1') + d lambda^2 hd1 = 0.
std::pair<double, double> ode_residual(const BallJets& j, double r, double lambda, int d);

// Two-dimensional ansatz A = u m + v conj(m), C = u n + v conj(n) with
// m(r) = alpha J_1(lambda zeta r), n(r) = J_0(lambda zeta r), fitted to
// A(eps) = b, C(eps) = c.
GeneralSolution ansatz_2d(double r, double lambda, double eps, double b, double c);
double ansatz_2d_center(double lambda, double eps, double b, double c);

struct D9Constants {
    double c2 = 0.0, c4 = 0.0, w = 0.0;
};
D9Constants d9_constants(double lambda);
GeneralSolution d9_solution(double r, double lambda, const D9Constants& k);
// ODE residuals (d = 9) of d9_solution, computed with exact derivatives.
std::pair<double, double> d9_residual(double r, double lambda);

}  // namespace sighyp
