#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "sighyp/signature.hpp"
#include "sighyp/tensor.hpp"

namespace sighyp {

using DevMatrix = Eigen::MatrixXd;
using DevVector = Eigen::VectorXd;

// Largest admissible lambda * (1-variation) before cosh overflows.
inline constexpr double kMaxBoostExponent = 700.0;

DevMatrix h_basis(int i, int d);
std::vector<DevMatrix> h_basis_all(int d);

// sum_n lambda^n sum_w a[w] B_{w1} ... B_{wn}.
DevMatrix apply_morphism(const TruncatedTensor& a, double lambda,
                         const std::vector<DevMatrix>& basis_images);

// exp(lambda H(v)).
DevMatrix segment_development_exact(std::span<const double> v, double lambda);

// x <- exp(lambda H(v)) x for x in R^{d+1}.
void boost_apply(std::span<const double> v, double lambda, std::span<double> x);

// H(S(lambda p)) (0,...,0,1)^T.
DevVector polyline_development(const Polyline& p, double lambda);

// Component k (1-based) of H(a) e_{d+1} restricted to the surviving words:
// (k, j1, j1, ..., jn, jn) for k <= d and (j1, j1, ..., jn, jn) for k = d+1.
double squared_word_series(const TruncatedTensor& a, double lambda, int k);

// sum_{i<=d} x_i^2 - x_{d+1}^2 + 1; zero on the hyperboloid.
double hyperboloid_residual(const DevVector& x);

}  // namespace sighyp
