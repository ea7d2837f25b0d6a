#pragma once

#include <cstddef>
#include <vector>

namespace varlab::gaussian {

/// Phi(x), evaluated through erfc.
double normal_cdf(double x);
double normal_pdf(double x);

/// Phi^{-1}(alpha) for alpha in (0,1): Acklam's rational approximation,
/// refined by one Newton step on normal_cdf. Absolute error well below 1e-10.
/// Throws InputError outside (0,1).
double std_normal_quantile(double alpha);

/// Multivariate normal law of (X_1, ..., X_n).
///
/// The covariance must be square, symmetric, with a non-negative diagonal
/// and positive semi-definite up to a scaled tolerance.
class GaussianSpec {
public:
    /// Throws InputError on any violated invariant.
    GaussianSpec(std::vector<double> mean, std::vector<std::vector<double>> covariance);

    std::size_t dimension() const noexcept { return mean_.size(); }
    const std::vector<double>& mean() const noexcept { return mean_; }
    const std::vector<std::vector<double>>& covariance() const noexcept { return covariance_; }

    /// Per-coordinate standard deviations.
    const std::vector<double>& sigma() const noexcept { return sigma_; }

    /// Standard deviation of X_1 + ... + X_n, sqrt(1' C 1).
    double portfolio_sigma() const noexcept { return portfolio_sigma_; }

    /// Largest diagonal entry, floored at 1; tolerances are relative to it.
    double scale() const noexcept { return scale_; }

private:
    std::vector<double> mean_;
    std::vector<std::vector<double>> covariance_;
    std::vector<double> sigma_;
    double portfolio_sigma_ = 0.0;
    double scale_ = 1.0;
};

/// True when symmetric elimination with diagonal pivoting finds no negative
/// pivot below -tol * scale.
bool is_positive_semidefinite(const std::vector<std::vector<double>>& m, double tol = 1e-12);

/// mu + sigma * Phi^{-1}(alpha). Throws InputError for sigma < 0.
double gaussian_var(double mu, double sigma, double alpha);

double gaussian_portfolio_var(const GaussianSpec& spec, double alpha);

/// sum_i VaR_alpha(X_i) - VaR_alpha(sum_i X_i) = (sum_i sigma_i - sigma_S) Phi^{-1}(alpha).
/// Non-negative for alpha >= 1/2, non-positive for alpha <= 1/2.
double gaussian_subadditivity_gap(const GaussianSpec& spec, double alpha);

/// sigma_i sigma_j (1 - rho_ij) = 0 for every pair, i.e. every two
/// non-deterministic coordinates are perfectly correlated. Terms are
/// compared to zero with absolute tolerance `tol` after dividing by scale().
bool gaussian_comonotone_condition(const GaussianSpec& spec, double tol = 1e-12);

}  // namespace varlab::gaussian
