#include "varlab/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "varlab/errors.hpp"

namespace varlab::gaussian {

namespace {

// Acklam's coefficients; relative error about 1.15e-9 before refinement.
constexpr double kA[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                         1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
constexpr double kB[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                         6.680131188771972e+01,  -1.328068155288572e+01};
constexpr double kC[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                         -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
constexpr double kD[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                         3.754408661907416e+00};
constexpr double kLowRegion = 0.02425;

// alpha in (0, 1/2]
double acklam_lower(double alpha) {
    if (alpha < kLowRegion) {
        const double q = std::sqrt(-2.0 * std::log(alpha));
        return (((((kC[0] * q + kC[1]) * q + kC[2]) * q + kC[3]) * q + kC[4]) * q + kC[5]) /
               ((((kD[0] * q + kD[1]) * q + kD[2]) * q + kD[3]) * q + 1.0);
    }
    const double q = alpha - 0.5;
    const double r = q * q;
    return (((((kA[0] * r + kA[1]) * r + kA[2]) * r + kA[3]) * r + kA[4]) * r + kA[5]) * q /
           (((((kB[0] * r + kB[1]) * r + kB[2]) * r + kB[3]) * r + kB[4]) * r + 1.0);
}

void require_open_unit(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw InputError("alpha must lie in (0,1), got " + std::to_string(alpha));
    }
}

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

double std_normal_quantile(double alpha) {
    require_open_unit(alpha);
    // Work in the lower half; 1 - alpha is exact for alpha >= 1/2.
    if (alpha > 0.5) return -std_normal_quantile(1.0 - alpha);
    const double x = acklam_lower(alpha);
    const double density = normal_pdf(x);
    if (density == 0.0) return x;
    return x - (normal_cdf(x) - alpha) / density;
}

bool is_positive_semidefinite(const std::vector<std::vector<double>>& m, double tol) {
    const std::size_t n = m.size();
    double scale = 1.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(m[i][i]));
    const double pivot_tol = tol * scale;
    // a zero pivot forces its row to vanish; allow the rounding of the
    // elimination to leave residue of order sqrt(tol)
    const double row_tol = std::sqrt(tol) * scale;

    auto a = m;
    std::vector<bool> done(n, false);
    for (std::size_t step = 0; step < n; ++step) {
        std::size_t k = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (!done[i] && (k == n || a[i][i] > a[k][k])) k = i;
        }
        done[k] = true;
        const double pivot = a[k][k];
        if (pivot < -pivot_tol) return false;
        if (pivot <= pivot_tol) {
            // largest remaining diagonal is ~0: the rest must be ~0 too
            for (std::size_t i = 0; i < n; ++i) {
                if (!done[i] && std::abs(a[i][k]) > row_tol) return false;
            }
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (done[i]) continue;
            const double f = a[i][k] / pivot;
            for (std::size_t j = 0; j < n; ++j) {
                if (!done[j]) a[i][j] -= f * a[k][j];
            }
        }
    }
    return true;
}

GaussianSpec::GaussianSpec(std::vector<double> mean, std::vector<std::vector<double>> covariance)
    : mean_(std::move(mean)), covariance_(std::move(covariance)) {
    const std::size_t n = mean_.size();
    if (n == 0) throw InputError("Gaussian spec needs at least one coordinate");
    if (covariance_.size() != n) throw InputError("covariance must be " + std::to_string(n) + "x" + std::to_string(n));
    for (const auto& row : covariance_) {
        if (row.size() != n) throw InputError("covariance must be square");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(mean_[i])) throw InputError("mean must be finite");
        for (double v : covariance_[i]) {
            if (!std::isfinite(v)) throw InputError("covariance must be finite");
        }
        scale_ = std::max(scale_, covariance_[i][i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (covariance_[i][i] < 0.0) throw InputError("negative variance at index " + std::to_string(i));
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(covariance_[i][j] - covariance_[j][i]) > 1e-12 * scale_) {
                throw InputError("covariance is not symmetric");
            }
        }
    }
    if (!is_positive_semidefinite(covariance_)) throw InputError("covariance is not positive semi-definite");

    sigma_.resize(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sigma_[i] = std::sqrt(covariance_[i][i]);
        for (std::size_t j = 0; j < n; ++j) total += covariance_[i][j];
    }
    portfolio_sigma_ = std::sqrt(std::max(total, 0.0));
}

double gaussian_var(double mu, double sigma, double alpha) {
    if (!(sigma >= 0.0)) throw InputError("sigma must be non-negative");
    const double z = std_normal_quantile(alpha);
    return sigma == 0.0 ? mu : mu + sigma * z;
}

double gaussian_portfolio_var(const GaussianSpec& spec, double alpha) {
    double mu = 0.0;
    for (double m : spec.mean()) mu += m;
    return gaussian_var(mu, spec.portfolio_sigma(), alpha);
}

double gaussian_subadditivity_gap(const GaussianSpec& spec, double alpha) {
    double sigma_sum = 0.0;
    for (double s : spec.sigma()) sigma_sum += s;
    return (sigma_sum - spec.portfolio_sigma()) * std_normal_quantile(alpha);
}

bool gaussian_comonotone_condition(const GaussianSpec& spec, double tol) {
    const auto& s = spec.sigma();
    const auto& c = spec.covariance();
    for (std::size_t i = 0; i < spec.dimension(); ++i) {
        for (std::size_t j = i + 1; j < spec.dimension(); ++j) {
            // sigma_i sigma_j (1 - rho_ij) = sigma_i sigma_j - cov_ij
            if (std::abs(s[i] * s[j] - c[i][j]) / spec.scale() > tol) return false;
        }
    }
    return true;
}

}  // namespace varlab::gaussian
