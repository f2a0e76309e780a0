#include "greenfolio/factor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "greenfolio/errors.hpp"

namespace greenfolio::factor {

namespace {

// Continued-fraction core of the incomplete beta function (Lentz's method).
double beta_cf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 1e-15;
    constexpr double kTiny = 1e-300;

    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) return h;
    }
    throw NumericalError("incomplete_beta: continued fraction did not converge");
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (a <= 0.0 || b <= 0.0) throw NumericalError("incomplete_beta: a, b must be > 0");
    if (x < 0.0 || x > 1.0) throw NumericalError("incomplete_beta: x outside [0,1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double ln_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                         a * std::log(x) + b * std::log1p(-x);
    const double bt = std::exp(ln_bt);
    if (x < (a + 1.0) / (a + b + 2.0)) return bt * beta_cf(a, b, x) / a;
    return 1.0 - bt * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_cdf(double x, int dof) {
    if (dof < 1) throw NumericalError("student_t_cdf: dof must be >= 1");
    if (x == 0.0) return 0.5;
    const double v = static_cast<double>(dof);
    const double tail = 0.5 * incomplete_beta(0.5 * v, 0.5, v / (v + x * x));
    return x > 0.0 ? 1.0 - tail : tail;
}

DesignData assemble_design(const std::map<int, double>& portfolio_returns,
                           const std::map<int, double>& market_returns, const LossSeries& losses,
                           const IntensitySeries& intensity, double r_f) {
    DesignData out;
    std::vector<int> missing;
    for (const auto& [year, r_v] : portfolio_returns) {
        if (market_returns.count(year) && losses.entries.count(year) &&
            intensity.entries.count(year))
            out.years.push_back(year);
        else
            missing.push_back(year);
    }
    if (out.years.size() < 6) {
        std::ostringstream msg;
        msg << "assemble_design: only " << out.years.size()
            << " common years across series (need >= 6)";
        if (!missing.empty()) {
            msg << "; portfolio years without full factor coverage:";
            for (int y : missing) msg << ' ' << y;
        }
        throw ValidationError(msg.str());
    }
    const Eigen::Index n = static_cast<Eigen::Index>(out.years.size());
    out.response.resize(n);
    out.design.resize(n, 4);
    for (Eigen::Index t = 0; t < n; ++t) {
        const int year = out.years[static_cast<size_t>(t)];
        out.response(t) = portfolio_returns.at(year) - r_f;
        out.design(t, 0) = 1.0;
        out.design(t, 1) = market_returns.at(year) - r_f;
        out.design(t, 2) = losses.entries.at(year);
        out.design(t, 3) = intensity.entries.at(year);
    }
    return out;
}

FactorModelFit ols_fit(const Eigen::VectorXd& response, const Eigen::MatrixXd& design) {
    const Eigen::Index n = design.rows();
    const Eigen::Index k = design.cols();
    if (k != 4) throw ValidationError("ols_fit: design must have 4 columns");
    if (response.size() != n) throw ValidationError("ols_fit: response/design row mismatch");
    if (n <= k) throw ValidationError("ols_fit: need more than 4 observations");

    const double y_mean = response.mean();
    const double sst = (response.array() - y_mean).square().sum();
    if (sst <= 0.0) throw NumericalError("ols_fit: zero-variance response, R^2 undefined");

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    qr.setThreshold(1e-10);
    if (qr.rank() < k) throw NumericalError("ols_fit: design matrix is rank deficient");

    const Eigen::VectorXd beta = qr.solve(response);
    const Eigen::VectorXd residuals = response - design * beta;
    const double ssr = residuals.squaredNorm();
    const int dof = static_cast<int>(n - k);
    const double sigma2 = ssr / static_cast<double>(dof);

    // (X'X)^-1 from the QR factors: X P = Q R  =>  (X'X)^-1 = P R^-1 R^-T P'.
    const Eigen::MatrixXd r_upper =
        qr.matrixR().topLeftCorner(k, k).template triangularView<Eigen::Upper>();
    const Eigen::MatrixXd r_inv =
        r_upper.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(k, k));
    const Eigen::MatrixXd perm = qr.colsPermutation();
    const Eigen::MatrixXd xtx_inv = perm * (r_inv * r_inv.transpose()) * perm.transpose();

    FactorModelFit fit;
    fit.alpha = beta(0);
    fit.beta_market = beta(1);
    fit.beta_pf = beta(2);
    fit.beta_tf = beta(3);
    fit.n_obs = static_cast<int>(n);
    fit.dof = dof;
    fit.r_squared = 1.0 - ssr / sst;
    for (Eigen::Index j = 0; j < k; ++j) {
        fit.std_errors(j) = std::sqrt(sigma2 * xtx_inv(j, j));
        fit.t_stats(j) = beta(j) / fit.std_errors(j);
        fit.p_values(j) = 2.0 * (1.0 - student_t_cdf(std::abs(fit.t_stats(j)), dof));
    }
    return fit;
}

}  // namespace greenfolio::factor
