#pragma once

#include <Eigen/Dense>
#include <map>
#include <vector>

#include "greenfolio/types.hpp"

namespace greenfolio::factor {

/// Climate-extended CAPM fit:
///   r_V - r_f = alpha + beta_market (r_m - r_f) + beta_pf PF + beta_tf TF
/// Coefficient order everywhere is [const, ind, pf, tf].
struct FactorModelFit {
    double alpha = 0.0;
    double beta_market = 0.0;
    double beta_pf = 0.0;
    double beta_tf = 0.0;
    Eigen::Vector4d std_errors = Eigen::Vector4d::Zero();
    Eigen::Vector4d t_stats = Eigen::Vector4d::Zero();
    Eigen::Vector4d p_values = Eigen::Vector4d::Zero();
    double r_squared = 0.0;
    int n_obs = 0;
    int dof = 0;
};

struct DesignData {
    std::vector<int> years;
    Eigen::VectorXd response;  // r_V - r_f
    Eigen::MatrixXd design;    // [1, r_m - r_f, PF, TF]
};

/// Intersect the year coverage of all four series and assemble the
/// regression inputs. Needs at least 6 common years.
DesignData assemble_design(const std::map<int, double>& portfolio_returns,
                           const std::map<int, double>& market_returns, const LossSeries& losses,
                           const IntensitySeries& intensity, double r_f);

/// OLS via column-pivoted QR; standard errors from sigma^2 (X'X)^-1,
/// two-sided p-values from the t distribution with n-4 dof.
FactorModelFit ols_fit(const Eigen::VectorXd& response, const Eigen::MatrixXd& design);

/// Student-t CDF with `dof` degrees of freedom, evaluated through the
/// regularized incomplete beta function.
double student_t_cdf(double x, int dof);

/// Regularized incomplete beta function I_x(a, b).
double incomplete_beta(double a, double b, double x);

}  // namespace greenfolio::factor
