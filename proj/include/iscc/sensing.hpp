#pragma once

#include <Eigen/Dense>

#include "iscc/config.hpp"

namespace iscc {

struct AngleGrid {
    Eigen::VectorXd angles;   // radians, strictly increasing in [-pi/2, pi/2]
    Eigen::VectorXd desired;  // d(theta_l), unit peak
    double lambda = 0.0;      // scaling factor (power units)
};

struct SensingCovariance {
    Eigen::MatrixXcd r;  // Hermitian PSD, n_bs x n_bs, diagonal = p_sens/n_bs
    double p_sens = 0.0;
};

/// Uniform linear array steering vector; entry k = exp(j 2 pi k delta sin(theta)).
Eigen::VectorXcd steering_vector(double theta, int n, double delta);

/// Transmit power radiated toward theta: a^H(theta) R a(theta).
double beampattern(const SensingCovariance& r, double theta, double delta);

/// Covariance with the per-antenna power constraint: isotropic (P/N) I or
/// rank-one (P/N) a(theta0) a^H(theta0).
SensingCovariance sensing_covariance(double p_sens, int n_bs, CovarianceMode mode, double theta0,
                                     double delta);

/// Desired pattern d(theta) = |a^H(theta) a(theta0)|^2 / N^2 (unit peak at theta0).
Eigen::VectorXd desired_pattern(const Eigen::VectorXd& angles, double theta0, int n_bs,
                                double delta);

/// (1/L) sum_l |lambda d(theta_l) - a^H(theta_l) R a(theta_l)|^2.
double beampattern_error(const SensingCovariance& r, const AngleGrid& grid, double delta);

/// Grid from config: L uniform points over [-90 deg, 90 deg], desired pattern at
/// theta0, and lambda per the configured mode (fixed: P_sum * N_BS).
AngleGrid make_grid(const SystemConfig& cfg);

/// Full sensing sub-objective for a sensing power level.
double sensing_objective(const SystemConfig& cfg, const AngleGrid& grid, double p_sens);

}  // namespace iscc
