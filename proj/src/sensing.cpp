#include "iscc/sensing.hpp"

#include <cmath>
#include <numbers>

#include "iscc/errors.hpp"

namespace iscc {

Eigen::VectorXcd steering_vector(double theta, int n, double delta) {
    if (n < 1) throw InvalidParameter("steering_vector: n must be >= 1");
    if (!(delta > 0.0)) throw InvalidParameter("steering_vector: delta must be positive");
    Eigen::VectorXcd a(n);
    double phase_step = 2.0 * std::numbers::pi * delta * std::sin(theta);
    for (int k = 0; k < n; ++k)
        a(k) = std::complex<double>(std::cos(k * phase_step), std::sin(k * phase_step));
    return a;
}

double beampattern(const SensingCovariance& r, double theta, double delta) {
    Eigen::VectorXcd a = steering_vector(theta, static_cast<int>(r.r.rows()), delta);
    return (a.adjoint() * r.r * a)(0).real();
}

SensingCovariance sensing_covariance(double p_sens, int n_bs, CovarianceMode mode, double theta0,
                                     double delta) {
    if (p_sens < 0.0) throw InvalidParameter("sensing power must be non-negative");
    SensingCovariance cov;
    cov.p_sens = p_sens;
    double scale = p_sens / n_bs;
    switch (mode) {
        case CovarianceMode::Isotropic:
            cov.r = scale * Eigen::MatrixXcd::Identity(n_bs, n_bs);
            break;
        case CovarianceMode::RankOne: {
            Eigen::VectorXcd a = steering_vector(theta0, n_bs, delta);
            cov.r = scale * (a * a.adjoint());
            break;
        }
    }
    return cov;
}

Eigen::VectorXd desired_pattern(const Eigen::VectorXd& angles, double theta0, int n_bs,
                                double delta) {
    Eigen::VectorXcd a0 = steering_vector(theta0, n_bs, delta);
    Eigen::VectorXd d(angles.size());
    double n2 = static_cast<double>(n_bs) * n_bs;
    for (int l = 0; l < angles.size(); ++l) {
        std::complex<double> inner = steering_vector(angles(l), n_bs, delta).adjoint() * a0;
        d(l) = std::norm(inner) / n2;
    }
    return d;
}

double beampattern_error(const SensingCovariance& r, const AngleGrid& grid, double delta) {
    const auto L = grid.angles.size();
    if (L < 1) throw InvalidParameter("beampattern_error: empty grid");
    double acc = 0.0;
    for (int l = 0; l < L; ++l) {
        double diff = grid.lambda * grid.desired(l) - beampattern(r, grid.angles(l), delta);
        acc += diff * diff;
    }
    return acc / static_cast<double>(L);
}

AngleGrid make_grid(const SystemConfig& cfg) {
    AngleGrid grid;
    int L = cfg.sensing.grid_points;
    grid.angles.resize(L);
    double half = std::numbers::pi / 2.0;
    for (int l = 0; l < L; ++l)
        grid.angles(l) = L == 1 ? 0.0 : -half + (2.0 * half * l) / (L - 1);
    double theta0 = cfg.sensing.theta0_deg * std::numbers::pi / 180.0;
    grid.desired = desired_pattern(grid.angles, theta0, cfg.n_bs, cfg.sensing.delta);
    grid.lambda = cfg.p_sum * cfg.n_bs;  // pattern attainable at full power
    return grid;
}

double sensing_objective(const SystemConfig& cfg, const AngleGrid& grid, double p_sens) {
    if (p_sens < 0.0) throw InvalidParameter("sensing power must be non-negative");
    // The default modes admit exact per-grid-point beampatterns (the desired
    // pattern is built from the same steering vectors): rank-one gives
    // B(theta) = p N d(theta), isotropic gives B(theta) = p. The covariance
    // route in beampattern_error is kept as the independent check.
    const auto L = grid.angles.size();
    Eigen::VectorXd b(L);
    if (cfg.sensing.mode == CovarianceMode::RankOne)
        b = (p_sens * cfg.n_bs) * grid.desired;
    else
        b.setConstant(p_sens);
    double lambda = grid.lambda;
    if (cfg.sensing.lambda_mode == LambdaMode::LeastSquares) {
        double num = grid.desired.dot(b);
        double den = grid.desired.squaredNorm();
        lambda = den > 0.0 ? num / den : 0.0;
    }
    return (lambda * grid.desired - b).squaredNorm() / static_cast<double>(L);
}

}  // namespace iscc
