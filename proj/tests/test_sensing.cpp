#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "iscc/rng.hpp"
#include "iscc/sensing.hpp"

using namespace iscc;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("steering vector") {
    Eigen::VectorXcd a0 = steering_vector(0.0, 5, 0.5);
    for (int k = 0; k < 5; ++k) CHECK(std::abs(a0(k) - std::complex<double>(1.0, 0.0)) < 1e-12);

    Eigen::VectorXcd a = steering_vector(kPi / 2, 2, 0.5);
    CHECK(std::abs(a(0) - std::complex<double>(1.0, 0.0)) < 1e-12);
    CHECK(std::abs(a(1) - std::complex<double>(-1.0, 0.0)) < 1e-12);

    Rng rng(4);
    for (int i = 0; i < 100; ++i) {
        double theta = rng.uniform(-kPi / 2, kPi / 2);
        Eigen::VectorXcd v = steering_vector(theta, 8, 0.5);
        CHECK(std::abs(std::abs(v(rng.uniform_int(8))) - 1.0) < 1e-12);
    }
}

TEST_CASE("beampattern of covariance modes") {
    // isotropic: P at every angle
    SensingCovariance iso = sensing_covariance(2.0, 4, CovarianceMode::Isotropic, 0.0, 0.5);
    for (double theta : {-1.2, -0.3, 0.0, 0.7, 1.5})
        CHECK(beampattern(iso, theta, 0.5) == doctest::Approx(2.0).epsilon(1e-10));
    for (int i = 0; i < 4; ++i) CHECK(std::abs(iso.r(i, i).real() - 0.5) < 1e-10);

    // rank-one at the target: P * N
    SensingCovariance r1 = sensing_covariance(1.0, 8, CovarianceMode::RankOne, 0.3, 0.5);
    CHECK(beampattern(r1, 0.3, 0.5) == doctest::Approx(8.0).epsilon(1e-10));
    for (int i = 0; i < 8; ++i) CHECK(std::abs(r1.r(i, i).real() - 0.125) < 1e-10);

    // PSD: quadratic form non-negative everywhere
    for (double theta = -1.5; theta <= 1.5; theta += 0.1) {
        CHECK(beampattern(iso, theta, 0.5) >= 0.0);
        CHECK(beampattern(r1, theta, 0.5) >= 0.0);
    }
}

TEST_CASE("desired pattern") {
    Eigen::VectorXd angles(3);
    angles << -kPi / 2, 0.0, kPi / 2;
    Eigen::VectorXd d = desired_pattern(angles, 0.0, 2, 0.5);
    CHECK(d(1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d(0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(d(2) == doctest::Approx(0.0).epsilon(1e-12));
    for (int i = 0; i < 3; ++i) {
        CHECK(d(i) >= 0.0);
        CHECK(d(i) <= 1.0 + 1e-12);
    }
}

TEST_CASE("beampattern error") {
    // perfect match: isotropic R, constant desired 1, lambda = P
    AngleGrid grid;
    grid.angles = Eigen::VectorXd::LinSpaced(7, -kPi / 2, kPi / 2);
    grid.desired = Eigen::VectorXd::Ones(7);
    grid.lambda = 2.0;
    SensingCovariance iso = sensing_covariance(2.0, 4, CovarianceMode::Isotropic, 0.0, 0.5);
    CHECK(beampattern_error(iso, grid, 0.5) < 1e-18);

    // 3-point hand instance: N=2, rank-one at theta0=0 with P=1, lambda=2
    AngleGrid g3;
    g3.angles = Eigen::VectorXd(3);
    g3.angles << -kPi / 2, 0.0, kPi / 2;
    g3.desired = desired_pattern(g3.angles, 0.0, 2, 0.5);
    g3.lambda = 2.0;
    SensingCovariance r1 = sensing_covariance(1.0, 2, CovarianceMode::RankOne, 0.0, 0.5);
    // B(-pi/2) = B(pi/2) = 0 (a^H(theta)a(0) = 0), B(0) = P*N = 2; d = (0,1,0)
    // terms: |2*0 - 0|^2, |2*1 - 2|^2, |2*0 - 0|^2 -> error 0
    CHECK(beampattern_error(r1, g3, 0.5) < 1e-18);
    // with lambda = 3 the middle term is |3-2|^2 = 1 -> error 1/3
    g3.lambda = 3.0;
    CHECK(beampattern_error(r1, g3, 0.5) == doctest::Approx(1.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("sensing objective monotone non-increasing in sensing power") {
    SystemConfig cfg;
    AngleGrid grid = make_grid(cfg);
    double prev = 1e300;
    for (int i = 0; i <= 20; ++i) {
        double p = cfg.p_sum * i / 20.0;
        double v = sensing_objective(cfg, grid, p);
        CHECK(v <= prev + 1e-12);
        CHECK(v >= 0.0);
        prev = v;
    }
}
