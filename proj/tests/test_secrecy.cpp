#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "iscc/channel.hpp"
#include "iscc/errors.hpp"
#include "iscc/secrecy.hpp"

using namespace iscc;

TEST_CASE("pathloss gain") {
    CHECK(pathloss_gain({100.0, 100.0, 2.4}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pathloss_gain({123.0, 77.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pathloss_gain({200.0, 100.0, 2.4}) ==
          doctest::Approx(std::pow(2.0, -2.4)).epsilon(1e-12));
    CHECK_THROWS_AS(pathloss_gain({-1.0, 100.0, 2.4}), InvalidParameter);
}

TEST_CASE("channel draw moments") {
    Rng rng(3);
    RealVector gains(2);
    gains << 1.0, 2.5;
    double m0 = 0.0, m1 = 0.0;
    int draws = 100000;
    ComplexMatrix c = draw_channel(2, draws, gains, rng);
    for (int j = 0; j < draws; ++j) {
        m0 += std::norm(c(0, j));
        m1 += std::norm(c(1, j));
    }
    CHECK(std::abs(m0 / draws - 1.0) < 0.02);
    CHECK(std::abs(m1 / draws - 2.5) < 0.05);

    RealVector zeros = RealVector::Zero(2);
    CHECK(draw_channel(2, 4, zeros, rng).norm() == 0.0);
}

TEST_CASE("error stats") {
    CHECK(error_stats(1.0, {4.0, 1.0}) == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(error_stats(0.0, {4.0, 1.0}) == 0.0);
    CHECK(error_stats(1.0, {1e12, 1.0}) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("mmse estimate limits and variance law") {
    Rng rng(11);
    RealVector gains = RealVector::Ones(3);

    ComplexMatrix truth = draw_channel(3, 3, gains, rng);
    ComplexMatrix est = mmse_estimate(truth, gains, {1e9, 1.0}, rng);
    CHECK((est - truth).norm() / truth.norm() < 1e-3);

    RealVector zero_gains = RealVector::Zero(3);
    ComplexMatrix z = mmse_estimate(truth, zero_gains, {4.0, 1.0}, rng);
    CHECK(z.norm() == 0.0);

    // per-entry second moment of the estimate converges to error_stats
    double acc = 0.0;
    long count = 0;
    int rows = 4, cols = 50;
    RealVector g4 = RealVector::Ones(rows);
    for (int rep = 0; rep < 5000; ++rep) {
        ComplexMatrix c = draw_channel(rows, cols, g4, rng);
        ComplexMatrix e = mmse_estimate(c, g4, {4.0, 1.0}, rng);
        acc += e.squaredNorm();
        count += rows * cols;
    }
    CHECK(std::abs(acc / count - 0.8) / 0.8 < 0.01);  // 1e6 entries

    CHECK_THROWS_AS(mmse_estimate(truth, gains, {0.0, 0.0}, rng), InvalidParameter);
}

TEST_CASE("zero-forcing identity") {
    ComplexMatrix eye = ComplexMatrix::Identity(3, 3);
    CHECK((zf_precoder(eye, 1.0) - eye).norm() < 1e-12);

    Rng rng(21);
    RealVector gains = RealVector::Ones(4);
    for (int rep = 0; rep < 100; ++rep) {
        ComplexMatrix h = draw_channel(4, 64, gains, rng);
        double alpha = normalization_alpha({h});
        ComplexMatrix wc = zf_precoder(h, alpha);
        ComplexMatrix prod = h * wc;
        CHECK((prod - alpha * ComplexMatrix::Identity(4, 4)).norm() / alpha < 1e-8);
    }

    ComplexMatrix dup(2, 4);
    dup.row(0).setConstant(1.0);
    dup.row(1).setConstant(1.0);
    CHECK_THROWS_AS(zf_precoder(dup, 1.0), SingularChannel);
}

TEST_CASE("normalization alpha") {
    CHECK(normalization_alpha({ComplexMatrix::Identity(4, 4)}) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(normalization_alpha({2.0 * ComplexMatrix::Identity(2, 2)}) ==
          doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("AN shaper null-space and projector properties") {
    Rng rng(33);
    RealVector gains = RealVector::Ones(4);
    for (int rep = 0; rep < 100; ++rep) {
        ComplexMatrix h = draw_channel(4, 64, gains, rng);
        ComplexMatrix d = an_projector(h);
        CHECK((d * d - d).norm() < 1e-8);
        ComplexMatrix vn = an_shaper(h, 8);
        CHECK((h * vn).norm() / h.norm() < 1e-8);
        CHECK(std::abs((vn * vn.adjoint()).trace().real() - 1.0) < 1e-8);
    }
}

TEST_CASE("amplification factor limits") {
    SystemConfig cfg;
    Rng rng(5);
    CHECK(amplification_factor(0.0, 1.0, 1.0, 4.75, 0.25, 8, 1.0, 1.0) == 0.0);
    // no signal or AN power: only the noise term remains in the denominator
    double beta = amplification_factor(1.0, 0.0, 0.0, 4.75, 0.25, 8, 1.0, 1.0);
    CHECK(beta == doctest::Approx(std::sqrt(1.0 / (8 * 0.25))).epsilon(1e-12));
    double b1 = amplification_factor(cfg, 0.8, 0.6, 200, rng);
    Rng rng2(5);
    double b2 = amplification_factor(cfg, 0.8, 0.6, 200, rng2);
    CHECK(b1 == b2);
}

TEST_CASE("prelog factor") {
    CHECK(prelog_factor(196, 196, 15, 4) == doctest::Approx(181.0 / 392.0).epsilon(1e-12));
    CHECK(prelog_factor(196, 196, 0, 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(prelog_factor(100, 100, 100, 0), InvalidParameter);
}

TEST_CASE("secrecy from parts") {
    CHECK(secrecy_from_parts(1.0, 0.4, 0.6) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(secrecy_from_parts(0.3, 0.4, 0.4) == 0.0);
    CHECK(secrecy_from_parts(0.7, 0.0, 0.0) == doctest::Approx(0.7).epsilon(1e-12));
}

TEST_CASE("rate chain determinism and limits") {
    SystemConfig cfg;
    Rng a(42), b(42);
    RateBreakdown r1 = estimate_rates(cfg, 2000, a);
    RateBreakdown r2 = estimate_rates(cfg, 2000, b);
    CHECK(r1.gamma_secure == r2.gamma_secure);
    CHECK(r1.gamma_user == r2.gamma_user);
    CHECK(r1.gamma_secure > 0.0);
    CHECK(r1.gamma_secure <= r1.gamma_user);
    CHECK(r1.gamma_eave == doctest::Approx((r1.gamma_eave1 + r1.gamma_eave2) / 2).epsilon(1e-12));

    SystemConfig deaf = cfg;
    deaf.noise.noise_eave = 1e12;
    Rng c(42);
    RateBreakdown rd = estimate_rates(deaf, 2000, c);
    CHECK(rd.gamma_eave1 < 1e-6);
    CHECK(rd.gamma_eave2 < 1e-6);
    CHECK(std::abs(rd.gamma_secure - rd.gamma_user) < 1e-6);
}

TEST_CASE("median secrecy rate non-increasing in eavesdropper antennas") {
    std::vector<double> meds;
    for (int ne : {6, 10, 14}) {
        SystemConfig cfg;
        cfg.n_eave = ne;
        std::vector<double> vals;
        for (int s = 0; s < 21; ++s) {
            Rng rng(100 + s);
            vals.push_back(estimate_rates(cfg, 500, rng).gamma_secure);
        }
        std::sort(vals.begin(), vals.end());
        meds.push_back(vals[vals.size() / 2]);
    }
    CHECK(meds[0] >= meds[1]);
    CHECK(meds[1] >= meds[2]);
}
