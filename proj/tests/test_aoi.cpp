#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "iscc/aoi.hpp"
#include "iscc/errors.hpp"

using namespace iscc;

TEST_CASE("varpi terms at (1,2,3)") {
    QueueRates r{1.0, 2.0, 3.0};
    auto [w1, w2, w3] = varpi_terms(r);
    CHECK(w1 == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(w2 == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(w3 == doctest::Approx(std::sqrt(28.0) / 2.0).epsilon(1e-12));
}

TEST_CASE("varpi3 equals mu_uav (1 - upsilon)") {
    Rng rng(5);
    int checked = 0;
    while (checked < 100) {
        QueueRates r{0.2 * std::pow(25.0, rng.uniform()), 0.2 * std::pow(25.0, rng.uniform()),
                     0.2 * std::pow(25.0, rng.uniform())};
        if (rates_singular(r) || !gi_m_1_stable(r)) continue;
        auto [w1, w2, w3] = varpi_terms(r);
        double ups = upsilon_fixed_point(r);
        CHECK(std::abs(w3 - r.mu_uav * (1.0 - ups)) < 1e-9);
        ++checked;
    }
}

TEST_CASE("interarrival LST normalization and monotonicity") {
    QueueRates r{1.0, 2.0, 3.0};
    CHECK(interarrival_lst(r, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    double prev = 1.0;
    for (double s = 0.5; s < 10.0; s += 0.5) {
        double v = interarrival_lst(r, s);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("interarrival moments at (1,2)") {
    auto [eb, eb2, ebb] = interarrival_moments(1.0, 2.0);
    CHECK(eb == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(eb2 == doctest::Approx(3.5).epsilon(1e-12));
    CHECK(ebb == doctest::Approx(2.25).epsilon(1e-12));
}

TEST_CASE("moments match Monte Carlo") {
    QueueRates r{1.0, 2.0, 3.0};
    Rng rng(17);
    long n = 1000000;
    double sb = 0.0, sb2 = 0.0;
    for (long i = 0; i < n; ++i) {
        double b = rng.exponential(r.mu_bs) + rng.exponential(r.mu_trans);
        sb += b;
        sb2 += b * b;
    }
    auto [eb, eb2, ebb] = interarrival_moments(r.mu_bs, r.mu_trans);
    CHECK(std::abs(sb / n - eb) / eb < 0.01);
    CHECK(std::abs(sb2 / n - eb2) / eb2 < 0.01);
}

TEST_CASE("closed form at (1,2,3) agrees with the DES oracle") {
    QueueRates r{1.0, 2.0, 3.0};
    double cf = closed_form_aaoi(r);
    Rng rng(7);
    AoITrace tr = simulate_tandem_aoi(r, 1000000, 100000, rng);
    CHECK(std::abs(cf - tr.average_aoi) / tr.average_aoi < 0.02);
}

TEST_CASE("rate-scaling invariance") {
    QueueRates r{1.0, 2.0, 3.0};
    double base = closed_form_aaoi(r);
    for (double k : {0.5, 2.0, 10.0}) {
        QueueRates rk{k * r.mu_bs, k * r.mu_trans, k * r.mu_uav};
        CHECK(std::abs(closed_form_aaoi(rk) - base / k) / (base / k) < 1e-9);
    }
}

TEST_CASE("aaoi strictly decreasing in mu_uav") {
    double prev = 1e300;
    for (double mu = 0.8; mu <= 4.0; mu += 0.2) {
        QueueRates r{1.0, 2.0, mu};
        double v = closed_form_aaoi(r);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("singularity and stability guards") {
    CHECK_THROWS_AS(closed_form_aaoi(QueueRates{2.0, 2.0, 3.0}), Instability);
    CHECK_THROWS_AS(closed_form_aaoi(QueueRates{1.0, 2.0, 0.5}), Instability);
    Rng rng(1);
    CHECK_THROWS_AS(simulate_tandem_aoi(QueueRates{1.0, 2.0, 0.5}, 10000, 1000, rng),
                    Instability);
}

TEST_CASE("simulator determinism and empirical interarrival mean") {
    QueueRates r{1.0, 2.0, 3.0};
    Rng a(7), b(7);
    AoITrace t1 = simulate_tandem_aoi(r, 50000, 5000, a);
    AoITrace t2 = simulate_tandem_aoi(r, 50000, 5000, b);
    CHECK(t1.average_aoi == t2.average_aoi);
    CHECK(t1.mean_interarrival == t2.mean_interarrival);

    Rng c(9);
    AoITrace t3 = simulate_tandem_aoi(r, 1000000, 100000, c);
    CHECK(std::abs(t3.mean_interarrival - 1.5) < 0.01);
}
