#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "helpers.hpp"
#include "iqf/dist.hpp"

using namespace iqf;
using namespace iqf::testing;

namespace {

AtomicDistribution coin() {
    return AtomicDistribution::from_points({{-1.0, 0.5}, {1.0, 0.5}});
}

AtomicDistribution quarter_law() {  // {0: 1/4, 2: 3/4}
    return AtomicDistribution::from_points({{0.0, 0.25}, {2.0, 0.75}});
}

}  // namespace

TEST_CASE("from_samples") {
    const double v1[] = {3.0, 1.0, 3.0};
    const AtomicDistribution d1 = AtomicDistribution::from_samples(v1);
    CHECK(d1.locations() == std::vector<double>{1.0, 3.0});
    CHECK(d1.masses()[0] == doctest::Approx(1.0 / 3));
    CHECK(d1.masses()[1] == doctest::Approx(2.0 / 3));

    const double v2[] = {0.0};
    const AtomicDistribution d2 = AtomicDistribution::from_samples(v2);
    CHECK(d2.size() == 1);
    CHECK(d2.masses()[0] == 1.0);

    const double v3[] = {0.0, 2.0};
    const double w3[] = {1.0, 3.0};
    const AtomicDistribution d3 = AtomicDistribution::from_samples(v3, w3);
    CHECK(d3.masses()[0] == 0.25);
    CHECK(d3.masses()[1] == 0.75);

    CHECK_THROWS_AS(AtomicDistribution::from_samples({}), std::invalid_argument);
    const double w0[] = {0.0};
    CHECK_THROWS_AS(AtomicDistribution::from_samples(v2, w0), std::invalid_argument);
}

TEST_CASE("cdf and quantiles") {
    const AtomicDistribution c = coin();
    CHECK(c.cdf(0.0) == 0.5);
    CHECK(c.cdf_left(-1.0) == 0.0);
    const AtomicDistribution d0 = AtomicDistribution::point_mass(0.0);
    CHECK(d0.cdf(0.0) == 1.0);
    CHECK(d0.cdf_left(0.0) == 0.0);
    CHECK(quarter_law().cdf(1.0) == 0.25);

    CHECK(c.quantile_left(0.5) == -1.0);
    CHECK(c.quantile_right(0.5) == 1.0);
    CHECK(c.quantile_left(0.25) == -1.0);
    CHECK(c.quantile_right(0.25) == -1.0);
    CHECK(quarter_law().quantile_left(0.25) == 0.0);
    CHECK(quarter_law().quantile_right(0.25) == 2.0);
    CHECK_THROWS_AS(c.quantile_left(0.0), std::domain_error);
    CHECK_THROWS_AS(c.quantile_right(1.0), std::domain_error);
}

TEST_CASE("quantile equivalences") {
    // q^L(u) <= x iff u <= F(x), and q^R(u) >= x iff u >= F(x-0)
    auto rng = make_rng(55);
    std::uniform_real_distribution<double> ud(0.001, 0.999);
    std::uniform_real_distribution<double> xd(-6.0, 6.0);
    for (int t = 0; t < 200; ++t) {
        const AtomicDistribution d = random_law(rng, 1, 6, -5.0, 5.0);
        const double u = ud(rng);
        const double x = xd(rng);
        CHECK((d.quantile_left(u) <= x) == (u <= d.cdf(x)));
        CHECK((d.quantile_right(u) >= x) == (u >= d.cdf_left(x)));
    }
}

TEST_CASE("idf shapes") {
    // delta_0 -> x+
    const ConvexPWL j0 = idf(AtomicDistribution::point_mass(0.0));
    CHECK(j0.evaluate(-5.0) == 0.0);
    CHECK(j0.evaluate(3.0) == 3.0);

    // fair coin: vertices {-1, 1}, values {-1/2, 1/2}
    const ConvexPWL jc = idf(coin());
    CHECK(jc.breakpoints() == std::vector<double>{-1.0, 1.0});
    CHECK(jc.values()[0] == -0.5);
    CHECK(jc.values()[1] == 0.5);
    CHECK(jc.evaluate(0.0) == 0.0);
    CHECK(jc.slope_left() == 0.0);
    CHECK(jc.slope_right() == 1.0);

    // Bernoulli(1/2): 0 below 0, x/2 on [0,1], x - 1/2 beyond
    const AtomicDistribution bern =
        AtomicDistribution::from_points({{0.0, 0.5}, {1.0, 0.5}});
    const ConvexPWL jb = idf(bern);
    CHECK(jb.evaluate(-2.0) == 0.0);
    CHECK(jb.evaluate(0.5) == 0.25);
    CHECK(jb.evaluate(2.0) == doctest::Approx(1.5));
}

TEST_CASE("idf matches stepwise quadrature on random laws") {
    auto rng = make_rng(77);
    std::uniform_real_distribution<double> xd(-8.0, 8.0);
    for (int t = 0; t < 200; ++t) {
        const AtomicDistribution d = random_law(rng, 1, 8, -6.0, 6.0);
        const ConvexPWL j = idf(d);
        for (int k = 0; k < 5; ++k) {
            const double x = xd(rng);
            CHECK(j.evaluate(x) == doctest::Approx(oracle_idf(d, x)).epsilon(1e-12));
        }
    }
}

TEST_CASE("iqf shapes and oracle") {
    const ConvexPWL tent = iqf::iqf(coin());
    for (double u : {0.0, 0.3, 0.5, 1.0})
        CHECK(tent.evaluate(u) == doctest::Approx(std::abs(u - 0.5)));

    const ConvexPWL lin = iqf::iqf(AtomicDistribution::point_mass(2.0));
    CHECK(lin.evaluate(0.0) == 0.0);
    CHECK(lin.evaluate(1.0) == 2.0);
    CHECK(lin.evaluate(0.25) == 0.5);

    const ConvexPWL zero = iqf::iqf(AtomicDistribution::point_mass(0.0));
    CHECK(zero.evaluate(0.0) == 0.0);
    CHECK(zero.evaluate(1.0) == 0.0);

    auto rng = make_rng(78);
    std::uniform_real_distribution<double> ud(0.0, 1.0);
    for (int t = 0; t < 200; ++t) {
        const AtomicDistribution d = random_law(rng, 1, 8, -6.0, 6.0);
        const ConvexPWL q = iqf::iqf(d);
        for (int k = 0; k < 5; ++k) {
            const double u = ud(rng);
            CHECK(q.evaluate(u) == doctest::Approx(oracle_iqf(d, u)).epsilon(1e-10));
        }
    }
}

TEST_CASE("duality between idf and iqf") {
    auto rng = make_rng(79);
    for (int t = 0; t < 200; ++t) {
        const AtomicDistribution d = random_law(rng, 1, 8, -6.0, 6.0);
        CHECK(vertexwise_equal(fenchel_conjugate(idf(d)), iqf::iqf(d), 1e-10));
        CHECK(vertexwise_equal(fenchel_conjugate(iqf::iqf(d)), idf(d), 1e-10));
    }
}

TEST_CASE("shifted iqfs") {
    const AtomicDistribution c = coin();
    CHECK(iqf_shift0(c).evaluate(0.5) == doctest::Approx(-0.5));
    CHECK(iqf_shift1(c).evaluate(1.0) == 0.0);
    const ConvexPWL s1 = iqf_shift1(AtomicDistribution::point_mass(3.0));
    for (double u : {0.0, 0.5, 1.0})
        CHECK(s1.evaluate(u) == doctest::Approx(3.0 * (u - 1.0)));

    // both shifts vanish at their anchor; for nonnegative laws shift0 is
    // nonnegative increasing and shift1 nonpositive
    auto rng = make_rng(80);
    for (int t = 0; t < 50; ++t) {
        const AtomicDistribution d = random_law(rng, 1, 6, -4.0, 4.0);
        CHECK(iqf_shift0(d).evaluate(0.0) == 0.0);
        CHECK(iqf_shift1(d).evaluate(1.0) == 0.0);
        const AtomicDistribution p = d.abs_law();
        const ConvexPWL a = iqf_shift0(p);
        const ConvexPWL b = iqf_shift1(p);
        double prev = 0.0;
        for (double u = 0.0; u <= 1.0; u += 0.1) {
            CHECK(a.evaluate(u) >= prev - 1e-12);
            prev = a.evaluate(u);
            CHECK(a.evaluate(u) >= -1e-12);
            CHECK(b.evaluate(u) <= 1e-12);
        }
    }
}

TEST_CASE("classical functionals") {
    const AtomicDistribution c = coin();
    CHECK(potential(c, 0.0) == doctest::Approx(-1.0));
    CHECK(psi(c, 1.0) == doctest::Approx(1.0));
    const AtomicDistribution d0 = AtomicDistribution::point_mass(0.0);
    for (double x : {-2.0, -0.5, 0.0, 1.0})
        CHECK(stop_loss(d0, x) == doctest::Approx(std::max(-x, 0.0)));

    // Psi + H = -U pointwise, and each matches its direct expectation
    auto rng = make_rng(81);
    std::uniform_real_distribution<double> xd(-6.0, 6.0);
    for (int t = 0; t < 100; ++t) {
        const AtomicDistribution d = random_law(rng, 1, 6, -5.0, 5.0);
        const double x = xd(rng);
        CHECK(psi(d, x) + stop_loss(d, x) == doctest::Approx(-potential(d, x)).epsilon(1e-12));
        CHECK(stop_loss(d, x) == doctest::Approx(oracle_stop_loss(d, x)).epsilon(1e-12));
    }
}

TEST_CASE("lorenz, cvar, hardy-littlewood") {
    const AtomicDistribution c = coin();
    CHECK(cvar(c, 0.5) == doctest::Approx(-1.0));
    CHECK(hardy_littlewood(c, 0.5) == doctest::Approx(1.0));
    auto rng = make_rng(82);
    std::uniform_real_distribution<double> ud(0.05, 0.95);
    for (int t = 0; t < 100; ++t) {
        const AtomicDistribution d = random_law(rng, 1, 6, -5.0, 5.0);
        CHECK(lorenz(d, 1.0) == doctest::Approx(d.mean()).epsilon(1e-12));
        const double u = ud(rng);
        // HL_X(u) = -CV@R_{-X}(1-u)
        CHECK(hardy_littlewood(d, u) ==
              doctest::Approx(-cvar(d.negate(), 1.0 - u)).epsilon(1e-10));
    }
    CHECK_THROWS_AS(cvar(c, 0.0), std::domain_error);
    CHECK_THROWS_AS(hardy_littlewood(c, 1.0), std::domain_error);
    CHECK_THROWS_AS(lorenz(c, 1.5), std::domain_error);
}

TEST_CASE("from_idf") {
    CHECK(approx_equal(from_idf(ConvexPWL({0.0}, {0.0}, 0.0, 1.0)),
                       AtomicDistribution::point_mass(0.0)));
    const AtomicDistribution c = coin();
    CHECK(approx_equal(from_idf(idf(c)), c));
    // slopes {0, 1/4, 1} with breakpoints {0, 2}
    const ConvexPWL j({0.0, 2.0}, {0.0, 0.5}, 0.0, 1.0);
    CHECK(approx_equal(from_idf(j), quarter_law()));

    CHECK_THROWS_AS(from_idf(ConvexPWL::abs_value()), std::invalid_argument);
    CHECK_THROWS_AS(from_idf(ConvexPWL({0.0}, {1.0}, 0.0, 1.0)), std::invalid_argument);
    CHECK_THROWS_AS(from_idf(ConvexPWL({0.0}, {0.0}, 0.0, 2.0)), std::invalid_argument);
}

TEST_CASE("from_iqf") {
    const AtomicDistribution c = coin();
    CHECK(approx_equal(from_iqf(iqf::iqf(c)), c));
    const ConvexPWL zero({0.0, 1.0}, {0.0, 0.0}, 0.0, 0.0, Interval(0.0, 1.0));
    CHECK(approx_equal(from_iqf(zero), AtomicDistribution::point_mass(0.0)));
    const ConvexPWL ramp({0.0, 1.0}, {0.0, 2.5}, 0.0, 0.0, Interval(0.0, 1.0));
    CHECK(approx_equal(from_iqf(ramp), AtomicDistribution::point_mass(2.5)));

    const ConvexPWL negative({0.0, 1.0}, {-1.0, 0.0}, 0.0, 0.0, Interval(0.0, 1.0));
    CHECK_THROWS_AS(from_iqf(negative), std::invalid_argument);
    const ConvexPWL nozero({0.0, 1.0}, {1.0, 2.0}, 0.0, 0.0, Interval(0.0, 1.0));
    CHECK_THROWS_AS(from_iqf(nozero), std::invalid_argument);
    CHECK_THROWS_AS(from_iqf(ConvexPWL::abs_value()), std::invalid_argument);
}

TEST_CASE("round trips on random laws") {
    auto rng = make_rng(83);
    for (int t = 0; t < 200; ++t) {
        const AtomicDistribution d = random_law(rng, 1, 8, -6.0, 6.0);
        CHECK(approx_equal(from_idf(idf(d)), d, 1e-9));
        CHECK(approx_equal(from_iqf(iqf::iqf(d)), d, 1e-9));
    }
}

TEST_CASE("negate reflections") {
    const AtomicDistribution c = coin();
    CHECK(approx_equal(c.negate(), c));
    CHECK(approx_equal(AtomicDistribution::point_mass(2.0).negate(),
                       AtomicDistribution::point_mass(-2.0)));

    const AtomicDistribution q = quarter_law();
    const AtomicDistribution nq = q.negate();
    CHECK(nq.locations() == std::vector<double>{-2.0, 0.0});
    CHECK(nq.masses()[0] == 0.75);
    for (double u : {0.0, 0.25, 0.5, 1.0})
        CHECK(iqf::iqf(nq).evaluate(u) == doctest::Approx(iqf::iqf(q).evaluate(1.0 - u)).epsilon(1e-12));

    // Phi_{-X}(x) = x + Phi_X(-x)
    auto rng = make_rng(84);
    std::uniform_real_distribution<double> xd(-6.0, 6.0);
    for (int t = 0; t < 100; ++t) {
        const AtomicDistribution d = random_law(rng, 1, 6, -5.0, 5.0);
        const double x = xd(rng);
        CHECK(idf(d.negate()).evaluate(x) ==
              doctest::Approx(x + idf(d).evaluate(-x)).epsilon(1e-12));
    }
}

TEST_CASE("moments") {
    const AtomicDistribution c = coin();
    CHECK(c.mean() == 0.0);
    CHECK(c.pos_part_mean() == 0.5);
    CHECK(c.neg_part_mean() == 0.5);
    const AtomicDistribution m3 = AtomicDistribution::point_mass(-3.0);
    CHECK(m3.mean() == -3.0);
    CHECK(m3.pos_part_mean() == 0.0);
    CHECK(m3.neg_part_mean() == 3.0);
    CHECK(quarter_law().mean() == 1.5);

    auto rng = make_rng(85);
    for (int t = 0; t < 100; ++t) {
        const AtomicDistribution d = random_law(rng, 1, 8, -5.0, 5.0);
        CHECK(d.pos_part_mean() - d.neg_part_mean() ==
              doctest::Approx(d.mean()).epsilon(1e-12));
        // tail limits of the IQF are the one-sided means
        const ConvexPWL q = iqf::iqf(d);
        CHECK(q.evaluate(0.0) == doctest::Approx(d.neg_part_mean()).epsilon(1e-12));
        CHECK(q.evaluate(1.0) == doctest::Approx(d.pos_part_mean()).epsilon(1e-12));
    }
}

TEST_CASE("transform identities on random laws") {
    auto rng = make_rng(86);
    std::uniform_real_distribution<double> xd(-7.0, 7.0);
    for (int t = 0; t < 150; ++t) {
        const AtomicDistribution d = random_law(rng, 1, 8, -6.0, 6.0);
        const ConvexPWL j = idf(d);
        const ConvexPWL q = iqf::iqf(d);

        // Phi(b) - Phi(a) = E[(b-X)+ - (X-a)-]
        double a = xd(rng), b = xd(rng);
        if (a > b) std::swap(a, b);
        long double e = 0.0L;
        for (std::size_t i = 0; i < d.size(); ++i) {
            const double x = d.locations()[i];
            e += static_cast<long double>(std::max(b - x, 0.0) -
                                          std::max(-(x - a), 0.0)) *
                 d.masses()[i];
        }
        CHECK(j.evaluate(b) - j.evaluate(a) ==
              doctest::Approx(static_cast<double>(e)).epsilon(1e-11));

        // minimizer identity: Q(F(x)) = x F(x) - Phi(x)
        const double x = xd(rng);
        const double fx = d.cdf(x);
        CHECK(q.evaluate(fx) == doctest::Approx(x * fx - j.evaluate(x)).epsilon(1e-11));

        // the zero set of Q is [F(0-0), F(0)]
        const double z0 = d.cdf_left(0.0), z1 = d.cdf(0.0);
        if (z0 < 1.0 && z1 > 0.0) {
            const double mid = 0.5 * (std::max(z0, 0.0) + std::min(z1, 1.0));
            CHECK(q.evaluate(mid) == doctest::Approx(0.0).epsilon(1e-12));
        }
        // subdifferential of Q is the quantile pair
        const double u = std::uniform_real_distribution<double>(0.01, 0.99)(rng);
        const Interval dq = q.subdifferential(u);
        CHECK(dq.lo == doctest::Approx(d.quantile_left(u)).epsilon(1e-9));
        CHECK(dq.hi == doctest::Approx(d.quantile_right(u)).epsilon(1e-9));
    }
}
