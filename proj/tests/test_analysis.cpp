#include <doctest.h>

#include <cmath>

#include "qagap/analysis.hpp"
#include "qagap/errors.hpp"
#include "qagap/spectral.hpp"

using namespace qagap;

TEST_CASE("villain potential values") {
    CHECK(villain_potential(0.0, 0.0, 0.0, 3.7) == doctest::Approx(-1.0));
    // equals the s=1 two-spin ground energy per spin
    CHECK(villain_potential(1.0, 1.0, 1.0, 0.0) == doctest::Approx(-1.005));
    CHECK_THROWS_AS(villain_potential(1.2, 0.0, 0.5, 0.0), InvalidModelError);
    CHECK_THROWS_AS(villain_potential(0.0, 0.0, 1.5, 0.0), InvalidModelError);

    // the field term reads h1 z1 - h2 z2, so the swap symmetry holds for
    // opposite fields h2 = -h1
    for (double z1 : {-0.7, 0.1, 0.6})
        for (double z2 : {-0.3, 0.5})
            CHECK(villain_potential(z1, z2, 0.4, 1.3, 0.8, -0.8) ==
                  villain_potential(z2, z1, 0.4, 1.3, 0.8, -0.8));
}

TEST_CASE("villain vs two-spin diagonal at s=1") {
    // with z = (M1, M2)/(n/4) the s=1 potential per spin matches the
    // reduced-basis diagonal divided by n
    ModelSpec spec;
    spec.kind = ModelKind::TwoSpin;
    spec.n = 16;
    const OperatorMatrix h = build_two_spin(spec, 1.0);
    const ProductDickeBasis basis(16);
    for (int i : {0, 7, 40, basis.dim() - 1}) {
        const double z1 = basis.m1(i) / 4.0, z2 = basis.m2(i) / 4.0;
        CHECK(h.to_dense()(i, i) / 16.0 ==
              doctest::Approx(villain_potential(z1, z2, 1.0, 0.0)).epsilon(1e-12));
    }
}

TEST_CASE("surface minima classification matches the paper's pictures") {
    // stoquastic case near its minimum gap: barrier-separated double minimum
    const PotentialSurface stoq = surface_minima(0.722, 0.0, 1.0, 0.49);
    CHECK(stoq.double_minimum);
    CHECK(stoq.minima.size() >= 2);
    CHECK(std::abs(stoq.minima[0].value - stoq.minima[1].value) < 5e-3);
    CHECK(stoq.barrier > 1e-4);

    // optimal catalyst at s = 0.5: a single wide minimum
    const PotentialSurface nonstoq = surface_minima(0.5, 2.275, 1.0, 0.49);
    CHECK_FALSE(nonstoq.double_minimum);

    // over-strong catalyst: the barrier reappears
    const PotentialSurface strong = surface_minima(0.697, 4.0, 1.0, 0.49);
    CHECK(strong.double_minimum);

    // s = 0: unique minimum at the origin
    const PotentialSurface driver = surface_minima(0.0, 1.0, 1.0, 0.49);
    CHECK_FALSE(driver.double_minimum);
    CHECK(std::abs(driver.minima[0].z1) < 1e-6);
    CHECK(std::abs(driver.minima[0].z2) < 1e-6);

    // s = 1: polarized corner
    const PotentialSurface final_ = surface_minima(1.0, 2.0, 1.0, 0.49);
    CHECK(final_.minima[0].z1 == doctest::Approx(1.0));
    CHECK(final_.minima[0].z2 == doctest::Approx(1.0));
    CHECK(final_.minima[0].value == doctest::Approx(-1.005));
}

TEST_CASE("first order perturbation theory on the n=8 ring") {
    const IsingInstance inst = canonical_two_ring(8);

    const PTReport stoq = first_order_pt(inst, -1.0);
    REQUIRE(stoq.excited_eigenvalues.size() == 2);
    CHECK(stoq.excited_eigenvalues[0] == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(stoq.ground_eigenvalues.cwiseAbs().maxCoeff() < 1e-10);
    // eigenvector (sqrt2 |a> + |b>)/sqrt3 with |a> the size-4 orbit
    REQUIRE(stoq.excited_orbit_sizes.size() == 2);
    const int ia = stoq.excited_orbit_sizes[0] == 4 ? 0 : 1;
    const int ib = 1 - ia;
    CHECK(std::abs(stoq.excited_eigenvectors(ia, 0)) ==
          doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-10));
    CHECK(std::abs(stoq.excited_eigenvectors(ib, 0)) ==
          doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-10));

    const PTReport nonstoq = first_order_pt(inst, 1.0);
    CHECK(nonstoq.excited_eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(std::abs(nonstoq.excited_eigenvectors(ia, 0)) ==
          doctest::Approx(std::sqrt(1.0 / 3.0)).epsilon(1e-10));
    CHECK(std::abs(nonstoq.excited_eigenvectors(ib, 0)) ==
          doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-10));
    CHECK(nonstoq.ground_eigenvalues.cwiseAbs().maxCoeff() < 1e-10);

    // the stoquastic crossing estimate sits closer to s=1
    CHECK(stoq.crossing_estimate > nonstoq.crossing_estimate);
    CHECK(stoq.crossing_estimate > 0.0);
}

TEST_CASE("PT eigenvalues are degenerate-basis independent") {
    // the same physics from the n=12 instance
    const IsingInstance inst = canonical_two_ring(12);
    const PTReport r = first_order_pt(inst, -1.0);
    CHECK(r.excited_eigenvalues[0] == doctest::Approx(-2.0).epsilon(1e-10));
    // orthonormal eigenvectors
    const DenseMatrix vtv =
        r.excited_eigenvectors.transpose() * r.excited_eigenvectors;
    CHECK((vtv - DenseMatrix::Identity(vtv.rows(), vtv.cols())).cwiseAbs().maxCoeff() <
          1e-12);
}

TEST_CASE("fit_scaling: synthetic data") {
    std::vector<double> ns, ge, gp;
    for (int n = 8; n <= 32; n += 4) {
        ns.push_back(n);
        ge.push_back(2.0 * std::exp(-0.3 * n));
        gp.push_back(std::pow(double(n), -2.0));
    }
    const FitResult fe = fit_scaling(ns, ge);
    CHECK(fe.exp_rate == doctest::Approx(0.3).epsilon(1e-10));
    CHECK(fe.exp_prefactor == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(fe.preferred == "exp");

    const FitResult fp = fit_scaling(ns, gp);
    CHECK(fp.poly_exponent == doctest::Approx(2.0).epsilon(1e-10));
    CHECK(fp.preferred == "poly");

    // scale equivariance
    std::vector<double> scaled = ge;
    for (double& g : scaled) g *= 7.5;
    const FitResult fs = fit_scaling(ns, scaled);
    CHECK(fs.exp_rate == doctest::Approx(fe.exp_rate).epsilon(1e-10));
    CHECK(fs.exp_prefactor == doctest::Approx(7.5 * fe.exp_prefactor).epsilon(1e-10));

    CHECK_THROWS_AS(fit_scaling({1, 2, 3}, {1, 1, 1}), InvalidModelError);
    CHECK_THROWS_AS(fit_scaling(ns, std::vector<double>(ns.size(), 0.0)), InvalidModelError);
}

TEST_CASE("percentile definition") {
    std::vector<double> v{4.0, 1.0, 3.0, 2.0};
    CHECK(percentile(v, 0) == doctest::Approx(1.0));
    CHECK(percentile(v, 100) == doctest::Approx(4.0));
    CHECK(percentile(v, 50) == doctest::Approx(2.5));
    CHECK(percentile(v, 25) == doctest::Approx(1.75));
}

TEST_CASE("noise ensemble: sigma 0 reproduces the noiseless gap, deterministic") {
    ModelSpec family;
    family.kind = ModelKind::PSpin;
    family.p = 6;
    family.lambda = 4.0;

    NoiseEnsembleOptions opts;
    opts.sigma = 0.0;
    opts.realizations = 3;
    opts.bootstrap = 50;
    opts.seed = 11;
    opts.grid_points = 51;

    const NoiseEnsembleStats stats = noise_ensemble(family, {8}, opts);
    REQUIRE(stats.sizes.size() == 1);
    const NoiseSizeStats& row = stats.sizes[0];
    // sigma = 0 realizations all collapse onto the full-space noiseless value;
    // the sector reference differs only through which subspace E1 lives in
    for (double g : row.min_gaps)
        CHECK(g == doctest::Approx(row.min_gaps[0]).epsilon(1e-12));

    const NoiseEnsembleStats again = noise_ensemble(family, {8}, opts);
    CHECK(again.sizes[0].percentiles == row.percentiles);
    CHECK(again.sizes[0].ci_low == row.ci_low);
    CHECK(again.sizes[0].ci_high == row.ci_high);

    // percentiles are monotone in the level and CIs bracket the estimate
    for (std::size_t i = 1; i < row.percentiles.size(); ++i)
        CHECK(row.percentiles[i] >= row.percentiles[i - 1] - 1e-15);
    for (std::size_t i = 0; i < row.percentiles.size(); ++i) {
        CHECK(row.ci_low[i] <= row.percentiles[i] + 1e-15);
        CHECK(row.ci_high[i] >= row.percentiles[i] - 1e-15);
    }
}

TEST_CASE("noise ensemble guards") {
    ModelSpec family;
    family.kind = ModelKind::PSpin;
    family.p = 6;
    NoiseEnsembleOptions opts;
    CHECK_THROWS_AS(noise_ensemble(family, {16}, opts), ResourceError);
}
