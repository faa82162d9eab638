#include <doctest.h>

#include <cmath>
#include <vector>

#include "xyzt/model.hpp"

using namespace xyzt;

namespace {

const ModelParams kBase{0.5, 0.3, 0.8, 1.0, 0.0, 1.0};

// sign-change times of a sampled scalar series
std::vector<double> zero_crossings(const std::vector<double>& ts, const std::vector<double>& ys) {
    std::vector<double> out;
    for (size_t i = 1; i < ys.size(); ++i)
        if ((ys[i - 1] < 0.0 && ys[i] > 0.0) || (ys[i - 1] > 0.0 && ys[i] < 0.0)) {
            const double frac = ys[i - 1] / (ys[i - 1] - ys[i]);
            out.push_back(ts[i - 1] + frac * (ts[i] - ts[i - 1]));
        }
    return out;
}

} // namespace

TEST_SUITE("model") {

TEST_CASE("hamiltonian nonzero pattern at the default couplings") {
    const ComplexMatrix h = hamiltonian(kBase);
    CHECK(h(0, 0) == cplx{0.8, 0.0});
    CHECK(h(1, 1) == cplx{-0.8, 0.0});
    CHECK(h(2, 2) == cplx{-0.8, 0.0});
    CHECK(h(3, 3) == cplx{0.8, 0.0});
    CHECK(std::abs(h(0, 3) - cplx{0.2, 0.0}) < 1e-15);
    CHECK(std::abs(h(1, 2) - cplx{0.8, 2.0}) < 1e-15);
    CHECK(std::abs(h(2, 1) - cplx{0.8, -2.0}) < 1e-15);
    for (auto [i, j] : {std::pair{0, 1}, {0, 2}, {1, 3}, {2, 3}}) {
        CHECK(std::abs(h(i, j)) == 0.0);
        CHECK(std::abs(h(j, i)) == 0.0);
    }
    CHECK(hermiticity_defect(h) < 1e-15);
}

TEST_CASE("hamiltonian symmetry limits") {
    ModelParams sym = kBase;
    sym.chi = 0.0;
    sym.Jx = sym.Jy = 0.4;
    const ComplexMatrix h = hamiltonian(sym);
    CHECK(std::abs(h(0, 3)) == 0.0);
    CHECK(std::abs(h(1, 2).imag()) == 0.0);
    CHECK(h(1, 2).real() == doctest::Approx(0.8));
}

TEST_CASE("derived constants at the default parameters") {
    const DerivedConstants d = derived_constants(kBase);
    CHECK(d.beta == doctest::Approx(2.154065922853802).epsilon(1e-14));
    CHECK(d.u == doctest::Approx(0.37139067635410367).epsilon(1e-14));
    CHECK(d.v == doctest::Approx(0.9284766908852592).epsilon(1e-14));
    CHECK(std::abs(d.xi) == doctest::Approx(1.0).epsilon(1e-12));

    for (double chi : {0.0, 0.1, 0.7, 2.5}) {
        ModelParams m = kBase;
        m.chi = chi;
        const DerivedConstants dc = derived_constants(m);
        CHECK(dc.u * dc.u + dc.v * dc.v == doctest::Approx(1.0).epsilon(1e-12));
    }

    ModelParams dmfree = kBase;
    dmfree.chi = 0.0;
    dmfree.Jx = dmfree.Jy = 0.6;
    const DerivedConstants df = derived_constants(dmfree);
    CHECK(df.beta == doctest::Approx(1.2));
    CHECK(df.v == 0.0);
    CHECK(df.xi == cplx{1.0, 0.0});
}

TEST_CASE("eigensystem: energies, residuals, orthonormality, trace") {
    const auto [sys, d] = eigensystem(kBase);
    CHECK(sys.energies[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(sys.energies[1] == doctest::Approx(-0.8 + d.beta).epsilon(1e-14));
    CHECK(sys.energies[2] == doctest::Approx(-0.8 - d.beta).epsilon(1e-14));
    CHECK(sys.energies[3] == doctest::Approx(0.6).epsilon(1e-14));
    CHECK_FALSE(sys.degenerate_inner);

    // doublet splittings
    CHECK(sys.energies[0] - sys.energies[3] == doctest::Approx(2 * (kBase.Jx - kBase.Jy)));
    CHECK(sys.energies[1] - sys.energies[2] == doctest::Approx(2 * d.beta));

    const ComplexMatrix h = hamiltonian(kBase);
    double esum = 0.0;
    for (int c = 0; c < 4; ++c) {
        esum += sys.energies[static_cast<size_t>(c)];
        const auto& v = sys.eigenvectors[static_cast<size_t>(c)];
        double resid2 = 0.0;
        for (int i = 0; i < 4; ++i) {
            cplx hv{0.0, 0.0};
            for (int j = 0; j < 4; ++j) hv += h(i, j) * v[j];
            resid2 += std::norm(hv - sys.energies[static_cast<size_t>(c)] * v[i]);
        }
        CHECK(std::sqrt(resid2) <= 1e-10);
        for (int c2 = 0; c2 < c; ++c2) {
            cplx dot{0.0, 0.0};
            for (int i = 0; i < 4; ++i)
                dot += std::conj(sys.eigenvectors[static_cast<size_t>(c2)][i]) * v[i];
            CHECK(std::abs(dot) < 1e-12);
        }
    }
    CHECK(std::abs(esum - h.trace().real()) < 1e-12);
}

TEST_CASE("eigensystem flags the degenerate inner doublet at beta = 0") {
    ModelParams deg = kBase;
    deg.chi = 0.0;
    deg.Jx = 0.5;
    deg.Jy = -0.5;
    const auto [sys, d] = eigensystem(deg);
    CHECK(d.beta == 0.0);
    CHECK(sys.degenerate_inner);
    CHECK(sys.energies[1] == doctest::Approx(-0.8));
    CHECK(sys.energies[2] == doctest::Approx(-0.8));
}

TEST_CASE("propagator: identity at t = 0 and unitarity") {
    CHECK(max_abs_diff(propagator(kBase, 0.0), ComplexMatrix::identity(4)) < 1e-14);
    for (double t : {0.3, 1.7, 9.2}) {
        const ComplexMatrix u = propagator(kBase, t);
        CHECK(max_abs_diff(multiply(u.adjoint(), u), ComplexMatrix::identity(4)) < 1e-12);
    }
}

TEST_CASE("analytic_state boundary and structural cases") {
    for (double p : {0.0, 0.33, 0.66, 1.0}) {
        ModelParams m = kBase;
        m.p = p;
        m.gamma = 0.25;
        CHECK(max_abs_diff(analytic_state(m, 0.0).matrix(), horodecki_state(p).matrix()) <= 1e-15);
    }

    ModelParams bellline = kBase;
    bellline.p = 1.0;
    for (double t : {0.0, 0.6, 3.1, 8.8}) {
        const DensityMatrix rho = analytic_state(bellline, t);
        CHECK(std::abs(rho(0, 0)) == 0.0);
        CHECK(std::abs(rho(3, 3)) == 0.0);
        CHECK(std::abs(rho(0, 3)) == 0.0);
    }

    ModelParams sepline = kBase;
    sepline.p = 0.0;
    for (double t : {0.4, 2.2, 7.3}) {
        const DensityMatrix rho = analytic_state(sepline, t);
        CHECK(std::abs(rho(1, 1)) == 0.0);
        CHECK(std::abs(rho(2, 2)) == 0.0);
        CHECK(std::abs(rho(1, 2)) == 0.0);
    }

    ModelParams damped = kBase;
    damped.p = 0.47;
    damped.gamma = 0.25;
    for (double t = 0.0; t <= 10.0; t += 0.37)
        CHECK(std::abs(analytic_state(damped, t).matrix().trace() - cplx{1.0, 0.0}) <= 1e-15);

    CHECK_THROWS_AS(analytic_state(kBase, -0.5), std::invalid_argument);
}

TEST_CASE("analytic_state purity is conserved without damping") {
    ModelParams m = kBase;
    m.p = 0.66;
    const double p0 = purity(analytic_state(m, 0.0));
    for (double t = 0.0; t <= 10.0; t += 0.05)
        CHECK(std::abs(purity(analytic_state(m, t)) - p0) <= 1e-10);
}

TEST_CASE("analytic element oscillation frequencies match the spectral gaps") {
    // outer coherence: Im rho14 ~ sin(2 (Jx-Jy) t), zeros pi/(2(Jx-Jy)) apart
    ModelParams outer = kBase;
    outer.p = 0.33;
    std::vector<double> ts, ys;
    for (double t = 0.0; t <= 40.0; t += 0.005) {
        ts.push_back(t);
        ys.push_back(analytic_state(outer, t).matrix()(0, 3).imag());
    }
    const auto zc = zero_crossings(ts, ys);
    REQUIRE(zc.size() >= 3);
    const double period_expect = 3.14159265358979323846 / (2.0 * (outer.Jx - outer.Jy));
    for (size_t i = 1; i < zc.size(); ++i)
        CHECK(zc[i] - zc[i - 1] == doctest::Approx(period_expect).epsilon(0.02));

    // inner populations: rho22 - p/2 ~ sin(2 beta t), zeros pi/(2 beta) apart
    const DerivedConstants d = derived_constants(outer);
    ts.clear();
    ys.clear();
    for (double t = 0.0; t <= 6.0; t += 0.0005) {
        ts.push_back(t);
        ys.push_back(analytic_state(outer, t).matrix()(1, 1).real() - outer.p / 2.0);
    }
    const auto zc2 = zero_crossings(ts, ys);
    REQUIRE(zc2.size() >= 3);
    for (size_t i = 1; i < zc2.size(); ++i)
        CHECK(zc2[i] - zc2[i - 1] ==
              doctest::Approx(3.14159265358979323846 / (2.0 * d.beta)).epsilon(0.02));
}

TEST_CASE("parameter validation") {
    ModelParams bad = kBase;
    bad.gamma = -0.1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = kBase;
    bad.p = 1.2;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = kBase;
    bad.Jx = std::nan("");
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

} // TEST_SUITE
