#include <doctest.h>

#include <cmath>

#include "xyzt/matcore.hpp"
#include "xyzt/rng.hpp"

using namespace xyzt;

namespace {

ComplexMatrix random_hermitian(SplitMix64& rng, int dim) {
    ComplexMatrix g(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = rng.next_complex_gaussian();
    ComplexMatrix h(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) h(i, j) = 0.5 * (g(i, j) + std::conj(g(j, i)));
    return h;
}

ComplexMatrix random_psd(SplitMix64& rng, int dim, int rank) {
    ComplexMatrix g(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < rank; ++j) g(i, j) = rng.next_complex_gaussian();
    ComplexMatrix out(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            cplx s{0.0, 0.0};
            for (int k = 0; k < rank; ++k) s += g(i, k) * std::conj(g(j, k));
            out(i, j) = s;
        }
    return out;
}

ComplexMatrix reconstruct(const EigenDecomposition& ed) {
    const int n = ed.eigenvectors.dim();
    ComplexMatrix out(n);
    for (int c = 0; c < n; ++c)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                out(i, j) += ed.eigenvalues[static_cast<size_t>(c)] * ed.eigenvectors(i, c) *
                             std::conj(ed.eigenvectors(j, c));
    return out;
}

} // namespace

TEST_SUITE("matcore") {

TEST_CASE("multiply: identity, Pauli involution, sigma_x sigma_y = i sigma_z") {
    SplitMix64 rng(1);
    const ComplexMatrix a = random_hermitian(rng, 4);
    CHECK(max_abs_diff(multiply(ComplexMatrix::identity(4), a), a) == doctest::Approx(0.0));

    CHECK(max_abs_diff(multiply(sigma_x(), sigma_x()), ComplexMatrix::identity(2)) == 0.0);

    ComplexMatrix isz(2);
    isz(0, 0) = cplx{0.0, 1.0};
    isz(1, 1) = cplx{0.0, -1.0};
    CHECK(max_abs_diff(multiply(sigma_x(), sigma_y()), isz) == 0.0);

    CHECK_THROWS_AS(multiply(sigma_x(), ComplexMatrix::identity(4)), std::invalid_argument);
}

TEST_CASE("trace_product: identity, traceless Pauli product, Bell flip invariance") {
    CHECK(trace_product(ComplexMatrix::identity(4), ComplexMatrix::identity(4)).real() ==
          doctest::Approx(4.0));
    CHECK(std::abs(trace_product(sigma_x(), sigma_y())) == doctest::Approx(0.0));

    // |Psi+> = (|01> + |10>)/sqrt(2); its projector is invariant under the
    // spin flip, so tr(rho rho_tilde) = tr(rho^2) = 1
    ComplexMatrix bell(4);
    for (int i : {1, 2})
        for (int j : {1, 2}) bell(i, j) = 0.5;
    const ComplexMatrix yy = kron(sigma_y(), sigma_y());
    const ComplexMatrix flipped = multiply(multiply(yy, bell.conjugate()), yy);
    CHECK(std::abs(trace_product(bell, flipped) - cplx{1.0, 0.0}) < 1e-15);
}

TEST_CASE("trace_product equals trace of multiply") {
    SplitMix64 rng(2);
    for (int iter = 0; iter < 50; ++iter) {
        const ComplexMatrix a = random_hermitian(rng, 4);
        const ComplexMatrix b = random_hermitian(rng, 4);
        CHECK(std::abs(trace_product(a, b) - multiply(a, b).trace()) < 1e-13);
    }
}

TEST_CASE("hermitian_eigen: diagonal and Pauli spectra") {
    ComplexMatrix d(4);
    d(0, 0) = 1.0; d(1, 1) = 2.0; d(2, 2) = 3.0; d(3, 3) = 4.0;
    const auto ed = hermitian_eigen(d);
    for (int i = 0; i < 4; ++i) {
        CHECK(ed.eigenvalues[static_cast<size_t>(i)] == doctest::Approx(i + 1.0));
        CHECK(std::abs(ed.eigenvectors(i, i)) == doctest::Approx(1.0));
    }

    const auto px = hermitian_eigen(sigma_x());
    CHECK(px.eigenvalues[0] == doctest::Approx(-1.0));
    CHECK(px.eigenvalues[1] == doctest::Approx(1.0));
}

TEST_CASE("hermitian_eigen: reconstruction, orthonormality, trace identities") {
    SplitMix64 rng(3);
    for (int iter = 0; iter < 500; ++iter) {
        const int dim = (iter % 2 == 0) ? 4 : 2;
        const ComplexMatrix a = random_hermitian(rng, dim);
        const auto ed = hermitian_eigen(a);

        CHECK(max_abs_diff(reconstruct(ed), a) < 1e-12);

        // V^dagger V = I elementwise
        const ComplexMatrix vhv = multiply(ed.eigenvectors.adjoint(), ed.eigenvectors);
        CHECK(max_abs_diff(vhv, ComplexMatrix::identity(dim)) < 1e-12);

        double sum = 0.0, sum2 = 0.0;
        for (double w : ed.eigenvalues) {
            sum += w;
            sum2 += w * w;
        }
        CHECK(std::abs(sum - a.trace().real()) < 1e-11);
        CHECK(std::abs(sum2 - trace_product(a, a).real()) < 1e-10);

        for (size_t i = 1; i < ed.eigenvalues.size(); ++i)
            CHECK(ed.eigenvalues[i] >= ed.eigenvalues[i - 1]);
    }
}

TEST_CASE("hermitian_eigen rejects non-Hermitian input") {
    ComplexMatrix a(2);
    a(0, 1) = 1.0;
    a(1, 0) = 0.5;
    CHECK_THROWS_AS(hermitian_eigen(a), std::invalid_argument);
}

TEST_CASE("psd_sqrt: identity and diagonal cases") {
    CHECK(max_abs_diff(psd_sqrt(ComplexMatrix::identity(4)), ComplexMatrix::identity(4)) < 1e-14);

    ComplexMatrix d(4);
    d(0, 0) = 4.0; d(1, 1) = 1.0;
    ComplexMatrix expect(4);
    expect(0, 0) = 2.0; expect(1, 1) = 1.0;
    CHECK(max_abs_diff(psd_sqrt(d), expect) < 1e-14);
}

TEST_CASE("psd_sqrt squaring oracle on random PSD matrices") {
    SplitMix64 rng(4);
    for (int iter = 0; iter < 1000; ++iter) {
        const ComplexMatrix a = random_psd(rng, 4, 1 + iter % 4);
        const ComplexMatrix s = psd_sqrt(a);
        CHECK(hermiticity_defect(s) < 1e-12);
        CHECK(max_abs_diff(multiply(s, s), a) < 1e-11);
    }
}

TEST_CASE("psd_sqrt rejects indefinite input") {
    ComplexMatrix d(4);
    d(0, 0) = 1.0; d(1, 1) = -0.5;
    CHECK_THROWS_AS(psd_sqrt(d), std::invalid_argument);
}

} // TEST_SUITE
