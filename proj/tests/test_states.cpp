#include <doctest.h>

#include <cmath>

#include "xyzt/states.hpp"

using namespace xyzt;

namespace {

DensityMatrix bell_psi_plus() { return horodecki_state(1.0); }

DensityMatrix basis_projector(int k) {
    ComplexMatrix m(4);
    m(k, k) = 1.0;
    return DensityMatrix::validated(std::move(m));
}

} // namespace

TEST_SUITE("states") {

TEST_CASE("DensityMatrix validation rejects bad inputs") {
    ComplexMatrix bad_trace(4);
    bad_trace(0, 0) = 0.7;
    CHECK_THROWS_AS(DensityMatrix::validated(std::move(bad_trace)), std::invalid_argument);

    ComplexMatrix skew(4);
    skew(0, 0) = skew(1, 1) = 0.5;
    skew(0, 1) = 0.3;
    skew(1, 0) = 0.1;
    CHECK_THROWS_AS(DensityMatrix::validated(std::move(skew)), std::invalid_argument);

    ComplexMatrix indefinite(4);
    indefinite(0, 0) = 1.5;
    indefinite(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityMatrix::validated(std::move(indefinite)), std::invalid_argument);
    // the relaxed constructor defers exactly the eigenvalue check
    ComplexMatrix indefinite2(4);
    indefinite2(0, 0) = 1.5;
    indefinite2(1, 1) = -0.5;
    CHECK_NOTHROW(DensityMatrix::relaxed(std::move(indefinite2)));
}

TEST_CASE("partial_trace: maximally entangled, product, and Horodecki states") {
    const DensityMatrix bell = bell_psi_plus();
    for (Subsystem side : {Subsystem::A, Subsystem::B}) {
        const DensityMatrix red = partial_trace(bell, side);
        CHECK(std::abs(red(0, 0) - cplx{0.5, 0.0}) < 1e-15);
        CHECK(std::abs(red(1, 1) - cplx{0.5, 0.0}) < 1e-15);
        CHECK(std::abs(red(0, 1)) < 1e-15);
    }

    // |0><0| x |1><1|, keep A -> |0><0|
    const DensityMatrix prod = basis_projector(1);
    const DensityMatrix redA = partial_trace(prod, Subsystem::A);
    CHECK(std::abs(redA(0, 0) - cplx{1.0, 0.0}) < 1e-15);
    CHECK(std::abs(redA(1, 1)) < 1e-15);

    for (double p : {0.0, 0.25, 0.5, 0.9, 1.0}) {
        const DensityMatrix red = partial_trace(horodecki_state(p), Subsystem::A);
        CHECK(std::abs(red(0, 0).real() - p / 2.0) < 1e-15);
        CHECK(std::abs(red(1, 1).real() - (1.0 - p / 2.0)) < 1e-15);
        CHECK(std::abs(red(0, 1)) < 1e-15);
    }
}

TEST_CASE("partial_trace outputs are unit-trace and PSD") {
    SplitMix64 rng(11);
    for (int iter = 0; iter < 300; ++iter) {
        const DensityMatrix rho = random_density(1 + iter % 4, rng);
        for (Subsystem side : {Subsystem::A, Subsystem::B}) {
            const DensityMatrix red = partial_trace(rho, side);
            CHECK(std::abs(red.matrix().trace() - cplx{1.0, 0.0}) < 1e-12);
            const auto ed = hermitian_eigen(red.matrix());
            CHECK(ed.eigenvalues.front() > -1e-12);
        }
    }
}

TEST_CASE("spin_flip: basis flip, Bell invariance, involution") {
    const ComplexMatrix flipped00 = spin_flip(basis_projector(0));
    CHECK(std::abs(flipped00(3, 3) - cplx{1.0, 0.0}) < 1e-15);
    CHECK(flipped00.max_abs() == doctest::Approx(1.0));

    const DensityMatrix bell = bell_psi_plus();
    CHECK(max_abs_diff(spin_flip(bell), bell.matrix()) < 1e-15);

    SplitMix64 rng(12);
    for (int iter = 0; iter < 1000; ++iter) {
        const DensityMatrix rho = random_density(1 + iter % 4, rng);
        const ComplexMatrix ft = spin_flip(rho);
        CHECK(max_abs_diff(spin_flip(ft), rho.matrix()) < 1e-15);
        CHECK(std::abs(ft.trace() - rho.matrix().trace()) < 1e-14);
        CHECK(hermiticity_defect(ft) < 1e-14);
        CHECK(hermitian_eigen(ft).eigenvalues.front() > -1e-12);
    }
}

TEST_CASE("purity: pure, maximally mixed, Horodecki closed form") {
    CHECK(purity(bell_psi_plus()) == doctest::Approx(1.0).epsilon(1e-14));

    ComplexMatrix mixed(4);
    for (int i = 0; i < 4; ++i) mixed(i, i) = 0.25;
    CHECK(purity(DensityMatrix::validated(std::move(mixed))) == doctest::Approx(0.25));

    for (double p : {0.0, 0.3, 0.5, 0.8, 1.0})
        CHECK(purity(horodecki_state(p)) == doctest::Approx(p * p + (1 - p) * (1 - p)).epsilon(1e-14));

    // reduced-state purities bracket the 2x2 range
    CHECK(purity(partial_trace(bell_psi_plus(), Subsystem::A)) == doctest::Approx(0.5));
    CHECK(purity(partial_trace(basis_projector(1), Subsystem::B)) == doctest::Approx(1.0));
}

TEST_CASE("horodecki_state entries and rank structure") {
    const DensityMatrix bell = horodecki_state(1.0);
    CHECK(std::abs(bell(1, 1) - cplx{0.5, 0.0}) == 0.0);
    CHECK(std::abs(bell(1, 2) - cplx{0.5, 0.0}) == 0.0);
    CHECK(std::abs(bell(3, 3)) == 0.0);

    const DensityMatrix ground = horodecki_state(0.0);
    CHECK(std::abs(ground(3, 3) - cplx{1.0, 0.0}) == 0.0);
    CHECK(ground.matrix().max_abs() == 1.0);

    const DensityMatrix half = horodecki_state(0.5);
    CHECK(half(1, 1).real() == doctest::Approx(0.25));
    CHECK(half(2, 2).real() == doctest::Approx(0.25));
    CHECK(half(1, 2).real() == doctest::Approx(0.25));
    CHECK(half(3, 3).real() == doctest::Approx(0.5));

    CHECK_THROWS_AS(horodecki_state(-0.1), std::invalid_argument);
    CHECK_THROWS_AS(horodecki_state(1.1), std::invalid_argument);

    for (double p : {0.1, 0.33, 0.7, 0.99}) {
        const auto ed = hermitian_eigen(horodecki_state(p).matrix());
        int above = 0;
        for (double w : ed.eigenvalues)
            if (w > 1e-12) ++above;
        CHECK(above == 2);
    }
}

TEST_CASE("random_density: rank control and determinism") {
    SplitMix64 rng1(42);
    const DensityMatrix pure = random_density(1, rng1);
    CHECK(std::abs(purity(pure) - 1.0) < 1e-12);

    const DensityMatrix full = random_density(4, rng1);
    const auto ed = hermitian_eigen(full.matrix());
    for (double w : ed.eigenvalues) CHECK(w > 1e-12);

    for (int rank = 1; rank <= 4; ++rank) {
        SplitMix64 a(42), b(42);
        const DensityMatrix ra = random_density(rank, a);
        const DensityMatrix rb = random_density(rank, b);
        CHECK(max_abs_diff(ra.matrix(), rb.matrix()) == 0.0);
        // numerical rank equals the requested rank
        const auto spec = hermitian_eigen(ra.matrix()).eigenvalues;
        for (int i = 0; i < 4 - rank; ++i) CHECK(std::abs(spec[static_cast<size_t>(i)]) < 1e-12);
        for (int i = 4 - rank; i < 4; ++i) CHECK(spec[static_cast<size_t>(i)] > 1e-12);
    }

    SplitMix64 rng2(7);
    CHECK_THROWS_AS(random_density(0, rng2), std::invalid_argument);
    CHECK_THROWS_AS(random_density(5, rng2), std::invalid_argument);
}

TEST_CASE("random_pure: normalization, purity, determinism, splitting") {
    SplitMix64 rng(42);
    const PureState psi = random_pure(rng);
    double n2 = 0.0;
    for (const auto& a : psi.amplitudes()) n2 += std::norm(a);
    CHECK(std::abs(n2 - 1.0) < 1e-12);
    CHECK(std::abs(purity(psi.projector()) - 1.0) < 1e-12);

    SplitMix64 a(9), b(9);
    CHECK(max_abs_diff(random_pure(a).projector().matrix(), random_pure(b).projector().matrix()) == 0.0);

    // split streams are independent of parent consumption and of each other
    SplitMix64 parent(5);
    SplitMix64 c0 = parent.split(0);
    SplitMix64 c1 = parent.split(1);
    CHECK(c0.next() != c1.next());
    SplitMix64 parent2(5);
    SplitMix64 c0again = parent2.split(0);
    SplitMix64 c0seq(5);
    c0seq = c0seq.split(0);
    CHECK(c0again.next() == c0seq.next());
}

TEST_CASE("PureState rejects unnormalized amplitudes") {
    CHECK_THROWS_AS(PureState({cplx{1.0, 0.0}, cplx{1.0, 0.0}, 0.0, 0.0}), std::invalid_argument);
}

} // TEST_SUITE
