#include "xyzt/states.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace xyzt {

namespace {

constexpr double kHermTol = 1e-10;
constexpr double kTraceTol = 1e-10;
constexpr double kEigFloor = -1e-9;

void check_basic(const ComplexMatrix& m) {
    if (m.dim() != 2 && m.dim() != 4)
        throw std::invalid_argument("DensityMatrix: dim must be 2 or 4");
    if (!m.all_finite())
        throw std::invalid_argument("DensityMatrix: non-finite entries");
    const double defect = hermiticity_defect(m);
    if (defect > kHermTol) {
        std::ostringstream msg;
        msg << "DensityMatrix: not Hermitian (defect " << defect << ")";
        throw std::invalid_argument(msg.str());
    }
    const cplx tr = m.trace();
    if (std::abs(tr - cplx{1.0, 0.0}) > kTraceTol) {
        std::ostringstream msg;
        msg << "DensityMatrix: trace " << tr.real() << (tr.imag() < 0 ? "" : "+") << tr.imag()
            << "i not 1 within " << kTraceTol;
        throw std::invalid_argument(msg.str());
    }
}

} // namespace

DensityMatrix DensityMatrix::validated(ComplexMatrix m) {
    check_basic(m);
    const auto ed = hermitian_eigen(m);
    if (ed.eigenvalues.front() < kEigFloor) {
        std::ostringstream msg;
        msg << "DensityMatrix: minimum eigenvalue " << ed.eigenvalues.front() << " below " << kEigFloor;
        throw std::invalid_argument(msg.str());
    }
    return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::relaxed(ComplexMatrix m) {
    check_basic(m);
    return DensityMatrix(std::move(m));
}

PureState::PureState(std::array<cplx, 4> amplitudes) : amp_(amplitudes) {
    double n2 = 0.0;
    for (const auto& a : amp_) n2 += std::norm(a);
    if (std::abs(n2 - 1.0) > 1e-12)
        throw std::invalid_argument("PureState: amplitudes not normalized");
}

PureState PureState::normalized(std::array<cplx, 4> amplitudes) {
    double n2 = 0.0;
    for (const auto& a : amplitudes) n2 += std::norm(a);
    if (n2 <= 0.0) throw std::invalid_argument("PureState: zero vector");
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& a : amplitudes) a *= inv;
    return PureState(amplitudes);
}

DensityMatrix PureState::projector() const {
    ComplexMatrix m(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m(i, j) = amp_[static_cast<size_t>(i)] * std::conj(amp_[static_cast<size_t>(j)]);
    return DensityMatrix::relaxed(std::move(m));
}

DensityMatrix partial_trace(const DensityMatrix& rho, Subsystem keep) {
    if (rho.dim() != 4)
        throw std::invalid_argument("partial_trace: expected a 4x4 two-qubit state");
    const ComplexMatrix& m = rho.matrix();
    ComplexMatrix out(2);
    // index (a,b) -> 2a+b with a = qubit A, b = qubit B
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            cplx s{0.0, 0.0};
            for (int k = 0; k < 2; ++k) {
                if (keep == Subsystem::A)
                    s += m(2 * i + k, 2 * j + k);
                else
                    s += m(k * 2 + i, k * 2 + j);
            }
            out(i, j) = s;
        }
    }
    return DensityMatrix::relaxed(std::move(out));
}

namespace {

const ComplexMatrix& sigma_yy() {
    static const ComplexMatrix yy = kron(sigma_y(), sigma_y());
    return yy;
}

} // namespace

ComplexMatrix spin_flip(const ComplexMatrix& rho) {
    if (rho.dim() != 4)
        throw std::invalid_argument("spin_flip: expected a 4x4 two-qubit state");
    return multiply(multiply(sigma_yy(), rho.conjugate()), sigma_yy());
}

ComplexMatrix spin_flip(const DensityMatrix& rho) { return spin_flip(rho.matrix()); }

double purity(const DensityMatrix& rho) {
    const cplx p = trace_product(rho.matrix(), rho.matrix());
    if (std::abs(p.imag()) > 1e-12)
        throw std::runtime_error("purity: tr(rho^2) has a non-negligible imaginary part");
    return p.real();
}

DensityMatrix horodecki_state(double p) {
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("horodecki_state: p must lie in [0, 1]");
    ComplexMatrix m(4);
    m(1, 1) = p / 2.0;
    m(2, 2) = p / 2.0;
    m(1, 2) = p / 2.0;
    m(2, 1) = p / 2.0;
    m(3, 3) = 1.0 - p;
    return DensityMatrix::validated(std::move(m));
}

DensityMatrix random_density(int rank, SplitMix64& rng) {
    if (rank < 1 || rank > 4)
        throw std::invalid_argument("random_density: rank must be in 1..4");
    // G: 4 x rank, row-major
    std::array<cplx, 16> g{};
    for (int i = 0; i < 4; ++i)
        for (int r = 0; r < rank; ++r) g[static_cast<size_t>(i * 4 + r)] = rng.next_complex_gaussian();
    ComplexMatrix m(4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            cplx s{0.0, 0.0};
            for (int r = 0; r < rank; ++r)
                s += g[static_cast<size_t>(i * 4 + r)] * std::conj(g[static_cast<size_t>(j * 4 + r)]);
            m(i, j) = s;
        }
    const double tr = m.trace().real();
    m *= cplx{1.0 / tr, 0.0};
    // exact Hermitian symmetrization; products above round asymmetrically
    for (int i = 0; i < 4; ++i) {
        m(i, i) = cplx{m(i, i).real(), 0.0};
        for (int j = i + 1; j < 4; ++j) {
            const cplx v = 0.5 * (m(i, j) + std::conj(m(j, i)));
            m(i, j) = v;
            m(j, i) = std::conj(v);
        }
    }
    return DensityMatrix::validated(std::move(m));
}

PureState random_pure(SplitMix64& rng) {
    std::array<cplx, 4> amp;
    for (auto& a : amp) a = rng.next_complex_gaussian();
    return PureState::normalized(amp);
}

} // namespace xyzt
