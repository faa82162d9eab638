#include "xyzt/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace xyzt {

void ModelParams::validate() const {
    if (!(std::isfinite(Jx) && std::isfinite(Jy) && std::isfinite(Jz) && std::isfinite(chi)))
        throw std::invalid_argument("ModelParams: couplings must be finite");
    if (!(gamma >= 0.0) || !std::isfinite(gamma))
        throw std::invalid_argument("ModelParams: gamma must be finite and >= 0");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("ModelParams: p must lie in [0, 1]");
}

DerivedConstants derived_constants(const ModelParams& params) {
    params.validate();
    DerivedConstants d{};
    d.beta = std::hypot(2.0 * params.chi, params.Jx + params.Jy);
    if (d.beta > 0.0) {
        d.u = (params.Jx + params.Jy) / d.beta;
        d.v = 2.0 * params.chi / d.beta;
    } else {
        d.u = 1.0;  // degenerate inner doublet, any phase convention works
        d.v = 0.0;
    }
    d.xi = cplx{d.u, d.v};
    return d;
}

ComplexMatrix hamiltonian(const ModelParams& params) {
    params.validate();
    const cplx jx{params.Jx, 0.0}, jy{params.Jy, 0.0}, jz{params.Jz, 0.0}, c{params.chi, 0.0};
    ComplexMatrix h = jx * kron(sigma_x(), sigma_x());
    h += jy * kron(sigma_y(), sigma_y());
    h += jz * kron(sigma_z(), sigma_z());
    h += c * (kron(sigma_x(), sigma_y()) - kron(sigma_y(), sigma_x()));
    return h;
}

std::pair<EigenSystem, DerivedConstants> eigensystem(const ModelParams& params) {
    const DerivedConstants d = derived_constants(params);
    const double rt = 1.0 / std::sqrt(2.0);
    const cplx xic = std::conj(d.xi);

    // outer doublet couples |00> and |11| through Jx - Jy; the symmetric
    // combination carries Jz + (Jx - Jy)
    const std::array<double, 4> energies{
        params.Jx - params.Jy + params.Jz,
        -params.Jz + d.beta,
        -params.Jz - d.beta,
        -params.Jx + params.Jy + params.Jz,
    };
    EigenSystem sys{
        energies,
        {
            PureState({cplx{rt, 0.0}, 0.0, 0.0, cplx{rt, 0.0}}),
            PureState({0.0, cplx{rt, 0.0}, rt * xic, 0.0}),
            PureState({0.0, cplx{rt, 0.0}, -rt * xic, 0.0}),
            PureState({cplx{rt, 0.0}, 0.0, 0.0, cplx{-rt, 0.0}}),
        },
        d.beta == 0.0,
    };

    const ComplexMatrix h = hamiltonian(params);
    for (int cidx = 0; cidx < 4; ++cidx) {
        const auto& v = sys.eigenvectors[static_cast<size_t>(cidx)];
        double resid2 = 0.0;
        for (int i = 0; i < 4; ++i) {
            cplx hv{0.0, 0.0};
            for (int j = 0; j < 4; ++j) hv += h(i, j) * v[j];
            resid2 += std::norm(hv - sys.energies[static_cast<size_t>(cidx)] * v[i]);
        }
        if (std::sqrt(resid2) > 1e-10) {
            std::ostringstream msg;
            msg << "eigensystem: residual " << std::sqrt(resid2) << " for eigenpair " << cidx + 1;
            throw std::runtime_error(msg.str());
        }
    }
    return {sys, d};
}

ComplexMatrix propagator(const ModelParams& params, double t) {
    if (!std::isfinite(t)) throw std::invalid_argument("propagator: t must be finite");
    const auto [sys, d] = eigensystem(params);
    ComplexMatrix u(4);
    for (int c = 0; c < 4; ++c) {
        const cplx phase = std::exp(cplx{0.0, -sys.energies[static_cast<size_t>(c)] * t});
        const auto& v = sys.eigenvectors[static_cast<size_t>(c)];
        for (int i = 0; i < 4; ++i) {
            if (v[i] == cplx{0.0, 0.0}) continue;
            for (int j = 0; j < 4; ++j) u(i, j) += phase * v[i] * std::conj(v[j]);
        }
    }
    return u;
}

DensityMatrix analytic_state(const ModelParams& params, double t) {
    params.validate();
    if (!(t >= 0.0))
        throw std::invalid_argument("analytic_state: t must be >= 0");
    const DerivedConstants d = derived_constants(params);
    const double p = params.p;
    const double damp = std::exp(-params.gamma * t / 2.0);
    const double co = std::cos(2.0 * (params.Jx - params.Jy) * t);
    const double so = std::sin(2.0 * (params.Jx - params.Jy) * t);
    const double cb = std::cos(2.0 * d.beta * t);
    const double sb = std::sin(2.0 * d.beta * t);

    ComplexMatrix m(4);
    m(0, 0) = 0.5 * (1.0 - p) * (1.0 - damp * co);
    m(3, 3) = 0.5 * (1.0 - p) * (1.0 + damp * co);
    m(0, 3) = cplx{0.0, -0.5 * (1.0 - p) * damp * so};
    m(3, 0) = std::conj(m(0, 3));
    m(1, 1) = 0.5 * p + 0.5 * p * d.v * damp * sb;
    m(2, 2) = 0.5 * p - 0.5 * p * d.v * damp * sb;
    m(1, 2) = 0.5 * p * damp * d.xi * cplx{d.u, -d.v * cb};
    m(2, 1) = std::conj(m(1, 2));
    return DensityMatrix::relaxed(std::move(m));
}

} // namespace xyzt
