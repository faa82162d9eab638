#include "xyzt/measures.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace xyzt {

namespace {

constexpr double kSqrtArgTol = 1e-12;   // round-off window for sqrt arguments
constexpr double kBoundaryClamp = 1e-12;

// clamp a sqrt argument: tiny negatives are round-off, anything worse is a bug
double checked_sqrt_arg(double x, const char* what) {
    if (x < -kSqrtArgTol) {
        std::ostringstream msg;
        msg << what << ": argument " << x << " below -" << kSqrtArgTol;
        throw std::runtime_error(msg.str());
    }
    return x < 0.0 ? 0.0 : x;
}

double clamp_unit(double x) {
    if (x < 0.0 && x >= -kBoundaryClamp) return 0.0;
    if (x > 1.0 && x <= 1.0 + kBoundaryClamp) return 1.0;
    return x;
}

} // namespace

WoottersSpectrum wootters_spectrum(const DensityMatrix& rho) {
    if (rho.dim() != 4)
        throw std::invalid_argument("wootters_spectrum: expected a 4x4 two-qubit state");
    const ComplexMatrix s = psd_sqrt(rho.matrix());
    const ComplexMatrix m = multiply(multiply(s, spin_flip(rho)), s);
    auto ed = hermitian_eigen(m);
    WoottersSpectrum out{};
    for (int i = 0; i < 4; ++i) {
        double w = ed.eigenvalues[static_cast<size_t>(i)];
        if (w < -1e-10) {
            std::ostringstream msg;
            msg << "wootters_spectrum: negative eigenvalue " << w;
            throw std::runtime_error(msg.str());
        }
        // rank-deficient spectra have exact zeros; |w| <= 1e-10 is round-off
        // (same clamp window as psd_sqrt), and sqrt would amplify it into the
        // subtracted concurrence terms
        out.lambdas[static_cast<size_t>(3 - i)] = std::abs(w) <= 1e-10 ? 0.0 : w;  // descending
    }
    return out;
}

double concurrence(const DensityMatrix& rho) {
    const auto spec = wootters_spectrum(rho);
    const double c = std::sqrt(spec.lambdas[0]) - std::sqrt(spec.lambdas[1]) -
                     std::sqrt(spec.lambdas[2]) - std::sqrt(spec.lambdas[3]);
    return clamp_unit(std::max(0.0, c));
}

double concurrence_pure(const PureState& psi) {
    const DensityMatrix rho = psi.projector();
    const double ca = 2.0 * (1.0 - purity(partial_trace(rho, Subsystem::A)));
    const double cb = 2.0 * (1.0 - purity(partial_trace(rho, Subsystem::B)));
    const double arg = checked_sqrt_arg(0.5 * (ca + cb), "concurrence_pure");
    return clamp_unit(std::sqrt(arg));
}

double intrinsic_concurrence(const DensityMatrix& rho) {
    if (rho.dim() != 4)
        throw std::invalid_argument("intrinsic_concurrence: expected a 4x4 two-qubit state");
    const cplx t = trace_product(rho.matrix(), spin_flip(rho));
    if (std::abs(t.imag()) > 1e-12)
        throw std::runtime_error("intrinsic_concurrence: tr(rho rho_tilde) not real");
    return clamp_unit(std::sqrt(checked_sqrt_arg(t.real(), "intrinsic_concurrence")));
}

Coherence first_order_coherence(const DensityMatrix& rho) {
    if (rho.dim() != 4)
        throw std::invalid_argument("first_order_coherence: expected a 4x4 two-qubit state");
    const double fa2 = checked_sqrt_arg(2.0 * purity(partial_trace(rho, Subsystem::A)) - 1.0,
                                        "first_order_coherence: F_A");
    const double fb2 = checked_sqrt_arg(2.0 * purity(partial_trace(rho, Subsystem::B)) - 1.0,
                                        "first_order_coherence: F_B");
    Coherence out{};
    out.F_A = clamp_unit(std::sqrt(fa2));
    out.F_B = clamp_unit(std::sqrt(fb2));
    out.F = clamp_unit(std::sqrt(0.5 * (fa2 + fb2)));
    return out;
}

double ic_upper_bound(double C) {
    if (!(C >= 0.0 && C <= 1.0))
        throw std::invalid_argument("ic_upper_bound: C must lie in [0, 1]");
    return std::sqrt(0.5 * (1.0 + C * C));
}

double conservation_residual(const DensityMatrix& rho) {
    const double ic = intrinsic_concurrence(rho);
    const double f = first_order_coherence(rho).F;
    return ic * ic + f * f - purity(rho);
}

std::optional<double> concurrence_xstate(const DensityMatrix& rho) {
    if (rho.dim() != 4) return std::nullopt;
    const ComplexMatrix& m = rho.matrix();
    constexpr double kZero = 1e-12;
    static constexpr int off[][2] = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
    for (const auto& ij : off)
        if (std::abs(m(ij[0], ij[1])) > kZero || std::abs(m(ij[1], ij[0])) > kZero)
            return std::nullopt;
    const double r11 = m(0, 0).real(), r22 = m(1, 1).real();
    const double r33 = m(2, 2).real(), r44 = m(3, 3).real();
    const double inner = std::abs(m(1, 2)) - std::sqrt(std::max(r11 * r44, 0.0));
    const double outer = std::abs(m(0, 3)) - std::sqrt(std::max(r22 * r33, 0.0));
    return clamp_unit(2.0 * std::max({0.0, inner, outer}));
}

MeasureRecord measure_state(const DensityMatrix& rho, double t) {
    MeasureRecord rec{};
    rec.t = t;
    rec.C = concurrence(rho);
    rec.IC = intrinsic_concurrence(rho);
    const Coherence coh = first_order_coherence(rho);
    rec.F = coh.F;
    rec.F_A = coh.F_A;
    rec.F_B = coh.F_B;
    rec.purity = purity(rho);
    rec.upper_bound = ic_upper_bound(rec.C);
    rec.residual = rec.IC * rec.IC + rec.F * rec.F - rec.purity;
    return rec;
}

} // namespace xyzt
