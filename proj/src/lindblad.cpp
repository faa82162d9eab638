#include "xyzt/lindblad.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace xyzt {

const char* route_name(Route route) {
    switch (route) {
        case Route::analytic: return "analytic";
        case Route::integrator: return "integrator";
        case Route::propagator: return "propagator";
    }
    return "unknown";
}

namespace {

constexpr double kTraceDriftAbort = 1e-8;
constexpr double kHermDriftAbort = 1e-10;

ComplexMatrix excited_projector(Subsystem which) {
    ComplexMatrix l(4);
    if (which == Subsystem::A) {
        l(2, 2) = 1.0;
        l(3, 3) = 1.0;
    } else {
        l(1, 1) = 1.0;
        l(3, 3) = 1.0;
    }
    return l;
}

struct Generator {
    ComplexMatrix h;
    ComplexMatrix la;
    ComplexMatrix lb;
    double gamma;

    explicit Generator(const ModelParams& params)
        : h(hamiltonian(params)),
          la(excited_projector(Subsystem::A)),
          lb(excited_projector(Subsystem::B)),
          gamma(params.gamma) {}

    ComplexMatrix operator()(const ComplexMatrix& rho) const {
        ComplexMatrix out = cplx{0.0, -1.0} * (multiply(h, rho) - multiply(rho, h));
        if (gamma != 0.0) {
            for (const ComplexMatrix* l : {&la, &lb}) {
                ComplexMatrix lr = multiply(*l, rho);
                out += (0.5 * gamma) *
                       (2.0 * multiply(lr, *l) - ComplexMatrix(lr) - multiply(rho, *l));
            }
        }
        return out;
    }
};

void rk4_step(const Generator& gen, ComplexMatrix& rho, double h) {
    const ComplexMatrix k1 = gen(rho);
    const ComplexMatrix k2 = gen(rho + (0.5 * h) * k1);
    const ComplexMatrix k3 = gen(rho + (0.5 * h) * k2);
    const ComplexMatrix k4 = gen(rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

// advance across one inter-node span with uniform substeps of size <= dt
void advance(const Generator& gen, ComplexMatrix& rho, double t_from, double t_to, double dt) {
    const double span = t_to - t_from;
    if (span <= 0.0) return;
    const auto n = static_cast<long>(std::ceil(span / dt - 1e-9));
    const long steps = n < 1 ? 1 : n;
    const double h = span / static_cast<double>(steps);
    for (long k = 0; k < steps; ++k) rk4_step(gen, rho, h);
}

DensityMatrix finish_node(ComplexMatrix& rho, double t) {
    if (!rho.all_finite()) {
        std::ostringstream msg;
        msg << "integrate: non-finite state at t = " << t;
        throw std::runtime_error(msg.str());
    }
    const double herm = hermiticity_defect(rho);
    if (herm > kHermDriftAbort) {
        std::ostringstream msg;
        msg << "integrate: hermiticity drift " << herm << " at t = " << t;
        throw std::runtime_error(msg.str());
    }
    const double drift = std::abs(rho.trace() - cplx{1.0, 0.0});
    if (drift > kTraceDriftAbort) {
        std::ostringstream msg;
        msg << "integrate: trace drift " << drift << " at t = " << t << ", step size too large";
        throw std::runtime_error(msg.str());
    }
    if (drift > 1e-10) {
        // below the hard abort but already outside the trajectory contract
        std::ostringstream msg;
        msg << "integrate: trace drift " << drift << " at t = " << t << "; reduce dt";
        throw std::runtime_error(msg.str());
    }
    // node-boundary Hermitian averaging (not applied inside RK4 stages)
    for (int i = 0; i < rho.dim(); ++i) {
        rho(i, i) = cplx{rho(i, i).real(), 0.0};
        for (int j = i + 1; j < rho.dim(); ++j) {
            const cplx v = 0.5 * (rho(i, j) + std::conj(rho(j, i)));
            rho(i, j) = v;
            rho(j, i) = std::conj(v);
        }
    }
    return DensityMatrix::relaxed(rho);
}

} // namespace

ComplexMatrix master_rhs(const ComplexMatrix& rho, const ModelParams& params) {
    if (rho.dim() != 4)
        throw std::invalid_argument("master_rhs: expected a 4x4 state");
    params.validate();
    return Generator(params)(rho);
}

Trajectory integrate(const DensityMatrix& rho0, const ModelParams& params, double t_end, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("integrate: dt must be > 0");
    if (!(t_end >= 0.0)) throw std::invalid_argument("integrate: t_end must be >= 0");
    std::vector<double> times;
    const auto n_full = static_cast<size_t>(std::floor(t_end / dt + 1e-12));
    times.reserve(n_full + 2);
    for (size_t k = 0; k * dt < t_end || k == 0; ++k) {
        const double tk = static_cast<double>(k) * dt;
        if (tk > t_end) break;
        times.push_back(tk);
    }
    if (times.back() < t_end) times.push_back(t_end);
    return integrate_at(rho0, params, times, dt);
}

Trajectory integrate_at(const DensityMatrix& rho0, const ModelParams& params,
                        std::span<const double> times, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("integrate_at: dt must be > 0");
    if (times.empty() || times.front() != 0.0)
        throw std::invalid_argument("integrate_at: node times must start at 0");
    for (size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw std::invalid_argument("integrate_at: node times must be strictly ascending");
    params.validate();
    if (rho0.dim() != 4) throw std::invalid_argument("integrate_at: expected a 4x4 initial state");

    const Generator gen(params);
    Trajectory traj{{}, {}, Route::integrator, params};
    traj.times.assign(times.begin(), times.end());
    traj.states.reserve(times.size());

    ComplexMatrix rho = rho0.matrix();
    traj.states.push_back(finish_node(rho, 0.0));
    for (size_t i = 1; i < times.size(); ++i) {
        advance(gen, rho, times[i - 1], times[i], dt);
        traj.states.push_back(finish_node(rho, times[i]));
    }
    return traj;
}

} // namespace xyzt
