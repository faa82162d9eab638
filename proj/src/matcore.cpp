#include "xyzt/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace xyzt {

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.dim() != b.dim()) {
        std::ostringstream msg;
        msg << op << ": dimension mismatch (" << a.dim() << " vs " << b.dim() << ")";
        throw std::invalid_argument(msg.str());
    }
}

} // namespace

ComplexMatrix::ComplexMatrix(int dim) : dim_(dim), a_(static_cast<size_t>(dim) * dim, cplx{0.0, 0.0}) {
    if (dim < 1) throw std::invalid_argument("ComplexMatrix: dim must be positive");
}

ComplexMatrix::ComplexMatrix(int dim, std::vector<cplx> entries) : dim_(dim), a_(std::move(entries)) {
    if (dim < 1) throw std::invalid_argument("ComplexMatrix: dim must be positive");
    if (a_.size() != static_cast<size_t>(dim) * dim)
        throw std::invalid_argument("ComplexMatrix: entry count does not match dim^2");
}

ComplexMatrix ComplexMatrix::identity(int dim) {
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    require_same_dim(*this, other, "operator+=");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] += other.a_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    require_same_dim(*this, other, "operator-=");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] -= other.a_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx scale) {
    for (auto& x : a_) x *= scale;
    return *this;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix out(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) out(i, j) = std::conj((*this)(i, j));
    return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(dim_);
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

cplx ComplexMatrix::trace() const {
    cplx t{0.0, 0.0};
    for (int i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& x : a_) m = std::max(m, std::abs(x));
    return m;
}

bool ComplexMatrix::all_finite() const {
    return std::all_of(a_.begin(), a_.end(),
                       [](const cplx& x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); });
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(cplx scale, ComplexMatrix a) { return a *= scale; }
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return multiply(a, b); }

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "multiply");
    const int n = a.dim();
    ComplexMatrix out(n);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx{0.0, 0.0}) continue;
            for (int j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int na = a.dim(), nb = b.dim();
    ComplexMatrix out(na * nb);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j)
            for (int k = 0; k < nb; ++k)
                for (int l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
    return out;
}

cplx trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "trace_product");
    const int n = a.dim();
    cplx t{0.0, 0.0};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t += a(i, j) * b(j, i);
    return t;
}

double hermiticity_defect(const ComplexMatrix& a) {
    double m = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
    return m;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "max_abs_diff");
    double m = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

ComplexMatrix sigma_x() {
    ComplexMatrix m(2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

ComplexMatrix sigma_y() {
    ComplexMatrix m(2);
    m(0, 1) = cplx{0.0, -1.0};
    m(1, 0) = cplx{0.0, 1.0};
    return m;
}

ComplexMatrix sigma_z() {
    ComplexMatrix m(2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

namespace {

constexpr double kHermTol = 1e-10;
constexpr double kOffDiagTol = 1e-13;
constexpr int kMaxSweeps = 100;
constexpr double kPsdClamp = 1e-10;

double offdiag_frobenius(const ComplexMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

// One Jacobi rotation zeroing A(p,q). The rotation is U = D*J where
// D = diag(1, e^{-i phi}) absorbs the phase of A(p,q) and J is the real
// rotation from the 2x2 symmetric subproblem; A <- U^H A U, V <- V U.
void rotate(ComplexMatrix& A, ComplexMatrix& V, int p, int q) {
    const cplx w = A(p, q);
    const double aw = std::abs(w);
    if (aw == 0.0) return;
    const cplx phase = w / aw;                     // e^{i phi}
    const double tau = (A(q, q).real() - A(p, p).real()) / (2.0 * aw);
    const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    const int n = A.dim();
    const cplx spb = s * std::conj(phase);         // s e^{-i phi}
    // columns: B = A U
    for (int k = 0; k < n; ++k) {
        const cplx akp = A(k, p), akq = A(k, q);
        A(k, p) = c * akp - spb * akq;
        A(k, q) = s * akp + c * std::conj(phase) * akq;
    }
    // rows: A = U^H B
    const cplx spf = s * phase;                    // s e^{+i phi}
    for (int k = 0; k < n; ++k) {
        const cplx apk = A(p, k), aqk = A(q, k);
        A(p, k) = c * apk - spf * aqk;
        A(q, k) = s * apk + c * phase * aqk;
    }
    A(p, q) = 0.0;
    A(q, p) = 0.0;
    A(p, p) = cplx{A(p, p).real(), 0.0};
    A(q, q) = cplx{A(q, q).real(), 0.0};

    for (int k = 0; k < n; ++k) {
        const cplx vkp = V(k, p), vkq = V(k, q);
        V(k, p) = c * vkp - spb * vkq;
        V(k, q) = s * vkp + c * std::conj(phase) * vkq;
    }
}

} // namespace

EigenDecomposition hermitian_eigen(const ComplexMatrix& a) {
    if (!a.all_finite()) throw std::invalid_argument("hermitian_eigen: input has non-finite entries");
    const double defect = hermiticity_defect(a);
    if (defect > kHermTol) {
        std::ostringstream msg;
        msg << "hermitian_eigen: input not Hermitian (defect " << defect << " > " << kHermTol << ")";
        throw std::invalid_argument(msg.str());
    }

    const int n = a.dim();
    // work on the exactly Hermitian average to suppress the allowed skew
    ComplexMatrix A(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));

    ComplexMatrix V = ComplexMatrix::identity(n);
    int sweep = 0;
    while (offdiag_frobenius(A) >= kOffDiagTol) {
        if (++sweep > kMaxSweeps) {
            std::ostringstream msg;
            msg << "hermitian_eigen: no convergence after " << kMaxSweeps
                << " sweeps, off-diagonal residual " << offdiag_frobenius(A);
            throw std::runtime_error(msg.str());
        }
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) rotate(A, V, p, q);
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return A(i, i).real() < A(j, j).real(); });

    EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n)};
    for (int c = 0; c < n; ++c) {
        out.eigenvalues[c] = A(order[c], order[c]).real();
        for (int r = 0; r < n; ++r) out.eigenvectors(r, c) = V(r, order[c]);
    }
    return out;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& a) {
    EigenDecomposition ed = hermitian_eigen(a);
    for (double& w : ed.eigenvalues) {
        if (w < -kPsdClamp) {
            std::ostringstream msg;
            msg << "psd_sqrt: eigenvalue " << w << " below -" << kPsdClamp << ", input not PSD";
            throw std::invalid_argument(msg.str());
        }
        w = std::abs(w) <= kPsdClamp ? 0.0 : w;
    }
    const int n = a.dim();
    ComplexMatrix out(n);
    for (int c = 0; c < n; ++c) {
        const double r = std::sqrt(ed.eigenvalues[c]);
        if (r == 0.0) continue;
        for (int i = 0; i < n; ++i) {
            const cplx vi = ed.eigenvectors(i, c);
            if (vi == cplx{0.0, 0.0}) continue;
            for (int j = 0; j < n; ++j)
                out(i, j) += r * vi * std::conj(ed.eigenvectors(j, c));
        }
    }
    return out;
}

} // namespace xyzt
