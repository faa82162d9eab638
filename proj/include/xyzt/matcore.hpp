#pragma once

#include <complex>
#include <vector>

// Dense complex matrix kernel sized for 2x2 and 4x4 work: algebra,
// Hermitian eigendecomposition (cyclic Jacobi), and PSD square root.

namespace xyzt {

using cplx = std::complex<double>;

class ComplexMatrix {
public:
    explicit ComplexMatrix(int dim);
    ComplexMatrix(int dim, std::vector<cplx> entries);

    static ComplexMatrix identity(int dim);
    static ComplexMatrix zero(int dim) { return ComplexMatrix(dim); }

    int dim() const { return dim_; }

    cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * dim_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * dim_ + j]; }

    const std::vector<cplx>& entries() const { return a_; }

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(cplx scale);

    ComplexMatrix adjoint() const;
    ComplexMatrix conjugate() const;
    ComplexMatrix transpose() const;

    cplx trace() const;
    double max_abs() const;            // max |a_ij|
    bool all_finite() const;

private:
    int dim_;
    std::vector<cplx> a_;              // row-major, dim*dim
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx scale, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

/// Standard matrix product; throws std::invalid_argument on dimension mismatch.
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker (tensor) product.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// tr(a*b) computed as sum_ij a_ij b_ji without forming the product.
cplx trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// max_ij |a_ij - conj(a_ji)|
double hermiticity_defect(const ComplexMatrix& a);

/// max element modulus of a - b; throws on dimension mismatch.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// Pauli matrices (2x2).
ComplexMatrix sigma_x();
ComplexMatrix sigma_y();
ComplexMatrix sigma_z();

struct EigenDecomposition {
    std::vector<double> eigenvalues;   // ascending
    ComplexMatrix eigenvectors;        // orthonormal columns, A = V diag(w) V^dagger
};

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
/// Input must be Hermitian within 1e-10 (max |a_ij - conj(a_ji)|); stops when
/// the off-diagonal Frobenius norm drops below 1e-13, errors after 100 sweeps.
EigenDecomposition hermitian_eigen(const ComplexMatrix& a);

/// Hermitian square root of a PSD matrix. Eigenvalues in [-1e-10, 1e-10] are
/// clamped to zero before rooting; anything below -1e-10 is rejected.
ComplexMatrix psd_sqrt(const ComplexMatrix& a);

} // namespace xyzt
