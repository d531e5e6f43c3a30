// linalg.hpp — dense complex linear algebra for small (dim <= 9) Hermitian problems:
// Jacobi eigensolver, unitary exponentials, tensor products, partial traces.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>

namespace nvchem {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Fixed numerical contracts (not configurable).
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPsdFloor = -1e-12;

struct EigenDecomposition {
  RealVector values;  // ascending
  Matrix vectors;     // orthonormal columns, values(k) <-> vectors.col(k)
};

// max |A - A^dag| over all entries
double hermitian_deviation(const Matrix& a);

// Cyclic complex Jacobi diagonalization. Throws std::invalid_argument when the
// input deviates from Hermitian by more than kHermitianTol (message carries the
// measured deviation). Deterministic: fixed sweep order, ascending eigenvalues,
// each eigenvector phased so its largest component is real positive.
EigenDecomposition hermitian_eig(const Matrix& a);

// exp(-i a t) for Hermitian a, via hermitian_eig
Matrix expm_i(const Matrix& a, double t);

enum class Subsystem { first, second };

// Reduced density matrix of a bipartite state, dims (dim_first x dim_second).
// Requires unit trace (within kTraceTol) and eigenvalues >= kPsdFloor.
Matrix partial_trace(const Matrix& rho, int dim_first, int dim_second, Subsystem keep);

// Tensor (Kronecker) product; dimensions multiply.
template <typename DerivedA, typename DerivedB>
auto kron(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename Eigen::ScalarBinaryOpTraits<typename DerivedA::Scalar,
                                                      typename DerivedB::Scalar>::ReturnType;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                            a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

}  // namespace nvchem
