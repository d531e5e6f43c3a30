#include "nvchem/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

namespace nvchem {

double hermitian_deviation(const Matrix& a) {
  if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

namespace {

// one two-sided Jacobi rotation zeroing a(p,q); accumulates into v
void rotate(Matrix& a, Matrix& v, Eigen::Index p, Eigen::Index q) {
  const Complex apq = a(p, q);
  const double g = std::abs(apq);
  if (g == 0.0) return;
  const Complex phase = apq / g;
  const double alpha = a(p, p).real();
  const double beta = a(q, q).real();

  // tan(2*theta) = 2|a_pq| / (a_qq - a_pp), |theta| <= pi/4
  const double tau = (beta - alpha) / (2.0 * g);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  // columns: A <- A J with J(p,p)=c, J(q,p)=-s*conj(phase), J(p,q)=s*phase, J(q,q)=c
  const Eigen::Index n = a.rows();
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = c * akp - s * std::conj(phase) * akq;
    a(k, q) = s * phase * akp + c * akq;
  }
  // rows: A <- J^dag A (row p of J^dag is (c, -s e^{i phi}), row q is (s e^{-i phi}, c))
  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = c * apk - s * phase * aqk;
    a(q, k) = s * std::conj(phase) * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (Eigen::Index k = 0; k < n; ++k) {
    const Complex vkp = v(k, p);
    const Complex vkq = v(k, q);
    v(k, p) = c * vkp - s * std::conj(phase) * vkq;
    v(k, q) = s * phase * vkp + c * vkq;
  }
}

double off_norm(const Matrix& a) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (i != j) acc += std::norm(a(i, j));
  return std::sqrt(acc);
}

}  // namespace

EigenDecomposition hermitian_eig(const Matrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw std::invalid_argument("hermitian_eig: matrix must be square and non-empty");
  const double dev = hermitian_deviation(a);
  if (!(dev < kHermitianTol)) {
    std::ostringstream msg;
    msg << "hermitian_eig: input is not Hermitian (max |A - A^dag| = " << dev << ", tolerance "
        << kHermitianTol << ")";
    throw std::invalid_argument(msg.str());
  }

  const Eigen::Index n = a.rows();
  Matrix w = 0.5 * (a + a.adjoint());  // exact-Hermitian working copy
  Matrix v = Matrix::Identity(n, n);

  const double scale = std::max(1.0, w.cwiseAbs().maxCoeff());
  const double tol = 1e-15 * scale * static_cast<double>(n);
  for (int sweep = 0; sweep < 60 && off_norm(w) > tol; ++sweep) {
    for (Eigen::Index p = 0; p < n - 1; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q)
        if (std::abs(w(p, q)) > tol / (10.0 * static_cast<double>(n))) rotate(w, v, p, q);
  }

  // ascending sort
  std::vector<Eigen::Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return w(i, i).real() < w(j, j).real(); });

  EigenDecomposition out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = w(order[static_cast<size_t>(k)], order[static_cast<size_t>(k)]).real();
    out.vectors.col(k) = v.col(order[static_cast<size_t>(k)]);
  }

  // canonical phase: largest-magnitude component real positive
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index imax = 0;
    double best = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double m = std::abs(out.vectors(i, k));
      if (m > best * (1.0 + 1e-12)) {
        best = m;
        imax = i;
      }
    }
    if (best > 0.0) {
      const Complex ph = out.vectors(imax, k) / best;
      out.vectors.col(k) *= std::conj(ph);
    }
  }
  return out;
}

Matrix expm_i(const Matrix& a, double t) {
  const EigenDecomposition d = hermitian_eig(a);
  const Eigen::Index n = a.rows();
  Vector phases(n);
  for (Eigen::Index k = 0; k < n; ++k)
    phases(k) = std::exp(Complex(0.0, -d.values(k) * t));
  return d.vectors * phases.asDiagonal() * d.vectors.adjoint();
}

Matrix partial_trace(const Matrix& rho, int dim_first, int dim_second, Subsystem keep) {
  const Eigen::Index n = static_cast<Eigen::Index>(dim_first) * dim_second;
  if (rho.rows() != n || rho.cols() != n)
    throw std::invalid_argument("partial_trace: state dimension does not match subsystem dims");
  const double tr_dev = std::abs(rho.trace() - Complex(1.0, 0.0));
  if (!(tr_dev < kTraceTol)) {
    std::ostringstream msg;
    msg << "partial_trace: trace deviates from 1 by " << tr_dev << " (tolerance " << kTraceTol
        << ")";
    throw std::invalid_argument(msg.str());
  }
  const EigenDecomposition d = hermitian_eig(rho);
  if (d.values(0) < kPsdFloor) {
    std::ostringstream msg;
    msg << "partial_trace: state not positive semidefinite (min eigenvalue " << d.values(0) << ")";
    throw std::invalid_argument(msg.str());
  }

  const int dk = (keep == Subsystem::first) ? dim_first : dim_second;
  const int dt = (keep == Subsystem::first) ? dim_second : dim_first;
  Matrix out = Matrix::Zero(dk, dk);
  for (int i = 0; i < dk; ++i)
    for (int j = 0; j < dk; ++j) {
      Complex acc = 0.0;
      for (int m = 0; m < dt; ++m) {
        const Eigen::Index r = (keep == Subsystem::first) ? i * dt + m : m * dk + i;
        const Eigen::Index c = (keep == Subsystem::first) ? j * dt + m : m * dk + j;
        acc += rho(r, c);
      }
      out(i, j) = acc;
    }
  return out;
}

}  // namespace nvchem
