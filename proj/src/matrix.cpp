#include "mmi/matrix.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace mmi {

ComplexMatrix::ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0)
    throw std::invalid_argument("ComplexMatrix: negative dimension");
  a_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
            Complex(0.0, 0.0));
}

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n, n);
  for (int j = 0; j < n; ++j) m(j, j) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& o) const {
  if (cols_ != o.rows_)
    throw std::invalid_argument("ComplexMatrix: shape mismatch in product");
  ComplexMatrix out(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      const Complex aik = (*this)(i, k);
      if (aik == Complex(0.0, 0.0)) continue;
      for (int j = 0; j < o.cols_; ++j) out(i, j) += aik * o(k, j);
    }
  }
  return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("ComplexMatrix: shape mismatch in comparison");
  double worst = 0.0;
  for (std::size_t i = 0; i < a_.size(); ++i)
    worst = std::max(worst, std::abs(a_[i] - o.a_[i]));
  return worst;
}

double ComplexMatrix::unitarity_defect() const {
  if (!square())
    throw std::invalid_argument("ComplexMatrix: unitarity defined for square matrices");
  return (adjoint() * *this).max_abs_diff(identity(rows_));
}

bool ComplexMatrix::all_finite() const {
  for (const Complex& z : a_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

UnitaryMatrix::UnitaryMatrix(ComplexMatrix m, double tol) : m_(std::move(m)) {
  if (!m_.square() || m_.rows() < 1)
    throw std::invalid_argument("UnitaryMatrix: need a nonempty square matrix");
  if (!m_.all_finite())
    throw std::invalid_argument("UnitaryMatrix: matrix has non-finite entries");
  const double defect = m_.unitarity_defect();
  if (defect > tol) {
    std::ostringstream msg;
    msg << "UnitaryMatrix: unitarity defect " << defect << " exceeds tolerance " << tol;
    throw std::invalid_argument(msg.str());
  }
}

ComplexMatrix scattering_matrix(const UnitaryMatrix& u, const OccupationList& r,
                                const OccupationList& s) {
  if (r.modes() != u.dim() || s.modes() != u.dim())
    throw std::invalid_argument("scattering_matrix: mode count mismatch");
  if (r.total() != s.total())
    throw std::invalid_argument("scattering_matrix: particle number mismatch");
  const AssignmentList din = occupation_to_assignment(r);
  const AssignmentList dout = occupation_to_assignment(s);
  const int n_particles = din.particles();
  ComplexMatrix m(n_particles, n_particles);
  for (int a = 0; a < n_particles; ++a)
    for (int b = 0; b < n_particles; ++b) m(a, b) = u(din[a], dout[b]);
  return m;
}

}  // namespace mmi
