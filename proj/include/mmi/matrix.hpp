#pragma once

#include <complex>
#include <vector>

#include "mmi/occupations.hpp"
#include "mmi/tolerances.hpp"

namespace mmi {

using Complex = std::complex<double>;

/// Dense row-major complex matrix. Construction and every mutation keep the
/// invariant that all entries are finite.
class ComplexMatrix {
 public:
  ComplexMatrix() : rows_(0), cols_(0) {}
  ComplexMatrix(int rows, int cols);

  static ComplexMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Complex& operator()(int r, int c) {
    return a_[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
              static_cast<std::size_t>(c)];
  }
  const Complex& operator()(int r, int c) const {
    return a_[static_cast<std::size_t>(r) * static_cast<std::size_t>(cols_) +
              static_cast<std::size_t>(c)];
  }

  const Complex* data() const { return a_.data(); }
  Complex* data() { return a_.data(); }

  ComplexMatrix operator*(const ComplexMatrix& o) const;
  ComplexMatrix adjoint() const;

  /// max_{j,k} |A_{j,k} - B_{j,k}|.
  double max_abs_diff(const ComplexMatrix& o) const;

  /// ||A^dag A - 1||_max; 0 for a perfectly unitary matrix.
  double unitarity_defect() const;

  bool all_finite() const;

 private:
  int rows_;
  int cols_;
  std::vector<Complex> a_;
};

/// A square matrix checked to be unitary at construction
/// (||U^dag U - 1||_max <= tol).
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(ComplexMatrix m, double tol = kMatrixTol);

  int dim() const { return m_.rows(); }
  const ComplexMatrix& mat() const { return m_; }
  const Complex& operator()(int r, int c) const { return m_(r, c); }

 private:
  ComplexMatrix m_;
};

/// The N x N scattering matrix M of a transition r -> s through U:
/// M_{alpha,beta} = U_{d_alpha(r), d_beta(s)}, rows indexed by the input
/// assignment list and columns by the output assignment list.
ComplexMatrix scattering_matrix(const UnitaryMatrix& u, const OccupationList& r,
                                const OccupationList& s);

}  // namespace mmi
