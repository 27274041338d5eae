#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mmi/kernels.hpp"

namespace mmi::kernels {

namespace {

void check_permanent_arg(const ComplexMatrix& m) {
  if (!m.square())
    throw std::invalid_argument("permanent: matrix must be square");
  if (m.rows() > kMaxPermanentDim)
    throw std::invalid_argument("permanent: dimension exceeds supported maximum");
}

}  // namespace

// perm(M) = (-1)^N sum_{S != 0} (-1)^{|S|} prod_i sum_{j in S} M_{ij}.
// Subsets S of columns are visited in Gray-code order so each step updates
// the per-row sums with a single column add or subtract.
std::complex<double> permanent_scalar(const ComplexMatrix& m) {
  check_permanent_arg(m);
  const int n = m.rows();
  if (n == 0) return {1.0, 0.0};

  std::vector<Complex> row_sum(static_cast<std::size_t>(n), Complex(0.0, 0.0));
  Complex total(0.0, 0.0);
  std::uint64_t gray = 0;
  int subset_size = 0;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  for (std::uint64_t t = 1; t < subsets; ++t) {
    const std::uint64_t next = t ^ (t >> 1);
    const std::uint64_t changed = gray ^ next;
    const int j = std::countr_zero(changed);
    if (next & changed) {
      ++subset_size;
      for (int i = 0; i < n; ++i) row_sum[static_cast<std::size_t>(i)] += m(i, j);
    } else {
      --subset_size;
      for (int i = 0; i < n; ++i) row_sum[static_cast<std::size_t>(i)] -= m(i, j);
    }
    gray = next;
    Complex prod(1.0, 0.0);
    for (int i = 0; i < n; ++i) prod *= row_sum[static_cast<std::size_t>(i)];
    total += (subset_size & 1) ? -prod : prod;
  }
  return (n & 1) ? -total : total;
}

double permanent_of_squared_moduli_scalar(const ComplexMatrix& m) {
  check_permanent_arg(m);
  const int n = m.rows();
  if (n == 0) return 1.0;

  // Entrywise |M_{ij}|^2, column-major so the inner loops stream contiguously.
  std::vector<double> sq(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      sq[static_cast<std::size_t>(j) * static_cast<std::size_t>(n) +
         static_cast<std::size_t>(i)] = std::norm(m(i, j));

  std::vector<double> row_sum(static_cast<std::size_t>(n), 0.0);
  double total = 0.0;
  std::uint64_t gray = 0;
  int subset_size = 0;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  for (std::uint64_t t = 1; t < subsets; ++t) {
    const std::uint64_t next = t ^ (t >> 1);
    const std::uint64_t changed = gray ^ next;
    const int j = std::countr_zero(changed);
    const double* col = &sq[static_cast<std::size_t>(j) * static_cast<std::size_t>(n)];
    if (next & changed) {
      ++subset_size;
      for (int i = 0; i < n; ++i) row_sum[static_cast<std::size_t>(i)] += col[i];
    } else {
      --subset_size;
      for (int i = 0; i < n; ++i) row_sum[static_cast<std::size_t>(i)] -= col[i];
    }
    gray = next;
    double prod = 1.0;
    for (int i = 0; i < n; ++i) prod *= row_sum[static_cast<std::size_t>(i)];
    total += (subset_size & 1) ? -prod : prod;
  }
  return (n & 1) ? -total : total;
}

std::complex<double> determinant(const ComplexMatrix& m) {
  if (!m.square())
    throw std::invalid_argument("determinant: matrix must be square");
  const int n = m.rows();
  if (n == 0) return {1.0, 0.0};

  // LU with partial pivoting on a working copy.
  std::vector<Complex> a(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
        static_cast<std::size_t>(j)] = m(i, j);
  const auto at = [&](int i, int j) -> Complex& {
    return a[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) +
             static_cast<std::size_t>(j)];
  };

  Complex det(1.0, 0.0);
  for (int k = 0; k < n; ++k) {
    int pivot = k;
    double best = std::abs(at(k, k));
    for (int i = k + 1; i < n; ++i) {
      const double v = std::abs(at(i, k));
      if (v > best) {
        best = v;
        pivot = i;
      }
    }
    if (best == 0.0) return {0.0, 0.0};
    if (pivot != k) {
      for (int j = k; j < n; ++j) std::swap(at(k, j), at(pivot, j));
      det = -det;
    }
    det *= at(k, k);
    for (int i = k + 1; i < n; ++i) {
      const Complex f = at(i, k) / at(k, k);
      for (int j = k + 1; j < n; ++j) at(i, j) -= f * at(k, j);
    }
  }
  return det;
}

}  // namespace mmi::kernels
