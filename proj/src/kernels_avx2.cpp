// AVX2+FMA permanent kernels. This translation unit is the only one compiled
// with -mavx2 -mfma; callers must gate on kernels::avx2_available(), which is
// why the build system keeps these out of the default code path.

#include <stdexcept>

#include "mmi/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define MMI_HAVE_X86_64 1
#include <immintrin.h>

#include <bit>
#include <cstdint>
#include <vector>
#endif

namespace mmi::kernels {

#if MMI_HAVE_X86_64

bool avx2_available() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

namespace {

void check_permanent_arg(const ComplexMatrix& m) {
  if (!m.square())
    throw std::invalid_argument("permanent: matrix must be square");
  if (m.rows() > kMaxPermanentDim)
    throw std::invalid_argument("permanent: dimension exceeds supported maximum");
  if (!avx2_available())
    throw std::runtime_error("permanent_avx2: CPU does not support AVX2+FMA");
}

// Elementwise product of complex pairs stored interleaved [re0 im0 re1 im1].
inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d a_re = _mm256_movedup_pd(a);       // [ar ar br br]
  const __m256d a_im = _mm256_permute_pd(a, 0xF);  // [ai ai bi bi]
  const __m256d b_sw = _mm256_permute_pd(b, 0x5);  // [ci cr di dr]
  // even lanes: ar*cr - ai*ci, odd lanes: ar*ci + ai*cr
  return _mm256_fmaddsub_pd(a_re, b, _mm256_mul_pd(a_im, b_sw));
}

}  // namespace

std::complex<double> permanent_avx2(const ComplexMatrix& m) {
  check_permanent_arg(m);
  const int n = m.rows();
  if (n == 0) return {1.0, 0.0};

  // Two interleaved complex values per vector; odd n pads the last vector's
  // top lane with the multiplicative identity (and a zero column entry, so
  // the pad lane is never disturbed by subset updates).
  const int vecs = (n + 1) / 2;
  std::vector<double> cols(static_cast<std::size_t>(n) * static_cast<std::size_t>(vecs) * 4,
                           0.0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const std::size_t base =
          (static_cast<std::size_t>(j) * static_cast<std::size_t>(vecs) +
           static_cast<std::size_t>(i / 2)) * 4 +
          static_cast<std::size_t>(2 * (i % 2));
      cols[base] = m(i, j).real();
      cols[base + 1] = m(i, j).imag();
    }

  __m256d row_sum[(kMaxPermanentDim + 1) / 2];
  for (int v = 0; v < vecs; ++v) row_sum[v] = _mm256_setzero_pd();
  if (n % 2 == 1) row_sum[vecs - 1] = _mm256_set_pd(0.0, 1.0, 0.0, 0.0);

  std::complex<double> total(0.0, 0.0);
  std::uint64_t gray = 0;
  int subset_size = 0;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  for (std::uint64_t t = 1; t < subsets; ++t) {
    const std::uint64_t next = t ^ (t >> 1);
    const std::uint64_t changed = gray ^ next;
    const int j = std::countr_zero(changed);
    const double* col =
        &cols[static_cast<std::size_t>(j) * static_cast<std::size_t>(vecs) * 4];
    if (next & changed) {
      ++subset_size;
      for (int v = 0; v < vecs; ++v)
        row_sum[v] = _mm256_add_pd(row_sum[v], _mm256_loadu_pd(col + 4 * v));
    } else {
      --subset_size;
      for (int v = 0; v < vecs; ++v)
        row_sum[v] = _mm256_sub_pd(row_sum[v], _mm256_loadu_pd(col + 4 * v));
    }
    gray = next;

    __m256d acc = row_sum[0];
    for (int v = 1; v < vecs; ++v) acc = cmul(acc, row_sum[v]);
    double lanes[4];
    _mm256_storeu_pd(lanes, acc);
    const std::complex<double> prod(lanes[0] * lanes[2] - lanes[1] * lanes[3],
                                    lanes[0] * lanes[3] + lanes[1] * lanes[2]);
    total += (subset_size & 1) ? -prod : prod;
  }
  return (n & 1) ? -total : total;
}

double permanent_of_squared_moduli_avx2(const ComplexMatrix& m) {
  check_permanent_arg(m);
  const int n = m.rows();
  if (n == 0) return 1.0;

  // Four real values per vector; pad lanes hold 1.0 against zero columns.
  const int vecs = (n + 3) / 4;
  std::vector<double> cols(static_cast<std::size_t>(n) * static_cast<std::size_t>(vecs) * 4,
                           0.0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i)
      cols[(static_cast<std::size_t>(j) * static_cast<std::size_t>(vecs)) * 4 +
           static_cast<std::size_t>(i)] = std::norm(m(i, j));

  __m256d row_sum[(kMaxPermanentDim + 3) / 4];
  for (int v = 0; v < vecs; ++v) row_sum[v] = _mm256_setzero_pd();
  {
    double init[4];
    _mm256_storeu_pd(init, row_sum[vecs - 1]);
    for (int i = n; i < 4 * vecs; ++i) init[i % 4] = 1.0;
    row_sum[vecs - 1] = _mm256_loadu_pd(init);
  }

  double total = 0.0;
  std::uint64_t gray = 0;
  int subset_size = 0;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  for (std::uint64_t t = 1; t < subsets; ++t) {
    const std::uint64_t next = t ^ (t >> 1);
    const std::uint64_t changed = gray ^ next;
    const int j = std::countr_zero(changed);
    const double* col =
        &cols[static_cast<std::size_t>(j) * static_cast<std::size_t>(vecs) * 4];
    if (next & changed) {
      ++subset_size;
      for (int v = 0; v < vecs; ++v)
        row_sum[v] = _mm256_add_pd(row_sum[v], _mm256_loadu_pd(col + 4 * v));
    } else {
      --subset_size;
      for (int v = 0; v < vecs; ++v)
        row_sum[v] = _mm256_sub_pd(row_sum[v], _mm256_loadu_pd(col + 4 * v));
    }
    gray = next;

    __m256d acc = row_sum[0];
    for (int v = 1; v < vecs; ++v) acc = _mm256_mul_pd(acc, row_sum[v]);
    double lanes[4];
    _mm256_storeu_pd(lanes, acc);
    const double prod = lanes[0] * lanes[1] * lanes[2] * lanes[3];
    total += (subset_size & 1) ? -prod : prod;
  }
  return (n & 1) ? -total : total;
}

#else  // !MMI_HAVE_X86_64

bool avx2_available() { return false; }

std::complex<double> permanent_avx2(const ComplexMatrix&) {
  throw std::runtime_error("permanent_avx2: not built for this architecture");
}

double permanent_of_squared_moduli_avx2(const ComplexMatrix&) {
  throw std::runtime_error("permanent_of_squared_moduli_avx2: not built for this architecture");
}

#endif

}  // namespace mmi::kernels
