#include <cstdlib>
#include <stdexcept>
#include <string>

#include "mmi/kernels.hpp"

namespace mmi::kernels {

namespace {

enum class Backend { kScalar, kAvx2 };

Backend select_backend() {
  const char* env = std::getenv("MMI_KERNEL");
  const std::string choice = env ? env : "auto";
  if (choice == "scalar") return Backend::kScalar;
  if (choice == "avx2") {
    if (!avx2_available())
      throw std::runtime_error("MMI_KERNEL=avx2 requested but the CPU lacks AVX2+FMA");
    return Backend::kAvx2;
  }
  if (choice == "auto" || choice.empty())
    return avx2_available() ? Backend::kAvx2 : Backend::kScalar;
  throw std::invalid_argument("MMI_KERNEL must be one of auto, scalar, avx2 (got '" +
                              choice + "')");
}

Backend backend() {
  static const Backend selected = select_backend();
  return selected;
}

}  // namespace

const char* active_backend() {
  return backend() == Backend::kAvx2 ? "avx2" : "scalar";
}

std::complex<double> permanent(const ComplexMatrix& m) {
  return backend() == Backend::kAvx2 ? permanent_avx2(m) : permanent_scalar(m);
}

double permanent_of_squared_moduli(const ComplexMatrix& m) {
  return backend() == Backend::kAvx2 ? permanent_of_squared_moduli_avx2(m)
                                     : permanent_of_squared_moduli_scalar(m);
}

}  // namespace mmi::kernels
