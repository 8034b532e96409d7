#include "gramex/kernels.hpp"

namespace gramex::kernels::scalar {

float dot(const float* a, const float* b, std::size_t n) {
  float sum = 0.0f;
  for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void axpy(float alpha, const float* x, float* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale(float alpha, float* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

void accumulate_u8(const std::uint8_t* row, std::uint32_t* acc, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] += row[i];
}

}  // namespace gramex::kernels::scalar
