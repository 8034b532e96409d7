#include <arm_neon.h>

#include "gramex/kernels.hpp"

namespace gramex::kernels::neon {

float dot(const float* a, const float* b, std::size_t n) {
  float32x4_t acc0 = vdupq_n_f32(0.0f);
  float32x4_t acc1 = vdupq_n_f32(0.0f);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = vfmaq_f32(acc0, vld1q_f32(a + i), vld1q_f32(b + i));
    acc1 = vfmaq_f32(acc1, vld1q_f32(a + i + 4), vld1q_f32(b + i + 4));
  }
  float sum = vaddvq_f32(vaddq_f32(acc0, acc1));
  for (; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

void axpy(float alpha, const float* x, float* y, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    vst1q_f32(y + i, vfmaq_n_f32(vld1q_f32(y + i), vld1q_f32(x + i), alpha));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void scale(float alpha, float* x, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) vst1q_f32(x + i, vmulq_n_f32(vld1q_f32(x + i), alpha));
  for (; i < n; ++i) x[i] *= alpha;
}

void accumulate_u8(const std::uint8_t* row, std::uint32_t* acc, std::size_t n) {
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    uint16x8_t w = vmovl_u8(vld1_u8(row + i));
    vst1q_u32(acc + i, vaddq_u32(vld1q_u32(acc + i), vmovl_u16(vget_low_u16(w))));
    vst1q_u32(acc + i + 4, vaddq_u32(vld1q_u32(acc + i + 4), vmovl_u16(vget_high_u16(w))));
  }
  for (; i < n; ++i) acc[i] += row[i];
}

}  // namespace gramex::kernels::neon
