#pragma once
// Data-parallel inner loops used by the learners.
//
// Every kernel has a portable scalar reference in gramex::kernels::scalar and,
// where the target supports it, an AVX2 (x86-64) or NEON (aarch64) variant.
// The top-level entry points dispatch once, at first use, to the widest
// variant the running CPU supports. Set GRAMEX_FORCE_SCALAR=1 to pin the
// scalar path.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace gramex::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);

// Widest ISA compiled in and supported by this CPU.
Isa detected_isa();
// ISA currently used by the dispatching entry points.
Isa active_isa();
// Overrides dispatch (tests). Returns false if `isa` is unavailable.
bool set_active_isa(Isa isa);

// sum_i a[i] * b[i]
float dot(std::span<const float> a, std::span<const float> b);
// y += alpha * x
void axpy(float alpha, std::span<const float> x, std::span<float> y);
// x *= alpha
void scale(float alpha, std::span<float> x);
// acc[i] += row[i]; rows are 0/1 indicator bytes.
void accumulate_u8(std::span<const std::uint8_t> row, std::span<std::uint32_t> acc);

namespace scalar {
float dot(const float* a, const float* b, std::size_t n);
void axpy(float alpha, const float* x, float* y, std::size_t n);
void scale(float alpha, float* x, std::size_t n);
void accumulate_u8(const std::uint8_t* row, std::uint32_t* acc, std::size_t n);
}  // namespace scalar

namespace avx2 {
float dot(const float* a, const float* b, std::size_t n);
void axpy(float alpha, const float* x, float* y, std::size_t n);
void scale(float alpha, float* x, std::size_t n);
void accumulate_u8(const std::uint8_t* row, std::uint32_t* acc, std::size_t n);
}  // namespace avx2

namespace neon {
float dot(const float* a, const float* b, std::size_t n);
void axpy(float alpha, const float* x, float* y, std::size_t n);
void scale(float alpha, float* x, std::size_t n);
void accumulate_u8(const std::uint8_t* row, std::uint32_t* acc, std::size_t n);
}  // namespace neon

}  // namespace gramex::kernels
