#include <atomic>
#include <cassert>
#include <cstdlib>
#include <cstring>

#include "gramex/kernels.hpp"

namespace gramex::kernels {

namespace {

struct Table {
  float (*dot)(const float*, const float*, std::size_t);
  void (*axpy)(float, const float*, float*, std::size_t);
  void (*scale)(float, float*, std::size_t);
  void (*accumulate_u8)(const std::uint8_t*, std::uint32_t*, std::size_t);
};

constexpr Table kScalar{scalar::dot, scalar::axpy, scalar::scale, scalar::accumulate_u8};
#if defined(GRAMEX_HAVE_AVX2)
constexpr Table kAvx2{avx2::dot, avx2::axpy, avx2::scale, avx2::accumulate_u8};
#endif
#if defined(GRAMEX_HAVE_NEON)
constexpr Table kNeon{neon::dot, neon::axpy, neon::scale, neon::accumulate_u8};
#endif

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(GRAMEX_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      __builtin_cpu_init();
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::neon:
#if defined(GRAMEX_HAVE_NEON)
      return true;  // mandatory on aarch64
#else
      return false;
#endif
  }
  return false;
}

const Table* table_for(Isa isa) {
  switch (isa) {
#if defined(GRAMEX_HAVE_AVX2)
    case Isa::avx2:
      return &kAvx2;
#endif
#if defined(GRAMEX_HAVE_NEON)
    case Isa::neon:
      return &kNeon;
#endif
    default:
      return &kScalar;
  }
}

Isa initial_isa() {
  const char* force = std::getenv("GRAMEX_FORCE_SCALAR");
  if (force && std::strcmp(force, "0") != 0 && *force) return Isa::scalar;
  return detected_isa();
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

const Table& active() { return *table_for(current().load(std::memory_order_relaxed)); }

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "unknown";
}

Isa detected_isa() {
  if (cpu_supports(Isa::avx2)) return Isa::avx2;
  if (cpu_supports(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

Isa active_isa() { return current().load(); }

bool set_active_isa(Isa isa) {
  if (!cpu_supports(isa)) return false;
  current().store(isa);
  return true;
}

float dot(std::span<const float> a, std::span<const float> b) {
  assert(a.size() == b.size());
  return active().dot(a.data(), b.data(), a.size());
}

void axpy(float alpha, std::span<const float> x, std::span<float> y) {
  assert(x.size() == y.size());
  active().axpy(alpha, x.data(), y.data(), x.size());
}

void scale(float alpha, std::span<float> x) { active().scale(alpha, x.data(), x.size()); }

void accumulate_u8(std::span<const std::uint8_t> row, std::span<std::uint32_t> acc) {
  assert(row.size() == acc.size());
  active().accumulate_u8(row.data(), acc.data(), row.size());
}

}  // namespace gramex::kernels
