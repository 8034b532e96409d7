#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gramex {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by the input readers; carries the 1-based line of the offending row.
class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& what);
  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

std::vector<std::string_view> split(std::string_view s, char sep);
std::vector<std::string_view> split_ws(std::string_view s);
std::string_view trim(std::string_view s);
bool starts_with(std::string_view s, std::string_view prefix);
std::string to_lower_ascii(std::string_view s);
std::string join(std::span<const std::string> parts, std::string_view sep);

// Strict unsigned parse; returns false on any trailing garbage or overflow.
bool parse_size(std::string_view s, std::size_t& out);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

// printf-style "%.2f".
std::string format_fixed(double value, int decimals);

// Deterministic PRNG. Uses only raw engine output so sequences are identical
// across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next();
  // Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  double uniform();  // [0, 1)

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t state_;
};

// SplitMix-style mixing of a base seed with a stream index.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream);

}  // namespace gramex

#include <functional>

namespace gramex {

// Runs fn(0..n-1) on up to `jobs` threads. Results must be written to
// per-index slots; the first exception thrown by any call is rethrown.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn);

}  // namespace gramex
