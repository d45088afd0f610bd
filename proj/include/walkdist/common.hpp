#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace walkdist {

// Error hierarchy. Every error carries a stable machine-readable code that the
// CLI surfaces alongside the human message.

class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

class ArgumentError : public Error {
 public:
  explicit ArgumentError(const std::string& what) : Error("argument", what) {}
};

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, const std::string& detail, const std::string& context = {})
      : Error("parse", (context.empty() ? "" : context + ", ") + "byte " + std::to_string(offset) +
                           ": " + detail),
        offset_(offset),
        detail_(detail) {}
  std::size_t offset() const noexcept { return offset_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::size_t offset_;
  std::string detail_;
};

/// Raised when a requested computation exceeds a configured size cap.
class RefusedError : public Error {
 public:
  RefusedError(std::size_t dimension, std::size_t cap, const std::string& what)
      : Error("refused", what + " (dimension " + std::to_string(dimension) + " exceeds cap " +
                             std::to_string(cap) + ")"),
        dimension_(dimension),
        cap_(cap) {}
  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t dimension_;
  std::size_t cap_;
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error("numerical", what) {}
};

/// An internal invariant failed; signals a bug, never bad input.
class ConsistencyError : public Error {
 public:
  explicit ConsistencyError(const std::string& what) : Error("consistency", what) {}
};

class TimeoutError : public Error {
 public:
  TimeoutError() : Error("timeout", "time budget exhausted") {}
};

inline constexpr std::size_t kDefaultSizeCap = 4096;

/// Dense row-major square matrix.
template <typename T>
class SquareMatrix {
 public:
  SquareMatrix() = default;
  explicit SquareMatrix(std::size_t n, T fill = T{}) : n_(n), data_(n * n, fill) {}

  std::size_t size() const noexcept { return n_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
  const std::vector<T>& data() const noexcept { return data_; }
  std::vector<T>& data() noexcept { return data_; }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<T> data_;
};

using IntMatrix = SquareMatrix<std::int64_t>;

/// Wall-clock budget; a default-constructed deadline never expires.
class Deadline {
 public:
  Deadline() = default;
  explicit Deadline(std::chrono::milliseconds budget)
      : end_(std::chrono::steady_clock::now() + budget) {}

  static Deadline after_ms(long long ms) {
    return ms > 0 ? Deadline(std::chrono::milliseconds(ms)) : Deadline();
  }
  bool expired() const {
    return end_ && std::chrono::steady_clock::now() >= *end_;
  }
  void check() const {
    if (expired()) throw TimeoutError();
  }

 private:
  std::optional<std::chrono::steady_clock::time_point> end_;
};

/// Worker count: the explicit request if positive, else WALKDIST_THREADS,
/// else the hardware concurrency.
unsigned thread_count(int requested = 0);

/// n^k, saturating at SIZE_MAX.
std::size_t saturating_power(std::size_t n, int k);

/// Throws RefusedError when n^k exceeds `cap`; returns n^k otherwise.
std::size_t require_within_cap(std::size_t n, int k, std::size_t cap, const std::string& what);

}  // namespace walkdist
