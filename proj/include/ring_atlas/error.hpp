#pragma once

#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace ring_atlas {

enum class ErrorKind {
  invalid_parameter,
  resource_limit,
  precondition_violation,
  internal_error,
  parse_error,
  budget_exhausted,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_parameter: return "invalid-parameter";
    case ErrorKind::resource_limit: return "resource-limit";
    case ErrorKind::precondition_violation: return "precondition-violation";
    case ErrorKind::internal_error: return "internal-error";
    case ErrorKind::parse_error: return "parse-error";
    case ErrorKind::budget_exhausted: return "budget-exhausted";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline constexpr std::size_t kDefaultOrderCap = 4096;

namespace detail {

inline std::size_t cap_from_environment() {
  if (const char* env = std::getenv("RING_ATLAS_CAP")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v >= 2) return static_cast<std::size_t>(v);
  }
  return kDefaultOrderCap;
}

inline std::atomic<std::size_t>& cap_storage() {
  static std::atomic<std::size_t> cap{cap_from_environment()};
  return cap;
}

}  // namespace detail

/// Largest ring order any constructor will materialize. Defaults to 4096,
/// overridden by the RING_ATLAS_CAP environment variable or set_order_cap().
inline std::size_t order_cap() { return detail::cap_storage().load(std::memory_order_relaxed); }

inline void set_order_cap(std::size_t cap) {
  if (cap < 2) fail(ErrorKind::invalid_parameter, "order cap must be at least 2");
  detail::cap_storage().store(cap, std::memory_order_relaxed);
}

}  // namespace ring_atlas
