#pragma once

#include <charconv>
#include <cmath>
#include <concepts>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>

#include "chainseq/errors.hpp"
#include "chainseq/rational.hpp"

namespace chainseq {

enum class Backend { Exact, Float };

inline std::string_view backend_name(Backend b) {
  return b == Backend::Exact ? "exact" : "float";
}

/// Comparison tolerance for the float backend. The exact backend ignores it.
struct Tolerance {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;

  Tolerance() = default;

  Tolerance(double abs_tol, double rel_tol) : abs_tol(abs_tol), rel_tol(rel_tol) {
    if (!(abs_tol > 0.0) || abs_tol > 1e-3 || !(rel_tol > 0.0) || rel_tol > 1e-3)
      throw std::invalid_argument("tolerances must lie in (0, 1e-3]");
  }
};

template <class T>
struct numeric_traits;

template <>
struct numeric_traits<Rational> {
  static constexpr Backend backend = Backend::Exact;
  static constexpr bool is_exact = true;
  static Rational ratio(long long num, long long den) { return Rational(num, den); }
  static Rational from_rational(const Rational& r) { return r; }
  static double to_double(const Rational& x) { return x.to_double(); }
  static Rational magnitude(const Rational& x) { return x.magnitude(); }
};

template <>
struct numeric_traits<double> {
  static constexpr Backend backend = Backend::Float;
  static constexpr bool is_exact = false;
  static double ratio(long long num, long long den) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  static double from_rational(const Rational& r) { return r.to_double(); }
  static double to_double(double x) { return x; }
  static double magnitude(double x) { return std::abs(x); }
};

template <class T>
concept Numeric = std::same_as<T, Rational> || std::same_as<T, double>;

/// Exact backend: true iff x == y (tolerance ignored).
/// Float backend: |x - y| <= max(abs_tol, rel_tol * max(|x|, |y|)).
template <Numeric T>
bool approx_eq(const T& x, const T& y, const Tolerance& tol = {}) {
  if constexpr (numeric_traits<T>::is_exact) {
    return x == y;
  } else {
    const double diff = std::abs(x - y);
    const double scale = std::max(std::abs(x), std::abs(y));
    return diff <= std::max(tol.abs_tol, tol.rel_tol * scale);
  }
}

/// Shortest decimal string that round-trips to the same double.
inline std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

/// Runtime-tagged scalar used at the CLI and serialization boundary.
/// Mixing backends in any binary operation throws BackendMismatch.
class Scalar {
 public:
  Scalar() : v_(Rational()) {}
  explicit Scalar(Rational r) : v_(std::move(r)) {}
  explicit Scalar(double d) : v_(d) {}

  static Scalar parse(std::string_view text, Backend backend) {
    Rational r = Rational::from_string(text);
    if (backend == Backend::Exact) return Scalar(std::move(r));
    return Scalar(r.to_double());
  }

  Backend backend() const {
    return std::holds_alternative<Rational>(v_) ? Backend::Exact : Backend::Float;
  }

  const Rational& exact() const {
    if (backend() != Backend::Exact) throw BackendMismatch("scalar is not exact");
    return std::get<Rational>(v_);
  }

  double as_float() const {
    if (backend() != Backend::Float) throw BackendMismatch("scalar is not float");
    return std::get<double>(v_);
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    return zip(a, b, "+", [](const auto& x, const auto& y) { return x + y; });
  }
  friend Scalar operator-(const Scalar& a, const Scalar& b) {
    return zip(a, b, "-", [](const auto& x, const auto& y) { return x - y; });
  }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    return zip(a, b, "*", [](const auto& x, const auto& y) { return x * y; });
  }
  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    return zip(a, b, "/", [](const auto& x, const auto& y) { return x / y; });
  }

  std::string to_string() const {
    if (backend() == Backend::Exact) return std::get<Rational>(v_).to_string();
    return format_double(std::get<double>(v_));
  }

 private:
  template <class F>
  static Scalar zip(const Scalar& a, const Scalar& b, const char* op, F f) {
    if (a.backend() != b.backend())
      throw BackendMismatch(std::string("mixed backends in '") + op + "'");
    if (a.backend() == Backend::Exact)
      return Scalar(f(std::get<Rational>(a.v_), std::get<Rational>(b.v_)));
    return Scalar(f(std::get<double>(a.v_), std::get<double>(b.v_)));
  }

  std::variant<Rational, double> v_;
};

inline bool approx_eq(const Scalar& x, const Scalar& y, const Tolerance& tol = {}) {
  if (x.backend() != y.backend())
    throw BackendMismatch("mixed backends in approx_eq");
  if (x.backend() == Backend::Exact) return approx_eq(x.exact(), y.exact(), tol);
  return approx_eq(x.as_float(), y.as_float(), tol);
}

/// Nearest binary float; the identity on float-backed scalars.
inline double to_float(const Scalar& x) {
  if (x.backend() == Backend::Exact) return x.exact().to_double();
  return x.as_float();
}

}  // namespace chainseq
