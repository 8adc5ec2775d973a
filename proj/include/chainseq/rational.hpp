#pragma once

#include <gmp.h>

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "chainseq/errors.hpp"

namespace chainseq {

namespace detail {

inline std::atomic<std::size_t>& denominator_bit_budget() {
  static std::atomic<std::size_t> budget{std::size_t{1} << 20};
  return budget;
}

}  // namespace detail

inline std::size_t max_denominator_bits() {
  return detail::denominator_bit_budget().load(std::memory_order_relaxed);
}

inline void set_max_denominator_bits(std::size_t bits) {
  detail::denominator_bit_budget().store(bits, std::memory_order_relaxed);
}

/// Arbitrary-precision rational, kept in lowest terms with positive
/// denominator. Arithmetic is exact; every result is checked against the
/// global denominator bit budget (see set_max_denominator_bits).
class Rational {
 public:
  Rational() { mpq_init(q_); }

  Rational(long long num, long long den) {
    mpq_init(q_);
    if (den == 0) throw DomainError("rational with zero denominator");
    mpz_set_si(mpq_numref(q_), num);
    mpz_set_si(mpq_denref(q_), den);
    canonicalize();
  }

  // NOLINTNEXTLINE(google-explicit-constructor): integers embed exactly.
  Rational(long long n) : Rational(n, 1) {}

  Rational(const Rational& other) {
    mpq_init(q_);
    mpq_set(q_, other.q_);
  }

  Rational(Rational&& other) noexcept {
    mpq_init(q_);
    mpq_swap(q_, other.q_);
  }

  Rational& operator=(const Rational& other) {
    if (this != &other) mpq_set(q_, other.q_);
    return *this;
  }

  Rational& operator=(Rational&& other) noexcept {
    if (this != &other) mpq_swap(q_, other.q_);
    return *this;
  }

  ~Rational() { mpq_clear(q_); }

  /// Parses "p/q", an integer, or a decimal like "0.22" / "1.5e-3".
  /// Decimals convert exactly (0.22 becomes 11/50), never through a float.
  static Rational from_string(std::string_view text) {
    if (text.empty()) throw ParseError("empty scalar literal");
    const std::string s(text);
    const auto slash = s.find('/');
    Rational r;
    if (slash != std::string::npos) {
      const std::string num = s.substr(0, slash);
      const std::string den = s.substr(slash + 1);
      if (!set_integer(mpq_numref(r.q_), num) || !set_integer(mpq_denref(r.q_), den))
        throw ParseError("bad rational literal: '" + s + "'");
      if (mpz_sgn(mpq_denref(r.q_)) == 0)
        throw ParseError("zero denominator in '" + s + "'");
      r.canonicalize();
      return r;
    }
    if (!parse_decimal(r.q_, s)) throw ParseError("bad scalar literal: '" + s + "'");
    r.canonicalize();
    return r;
  }

  static Rational power_of(unsigned long base, unsigned long exp) {
    Rational r;
    mpz_ui_pow_ui(mpq_numref(r.q_), base, exp);
    return r;
  }

  friend Rational operator+(const Rational& a, const Rational& b) {
    Rational r;
    mpq_add(r.q_, a.q_, b.q_);
    r.check_budget();
    return r;
  }

  friend Rational operator-(const Rational& a, const Rational& b) {
    Rational r;
    mpq_sub(r.q_, a.q_, b.q_);
    r.check_budget();
    return r;
  }

  friend Rational operator*(const Rational& a, const Rational& b) {
    Rational r;
    mpq_mul(r.q_, a.q_, b.q_);
    r.check_budget();
    return r;
  }

  friend Rational operator/(const Rational& a, const Rational& b) {
    if (mpq_sgn(b.q_) == 0) throw DomainError("exact division by zero");
    Rational r;
    mpq_div(r.q_, a.q_, b.q_);
    r.check_budget();
    return r;
  }

  Rational operator-() const {
    Rational r;
    mpq_neg(r.q_, q_);
    return r;
  }

  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return mpq_equal(a.q_, b.q_) != 0;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return mpq_cmp(a.q_, b.q_) < 0;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  int sign() const { return mpq_sgn(q_); }

  Rational magnitude() const {
    Rational r;
    mpq_abs(r.q_, q_);
    return r;
  }

  /// Nearest 64-bit binary float (round to nearest, ties to even).
  double to_double() const {
    if (mpq_sgn(q_) == 0) return 0.0;
    mpz_t a, b, quo, rem;
    mpz_init(a);
    mpz_init(b);
    mpz_init(quo);
    mpz_init(rem);
    mpz_abs(a, mpq_numref(q_));
    mpz_set(b, mpq_denref(q_));
    const long na = static_cast<long>(mpz_sizeinbase(a, 2));
    const long nb = static_cast<long>(mpz_sizeinbase(b, 2));
    // Scale so the integer quotient carries 63..65 significant bits.
    const long shift = 64 - (na - nb);
    if (shift >= 0)
      mpz_mul_2exp(a, a, static_cast<unsigned long>(shift));
    else
      mpz_mul_2exp(b, b, static_cast<unsigned long>(-shift));
    mpz_fdiv_qr(quo, rem, a, b);
    long e2 = -shift;
    const long bits = static_cast<long>(mpz_sizeinbase(quo, 2));
    const long excess = bits - 53;
    const bool guard = mpz_tstbit(quo, static_cast<mp_bitcnt_t>(excess - 1)) != 0;
    bool sticky = mpz_sgn(rem) != 0;
    if (!sticky) {
      mpz_t low;
      mpz_init(low);
      mpz_fdiv_r_2exp(low, quo, static_cast<mp_bitcnt_t>(excess - 1));
      sticky = mpz_sgn(low) != 0;
      mpz_clear(low);
    }
    mpz_fdiv_q_2exp(quo, quo, static_cast<mp_bitcnt_t>(excess));
    unsigned long long m = mpz_get_ui(quo);
    e2 += excess;
    if (guard && (sticky || (m & 1ULL))) {
      ++m;
      if (m == (1ULL << 53)) {
        m >>= 1;
        ++e2;
      }
    }
    mpz_clear(a);
    mpz_clear(b);
    mpz_clear(quo);
    mpz_clear(rem);
    double out = std::ldexp(static_cast<double>(m), static_cast<int>(e2));
    return mpq_sgn(q_) < 0 ? -out : out;
  }

  /// Lowest-terms "p/q" form, denominator spelled out even when it is 1.
  std::string to_string() const {
    return mpz_string(mpq_numref(q_)) + "/" + mpz_string(mpq_denref(q_));
  }

  long long numerator_ll() const { return checked_si(mpq_numref(q_), "numerator"); }
  long long denominator_ll() const { return checked_si(mpq_denref(q_), "denominator"); }

  long long floor_ll() const {
    mpz_t f;
    mpz_init(f);
    mpz_fdiv_q(f, mpq_numref(q_), mpq_denref(q_));
    if (!mpz_fits_slong_p(f)) {
      mpz_clear(f);
      throw std::overflow_error("floor does not fit in long long");
    }
    const long long out = mpz_get_si(f);
    mpz_clear(f);
    return out;
  }

  std::size_t denominator_bits() const { return mpz_sizeinbase(mpq_denref(q_), 2); }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.to_string();
  }

 private:
  void canonicalize() {
    mpq_canonicalize(q_);
    check_budget();
  }

  void check_budget() const {
    const std::size_t bits = mpz_sizeinbase(mpq_denref(q_), 2);
    const std::size_t budget = max_denominator_bits();
    if (bits > budget) throw DenominatorOverflow(bits, budget);
  }

  static bool set_integer(mpz_ptr z, const std::string& s) {
    if (s.empty()) return false;
    return mpz_set_str(z, s.c_str(), 10) == 0;
  }

  static bool parse_decimal(mpq_ptr q, const std::string& s) {
    std::size_t i = 0;
    bool negative = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) negative = (s[i++] == '-');
    std::string digits;
    long frac_len = 0;
    bool any = false;
    for (; i < s.size() && s[i] >= '0' && s[i] <= '9'; ++i) {
      digits += s[i];
      any = true;
    }
    if (i < s.size() && s[i] == '.') {
      ++i;
      for (; i < s.size() && s[i] >= '0' && s[i] <= '9'; ++i) {
        digits += s[i];
        ++frac_len;
        any = true;
      }
    }
    long exp10 = 0;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
      ++i;
      bool eneg = false;
      if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = (s[i++] == '-');
      if (i >= s.size()) return false;
      for (; i < s.size() && s[i] >= '0' && s[i] <= '9'; ++i) {
        exp10 = exp10 * 10 + (s[i] - '0');
        if (exp10 > 100000) return false;
      }
      if (eneg) exp10 = -exp10;
    }
    if (!any || i != s.size()) return false;
    mpz_set_str(mpq_numref(q), digits.empty() ? "0" : digits.c_str(), 10);
    mpz_set_ui(mpq_denref(q), 1);
    const long net = exp10 - frac_len;
    mpz_t scale;
    mpz_init(scale);
    mpz_ui_pow_ui(scale, 10, static_cast<unsigned long>(net >= 0 ? net : -net));
    if (net >= 0)
      mpz_mul(mpq_numref(q), mpq_numref(q), scale);
    else
      mpz_set(mpq_denref(q), scale);
    mpz_clear(scale);
    if (negative) mpz_neg(mpq_numref(q), mpq_numref(q));
    return true;
  }

  static std::string mpz_string(mpz_srcptr z) {
    char* raw = mpz_get_str(nullptr, 10, z);
    std::string out(raw);
    std::free(raw);
    return out;
  }

  static long long checked_si(mpz_srcptr z, const char* what) {
    if (!mpz_fits_slong_p(z))
      throw std::overflow_error(std::string(what) + " does not fit in long long");
    return mpz_get_si(z);
  }

  mpq_t q_;
};

}  // namespace chainseq
