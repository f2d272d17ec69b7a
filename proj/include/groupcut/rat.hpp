#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include "groupcut/error.hpp"

namespace groupcut {

/// Exact rational number, always kept in lowest terms with a positive
/// denominator. Thin value wrapper around GMP's mpq_class.
class Rat {
 public:
  Rat() = default;
  Rat(int v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rat(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rat(long long v) : q_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)
  Rat(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw InputError("zero denominator");
    q_ = mpq_class(num, den);
    q_.canonicalize();
  }
  Rat(long num, long den) : Rat(mpz_class(num), mpz_class(den)) {}
  explicit Rat(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Parses "p" or "p/q" with optional leading sign on p. Whitespace is not
  /// accepted.
  static Rat parse(std::string_view text) {
    auto bad = [&] { return InputError("cannot parse rational '" + std::string(text) + "'"); };
    if (text.empty()) throw bad();
    auto slash = text.find('/');
    auto digits_ok = [](std::string_view s, bool allow_sign) {
      if (s.empty()) return false;
      std::size_t i = 0;
      if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
      if (i == s.size()) return false;
      for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9') return false;
      return true;
    };
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!digits_ok(num, true) || !digits_ok(den, false)) throw bad();
    std::string n(num);
    if (n[0] == '+') n.erase(0, 1);
    mpz_class zn(n, 10), zd(std::string(den), 10);
    if (zd == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    return Rat(zn, zd);
  }

  std::string str() const {
    if (q_.get_den() == 1) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

  const mpz_class& num() const { return q_.get_num(); }
  const mpz_class& den() const { return q_.get_den(); }
  const mpq_class& mpq() const { return q_; }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  /// Largest integer not exceeding this value.
  mpz_class floor() const {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return r;
  }

  /// Representative in [0, 1).
  Rat frac() const { return Rat(mpq_class(q_ - mpq_class(floor()))); }

  Rat abs() const { return Rat(mpq_class(::abs(q_))); }

  /// Decimal rendering truncated toward zero to `digits` places. Used for
  /// drawing only.
  std::string to_decimal(int digits) const {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
    mpz_class scaled = q_.get_num() * scale;
    mpz_class t;
    mpz_tdiv_q(t.get_mpz_t(), scaled.get_mpz_t(), q_.get_den_mpz_t());
    bool neg = t < 0;
    if (neg) t = -t;
    std::string s = t.get_str();
    if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits) + 1 - s.size(), '0');
    std::string out = s.substr(0, s.size() - static_cast<std::size_t>(digits));
    if (digits > 0) out += "." + s.substr(s.size() - static_cast<std::size_t>(digits));
    bool all_zero = t == 0;
    return (neg && !all_zero ? "-" : "") + out;
  }

  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.q_)); }

  friend bool operator==(const Rat& a, const Rat& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rat& a, const Rat& b) { return a.q_ < b.q_; }
  friend bool operator<=(const Rat& a, const Rat& b) { return a.q_ <= b.q_; }
  friend bool operator>(const Rat& a, const Rat& b) { return a.q_ > b.q_; }
  friend bool operator>=(const Rat& a, const Rat& b) { return a.q_ >= b.q_; }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

 private:
  mpq_class q_;
};

inline Rat rat_parse(std::string_view text) { return Rat::parse(text); }

inline Rat min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

inline mpz_class lcm(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

/// Converts a small GMP integer to long, throwing when it does not fit.
inline long to_long(const mpz_class& z, const char* what) {
  if (!z.fits_slong_p()) throw CapacityError(std::string(what) + " exceeds the supported range");
  return z.get_si();
}

}  // namespace groupcut

template <>
struct std::hash<groupcut::Rat> {
  std::size_t operator()(const groupcut::Rat& r) const noexcept {
    std::size_t h1 = mpz_get_ui(r.num().get_mpz_t());
    std::size_t h2 = mpz_get_ui(r.den().get_mpz_t());
    return h1 * 1000003u ^ h2 ^ static_cast<std::size_t>(r.sign() + 1);
  }
};
