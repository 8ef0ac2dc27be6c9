#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace parabolic {

/// Thrown for malformed or out-of-domain input. The CLI maps it to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when an identity that must hold exactly is violated. Always a bug;
/// the CLI maps it to exit code 3.
class IdentityViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/**
 * @brief Exact rational number, always in lowest terms with positive denominator.
 *
 * Thin value wrapper over GMP's mpq_class. Every operation canonicalizes.
 */
class Rational {
 public:
  Rational() = default;
  Rational(long value) : q_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(int value) : q_(static_cast<long>(value)) {}  // NOLINT
  Rational(long num, long den) {
    if (den == 0) throw InputError("zero denominator");
    q_ = mpq_class(mpz_class(num), mpz_class(den));
    q_.canonicalize();
  }

  /// Parses "a/b" or "a". Whitespace is not accepted.
  static Rational parse(std::string_view text) {
    if (text.empty()) throw InputError("empty rational");
    auto slash = text.find('/');
    auto num = text.substr(0, slash);
    auto check_int = [&](std::string_view s) {
      std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
      if (i == s.size()) throw InputError("malformed rational \"" + std::string(text) + "\"");
      for (; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw InputError("malformed rational \"" + std::string(text) + "\"");
      }
    };
    check_int(num);
    Rational out;
    mpz_class n(std::string(num[0] == '+' ? num.substr(1) : num), 10);
    if (slash == std::string_view::npos) {
      out.q_ = mpq_class(n);
      return out;
    }
    auto den = text.substr(slash + 1);
    check_int(den);
    mpz_class d(std::string(den[0] == '+' ? den.substr(1) : den), 10);
    if (d == 0) throw InputError("zero denominator");
    out.q_ = mpq_class(n, d);
    out.q_.canonicalize();
    return out;
  }

  /// "a/b" in lowest terms, or "a" when the denominator is 1.
  std::string str() const {
    if (q_.get_den() == 1) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.str(); }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sign() == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  /// Largest integer <= x. Throws if it does not fit in a long.
  long floor() const {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    if (!f.fits_slong_p()) throw InputError("integer overflow in floor");
    return f.get_si();
  }
  long ceil() const {
    mpz_class c;
    mpz_cdiv_q(c.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    if (!c.fits_slong_p()) throw InputError("integer overflow in ceil");
    return c.get_si();
  }

  Rational operator-() const { return from(-q_); }
  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw InputError("division by zero");
    q_ /= o.q_;
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  const mpq_class& raw() const { return q_; }

 private:
  static Rational from(mpq_class q) {
    Rational r;
    r.q_ = std::move(q);
    return r;
  }
  mpq_class q_{0};
};

inline Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

}  // namespace parabolic
