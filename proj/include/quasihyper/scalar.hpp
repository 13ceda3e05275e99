#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

namespace quasihyper {

enum class EvalMode { exact, floating };

std::string_view to_string(EvalMode mode);
EvalMode parse_eval_mode(std::string_view text);

/// A statistic value: an exact rational or a double, depending on the
/// evaluation mode that produced it. Mixed arithmetic falls back to double.
class Scalar {
 public:
  Scalar() : value_(mpq_class(0)) {}
  Scalar(mpq_class q) : value_(std::move(q)) { std::get<mpq_class>(value_).canonicalize(); }  // NOLINT
  Scalar(const mpz_class& z) : value_(mpq_class(z)) {}                                         // NOLINT
  Scalar(double x) : value_(x) {}                                                              // NOLINT
  static Scalar integer(std::int64_t v) { return Scalar(mpq_class(mpz_class(static_cast<long>(v)))); }
  static Scalar ratio(std::int64_t num, std::int64_t den);

  /// Parses "p/q", an integer, or a decimal literal ("0.25") into an exact value.
  static Scalar parse(std::string_view text);

  bool is_exact() const { return std::holds_alternative<mpq_class>(value_); }
  const mpq_class& exact() const;
  double to_double() const;
  std::string to_string() const;

  Scalar as_mode(EvalMode mode) const;

  bool is_zero() const;
  int sign() const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator<(const Scalar& a, const Scalar& b);
  friend bool operator<=(const Scalar& a, const Scalar& b) { return !(b < a); }
  friend bool operator>(const Scalar& a, const Scalar& b) { return b < a; }
  friend bool operator>=(const Scalar& a, const Scalar& b) { return !(a < b); }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s);

 private:
  std::variant<mpq_class, double> value_;
};

Scalar abs(const Scalar& s);

/// base^exp with 0^0 = 1.
mpq_class pow_q(const mpq_class& base, unsigned long exp);
mpz_class pow_z(const mpz_class& base, unsigned long exp);

/// n (n-1) ... (n-k+1); zero when k > n.
mpz_class falling_factorial(std::uint64_t n, std::uint64_t k);
mpz_class binomial(std::uint64_t n, std::uint64_t k);

/// Neumaier-compensated running sum for float-mode reductions.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + comp_; }
  CompensatedSum& operator+=(const CompensatedSum& other);

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

mpz_class to_mpz(__int128 v);

}  // namespace quasihyper
