#include "quasihyper/scalar.hpp"

#include <cctype>
#include <cmath>
#include <ostream>
#include <sstream>

#include "quasihyper/error.hpp"

namespace quasihyper {

std::string_view to_string(EvalMode mode) { return mode == EvalMode::exact ? "exact" : "float"; }

EvalMode parse_eval_mode(std::string_view text) {
  if (text == "exact") return EvalMode::exact;
  if (text == "float" || text == "floating") return EvalMode::floating;
  throw InvalidArgument("unknown evaluation mode '" + std::string(text) + "'");
}

Scalar Scalar::ratio(std::int64_t num, std::int64_t den) {
  if (den == 0) throw InvalidArgument("zero denominator");
  return Scalar(mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den))));
}

Scalar Scalar::parse(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) throw ParseError("empty number");
  try {
    if (auto slash = s.find('/'); slash != std::string::npos) {
      mpz_class num(s.substr(0, slash), 10);
      mpz_class den(s.substr(slash + 1), 10);
      if (den == 0) throw ParseError("zero denominator in '" + s + "'");
      return Scalar(mpq_class(num, den));
    }
    if (auto dot = s.find('.'); dot != std::string::npos) {
      bool negative = s[0] == '-';
      std::string body = negative || s[0] == '+' ? s.substr(1) : s;
      dot = body.find('.');
      std::string digits = body.substr(0, dot) + body.substr(dot + 1);
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("malformed decimal '" + s + "'");
      mpz_class num(digits, 10);
      mpz_class den = pow_z(10, body.size() - dot - 1);
      if (negative) num = -num;
      return Scalar(mpq_class(num, den));
    }
    if (s[0] == '+') s = s.substr(1);
    return Scalar(mpq_class(mpz_class(s, 10)));
  } catch (const std::invalid_argument&) {
    throw ParseError("malformed number '" + s + "'");
  }
}

const mpq_class& Scalar::exact() const {
  if (!is_exact()) throw InvalidArgument("scalar holds a float value, not an exact rational");
  return std::get<mpq_class>(value_);
}

double Scalar::to_double() const {
  if (is_exact()) return std::get<mpq_class>(value_).get_d();
  return std::get<double>(value_);
}

std::string Scalar::to_string() const {
  if (is_exact()) return std::get<mpq_class>(value_).get_str();
  std::ostringstream os;
  os.precision(17);
  os << std::get<double>(value_);
  return os.str();
}

Scalar Scalar::as_mode(EvalMode mode) const {
  if (mode == EvalMode::floating) return Scalar(to_double());
  if (is_exact()) return *this;
  double x = std::get<double>(value_);
  if (!std::isfinite(x)) throw InvalidArgument("non-finite value cannot be made exact");
  return Scalar(mpq_class(x));
}

bool Scalar::is_zero() const { return sign() == 0; }

int Scalar::sign() const {
  if (is_exact()) return sgn(std::get<mpq_class>(value_));
  double x = std::get<double>(value_);
  return (x > 0) - (x < 0);
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return Scalar(mpq_class(a.exact() + b.exact()));
  return Scalar(a.to_double() + b.to_double());
}
Scalar operator-(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return Scalar(mpq_class(a.exact() - b.exact()));
  return Scalar(a.to_double() - b.to_double());
}
Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return Scalar(mpq_class(a.exact() * b.exact()));
  return Scalar(a.to_double() * b.to_double());
}
Scalar operator/(const Scalar& a, const Scalar& b) {
  if (b.is_zero()) throw InvalidArgument("division by zero");
  if (a.is_exact() && b.is_exact()) return Scalar(mpq_class(a.exact() / b.exact()));
  return Scalar(a.to_double() / b.to_double());
}
Scalar Scalar::operator-() const {
  if (is_exact()) return Scalar(mpq_class(-exact()));
  return Scalar(-std::get<double>(value_));
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return a.exact() == b.exact();
  return a.to_double() == b.to_double();
}
bool operator<(const Scalar& a, const Scalar& b) {
  if (a.is_exact() && b.is_exact()) return a.exact() < b.exact();
  return a.to_double() < b.to_double();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

Scalar abs(const Scalar& s) { return s.sign() < 0 ? -s : s; }

mpq_class pow_q(const mpq_class& base, unsigned long exp) {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exp);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exp);
  mpq_class r(num, den);
  r.canonicalize();
  return r;
}

mpz_class pow_z(const mpz_class& base, unsigned long exp) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

mpz_class falling_factorial(std::uint64_t n, std::uint64_t k) {
  mpz_class r = 1;
  if (k > n) return 0;
  for (std::uint64_t i = 0; i < k; ++i) r *= static_cast<unsigned long>(n - i);
  return r;
}

mpz_class binomial(std::uint64_t n, std::uint64_t k) {
  mpz_class r;
  if (k > n) return 0;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

void CompensatedSum::add(double x) {
  double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x))
    comp_ += (sum_ - t) + x;
  else
    comp_ += (x - t) + sum_;
  sum_ = t;
}

CompensatedSum& CompensatedSum::operator+=(const CompensatedSum& other) {
  add(other.sum_);
  add(other.comp_);
  return *this;
}

mpz_class to_mpz(__int128 v) {
  bool negative = v < 0;
  unsigned __int128 u = negative ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  mpz_class hi(static_cast<unsigned long>(u >> 64));
  mpz_class lo(static_cast<unsigned long>(u & ~static_cast<std::uint64_t>(0)));
  mpz_class r = (hi << 64) + lo;
  return negative ? mpz_class(-r) : r;
}

}  // namespace quasihyper
