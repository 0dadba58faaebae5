#include "psr/rational.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace psr {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

[[noreturn]] void fail(std::string_view text) {
  throw std::invalid_argument("invalid rational: '" + std::string(text) + "'");
}

BigInt pow10(std::size_t n) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 10, n);
  return r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) fail(text);

  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) fail(text);

  Rational result;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) fail(text);
    BigInt n(std::string(num), 10);
    BigInt d(std::string(den), 10);
    if (d == 0) fail(text);
    result = Rational(n, d);
    result.canonicalize();
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if (whole.empty() && frac.empty()) fail(text);
    if (!whole.empty() && !all_digits(whole)) fail(text);
    if (!frac.empty() && !all_digits(frac)) fail(text);
    BigInt scale = pow10(frac.size());
    BigInt w = whole.empty() ? BigInt(0) : BigInt(std::string(whole), 10);
    BigInt f = frac.empty() ? BigInt(0) : BigInt(std::string(frac), 10);
    result = Rational(w * scale + f, scale);
    result.canonicalize();
  } else {
    if (!all_digits(s)) fail(text);
    result = Rational(BigInt(std::string(s), 10));
  }
  return negative ? Rational(-result) : result;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

double to_double(const Rational& value) { return value.get_d(); }

Rational ratio(long num, long den) {
  if (den == 0) throw std::invalid_argument("ratio: zero denominator");
  Rational r{BigInt(num), BigInt(den)};
  r.canonicalize();
  return r;
}

BigInt pow2(std::uint64_t n) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, n);
  return r;
}

}  // namespace psr
