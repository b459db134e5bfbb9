#include "lagcov/exact.hpp"

#include <stdexcept>

namespace lagcov {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  const auto slash = text.find('/');
  auto check_digits = [&](const std::string& part, bool allow_sign) {
    if (part.empty()) throw std::invalid_argument("malformed rational: " + text);
    std::size_t start = 0;
    if (allow_sign && (part[0] == '-' || part[0] == '+')) start = 1;
    if (start == part.size()) throw std::invalid_argument("malformed rational: " + text);
    for (std::size_t i = start; i < part.size(); ++i) {
      if (part[i] < '0' || part[i] > '9') throw std::invalid_argument("malformed rational: " + text);
    }
  };
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  check_digits(num, true);
  check_digits(den, false);
  if (num[0] == '+') num.erase(0, 1);
  Integer n(num, 10);
  Integer d(den, 10);
  if (d == 0) throw std::invalid_argument("zero denominator: " + text);
  Rational q(n, d);
  q.canonicalize();
  return q;
}

Rational power(const Rational& x, unsigned long n) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), x.get_num_mpz_t(), n);
  mpz_pow_ui(out.get_den_mpz_t(), x.get_den_mpz_t(), n);
  out.canonicalize();
  return out;
}

}  // namespace lagcov
