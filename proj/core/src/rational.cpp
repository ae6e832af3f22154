#include "oweno/rational.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace oweno {

namespace mp = boost::multiprecision;

void Rational::normalize() {
  if (den_ == 0) throw std::domain_error("Rational: zero denominator");
  if (den_ < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_ == 0) {
    den_ = 1;
    return;
  }
  BigInt g = mp::gcd(num_ < 0 ? BigInt(-num_) : num_, den_);
  if (g > 1) {
    num_ /= g;
    den_ /= g;
  }
}

Rational Rational::of_double(double x) {
  if (!std::isfinite(x)) throw std::domain_error("Rational::of_double: non-finite");
  if (x == 0.0) return Rational();
  int e = 0;
  double m = std::frexp(x, &e);  // x = m * 2^e, |m| in [0.5, 1)
  auto mi = static_cast<long long>(std::ldexp(m, 53));  // exact integer
  e -= 53;
  BigInt num(mi), den(1);
  if (e >= 0)
    num <<= e;
  else
    den <<= -e;
  return Rational(std::move(num), std::move(den));
}

Rational Rational::parse(std::string_view text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) {
      return Rational(BigInt(std::string(text)), BigInt(1));
    }
    BigInt n{std::string(text.substr(0, slash))};
    BigInt d{std::string(text.substr(slash + 1))};
    return Rational(std::move(n), std::move(d));
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("Rational::parse: malformed '" + std::string(text) + "'");
  }
}

Rational pow_int(const Rational& a, long e) {
  if (e < 0) return Rational(1) / pow_int(a, -e);
  Rational acc(1), base = a;
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

namespace {
long bit_length(const BigInt& v) {
  return v == 0 ? 0 : static_cast<long>(mp::msb(v)) + 1;
}
}  // namespace

double Rational::to_double() const {
  if (num_ == 0) return 0.0;
  const bool neg = num_ < 0;
  BigInt a = neg ? BigInt(-num_) : num_;
  const BigInt& b = den_;

  // Produce q with 56-57 bits so that a/b = (q + tail) * 2^-k, then round the
  // 53-bit mantissa to nearest-even using the discarded bits.
  long k = 56 - (bit_length(a) - bit_length(b));
  BigInt an = a, bn = b;
  if (k >= 0)
    an <<= k;
  else
    bn <<= -k;
  BigInt q, rem;
  mp::divide_qr(an, bn, q, rem);
  bool sticky = rem != 0;
  while (bit_length(q) > 54) {
    sticky = sticky || (q & 1) != 0;
    q >>= 1;
    --k;
  }
  // q has exactly 54 bits; drop the guard bit with ties-to-even
  const bool guard = (q & 1) != 0;
  q >>= 1;
  --k;
  if (guard && (sticky || (q & 1) != 0)) q += 1;
  double d = std::ldexp(static_cast<double>(q.convert_to<std::uint64_t>()), static_cast<int>(-k));
  return neg ? -d : d;
}

std::string Rational::to_string() const {
  std::string s = num_.str();
  if (den_ != 1) {
    s += '/';
    s += den_.str();
  }
  return s;
}

std::string Rational::to_decimal_string(int significant_digits) const {
  const int n = significant_digits < 1 ? 1 : significant_digits;
  if (num_ == 0) {
    std::string z = "0.";
    z.append(static_cast<std::size_t>(n - 1), '0');
    return z + "e+00";
  }
  const bool neg = num_ < 0;
  BigInt a = neg ? BigInt(-num_) : num_;
  const BigInt& b = den_;

  const BigInt lo = mp::pow(BigInt(10), static_cast<unsigned>(n - 1));
  const BigInt hi = lo * 10;
  long exp10 = static_cast<long>(static_cast<double>(bit_length(a) - bit_length(b)) * 0.30103);

  BigInt mant, rem, bn;
  auto compute = [&](long e10) {
    BigInt an = a;
    bn = b;
    long k = n - 1 - e10;
    if (k >= 0)
      an *= mp::pow(BigInt(10), static_cast<unsigned>(k));
    else
      bn *= mp::pow(BigInt(10), static_cast<unsigned>(-k));
    mp::divide_qr(an, bn, mant, rem);
  };
  compute(exp10);
  while (mant < lo) compute(--exp10);
  while (mant >= hi) compute(++exp10);
  if (rem * 2 >= bn) {
    mant += 1;
    if (mant == hi) {
      mant = lo;
      ++exp10;
    }
  }

  std::string digits = mant.str();
  std::string out;
  if (neg) out += '-';
  out += digits[0];
  out += '.';
  out += digits.substr(1);
  char buf[16];
  std::snprintf(buf, sizeof buf, "e%+03ld", exp10);
  return out + buf;
}

}  // namespace oweno
