#ifndef LATSLICE_NUMERIC_HPP
#define LATSLICE_NUMERIC_HPP

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace latslice {

using BigInt = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

using RationalVector = std::vector<Rational>;
using IntVector = std::vector<std::int64_t>;
using BigIntVector = std::vector<BigInt>;

// Base class for every error raised by the library. The CLI maps these to
// exit code 1 (input errors).
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

class DegenerateBody : public Error {
public:
  using Error::Error;
};

class UnboundedBody : public Error {
public:
  using Error::Error;
};

class AsymmetricBody : public Error {
public:
  using Error::Error;
};

class Unsupported : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

inline Rational make_rational(const BigInt& num, const BigInt& den) {
  return Rational(num, den);
}

inline BigInt numerator(const Rational& q) {
  return boost::multiprecision::numerator(q);
}

inline BigInt denominator(const Rational& q) {
  return boost::multiprecision::denominator(q);
}

/// Largest integer not exceeding q.
inline BigInt floor(const Rational& q) {
  BigInt n = numerator(q);
  BigInt d = denominator(q);
  BigInt r = n / d;  // truncates toward zero
  if (n < 0 && r * d != n) {
    r -= 1;
  }
  return r;
}

/// Smallest integer not below q.
inline BigInt ceil(const Rational& q) {
  return -floor(-q);
}

inline Rational abs(const Rational& q) {
  return q < 0 ? Rational(-q) : q;
}

inline BigInt abs(const BigInt& z) {
  return z < 0 ? BigInt(-z) : z;
}

inline BigInt gcd(const BigInt& a, const BigInt& b) {
  return boost::multiprecision::gcd(a, b);
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) {
    return 0;
  }
  return abs(a / gcd(a, b) * b);
}

inline BigInt pow(const BigInt& base, unsigned exp) {
  return boost::multiprecision::pow(base, exp);
}

inline Rational pow(const Rational& base, unsigned exp) {
  Rational result = 1;
  Rational b = base;
  while (exp > 0) {
    if (exp & 1U) {
      result *= b;
    }
    b *= b;
    exp >>= 1U;
  }
  return result;
}

inline BigInt factorial(unsigned n) {
  BigInt f = 1;
  for (unsigned i = 2; i <= n; ++i) {
    f *= i;
  }
  return f;
}

inline bool fits_int64(const BigInt& z) {
  return z >= std::numeric_limits<std::int64_t>::min() &&
         z <= std::numeric_limits<std::int64_t>::max();
}

inline std::int64_t to_int64(const BigInt& z) {
  if (!fits_int64(z)) {
    throw Unsupported("integer does not fit in 64 bits: " + z.str());
  }
  return z.convert_to<std::int64_t>();
}

inline double to_double(const Rational& q) {
  return q.convert_to<double>();
}

/// Parses "p" or "p/q" (optional sign, decimal digits only).
inline Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
      s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
      s.remove_suffix(1);
    }
    return s;
  };
  auto parse_int = [&](std::string_view s) -> BigInt {
    s = trim(s);
    std::string_view digits = s;
    if (!digits.empty() && (digits.front() == '-' || digits.front() == '+')) {
      digits.remove_prefix(1);
    }
    if (digits.empty()) {
      throw ParseError("malformed rational: '" + std::string(text) + "'");
    }
    for (char c : digits) {
      if (c < '0' || c > '9') {
        throw ParseError("malformed rational: '" + std::string(text) + "'");
      }
    }
    std::string owned(s);
    if (owned.front() == '+') {
      owned.erase(0, 1);
    }
    return BigInt(owned);
  };
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return Rational(parse_int(text));
  }
  BigInt num = parse_int(text.substr(0, slash));
  BigInt den = parse_int(text.substr(slash + 1));
  if (den == 0) {
    throw ParseError("zero denominator: '" + std::string(text) + "'");
  }
  return Rational(num, den);
}

/// "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rational& q) {
  if (denominator(q) == 1) {
    return numerator(q).str();
  }
  return numerator(q).str() + "/" + denominator(q).str();
}

inline std::string to_string(const BigInt& z) {
  return z.str();
}

inline RationalVector to_rational(const IntVector& v) {
  RationalVector out;
  out.reserve(v.size());
  for (auto x : v) {
    out.emplace_back(x);
  }
  return out;
}

inline Rational dot(const RationalVector& a, const RationalVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += a[i] * b[i];
  }
  return s;
}

inline Rational dot(const RationalVector& a, const IntVector& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b[i] != 0) {
      s += a[i] * b[i];
    }
  }
  return s;
}

inline std::int64_t dot(const IntVector& a, const IntVector& b) {
  __int128 s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += static_cast<__int128>(a[i]) * b[i];
  }
  if (s > std::numeric_limits<std::int64_t>::max() ||
      s < std::numeric_limits<std::int64_t>::min()) {
    throw Unsupported("64-bit overflow in integer dot product");
  }
  return static_cast<std::int64_t>(s);
}

inline bool is_zero(const IntVector& v) {
  for (auto x : v) {
    if (x != 0) {
      return false;
    }
  }
  return true;
}

inline bool is_zero(const RationalVector& v) {
  for (const auto& x : v) {
    if (x != 0) {
      return false;
    }
  }
  return true;
}

inline std::int64_t gcd_of(const IntVector& v) {
  std::int64_t g = 0;
  for (auto x : v) {
    std::int64_t a = x < 0 ? -x : x;
    while (a != 0) {
      std::int64_t t = g % a;
      g = a;
      a = t;
    }
  }
  return g;
}

/// Divides out the content and flips the sign so the first nonzero entry is
/// positive. Zero vectors are returned unchanged.
inline IntVector primitive_canonical(IntVector v) {
  std::int64_t g = gcd_of(v);
  if (g == 0) {
    return v;
  }
  for (auto& x : v) {
    x /= g;
  }
  for (auto x : v) {
    if (x != 0) {
      if (x < 0) {
        for (auto& y : v) {
          y = -y;
        }
      }
      break;
    }
  }
  return v;
}

inline bool is_primitive(const IntVector& v) {
  return gcd_of(v) == 1;
}

inline std::string to_string(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) {
      s += ",";
    }
    s += std::to_string(v[i]);
  }
  return s + ")";
}

}  // namespace latslice

#endif  // LATSLICE_NUMERIC_HPP
