#pragma once

// Exact integer and rational helpers shared by every module.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace champ_ppc {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt pow2(unsigned k) {
  BigInt r = 1;
  r <<= k;
  return r;
}

inline BigInt ipow(const BigInt& base, unsigned exp) {
  return boost::multiprecision::pow(base, exp);
}

// Binomial coefficient with the zero convention: any out-of-range argument
// (n < 0, k < 0, k > n) yields 0.
inline BigInt binomial(long long n, long long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  if (n <= 66) {
    unsigned __int128 r = 1;
    for (long long i = 0; i < k; ++i) {
      r = r * static_cast<unsigned __int128>(n - i) / static_cast<unsigned __int128>(i + 1);
    }
    return BigInt(static_cast<std::uint64_t>(r));
  }
  BigInt r = 1;
  for (long long i = 0; i < k; ++i) {
    r *= (n - i);
    r /= (i + 1);
  }
  return r;
}

// floor(sqrt(x)) for x >= 0.
inline BigInt isqrt(const BigInt& x) {
  if (x < 0) throw std::domain_error("isqrt: negative argument");
  return boost::multiprecision::sqrt(x);
}

// floor of the k-th root of x >= 0.
inline BigInt iroot_floor(const BigInt& x, unsigned k) {
  if (k == 0) throw std::domain_error("iroot: zeroth root");
  if (x < 0) throw std::domain_error("iroot: negative argument");
  if (k == 1 || x < 2) return x;
  if (k == 2) return isqrt(x);
  const auto bits = boost::multiprecision::msb(x) + 1;
  BigInt lo = 0;
  BigInt hi = pow2(static_cast<unsigned>(bits / k + 1));
  // invariant: lo^k <= x < hi^k
  while (hi - lo > 1) {
    BigInt mid = (lo + hi) >> 1;
    if (ipow(mid, k) <= x) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

inline BigInt iroot_ceil(const BigInt& x, unsigned k) {
  BigInt r = iroot_floor(x, k);
  if (ipow(r, k) != x) ++r;
  return r;
}

// Nonnegative rational num/den kept in lowest terms.
struct Ratio {
  BigInt num{0};
  BigInt den{1};

  Ratio() = default;
  Ratio(BigInt n, BigInt d) : num(std::move(n)), den(std::move(d)) {
    if (den <= 0) throw std::invalid_argument("ratio: denominator must be positive");
    if (num < 0) throw std::invalid_argument("ratio: numerator must be nonnegative");
    BigInt g = boost::multiprecision::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  static Ratio integer(const BigInt& n) { return Ratio(n, 1); }

  bool is_integer() const { return den == 1; }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

  friend bool operator==(const Ratio& a, const Ratio& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator<(const Ratio& a, const Ratio& b) { return a.num * b.den < b.num * a.den; }
  friend bool operator<=(const Ratio& a, const Ratio& b) { return !(b < a); }

  std::string str() const {
    return den == 1 ? num.str() : num.str() + "/" + den.str();
  }
};

// Accepts "p/q", a plain integer, or a finite decimal such as "0.3".
inline Ratio parse_ratio(std::string_view text) {
  auto digits_only = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
      if (c < '0' || c > '9') return false;
    }
    return true;
  };
  const std::string bad = "malformed rational '" + std::string(text) + "'";
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto p = text.substr(0, slash);
    auto q = text.substr(slash + 1);
    if (!digits_only(p) || !digits_only(q)) throw std::invalid_argument(bad);
    const BigInt den{std::string(q)};
    if (den == 0) throw std::invalid_argument(bad + ": zero denominator");
    return Ratio(BigInt(std::string(p)), den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    auto ip = text.substr(0, dot);
    auto fp = text.substr(dot + 1);
    if (ip.empty()) ip = "0";
    if (!digits_only(ip) || !digits_only(fp)) throw std::invalid_argument(bad);
    BigInt scale = ipow(BigInt(10), static_cast<unsigned>(fp.size()));
    return Ratio(BigInt(std::string(ip)) * scale + BigInt(std::string(fp)), scale);
  }
  if (!digits_only(text)) throw std::invalid_argument(bad);
  return Ratio(BigInt(std::string(text)), 1);
}

// Decimal rendering of num/den >= 0, truncated to `places` fractional digits.
inline std::string to_decimal(const BigInt& num, const BigInt& den, unsigned places = 12) {
  if (den <= 0 || num < 0) throw std::domain_error("to_decimal: expects num >= 0, den > 0");
  BigInt ip = num / den;
  std::string out = ip.str();
  if (places == 0) return out;
  BigInt rem = num % den;
  BigInt frac = rem * ipow(BigInt(10), places) / den;
  std::string fs = frac.str();
  out += '.';
  out.append(places - fs.size(), '0');
  out += fs;
  return out;
}

inline std::string to_decimal(const Ratio& r, unsigned places = 12) {
  return to_decimal(r.num, r.den, places);
}

}  // namespace champ_ppc
