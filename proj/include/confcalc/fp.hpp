#ifndef CONFCALC_FP_HPP
#define CONFCALC_FP_HPP

#include <cstdint>
#include <string>

#include "confcalc/error.hpp"

namespace confcalc {

/// A prime field F_p, 2 <= p < 2^31.  Elements are residues in [0, p).
class FieldSpec {
 public:
  explicit FieldSpec(std::uint32_t p) : p_(p) {
    if (!is_prime(p)) fail(Errc::NotPrime, "modulus " + std::to_string(p));
  }

  std::uint32_t modulus() const { return p_; }

  std::uint32_t reduce(long long x) const {
    long long r = x % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return static_cast<std::uint32_t>(r);
  }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }

  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const {
    return a >= b ? a - b : a + p_ - b;
  }

  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(a) * b) % p_);
  }

  /// Multiplicative inverse by extended Euclid; a must be nonzero.
  std::uint32_t inv(std::uint32_t a) const {
    long long t = 0, new_t = 1;
    long long r = p_, new_r = a % p_;
    while (new_r != 0) {
      long long q = r / new_r;
      long long tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    if (t < 0) t += p_;
    return static_cast<std::uint32_t>(t);
  }

  bool operator==(const FieldSpec& o) const { return p_ == o.p_; }
  bool operator!=(const FieldSpec& o) const { return p_ != o.p_; }

  static bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
      if (n % d == 0) return false;
    return true;
  }

 private:
  std::uint32_t p_;
};

}  // namespace confcalc

#endif  // CONFCALC_FP_HPP
