#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace weldkit {

using BigInt = boost::multiprecision::cpp_int;

// Exact integer with an int64 fast path. Arithmetic that would overflow
// promotes to a heap-allocated BigInt; results that fit are demoted again.
class Integer {
 public:
  Integer() = default;
  Integer(std::int64_t v) : small_(v) {}  // NOLINT(google-explicit-constructor)
  explicit Integer(const BigInt& v);

  Integer(const Integer& other);
  Integer& operator=(const Integer& other);
  Integer(Integer&&) noexcept = default;
  Integer& operator=(Integer&&) noexcept = default;

  bool is_zero() const { return !big_ && small_ == 0; }
  bool is_small() const { return !big_; }
  std::int64_t small_value() const { return small_; }
  BigInt to_big() const;
  int sign() const;

  Integer& operator+=(const Integer& rhs);
  Integer& operator-=(const Integer& rhs);
  Integer& operator*=(const Integer& rhs);
  // rhs * factor added in place; the hot loop of polynomial multiplication.
  void add_product(const Integer& a, const Integer& b);

  friend Integer operator+(Integer a, const Integer& b) { return a += b; }
  friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
  friend Integer operator*(Integer a, const Integer& b) { return a *= b; }
  Integer operator-() const;

  friend bool operator==(const Integer& a, const Integer& b);
  friend bool operator!=(const Integer& a, const Integer& b) { return !(a == b); }
  friend bool operator<(const Integer& a, const Integer& b);

  Integer abs() const { return sign() < 0 ? -*this : *this; }

  std::string to_string() const;
  static Integer from_string(const std::string& text);

  std::size_t hash() const;

 private:
  void normalize();

  std::int64_t small_ = 0;
  std::unique_ptr<BigInt> big_;
};

Integer gcd(const Integer& a, const Integer& b);
// Least non-negative residue; modulus must be positive.
Integer floor_mod(const Integer& a, const Integer& modulus);

}  // namespace weldkit
