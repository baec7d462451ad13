#include "weldkit/integer.hpp"

#include <functional>
#include <limits>
#include <stdexcept>

namespace weldkit {

namespace {

const BigInt kMin = std::numeric_limits<std::int64_t>::min();
const BigInt kMax = std::numeric_limits<std::int64_t>::max();

}  // namespace

Integer::Integer(const BigInt& v) {
  big_ = std::make_unique<BigInt>(v);
  normalize();
}

Integer::Integer(const Integer& other) : small_(other.small_) {
  if (other.big_) big_ = std::make_unique<BigInt>(*other.big_);
}

Integer& Integer::operator=(const Integer& other) {
  if (this == &other) return *this;
  small_ = other.small_;
  if (other.big_) {
    big_ = std::make_unique<BigInt>(*other.big_);
  } else {
    big_.reset();
  }
  return *this;
}

BigInt Integer::to_big() const { return big_ ? *big_ : BigInt(small_); }

int Integer::sign() const {
  if (big_) return big_->sign();
  return (small_ > 0) - (small_ < 0);
}

void Integer::normalize() {
  if (big_ && *big_ >= kMin && *big_ <= kMax) {
    small_ = static_cast<std::int64_t>(*big_);
    big_.reset();
  }
}

Integer& Integer::operator+=(const Integer& rhs) {
  if (!big_ && !rhs.big_) {
    std::int64_t out;
    if (!__builtin_add_overflow(small_, rhs.small_, &out)) {
      small_ = out;
      return *this;
    }
  }
  big_ = std::make_unique<BigInt>(to_big() + rhs.to_big());
  normalize();
  return *this;
}

Integer& Integer::operator-=(const Integer& rhs) {
  if (!big_ && !rhs.big_) {
    std::int64_t out;
    if (!__builtin_sub_overflow(small_, rhs.small_, &out)) {
      small_ = out;
      return *this;
    }
  }
  big_ = std::make_unique<BigInt>(to_big() - rhs.to_big());
  normalize();
  return *this;
}

Integer& Integer::operator*=(const Integer& rhs) {
  if (!big_ && !rhs.big_) {
    std::int64_t out;
    if (!__builtin_mul_overflow(small_, rhs.small_, &out)) {
      small_ = out;
      return *this;
    }
  }
  big_ = std::make_unique<BigInt>(to_big() * rhs.to_big());
  normalize();
  return *this;
}

void Integer::add_product(const Integer& a, const Integer& b) {
  if (!big_ && !a.big_ && !b.big_) {
    std::int64_t prod;
    std::int64_t out;
    if (!__builtin_mul_overflow(a.small_, b.small_, &prod) &&
        !__builtin_add_overflow(small_, prod, &out)) {
      small_ = out;
      return;
    }
  }
  big_ = std::make_unique<BigInt>(to_big() + a.to_big() * b.to_big());
  normalize();
}

Integer Integer::operator-() const {
  if (!big_ && small_ != std::numeric_limits<std::int64_t>::min()) return Integer(-small_);
  return Integer(BigInt(-to_big()));
}

bool operator==(const Integer& a, const Integer& b) {
  // Both sides are normalized, so a big value never equals a small one.
  if (!a.big_ && !b.big_) return a.small_ == b.small_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;
}

bool operator<(const Integer& a, const Integer& b) {
  if (!a.big_ && !b.big_) return a.small_ < b.small_;
  return a.to_big() < b.to_big();
}

std::string Integer::to_string() const {
  if (!big_) return std::to_string(small_);
  return big_->str();
}

Integer Integer::from_string(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty integer literal");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw std::invalid_argument("bad integer literal: " + text);
  for (std::size_t i = start; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') throw std::invalid_argument("bad integer literal: " + text);
  }
  return Integer(BigInt(text));
}

std::size_t Integer::hash() const {
  if (!big_) return std::hash<std::int64_t>{}(small_);
  return std::hash<std::string>{}(big_->str());
}

Integer gcd(const Integer& a, const Integer& b) {
  if (a.is_small() && b.is_small()) {
    // |INT64_MIN| does not fit; fall through to BigInt in that case.
    std::int64_t x = a.small_value();
    std::int64_t y = b.small_value();
    if (x != std::numeric_limits<std::int64_t>::min() && y != std::numeric_limits<std::int64_t>::min()) {
      x = x < 0 ? -x : x;
      y = y < 0 ? -y : y;
      while (y != 0) {
        std::int64_t t = x % y;
        x = y;
        y = t;
      }
      return Integer(x);
    }
  }
  return Integer(BigInt(boost::multiprecision::gcd(a.to_big(), b.to_big())));
}

Integer floor_mod(const Integer& a, const Integer& modulus) {
  if (modulus.sign() <= 0) throw std::invalid_argument("floor_mod: modulus must be positive");
  if (a.is_small() && modulus.is_small()) {
    std::int64_t r = a.small_value() % modulus.small_value();
    if (r < 0) r += modulus.small_value();
    return Integer(r);
  }
  BigInt r = a.to_big() % modulus.to_big();
  if (r < 0) r += modulus.to_big();
  return Integer(r);
}

}  // namespace weldkit
