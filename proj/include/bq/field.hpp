#pragma once

// Exact scalar fields. Every algorithm in the library is parameterised on a
// field type F exposing the same small interface:
//
//   using value_type;
//   zero(), one(), from_int(i), add/sub/mul/neg/inv/div, is_zero, equal,
//   order()      -- number of elements, 0 for infinite fields
//   element(k)   -- deterministic enumeration of field elements, k >= 0
//   to_string(x), name()
//
// No floating point is used anywhere.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bq {

/// Deterministic trial-division primality test; adequate for word-sized moduli.
constexpr bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

inline constexpr std::uint32_t kDefaultPrime = 32003;

class PrimeField {
 public:
  using value_type = std::uint32_t;

  explicit PrimeField(std::uint32_t p = kDefaultPrime) : p_(p) {
    if (!is_prime(p) || p >= (1u << 31))
      throw std::invalid_argument("field characteristic must be a prime below 2^31, got " +
                                  std::to_string(p));
  }

  std::uint32_t characteristic() const { return p_; }
  std::uint64_t order() const { return p_; }

  value_type zero() const { return 0; }
  value_type one() const { return 1; }

  value_type from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<value_type>(r);
  }

  value_type add(value_type a, value_type b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p_ - b; }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>(static_cast<std::uint64_t>(a) * b % p_);
  }
  value_type inv(value_type a) const {
    if (a == 0) throw std::domain_error("division by zero in prime field");
    // Extended Euclid on signed 64-bit values.
    std::int64_t t = 0, new_t = 1, r = p_, new_r = a;
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      std::int64_t tmp = t - q * new_t;
      t = new_t;
      new_t = tmp;
      tmp = r - q * new_r;
      r = new_r;
      new_r = tmp;
    }
    return from_int(t);
  }
  value_type div(value_type a, value_type b) const { return mul(a, inv(b)); }

  bool is_zero(value_type a) const { return a == 0; }
  bool equal(value_type a, value_type b) const { return a == b; }

  /// 0, 1, 2, ..., p-1; indices wrap modulo p.
  value_type element(std::uint64_t k) const { return static_cast<value_type>(k % p_); }

  /// Centred representative, so that p-1 prints as -1.
  std::int64_t centred(value_type a) const {
    return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : static_cast<std::int64_t>(a);
  }
  std::string to_string(value_type a) const { return std::to_string(centred(a)); }
  std::string name() const { return "GF(" + std::to_string(p_) + ")"; }

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint32_t p_;
};

class RationalField {
 public:
  using value_type = boost::multiprecision::cpp_rational;

  std::uint32_t characteristic() const { return 0; }
  std::uint64_t order() const { return 0; }

  value_type zero() const { return value_type(0); }
  value_type one() const { return value_type(1); }
  value_type from_int(std::int64_t v) const { return value_type(v); }

  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type inv(const value_type& a) const {
    if (a == 0) throw std::domain_error("division by zero in rational field");
    return value_type(1) / a;
  }
  value_type div(const value_type& a, const value_type& b) const { return mul(a, inv(b)); }

  bool is_zero(const value_type& a) const { return a == 0; }
  bool equal(const value_type& a, const value_type& b) const { return a == b; }

  /// 0, 1, -1, 2, -2, ...
  value_type element(std::uint64_t k) const {
    if (k == 0) return value_type(0);
    auto m = static_cast<std::int64_t>((k + 1) / 2);
    return value_type(k % 2 == 1 ? m : -m);
  }

  std::string to_string(const value_type& a) const { return a.str(); }
  std::string name() const { return "Q"; }

  bool operator==(const RationalField&) const = default;
};

template <class F>
concept ExactField = requires(const F& f, const typename F::value_type& a, std::int64_t i,
                              std::uint64_t k) {
  { f.zero() } -> std::convertible_to<typename F::value_type>;
  { f.one() } -> std::convertible_to<typename F::value_type>;
  { f.from_int(i) } -> std::convertible_to<typename F::value_type>;
  { f.add(a, a) } -> std::convertible_to<typename F::value_type>;
  { f.sub(a, a) } -> std::convertible_to<typename F::value_type>;
  { f.mul(a, a) } -> std::convertible_to<typename F::value_type>;
  { f.neg(a) } -> std::convertible_to<typename F::value_type>;
  { f.inv(a) } -> std::convertible_to<typename F::value_type>;
  { f.is_zero(a) } -> std::same_as<bool>;
  { f.order() } -> std::convertible_to<std::uint64_t>;
  { f.element(k) } -> std::convertible_to<typename F::value_type>;
  { f.to_string(a) } -> std::convertible_to<std::string>;
};

static_assert(ExactField<PrimeField>);
static_assert(ExactField<RationalField>);

}  // namespace bq
