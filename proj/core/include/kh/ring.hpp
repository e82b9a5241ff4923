#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace kh {

// Error raised for malformed or inconsistent input data.
class input_error : public std::runtime_error {
public:
  explicit input_error(const std::string& what) : std::runtime_error(what) {}
};

class overflow_error : public std::runtime_error {
public:
  overflow_error() : std::runtime_error("integer overflow in exact arithmetic") {}
};

// checked 64-bit integer helpers; all exact arithmetic in the artifact goes
// through these (hard failure instead of silent wraparound)
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw overflow_error();
  return r;
}
inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw overflow_error();
  return r;
}
inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw overflow_error();
  return r;
}
inline std::int64_t checked_neg(std::int64_t a) { return checked_sub(0, a); }

enum class RingKind { integers, rationals, prime_field };

struct RingSpec {
  RingKind kind = RingKind::integers;
  int p = 0;  // characteristic, prime_field only

  static RingSpec integers() { return {RingKind::integers, 0}; }
  static RingSpec rationals() { return {RingKind::rationals, 0}; }
  static RingSpec gf(int p);
  // "z" | "q" | "f<p>"
  static RingSpec parse(const std::string& s);
  std::string to_string() const;
  bool operator==(const RingSpec&) const = default;
};

// ring elements -------------------------------------------------------------

struct Int {
  std::int64_t v = 0;
  Int() = default;
  explicit Int(std::int64_t x) : v(x) {}
  bool operator==(const Int&) const = default;
};

struct Rat {
  std::int64_t num = 0, den = 1;  // normalized: den > 0, gcd = 1
  Rat() = default;
  Rat(std::int64_t n, std::int64_t d);
  explicit Rat(std::int64_t n) : num(n), den(1) {}
  bool operator==(const Rat&) const = default;
};

struct Fp {
  std::uint32_t v = 0;  // 0 <= v < p; modulus carried by the Ring context
  Fp() = default;
  explicit Fp(std::uint32_t x) : v(x) {}
  bool operator==(const Fp&) const = default;
};

// ring contexts -------------------------------------------------------------

template <class R>
struct Ring;

template <>
struct Ring<Int> {
  using elem = Int;
  RingSpec spec() const { return RingSpec::integers(); }
  Int zero() const { return Int(0); }
  Int one() const { return Int(1); }
  Int from_int(std::int64_t n) const { return Int(n); }
  bool is_zero(Int a) const { return a.v == 0; }
  bool is_unit(Int a) const { return a.v == 1 || a.v == -1; }
  Int add(Int a, Int b) const { return Int(checked_add(a.v, b.v)); }
  Int sub(Int a, Int b) const { return Int(checked_sub(a.v, b.v)); }
  Int mul(Int a, Int b) const { return Int(checked_mul(a.v, b.v)); }
  Int neg(Int a) const { return Int(checked_neg(a.v)); }
  Int inv_unit(Int a) const { return a; }  // pre: is_unit
  // nearest-integer division (pivot growth control in SNF)
  Int quot_nearest(Int a, Int b) const {
    std::int64_t q = a.v / b.v, r = a.v % b.v;
    if (r != 0 && (std::abs(r) * 2 > std::abs(b.v) ||
                   (std::abs(r) * 2 == std::abs(b.v) && q < 0)))
      q += ((a.v < 0) == (b.v < 0)) ? 1 : -1;
    return Int(q);
  }
  bool divides(Int a, Int b) const { return a.v != 0 && b.v % a.v == 0; }
  Int exact_div(Int a, Int b) const { return Int(a.v / b.v); }
  std::string to_string(Int a) const { return std::to_string(a.v); }
  // canonical associate: positive
  Int canonical(Int a) const { return Int(a.v < 0 ? checked_neg(a.v) : a.v); }
};

template <>
struct Ring<Rat> {
  using elem = Rat;
  RingSpec spec() const { return RingSpec::rationals(); }
  Rat zero() const { return Rat(0); }
  Rat one() const { return Rat(1); }
  Rat from_int(std::int64_t n) const { return Rat(n); }
  bool is_zero(Rat a) const { return a.num == 0; }
  bool is_unit(Rat a) const { return a.num != 0; }
  Rat add(Rat a, Rat b) const {
    return Rat(checked_add(checked_mul(a.num, b.den), checked_mul(b.num, a.den)),
               checked_mul(a.den, b.den));
  }
  Rat sub(Rat a, Rat b) const { return add(a, neg(b)); }
  Rat mul(Rat a, Rat b) const {
    return Rat(checked_mul(a.num, b.num), checked_mul(a.den, b.den));
  }
  Rat neg(Rat a) const { return Rat(checked_neg(a.num), a.den); }
  Rat inv_unit(Rat a) const { return Rat(a.den, a.num); }
  Rat quot_nearest(Rat a, Rat b) const { return mul(a, inv_unit(b)); }
  bool divides(Rat a, Rat b) const { (void)b; return a.num != 0; }
  Rat exact_div(Rat a, Rat b) const { return mul(a, inv_unit(b)); }
  std::string to_string(Rat a) const {
    return a.den == 1 ? std::to_string(a.num)
                      : std::to_string(a.num) + "/" + std::to_string(a.den);
  }
  Rat canonical(Rat a) const { return is_zero(a) ? a : one(); }
};

template <>
struct Ring<Fp> {
  using elem = Fp;
  std::uint32_t p = 2;
  Ring() = default;
  explicit Ring(std::uint32_t prime) : p(prime) {}
  RingSpec spec() const { return RingSpec::gf(static_cast<int>(p)); }
  Fp zero() const { return Fp(0); }
  Fp one() const { return Fp(p > 1 ? 1u : 0u); }
  Fp from_int(std::int64_t n) const {
    std::int64_t m = n % static_cast<std::int64_t>(p);
    if (m < 0) m += p;
    return Fp(static_cast<std::uint32_t>(m));
  }
  bool is_zero(Fp a) const { return a.v == 0; }
  bool is_unit(Fp a) const { return a.v != 0; }
  Fp add(Fp a, Fp b) const { return Fp((a.v + b.v) % p); }
  Fp sub(Fp a, Fp b) const { return Fp((a.v + p - b.v) % p); }
  Fp mul(Fp a, Fp b) const {
    return Fp(static_cast<std::uint32_t>(
        (static_cast<std::uint64_t>(a.v) * b.v) % p));
  }
  Fp neg(Fp a) const { return Fp(a.v == 0 ? 0 : p - a.v); }
  Fp inv_unit(Fp a) const {
    // extended Euclid
    std::int64_t t = 0, nt = 1, r = p, nr = a.v;
    while (nr != 0) {
      std::int64_t q = r / nr;
      t -= q * nt; std::swap(t, nt);
      r -= q * nr; std::swap(r, nr);
    }
    if (t < 0) t += p;
    return Fp(static_cast<std::uint32_t>(t));
  }
  Fp quot_nearest(Fp a, Fp b) const { return mul(a, inv_unit(b)); }
  bool divides(Fp a, Fp b) const { (void)b; return a.v != 0; }
  Fp exact_div(Fp a, Fp b) const { return mul(a, inv_unit(b)); }
  std::string to_string(Fp a) const { return std::to_string(a.v); }
  Fp canonical(Fp a) const { return is_zero(a) ? a : one(); }
};

bool is_prime(int p);

}  // namespace kh
