#ifndef LEONARD_FIELD_HPP
#define LEONARD_FIELD_HPP

// Exact field arithmetic.
//
// Four kinds of field are supported:
//
//   Q                  rationals, backed by GMP (reduced fractions)
//   GF(p)              prime field, p prime and below 2^62
//   GF(2^k)            binary field, 2 <= k <= 16, polynomial basis over a
//                      fixed irreducible polynomial in the generator "a"
//   K(sqrt(D))         one quadratic extension of Q or GF(p), p odd, where D
//                      is a non-square of K
//
// Field descriptors are interned: two Field handles compare equal iff they
// describe the same field, and a Scalar carries a pointer to its field so
// that mixing fields is detected at run time (FieldMismatch).

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "leonard/error.hpp"

namespace leonard {

enum class FieldKind { Rationals, Prime, Binary, QuadExt };

class Field;
class Scalar;

namespace detail {

// One coordinate over a non-extension field. Only the member matching the
// field kind is meaningful.
struct Component {
  mpq_class q;
  std::uint64_t w = 0;
};

struct FieldData {
  FieldKind kind = FieldKind::Rationals;
  std::uint64_t modulus = 0;  // Prime: p; Binary: reduction polynomial incl. leading bit
  unsigned degree = 1;        // Binary: k
  const FieldData* base = nullptr;
  Component disc;  // QuadExt: D, the square of the adjoined generator
  std::string name;
};

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

inline std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1U) r = mul_mod(r, a, p);
    a = mul_mod(a, a, p);
    e >>= 1U;
  }
  return r;
}

// Carry-less product reduced modulo the field polynomial.
inline std::uint64_t gf2_mul(std::uint64_t a, std::uint64_t b, std::uint64_t poly, unsigned k) {
  std::uint64_t r = 0;
  while (b) {
    if (b & 1U) r ^= a;
    b >>= 1U;
    a <<= 1U;
    if (a >> k) a ^= poly;
  }
  return r;
}

inline std::uint64_t gf2_pow(std::uint64_t a, std::uint64_t e, std::uint64_t poly, unsigned k) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1U) r = gf2_mul(r, a, poly, k);
    a = gf2_mul(a, a, poly, k);
    e >>= 1U;
  }
  return r;
}

// Irreducible polynomials over GF(2) of degree 2..16 (bit i = coefficient of x^i).
inline std::uint64_t binary_polynomial(unsigned k) {
  static constexpr std::uint64_t table[] = {
      0,      0,      0x7,    0xB,    0x13,   0x25,   0x43,   0x83,   0x11B,
      0x211,  0x409,  0x805,  0x1009, 0x201B, 0x4021, 0x8003, 0x1002B,
  };
  if (k < 2 || k > 16) throw InvalidField("GF(2^k) requires 2 <= k <= 16");
  return table[k];
}

inline bool comp_is_zero(const FieldData& f, const Component& a) {
  return f.kind == FieldKind::Rationals ? sgn(a.q) == 0 : a.w == 0;
}

inline bool comp_eq(const FieldData& f, const Component& a, const Component& b) {
  return f.kind == FieldKind::Rationals ? a.q == b.q : a.w == b.w;
}

inline Component comp_add(const FieldData& f, const Component& a, const Component& b) {
  Component r;
  switch (f.kind) {
    case FieldKind::Rationals: r.q = a.q + b.q; break;
    case FieldKind::Prime: {
      std::uint64_t s = a.w + b.w;
      r.w = s >= f.modulus ? s - f.modulus : s;
      break;
    }
    default: r.w = a.w ^ b.w;
  }
  return r;
}

inline Component comp_neg(const FieldData& f, const Component& a) {
  Component r;
  switch (f.kind) {
    case FieldKind::Rationals: r.q = -a.q; break;
    case FieldKind::Prime: r.w = a.w == 0 ? 0 : f.modulus - a.w; break;
    default: r.w = a.w;
  }
  return r;
}

inline Component comp_sub(const FieldData& f, const Component& a, const Component& b) {
  return comp_add(f, a, comp_neg(f, b));
}

inline Component comp_mul(const FieldData& f, const Component& a, const Component& b) {
  Component r;
  switch (f.kind) {
    case FieldKind::Rationals: r.q = a.q * b.q; break;
    case FieldKind::Prime: r.w = mul_mod(a.w, b.w, f.modulus); break;
    default: r.w = gf2_mul(a.w, b.w, f.modulus, f.degree);
  }
  return r;
}

inline Component comp_inv(const FieldData& f, const Component& a) {
  if (comp_is_zero(f, a)) throw DivisionByZero();
  Component r;
  switch (f.kind) {
    case FieldKind::Rationals: r.q = 1 / a.q; break;
    case FieldKind::Prime: r.w = pow_mod(a.w, f.modulus - 2, f.modulus); break;
    default: r.w = gf2_pow(a.w, (std::uint64_t{1} << f.degree) - 2, f.modulus, f.degree);
  }
  return r;
}

inline Component comp_from_mpz(const FieldData& f, const mpz_class& n) {
  Component r;
  switch (f.kind) {
    case FieldKind::Rationals: r.q = n; break;
    case FieldKind::Prime: {
      mpz_class m = n % mpz_class(static_cast<unsigned long>(f.modulus));
      if (m < 0) m += static_cast<unsigned long>(f.modulus);
      r.w = m.get_ui();
      break;
    }
    default: r.w = mpz_odd_p(n.get_mpz_t()) ? 1 : 0;
  }
  return r;
}

inline Component comp_from_mpq(const FieldData& f, const mpq_class& x) {
  if (f.kind == FieldKind::Rationals) {
    Component r;
    r.q = x;
    return r;
  }
  Component den = comp_from_mpz(f, x.get_den());
  if (comp_is_zero(f, den)) throw DivisionByZero();
  return comp_mul(f, comp_from_mpz(f, x.get_num()), comp_inv(f, den));
}

inline std::string binary_to_string(std::uint64_t w) {
  if (w == 0) return "0";
  std::string out;
  for (int i = 63; i >= 0; --i) {
    if (!((w >> i) & 1U)) continue;
    if (!out.empty()) out += '+';
    if (i == 0) {
      out += '1';
    } else {
      out += 'a';
      if (i > 1) out += '^' + std::to_string(i);
    }
  }
  return out;
}

inline std::string comp_to_string(const FieldData& f, const Component& a) {
  switch (f.kind) {
    case FieldKind::Rationals: return a.q.get_str();
    case FieldKind::Prime: return std::to_string(a.w);
    default: return binary_to_string(a.w);
  }
}

inline bool is_decimal(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

// Parses "[+-]digits[/digits]" into a rational; position of the failure is
// reported relative to the start of `text`.
inline mpq_class parse_rational(std::string_view text) {
  std::string_view s = text;
  std::size_t offset = 0;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
    offset = 1;
  }
  auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  if (!is_decimal(num)) throw ParseError("malformed number '" + std::string(text) + "'", 0, offset + 1);
  mpq_class r;
  if (slash == std::string_view::npos) {
    r = mpz_class(std::string(num));
  } else {
    std::string_view den = s.substr(slash + 1);
    if (!is_decimal(den))
      throw ParseError("malformed fraction '" + std::string(text) + "'", 0, offset + slash + 2);
    mpz_class d{std::string(den)};
    if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'", 0, offset + slash + 2);
    r = mpq_class(mpz_class(std::string(num)), d);
    r.canonicalize();
  }
  return negative ? mpq_class(-r) : r;
}

// "a^2+a+1", "1", "0", or a plain integer (taken mod 2).
inline std::uint64_t parse_binary(const FieldData& f, std::string_view text) {
  if (text.empty()) throw ParseError("empty field element", 0, 1);
  std::uint64_t w = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t plus = text.find('+', pos);
    std::string_view term = text.substr(pos, plus == std::string_view::npos ? std::string_view::npos : plus - pos);
    if (term.empty()) throw ParseError("empty term in '" + std::string(text) + "'", 0, pos + 1);
    unsigned exponent = 0;
    if (term[0] == 'a') {
      exponent = 1;
      if (term.size() > 1) {
        if (term[1] != '^' || !is_decimal(term.substr(2)))
          throw ParseError("malformed term '" + std::string(term) + "'", 0, pos + 2);
        exponent = static_cast<unsigned>(std::stoul(std::string(term.substr(2))));
      }
      if (exponent >= f.degree) throw ParseError("exponent not reduced in '" + std::string(term) + "'", 0, pos + 1);
      w ^= std::uint64_t{1} << exponent;
    } else if (is_decimal(term)) {
      w ^= (term.back() - '0') & 1U;
    } else {
      throw ParseError("malformed term '" + std::string(term) + "'", 0, pos + 1);
    }
    if (plus == std::string_view::npos) break;
    pos = plus + 1;
  }
  return w;
}

inline Component comp_parse(const FieldData& f, std::string_view text) {
  if (f.kind == FieldKind::Binary) {
    Component r;
    r.w = parse_binary(f, text);
    return r;
  }
  return comp_from_mpq(f, parse_rational(text));
}

inline std::optional<mpz_class> exact_sqrt(const mpz_class& n) {
  if (n < 0 || !mpz_perfect_square_p(n.get_mpz_t())) return std::nullopt;
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

// Tonelli-Shanks; p odd prime.
inline std::optional<std::uint64_t> sqrt_mod(std::uint64_t a, std::uint64_t p) {
  if (a == 0 || p == 2) return a;
  if (pow_mod(a, (p - 1) / 2, p) != 1) return std::nullopt;
  std::uint64_t q = p - 1;
  unsigned s = 0;
  while ((q & 1U) == 0) {
    q >>= 1U;
    ++s;
  }
  std::uint64_t z = 2;
  while (pow_mod(z, (p - 1) / 2, p) != p - 1) ++z;
  std::uint64_t m = s;
  std::uint64_t c = pow_mod(z, q, p);
  std::uint64_t t = pow_mod(a, q, p);
  std::uint64_t r = pow_mod(a, (q + 1) / 2, p);
  while (t != 1) {
    std::uint64_t i = 0;
    std::uint64_t t2 = t;
    while (t2 != 1) {
      t2 = mul_mod(t2, t2, p);
      ++i;
    }
    std::uint64_t b = c;
    for (std::uint64_t j = 0; j + i + 1 < m; ++j) b = mul_mod(b, b, p);
    m = i;
    c = mul_mod(b, b, p);
    t = mul_mod(t, c, p);
    r = mul_mod(r, b, p);
  }
  return std::min(r, p - r);
}

inline std::optional<Component> comp_sqrt(const FieldData& f, const Component& a) {
  Component r;
  switch (f.kind) {
    case FieldKind::Rationals: {
      auto n = exact_sqrt(a.q.get_num());
      auto d = exact_sqrt(a.q.get_den());
      if (!n || !d) return std::nullopt;
      r.q = mpq_class(*n, *d);
      return r;
    }
    case FieldKind::Prime: {
      auto s = sqrt_mod(a.w, f.modulus);
      if (!s) return std::nullopt;
      r.w = *s;
      return r;
    }
    default:
      // Frobenius is bijective: sqrt(x) = x^(2^(k-1)).
      r.w = gf2_pow(a.w, std::uint64_t{1} << (f.degree - 1), f.modulus, f.degree);
      return r;
  }
}

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  mpz_class n(static_cast<unsigned long>(p));
  return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

inline const FieldData* intern(FieldData proto) {
  static std::mutex mutex;
  static std::map<std::string, std::unique_ptr<FieldData>> table;
  std::lock_guard lock(mutex);
  auto it = table.find(proto.name);
  if (it != table.end()) return it->second.get();
  auto owned = std::make_unique<FieldData>(std::move(proto));
  const FieldData* raw = owned.get();
  table.emplace(raw->name, std::move(owned));
  return raw;
}

inline const FieldData* rationals_data() {
  static const FieldData* data = [] {
    FieldData f;
    f.kind = FieldKind::Rationals;
    f.name = "Q";
    return intern(std::move(f));
  }();
  return data;
}

}  // namespace detail

/// Handle to an interned field descriptor. Cheap to copy; equality is
/// identity of the described field.
class Field {
 public:
  Field() : d_(detail::rationals_data()) {}

  static Field rationals() { return Field(detail::rationals_data()); }

  static Field prime(std::uint64_t p) {
    if (p >= (std::uint64_t{1} << 62)) throw InvalidField("GF(p) modulus must be below 2^62");
    if (!detail::is_prime(p)) throw InvalidField("GF(" + std::to_string(p) + "): modulus is not prime");
    detail::FieldData f;
    f.kind = FieldKind::Prime;
    f.modulus = p;
    f.name = "GF(" + std::to_string(p) + ")";
    return Field(detail::intern(std::move(f)));
  }

  static Field binary(unsigned k) {
    if (k == 1) return prime(2);
    detail::FieldData f;
    f.kind = FieldKind::Binary;
    f.modulus = detail::binary_polynomial(k);
    f.degree = k;
    f.name = "GF(2^" + std::to_string(k) + ")";
    return Field(detail::intern(std::move(f)));
  }

  static Field quad_ext(const Field& base, const Scalar& disc);
  static Field parse(std::string_view text);

  FieldKind kind() const { return d_->kind; }
  const std::string& name() const { return d_->name; }

  std::uint64_t characteristic() const {
    switch (d_->kind) {
      case FieldKind::Rationals: return 0;
      case FieldKind::Prime: return d_->modulus;
      case FieldKind::Binary: return 2;
      default: return base().characteristic();
    }
  }

  bool is_finite() const { return characteristic() != 0; }

  /// Number of elements; 0 for Q. Throws when it does not fit in 64 bits.
  std::uint64_t order() const {
    switch (d_->kind) {
      case FieldKind::Rationals: return 0;
      case FieldKind::Prime: return d_->modulus;
      case FieldKind::Binary: return std::uint64_t{1} << d_->degree;
      default: {
        std::uint64_t p = base().order();
        if (p >= (std::uint64_t{1} << 32)) throw InvalidField(name() + ": order does not fit in 64 bits");
        return p * p;
      }
    }
  }

  bool is_extension() const { return d_->kind == FieldKind::QuadExt; }

  /// The field this one extends; a non-extension field is its own base.
  Field base() const { return is_extension() ? Field(d_->base) : *this; }
  Scalar discriminant() const;

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long long n) const;
  Scalar from_rational(const mpq_class& x) const;
  Scalar parse_element(std::string_view text) const;

  /// The index-th element of a finite field in a fixed enumeration order.
  Scalar element(std::uint64_t index) const;

  /// Image of a base-field element in this extension (identity on this field).
  Scalar embed(const Scalar& x) const;

  /// A quadratic extension of this field in which `disc` (a non-square of
  /// this field) has a square root. Q uses a square-reduced integer, GF(p)
  /// its least quadratic non-residue, so the result is canonical for the
  /// field and independent of which non-square was asked for.
  Field extension_for(const Scalar& disc) const;

  friend bool operator==(const Field& a, const Field& b) { return a.d_ == b.d_; }
  friend bool operator!=(const Field& a, const Field& b) { return a.d_ != b.d_; }

 private:
  explicit Field(const detail::FieldData* d) : d_(d) {}

  const detail::FieldData* d_;

  friend class Scalar;
};

/// Immutable exact field element.
class Scalar {
 public:
  Scalar() : f_(detail::rationals_data()) {}

  Field field() const { return Field(f_); }

  bool is_zero() const {
    if (f_->kind != FieldKind::QuadExt) return detail::comp_is_zero(*f_, re_);
    return detail::comp_is_zero(*f_->base, re_) && detail::comp_is_zero(*f_->base, im_);
  }

  bool is_one() const { return *this == field().one(); }

  Scalar operator-() const {
    if (f_->kind != FieldKind::QuadExt) return Scalar(f_, detail::comp_neg(*f_, re_));
    return Scalar(f_, detail::comp_neg(*f_->base, re_), detail::comp_neg(*f_->base, im_));
  }

  friend Scalar operator+(const Scalar& a, const Scalar& b) {
    const detail::FieldData& f = check(a, b);
    if (f.kind != FieldKind::QuadExt) return Scalar(&f, detail::comp_add(f, a.re_, b.re_));
    return Scalar(&f, detail::comp_add(*f.base, a.re_, b.re_), detail::comp_add(*f.base, a.im_, b.im_));
  }

  friend Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    const detail::FieldData& f = check(a, b);
    if (f.kind != FieldKind::QuadExt) return Scalar(&f, detail::comp_mul(f, a.re_, b.re_));
    const detail::FieldData& k = *f.base;
    using detail::comp_add;
    using detail::comp_mul;
    // (x + y w)(u + v w) = xu + yv D + (xv + yu) w
    detail::Component re = comp_add(k, comp_mul(k, a.re_, b.re_), comp_mul(k, comp_mul(k, a.im_, b.im_), f.disc));
    detail::Component im = comp_add(k, comp_mul(k, a.re_, b.im_), comp_mul(k, a.im_, b.re_));
    return Scalar(&f, std::move(re), std::move(im));
  }

  friend Scalar operator/(const Scalar& a, const Scalar& b) {
    check(a, b);
    return a * b.inverse();
  }

  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  Scalar& operator/=(const Scalar& b) { return *this = *this / b; }

  friend Scalar operator+(const Scalar& a, long long n) { return a + a.field().from_int(n); }
  friend Scalar operator+(long long n, const Scalar& a) { return a.field().from_int(n) + a; }
  friend Scalar operator-(const Scalar& a, long long n) { return a - a.field().from_int(n); }
  friend Scalar operator-(long long n, const Scalar& a) { return a.field().from_int(n) - a; }
  friend Scalar operator*(const Scalar& a, long long n) { return a * a.field().from_int(n); }
  friend Scalar operator*(long long n, const Scalar& a) { return a.field().from_int(n) * a; }
  friend Scalar operator/(const Scalar& a, long long n) { return a / a.field().from_int(n); }
  friend Scalar operator/(long long n, const Scalar& a) { return a.field().from_int(n) / a; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    const detail::FieldData& f = check(a, b);
    if (f.kind != FieldKind::QuadExt) return detail::comp_eq(f, a.re_, b.re_);
    return detail::comp_eq(*f.base, a.re_, b.re_) && detail::comp_eq(*f.base, a.im_, b.im_);
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  friend bool operator==(const Scalar& a, long long n) { return a == a.field().from_int(n); }
  friend bool operator!=(const Scalar& a, long long n) { return !(a == n); }

  Scalar inverse() const {
    if (f_->kind != FieldKind::QuadExt) return Scalar(f_, detail::comp_inv(*f_, re_));
    const detail::FieldData& k = *f_->base;
    using detail::comp_mul;
    // 1 / (x + y w) = (x - y w) / (x^2 - D y^2)
    detail::Component norm =
        detail::comp_sub(k, comp_mul(k, re_, re_), comp_mul(k, comp_mul(k, im_, im_), f_->disc));
    detail::Component inv = detail::comp_inv(k, norm);
    return Scalar(f_, comp_mul(k, re_, inv), detail::comp_neg(k, comp_mul(k, im_, inv)));
  }

  Scalar pow(long long e) const {
    Scalar base = e < 0 ? inverse() : *this;
    unsigned long long n = e < 0 ? 0ULL - static_cast<unsigned long long>(e) : static_cast<unsigned long long>(e);
    Scalar r = field().one();
    while (n) {
      if (n & 1U) r *= base;
      base *= base;
      n >>= 1U;
    }
    return r;
  }

  /// Canonical text: "a/b", residue, "a^2+1", or "x+y*sqrt(D)".
  std::string to_string() const {
    if (f_->kind != FieldKind::QuadExt) return detail::comp_to_string(*f_, re_);
    const detail::FieldData& k = *f_->base;
    if (detail::comp_is_zero(k, im_)) return detail::comp_to_string(k, re_);
    std::string root = "sqrt(" + detail::comp_to_string(k, f_->disc) + ")";
    std::string coeff;
    bool negative = k.kind == FieldKind::Rationals && sgn(im_.q) < 0;
    detail::Component mag = negative ? detail::comp_neg(k, im_) : im_;
    std::string m = detail::comp_to_string(k, mag);
    coeff = (m == "1" ? root : m + "*" + root);
    if (detail::comp_is_zero(k, re_)) return (negative ? "-" : "") + coeff;
    return detail::comp_to_string(k, re_) + (negative ? "-" : "+") + coeff;
  }

  bool in_base_field() const {
    return f_->kind != FieldKind::QuadExt || detail::comp_is_zero(*f_->base, im_);
  }

  /// x for x + y*sqrt(D), as an element of the base field.
  Scalar base_part() const {
    if (f_->kind != FieldKind::QuadExt) return *this;
    return Scalar(f_->base, re_);
  }

  /// y for x + y*sqrt(D), as an element of the base field.
  Scalar irrational_part() const {
    if (f_->kind != FieldKind::QuadExt) return field().zero();
    return Scalar(f_->base, im_);
  }

  std::optional<Scalar> descend() const {
    if (!in_base_field()) return std::nullopt;
    return base_part();
  }

  /// Galois conjugate x - y*sqrt(D); identity outside extensions.
  Scalar conjugate() const {
    if (f_->kind != FieldKind::QuadExt) return *this;
    return Scalar(f_, re_, detail::comp_neg(*f_->base, im_));
  }

  const mpq_class& rational() const {
    if (f_->kind != FieldKind::Rationals) throw FieldMismatch("not a rational: " + to_string());
    return re_.q;
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& x) { return os << x.to_string(); }

 private:
  Scalar(const detail::FieldData* f, detail::Component re, detail::Component im = {})
      : f_(f), re_(std::move(re)), im_(std::move(im)) {}

  static const detail::FieldData& check(const Scalar& a, const Scalar& b) {
    if (a.f_ != b.f_) throw FieldMismatch("field mismatch: " + a.f_->name + " vs " + b.f_->name);
    return *a.f_;
  }

  const detail::FieldData* f_;
  detail::Component re_;
  detail::Component im_;

  friend class Field;
  friend std::optional<Scalar> square_root(const Scalar& x);
};

inline Scalar Field::zero() const { return from_int(0); }
inline Scalar Field::one() const { return from_int(1); }

inline Scalar Field::from_int(long long n) const {
  const detail::FieldData& k = is_extension() ? *d_->base : *d_;
  return Scalar(d_, detail::comp_from_mpz(k, mpz_class(std::to_string(n))));
}

inline Scalar Field::from_rational(const mpq_class& x) const {
  const detail::FieldData& k = is_extension() ? *d_->base : *d_;
  if (k.kind == FieldKind::Binary && x.get_den() != 1)
    throw FieldMismatch("fraction in characteristic 2 binary field");
  return Scalar(d_, detail::comp_from_mpq(k, x));
}

inline Scalar Field::discriminant() const {
  if (!is_extension()) throw FieldMismatch(name() + " is not a quadratic extension");
  return Scalar(d_->base, d_->disc);
}

inline Scalar Field::embed(const Scalar& x) const {
  if (x.f_ == d_) return x;
  if (is_extension() && x.f_ == d_->base) return Scalar(d_, x.re_);
  throw FieldMismatch("cannot embed " + x.f_->name + " into " + name());
}

inline Scalar Field::element(std::uint64_t index) const {
  switch (d_->kind) {
    case FieldKind::Rationals: throw FieldMismatch("Q has no finite enumeration");
    case FieldKind::Prime: {
      detail::Component c;
      c.w = index % d_->modulus;
      return Scalar(d_, c);
    }
    case FieldKind::Binary: {
      detail::Component c;
      c.w = index & ((std::uint64_t{1} << d_->degree) - 1);
      return Scalar(d_, c);
    }
    default: {
      Field k = base();
      std::uint64_t p = k.order();
      Scalar x = embed(k.element(index % p));
      Scalar y = embed(k.element((index / p) % p));
      Scalar w(d_, detail::Component{}, k.one().re_);
      return x + y * w;
    }
  }
}

inline Scalar Field::parse_element(std::string_view text) const {
  if (!is_extension()) return Scalar(d_, detail::comp_parse(*d_, text));
  const detail::FieldData& k = *d_->base;
  auto pos = text.find("sqrt(");
  if (pos == std::string_view::npos) return Scalar(d_, detail::comp_parse(k, text));
  auto close = text.find(')', pos);
  if (close == std::string_view::npos) throw ParseError("unterminated sqrt(", 0, pos + 1);
  if (close + 1 != text.size()) throw ParseError("trailing characters after sqrt(...)", 0, close + 2);
  detail::Component d = detail::comp_parse(k, text.substr(pos + 5, close - pos - 5));
  if (!detail::comp_eq(k, d, d_->disc))
    throw ParseError("sqrt argument does not match the field discriminant of " + name(), 0, pos + 6);
  std::string_view prefix = text.substr(0, pos);
  if (!prefix.empty() && prefix.back() == '*') {
    prefix.remove_suffix(1);
    if (prefix.empty() || prefix.back() == '+' || prefix.back() == '-')
      throw ParseError("missing coefficient before '*'", 0, pos);
  }
  std::size_t split = std::string_view::npos;
  for (std::size_t i = prefix.size(); i-- > 1;) {
    if (prefix[i] == '+' || prefix[i] == '-') {
      split = i;
      break;
    }
  }
  std::string_view re_text = split == std::string_view::npos ? std::string_view{} : prefix.substr(0, split);
  std::string_view im_text = split == std::string_view::npos ? prefix : prefix.substr(split);
  detail::Component re;
  if (!re_text.empty()) re = detail::comp_parse(k, re_text);
  else re = detail::comp_from_mpz(k, 0);
  detail::Component im;
  if (im_text.empty() || im_text == "+") {
    im = detail::comp_from_mpz(k, 1);
  } else if (im_text == "-") {
    im = detail::comp_from_mpz(k, -1);
  } else {
    if (im_text.front() == '+') im_text.remove_prefix(1);
    im = detail::comp_parse(k, im_text);
  }
  return Scalar(d_, std::move(re), std::move(im));
}

inline std::optional<Scalar> square_root(const Scalar& x) {
  const detail::FieldData& f = *x.f_;
  if (f.kind != FieldKind::QuadExt) {
    auto r = detail::comp_sqrt(f, x.re_);
    if (!r) return std::nullopt;
    return Scalar(&f, std::move(*r));
  }
  // sqrt(a + b w) = u + v w with u^2 + D v^2 = a and 2uv = b.
  const detail::FieldData& k = *f.base;
  Field ext = x.field();
  Scalar a = x.base_part();
  Scalar b = x.irrational_part();
  Scalar w(&f, detail::Component{}, detail::comp_from_mpz(k, 1));
  if (b.is_zero()) {
    if (auto r = square_root(a)) return ext.embed(*r);
    if (auto r = square_root(a / ext.discriminant())) return ext.embed(*r) * w;
    return std::nullopt;
  }
  auto n = square_root(a * a - ext.discriminant() * b * b);
  if (!n) return std::nullopt;
  for (const Scalar& cand : {(a + *n) / 2, (a - *n) / 2}) {
    auto u = square_root(cand);
    if (!u || u->is_zero()) continue;
    Scalar v = b / (2 * *u);
    Scalar r = ext.embed(*u) + ext.embed(v) * w;
    if (r * r == x) return r;
  }
  return std::nullopt;
}

inline Field Field::quad_ext(const Field& base, const Scalar& disc) {
  if (base.is_extension()) throw InvalidField("towers of quadratic extensions are not supported");
  if (base.characteristic() == 2) throw InvalidField("sqrt extensions need characteristic other than 2");
  if (disc.field() != base) throw FieldMismatch("discriminant is not in " + base.name());
  if (square_root(disc)) throw InvalidField(disc.to_string() + " is a square in " + base.name());
  detail::FieldData f;
  f.kind = FieldKind::QuadExt;
  f.base = base.d_;
  f.disc = disc.re_;
  f.name = base.name() + "(sqrt(" + disc.to_string() + "))";
  return Field(detail::intern(std::move(f)));
}

inline Field Field::extension_for(const Scalar& disc) const {
  if (disc.field() != *this) throw FieldMismatch("discriminant is not in " + name());
  if (is_extension() || characteristic() == 2)
    throw ExtensionRequired("no quadratic extension of " + name() + " is available for " + disc.to_string());
  if (square_root(disc)) throw InvalidField(disc.to_string() + " is already a square in " + name());
  if (kind() == FieldKind::Prime) {
    std::uint64_t p = d_->modulus;
    std::uint64_t z = 2;
    while (detail::pow_mod(z, (p - 1) / 2, p) != p - 1) ++z;
    return quad_ext(*this, from_int(static_cast<long long>(z)));
  }
  // D = num/den has the same square class as num*den; strip small square factors.
  mpz_class n = disc.rational().get_num() * disc.rational().get_den();
  for (unsigned long p = 2; p < 1000; ++p) {
    mpz_class sq(p * p);
    while (mpz_divisible_p(n.get_mpz_t(), sq.get_mpz_t())) n /= sq;
  }
  return quad_ext(*this, from_rational(mpq_class(n)));
}

inline Field Field::parse(std::string_view text) {
  std::string s(text);
  auto ext = s.find("(sqrt(");
  if (ext != std::string::npos) {
    if (s.size() < ext + 8 || s.substr(s.size() - 2) != "))")
      throw ParseError("malformed extension field '" + s + "'", 0, ext + 1);
    Field base = parse(s.substr(0, ext));
    Scalar d = base.parse_element(s.substr(ext + 6, s.size() - ext - 8));
    return quad_ext(base, d);
  }
  std::string lower;
  for (char c : s) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "q" || lower == "qq") return rationals();
  if (lower.rfind("gf", 0) == 0) {
    std::string body = lower.substr(2);
    if (body.size() >= 2 && body.front() == '(' && body.back() == ')') body = body.substr(1, body.size() - 2);
    auto caret = body.find('^');
    if (caret != std::string::npos) {
      if (body.substr(0, caret) != "2" || !detail::is_decimal(body.substr(caret + 1)) || body.size() > caret + 3)
        throw ParseError("only GF(2^k) prime-power fields are supported: '" + s + "'", 0, 1);
      return binary(static_cast<unsigned>(std::stoul(body.substr(caret + 1))));
    }
    if (!detail::is_decimal(body) || body.size() > 19) throw ParseError("malformed field '" + s + "'", 0, 3);
    return prime(std::stoull(body));
  }
  throw ParseError("unknown field '" + s + "'", 0, 1);
}

/// Roots of x^2 + b x + c in the field of b and c.
struct QuadraticRoots {
  std::vector<Scalar> roots;  // distinct roots in the field (0, 1 or 2)
  /// Set when there is no root in the field: the discriminant b^2 - 4c
  /// (in characteristic 2, the Artin-Schreier constant c / b^2).
  std::optional<Scalar> extension_discriminant;
};

inline QuadraticRoots solve_quadratic(const Scalar& b, const Scalar& c) {
  if (b.field() != c.field()) throw FieldMismatch("solve_quadratic: coefficients in different fields");
  Field f = b.field();
  QuadraticRoots out;
  if (f.characteristic() != 2) {
    Scalar disc = b * b - 4 * c;
    auto r = square_root(disc);
    if (!r) {
      out.extension_discriminant = disc;
      return out;
    }
    out.roots.push_back((-b + *r) / 2);
    if (!r->is_zero()) out.roots.push_back((-b - *r) / 2);
    return out;
  }
  if (b.is_zero()) {
    out.roots.push_back(*square_root(c));
    return out;
  }
  std::uint64_t n = f.order();
  for (std::uint64_t i = 0; i < n; ++i) {
    Scalar x = f.element(i);
    if ((x * x + b * x + c).is_zero()) out.roots.push_back(x);
  }
  if (out.roots.empty()) out.extension_discriminant = c / (b * b);
  return out;
}

}  // namespace leonard

#endif  // LEONARD_FIELD_HPP
