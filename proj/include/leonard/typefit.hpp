#ifndef LEONARD_TYPEFIT_HPP
#define LEONARD_TYPEFIT_HPP

// Closed forms of parameter arrays with d >= 3.
//
// Let beta be the common PA5 ratio and q a root of q^2 + (1 - beta) q + 1.
//
//   I      q != 1, q != -1
//   II     q = 1, characteristic not 2
//   III+   q = -1, characteristic not 2, d even
//   III-   q = -1, characteristic not 2, d odd
//   IV     q = 1, characteristic 2 (then d = 3)
//
// Each type writes theta, theta*, varphi, phi through a handful of scalars
// (TypeData). fit() recovers them, generate() evaluates them, and
// predict_case() reads the affine-isomorphism case straight off them.
//
// When q is not in the field of the array, the scalars of a type I array
// live in a quadratic extension while the array itself stays in the base
// field.

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "leonard/classify.hpp"
#include "leonard/error.hpp"
#include "leonard/field.hpp"
#include "leonard/parray.hpp"

namespace leonard {

enum class TypeKind { I, II, IIIplus, IIIminus, IV };

inline std::string type_name(TypeKind k) {
  switch (k) {
    case TypeKind::I: return "I";
    case TypeKind::II: return "II";
    case TypeKind::IIIplus: return "III+";
    case TypeKind::IIIminus: return "III-";
    default: return "IV";
  }
}

inline TypeKind parse_type(std::string_view s) {
  if (s == "I") return TypeKind::I;
  if (s == "II") return TypeKind::II;
  if (s == "III+" || s == "IIIplus") return TypeKind::IIIplus;
  if (s == "III-" || s == "IIIminus") return TypeKind::IIIminus;
  if (s == "IV") return TypeKind::IV;
  throw ParseError("unknown type '" + std::string(s) + "'");
}

struct TypeTag {
  TypeKind kind;
  Scalar q;      // 1 for II and IV, -1 for III+/III-; possibly in an extension for I
  Scalar q_inv;  // the other root
};

/// Scalars of one closed form. Which members are meaningful depends on
/// `kind`; the others are zero. Type IV keeps theta_0 and theta*_0 in
/// `eta`/`eta_star` and r in `tau`.
struct TypeData {
  TypeKind kind = TypeKind::II;
  int d = 3;
  Scalar q;  // type I only
  Scalar eta, mu, h, eta_star, mu_star, h_star, tau;
  Scalar s, s_star;  // types III+, III-, IV

  Field field() const { return eta.field(); }

  /// Named scalars in print order.
  std::vector<std::pair<std::string, Scalar>> entries() const {
    switch (kind) {
      case TypeKind::I:
        return {{"q", q},         {"eta", eta},         {"mu", mu},           {"h", h},
                {"eta*", eta_star}, {"mu*", mu_star},   {"h*", h_star},       {"tau", tau}};
      case TypeKind::II:
        return {{"eta", eta},         {"mu", mu},           {"h", h},        {"eta*", eta_star},
                {"mu*", mu_star},     {"h*", h_star},       {"tau", tau}};
      case TypeKind::IIIplus:
      case TypeKind::IIIminus:
        return {{"eta", eta}, {"h", h}, {"s", s}, {"eta*", eta_star}, {"h*", h_star}, {"s*", s_star}, {"tau", tau}};
      default:
        return {{"theta0", eta}, {"h", h}, {"s", s}, {"theta0*", eta_star}, {"h*", h_star}, {"s*", s_star}, {"r", tau}};
    }
  }

  std::string to_string() const {
    std::string out = "type " + type_name(kind) + " d=" + std::to_string(d) + " field=" + field().name() + "\n";
    for (const auto& [k, v] : entries()) out += k + " = " + v.to_string() + "\n";
    return out;
  }

  friend bool operator==(const TypeData& a, const TypeData& b) {
    if (a.kind != b.kind || a.d != b.d || a.field() != b.field()) return false;
    auto ea = a.entries();
    auto eb = b.entries();
    for (std::size_t k = 0; k < ea.size(); ++k)
      if (ea[k].second != eb[k].second) return false;
    return true;
  }
  friend bool operator!=(const TypeData& a, const TypeData& b) { return !(a == b); }
};

namespace detail {

inline TypeData blank_typedata(TypeKind kind, int d, const Field& f) {
  TypeData td;
  td.kind = kind;
  td.d = d;
  Scalar z = f.zero();
  td.q = kind == TypeKind::I ? z : (kind == TypeKind::IIIplus || kind == TypeKind::IIIminus ? -f.one() : f.one());
  td.eta = td.mu = td.h = td.eta_star = td.mu_star = td.h_star = td.tau = td.s = td.s_star = z;
  return td;
}

// num/den as an element of f.
inline Scalar frac(const Field& f, long long num, long long den) { return f.from_int(num) / f.from_int(den); }

inline Scalar theta_entry(const TypeData& td, int i, bool starred) {
  const Field f = td.field();
  const int d = td.d;
  const Scalar& eta = starred ? td.eta_star : td.eta;
  const Scalar& mu = starred ? td.mu_star : td.mu;
  const Scalar& h = starred ? td.h_star : td.h;
  const Scalar& s = starred ? td.s_star : td.s;
  switch (td.kind) {
    case TypeKind::I: return eta + mu * td.q.pow(i) + h * td.q.pow(d - i);
    case TypeKind::II: return eta + mu * frac(f, 2 * i - d, 2) + h * f.from_int(static_cast<long long>(i) * (d - i));
    case TypeKind::IIIplus:
    case TypeKind::IIIminus: {
      Scalar lin = s + h * frac(f, 2 * i - d, 2);
      return i % 2 == 0 ? eta + lin : eta - lin;
    }
    default: {
      switch (i) {
        case 0: return eta;
        case 1: return eta + h * (s + 1);
        case 2: return eta + h;
        default: return eta + h * s;
      }
    }
  }
}

// varphi_i (second = false) or phi_i (second = true).
inline Scalar split_entry(const TypeData& td, int i, bool second) {
  const Field f = td.field();
  const int d = td.d;
  const Scalar& mu = td.mu;
  const Scalar& h = td.h;
  const Scalar& mus = td.mu_star;
  const Scalar& hs = td.h_star;
  const Scalar& s = td.s;
  const Scalar& ss = td.s_star;
  const Scalar& tau = td.tau;
  auto n = [&](long long x) { return f.from_int(x); };
  switch (td.kind) {
    case TypeKind::I: {
      const Scalar& q = td.q;
      Scalar pre = (q.pow(i) - 1) * (q.pow(d - i + 1) - 1);
      if (!second) return pre * (tau - mu * mus * q.pow(i - 1) - h * hs * q.pow(d - i));
      return pre * (tau - h * mus * q.pow(i - 1) - mu * hs * q.pow(d - i));
    }
    case TypeKind::II: {
      Scalar pre = n(static_cast<long long>(i) * (d - i + 1));
      Scalar mid = frac(f, 2 * i - d - 1, 2);
      Scalar tail = h * hs * n(static_cast<long long>(i - 1) * (d - i));
      if (!second) return pre * (tau - mu * mus / 2 + (h * mus + mu * hs) * mid + tail);
      return pre * (tau + mu * mus / 2 + (h * mus - mu * hs) * mid + tail);
    }
    case TypeKind::IIIplus: {
      Scalar mid = frac(f, 2 * i - d - 1, 2);
      if (i % 2 == 0) {
        if (!second) return n(i) * (tau - s * hs - ss * h - h * hs * mid);
        return n(i) * (tau - s * hs + ss * h + h * hs * mid);
      }
      if (!second) return n(d - i + 1) * (tau + s * hs + ss * h + h * hs * mid);
      return n(d - i + 1) * (tau + s * hs - ss * h - h * hs * mid);
    }
    case TypeKind::IIIminus: {
      Scalar hh = h * hs * n(static_cast<long long>(i) * (d - i + 1));
      if (i % 2 == 0) return hh;
      Scalar mid = frac(f, 2 * i - d - 1, 2);
      if (!second) return tau - 2 * s * ss + hh - 2 * (h * ss + hs * s) * mid;
      return tau + 2 * s * ss + hh - 2 * (h * ss - hs * s) * mid;
    }
    default: {
      Scalar hh = h * hs;
      const Scalar& r = tau;
      switch (i) {
        case 1: return second ? hh * (r + s * (ss + 1)) : hh * r;
        case 2: return hh;
        default: return second ? hh * (r + ss * (s + 1)) : hh * (r + s + ss);
      }
    }
  }
}

inline ParameterArray generate_raw(const TypeData& td) {
  std::vector<Scalar> th, ths, vp, ph;
  for (int i = 0; i <= td.d; ++i) {
    th.push_back(theta_entry(td, i, false));
    ths.push_back(theta_entry(td, i, true));
  }
  for (int i = 1; i <= td.d; ++i) {
    vp.push_back(split_entry(td, i, false));
    ph.push_back(split_entry(td, i, true));
  }
  return ParameterArray(td.field(), th, ths, vp, ph);
}

inline bool char_admissible(TypeKind kind, int d, std::uint64_t p) {
  switch (kind) {
    case TypeKind::I: return true;
    case TypeKind::II: return p == 0 || p > static_cast<std::uint64_t>(d);
    case TypeKind::IIIplus:
    case TypeKind::IIIminus: return p == 0 || (p != 2 && 2 * p > static_cast<std::uint64_t>(d));
    default: return p == 2 && d == 3;
  }
}

// Gaussian elimination for a square system with a unique solution.
inline std::optional<std::vector<Scalar>> solve_linear(std::vector<std::vector<Scalar>> a, std::vector<Scalar> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c].is_zero()) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[c]);
    std::swap(b[piv], b[c]);
    Scalar inv = a[c][c].inverse();
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c].is_zero()) continue;
      Scalar factor = a[r][c] * inv;
      for (std::size_t k = c; k < n; ++k) a[r][k] -= factor * a[c][k];
      b[r] -= factor * b[c];
    }
  }
  for (std::size_t c = 0; c < n; ++c) b[c] /= a[c][c];
  return b;
}

}  // namespace detail

/// The first non-degeneracy constraint `td` violates, if any. This covers
/// the constraints stated for each closed form and the characteristic
/// restrictions; it does not check that the generated array is valid.
inline std::optional<std::string> check_constraints(const TypeData& td) {
  const Field f = td.field();
  const int d = td.d;
  if (d < 3) return "d >= 3";
  std::uint64_t p = f.characteristic();
  if (!detail::char_admissible(td.kind, d, p))
    return "characteristic " + std::to_string(p) + " is excluded for type " + type_name(td.kind);
  switch (td.kind) {
    case TypeKind::I: {
      if (td.q.is_zero()) return "q != 0";
      if (td.q == 1 || td.q == -1) return "q != 1 and q != -1";
      for (int i = 1; i <= d; ++i)
        if (td.q.pow(i) == 1) return "q^" + std::to_string(i) + " != 1";
      for (int i = 0; i <= d - 1; ++i) {
        if (td.mu == td.h * td.q.pow(i)) return "mu != h q^" + std::to_string(i);
        if (td.mu_star == td.h_star * td.q.pow(i)) return "mu* != h* q^" + std::to_string(i);
      }
      return std::nullopt;
    }
    case TypeKind::II:
      for (int i = 0; i <= d - 1; ++i) {
        if (td.mu == -i * td.h) return "mu != -" + std::to_string(i) + " h";
        if (td.mu_star == -i * td.h_star) return "mu* != -" + std::to_string(i) + " h*";
      }
      return std::nullopt;
    case TypeKind::IIIplus:
    case TypeKind::IIIminus: {
      if (td.h.is_zero()) return "h != 0";
      if (td.h_star.is_zero()) return "h* != 0";
      bool minus = td.kind == TypeKind::IIIminus;
      if (minus && td.s.is_zero()) return "s != 0";
      if (minus && td.s_star.is_zero()) return "s* != 0";
      for (int i = minus ? 0 : 1; i <= d - 1; i += 2) {
        if (td.s == td.h * detail::frac(f, i, 2)) return "s != " + std::to_string(i) + " h/2";
        if (td.s_star == td.h_star * detail::frac(f, i, 2)) return "s* != " + std::to_string(i) + " h*/2";
      }
      return std::nullopt;
    }
    default:
      if (td.h.is_zero() || td.h_star.is_zero()) return "h, h* != 0";
      if (td.s.is_zero() || td.s_star.is_zero()) return "s, s* != 0";
      if (td.s == 1 || td.s_star == 1) return "s, s* != 1";
      return std::nullopt;
  }
}

/// Evaluates the closed form. Throws DegenerateData when a constraint is
/// violated or the result fails PA1-PA5. If the scalars live in an extension
/// and every entry lies in the base field, the array is returned over the
/// base field.
inline ParameterArray generate(const TypeData& td) {
  if (auto bad = check_constraints(td)) throw DegenerateData("type " + type_name(td.kind) + ": " + *bad);
  ParameterArray pa = detail::generate_raw(td);
  ValidationReport rep = validate(pa);
  if (!rep.ok()) {
    std::string why = rep.to_string();
    throw DegenerateData("type " + type_name(td.kind) + " data gives an invalid array:\n" + why);
  }
  if (auto down = pa.descend()) return *down;
  return pa;
}

/// Type I data for 1/q describing the same array:
/// mu' = h q^d, h' = mu q^d (and starred), tau' = tau q^(d+1).
inline TypeData invert_q(const TypeData& td) {
  if (td.kind != TypeKind::I) return td;
  TypeData r = td;
  Scalar qd = td.q.pow(td.d);
  r.q = td.q.inverse();
  r.mu = td.h * qd;
  r.h = td.mu * qd;
  r.mu_star = td.h_star * qd;
  r.h_star = td.mu_star * qd;
  r.tau = td.tau * qd * td.q;
  return r;
}

inline TypeTag detect_type(const ParameterArray& pa) {
  if (pa.d() < 3) throw DiameterTooSmall("type detection needs d >= 3, got d=" + std::to_string(pa.d()));
  Scalar beta = *beta_common_value(pa);
  const Field& f = pa.field();
  Scalar one = f.one();
  if (beta == 3) {
    TypeKind k = f.characteristic() == 2 ? TypeKind::IV : TypeKind::II;
    return {k, one, one};
  }
  if (beta == -1) {
    // q = -1 and characteristic 2 would make q = 1, handled above.
    return {pa.d() % 2 == 0 ? TypeKind::IIIplus : TypeKind::IIIminus, -one, -one};
  }
  QuadraticRoots qr = solve_quadratic(one - beta, one);
  if (!qr.roots.empty()) {
    Scalar q = qr.roots.front();
    return {TypeKind::I, q, q.inverse()};
  }
  Field ext = f.extension_for(*qr.extension_discriminant);
  Scalar root = *square_root(ext.embed(*qr.extension_discriminant));
  Scalar b = ext.embed(beta - 1);
  Scalar q = (b + root) / 2;
  return {TypeKind::I, q, q.inverse()};
}

/// Recovers the closed-form scalars. For type I, `q_hint` selects the root
/// (and, if it lies in an extension, the field of the result); otherwise the
/// root from detect_type is used.
inline TypeData fit(const ParameterArray& input, const std::optional<Scalar>& q_hint = std::nullopt) {
  TypeTag tag = detect_type(input);
  const int d = input.d();
  Scalar q = tag.q;
  if (tag.kind == TypeKind::I && q_hint) q = *q_hint;
  ParameterArray pa = q.field() == input.field() ? input : input.embed(q.field());
  if (tag.kind == TypeKind::I && q_hint) {
    Scalar b = 1 - *beta_common_value(pa);
    if (!(q * q + b * q + 1).is_zero()) throw FitInconsistent("q hint " + q.to_string() + " is not a root");
  }
  const Field f = pa.field();
  TypeData td = detail::blank_typedata(tag.kind, d, f);
  if (tag.kind == TypeKind::I) td.q = q;

  if (tag.kind == TypeKind::IV) {
    for (bool st : {false, true}) {
      const auto& t = st ? pa.theta_stars() : pa.thetas();
      Scalar hh = t[2] - t[0];
      Scalar ss = (t[3] - t[0]) / hh;
      (st ? td.eta_star : td.eta) = t[0];
      (st ? td.h_star : td.h) = hh;
      (st ? td.s_star : td.s) = ss;
    }
    td.tau = pa.varphi(1) / (td.h * td.h_star);
  } else {
    // theta_i = eta + c1(i) x + c2(i) y over rows 0, 1, 2.
    auto basis = [&](int i) -> std::pair<Scalar, Scalar> {
      switch (tag.kind) {
        case TypeKind::I: return {q.pow(i), q.pow(d - i)};
        case TypeKind::II: return {detail::frac(f, 2 * i - d, 2), f.from_int(static_cast<long long>(i) * (d - i))};
        default: {
          Scalar sg = i % 2 == 0 ? f.one() : -f.one();
          return {sg, sg * detail::frac(f, 2 * i - d, 2)};
        }
      }
    };
    for (bool st : {false, true}) {
      std::vector<std::vector<Scalar>> a;
      std::vector<Scalar> rhs;
      for (int i = 0; i < 3; ++i) {
        auto [c1, c2] = basis(i);
        a.push_back({f.one(), c1, c2});
        rhs.push_back(st ? pa.theta_star(i) : pa.theta(i));
      }
      auto sol = detail::solve_linear(a, rhs);
      if (!sol) throw FitInconsistent("singular system for the eigenvalue scalars");
      (st ? td.eta_star : td.eta) = (*sol)[0];
      if (tag.kind == TypeKind::I || tag.kind == TypeKind::II) {
        (st ? td.mu_star : td.mu) = (*sol)[1];
        (st ? td.h_star : td.h) = (*sol)[2];
      } else {
        (st ? td.s_star : td.s) = (*sol)[1];
        (st ? td.h_star : td.h) = (*sol)[2];
      }
    }
    // varphi_1 is affine in tau.
    TypeData at0 = td;
    at0.tau = f.zero();
    TypeData at1 = td;
    at1.tau = f.one();
    Scalar g0 = detail::split_entry(at0, 1, false);
    Scalar g1 = detail::split_entry(at1, 1, false);
    if (g1 == g0) throw FitInconsistent("varphi_1 does not depend on tau");
    td.tau = (pa.varphi(1) - g0) / (g1 - g0);
  }

  if (detail::generate_raw(td) != pa)
    throw FitInconsistent("type " + type_name(tag.kind) + " closed form does not reproduce the array");
  if (auto bad = check_constraints(td)) throw FitInconsistent("fitted data violates " + *bad);
  return td;
}

/// The affine-isomorphism case read off the scalars, by the per-type
/// clause tables. Throws StructuralError when the clauses do not single out
/// one case.
inline CaseTag predict_case(const TypeData& td) {
  std::vector<CaseTag> hits;
  auto check = [&](bool cond, CaseTag c) {
    if (cond) hits.push_back(c);
  };
  auto at_least_two = [](bool a, bool b, bool c) { return (a ? 1 : 0) + (b ? 1 : 0) + (c ? 1 : 0) >= 2; };
  const Scalar& mu = td.mu;
  const Scalar& h = td.h;
  const Scalar& mus = td.mu_star;
  const Scalar& hs = td.h_star;
  const Scalar& s = td.s;
  const Scalar& ss = td.s_star;
  bool t0 = td.tau.is_zero();
  switch (td.kind) {
    case TypeKind::I: {
      bool a = mu == -h;
      bool b = mus == -hs;
      bool prod = mu * mus == h * hs;
      bool cross = mu * hs == mus * h;
      check(a && b && t0, CaseTag::I);
      check(a && b && !t0, CaseTag::II);
      check(prod && !cross, CaseTag::III);
      check(!prod && cross, CaseTag::IV);
      check(a && !b && t0, CaseTag::V);
      check(!a && b && t0, CaseTag::VI);
      check(!prod && !cross && at_least_two(!a, !b, !t0), CaseTag::VII);
      break;
    }
    case TypeKind::II:
    case TypeKind::IIIplus: {
      bool plus = td.kind == TypeKind::IIIplus;
      // II uses (h, h*, mu h*, mu* h); III+ uses (s, s*, h s*, h* s).
      bool z = plus ? s.is_zero() : h.is_zero();
      bool zs = plus ? ss.is_zero() : hs.is_zero();
      Scalar x = plus ? h * ss : mu * hs;
      Scalar y = plus ? hs * s : mus * h;
      check(z && zs && t0, CaseTag::I);
      check(z && zs && !t0, CaseTag::II);
      check(x != y && x == -y, CaseTag::III);
      check(x == y && x != -y, CaseTag::IV);
      check(z && !zs && t0, CaseTag::V);
      check(!z && zs && t0, CaseTag::VI);
      check(x != y && x != -y && at_least_two(!z, !zs, !t0), CaseTag::VII);
      break;
    }
    case TypeKind::IIIminus: {
      Scalar x = h * ss;
      Scalar y = hs * s;
      check(x == -y, CaseTag::III);
      check(x == y, CaseTag::IV);
      check(x != y && x != -y, CaseTag::VII);
      break;
    }
    default:
      check(s == ss, CaseTag::II);
      check(s != ss, CaseTag::VII);
  }
  if (hits.size() != 1)
    throw StructuralError("type " + type_name(td.kind) + " clauses select " + std::to_string(hits.size()) +
                          " cases");
  return hits.front();
}

/// The same data over the base field, if every scalar lies there.
inline std::optional<TypeData> descend(const TypeData& td) {
  if (!td.field().is_extension()) return td;
  TypeData r = td;
  for (Scalar* x : {&r.q, &r.eta, &r.mu, &r.h, &r.eta_star, &r.mu_star, &r.h_star, &r.tau, &r.s, &r.s_star}) {
    auto b = x->descend();
    if (!b) return std::nullopt;
    *x = *b;
  }
  return r;
}

namespace detail {

inline std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

// Small rationals for Q; uniform elements otherwise.
inline Scalar random_element(const Field& f, std::mt19937_64& rng, bool nonzero) {
  for (;;) {
    Scalar x;
    if (f.kind() == FieldKind::Rationals) {
      long long num = static_cast<long long>(below(rng, 19)) - 9;
      long long den = static_cast<long long>(below(rng, 3)) + 1;
      x = f.from_int(num) / f.from_int(den);
    } else if (f.is_extension() && f.base().kind() == FieldKind::Rationals) {
      x = f.embed(random_element(f.base(), rng, false)) +
          f.embed(random_element(f.base(), rng, false)) * f.parse_element("sqrt(" + f.discriminant().to_string() + ")");
    } else {
      x = f.element(below(rng, f.order()));
    }
    if (!nonzero || !x.is_zero()) return x;
  }
}

inline Scalar random_q(const Field& f, int d, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Scalar q = random_element(f, rng, true);
    bool ok = true;
    for (int i = 1; i <= d && ok; ++i) ok = q.pow(i) != 1;
    if (ok) return q;
  }
  throw InadmissibleField(f.name() + " has no q of multiplicative order above " + std::to_string(d));
}

// Random scalars, with a relation pattern chosen so that every case of the
// classification is reachable.
inline TypeData sample_typedata(TypeKind kind, int d, const Field& f, std::mt19937_64& rng) {
  TypeData td = blank_typedata(kind, d, f);
  auto any = [&] { return random_element(f, rng, false); };
  auto nz = [&] { return random_element(f, rng, true); };
  td.eta = any();
  td.eta_star = any();
  int pattern = static_cast<int>(below(rng, 7));
  switch (kind) {
    case TypeKind::I: {
      td.q = random_q(f, d, rng);
      td.mu = nz();
      td.h = nz();
      td.mu_star = nz();
      td.h_star = nz();
      td.tau = nz();
      if (pattern == 0 || pattern == 1 || pattern == 4) td.mu = -td.h;
      if (pattern == 0 || pattern == 1 || pattern == 5) td.mu_star = -td.h_star;
      if (pattern == 0 || pattern == 4 || pattern == 5) td.tau = f.zero();
      if (pattern == 2) td.mu_star = td.h * td.h_star / td.mu;
      if (pattern == 3) td.h_star = td.mu_star * td.h / td.mu;
      break;
    }
    case TypeKind::II:
    case TypeKind::IIIplus: {
      bool plus = kind == TypeKind::IIIplus;
      td.mu = nz();
      td.mu_star = nz();
      td.h = plus ? nz() : any();
      td.h_star = plus ? nz() : any();
      td.s = plus ? any() : f.zero();
      td.s_star = plus ? any() : f.zero();
      td.tau = nz();
      if (plus) td.mu = td.mu_star = f.zero();
      Scalar& z = plus ? td.s : td.h;
      Scalar& zs = plus ? td.s_star : td.h_star;
      if (pattern == 0 || pattern == 1 || pattern == 4) z = f.zero();
      if (pattern == 0 || pattern == 1 || pattern == 5) zs = f.zero();
      if (pattern == 0 || pattern == 4 || pattern == 5) td.tau = f.zero();
      if (pattern == 2 || pattern == 3) {
        if (plus) {
          td.s = nz();
          td.s_star = td.h_star * td.s / td.h;
        } else {
          td.h = nz();
          td.h_star = td.mu_star * td.h / td.mu;
        }
        if (pattern == 2) zs = -zs;
      }
      break;
    }
    case TypeKind::IIIminus: {
      td.h = nz();
      td.h_star = nz();
      td.s = nz();
      td.s_star = nz();
      td.tau = any();
      if (pattern <= 1) td.s_star = td.h_star * td.s / td.h;
      if (pattern == 0) td.s_star = -td.s_star;
      break;
    }
    default: {
      td.h = nz();
      td.h_star = nz();
      td.s = nz();
      td.s_star = pattern <= 2 ? td.s : nz();
      td.tau = nz();
    }
  }
  return td;
}

}  // namespace detail

/// Deterministic admissible data for the given type. Rejection-samples
/// until the constraints hold and the generated array is valid.
inline TypeData random_typedata(TypeKind kind, int d, const Field& f, std::uint64_t seed) {
  if (d < 3) throw DiameterTooSmall("closed forms need d >= 3");
  if (kind == TypeKind::IV && d != 3) throw InadmissibleField("type IV requires d = 3");
  if (!detail::char_admissible(kind, d, f.characteristic()))
    throw InadmissibleField("characteristic " + std::to_string(f.characteristic()) + " is excluded for type " +
                            type_name(kind) + " with d=" + std::to_string(d));
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    TypeData td = detail::sample_typedata(kind, d, f, rng);
    if (check_constraints(td)) continue;
    if (!validate(detail::generate_raw(td)).ok()) continue;
    return td;
  }
  throw InadmissibleField("no admissible type " + type_name(kind) + " data found over " + f.name());
}

/// Type I data with q in a quadratic extension of `base` (Q or GF(p), p odd)
/// whose array lies in `base`. q has norm 1, so its conjugate is 1/q, and
/// the remaining scalars are chosen Galois-compatibly:
/// h = conj(mu) q^-d, h* = conj(mu*) q^-d, tau q^-(d+1) = conj(tau).
inline TypeData random_conjugate_typedata(int d, const Field& base, std::uint64_t seed) {
  if (d < 3) throw DiameterTooSmall("closed forms need d >= 3");
  if (base.is_extension() || base.characteristic() == 2)
    throw InadmissibleField("conjugate type I data needs Q or GF(p) with p odd");
  std::mt19937_64 rng(seed);
  // Fixed discriminant per base field so that every sample shares one extension.
  static constexpr std::array<int, 5> rational_discs = {2, 3, 5, 6, 7};
  Scalar nonsquare = base.from_int(rational_discs[seed % rational_discs.size()]);
  if (base.kind() != FieldKind::Rationals) {
    nonsquare = base.from_int(2);
    while (square_root(nonsquare)) nonsquare = nonsquare + 1;
  }
  Field ext = base.extension_for(nonsquare);
  Scalar D = ext.discriminant();
  Scalar w = ext.parse_element("sqrt(" + D.to_string() + ")");
  for (int attempt = 0; attempt < 10000; ++attempt) {
    Scalar t = detail::random_element(base, rng, true);
    Scalar den = t * t - D;
    if (den.is_zero()) continue;
    Scalar q = ext.embed((t * t + D) / den) + ext.embed(2 * t / den) * w;
    TypeData td = detail::blank_typedata(TypeKind::I, d, ext);
    td.q = q;
    Scalar qmd = q.pow(-d);
    td.eta = ext.embed(detail::random_element(base, rng, false));
    td.eta_star = ext.embed(detail::random_element(base, rng, false));
    td.mu = ext.embed(detail::random_element(base, rng, false)) + ext.embed(detail::random_element(base, rng, true)) * w;
    td.mu_star =
        ext.embed(detail::random_element(base, rng, false)) + ext.embed(detail::random_element(base, rng, false)) * w;
    if (detail::below(rng, 4) == 0) td.mu_star = td.mu;
    td.h = td.mu.conjugate() * qmd;
    td.h_star = td.mu_star.conjugate() * qmd;
    Scalar qm = q.pow(-(d + 1));
    bool zero_tau = detail::below(rng, 3) == 0;
    td.tau = zero_tau ? ext.zero()
                      : ext.embed(detail::random_element(base, rng, false)) * (1 + qm) +
                            ext.embed(detail::random_element(base, rng, false)) * w * (1 - qm);
    if (check_constraints(td)) continue;
    ParameterArray pa = detail::generate_raw(td);
    if (!pa.descend() || !validate(pa).ok()) continue;
    return td;
  }
  throw InadmissibleField("no conjugate type I data found over " + base.name());
}

}  // namespace leonard

#endif  // LEONARD_TYPEFIT_HPP
