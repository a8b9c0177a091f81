#ifndef LEONARD_PARRAY_HPP
#define LEONARD_PARRAY_HPP

// Parameter arrays (theta; theta*; varphi; phi) and their validity
// conditions PA1-PA5.
//
// theta and theta* are indexed 0..d, the split sequences 1..d, exactly as
// written in the literature; the accessors take those indices directly.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "leonard/error.hpp"
#include "leonard/field.hpp"

namespace leonard {

class ParameterArray {
 public:
  /// Builds an array of diameter d = theta.size() - 1 >= 1. Throws
  /// StructuralError on length mismatch and FieldMismatch when an entry is
  /// not in `field`.
  ParameterArray(Field field, std::vector<Scalar> theta, std::vector<Scalar> theta_star,
                 std::vector<Scalar> varphi, std::vector<Scalar> phi)
      : field_(field),
        theta_(std::move(theta)),
        theta_star_(std::move(theta_star)),
        varphi_(std::move(varphi)),
        phi_(std::move(phi)) {
    if (theta_.size() < 2) throw StructuralError("diameter must be at least 1");
    std::size_t d = theta_.size() - 1;
    if (theta_star_.size() != d + 1)
      throw StructuralError("theta_star has " + std::to_string(theta_star_.size()) + " entries, expected " +
                            std::to_string(d + 1));
    if (varphi_.size() != d)
      throw StructuralError("varphi has " + std::to_string(varphi_.size()) + " entries, expected " +
                            std::to_string(d));
    if (phi_.size() != d)
      throw StructuralError("phi has " + std::to_string(phi_.size()) + " entries, expected " + std::to_string(d));
    for (const auto* seq : {&theta_, &theta_star_, &varphi_, &phi_})
      for (const Scalar& x : *seq)
        if (x.field() != field_) throw FieldMismatch("entry " + x.to_string() + " is not in " + field_.name());
  }

  int d() const { return static_cast<int>(varphi_.size()); }
  const Field& field() const { return field_; }

  const Scalar& theta(int i) const { return theta_.at(static_cast<std::size_t>(i)); }
  const Scalar& theta_star(int i) const { return theta_star_.at(static_cast<std::size_t>(i)); }
  const Scalar& varphi(int i) const { return varphi_.at(static_cast<std::size_t>(i - 1)); }
  const Scalar& phi(int i) const { return phi_.at(static_cast<std::size_t>(i - 1)); }

  const std::vector<Scalar>& thetas() const { return theta_; }
  const std::vector<Scalar>& theta_stars() const { return theta_star_; }
  const std::vector<Scalar>& varphis() const { return varphi_; }
  const std::vector<Scalar>& phis() const { return phi_; }

  /// Applies `fn` to every entry; the results must lie in `target`.
  template <class Fn>
  ParameterArray map(Field target, Fn fn) const {
    auto conv = [&](const std::vector<Scalar>& v) {
      std::vector<Scalar> out;
      out.reserve(v.size());
      for (const Scalar& x : v) out.push_back(fn(x));
      return out;
    };
    return ParameterArray(target, conv(theta_), conv(theta_star_), conv(varphi_), conv(phi_));
  }

  /// The same array viewed inside a quadratic extension of its field.
  ParameterArray embed(const Field& ext) const {
    return map(ext, [&](const Scalar& x) { return ext.embed(x); });
  }

  /// The array over the base field, if every entry lies there.
  std::optional<ParameterArray> descend() const {
    if (!field_.is_extension()) return *this;
    for (const auto* seq : {&theta_, &theta_star_, &varphi_, &phi_})
      for (const Scalar& x : *seq)
        if (!x.in_base_field()) return std::nullopt;
    return map(field_.base(), [](const Scalar& x) { return x.base_part(); });
  }

  friend bool operator==(const ParameterArray& a, const ParameterArray& b) {
    return a.field_ == b.field_ && a.theta_ == b.theta_ && a.theta_star_ == b.theta_star_ &&
           a.varphi_ == b.varphi_ && a.phi_ == b.phi_;
  }
  friend bool operator!=(const ParameterArray& a, const ParameterArray& b) { return !(a == b); }

 private:
  Field field_;
  std::vector<Scalar> theta_;
  std::vector<Scalar> theta_star_;
  std::vector<Scalar> varphi_;
  std::vector<Scalar> phi_;
};

struct ConditionVerdict {
  bool pass = true;
  std::vector<int> witness;  // first failing index (PA1, PA3-PA5) or pair (PA2)
  std::string note;          // which sequence failed, when that is ambiguous
};

struct ValidationReport {
  std::array<ConditionVerdict, 5> pa;  // pa[0] is PA1

  bool ok() const {
    for (const auto& c : pa)
      if (!c.pass) return false;
    return true;
  }

  /// One line per condition, e.g. "PA2 fail (0,3) theta".
  std::string to_string() const {
    std::string out;
    for (std::size_t k = 0; k < pa.size(); ++k) {
      out += "PA" + std::to_string(k + 1) + (pa[k].pass ? " pass" : " fail");
      if (!pa[k].pass) {
        out += " (";
        for (std::size_t j = 0; j < pa[k].witness.size(); ++j)
          out += (j ? "," : "") + std::to_string(pa[k].witness[j]);
        out += ")";
        if (!pa[k].note.empty()) out += " " + pa[k].note;
      }
      out += "\n";
    }
    return out;
  }
};

namespace detail {

// sum_{h=0}^{i-1} (t_h - t_{d-h}) / (t_0 - t_d)
inline Scalar partial_ratio_sum(const std::vector<Scalar>& t, int i) {
  int d = static_cast<int>(t.size()) - 1;
  Scalar den = t[0] - t[static_cast<std::size_t>(d)];
  Scalar num = t[0].field().zero();
  for (int h = 0; h < i; ++h) num += t[static_cast<std::size_t>(h)] - t[static_cast<std::size_t>(d - h)];
  return num / den;
}

// (t_{i-2} - t_{i+1}) / (t_{i-1} - t_i), or nullopt if the denominator vanishes.
inline std::optional<Scalar> pa5_ratio(const std::vector<Scalar>& t, int i) {
  auto at = [&](int k) -> const Scalar& { return t[static_cast<std::size_t>(k)]; };
  Scalar den = at(i - 1) - at(i);
  if (den.is_zero()) return std::nullopt;
  return (at(i - 2) - at(i + 1)) / den;
}

}  // namespace detail

inline ValidationReport validate(const ParameterArray& pa) {
  ValidationReport r;
  const int d = pa.d();
  auto fail = [&](int k, std::vector<int> w, std::string note = {}) {
    auto& c = r.pa[static_cast<std::size_t>(k)];
    if (!c.pass) return;
    c.pass = false;
    c.witness = std::move(w);
    c.note = std::move(note);
  };

  for (int i = 1; i <= d; ++i) {
    if (pa.varphi(i).is_zero()) fail(0, {i}, "varphi");
    else if (pa.phi(i).is_zero()) fail(0, {i}, "phi");
  }

  for (int i = 0; i <= d && r.pa[1].pass; ++i)
    for (int j = i + 1; j <= d; ++j) {
      if (pa.theta(i) == pa.theta(j)) {
        fail(1, {i, j}, "theta");
        break;
      }
      if (pa.theta_star(i) == pa.theta_star(j)) {
        fail(1, {i, j}, "theta_star");
        break;
      }
    }

  if (pa.theta(0) == pa.theta(d)) {
    fail(2, {1}, "theta_0 = theta_d");
    fail(3, {1}, "theta_0 = theta_d");
  } else {
    for (int i = 1; i <= d; ++i) {
      Scalar sum = detail::partial_ratio_sum(pa.thetas(), i);
      Scalar pa3 = pa.phi(1) * sum + (pa.theta_star(i) - pa.theta_star(0)) * (pa.theta(i - 1) - pa.theta(d));
      if (pa3 != pa.varphi(i)) fail(2, {i});
      Scalar pa4 =
          pa.varphi(1) * sum + (pa.theta_star(i) - pa.theta_star(0)) * (pa.theta(d - i + 1) - pa.theta(0));
      if (pa4 != pa.phi(i)) fail(3, {i});
    }
  }

  std::optional<Scalar> common;
  for (int i = 2; i <= d - 1; ++i) {
    auto a = detail::pa5_ratio(pa.thetas(), i);
    auto b = detail::pa5_ratio(pa.theta_stars(), i);
    if (!a || !b) {
      fail(4, {i}, "undefined");
      break;
    }
    if (*a != *b) {
      fail(4, {i}, "theta and theta_star ratios differ");
      break;
    }
    if (!common) common = *a;
    else if (*common != *a) {
      fail(4, {i}, "ratio depends on i");
      break;
    }
  }
  return r;
}

/// The common value of the two partial sums; requires theta_0 != theta_d.
inline Scalar vartheta(const ParameterArray& pa, int i) {
  if (i < 1 || i > pa.d()) throw StructuralError("vartheta index out of range: " + std::to_string(i));
  Scalar a = detail::partial_ratio_sum(pa.thetas(), i);
  Scalar b = detail::partial_ratio_sum(pa.theta_stars(), i);
  if (a != b)
    throw VarthetaMismatch("vartheta_" + std::to_string(i) + ": " + a.to_string() + " != " + b.to_string());
  return a;
}

struct SplitEquationViolation {
  int equation;  // 1..8
  int i;
  Scalar expected;  // right-hand side
  Scalar actual;    // left-hand side entry of the array
};

struct SplitEquationReport {
  std::vector<SplitEquationViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Evaluates the eight split-sequence identities for every 1 <= i <= d.
inline SplitEquationReport check_split_equations(const ParameterArray& pa) {
  SplitEquationReport rep;
  const int d = pa.d();
  auto t = [&](int k) -> const Scalar& { return pa.theta(k); };
  auto ts = [&](int k) -> const Scalar& { return pa.theta_star(k); };
  auto vp = [&](int k) -> const Scalar& { return pa.varphi(k); };
  auto ph = [&](int k) -> const Scalar& { return pa.phi(k); };
  for (int i = 1; i <= d; ++i) {
    Scalar v = detail::partial_ratio_sum(pa.thetas(), i);
    const int j = d - i + 1;
    const std::array<std::pair<Scalar, Scalar>, 8> eqs = {{
        {vp(i), ph(1) * v + (ts(i) - ts(0)) * (t(i - 1) - t(d))},
        {vp(j), ph(1) * v + (ts(j) - ts(0)) * (t(d - i) - t(d))},
        {vp(i), ph(d) * v + (t(i) - t(0)) * (ts(i - 1) - ts(d))},
        {vp(j), ph(d) * v + (t(j) - t(0)) * (ts(d - i) - ts(d))},
        {ph(i), vp(1) * v + (ts(i) - ts(0)) * (t(j) - t(0))},
        {ph(j), vp(1) * v + (ts(j) - ts(0)) * (t(i) - t(0))},
        {ph(i), vp(d) * v + (t(d - i) - t(d)) * (ts(i - 1) - ts(d))},
        {ph(j), vp(d) * v + (t(i - 1) - t(d)) * (ts(d - i) - ts(d))},
    }};
    for (std::size_t e = 0; e < eqs.size(); ++e)
      if (eqs[e].first != eqs[e].second)
        rep.violations.push_back({static_cast<int>(e) + 1, i, eqs[e].second, eqs[e].first});
  }
  return rep;
}

/// The common value of the PA5 ratios (q + 1/q + 1 in the type
/// classification); nullopt when d <= 2 and the condition is vacuous.
inline std::optional<Scalar> beta_common_value(const ParameterArray& pa) {
  if (pa.d() <= 2) return std::nullopt;
  std::optional<Scalar> common;
  for (int i = 2; i <= pa.d() - 1; ++i) {
    auto a = detail::pa5_ratio(pa.thetas(), i);
    auto b = detail::pa5_ratio(pa.theta_stars(), i);
    if (!a || !b) throw PA5Violation("ratio undefined at i=" + std::to_string(i));
    if (*a != *b)
      throw PA5Violation("ratios differ at i=" + std::to_string(i) + ": " + a->to_string() + " vs " + b->to_string());
    if (common && *common != *a)
      throw PA5Violation("ratio at i=" + std::to_string(i) + " is " + a->to_string() + ", expected " +
                         common->to_string());
    common = *a;
  }
  return common;
}

}  // namespace leonard

#endif  // LEONARD_PARRAY_HPP
