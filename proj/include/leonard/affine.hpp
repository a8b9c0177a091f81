#ifndef LEONARD_AFFINE_HPP
#define LEONARD_AFFINE_HPP

// Affine transformations (A, A*) -> (xi A + zeta I, xi* A* + zeta* I) and
// their effect on parameter arrays.

#include <optional>
#include <string>
#include <vector>

#include "leonard/error.hpp"
#include "leonard/parray.hpp"

namespace leonard {

struct AffineMap {
  Scalar xi;
  Scalar zeta;
  Scalar xi_star;
  Scalar zeta_star;

  static AffineMap identity(const Field& f) { return {f.one(), f.zero(), f.one(), f.zero()}; }

  AffineMap inverse() const {
    Scalar ixi = xi.inverse();
    Scalar ixs = xi_star.inverse();
    return {ixi, -zeta * ixi, ixs, -zeta_star * ixs};
  }

  /// "[xi, zeta, xi*, zeta*]"
  std::string to_string() const {
    return "[" + xi.to_string() + ", " + zeta.to_string() + ", " + xi_star.to_string() + ", " +
           zeta_star.to_string() + "]";
  }

  friend bool operator==(const AffineMap& a, const AffineMap& b) {
    return a.xi.field() == b.xi.field() && a.xi == b.xi && a.zeta == b.zeta && a.xi_star == b.xi_star &&
           a.zeta_star == b.zeta_star;
  }
  friend bool operator!=(const AffineMap& a, const AffineMap& b) { return !(a == b); }
};

inline ParameterArray apply(const ParameterArray& pa, const AffineMap& m) {
  if (m.xi.is_zero() || m.xi_star.is_zero()) throw StructuralError("affine map needs xi and xi* nonzero");
  auto lin = [](const std::vector<Scalar>& v, const Scalar& a, const Scalar& b) {
    std::vector<Scalar> out;
    out.reserve(v.size());
    for (const Scalar& x : v) out.push_back(a * x + b);
    return out;
  };
  Scalar prod = m.xi * m.xi_star;
  Scalar zero = pa.field().zero();
  return ParameterArray(pa.field(), lin(pa.thetas(), m.xi, m.zeta), lin(pa.theta_stars(), m.xi_star, m.zeta_star),
                        lin(pa.varphis(), prod, zero), lin(pa.phis(), prod, zero));
}

/// The unique map m with apply(src, m) == dst, if there is one.
inline std::optional<AffineMap> solve(const ParameterArray& src, const ParameterArray& dst) {
  if (src.d() != dst.d() || src.field() != dst.field()) return std::nullopt;
  Scalar xi = (dst.theta(1) - dst.theta(0)) / (src.theta(1) - src.theta(0));
  Scalar xs = (dst.theta_star(1) - dst.theta_star(0)) / (src.theta_star(1) - src.theta_star(0));
  if (xi.is_zero() || xs.is_zero()) return std::nullopt;
  AffineMap m{xi, dst.theta(0) - xi * src.theta(0), xs, dst.theta_star(0) - xs * src.theta_star(0)};
  if (apply(src, m) != dst) return std::nullopt;
  return m;
}

inline bool is_affine_isomorphic(const ParameterArray& a, const ParameterArray& b) {
  return solve(b, a).has_value();
}

}  // namespace leonard

#endif  // LEONARD_AFFINE_HPP
