#ifndef LEONARD_CLASSIFY_HPP
#define LEONARD_CLASSIFY_HPP

// Affine isomorphism classes among the eight relatives of a Leonard system,
// decided from the four scalars varphi_1, varphi_d, phi_1, phi_d.

#include <algorithm>
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "leonard/affine.hpp"
#include "leonard/d4.hpp"
#include "leonard/error.hpp"
#include "leonard/parray.hpp"

namespace leonard {

enum class CaseTag { I = 1, II, III, IV, V, VI, VII };

inline std::string case_name(CaseTag c) {
  static const std::array<std::string, 7> names = {"case-i", "case-ii", "case-iii", "case-iv",
                                                    "case-v", "case-vi", "case-vii"};
  return names[static_cast<std::size_t>(c) - 1];
}

inline CaseTag parse_case(std::string_view s) {
  for (int k = 1; k <= 7; ++k)
    if (case_name(static_cast<CaseTag>(k)) == s) return static_cast<CaseTag>(k);
  throw ParseError("unknown case tag '" + std::string(s) + "'");
}

/// Classes in canonical order (by least member); members sorted.
using Partition = std::vector<std::vector<D4Element>>;

struct MainCase {
  CaseTag tag;
  Partition classes;
};

struct RelativeCondition {
  bool isomorphic = false;
  std::optional<AffineMap> map;  // apply(pa, *map) == act(pa, g) when set
};

namespace detail {

struct Ends {
  Scalar v1, vd, p1, pd;  // varphi_1, varphi_d, phi_1, phi_d
};

inline Ends ends(const ParameterArray& pa) {
  return {pa.varphi(1), pa.varphi(pa.d()), pa.phi(1), pa.phi(pa.d())};
}

inline Partition partition_from(std::initializer_list<std::initializer_list<int>> classes) {
  Partition out;
  for (const auto& c : classes) {
    std::vector<D4Element> cls;
    for (int k : c) cls.push_back(D4Element::all()[static_cast<std::size_t>(k)]);
    out.push_back(std::move(cls));
  }
  return out;
}

}  // namespace detail

/// Whether the relative `g` is affine isomorphic to the array itself, with
/// the explicit map when it is.
inline RelativeCondition relative_condition(const ParameterArray& pa, D4Element g) {
  const int d = pa.d();
  const Field& f = pa.field();
  auto [v1, vd, p1, pd] = detail::ends(pa);
  const Scalar& t0 = pa.theta(0);
  const Scalar& td = pa.theta(d);
  const Scalar& s0 = pa.theta_star(0);
  const Scalar& sd = pa.theta_star(d);
  Scalar one = f.one();
  Scalar zero = f.zero();
  auto yes = [](AffineMap m) { return RelativeCondition{true, std::move(m)}; };
  switch (g.index()) {
    case 0:
      return yes(AffineMap::identity(f));
    case 1:  // d
      if (v1 == -pd && vd == -p1) return yes({one, zero, -one, s0 + sd});
      return {};
    case 2:  // D
      if (v1 == -p1 && vd == -pd) return yes({-one, t0 + td, one, zero});
      return {};
    case 3:  // dD
      if (v1 == vd && p1 == pd) return yes({-one, t0 + td, -one, s0 + sd});
      return {};
    case 4: {  // s
      if (p1 != pd) return {};
      Scalar xi = (sd - s0) / (td - t0);
      Scalar xs = xi.inverse();
      return yes({xi, s0 - xi * t0, xs, t0 - xs * s0});
    }
    case 7: {  // dDs
      if (v1 != vd) return {};
      Scalar xi = (s0 - sd) / (td - t0);
      Scalar xs = xi.inverse();
      return yes({xi, sd - xi * t0, xs, t0 - xs * sd});
    }
    default: {  // ds, Ds
      if (!(v1 == vd && vd == -p1 && p1 == pd)) return {};
      if (g.index() == 5) {
        Scalar xi = (s0 - sd) / (td - t0);
        Scalar xs = -xi.inverse();
        return yes({xi, sd - xi * t0, xs, t0 - xs * s0});
      }
      Scalar xi = (sd - s0) / (td - t0);
      Scalar xs = -xi.inverse();
      return yes({xi, s0 - xi * t0, xs, t0 - xs * sd});
    }
  }
}

/// Which of the seven case hypotheses holds. Throws StructuralError if the
/// hypotheses do not single out one case, which cannot happen for a valid
/// array.
inline CaseTag case_tag(const ParameterArray& pa) {
  auto [v1, vd, p1, pd] = detail::ends(pa);
  const std::array<bool, 6> hyp = {
      v1 == vd && vd == -p1 && p1 == pd,
      v1 == vd && p1 == pd && v1 != -p1,
      v1 == vd && p1 != pd,
      p1 == pd && v1 != vd,
      v1 == -p1 && vd == -pd && v1 != vd,
      v1 == -pd && vd == -p1 && v1 != vd,
  };
  int count = static_cast<int>(std::count(hyp.begin(), hyp.end(), true));
  if (count > 1) throw StructuralError("case hypotheses overlap; the array is not valid");
  for (std::size_t k = 0; k < hyp.size(); ++k)
    if (hyp[k]) return static_cast<CaseTag>(k + 1);
  return CaseTag::VII;
}

inline Partition case_partition(CaseTag c) {
  switch (c) {
    case CaseTag::I: return detail::partition_from({{0, 1, 2, 3, 4, 5, 6, 7}});
    case CaseTag::II: return detail::partition_from({{0, 3, 4, 7}, {1, 2, 5, 6}});
    case CaseTag::III: return detail::partition_from({{0, 7}, {1, 5}, {2, 6}, {3, 4}});
    case CaseTag::IV: return detail::partition_from({{0, 4}, {1, 6}, {2, 5}, {3, 7}});
    case CaseTag::V: return detail::partition_from({{0, 2}, {1, 3}, {4, 6}, {5, 7}});
    case CaseTag::VI: return detail::partition_from({{0, 1}, {2, 3}, {4, 5}, {6, 7}});
    default: return detail::partition_from({{0}, {1}, {2}, {3}, {4}, {5}, {6}, {7}});
  }
}

inline MainCase main_case(const ParameterArray& pa) {
  CaseTag c = case_tag(pa);
  return {c, case_partition(c)};
}

/// The partition obtained by testing every pair of relatives with solve.
inline Partition brute_force_partition(const ParameterArray& pa) {
  auto rel = orbit(pa);
  std::array<int, 8> cls{};
  cls.fill(-1);
  Partition out;
  for (int a = 0; a < 8; ++a) {
    if (cls[static_cast<std::size_t>(a)] >= 0) continue;
    cls[static_cast<std::size_t>(a)] = static_cast<int>(out.size());
    out.push_back({rel[static_cast<std::size_t>(a)].first});
    for (int b = a + 1; b < 8; ++b) {
      if (cls[static_cast<std::size_t>(b)] >= 0) continue;
      if (is_affine_isomorphic(rel[static_cast<std::size_t>(a)].second, rel[static_cast<std::size_t>(b)].second)) {
        cls[static_cast<std::size_t>(b)] = cls[static_cast<std::size_t>(a)];
        out.back().push_back(rel[static_cast<std::size_t>(b)].first);
      }
    }
  }
  return out;
}

inline std::string partition_to_string(const Partition& p) {
  std::string out;
  for (const auto& cls : p) {
    out += "{";
    for (std::size_t k = 0; k < cls.size(); ++k) out += (k ? "," : "") + std::string(cls[k].name());
    out += "}";
  }
  return out;
}

/// Maps (xi, zeta, xi*, zeta*) for which the transformed pair is isomorphic
/// to (A, A*), in clause order; the identity is always first.
inline std::vector<AffineMap> pair_self_maps(const ParameterArray& pa) {
  const Field& f = pa.field();
  auto [v1, vd, p1, pd] = detail::ends(pa);
  Scalar one = f.one();
  Scalar zero = f.zero();
  Scalar tsum = pa.theta(0) + pa.theta(pa.d());
  Scalar ssum = pa.theta_star(0) + pa.theta_star(pa.d());
  std::vector<AffineMap> out{AffineMap::identity(f)};
  if (v1 == -pd && vd == -p1) out.push_back({one, zero, -one, ssum});
  if (v1 == -p1 && vd == -pd) out.push_back({-one, tsum, one, zero});
  if (v1 == vd && p1 == pd) out.push_back({-one, tsum, -one, ssum});
  return out;
}

/// Maps for which the transformed pair is isomorphic to (A*, A), in clause
/// order.
inline std::vector<AffineMap> pair_swap_maps(const ParameterArray& pa) {
  const int d = pa.d();
  auto [v1, vd, p1, pd] = detail::ends(pa);
  const Scalar& t0 = pa.theta(0);
  const Scalar& s0 = pa.theta_star(0);
  const Scalar& sd = pa.theta_star(d);
  Scalar alpha = (sd - s0) / (pa.theta(d) - t0);
  Scalar ia = alpha.inverse();
  bool all_four = v1 == vd && vd == -p1 && p1 == pd;
  std::vector<AffineMap> out;
  if (p1 == pd) out.push_back({alpha, s0 - alpha * t0, ia, t0 - s0 * ia});
  if (all_four) {
    out.push_back({-alpha, sd + alpha * t0, ia, t0 - s0 * ia});
    out.push_back({alpha, s0 - alpha * t0, -ia, t0 + sd * ia});
  }
  if (v1 == vd) out.push_back({-alpha, sd + alpha * t0, -ia, t0 + sd * ia});
  return out;
}

}  // namespace leonard

#endif  // LEONARD_CLASSIFY_HPP
