#ifndef LEONARD_D4_HPP
#define LEONARD_D4_HPP

// The dihedral group D4 generated by *, down-arrow and double-down-arrow,
// acting on parameter arrays by the relatives table.
//
// Names: d = down, D = double down, s = star. A word acts left to right,
// so "ds" sends an array to the array of the system obtained by applying
// down and then star.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "leonard/error.hpp"
#include "leonard/parray.hpp"

namespace leonard {

class D4Element {
 public:
  constexpr D4Element() = default;

  static constexpr D4Element id() { return {false, false, false}; }
  static constexpr D4Element down() { return {false, false, true}; }
  static constexpr D4Element double_down() { return {false, true, false}; }
  static constexpr D4Element star() { return {true, false, false}; }

  /// All eight elements in canonical order id, d, D, dD, s, ds, Ds, dDs.
  static const std::array<D4Element, 8>& all() {
    static const std::array<D4Element, 8> elems = {
        D4Element{false, false, false}, D4Element{false, false, true}, D4Element{false, true, false},
        D4Element{false, true, true},   D4Element{true, false, false}, D4Element{true, true, false},
        D4Element{true, false, true},   D4Element{true, true, true},
    };
    return elems;
  }

  static D4Element parse(std::string_view name) {
    for (const D4Element& g : all())
      if (g.name() == name) return g;
    throw ParseError("unknown D4 element '" + std::string(name) + "'");
  }

  std::string_view name() const {
    static constexpr std::array<std::string_view, 8> names = {"id", "d", "D", "dD", "s", "ds", "Ds", "dDs"};
    return names[static_cast<std::size_t>(index())];
  }

  /// Position in canonical order.
  int index() const {
    if (!star_) return (first_rev_ ? 2 : 0) + (second_rev_ ? 1 : 0);
    if (!first_rev_ && !second_rev_) return 4;
    if (first_rev_ && !second_rev_) return 5;
    if (!first_rev_ && second_rev_) return 6;
    return 7;
  }

  /// True when the relative has A* in the first position.
  bool swaps() const { return star_; }

  /// The element acting as `h` first and then `g`:
  /// act(pa, compose(g, h)) == act(act(pa, h), g).
  friend constexpr D4Element compose(D4Element g, D4Element h) {
    if (!g.star_) return {h.star_, h.first_rev_ != g.first_rev_, h.second_rev_ != g.second_rev_};
    return {!h.star_, h.second_rev_ != g.first_rev_, h.first_rev_ != g.second_rev_};
  }

  D4Element inverse() const {
    for (const D4Element& g : all())
      if (compose(g, *this) == id()) return g;
    return id();
  }

  friend constexpr bool operator==(D4Element a, D4Element b) {
    return a.star_ == b.star_ && a.first_rev_ == b.first_rev_ && a.second_rev_ == b.second_rev_;
  }
  friend constexpr bool operator!=(D4Element a, D4Element b) { return !(a == b); }
  friend bool operator<(D4Element a, D4Element b) { return a.index() < b.index(); }

 private:
  constexpr D4Element(bool star, bool first_rev, bool second_rev)
      : star_(star), first_rev_(first_rev), second_rev_(second_rev) {}

  // star_: A* comes first; first_rev_/second_rev_: the idempotent ordering
  // of the first/second member is reversed.
  bool star_ = false;
  bool first_rev_ = false;
  bool second_rev_ = false;
};

/// Parameter array of the relative `g`, read off the relatives table.
inline ParameterArray act(const ParameterArray& pa, D4Element g) {
  const int d = pa.d();
  auto seq = [&](int lo, int hi, auto f) {
    std::vector<Scalar> out;
    for (int i = lo; i <= hi; ++i) out.push_back(f(i));
    return out;
  };
  auto th = [&](bool rev) { return seq(0, d, [&](int i) { return pa.theta(rev ? d - i : i); }); };
  auto ts = [&](bool rev) { return seq(0, d, [&](int i) { return pa.theta_star(rev ? d - i : i); }); };
  auto vp = [&](bool rev) { return seq(1, d, [&](int i) { return pa.varphi(rev ? d - i + 1 : i); }); };
  auto ph = [&](bool rev) { return seq(1, d, [&](int i) { return pa.phi(rev ? d - i + 1 : i); }); };
  const Field& f = pa.field();
  switch (g.index()) {
    case 0: return pa;
    case 1: return ParameterArray(f, th(false), ts(true), ph(true), vp(true));
    case 2: return ParameterArray(f, th(true), ts(false), ph(false), vp(false));
    case 3: return ParameterArray(f, th(true), ts(true), vp(true), ph(true));
    case 4: return ParameterArray(f, ts(false), th(false), vp(false), ph(true));
    case 5: return ParameterArray(f, ts(true), th(false), ph(true), vp(false));
    case 6: return ParameterArray(f, ts(false), th(true), ph(false), vp(true));
    default: return ParameterArray(f, ts(true), th(true), vp(true), ph(false));
  }
}

/// All eight relatives, keyed by element, in canonical order. Coinciding
/// arrays are kept.
inline std::vector<std::pair<D4Element, ParameterArray>> orbit(const ParameterArray& pa) {
  std::vector<std::pair<D4Element, ParameterArray>> out;
  out.reserve(8);
  for (const D4Element& g : D4Element::all()) out.emplace_back(g, act(pa, g));
  return out;
}

}  // namespace leonard

#endif  // LEONARD_D4_HPP
