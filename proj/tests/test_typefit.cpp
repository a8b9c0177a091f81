#include <gtest/gtest.h>

#include <map>
#include <random>

#include "corpus.hpp"
#include "oracle.hpp"

using leonard::CaseTag;
using leonard::Field;
using leonard::ParameterArray;
using leonard::Scalar;
using leonard::TypeData;
using leonard::TypeKind;

namespace {

// The closed forms written out term by term, evaluated in the field of the data.
ParameterArray closed_form(const TypeData& t) {
  const Field f = t.field();
  const int d = t.d;
  auto n = [&](long long x) { return f.from_int(x); };
  std::vector<Scalar> th, ts, vp, ph;
  if (t.kind == TypeKind::IV) {
    Scalar hh = t.h * t.h_star;
    th = {t.eta, t.eta + t.h * (t.s + 1), t.eta + t.h, t.eta + t.h * t.s};
    ts = {t.eta_star, t.eta_star + t.h_star * (t.s_star + 1), t.eta_star + t.h_star, t.eta_star + t.h_star * t.s_star};
    vp = {hh * t.tau, hh, hh * (t.tau + t.s + t.s_star)};
    ph = {hh * (t.tau + t.s * (1 + t.s_star)), hh, hh * (t.tau + t.s_star * (1 + t.s))};
    return ParameterArray(f, th, ts, vp, ph);
  }
  Scalar half = f.characteristic() == 2 ? f.zero() : n(1) / n(2);  // type I in characteristic 2 never uses it
  for (int i = 0; i <= d; ++i) {
    Scalar c = n(i) - n(d) * half;
    switch (t.kind) {
      case TypeKind::I:
        th.push_back(t.eta + t.mu * t.q.pow(i) + t.h * t.q.pow(d - i));
        ts.push_back(t.eta_star + t.mu_star * t.q.pow(i) + t.h_star * t.q.pow(d - i));
        break;
      case TypeKind::II:
        th.push_back(t.eta + t.mu * c + t.h * n(i) * n(d - i));
        ts.push_back(t.eta_star + t.mu_star * c + t.h_star * n(i) * n(d - i));
        break;
      default:
        if (i % 2 == 0) {
          th.push_back(t.eta + t.s + t.h * c);
          ts.push_back(t.eta_star + t.s_star + t.h_star * c);
        } else {
          th.push_back(t.eta - t.s - t.h * c);
          ts.push_back(t.eta_star - t.s_star - t.h_star * c);
        }
    }
  }
  for (int i = 1; i <= d; ++i) {
    Scalar m = n(i) - n(d + 1) * half;
    Scalar w = n(i) * n(d - i + 1);
    const Scalar &h = t.h, &hs = t.h_star, &s = t.s, &ss = t.s_star, &tau = t.tau;
    switch (t.kind) {
      case TypeKind::I: {
        Scalar pre = (t.q.pow(i) - 1) * (t.q.pow(d - i + 1) - 1);
        vp.push_back(pre * (tau - t.mu * t.mu_star * t.q.pow(i - 1) - h * hs * t.q.pow(d - i)));
        ph.push_back(pre * (tau - h * t.mu_star * t.q.pow(i - 1) - t.mu * hs * t.q.pow(d - i)));
        break;
      }
      case TypeKind::II: {
        Scalar tail = h * hs * n(i - 1) * n(d - i);
        vp.push_back(w * (tau - t.mu * t.mu_star * half + (h * t.mu_star + t.mu * hs) * m + tail));
        ph.push_back(w * (tau + t.mu * t.mu_star * half + (h * t.mu_star - t.mu * hs) * m + tail));
        break;
      }
      case TypeKind::IIIplus:
        if (i % 2 == 0) {
          vp.push_back(n(i) * (tau - s * hs - ss * h - h * hs * m));
          ph.push_back(n(i) * (tau - s * hs + ss * h + h * hs * m));
        } else {
          vp.push_back(n(d - i + 1) * (tau + s * hs + ss * h + h * hs * m));
          ph.push_back(n(d - i + 1) * (tau + s * hs - ss * h - h * hs * m));
        }
        break;
      default:
        if (i % 2 == 0) {
          vp.push_back(h * hs * w);
          ph.push_back(h * hs * w);
        } else {
          vp.push_back(tau - 2 * s * ss + w * h * hs - 2 * (h * ss + hs * s) * m);
          ph.push_back(tau + 2 * s * ss + w * h * hs - 2 * (h * ss - hs * s) * m);
        }
    }
  }
  return ParameterArray(f, th, ts, vp, ph);
}

TypeData type2_data(const Field& f, std::initializer_list<const char*> v) {
  TypeData td = leonard::detail::blank_typedata(TypeKind::II, 3, f);
  std::vector<Scalar> x;
  for (const char* s : v) x.push_back(f.parse_element(s));
  td.eta = x[0], td.mu = x[1], td.h = x[2], td.eta_star = x[3], td.mu_star = x[4], td.h_star = x[5], td.tau = x[6];
  return td;
}

// Arrays whose q lies outside a binary field: theta, theta* follow the
// three-term recurrence for an irreducible q^2 + (1 - beta) q + 1.
std::optional<ParameterArray> outside_q_array(const Field& f, std::mt19937_64& rng) {
  for (std::uint64_t b = 0; b < f.order(); ++b) {
    Scalar beta = f.element(b);
    if (!leonard::solve_quadratic(1 - beta, f.one()).roots.empty()) continue;
    for (int t = 0; t < 500; ++t) {
      auto seq = [&] {
        std::vector<Scalar> v{f.element(rng() % f.order()), f.element(rng() % f.order()),
                              f.element(rng() % f.order())};
        v.push_back((beta + 1) * (v[2] - v[1]) + v[0]);
        return v;
      };
      auto th = seq(), ts = seq();
      Scalar phi1 = f.element(rng() % f.order());
      bool ok = !phi1.is_zero();
      for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) ok = ok && th[i] != th[j] && ts[i] != ts[j];
      if (!ok) continue;
      ParameterArray pa = oracle::from_pa3_pa4(th, ts, phi1);
      if (leonard::validate(pa).ok()) return pa;
    }
  }
  return std::nullopt;
}

}  // namespace

TEST(TypeFit, ClosedFormsMatchIndependentEvaluation) {
  for (const auto& e : corpus::all()) {
    ParameterArray expect = closed_form(e.td);
    ParameterArray got = e.pa.field() == expect.field() ? e.pa : e.pa.embed(expect.field());
    EXPECT_EQ(got, expect) << e.label;
  }
  Field q = Field::rationals();
  EXPECT_EQ(leonard::generate(type2_data(q, {"0", "1", "0", "0", "1", "0", "0"})), oracle::pa_a());
  EXPECT_EQ(leonard::generate(type2_data(q, {"0", "5", "1", "0", "1", "-1/5", "0"})), oracle::pa_b());
}

TEST(TypeFit, DetectExamples) {
  Field q = Field::rationals();
  auto a = leonard::detect_type(oracle::pa_a());
  EXPECT_EQ(a.kind, TypeKind::II);
  EXPECT_EQ(a.q, q.one());
  Field f7 = Field::prime(7);
  ParameterArray a7 = oracle::rational({"2", "3", "4", "5"}, {"2", "3", "4", "5"}, {"2", "5", "2"}, {"5", "2", "5"}, f7);
  EXPECT_EQ(leonard::detect_type(a7).kind, TypeKind::II);
  EXPECT_THROW(leonard::detect_type(oracle::rational({"0", "1", "3"}, {"0", "2", "3"}, {"1", "1"}, {"1", "1"})),
               leonard::DiameterTooSmall);
}

TEST(TypeFit, QEqualsTwo) {
  // theta from q = 2, eta = 0, mu = 1, h = 3 and the dual with h* = 5; search tau.
  Field q = Field::rationals();
  TypeData td = leonard::detail::blank_typedata(TypeKind::I, 3, q);
  td.q = q.from_int(2);
  td.mu = q.one();
  td.h = q.from_int(3);
  td.mu_star = q.one();
  td.h_star = q.from_int(5);
  std::optional<ParameterArray> pa;
  for (int t = 0; t < 20 && !pa; ++t) {
    td.tau = q.from_int(t);
    try {
      pa = leonard::generate(td);
    } catch (const leonard::DegenerateData&) {
    }
  }
  ASSERT_TRUE(pa);
  auto tag = leonard::detect_type(*pa);
  EXPECT_EQ(tag.kind, TypeKind::I);
  EXPECT_TRUE(tag.q == q.from_int(2) || tag.q == q.parse_element("1/2")) << tag.q;
  EXPECT_EQ(tag.q * tag.q_inv, q.one());
  EXPECT_EQ(leonard::fit(*pa, q.from_int(2)), td);
  EXPECT_EQ(leonard::fit(*pa, q.parse_element("1/2")), leonard::invert_q(td));
}

TEST(TypeFit, FitFixtures) {
  Field q = Field::rationals();
  EXPECT_EQ(leonard::fit(oracle::pa_a()), type2_data(q, {"0", "1", "0", "0", "1", "0", "0"}));
  EXPECT_EQ(leonard::fit(oracle::pa_b()), type2_data(q, {"0", "5", "1", "0", "1", "-1/5", "0"}));
}

TEST(TypeFit, PredictExamples) {
  Field q = Field::rationals();
  EXPECT_EQ(leonard::predict_case(type2_data(q, {"0", "1", "0", "0", "1", "0", "0"})), CaseTag::I);
  EXPECT_EQ(leonard::predict_case(type2_data(q, {"0", "5", "1", "0", "1", "-1/5", "0"})), CaseTag::III);
}

TEST(TypeFit, RoundtripOnCorpus) {
  for (const auto& e : corpus::all()) {
    if (e.td.kind == TypeKind::I) {
      EXPECT_EQ(leonard::fit(e.pa, e.td.q), e.td) << e.label;
      TypeData free = leonard::fit(e.pa);
      EXPECT_TRUE(free == e.td || free == leonard::invert_q(e.td)) << e.label << "\n" << free.to_string();
    } else {
      EXPECT_EQ(leonard::fit(e.pa), e.td) << e.label;
    }
  }
}

TEST(TypeFit, PredictedCaseMatchesMainCase) {
  std::map<TypeKind, std::map<CaseTag, int>> seen;
  for (const auto& e : corpus::all()) {
    CaseTag c = leonard::case_tag(e.pa);
    EXPECT_EQ(leonard::predict_case(leonard::fit(e.pa)), c) << e.label;
    EXPECT_EQ(leonard::predict_case(e.td), c) << e.label;
    ++seen[e.td.kind][c];
  }
  for (CaseTag c : {CaseTag::I, CaseTag::II, CaseTag::V, CaseTag::VI})
    EXPECT_EQ(seen[TypeKind::IIIminus][c], 0);
  for (const auto& [c, k] : seen[TypeKind::IV]) EXPECT_TRUE(c == CaseTag::II || c == CaseTag::VII);
  EXPECT_GT(seen[TypeKind::IV][CaseTag::II], 0);
  EXPECT_GT(seen[TypeKind::IV][CaseTag::VII], 0);
}

TEST(TypeFit, InvertQDescribesSameArray) {
  for (const auto& e : corpus::all()) {
    if (e.td.kind != TypeKind::I) continue;
    TypeData inv = leonard::invert_q(e.td);
    EXPECT_EQ(closed_form(inv), closed_form(e.td)) << e.label;
    EXPECT_EQ(leonard::invert_q(inv), e.td) << e.label;
  }
}

TEST(TypeFit, TypeISymmetryConditions) {
  for (const auto& e : corpus::all()) {
    const TypeData& t = e.td;
    if (t.kind != TypeKind::I) continue;
    const ParameterArray& pa = e.pa;
    const int d = pa.d();
    auto all = [&](auto pred, int lo, int hi) {
      for (int i = lo; i <= hi; ++i)
        if (!pred(i)) return false;
      return true;
    };
    EXPECT_EQ(all([&](int i) { return pa.theta(i) + pa.theta(d - i) == pa.theta(0) + pa.theta(d); }, 0, d),
              t.mu == -t.h) << e.label;
    EXPECT_EQ(all([&](int i) { return pa.theta_star(i) + pa.theta_star(d - i) == pa.theta_star(0) + pa.theta_star(d); },
                  0, d),
              t.mu_star == -t.h_star) << e.label;
    EXPECT_EQ(all([&](int i) { return pa.varphi(i) == -pa.phi(i); }, 1, d), t.tau.is_zero() && t.mu == -t.h)
        << e.label;
    EXPECT_EQ(all([&](int i) { return pa.varphi(i) == -pa.phi(d - i + 1); }, 1, d),
              t.tau.is_zero() && t.mu_star == -t.h_star) << e.label;
    EXPECT_EQ(all([&](int i) { return pa.phi(i) == pa.phi(d - i + 1); }, 1, d), t.mu * t.h_star == t.mu_star * t.h)
        << e.label;
    EXPECT_EQ(all([&](int i) { return pa.varphi(i) == pa.varphi(d - i + 1); }, 1, d),
              t.mu * t.mu_star == t.h * t.h_star) << e.label;
  }
}

TEST(TypeFit, DetectionIsAffineInvariant) {
  std::mt19937_64 rng(31);
  const auto& all = corpus::all();
  for (std::size_t k = 0; k < all.size(); k += 3) {
    const ParameterArray& pa = all[k].pa;
    Field f = pa.field();
    Scalar xi = f.from_int(3), xs = f.from_int(5);
    if (f.characteristic() == 2 || f.characteristic() == 3 || f.characteristic() == 5) xi = xs = f.one();
    ParameterArray img = apply(pa, {xi, f.from_int(7), xs, f.from_int(-2)});
    EXPECT_EQ(leonard::detect_type(img).kind, leonard::detect_type(pa).kind) << all[k].label;
  }
}

TEST(TypeFit, DegenerateData) {
  Field q = Field::rationals();
  TypeData p = leonard::random_typedata(TypeKind::IIIplus, 4, q, 3);
  for (int i : {1, 3}) {
    TypeData bad = p;
    bad.s = p.h * q.from_int(i) / 2;
    EXPECT_THROW(leonard::generate(bad), leonard::DegenerateData) << i;
  }
  TypeData zero_s = p;
  zero_s.s = q.zero();
  EXPECT_NO_THROW(leonard::generate(zero_s));
  TypeData m = leonard::random_typedata(TypeKind::IIIminus, 5, q, 3);
  for (int i : {0, 2, 4}) {
    TypeData bad = m;
    bad.s_star = m.h_star * q.from_int(i) / 2;
    EXPECT_THROW(leonard::generate(bad), leonard::DegenerateData) << i;
  }
  TypeData one = leonard::random_typedata(TypeKind::I, 4, q, 9);
  one.q = q.one();
  EXPECT_THROW(leonard::generate(one), leonard::DegenerateData);
  TypeData t2 = type2_data(q, {"0", "1", "1", "0", "1", "0", "0"});
  t2.mu = -2 * t2.h;
  EXPECT_THROW(leonard::generate(t2), leonard::DegenerateData);
}

TEST(TypeFit, RandomDataIsNondegenerate) {
  Field q = Field::rationals();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    TypeData m = leonard::random_typedata(TypeKind::IIIminus, 5, q, seed);
    EXPECT_FALSE(m.h.is_zero() || m.h_star.is_zero() || m.s.is_zero() || m.s_star.is_zero());
    TypeData iv = leonard::random_typedata(TypeKind::IV, 3, Field::binary(3), seed);
    EXPECT_FALSE(iv.s.is_zero() || iv.s == 1 || iv.s_star.is_zero() || iv.s_star == 1);
    EXPECT_EQ(leonard::random_typedata(TypeKind::II, 4, q, seed), leonard::random_typedata(TypeKind::II, 4, q, seed));
  }
}

TEST(TypeFit, InadmissibleFields) {
  EXPECT_THROW(leonard::random_typedata(TypeKind::IV, 3, Field::prime(2), 0), leonard::InadmissibleField);
  EXPECT_THROW(leonard::random_typedata(TypeKind::IV, 3, Field::rationals(), 0), leonard::InadmissibleField);
  EXPECT_THROW(leonard::random_typedata(TypeKind::II, 4, Field::prime(3), 0), leonard::InadmissibleField);
  EXPECT_THROW(leonard::random_typedata(TypeKind::IIIplus, 4, Field::binary(3), 0), leonard::InadmissibleField);
  EXPECT_THROW(leonard::random_typedata(TypeKind::IIIminus, 7, Field::prime(3), 0), leonard::InadmissibleField);
  EXPECT_THROW(leonard::random_typedata(TypeKind::IV, 4, Field::binary(3), 0), leonard::InadmissibleField);
  EXPECT_THROW(leonard::random_typedata(TypeKind::II, 2, Field::rationals(), 0), leonard::DiameterTooSmall);
}

TEST(TypeFit, BinaryFieldWithoutQ) {
  std::mt19937_64 rng(3);
  auto pa = outside_q_array(Field::binary(4), rng);
  ASSERT_TRUE(pa);
  EXPECT_THROW(leonard::detect_type(*pa), leonard::ExtensionRequired);
  EXPECT_THROW(leonard::fit(*pa), leonard::ExtensionRequired);
}

TEST(TypeFit, ConjugateQOverRationals) {
  Field q = Field::rationals();
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    TypeData td = leonard::random_conjugate_typedata(4, q, seed);
    ASSERT_TRUE(td.field().is_extension());
    EXPECT_FALSE(td.q.in_base_field());
    ParameterArray pa = leonard::generate(td);
    EXPECT_EQ(pa.field(), q);
    EXPECT_EQ(leonard::fit(pa, td.q), td);
    auto tag = leonard::detect_type(pa);
    EXPECT_EQ(tag.kind, TypeKind::I);
    EXPECT_EQ(tag.q.field(), td.field());
  }
}
