#include <gtest/gtest.h>

#include "corpus.hpp"
#include "oracle.hpp"

using leonard::Field;
using leonard::ParameterArray;
using leonard::Scalar;

namespace {

ParameterArray with_entry(const ParameterArray& pa, int seq, int i, const Scalar& v) {
  auto th = pa.thetas(), ts = pa.theta_stars(), vp = pa.varphis(), ph = pa.phis();
  switch (seq) {
    case 0: th[i] = v; break;
    case 1: ts[i] = v; break;
    case 2: vp[i - 1] = v; break;
    default: ph[i - 1] = v;
  }
  return ParameterArray(pa.field(), th, ts, vp, ph);
}

}  // namespace

TEST(ParameterArray, FixturesMatchClosedForm) {
  // PA-A and PA-B are the type II closed form at the stated scalars.
  EXPECT_EQ(oracle::pa_a(), oracle::to_array(oracle::type2(3, 0, 1, 0, 0, 1, 0, 0)));
  EXPECT_EQ(oracle::pa_b(), oracle::to_array(oracle::type2(3, 0, 5, 1, 0, 1, mpq_class(-1, 5), 0)));
}

TEST(ParameterArray, ValidateFixtures) {
  EXPECT_TRUE(leonard::validate(oracle::pa_a()).ok());
  EXPECT_TRUE(leonard::validate(oracle::pa_b()).ok());
}

TEST(ParameterArray, ZeroSplitEntryFailsPA1) {
  Field q = Field::rationals();
  auto rep = leonard::validate(with_entry(oracle::pa_a(), 2, 2, q.zero()));
  EXPECT_FALSE(rep.ok());
  EXPECT_FALSE(rep.pa[0].pass);
  EXPECT_EQ(rep.pa[0].witness, std::vector<int>{2});
}

TEST(ParameterArray, CollisionFailsPA2) {
  Field q = Field::rationals();
  auto rep = leonard::validate(with_entry(oracle::pa_a(), 0, 3, q.parse_element("-3/2")));
  EXPECT_FALSE(rep.pa[1].pass);
  EXPECT_EQ(rep.pa[1].witness, (std::vector<int>{0, 3}));
  EXPECT_NE(rep.to_string().find("PA2 fail (0,3) theta"), std::string::npos);
}

TEST(ParameterArray, PerturbationsAreCaught) {
  // Changing any single entry of a valid array breaks at least one condition.
  Field q = Field::rationals();
  ParameterArray pa = oracle::pa_b();
  for (int seq = 0; seq < 4; ++seq) {
    int lo = seq < 2 ? 0 : 1;
    for (int i = lo; i <= lo + 2; ++i) {
      const Scalar& old = seq == 0 ? pa.theta(i) : seq == 1 ? pa.theta_star(i) : seq == 2 ? pa.varphi(i) : pa.phi(i);
      EXPECT_FALSE(leonard::validate(with_entry(pa, seq, i, old + q.parse_element("1/7"))).ok())
          << "seq " << seq << " i " << i;
    }
  }
}

TEST(ParameterArray, StructuralErrors) {
  Field q = Field::rationals();
  EXPECT_THROW(ParameterArray(q, {q.one()}, {q.one()}, {}, {}), leonard::StructuralError);
  EXPECT_THROW(ParameterArray(q, {q.one(), q.zero()}, {q.one()}, {q.one()}, {q.one()}), leonard::StructuralError);
  EXPECT_THROW(ParameterArray(q, {q.one(), q.zero()}, {q.one(), q.zero()}, {q.one(), q.one()}, {q.one()}),
               leonard::StructuralError);
  Field p = Field::prime(5);
  EXPECT_THROW(ParameterArray(q, {q.one(), p.zero()}, {q.one(), q.zero()}, {q.one()}, {q.one()}),
               leonard::FieldMismatch);
}

TEST(ParameterArray, VarthetaValues) {
  ParameterArray pa = oracle::pa_a();
  Field q = Field::rationals();
  EXPECT_EQ(leonard::vartheta(pa, 1), q.one());
  EXPECT_EQ(leonard::vartheta(pa, 2), q.parse_element("4/3"));
  EXPECT_EQ(leonard::vartheta(pa, 3), q.one());
}

TEST(ParameterArray, VarthetaDisagreementThrows) {
  Field q = Field::rationals();
  ParameterArray pa = with_entry(oracle::pa_a(), 0, 1, q.parse_element("-1"));
  EXPECT_THROW(leonard::vartheta(pa, 2), leonard::VarthetaMismatch);
}

TEST(ParameterArray, SplitEquationSubstitutions) {
  Field q = Field::rationals();
  ParameterArray a = oracle::pa_a();
  // identity 1 at i = 2 on PA-A: -2 = (3/2)(4/3) + (1)(-2)
  Scalar rhs = a.phi(1) * leonard::vartheta(a, 2) + (a.theta_star(2) - a.theta_star(0)) * (a.theta(1) - a.theta(3));
  EXPECT_EQ(rhs, q.from_int(-2));
  EXPECT_EQ(rhs, a.varphi(2));
  // identity 5 at i = 2 on PA-B gives 46/5.
  ParameterArray b = oracle::pa_b();
  Scalar rhs5 = b.varphi(1) * leonard::vartheta(b, 2) + (b.theta_star(2) - b.theta_star(0)) * (b.theta(2) - b.theta(0));
  EXPECT_EQ(rhs5, q.parse_element("46/5"));
  EXPECT_TRUE(leonard::check_split_equations(a).ok());
  EXPECT_TRUE(leonard::check_split_equations(b).ok());
}

TEST(ParameterArray, SplitEquationsReportViolations) {
  Field q = Field::rationals();
  auto rep = leonard::check_split_equations(with_entry(oracle::pa_b(), 3, 2, q.from_int(9)));
  EXPECT_FALSE(rep.ok());
  bool saw5 = false;
  for (const auto& v : rep.violations) saw5 |= v.equation == 5 && v.i == 2;
  EXPECT_TRUE(saw5);
}

TEST(ParameterArray, BetaCommonValue) {
  Field q = Field::rationals();
  EXPECT_EQ(*leonard::beta_common_value(oracle::pa_a()), q.from_int(3));
  ParameterArray d2 = oracle::rational({"0", "1", "3"}, {"0", "2", "3"}, {"1", "1"}, {"1", "1"});
  EXPECT_FALSE(leonard::beta_common_value(d2));
  ParameterArray bad = oracle::rational({"0", "1", "2", "4"}, {"-3/2", "-1/2", "1/2", "3/2"}, {"-3/2", "-2", "-3/2"},
                                        {"3/2", "2", "3/2"});
  EXPECT_THROW(leonard::beta_common_value(bad), leonard::PA5Violation);
  EXPECT_FALSE(leonard::validate(bad).pa[4].pass);
}

TEST(ParameterArray, CorpusSatisfiesSplitIdentities) {
  for (const auto& e : corpus::all()) {
    const ParameterArray& pa = e.pa;
    ASSERT_TRUE(leonard::validate(pa).ok()) << e.label;
    EXPECT_TRUE(leonard::check_split_equations(pa).ok()) << e.label;
    EXPECT_EQ(leonard::vartheta(pa, 1), pa.field().one()) << e.label;
    for (int i = 1; i <= pa.d(); ++i)
      EXPECT_EQ(leonard::vartheta(pa, i), leonard::vartheta(pa, pa.d() - i + 1)) << e.label;
  }
}

TEST(ParameterArray, SmallDiameterFuzz) {
  // d = 1 and d = 2 arrays built straight from PA3/PA4 validate.
  std::mt19937_64 rng(99);
  for (const Field& f : {Field::rationals(), Field::prime(101), Field::binary(4)}) {
    int accepted = 0;
    for (int t = 0; t < 200 && accepted < 40; ++t) {
      int d = 1 + static_cast<int>(rng() % 2);
      auto pick = [&] {
        return f.is_finite() ? f.element(rng() % f.order())
                             : f.from_int(static_cast<long long>(rng() % 21) - 10) /
                                   f.from_int(static_cast<long long>(rng() % 3) + 1);
      };
      std::vector<Scalar> th, ts;
      for (int i = 0; i <= d; ++i) {
        th.push_back(pick());
        ts.push_back(pick());
      }
      Scalar phi1 = pick();
      bool distinct = true;
      for (int i = 0; i <= d; ++i)
        for (int j = i + 1; j <= d; ++j) distinct = distinct && th[i] != th[j] && ts[i] != ts[j];
      if (!distinct || phi1.is_zero()) continue;
      ParameterArray pa = oracle::from_pa3_pa4(th, ts, phi1);
      auto rep = leonard::validate(pa);
      bool pa1 = true;
      for (int i = 1; i <= d; ++i) pa1 = pa1 && !pa.varphi(i).is_zero() && !pa.phi(i).is_zero();
      EXPECT_EQ(rep.ok(), pa1);
      if (!rep.ok()) continue;
      ++accepted;
      EXPECT_TRUE(leonard::check_split_equations(pa).ok());
    }
    EXPECT_GT(accepted, 10) << f.name();
  }
}
