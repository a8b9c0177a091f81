#include <gtest/gtest.h>

#include <random>

#include "corpus.hpp"
#include "oracle.hpp"

using leonard::AffineMap;
using leonard::D4Element;
using leonard::Field;
using leonard::ParameterArray;
using leonard::Scalar;

namespace {

AffineMap random_map(const Field& f, std::mt19937_64& rng) {
  auto pick = [&](bool nonzero) {
    for (;;) {
      Scalar x = f.is_finite() ? f.element(rng() % f.order())
                               : f.from_int(static_cast<long long>(rng() % 19) - 9) /
                                     f.from_int(static_cast<long long>(rng() % 4) + 1);
      if (!nonzero || !x.is_zero()) return x;
    }
  };
  return {pick(true), pick(false), pick(true), pick(false)};
}

}  // namespace

TEST(Affine, ApplyExample) {
  Field q = Field::rationals();
  ParameterArray r = apply(oracle::pa_a(), oracle::map(q, "2", "1", "1", "0"));
  EXPECT_EQ(r, oracle::rational({"-2", "0", "2", "4"}, {"-3/2", "-1/2", "1/2", "3/2"}, {"-3", "-4", "-3"},
                                {"3", "4", "3"}));
}

TEST(Affine, IdentityAndInverse) {
  std::mt19937_64 rng(5);
  for (const auto& e : corpus::all()) {
    const ParameterArray& pa = e.pa;
    EXPECT_EQ(apply(pa, AffineMap::identity(pa.field())), pa);
    AffineMap m = random_map(pa.field(), rng);
    ParameterArray img = apply(pa, m);
    EXPECT_TRUE(leonard::validate(img).ok()) << e.label;
    EXPECT_EQ(apply(img, m.inverse()), pa) << e.label;
    auto back = leonard::solve(pa, img);
    ASSERT_TRUE(back) << e.label;
    EXPECT_EQ(*back, m) << e.label;
  }
}

TEST(Affine, SolveExamples) {
  Field q = Field::rationals();
  ParameterArray a = oracle::pa_a();
  AffineMap m = oracle::map(q, "2", "1", "1", "0");
  EXPECT_EQ(*leonard::solve(a, apply(a, m)), m);
  EXPECT_EQ(*leonard::solve(a, a), AffineMap::identity(q));
  EXPECT_FALSE(leonard::solve(a, oracle::pa_b()));
}

TEST(Affine, ZeroScaleRejected) {
  Field q = Field::rationals();
  EXPECT_THROW(apply(oracle::pa_a(), oracle::map(q, "0", "1", "1", "0")), leonard::StructuralError);
}

TEST(Affine, IsomorphismExamples) {
  Field q = Field::rationals();
  EXPECT_TRUE(leonard::is_affine_isomorphic(oracle::pa_a(), act(oracle::pa_a(), D4Element::down())));
  EXPECT_EQ(*leonard::solve(oracle::pa_a(), act(oracle::pa_a(), D4Element::down())),
            oracle::map(q, "1", "0", "-1", "0"));
  EXPECT_FALSE(leonard::is_affine_isomorphic(oracle::pa_b(), act(oracle::pa_b(), D4Element::down())));
  EXPECT_FALSE(leonard::is_affine_isomorphic(oracle::pa_a(), oracle::pa_b()));
}

TEST(Affine, EquivalenceLaws) {
  std::mt19937_64 rng(17);
  const auto& all = corpus::all();
  for (std::size_t k = 0; k < all.size(); k += 7) {
    const ParameterArray& pa = all[k].pa;
    std::vector<ParameterArray> pool;
    for (const auto& [g, r] : orbit(pa)) {
      pool.push_back(r);
      pool.push_back(apply(r, random_map(pa.field(), rng)));
    }
    for (const auto& x : pool) {
      EXPECT_TRUE(leonard::is_affine_isomorphic(x, x));
      for (const auto& y : pool) {
        bool xy = leonard::is_affine_isomorphic(x, y);
        EXPECT_EQ(xy, leonard::is_affine_isomorphic(y, x));
        if (!xy) continue;
        for (const auto& z : pool)
          if (leonard::is_affine_isomorphic(y, z)) {
            EXPECT_TRUE(leonard::is_affine_isomorphic(x, z));
          }
      }
    }
  }
}

TEST(Affine, CommutesWithRelatives) {
  std::mt19937_64 rng(23);
  const auto& all = corpus::all();
  for (std::size_t k = 0; k < all.size(); k += 5) {
    const ParameterArray& pa = all[k].pa;
    AffineMap m = random_map(pa.field(), rng);
    AffineMap swapped{m.xi_star, m.zeta_star, m.xi, m.zeta};
    for (auto g : D4Element::all())
      EXPECT_EQ(act(apply(pa, m), g), apply(act(pa, g), g.swaps() ? swapped : m)) << all[k].label << " " << g.name();
  }
}
