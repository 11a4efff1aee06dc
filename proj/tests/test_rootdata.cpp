#include <set>

#include <gtest/gtest.h>

#include "a1cell/rootdata.hpp"
#include "test_support.hpp"

using namespace a1cell;

namespace {

RootDatum datum(Family f, int r) { return make_root_datum({f, r}); }

// Closed-form |Phi+| per family.
std::size_t expected_positive_count(const DynkinType &t) {
  const std::size_t r = t.rank;
  switch (t.family) {
  case Family::A: return r * (r + 1) / 2;
  case Family::B:
  case Family::C: return r * r;
  case Family::D: return r * (r - 1);
  case Family::E: return r == 6 ? 36 : r == 7 ? 63 : 120;
  case Family::F: return 24;
  case Family::G: return 6;
  }
  return 0;
}

} // namespace

TEST(RootData, A2Cartan) {
  const IntMatrix expected{{2, -1}, {-1, 2}};
  EXPECT_EQ(datum(Family::A, 2).cartan(), expected);
}

TEST(RootData, C2DoubleEdgeOnLongSide) {
  const RootDatum d = datum(Family::C, 2);
  EXPECT_EQ(d.cartan_integer(1, 0), 2); // n_21
  EXPECT_EQ(d.cartan_integer(0, 1), 1); // n_12
  EXPECT_EQ(d.length_class(1), RootLength::Long);
  EXPECT_EQ(d.length_class(0), RootLength::Short);
}

TEST(RootData, G2TripleEdge) {
  const RootDatum d = datum(Family::G, 2);
  EXPECT_EQ(cartan_integer(d, 1, 0), 3);
  EXPECT_EQ(cartan_integer(d, 0, 1), 1);
  EXPECT_EQ(d.length_class(1), RootLength::Long);
}

TEST(RootData, CartanIntegerExamples) {
  EXPECT_EQ(cartan_integer(datum(Family::A, 2), 1, 0), 1);
  EXPECT_EQ(cartan_integer(datum(Family::A, 3), 2, 0), 0);
  EXPECT_THROW(cartan_integer(datum(Family::A, 3), 1, 1), InvalidInput);
  EXPECT_THROW(cartan_integer(datum(Family::A, 3), 5, 1), InvalidInput);
}

TEST(RootData, PositiveRootExamples) {
  EXPECT_EQ(positive_roots(datum(Family::A, 2)).size(), 3u);
  EXPECT_EQ(positive_roots(datum(Family::G, 2)).size(), 6u);
  EXPECT_EQ(positive_roots(datum(Family::B, 3)).size(), 9u);
}

TEST(RootData, NormalizationOfSmallTypes) {
  const RootDatum b2 = datum(Family::B, 2);
  EXPECT_EQ(b2.type(), (DynkinType{Family::C, 2}));
  EXPECT_EQ(b2.requested_type(), (DynkinType{Family::B, 2}));
  EXPECT_EQ(b2.cartan(), datum(Family::C, 2).cartan());
  EXPECT_EQ(datum(Family::C, 1).type(), (DynkinType{Family::A, 1}));
  EXPECT_EQ(datum(Family::D, 3).type(), (DynkinType{Family::A, 3}));
  EXPECT_EQ(datum(Family::D, 3).cartan(), datum(Family::A, 3).cartan());
}

TEST(RootData, InadmissibleTypesNameTheConstraint) {
  const std::vector<std::pair<DynkinType, std::string>> bad{
      {{Family::A, 0}, "rank must be positive"}, {{Family::B, 1}, "family B"},
      {{Family::D, 2}, "family D"},              {{Family::E, 5}, "family E"},
      {{Family::E, 9}, "family E"},              {{Family::F, 3}, "family F"},
      {{Family::G, 3}, "family G"}};
  for (const auto &[t, needle] : bad) {
    try {
      make_root_datum(t);
      ADD_FAILURE() << t.name() << " accepted";
    } catch (const InvalidInput &e) {
      EXPECT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
    }
  }
  EXPECT_THROW(parse_family("H"), InvalidInput);
  EXPECT_EQ(parse_family("e"), Family::E);
}

TEST(RootData, SymplecticType) {
  const auto c3 = symplectic_type(datum(Family::C, 3));
  EXPECT_TRUE(c3.symplectic);
  EXPECT_EQ(c3.long_root, 2);
  const auto a1 = symplectic_type(datum(Family::A, 1));
  EXPECT_TRUE(a1.symplectic);
  EXPECT_EQ(a1.long_root, 0);
  const auto b3 = symplectic_type(datum(Family::B, 3));
  EXPECT_FALSE(b3.symplectic);
  EXPECT_EQ(b3.long_root, 0);
  EXPECT_TRUE(symplectic_type(datum(Family::B, 2)).symplectic);
  EXPECT_FALSE(symplectic_type(datum(Family::G, 2)).symplectic);
}

class RootDataAllTypes : public ::testing::TestWithParam<DynkinType> {};

TEST_P(RootDataAllTypes, CartanInvariants) {
  const RootDatum d = make_root_datum(GetParam());
  const int r = d.rank();
  int edges = 0;
  for (int i = 0; i < r; ++i) {
    EXPECT_EQ(d.cartan(i, i), 2);
    for (int j = 0; j < r; ++j) {
      if (i == j) continue;
      const int nij = d.cartan_integer(i, j);
      const int nji = d.cartan_integer(j, i);
      EXPECT_GE(nij, 0);
      EXPECT_LE(nij, 3);
      EXPECT_EQ(nij == 0, nji == 0);
      EXPECT_LE(nij * nji, 3);
      if (nij != nji) {
        EXPECT_NE(d.length_class(i), d.length_class(j));
      }
      if (i < j && nij != 0) ++edges;
    }
  }
  EXPECT_EQ(edges, r - 1);
}

TEST_P(RootDataAllTypes, PositiveRootsMatchClosedForm) {
  const RootDatum d = make_root_datum(GetParam());
  const auto roots = positive_roots(d);
  EXPECT_EQ(roots.size(), expected_positive_count(d.type()));
  std::set<std::vector<int>> seen;
  for (const Root &a : roots) {
    EXPECT_TRUE(a.positive());
    EXPECT_TRUE(seen.insert(a.coords).second);
    // Closed under simple reflections, up to sign.
    for (int i = 0; i < d.rank(); ++i) {
      Root b = reflect_root(d, i, a);
      bool nonneg = std::all_of(b.coords.begin(), b.coords.end(), [](int c) { return c >= 0; });
      bool nonpos = std::all_of(b.coords.begin(), b.coords.end(), [](int c) { return c <= 0; });
      ASSERT_TRUE(nonneg || nonpos);
    }
  }
}

TEST_P(RootDataAllTypes, SymplecticExactlyForC) {
  const RootDatum d = make_root_datum(GetParam());
  const bool expect = d.type().family == Family::C || (d.type().family == Family::A && d.rank() == 1);
  EXPECT_EQ(symplectic_type(d).symplectic, expect);
  if (d.type().family == Family::C) {
    int longs = 0;
    for (int i = 0; i < d.rank(); ++i) longs += d.length_class(i) == RootLength::Long;
    EXPECT_EQ(longs, 1);
  }
}

INSTANTIATE_TEST_SUITE_P(RankUpTo8, RootDataAllTypes,
                         ::testing::ValuesIn(a1cell::testing::irreducible_types(8)),
                         a1cell::testing::type_name);
