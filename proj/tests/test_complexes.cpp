#include <gtest/gtest.h>

#include "a1cell/complexes.hpp"
#include "a1cell/homology.hpp"
#include "test_support.hpp"

using namespace a1cell;

namespace {

const MWScalar eta = MWScalar::eta();
const MWScalar one(1);
const MWScalar zero;

MWMatrix mw(std::initializer_list<std::initializer_list<MWScalar>> rows) { return MWMatrix(rows); }

RootDatum datum(Family f, int r) { return make_root_datum({f, r}); }

std::size_t column_for(const Pi1Presentation &p, int i, int j) {
  for (std::size_t c = 0; c < p.columns.size(); ++c)
    if (p.columns[c].i() == i && p.columns[c].j() == j) return c;
  throw std::logic_error("no such column");
}

} // namespace

TEST(Complexes, RankOneDifferentials) {
  const GradedComplex sl2 = build_rank_one(true);
  EXPECT_EQ(sl2.source_rows(1), mw({{eta, zero}, {one, zero}}));
  const GradedComplex pgl2 = build_rank_one(false);
  EXPECT_EQ(pgl2.source_rows(1), mw({{zero, zero}, {MWScalar::h(), zero}}));
  const auto rc = realize_complex(sl2, Realization::real());
  const BigMatrix expected{{2, 0}, {1, 0}};
  EXPECT_EQ(rc.differential(1).transpose(), expected);
}

TEST(Complexes, ProjectiveSpaceDifferentials) {
  EXPECT_THROW(build_projective_space(0), InvalidInput);
  EXPECT_EQ(build_projective_space(1).differential(1), mw({{zero}}));
  EXPECT_EQ(build_projective_space(2).differential(2), mw({{eta}}));
  const GradedComplex p4 = build_projective_space(4);
  const std::vector<MWScalar> expected{zero, eta, zero, eta};
  for (int i = 1; i <= 4; ++i) EXPECT_EQ(p4.differential(i)(0, 0), expected[i - 1]) << i;
  for (int i = 0; i <= 4; ++i) EXPECT_EQ(p4.generators[i].front().weight, i);
}

TEST(Complexes, PuncturedAffineDifferentials) {
  EXPECT_THROW(build_punctured_affine(0), InvalidInput);
  const GradedComplex c = build_punctured_affine(4);
  for (int i = 1; i <= 4; ++i) {
    if (i % 2 == 1) EXPECT_EQ(c.source_rows(i), mw({{eta, zero}, {one, zero}}));
    else EXPECT_EQ(c.source_rows(i), mw({{zero, zero}, {MWScalar::minus_one_form(), eta}}));
  }
  const GradedComplex a2 = build_punctured_affine(1);
  const GradedComplex sl2 = build_rank_one(true);
  EXPECT_EQ(a2.differential(1), sl2.differential(1));
  for (int d = 0; d <= 1; ++d)
    for (std::size_t g = 0; g < 2; ++g) EXPECT_EQ(a2.generators[d][g].weight, sl2.generators[d][g].weight);
}

TEST(Complexes, Pi1PresentationA2) {
  const Pi1Presentation p = build_pi1_presentation(datum(Family::A, 2));
  ASSERT_EQ(p.columns.size(), 2u);
  ASSERT_EQ(p.rows.size(), 3u);
  for (std::size_t c = 0; c < 2; ++c) {
    const int i = p.columns[c].i();
    const int j = p.columns[c].j();
    EXPECT_EQ(realize(p.entries(p.milnor_row(i, j), c), Realization::milnor()), -1);
    const MWScalar &e = p.entries(p.mw_row(j), c);
    EXPECT_TRUE(e.is_unit()) << e.to_string();
    EXPECT_EQ(reduce_on_torsion(e), -1);
    EXPECT_TRUE(p.entries(p.mw_row(i), c).is_zero());
  }
  EXPECT_EQ(p.tau_symbols.size(), 1u);
}

TEST(Complexes, Pi1PresentationC2HasHyperbolicEntry) {
  const Pi1Presentation p = build_pi1_presentation(datum(Family::C, 2));
  const std::size_t c = column_for(p, 0, 1);
  EXPECT_EQ(p.entries(p.mw_row(1), c), MWScalar::h() * MWScalar::epsilon());
}

TEST(Complexes, Pi1PresentationA3NonAdjacentCell) {
  const Pi1Presentation p = build_pi1_presentation(datum(Family::A, 3));
  const std::size_t c = column_for(p, 0, 2);
  EXPECT_FALSE(p.columns[c].adjacent);
  EXPECT_EQ(p.entries(p.milnor_row(0, 2), c), MWScalar::epsilon());
  for (int i = 0; i < 3; ++i) EXPECT_TRUE(p.entries(p.mw_row(i), c).is_zero());
}

TEST(Complexes, Pi1PresentationRankOneIsEmpty) {
  const Pi1Presentation p = build_pi1_presentation(datum(Family::A, 1));
  EXPECT_EQ(p.rows.size(), 1u);
  EXPECT_TRUE(p.columns.empty());
}

TEST(Complexes, FlagExamples) {
  const GradedComplex a1 = build_flag_low_degrees(datum(Family::A, 1));
  EXPECT_EQ(a1.count(2), 0u);
  EXPECT_EQ(a1.count(1), 1u);
  const GradedComplex a2 = build_flag_low_degrees(datum(Family::A, 2));
  for (std::size_t c = 0; c < a2.count(2); ++c) {
    int nonzero = 0;
    for (std::size_t r = 0; r < 2; ++r)
      if (!a2.differential(2)(r, c).is_zero()) {
        ++nonzero;
        EXPECT_EQ(a2.differential(2)(r, c), eta);
      }
    EXPECT_EQ(nonzero, 1);
  }
  const RootDatum c2d = datum(Family::C, 2);
  const GradedComplex c2 = build_flag_low_degrees(c2d);
  const auto cells = WeylGroup(c2d).codim2_cells(WeylGroup(c2d).longest_word());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const int j = cells[c].j();
    if (cells[c].i() == 0) EXPECT_TRUE(c2.differential(2)(j, c).is_zero()); // h eta = 0
    else EXPECT_EQ(c2.differential(2)(j, c), eta);
  }
  EXPECT_TRUE(c2.differential(1).is_zero());
}

TEST(Complexes, Pi3A2SymmetricCoordinates) {
  const Pi3Complex c = build_pi3_complex(datum(Family::A, 2));
  ASSERT_EQ(c.cells.size(), 2u);
  std::set<std::vector<long long>> cols{symmetric_coordinates(c, 0), symmetric_coordinates(c, 1)};
  EXPECT_EQ(cols, (std::set<std::vector<long long>>{{0, 1, 1}, {1, 0, 1}}));
  EXPECT_THROW(build_pi3_complex(datum(Family::A, 1)), InvalidInput);
}

class ComplexesAllTypes : public ::testing::TestWithParam<DynkinType> {};

TEST_P(ComplexesAllTypes, Pi1PresentationShape) {
  const RootDatum d = make_root_datum(GetParam());
  const Pi1Presentation p = build_pi1_presentation(d);
  const std::size_t r = d.rank();
  std::size_t mw = 0, milnor = 0;
  for (const auto &row : p.rows) (row.milnor ? milnor : mw)++;
  EXPECT_EQ(mw, r);
  EXPECT_EQ(milnor, r * (r - 1) / 2);
  for (std::size_t c = 0; c < p.columns.size(); ++c) {
    std::size_t nonzero = 0;
    for (std::size_t row = 0; row < p.rows.size(); ++row) nonzero += !p.entries(row, c).is_zero();
    EXPECT_EQ(nonzero, p.columns[c].adjacent ? 2u : 1u) << p.columns[c].name();
  }
}

TEST_P(ComplexesAllTypes, BuildersSatisfyWeightsAndSquareZero) {
  const RootDatum d = make_root_datum(GetParam());
  const Pi1Presentation p = build_pi1_presentation(d);
  std::vector<GradedComplex> complexes{build_flag_low_degrees(d), to_graded_complex(p)};
  for (const auto &c : complexes) {
    EXPECT_NO_THROW(c.check_weights()) << c.name;
    const auto symbols = c.free_symbols();
    for (const auto &a : sign_assignments(symbols).assignments)
      for (const auto &r : {Realization::real(), Realization::complex_top(), Realization::milnor()})
        EXPECT_NO_THROW(realize_complex(c, r, a)) << c.name << " " << r.name();
  }
}

TEST_P(ComplexesAllTypes, Pi3CompositeZeroAndCellCount) {
  const RootDatum d = make_root_datum(GetParam());
  if (d.rank() < 2) GTEST_SKIP();
  const Pi3Complex c = build_pi3_complex(d);
  EXPECT_TRUE((c.right * c.left).is_zero());
  EXPECT_EQ(static_cast<int>(c.left.cols()), d.rank() * (d.rank() + 1) / 2 - 1);
  for (int s : c.relative_signs) EXPECT_EQ(s, 1);
}

INSTANTIATE_TEST_SUITE_P(RankUpTo8, ComplexesAllTypes,
                         ::testing::ValuesIn(a1cell::testing::irreducible_types(8)),
                         a1cell::testing::type_name);

TEST(Complexes, SmallBuildersSatisfyWeightsAndSquareZero) {
  std::vector<GradedComplex> complexes{build_rank_one(true), build_rank_one(false)};
  for (int n = 1; n <= 10; ++n) {
    complexes.push_back(build_projective_space(n));
    complexes.push_back(build_punctured_affine(n));
  }
  for (const auto &c : complexes) {
    EXPECT_NO_THROW(c.check_weights()) << c.name;
    for (const auto &r : {Realization::real(), Realization::complex_top(), Realization::milnor()})
      EXPECT_NO_THROW(realize_complex(c, r)) << c.name << " " << r.name();
  }
}
