#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "schatlab/measure_space.hpp"

using namespace schatlab;

namespace {

MeasureSpace mixed_space() {
  return MeasureSpace(
      {{"a", 1.0}, {"b", 2.0}},
      {{{0.0, 1.0}, {{{0.0, 1.0}, 3.0}}},
       {{10.0, 10.5}, {{{10.0, 10.25}, 1.0}, {{10.25, 10.5}, 0.0}}}});
}

}  // namespace

TEST_CASE("construction validates atoms and pieces") {
  CHECK_THROWS_AS(MeasureSpace({{"a", 1.0}, {"a", 2.0}}, {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(MeasureSpace({{"a", 0.0}}, {}), std::invalid_argument);
  CHECK_THROWS_AS(MeasureSpace({{"a", -1.0}}, {}), std::invalid_argument);
  CHECK_THROWS_AS(MeasureSpace({{"", 1.0}}, {}), std::invalid_argument);

  // overlapping pieces
  CHECK_THROWS_AS(MeasureSpace({}, {{{0.0, 2.0}, {{{0.0, 2.0}, 1.0}}},
                                    {{1.0, 3.0}, {{{1.0, 3.0}, 1.0}}}}),
                  std::invalid_argument);
  // density partition with a gap
  CHECK_THROWS_AS(MeasureSpace({}, {{{0.0, 1.0}, {{{0.0, 0.4}, 1.0}}}}),
                  std::invalid_argument);
  // negative density
  CHECK_THROWS_AS(MeasureSpace({}, {{{0.0, 1.0}, {{{0.0, 1.0}, -2.0}}}}),
                  std::invalid_argument);
  // empty interval
  CHECK_THROWS_AS(MeasureSpace({}, {{{1.0, 1.0}, {}}}), std::invalid_argument);
}

TEST_CASE("measures and atom lookup") {
  const MeasureSpace space = mixed_space();
  CHECK(space.atom_measure() == 3.0);
  CHECK(space.diffuse_measure() == doctest::Approx(3.0 + 0.25));
  CHECK(space.total_measure() == doctest::Approx(6.25));
  REQUIRE(space.atom_index("b").has_value());
  CHECK(*space.atom_index("b") == 1);
  CHECK_FALSE(space.atom_index("zz").has_value());
}

TEST_CASE("integrate_abs_power closed forms") {
  const MeasureSpace space = mixed_space();
  SimpleFunction f;
  f.atom_values["a"] = Complex(0.0, 2.0);
  f.diffuse_values.push_back(
      {{0.0, 1.0}, {{{0.0, 0.5}, Complex(2.0, 0.0)}, {{0.5, 1.0}, 0.0}}});

  // |f|^1: atom a contributes |2i| * mass 1 = 2, the half cell contributes
  // 2 * density 3 * length 0.5 = 3.
  CHECK(integrate_abs_power(space, f, 1.0) == doctest::Approx(5.0));
  CHECK(integrate_abs_power(space, f, 2.0) == doctest::Approx(4.0 + 6.0));
  CHECK(integrate_abs_power(space, f, 3.0) == doctest::Approx(8.0 + 12.0));
}

TEST_CASE("function validation goes through refine") {
  const MeasureSpace space = mixed_space();
  SimpleFunction bad;
  bad.atom_values["nope"] = 1.0;
  CHECK_THROWS_AS(integrate_abs_power(space, bad, 1.0), std::domain_error);

  SimpleFunction misaligned;
  misaligned.diffuse_values.push_back({{0.0, 0.9}, {{{0.0, 0.9}, 1.0}}});
  CHECK_THROWS_AS(integrate_abs_power(space, misaligned, 1.0),
                  std::domain_error);

  SimpleFunction gap;
  gap.diffuse_values.push_back({{0.0, 1.0}, {{{0.0, 0.5}, 1.0}}});
  CHECK_THROWS_AS(integrate_abs_power(space, gap, 1.0), std::domain_error);
}

TEST_CASE("ess_sup ignores zero-density regions") {
  const MeasureSpace space = mixed_space();
  SimpleFunction f;
  f.atom_values["b"] = Complex(3.0, 4.0);  // modulus 5
  f.diffuse_values.push_back({{10.0, 10.5},
                              {{{10.0, 10.25}, Complex(1.0, 0.0)},
                               {{10.25, 10.5}, Complex(100.0, 0.0)}}});
  // the value 100 sits on the zero-density segment
  CHECK(ess_sup(space, f) == doctest::Approx(5.0));

  SimpleFunction g;
  g.diffuse_values.push_back({{0.0, 1.0}, {{{0.0, 1.0}, Complex(0.0, 7.0)}}});
  CHECK(ess_sup(space, g) == doctest::Approx(7.0));
}

TEST_CASE("decompose splits off the atoms and trims null pieces") {
  MeasureSpace space(
      {{"x", 4.0}},
      {{{0.0, 1.0}, {{{0.0, 0.25}, 1.0}, {{0.25, 0.5}, 2.0}, {{0.5, 1.0}, 0.0}}},
       {{5.0, 6.0}, {{{5.0, 6.0}, 0.0}}}});
  const Decomposition d = decompose(space);
  REQUIRE(d.atoms.size() == 1);
  CHECK(d.atoms[0].label == "x");
  // the all-zero piece [5,6) drops out, the adjacent supported segments merge
  REQUIRE(d.diffuse.size() == 1);
  REQUIRE(d.diffuse[0].support.size() == 1);
  CHECK(d.diffuse[0].support[0] == Interval{0.0, 0.5});
  CHECK(d.diffuse[0].measure == doctest::Approx(0.25 + 0.5));
  CHECK(d.atom_measure() == 4.0);
  CHECK(d.diffuse_measure() == doctest::Approx(0.75));

  CHECK_FALSE(is_atomless(space));
  CHECK(is_atomless(MeasureSpace({}, {{{0.0, 1.0}, {{{0.0, 1.0}, 1.0}}}})));
}

TEST_CASE("group invariance verdict") {
  const std::vector<double> flat{2.5, 2.5, 2.5};
  const GroupInvarianceVerdict yes = check_group_invariance(3, flat);
  CHECK(yes.invariant_counting);
  CHECK(yes.scale == 2.5);

  const std::vector<double> skew{1.0, 2.0, 1.0};
  CHECK_FALSE(check_group_invariance(3, skew).invariant_counting);

  CHECK_THROWS_AS(check_group_invariance(0, {}), std::invalid_argument);
  const std::vector<double> bad{1.0, 0.0};
  CHECK_THROWS_AS(check_group_invariance(2, bad), std::invalid_argument);
  CHECK_THROWS_AS(check_group_invariance(2, flat), std::invalid_argument);
}

TEST_CASE("integer lattice model") {
  const MeasureSpace lat = integer_lattice(3);
  CHECK(lat.atoms().size() == 7);
  CHECK(lat.diffuse().empty());
  CHECK(lat.atoms().front().label == "-3");
  CHECK(lat.atoms().back().label == "3");
  REQUIRE(lat.atom_index("0").has_value());
  for (const AtomEntry& atom : lat.atoms()) CHECK(atom.mass == 1.0);

  const SimpleFunction ind = SimpleFunction::indicator_of_atom("2");
  CHECK(integrate_abs_power(lat, ind, 1.0) == doctest::Approx(1.0));
}
