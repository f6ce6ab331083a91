#include <doctest.h>

#include <map>
#include <string>

#include "fatpoints/errors.hpp"
#include "fatpoints/formal.hpp"
#include "fatpoints/monomial_ideal.hpp"
#include "fatpoints/rng.hpp"
#include "fatpoints/trunc_poly.hpp"

using namespace fatpoints;

namespace {

const PrimeField F(PrimeField::kDefaultPrime);

TruncPoly xpoly(unsigned nvars, const MultiIndex& e, std::uint64_t c = 1) {
  TruncPoly p(F, nvars, 8);
  p.add_term(e, c);
  return p;
}

// The double-point deformation (y - t)^2: unit tail, empty proper layers.
Deformation double_point_def() {
  Deformation def{VgModel::fat_point(2, 1), 1, F, 6, 8, {}};
  def.gens.resize(3);
  def.gens[2].insert_or_assign(0, xpoly(2, {0, 0}));
  return def;
}

}  // namespace

TEST_CASE("member expansion of the moving double point") {
  Deformation def = double_point_def();
  validate_deformation(def);
  TruncSeries Fs = build_member(def);

  // (y - t)^2 = y^2 - 2ty + t^2
  REQUIRE(Fs.coeffs.size() == 3);
  CHECK(series_coefficient(Fs, 0, 2) == xpoly(2, {0, 0}));
  CHECK(series_coefficient(Fs, 1, 1) ==
        xpoly(2, {0, 0}, F.reduce_signed(-2)));
  CHECK(series_coefficient(Fs, 2, 0) == xpoly(2, {0, 0}));
  CHECK(series_coefficient(Fs, 1, 0).is_zero());
  CHECK(series_coefficient(Fs, 0, 0).is_zero());

  CHECK(check_coefficient_membership(Fs, def.model, def.rate));
}

TEST_CASE("member expansion with a slower parameter") {
  // Single layer (x), rate 2, member x * (y - t^2) = xy - x t^2.
  Deformation def{VgModel::fat_point(1, 1), 2, F, 6, 8, {}};
  def.gens.resize(2);
  def.gens[1].insert_or_assign(0, xpoly(2, {1, 0}));
  validate_deformation(def);
  TruncSeries Fs = build_member(def);

  REQUIRE(Fs.coeffs.size() == 2);
  TruncPoly f0 = series_coefficient(Fs, 0, 1);
  CHECK(f0 == xpoly(2, {1, 0}));
  CHECK(series_coefficient(Fs, 2, 0) ==
        xpoly(2, {1, 0}, F.reduce_signed(-1)));

  // Truncation must leave room for the tail factor.
  Deformation tight = def;
  tight.trunc = 1;
  CHECK_THROWS_AS(build_member(tight), TruncationTooSmall);
}

TEST_CASE("the zero deformation builds the zero member") {
  Deformation def{VgModel::fat_point(2, 1), 1, F, 6, 8, {}};
  def.gens.resize(3);
  validate_deformation(def);
  TruncSeries Fs = build_member(def);
  CHECK(Fs.coeffs.empty());
  CHECK(check_coefficient_membership(Fs, def.model, def.rate));
  CHECK(check_slicing(Fs, def.model, def.rate, 1) == SlicingOutcome::Holds);
}

TEST_CASE("deformation validation rejects malformed data") {
  Deformation def = double_point_def();
  def.gens.resize(2);  // needs height + 1 = 3
  CHECK_THROWS_AS(validate_deformation(def), Error);

  // A coefficient leaving its layer: x is not in I_0 = (x^2).
  Deformation leak = double_point_def();
  leak.gens[0].insert_or_assign(0, xpoly(2, {1, 0}));
  CHECK_THROWS_AS(validate_deformation(leak), Error);
  // The same polynomial is legal one layer up, where I_1 = (x).
  Deformation fine = double_point_def();
  fine.gens[1].insert_or_assign(0, xpoly(2, {1, 0}));
  CHECK_NOTHROW(validate_deformation(fine));

  // Coefficients must be pure x-polynomials.
  Deformation ybad = double_point_def();
  ybad.gens[2].insert_or_assign(1, xpoly(2, {0, 1}));
  CHECK_THROWS_AS(validate_deformation(ybad), Error);

  // t-exponent beyond the truncation order.
  Deformation deep = double_point_def();
  deep.gens[2].insert_or_assign(7, xpoly(2, {0, 0}));
  CHECK_THROWS_AS(validate_deformation(deep), Error);
}

TEST_CASE("closed-form coefficients match the expansion") {
  Deformation def = double_point_def();
  TruncSeries Fs = build_member(def);
  for (unsigned alpha = 0; alpha <= 2; ++alpha)
    for (unsigned beta = 0; beta <= 2; ++beta)
      CHECK(series_coefficient(Fs, alpha, beta) ==
            coefficient_formula(def, alpha, beta));

  // The (1,1) coefficient is the signed binomial pull of the tail unit.
  CHECK(coefficient_formula(def, 1, 1) ==
        xpoly(2, {0, 0}, F.reduce_signed(-2)));

  // A two-layer deformation with content in every slot.
  Deformation mix{VgModel::fat_point(2, 1), 1, F, 6, 8, {}};
  mix.gens.resize(3);
  mix.gens[0].insert_or_assign(1, xpoly(2, {2, 0}, 5));       // x^2 t
  mix.gens[1].insert_or_assign(0, xpoly(2, {1, 0}, 3));       // 3x
  mix.gens[1].insert_or_assign(2, xpoly(2, {3, 0}, 7));       // 7x^3 t^2
  mix.gens[2].insert_or_assign(0, xpoly(2, {0, 0}, 2));       // unit tail
  validate_deformation(mix);
  TruncSeries Fm = build_member(mix);
  for (unsigned alpha = 0; alpha <= 6; ++alpha)
    for (unsigned beta = 0; beta <= 2; ++beta)
      CHECK(series_coefficient(Fm, alpha, beta) ==
            coefficient_formula(mix, alpha, beta));
  CHECK(check_coefficient_membership(Fm, mix.model, mix.rate));
}

TEST_CASE("membership notices out-of-staircase terms") {
  // Hand-built series with F_0 = y: the y-coefficient 1 must lie in
  // I_1 = (x) and does not.
  TruncSeries bad{F, 2, 8, 6, {}};
  TruncPoly y(F, 2, 8);
  y.add_term({0, 1}, 1);
  bad.coeffs.emplace(0, y);
  CHECK_FALSE(check_coefficient_membership(bad, VgModel::fat_point(2, 1), 1));

  // Deeper t-powers relax the requirement: F_2 = y is fine (index 3 >= h).
  TruncSeries ok{F, 2, 8, 6, {}};
  ok.coeffs.emplace(2, y);
  CHECK(check_coefficient_membership(ok, VgModel::fat_point(2, 1), 1));
}

TEST_CASE("slicing verdicts") {
  VgModel model = VgModel::fat_point(2, 1);  // layers (x^2), (x)

  // The moving double point satisfies the hypothesis and the conclusion.
  TruncSeries Fs = build_member(double_point_def());
  CHECK(check_slicing(Fs, model, 1, 1) == SlicingOutcome::Holds);

  // A constant term in some sliced coefficient blocks the hypothesis.
  TruncSeries unmet{F, 2, 8, 6, {}};
  unmet.coeffs.emplace(0, xpoly(2, {2, 0}));  // x^2, a y^0 term
  CHECK(check_slicing(unmet, model, 1, 1) ==
        SlicingOutcome::PreconditionUnmet);

  // F_0 = x y: divisible by y at every sliced index, but x fails the
  // shifted staircase (needs I_0 = (x^2)).
  TruncSeries viol{F, 2, 8, 6, {}};
  TruncPoly xy(F, 2, 8);
  xy.add_term({1, 1}, 1);
  viol.coeffs.emplace(0, xy);
  CHECK(check_slicing(viol, model, 1, 1) == SlicingOutcome::Violated);

  // The same limit is fine when slicing the top layer leaves y^1 pointing
  // at I_... nothing below p: p = 0 keeps indexes beta > 0 unshifted.
  CHECK(check_slicing(viol, model, 1, 0) == SlicingOutcome::Holds);

  CHECK_THROWS_AS(check_slicing(Fs, model, 1, 2), Error);
  CHECK(std::string(slicing_outcome_name(SlicingOutcome::Holds)) == "holds");
  CHECK(std::string(slicing_outcome_name(SlicingOutcome::Violated)) ==
        "violated");
  CHECK(std::string(slicing_outcome_name(SlicingOutcome::PreconditionUnmet)) ==
        "precondition-unmet");
}

TEST_CASE("random corpus: clean deformations verify, mutants get caught") {
  FormalParams p;
  p.count = 25;
  p.seed = 5;
  p.inject_mutants = true;
  FormalSummary sum = run_formal_corpus(p);
  CHECK(sum.count == 25);
  CHECK(sum.membership_passes == 25);
  CHECK(sum.formula_matches == 25);
  CHECK(sum.violations == 0);
  CHECK(sum.slicing_holds + sum.slicing_unmet == 25);
  CHECK(sum.mutants_injected == 25);
  CHECK(sum.mutants_detected == 25);
  CHECK(sum.all_good());

  // Deterministic in the seed.
  FormalSummary again = run_formal_corpus(p);
  CHECK(to_json(again) == to_json(sum));

  nlohmann::json j = to_json(sum);
  CHECK(j["schema"] == "fatpoints/formal_summary/1");
  CHECK(j["all_good"] == true);
}

TEST_CASE("corpus parameters are honored jointly") {
  // Even adversarial caps (rate * height far above trunc) must be clamped
  // into buildable deformations rather than crash.
  FormalParams p;
  p.count = 10;
  p.max_height = 6;
  p.max_rate = 6;
  p.trunc = 6;
  p.seed = 9;
  FormalSummary sum = run_formal_corpus(p);
  CHECK(sum.membership_passes == 10);
  CHECK(sum.violations == 0);

  Rng rng(3);
  for (int i = 0; i < 50; ++i) {
    Deformation def = random_deformation(p, rng);
    CHECK(def.rate * def.model.height() <= def.trunc);
    CHECK_NOTHROW(validate_deformation(def));
  }
}
