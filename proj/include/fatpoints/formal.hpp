#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <json.hpp>

#include "fatpoints/monomial_ideal.hpp"
#include "fatpoints/rng.hpp"
#include "fatpoints/trunc_poly.hpp"

namespace fatpoints {

// F = sum_alpha F_alpha(x, y) t^alpha, truncated past t^trunc.  Chart
// variables are (x_1..x_tang, y) with y last; every F_alpha is a TruncPoly
// in those nvars = tang + 1 variables.
struct TruncSeries {
  PrimeField field{PrimeField::kDefaultPrime};
  unsigned nvars = 2;
  unsigned maxdeg = 8;
  unsigned trunc = 6;
  std::map<unsigned, TruncPoly> coeffs;  // zero coefficients are dropped
};

// A member of the deformed ideal
//   I_t = I_0[[t]] + I_1[[t]](y - t^r) + ... + I_{h-1}[[t]](y - t^r)^{h-1}
//         + ((y - t^r)^h),
// presented by its coefficient polynomials: gens[i] maps the t-exponent
// lambda to a_{i,lambda}(x), with a_{i,lambda} in layer I_i for i < h and
// unrestricted for i == h (the tail).  The member is
// F = sum_i a_i(x, t) (y - t^r)^i.
struct Deformation {
  VgModel model{0, {}};
  unsigned rate = 1;
  PrimeField field{PrimeField::kDefaultPrime};
  unsigned trunc = 6;
  unsigned maxdeg = 8;
  std::vector<std::map<unsigned, TruncPoly>> gens;  // size height()+1
};

// Shape and staircase membership of every a_{i,lambda} (pure x-polynomial,
// exponent <= trunc, member of its layer).  Mutant deformations skip this.
void validate_deformation(const Deformation& def);

// Expands F; throws TruncationTooSmall when trunc < rate * height (the tail
// factor alone would fall off the end).
TruncSeries build_member(const Deformation& def);

// x-polynomial coefficient of t^alpha y^beta in F (returned in the full
// chart ring with y-degree zero).
TruncPoly series_coefficient(const TruncSeries& F, unsigned alpha,
                             unsigned beta);

// Closed form of the same coefficient from the deformation data:
//   F_{alpha,beta} = sum_nu (-1)^nu C(beta+nu, beta) a_{beta+nu, alpha-nu*r}.
TruncPoly coefficient_formula(const Deformation& def, unsigned alpha,
                              unsigned beta);

// Every stored F_{alpha,beta} lies in layer I_{beta + floor(alpha/rate)}
// (full ring once the index reaches the height).
bool check_coefficient_membership(const TruncSeries& F, const VgModel& model,
                                  unsigned rate);

enum class SlicingOutcome { Holds, Violated, PreconditionUnmet };

const char* slicing_outcome_name(SlicingOutcome o);

// Slicing conclusion at layer p: when y divides F_alpha for every
// alpha in {0, r, ..., p*r}, the limit F_0 must lie in
//   I_0 y + I_1 y^2 + ... + I_{p-1} y^p + I_{p+1} y^{p+1} + ... + (y^h),
// i.e. layer p is cut out and everything below is shifted up by one power
// of y.  A failed divisibility hypothesis is reported, not thrown.
SlicingOutcome check_slicing(const TruncSeries& F, const VgModel& model,
                             unsigned rate, unsigned p);

// ---- corpus -------------------------------------------------------------

struct FormalParams {
  unsigned count = 100;
  unsigned max_tangential_vars = 2;  // each draw uses 1..max
  unsigned max_height = 4;
  unsigned max_rate = 3;
  unsigned trunc = 6;
  unsigned maxdeg = 8;
  std::uint64_t prime = PrimeField::kDefaultPrime;
  std::uint64_t seed = 0;
  bool inject_mutants = false;  // bump one coefficient out of its layer
};

Deformation random_deformation(const FormalParams& p, Rng& rng);

struct FormalSummary {
  unsigned count = 0;
  unsigned membership_passes = 0;
  unsigned formula_matches = 0;
  unsigned slicing_holds = 0;
  unsigned slicing_unmet = 0;
  unsigned violations = 0;
  unsigned mutants_injected = 0;
  unsigned mutants_detected = 0;

  bool all_good() const {
    return membership_passes == count && formula_matches == count &&
           violations == 0 && mutants_detected == mutants_injected;
  }
};

nlohmann::json to_json(const FormalSummary& s);

FormalSummary run_formal_corpus(const FormalParams& p);

}  // namespace fatpoints
