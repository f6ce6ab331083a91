#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "fatpoints/schemes.hpp"

namespace fatpoints {

struct OracleOptions {
  unsigned trials = 2;
  std::uint64_t prime = PrimeField::kDefaultPrime;
  std::uint64_t seed = 0;
};

// The sampled instance that achieved the reported kernel dimension; enough
// to rebuild the matrix and reproduce the numbers exactly.
struct OracleWitness {
  unsigned trial = 0;
  std::vector<ProjPoint> supports;          // one per component, in order
  std::optional<Hypersurface> divisor;
};

struct Verdict {
  std::uint64_t expected_h0 = 0;  // max(h0(O(d)) - deg Z, 0)
  std::uint64_t computed_h0 = 0;  // min kernel dimension over the trials
  bool maximal_rank = false;      // computed == expected
  unsigned trials = 0;
  std::uint64_t prime = 0;
  std::uint64_t seed = 0;
  OracleWitness witness;
};

nlohmann::json to_json(const Verdict& v);

// Monte Carlo dimension count: samples generic supports (and a generic
// divisor if needed) per trial and keeps the smallest kernel.  Kernel
// dimensions only shrink under genericity, so computed_h0 == expected_h0 is
// a one-sided certificate of maximal rank; computed > expected on every
// trial is strong evidence of speciality, not a proof.
// Requires prime > d so chart and frame constructions stay generic.
Verdict generic_h0(const Configuration& z, unsigned d,
                   const OracleOptions& opts);

// True iff some trial reaches kernel dimension zero.
bool is_winning(const Configuration& z, unsigned d, const OracleOptions& opts);

// Reproduction of the positive-characteristic failure: the rational curve
// (t^2 : t^p : 1) on which every degree-d linear series is defective.  V_d
// is the pullback of degree-d forms; vanishing to order p is imposed at d
// smooth parameter values (repeated draws merge into deeper vanishing, since
// F_p has only p-1 nonzero parameters).
struct CuspidalReport {
  std::uint64_t p = 0;
  unsigned d = 0;
  std::uint64_t seed = 0;
  std::uint64_t h0_formula = 0;   // d*p + 1 - (p-1)(p-2)/2
  std::uint64_t dim_vd = 0;       // rank of the pullback span
  std::uint64_t conditions = 0;   // d*p rows
  std::uint64_t kernel_dim = 0;   // must be >= 1: maximal rank fails
  std::vector<std::uint64_t> parameters;  // sampled t values (with repeats)
};

nlohmann::json to_json(const CuspidalReport& r);

// Throws BadCharacteristic unless p is an odd prime; requires d >= p-2
// (below that the count h0 = dp+1-(p-1)(p-2)/2 stops being valid).
CuspidalReport cuspidal_counterexample(std::uint64_t p, unsigned d,
                                       std::uint64_t seed);

}  // namespace fatpoints
