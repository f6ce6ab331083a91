#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fatpoints/oracle.hpp"
#include "fatpoints/schemes.hpp"

namespace fatpoints {

// A claim "this configuration kills every form of degree d", normalized so
// that the claim is plausible: enough conditions (deg >= h0) and a divisor
// that is not overloaded (trace <= h0 of the divisor).
struct Candidate {
  Configuration z;
  unsigned d = 0;

  bool operator==(const Candidate&) const = default;
};

// Throws CandidateViolation if the degree or trace bound fails.
void validate_candidate(const Candidate& c);

// Pads with free simple points up to deg >= h0(O(d)) and validates.  A
// constrained part already exceeding the divisor capacity is unfixable:
// TraceOverflow.
Candidate make_candidate(Configuration z, unsigned d);

nlohmann::json to_json(const Candidate& c);
Candidate candidate_from_json(const nlohmann::json& j);

// Order in which free points are pushed onto the divisor.
enum class Strategy { SmallestFirst, BiggestFirst };

const char* strategy_name(Strategy s);
Strategy strategy_from_name(const std::string& name);

// One reduction step.  The divisor absorbs, in strategy order, a maximal
// prefix of the free points (they specialize onto it and leave their
// one-lower fat point behind) and then exactly r further points
// differentially: those leave their simple residue behind and only their
// reduced point on the divisor.  The step consumes h0(divisor, d) conditions
// exactly, so the trace problem is square.
struct Derivation {
  Candidate derivative;                    // residual claim at degree d - a
  unsigned s = 0;                          // fully specialized free points
  unsigned r = 0;                          // differentially consumed points
  std::vector<std::size_t> specialized;    // component indices, step order
  std::vector<std::size_t> consumed;       // component indices, step order
  std::vector<unsigned> dime_mults;        // point multiplicities cut on the
                                           // divisor (r trailing ones)
  std::vector<MonomialIdeal> dime_schemes; // model traces, if any
};

// Throws NotDerivable when the free points cannot supply the missing
// conditions, CandidateViolation when the candidate or its residual is
// malformed.
Derivation derive(const Candidate& c, Strategy strategy = Strategy::SmallestFirst);

// The trace problem as a candidate on a hyperplane P^(N-1).  Only defined
// for hyperplane divisors (a == 1) without model traces; the result is an
// exactly balanced claim (degree == h0).
Candidate dime_candidate(const Candidate& parent, const Derivation& drv);

// Reduction step in which the residual divisor drops to degree a - 1
// (requires a >= 2).
Candidate derive_concentrated(const Candidate& c,
                              Strategy strategy = Strategy::SmallestFirst);

// Two reduction steps in which the second-step divisor degenerates into a
// degree-alpha part through some of the once-specialized points (freeing
// them) and a residual divisor of degree a - alpha.  At most
// h0(O(alpha)) - 1 points can be freed.  Requires 0 < alpha < a.
Candidate derive_second_special(const Candidate& c, unsigned alpha,
                                Strategy strategy = Strategy::SmallestFirst);

// ---- univariate (P^1) layer -------------------------------------------

// Hasse collocation matrix: one row per (node, order < mult) pair, one
// column per exponent; entry C(e, beta) node^(e - beta).
DenseMatrix collocation_matrix(const std::vector<std::uint64_t>& exponents,
                               const std::vector<unsigned>& mults,
                               const std::vector<std::uint64_t>& nodes,
                               const PrimeField& f);

// prod_{i<j} (t_j - t_i)^(m_i m_j): the collocation determinant on the full
// space of degree-d polynomials, up to a nonzero factor, in any
// characteristic.  Nonzero iff the nodes are distinct.
std::uint64_t wronskian_product(const std::vector<unsigned>& mults,
                                const std::vector<std::uint64_t>& nodes,
                                const PrimeField& f);

// Full-space check at degree d = sum(mults) - 1 with random distinct nodes;
// computes the product and cross-checks it against the matrix rank (the two
// must agree: both routes are exact).
bool wronskian_check(const std::vector<unsigned>& mults, unsigned d,
                     std::uint64_t prime, std::uint64_t seed);

// Rank route on an exponent subspace, where characteristic-p degeneracy is
// possible (e.g. {1, t^2} with a double node over F_2).
bool subspace_collocation_full_rank(const std::vector<std::uint64_t>& exponents,
                                    const std::vector<unsigned>& mults,
                                    std::uint64_t prime, std::uint64_t seed);

// ---- certification ----------------------------------------------------

struct CertifyOptions {
  std::optional<unsigned> base_degree;     // default: largest d with
                                           // h0(O(d)) <= brute_force_max_cols
  std::size_t brute_force_max_cols = 512;
  unsigned trials = 2;
  std::uint64_t prime = PrimeField::kDefaultPrime;
  std::uint64_t seed = 0;
  Strategy strategy = Strategy::SmallestFirst;
};

struct CertNode {
  enum class Kind { HoraceStep, BruteForceLeaf, WronskianLeaf, TrivialLeaf };

  Kind kind = Kind::TrivialLeaf;
  Candidate candidate;

  // HoraceStep
  unsigned s = 0, r = 0;
  std::vector<std::size_t> specialized, consumed;
  std::unique_ptr<CertNode> trace_child, residual_child;

  // BruteForceLeaf
  std::optional<Verdict> verdict;

  // WronskianLeaf
  std::vector<unsigned> mults;
  std::uint64_t leaf_prime = 0, leaf_seed = 0;

  std::string reason;  // TrivialLeaf
};

struct Certificate {
  CertNode root;
  CertifyOptions options;
};

std::size_t node_count(const CertNode& n);
nlohmann::json to_json(const Certificate& c);

// Raised when some reduction bottoms out in a losing configuration; carries
// the first candidate whose claim could not be established.
struct CertificationFailed : Error {
  Candidate failing;
  CertificationFailed(std::string msg, Candidate c)
      : Error(std::move(msg)), failing(std::move(c)) {}
};

// Decide-and-certify: reduce with Horace steps, close with Wronskian leaves
// on P^1, randomized rank leaves at low degree, and trivialities.  Every
// leaf is an established win, so the tree is a proof sketch with checkable
// leaves.  Throws CertificationFailed when the claim cannot be established.
Certificate certify(const Candidate& c, const CertifyOptions& opts = {});

// ---- schedule / threshold helpers --------------------------------------

// Least a >= 1 with (m-1)*a < (a-1)*(m+n-1): from this divisor degree on,
// one reduction step strictly shrinks the per-point load m relative to the
// divisor capacity.  n >= 1 is the divisor dimension; m >= 2.
unsigned stability_threshold(unsigned m, unsigned n);

// Least alpha >= 1 such that a degree-alpha hypersurface of P^N can be put
// through `npoints` generic points: h0(O(alpha)) - 1 >= npoints.
unsigned alpha_for(std::uint64_t npoints, unsigned N);

// Smallest d >= 0 such that on a smooth curve of genus g, deg(M + dL)
// simultaneously exceeds the multiplicity load and the canonical bound:
//   deg M + d deg L + 1 - g > m(m-1)(g-1)/2   and
//   deg M + d deg L > 2g - 2.
long long curve_threshold(unsigned m, unsigned g, long long degL,
                          long long degM);

struct PlanStep {
  std::string name;
  std::string inequality;
  bool existential = false;  // ingredient known to exist, not constructed
  std::string note;
};

struct PlanReport {
  unsigned m = 0;
  unsigned n = 0;   // divisor dimension; ambient space is P^(n+1)
  bool trivial = false;                 // m == 1
  unsigned stability_a = 0;             // stability_threshold(m, n)
  std::uint64_t per_point_trace = 0;    // C(m+n-1, n)
  std::vector<PlanStep> steps;
};

nlohmann::json to_json(const PlanReport& r);

PlanReport plan_schedule(unsigned m, unsigned n);

}  // namespace fatpoints
