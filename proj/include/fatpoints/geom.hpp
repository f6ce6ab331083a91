#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "fatpoints/field.hpp"
#include "fatpoints/rng.hpp"

namespace fatpoints {

// Exponent vector; length fixes the variable count (N+1 homogeneous, or N in
// an affine chart -- call sites say which).
using MultiIndex = std::vector<unsigned>;

unsigned total_degree(const MultiIndex& e);

// Exact C(n, k) as uint64; throws on overflow (far beyond any degree used
// here).
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

// C(n, k) mod p via the base-p digit decomposition; each digit block is an
// exact product with modular inverses (safe since digits are < p).  Works for
// n >= p, which plain product formulas do not.
std::uint64_t binom_mod(std::uint64_t n, std::uint64_t k, const PrimeField& f);

// dim H^0(P^N, O(d)) = C(d+N, N); zero for negative twists.
std::uint64_t proj_h0(unsigned N, long long d);

// dim H^0(G_a, O(d)) for a degree-a hypersurface G_a in P^N.
std::uint64_t divisor_h0(unsigned N, unsigned a, long long d);

// All degree-d exponent vectors in N+1 variables, lexicographically
// descending (first variable's exponent decreases outermost).  Size is
// C(d+N, N).
std::vector<MultiIndex> monomial_basis(unsigned N, unsigned d);

// All affine exponent vectors in `nvars` variables of total degree <= order,
// listed by total degree, then lexicographically descending within a degree.
// This is the row order of every conditions matrix.
std::vector<MultiIndex> jet_basis(unsigned nvars, unsigned order);

// Hasse (divided-power) derivative of the monomial x^gamma, order beta,
// evaluated at the affine point: prod C(gamma_i, beta_i) * x^(gamma-beta).
// Characteristic-safe, unlike iterated d/dx.
std::uint64_t hasse_eval(const MultiIndex& gamma, const MultiIndex& beta,
                         const std::vector<std::uint64_t>& point,
                         const PrimeField& f);

struct ProjPoint {
  std::vector<std::uint64_t> x;  // N+1 residues, not all zero

  bool operator==(const ProjPoint&) const = default;

  // Dehomogenization chart: the largest index with a nonzero coordinate.
  unsigned chart() const;
  // Affine coordinates in that chart (chart coordinate scaled to 1 and
  // omitted); length N.
  std::vector<std::uint64_t> affine(const PrimeField& f) const;
};

// Sparse homogeneous form of degree `degree` in N+1 variables; terms are kept
// sorted and zero-free so equal forms compare equal.
class Hypersurface {
 public:
  Hypersurface(unsigned N, unsigned degree,
               std::vector<std::pair<MultiIndex, std::uint64_t>> terms,
               const PrimeField& f);

  unsigned ambient() const { return N_; }
  unsigned degree() const { return degree_; }
  const std::vector<std::pair<MultiIndex, std::uint64_t>>& terms() const {
    return terms_;
  }

  std::uint64_t eval(const std::vector<std::uint64_t>& coords,
                     const PrimeField& f) const;
  // All N+1 formal partials at a point.  Plain coefficient shifts; valid in
  // any characteristic.
  std::vector<std::uint64_t> gradient(const std::vector<std::uint64_t>& coords,
                                      const PrimeField& f) const;

  bool operator==(const Hypersurface&) const = default;

 private:
  unsigned N_, degree_;
  std::vector<std::pair<MultiIndex, std::uint64_t>> terms_;
};

Hypersurface random_hypersurface(const PrimeField& f, unsigned N,
                                 unsigned degree, Rng& rng);
Hypersurface hyperplane_last_coord(const PrimeField& f, unsigned N);

// Roots of a dense univariate polynomial over F_p (index = degree).  For the
// zero polynomial every value is a root; an empty optional-free vector with a
// flag would be clumsy, so that case returns {0, 1, ..., min(p, 4)-1}.
std::vector<std::uint64_t> poly_roots(const std::vector<std::uint64_t>& coeffs,
                                      const PrimeField& f, Rng& rng);

// Random point of the smooth locus of g: fixes all but one coordinate at
// random, enumerates roots of the resulting univariate polynomial, keeps
// points where the gradient does not vanish.  Throws SamplingExhausted when
// the attempt budget runs out (e.g. g a square).
ProjPoint sample_point_on(const Hypersurface& g, const PrimeField& f, Rng& rng,
                          unsigned max_attempts = 200);

// Affine coordinates adapted to a smooth point P of g: chart centered at P,
// with an invertible linear change making the linear part of g exactly the
// last variable.  w-coordinates: x_affine = origin + A * w.
struct Frame {
  unsigned chart;                            // dehomogenization index
  std::vector<std::uint64_t> origin;         // N affine coords of P
  std::vector<std::vector<std::uint64_t>> a; // N x N change of coordinates
};

Frame frame_at(const Hypersurface& g, const ProjPoint& p, const PrimeField& f);

}  // namespace fatpoints
