#pragma once

#include <cstdint>
#include <vector>

#include "fatpoints/geom.hpp"

namespace fatpoints {

// Monomial ideal in `nvars` variables, held by its minimal generators.
class MonomialIdeal {
 public:
  // The whole ring (unit ideal).
  static MonomialIdeal full(unsigned nvars);
  // The k-th power of the maximal ideal (generators: all monomials of
  // degree exactly k); k = 0 gives the full ring.
  static MonomialIdeal max_power(unsigned nvars, unsigned k);

  MonomialIdeal(unsigned nvars, std::vector<MultiIndex> gens);

  unsigned nvars() const { return nvars_; }
  const std::vector<MultiIndex>& gens() const { return gens_; }

  bool is_full() const;
  bool contains(const MultiIndex& mono) const;
  bool contains(const MonomialIdeal& other) const;  // other subset of this

  // Monomials outside the ideal.  Throws if the colength is infinite
  // (some variable has no pure power among the generators).
  std::vector<MultiIndex> standard_monomials() const;
  std::uint64_t colength() const;
  bool has_finite_colength() const;

  bool operator==(const MonomialIdeal&) const = default;

 private:
  unsigned nvars_;
  std::vector<MultiIndex> gens_;  // minimal, sorted
};

// Vertically graded local model on a divisor: layers I_0 c I_1 c ... c
// I_{h-1} of monomial ideals in the tangential variables; the normal
// direction contributes one layer per power, everything from the h-th power
// up is unconstrained.  Conditions are one per standard monomial of the
// associated monomial ideal in (tangential, normal) variables.
class VgModel {
 public:
  VgModel(unsigned tangential_vars, std::vector<MonomialIdeal> layers);

  // Fat point of multiplicity m: layers n^m, n^(m-1), ..., n.
  static VgModel fat_point(unsigned m, unsigned tangential_vars);
  // Simple residue of multiplicity m >= 2: the fat point with its deepest
  // normal slot sliced away; layers n^m, ..., n^2 of height m-1.
  static VgModel simple_residue(unsigned m, unsigned tangential_vars);

  unsigned height() const { return static_cast<unsigned>(layers_.size()); }
  bool empty() const { return layers_.empty(); }
  unsigned tangential_vars() const { return nvars_; }
  const MonomialIdeal& layer(unsigned i) const { return layers_.at(i); }
  const std::vector<MonomialIdeal>& layers() const { return layers_; }

  std::uint64_t degree() const;  // sum of layer colengths
  // Standard monomials in (tangential..., normal) variables, i.e. the
  // conditions this model imposes.
  std::vector<MultiIndex> standard_monomials() const;

  // Trace and residual with respect to the divisor: Tr = I_0; Res drops I_0
  // and shifts the layers down.
  MonomialIdeal trace() const { return layers_.front(); }
  VgModel residual() const;

  // Layer-p trace and residual: Tr_p picks I_p; Res_p removes the p-th slot
  // and shifts the higher layers down by one.  p must index an existing
  // layer.
  MonomialIdeal tr_p(unsigned p) const;
  VgModel res_p(unsigned p) const;

  bool operator==(const VgModel&) const = default;

 private:
  unsigned nvars_;
  std::vector<MonomialIdeal> layers_;
};

}  // namespace fatpoints
