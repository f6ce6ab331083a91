#pragma once

#include <cstdint>
#include <map>

#include "fatpoints/field.hpp"
#include "fatpoints/geom.hpp"

namespace fatpoints {

// Polynomial over F_p in `nvars` variables, truncated past total degree
// `maxdeg`.  Small and exact; all the local (jet) computations run on this.
class TruncPoly {
 public:
  TruncPoly(PrimeField f, unsigned nvars, unsigned maxdeg)
      : f_(f), nvars_(nvars), maxdeg_(maxdeg) {}

  static TruncPoly constant(PrimeField f, unsigned nvars, unsigned maxdeg,
                            std::uint64_t c);
  static TruncPoly variable(PrimeField f, unsigned nvars, unsigned maxdeg,
                            unsigned i);

  const PrimeField& field() const { return f_; }
  unsigned nvars() const { return nvars_; }
  unsigned maxdeg() const { return maxdeg_; }
  const std::map<MultiIndex, std::uint64_t>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  std::uint64_t coeff(const MultiIndex& e) const;
  void add_term(const MultiIndex& e, std::uint64_t c);

  TruncPoly operator+(const TruncPoly& o) const;
  TruncPoly operator-(const TruncPoly& o) const;
  TruncPoly operator*(const TruncPoly& o) const;
  TruncPoly scaled(std::uint64_t c) const;
  TruncPoly pow(unsigned e) const;

  // Substitute series s (same ring, s(0) = 0) for the last variable.
  TruncPoly subst_last(const TruncPoly& s) const;

  // Synthetic division by (x_last - phi), phi a constant-free series in the
  // other variables: returns (q, rem) with *this = (x_last - phi) q + rem and
  // rem free of x_last, exactly in the truncated ring.
  std::pair<TruncPoly, TruncPoly> divmod_last(const TruncPoly& phi) const;

  // Inverse of a unit (nonzero constant term) in the truncated ring.
  TruncPoly unit_inverse() const;

  bool operator==(const TruncPoly& o) const { return terms_ == o.terms_; }

 private:
  PrimeField f_;
  unsigned nvars_, maxdeg_;
  std::map<MultiIndex, std::uint64_t> terms_;
};

// The graph of g near a frame origin: the series phi (in the tangential
// variables, last-variable slot kept zero) with gw(w_t, phi(w_t)) = 0 up to
// truncation, where gw = g in frame coordinates has linear part x_last.
TruncPoly graph_series(const TruncPoly& gw);

}  // namespace fatpoints
