#include "fatpoints/trunc_poly.hpp"

#include "fatpoints/errors.hpp"

namespace fatpoints {

TruncPoly TruncPoly::constant(PrimeField f, unsigned nvars, unsigned maxdeg,
                              std::uint64_t c) {
  TruncPoly p(f, nvars, maxdeg);
  p.add_term(MultiIndex(nvars, 0), c);
  return p;
}

TruncPoly TruncPoly::variable(PrimeField f, unsigned nvars, unsigned maxdeg,
                              unsigned i) {
  TruncPoly p(f, nvars, maxdeg);
  MultiIndex e(nvars, 0);
  e[i] = 1;
  p.add_term(e, 1);
  return p;
}

std::uint64_t TruncPoly::coeff(const MultiIndex& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? 0 : it->second;
}

void TruncPoly::add_term(const MultiIndex& e, std::uint64_t c) {
  if (e.size() != nvars_) throw Error("trunc poly: arity mismatch");
  if (total_degree(e) > maxdeg_) return;
  std::uint64_t v = f_.add(coeff(e), f_.reduce(c));
  if (v == 0)
    terms_.erase(e);
  else
    terms_[e] = v;
}

TruncPoly TruncPoly::operator+(const TruncPoly& o) const {
  TruncPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

TruncPoly TruncPoly::operator-(const TruncPoly& o) const {
  TruncPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, f_.neg(c));
  return r;
}

TruncPoly TruncPoly::operator*(const TruncPoly& o) const {
  TruncPoly r(f_, nvars_, maxdeg_);
  for (const auto& [e1, c1] : terms_) {
    unsigned d1 = total_degree(e1);
    for (const auto& [e2, c2] : o.terms_) {
      if (d1 + total_degree(e2) > maxdeg_) continue;
      MultiIndex e = e1;
      for (unsigned i = 0; i < nvars_; ++i) e[i] += e2[i];
      r.add_term(e, f_.mul(c1, c2));
    }
  }
  return r;
}

TruncPoly TruncPoly::scaled(std::uint64_t c) const {
  TruncPoly r(f_, nvars_, maxdeg_);
  for (const auto& [e, v] : terms_) r.add_term(e, f_.mul(v, f_.reduce(c)));
  return r;
}

TruncPoly TruncPoly::pow(unsigned e) const {
  TruncPoly r = constant(f_, nvars_, maxdeg_, 1);
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

TruncPoly TruncPoly::subst_last(const TruncPoly& s) const {
  if (s.coeff(MultiIndex(nvars_, 0)) != 0)
    throw Error("subst_last: series must be constant-free");
  // collect by last-variable power, then Horner in s
  unsigned maxk = 0;
  for (const auto& [e, c] : terms_) maxk = std::max(maxk, e[nvars_ - 1]);
  std::vector<TruncPoly> ck(maxk + 1, TruncPoly(f_, nvars_, maxdeg_));
  for (const auto& [e, c] : terms_) {
    MultiIndex t = e;
    unsigned k = t[nvars_ - 1];
    t[nvars_ - 1] = 0;
    ck[k].add_term(t, c);
  }
  TruncPoly r(f_, nvars_, maxdeg_);
  for (unsigned k = maxk + 1; k-- > 0;) r = r * s + ck[k];
  return r;
}

std::pair<TruncPoly, TruncPoly> TruncPoly::divmod_last(
    const TruncPoly& phi) const {
  if (phi.coeff(MultiIndex(nvars_, 0)) != 0)
    throw Error("divmod_last: divisor series must be constant-free");
  unsigned maxk = 0;
  for (const auto& [e, c] : terms_) maxk = std::max(maxk, e[nvars_ - 1]);
  std::vector<TruncPoly> ck(maxk + 1, TruncPoly(f_, nvars_, maxdeg_));
  for (const auto& [e, c] : terms_) {
    MultiIndex t = e;
    unsigned k = t[nvars_ - 1];
    t[nvars_ - 1] = 0;
    ck[k].add_term(t, c);
  }
  // (x_last - phi) * sum q_k x_last^k + rem: match powers downward.
  std::vector<TruncPoly> qk(maxk, TruncPoly(f_, nvars_, maxdeg_));
  TruncPoly carry(f_, nvars_, maxdeg_);
  for (unsigned k = maxk; k >= 1; --k) {
    qk[k - 1] = ck[k] + carry;
    carry = phi * qk[k - 1];
  }
  TruncPoly rem = ck[0] + carry;

  TruncPoly q(f_, nvars_, maxdeg_);
  for (unsigned k = 0; k < qk.size(); ++k) {
    for (const auto& [e, c] : qk[k].terms()) {
      MultiIndex t = e;
      t[nvars_ - 1] += k;
      q.add_term(t, c);
    }
  }
  return {q, rem};
}

TruncPoly TruncPoly::unit_inverse() const {
  std::uint64_t c0 = coeff(MultiIndex(nvars_, 0));
  if (c0 == 0) throw Error("unit_inverse: not a unit");
  std::uint64_t c0i = f_.inv(c0);
  TruncPoly v = constant(f_, nvars_, maxdeg_, 1) - scaled(c0i);  // order >= 1
  TruncPoly r = constant(f_, nvars_, maxdeg_, 1);
  TruncPoly vk = constant(f_, nvars_, maxdeg_, 1);
  for (unsigned k = 1; k <= maxdeg_; ++k) {
    vk = vk * v;
    if (vk.is_zero()) break;
    r = r + vk;
  }
  return r.scaled(c0i);
}

TruncPoly graph_series(const TruncPoly& gw) {
  const unsigned n = gw.nvars();
  MultiIndex last(n, 0);
  last[n - 1] = 1;
  if (gw.coeff(MultiIndex(n, 0)) != 0 || gw.coeff(last) != 1)
    throw Error("graph_series: linear part must be exactly the last variable");
  // phi = h(w_t, phi) with h = x_last - gw (order >= 2); each pass gains one
  // order of contact, so maxdeg iterations suffice.
  TruncPoly h = TruncPoly::variable(gw.field(), n, gw.maxdeg(), n - 1) - gw;
  TruncPoly phi(gw.field(), n, gw.maxdeg());
  for (unsigned i = 0; i < gw.maxdeg(); ++i) phi = h.subst_last(phi);
  return phi;
}

}  // namespace fatpoints
