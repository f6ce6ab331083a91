#include "fatpoints/geom.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "fatpoints/errors.hpp"

namespace fatpoints {

unsigned total_degree(const MultiIndex& e) {
  unsigned s = 0;
  for (unsigned v : e) s += v;
  return s;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;  // exact at each step: product of i consecutive
    if (r > ~0ull) throw Error("binomial overflows uint64");
  }
  return static_cast<std::uint64_t>(r);
}

namespace {

// C(n, k) mod p for n, k < p: multiplicative formula with inverses; no
// factor is divisible by p.
std::uint64_t binom_mod_small(std::uint64_t n, std::uint64_t k,
                              const PrimeField& f) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t num = 1, den = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    num = f.mul(num, (n - k + i) % f.modulus());
    den = f.mul(den, i % f.modulus());
  }
  return f.div(num, den);
}

}  // namespace

std::uint64_t binom_mod(std::uint64_t n, std::uint64_t k,
                        const PrimeField& f) {
  const std::uint64_t p = f.modulus();
  std::uint64_t r = 1;
  while (n > 0 || k > 0) {
    std::uint64_t nd = n % p, kd = k % p;
    if (kd > nd) return 0;  // Lucas: a digit overflow kills the whole product
    r = f.mul(r, binom_mod_small(nd, kd, f));
    n /= p;
    k /= p;
  }
  return r;
}

std::uint64_t proj_h0(unsigned N, long long d) {
  if (d < 0) return 0;
  return binomial(static_cast<std::uint64_t>(d) + N, N);
}

std::uint64_t divisor_h0(unsigned N, unsigned a, long long d) {
  return proj_h0(N, d) - proj_h0(N, d - static_cast<long long>(a));
}

namespace {

void enumerate_exponents(unsigned vars_left, unsigned degree_left, bool exact,
                         MultiIndex& prefix, std::vector<MultiIndex>& out) {
  if (vars_left == 1) {
    prefix.push_back(exact ? degree_left : 0);
    if (exact) {
      out.push_back(prefix);
    } else {
      for (unsigned e = degree_left + 1; e-- > 0;) {
        prefix.back() = e;
        out.push_back(prefix);
      }
    }
    prefix.pop_back();
    return;
  }
  for (unsigned e = degree_left + 1; e-- > 0;) {
    prefix.push_back(e);
    enumerate_exponents(vars_left - 1, degree_left - e, exact, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<MultiIndex> monomial_basis(unsigned N, unsigned d) {
  std::vector<MultiIndex> out;
  MultiIndex prefix;
  enumerate_exponents(N + 1, d, /*exact=*/true, prefix, out);
  return out;
}

std::vector<MultiIndex> jet_basis(unsigned nvars, unsigned order) {
  std::vector<MultiIndex> out;
  MultiIndex prefix;
  for (unsigned deg = 0; deg <= order; ++deg)
    enumerate_exponents(nvars, deg, /*exact=*/true, prefix, out);
  return out;
}

std::uint64_t hasse_eval(const MultiIndex& gamma, const MultiIndex& beta,
                         const std::vector<std::uint64_t>& point,
                         const PrimeField& f) {
  if (gamma.size() != beta.size() || gamma.size() != point.size())
    throw Error("hasse_eval: arity mismatch");
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    if (beta[i] > gamma[i]) return 0;
    r = f.mul(r, binom_mod(gamma[i], beta[i], f));
    r = f.mul(r, f.pow(point[i], gamma[i] - beta[i]));
  }
  return r;
}

unsigned ProjPoint::chart() const {
  for (std::size_t i = x.size(); i-- > 0;)
    if (x[i] != 0) return static_cast<unsigned>(i);
  throw Error("zero vector is not a projective point");
}

std::vector<std::uint64_t> ProjPoint::affine(const PrimeField& f) const {
  unsigned c = chart();
  std::uint64_t s = f.inv(x[c]);
  std::vector<std::uint64_t> q;
  q.reserve(x.size() - 1);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (i != c) q.push_back(f.mul(x[i], s));
  return q;
}

Hypersurface::Hypersurface(
    unsigned N, unsigned degree,
    std::vector<std::pair<MultiIndex, std::uint64_t>> terms,
    const PrimeField& f)
    : N_(N), degree_(degree) {
  std::map<MultiIndex, std::uint64_t> acc;
  for (auto& [e, c] : terms) {
    if (e.size() != N + 1 || total_degree(e) != degree)
      throw Error("hypersurface term of wrong arity or degree");
    std::uint64_t v = f.add(acc.count(e) ? acc[e] : 0, f.reduce(c));
    if (v == 0)
      acc.erase(e);
    else
      acc[e] = v;
  }
  terms_.assign(acc.begin(), acc.end());
  if (terms_.empty()) throw Error("zero form does not define a hypersurface");
}

std::uint64_t Hypersurface::eval(const std::vector<std::uint64_t>& coords,
                                 const PrimeField& f) const {
  std::uint64_t s = 0;
  for (const auto& [e, c] : terms_) {
    std::uint64_t t = c;
    for (std::size_t i = 0; i <= N_; ++i) t = f.mul(t, f.pow(coords[i], e[i]));
    s = f.add(s, t);
  }
  return s;
}

std::vector<std::uint64_t> Hypersurface::gradient(
    const std::vector<std::uint64_t>& coords, const PrimeField& f) const {
  std::vector<std::uint64_t> grad(N_ + 1, 0);
  for (const auto& [e, c] : terms_) {
    for (std::size_t i = 0; i <= N_; ++i) {
      if (e[i] == 0) continue;
      std::uint64_t t = f.mul(c, f.reduce(e[i]));
      for (std::size_t j = 0; j <= N_; ++j)
        t = f.mul(t, f.pow(coords[j], j == i ? e[j] - 1 : e[j]));
      grad[i] = f.add(grad[i], t);
    }
  }
  return grad;
}

Hypersurface random_hypersurface(const PrimeField& f, unsigned N,
                                 unsigned degree, Rng& rng) {
  std::vector<std::pair<MultiIndex, std::uint64_t>> terms;
  for (const MultiIndex& e : monomial_basis(N, degree))
    terms.emplace_back(e, rng.element(f));
  bool nonzero = false;
  for (auto& [e, c] : terms) nonzero |= (c != 0);
  if (!nonzero) terms.front().second = 1;  // astronomically unlikely
  return Hypersurface(N, degree, std::move(terms), f);
}

Hypersurface hyperplane_last_coord(const PrimeField& f, unsigned N) {
  MultiIndex e(N + 1, 0);
  e[N] = 1;
  return Hypersurface(N, 1, {{e, 1}}, f);
}

namespace {

using Poly = std::vector<std::uint64_t>;  // dense univariate, index = degree

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& m, const PrimeField& f) {
  trim(a);
  std::uint64_t lead_inv = f.inv(m.back());
  while (a.size() >= m.size()) {
    std::uint64_t q = f.mul(a.back(), lead_inv);
    std::size_t off = a.size() - m.size();
    for (std::size_t i = 0; i < m.size(); ++i)
      a[off + i] = f.sub(a[off + i], f.mul(q, m[i]));
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m,
                 const PrimeField& f) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = f.add(c[i + j], f.mul(a[i], b[j]));
  return poly_mod(std::move(c), m, f);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& m,
                 const PrimeField& f) {
  Poly r = poly_mod({1}, m, f);
  base = poly_mod(std::move(base), m, f);
  while (e) {
    if (e & 1) r = poly_mulmod(r, base, m, f);
    base = poly_mulmod(base, base, m, f);
    e >>= 1;
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, const PrimeField& f) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, f);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

void collect_roots(const Poly& sf, const PrimeField& f, Rng& rng,
                   std::vector<std::uint64_t>& out) {
  // sf is squarefree and splits into distinct linear factors.
  if (sf.size() <= 1) return;
  if (sf.size() == 2) {
    out.push_back(f.div(f.neg(sf[0]), sf[1]));
    return;
  }
  // Cantor-Zassenhaus equal-degree split for linear factors, odd p.
  for (int tries = 0; tries < 64; ++tries) {
    Poly shifted = {rng.element(f), 1};
    Poly h = poly_powmod(shifted, (f.modulus() - 1) / 2, sf, f);
    if (h.empty()) continue;
    h[0] = f.sub(h[0], 1);
    Poly g = poly_gcd(sf, h, f);
    if (g.size() <= 1 || g.size() == sf.size()) continue;
    std::uint64_t lead = f.inv(g.back());
    for (auto& c : g) c = f.mul(c, lead);
    Poly rest = sf;
    // rest = sf / g, exact
    Poly quot;
    {
      Poly rem = sf;
      quot.assign(rem.size() - g.size() + 1, 0);
      while (rem.size() >= g.size()) {
        std::uint64_t q = rem.back();  // g is monic
        quot[rem.size() - g.size()] = q;
        std::size_t off = rem.size() - g.size();
        for (std::size_t i = 0; i < g.size(); ++i)
          rem[off + i] = f.sub(rem[off + i], f.mul(q, g[i]));
        trim(rem);
      }
    }
    collect_roots(g, f, rng, out);
    collect_roots(quot, f, rng, out);
    return;
  }
  throw Error("root splitting did not converge");
}

}  // namespace

std::vector<std::uint64_t> poly_roots(const std::vector<std::uint64_t>& coeffs,
                                      const PrimeField& f, Rng& rng) {
  Poly a = coeffs;
  for (auto& c : a) c = f.reduce(c);
  trim(a);
  if (a.empty()) {
    std::vector<std::uint64_t> all;
    for (std::uint64_t v = 0; v < std::min<std::uint64_t>(f.modulus(), 4); ++v)
      all.push_back(v);
    return all;
  }
  if (f.modulus() < 1024) {  // small fields: direct scan is exact and simple
    std::vector<std::uint64_t> out;
    for (std::uint64_t v = 0; v < f.modulus(); ++v) {
      std::uint64_t s = 0;
      for (std::size_t i = a.size(); i-- > 0;) s = f.add(f.mul(s, v), a[i]);
      if (s == 0) out.push_back(v);
    }
    return out;
  }
  // gcd with x^p - x isolates the distinct roots in F_p.
  Poly xp = poly_powmod({0, 1}, f.modulus(), a, f);
  if (xp.size() < 2) xp.resize(2, 0);
  xp[1] = f.sub(xp[1], 1);
  Poly sf = poly_gcd(a, xp, f);
  if (sf.size() <= 1) return {};
  std::uint64_t lead = f.inv(sf.back());
  for (auto& c : sf) c = f.mul(c, lead);
  std::vector<std::uint64_t> out;
  collect_roots(sf, f, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

ProjPoint sample_point_on(const Hypersurface& g, const PrimeField& f, Rng& rng,
                          unsigned max_attempts) {
  const unsigned N = g.ambient();
  for (unsigned attempt = 0; attempt < max_attempts; ++attempt) {
    unsigned which = static_cast<unsigned>(rng.below(N + 1));
    std::vector<std::uint64_t> coords(N + 1);
    for (unsigned i = 0; i <= N; ++i)
      if (i != which) coords[i] = rng.element(f);
    // univariate restriction in coordinate `which`
    std::vector<std::uint64_t> uni(g.degree() + 1, 0);
    for (const auto& [e, c] : g.terms()) {
      std::uint64_t t = c;
      for (unsigned i = 0; i <= N; ++i)
        if (i != which) t = f.mul(t, f.pow(coords[i], e[i]));
      uni[e[which]] = f.add(uni[e[which]], t);
    }
    for (std::uint64_t root : poly_roots(uni, f, rng)) {
      coords[which] = root;
      bool zero = true;
      for (auto c : coords) zero &= (c == 0);
      if (zero) continue;
      ProjPoint p{coords};
      auto grad = g.gradient(coords, f);
      bool singular = true;
      for (auto c : grad) singular &= (c == 0);
      if (!singular) return p;
    }
  }
  throw SamplingExhausted("no smooth point found on the divisor after " +
                          std::to_string(max_attempts) + " attempts");
}

Frame frame_at(const Hypersurface& g, const ProjPoint& p,
               const PrimeField& f) {
  const unsigned N = g.ambient();
  if (g.eval(p.x, f) != 0)
    throw Error("frame_at: point does not lie on the divisor");
  auto grad = g.gradient(p.x, f);
  bool singular = true;
  for (auto c : grad) singular &= (c == 0);
  if (singular) throw SingularPoint("frame_at: divisor is singular here");

  Frame fr;
  fr.chart = p.chart();
  fr.origin = p.affine(f);

  // Affine linear part of g at the origin: chart partials scaled by the
  // dehomogenizing unit.  The homogeneous gradient being nonzero forces a
  // nonzero entry here (Euler's identity, valid over F_p).
  std::uint64_t unit = f.pow(f.inv(p.x[fr.chart]), g.degree() - 1);
  std::vector<std::uint64_t> lin;
  for (unsigned i = 0; i <= N; ++i)
    if (i != fr.chart) lin.push_back(f.mul(grad[i], unit));

  unsigned pivot = N;  // sentinel: N is out of range for lin
  for (unsigned i = static_cast<unsigned>(lin.size()); i-- > 0;)
    if (lin[i] != 0) {
      pivot = i;
      break;
    }
  if (pivot == N)
    throw SingularPoint("frame_at: vanishing affine linear part");

  // Columns: tangential ones span ker(lin), the last maps to lin = 1.
  fr.a.assign(N, std::vector<std::uint64_t>(N, 0));
  unsigned col = 0;
  std::uint64_t piv_inv = f.inv(lin[pivot]);
  for (unsigned i = 0; i < N; ++i) {
    if (i == pivot) continue;
    fr.a[i][col] = 1;
    fr.a[pivot][col] = f.neg(f.mul(lin[i], piv_inv));
    ++col;
  }
  fr.a[pivot][N - 1] = piv_inv;
  return fr;
}

}  // namespace fatpoints
