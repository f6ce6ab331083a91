#include "fatpoints/oracle.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>

#include "fatpoints/errors.hpp"
#include "fatpoints/matrix.hpp"

namespace fatpoints {

namespace {

// Canonical representative of a projective point: chart coordinate scaled
// to 1, so equal points get equal vectors.
std::vector<std::uint64_t> normalized(const ProjPoint& p, const PrimeField& f) {
  std::uint64_t inv = f.inv(p.x[p.chart()]);
  std::vector<std::uint64_t> out(p.x.size());
  for (std::size_t i = 0; i < p.x.size(); ++i) out[i] = f.mul(p.x[i], inv);
  return out;
}

struct Instance {
  Configuration assigned;
  std::vector<ProjPoint> supports;
  std::optional<Hypersurface> divisor;
};

// Free supports live in the standard affine chart with every coordinate
// nonzero; constrained supports are smooth divisor points.  All supports are
// pairwise distinct.  A divisor whose smooth locus resists sampling (or
// forces collisions) is redrawn.
Instance sample_instance(const Configuration& z, const PrimeField& f,
                         Rng& rng) {
  const unsigned divisor_attempts = 8;
  for (unsigned attempt = 0;; ++attempt) {
    Instance inst;
    inst.assigned = z;
    std::optional<Hypersurface> divisor;
    if (z.has_constrained())
      divisor = random_hypersurface(f, z.N, z.a, rng);
    try {
      std::set<std::vector<std::uint64_t>> seen;
      for (auto& c : inst.assigned.components) {
        ProjPoint p;
        for (unsigned redraw = 0;; ++redraw) {
          if (redraw > 50) throw SamplingExhausted("support collisions");
          if (c.constrained()) {
            p = sample_point_on(*divisor, f, rng);
          } else {
            p.x.assign(z.N + 1, 1);
            for (unsigned i = 0; i < z.N; ++i) p.x[i] = rng.nonzero(f);
          }
          if (seen.insert(normalized(p, f)).second) break;
        }
        c.support = p;
        inst.supports.push_back(p);
      }
      inst.divisor = divisor;
      return inst;
    } catch (const SamplingExhausted&) {
      if (attempt + 1 >= divisor_attempts) throw;
    }
  }
}

nlohmann::json point_json(const ProjPoint& p) { return nlohmann::json(p.x); }

nlohmann::json hypersurface_json(const Hypersurface& h) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : h.terms())
    terms.push_back({{"exponents", e}, {"coeff", c}});
  return {{"degree", h.degree()}, {"terms", terms}};
}

}  // namespace

nlohmann::json to_json(const Verdict& v) {
  nlohmann::json supports = nlohmann::json::array();
  for (const auto& p : v.witness.supports) supports.push_back(point_json(p));
  nlohmann::json witness = {
      {"trial", v.witness.trial},
      {"supports", supports},
      {"divisor", v.witness.divisor ? hypersurface_json(*v.witness.divisor)
                                    : nlohmann::json()},
  };
  return {
      {"schema", "fatpoints/verdict/1"},
      {"expected_h0", v.expected_h0},
      {"computed_h0", v.computed_h0},
      {"classification", v.maximal_rank ? "maximal-rank" : "special"},
      {"trials", v.trials},
      {"prime", v.prime},
      {"seed", v.seed},
      {"witness", witness},
  };
}

Verdict generic_h0(const Configuration& z, unsigned d,
                   const OracleOptions& opts) {
  if (opts.trials == 0) throw Error("oracle needs at least one trial");
  PrimeField f(opts.prime);
  if (opts.prime <= d)
    throw Error("prime " + std::to_string(opts.prime) +
                " must exceed the degree " + std::to_string(d));

  const std::uint64_t cols = proj_h0(z.N, d);
  const std::uint64_t deg = config_degree(z);

  Verdict v;
  v.expected_h0 = cols > deg ? cols - deg : 0;
  v.computed_h0 = std::numeric_limits<std::uint64_t>::max();
  v.trials = opts.trials;
  v.prime = opts.prime;
  v.seed = opts.seed;

  for (unsigned t = 0; t < opts.trials; ++t) {
    Rng rng = Rng::for_trial(opts.seed, t);
    Instance inst = sample_instance(z, f, rng);
    DenseMatrix m = conditions_matrix(inst.assigned, d, inst.divisor, f);
    std::uint64_t k = cols - rank(m);
    if (k < v.computed_h0) {
      v.computed_h0 = k;
      v.witness = OracleWitness{t, std::move(inst.supports),
                                std::move(inst.divisor)};
    }
    // Kernel dimension is bounded below by expected_h0 at every sample, so
    // hitting the floor already proves maximal rank.
    if (v.computed_h0 == v.expected_h0) break;
  }
  v.maximal_rank = (v.computed_h0 == v.expected_h0);
  return v;
}

bool is_winning(const Configuration& z, unsigned d,
                const OracleOptions& opts) {
  Verdict v = generic_h0(z, d, opts);
  return v.computed_h0 == 0;
}

nlohmann::json to_json(const CuspidalReport& r) {
  return {
      {"schema", "fatpoints/cuspidal/1"},
      {"p", r.p},
      {"d", r.d},
      {"seed", r.seed},
      {"h0_formula", r.h0_formula},
      {"dim_vd", r.dim_vd},
      {"conditions", r.conditions},
      {"kernel_dim", r.kernel_dim},
      {"parameters", r.parameters},
  };
}

CuspidalReport cuspidal_counterexample(std::uint64_t p, unsigned d,
                                       std::uint64_t seed) {
  if (p == 2 || !is_prime_u64(p))
    throw BadCharacteristic("need an odd prime, got " + std::to_string(p));
  if (d + 2 < p)
    throw Error("degree must be at least p-2 for the dimension count");
  PrimeField f(p);

  // Exponents of the degree-d monomials pulled back through (t^2, t^p, 1).
  std::set<std::uint64_t> eset;
  for (unsigned i = 0; i <= d; ++i)
    for (unsigned j = 0; i + j <= d; ++j) eset.insert(2ull * i + p * j);
  std::vector<std::uint64_t> expo(eset.begin(), eset.end());

  // Independent dimension count: rank of the monomial-to-exponent incidence
  // matrix (one row per pair (i,j), one column per attainable exponent).
  std::map<std::uint64_t, std::size_t> col_of;
  for (std::size_t k = 0; k < expo.size(); ++k) col_of[expo[k]] = k;
  std::size_t pairs = 0;
  for (unsigned i = 0; i <= d; ++i) pairs += d - i + 1;
  DenseMatrix incidence(f, pairs, expo.size());
  std::size_t row = 0;
  for (unsigned i = 0; i <= d; ++i)
    for (unsigned j = 0; i + j <= d; ++j)
      incidence.set(row++, col_of.at(2ull * i + p * j), 1);

  CuspidalReport rep;
  rep.p = p;
  rep.d = d;
  rep.seed = seed;
  rep.h0_formula = 1ull * d * p + 1 - (p - 1) * (p - 2) / 2;
  rep.dim_vd = rank(incidence);
  rep.conditions = 1ull * d * p;

  // d smooth parameter values; over a small field the draws collide, and c
  // copies of a value merge into one vanishing condition of order c*p.
  Rng rng(seed);
  std::map<std::uint64_t, unsigned> mult;
  for (unsigned k = 0; k < d; ++k) {
    std::uint64_t t = rng.nonzero(f);
    rep.parameters.push_back(t);
    ++mult[t];
  }

  DenseMatrix cond(f, rep.conditions, expo.size());
  row = 0;
  for (const auto& [t, c] : mult) {
    std::uint64_t pw = c * p;
    for (std::uint64_t beta = 0; beta < pw; ++beta, ++row)
      for (std::size_t k = 0; k < expo.size(); ++k) {
        std::uint64_t e = expo[k];
        if (beta > e) continue;
        std::uint64_t v = f.mul(binom_mod(e, beta, f), f.pow(t, e - beta));
        cond.set(row, k, v);
      }
  }
  rep.kernel_dim = expo.size() - rank(cond);
  return rep;
}

}  // namespace fatpoints
