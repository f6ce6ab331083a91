#include "fatpoints/horace.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "fatpoints/errors.hpp"

namespace fatpoints {

void validate_candidate(const Candidate& c) {
  const std::uint64_t need = proj_h0(c.z.N, c.d);
  const std::uint64_t deg = config_degree(c.z);
  if (deg < need)
    throw CandidateViolation("configuration degree " + std::to_string(deg) +
                             " below h0 = " + std::to_string(need));
  const std::uint64_t cap = divisor_h0(c.z.N, c.z.a, c.d);
  const std::uint64_t tr = config_trace_degree(c.z);
  if (tr > cap)
    throw CandidateViolation("trace degree " + std::to_string(tr) +
                             " exceeds divisor capacity " + std::to_string(cap));
}

Candidate make_candidate(Configuration z, unsigned d) {
  const std::uint64_t cap = divisor_h0(z.N, z.a, d);
  if (config_trace_degree(z) > cap)
    throw TraceOverflow("constrained part already exceeds the divisor capacity");
  const std::uint64_t need = proj_h0(z.N, d);
  while (config_degree(z) < need)
    z.components.push_back(Component::free_point(1));
  Candidate c{std::move(z), d};
  validate_candidate(c);
  return c;
}

nlohmann::json to_json(const Candidate& c) {
  return {{"config", to_json(c.z)}, {"d", c.d}};
}

Candidate candidate_from_json(const nlohmann::json& j) {
  Candidate c;
  c.z = configuration_from_json(j.at("config"));
  c.d = j.at("d").get<unsigned>();
  validate_candidate(c);
  return c;
}

const char* strategy_name(Strategy s) {
  return s == Strategy::SmallestFirst ? "smallest-first" : "biggest-first";
}

Strategy strategy_from_name(const std::string& name) {
  if (name == "smallest-first") return Strategy::SmallestFirst;
  if (name == "biggest-first") return Strategy::BiggestFirst;
  throw Error("unknown strategy '" + name +
              "' (want smallest-first or biggest-first)");
}

namespace {

// Trace degree a free point of multiplicity m would cut on the divisor.
std::uint64_t point_trace_degree(unsigned m, unsigned N) {
  return binomial(m - 1 + N - 1, N - 1);
}

// The shared bookkeeping of all reduction flavors; does not yet validate the
// residual claim (callers adjust the divisor degree first).
Derivation derive_core(const Candidate& c, Strategy strategy) {
  validate_candidate(c);
  const unsigned N = c.z.N, a = c.z.a, d = c.d;
  if (d < a) throw NotDerivable("degree below the divisor degree");
  const std::uint64_t cap = divisor_h0(N, a, d);

  std::vector<std::size_t> frees;
  for (std::size_t i = 0; i < c.z.components.size(); ++i)
    if (!c.z.components[i].constrained()) frees.push_back(i);
  std::stable_sort(frees.begin(), frees.end(),
                   [&](std::size_t i, std::size_t j) {
                     unsigned mi = c.z.components[i].m;
                     unsigned mj = c.z.components[j].m;
                     return strategy == Strategy::SmallestFirst ? mi < mj
                                                                : mi > mj;
                   });

  Derivation out;
  Configuration dz;
  dz.N = N;
  dz.a = a;

  // Constrained components: trace feeds the divisor problem, residual stays.
  std::uint64_t used = 0;
  for (const auto& comp : c.z.components) {
    if (!comp.constrained()) continue;
    if (auto t = trace(comp, N)) {
      used += t->degree(N);
      if (t->scheme)
        out.dime_schemes.push_back(*t->scheme);
      else
        out.dime_mults.push_back(t->multiplicity);
    }
    if (auto res = residual(comp)) dz.components.push_back(*res);
  }

  // Maximal prefix of free points the divisor can fully absorb.
  std::size_t s = 0;
  while (s < frees.size()) {
    std::uint64_t tc = point_trace_degree(c.z.components[frees[s]].m, N);
    if (used + tc > cap) break;
    used += tc;
    ++s;
  }
  const std::uint64_t missing = cap - used;
  if (missing > frees.size() - s)
    throw NotDerivable("free points cannot supply the remaining " +
                       std::to_string(missing) + " divisor conditions");
  const unsigned r = static_cast<unsigned>(missing);

  out.s = static_cast<unsigned>(s);
  out.r = r;
  for (std::size_t i = 0; i < s; ++i) {
    std::size_t idx = frees[i];
    unsigned m = c.z.components[idx].m;
    out.specialized.push_back(idx);
    out.dime_mults.push_back(m);
    if (m >= 2) dz.components.push_back(Component::divisor_point(m - 1));
  }
  for (std::size_t j = 0; j < r; ++j) {
    std::size_t idx = frees[s + j];
    unsigned m = c.z.components[idx].m;
    out.consumed.push_back(idx);
    out.dime_mults.push_back(1);
    if (m >= 2) dz.components.push_back(Component::simple_residue(m));
  }
  // Untouched free points keep their original configuration order.
  std::set<std::size_t> touched(frees.begin(), frees.begin() + s + r);
  for (std::size_t i = 0; i < c.z.components.size(); ++i)
    if (!c.z.components[i].constrained() && !touched.count(i))
      dz.components.push_back(Component::free_point(c.z.components[i].m));

  if (config_degree(dz) + cap != config_degree(c.z))
    throw Error("internal: reduction degree bookkeeping broke");

  out.derivative = Candidate{std::move(dz), d - a};
  return out;
}

void check_residual_trace(const Candidate& c) {
  const std::uint64_t cap = divisor_h0(c.z.N, c.z.a, c.d);
  const std::uint64_t tr = config_trace_degree(c.z);
  if (tr > cap)
    throw CandidateViolation("residual trace " + std::to_string(tr) +
                             " exceeds divisor capacity " +
                             std::to_string(cap));
}

}  // namespace

Derivation derive(const Candidate& c, Strategy strategy) {
  Derivation drv = derive_core(c, strategy);
  check_residual_trace(drv.derivative);
  return drv;
}

Candidate dime_candidate(const Candidate& parent, const Derivation& drv) {
  if (parent.z.a != 1)
    throw Error("trace problem is projective only for hyperplane divisors");
  if (!drv.dime_schemes.empty())
    throw Error("model traces have no free-point trace problem");
  if (parent.z.N < 2) throw Error("no hyperplane trace problem below P^2");
  Configuration t;
  t.N = parent.z.N - 1;
  t.a = 1;
  for (unsigned m : drv.dime_mults)
    t.components.push_back(Component::free_point(m));
  Candidate out{std::move(t), parent.d};
  if (config_degree(out.z) != proj_h0(out.z.N, out.d))
    throw Error("internal: trace problem is not square");
  return out;
}

Candidate derive_concentrated(const Candidate& c, Strategy strategy) {
  if (c.z.a < 2) throw NotDerivable("concentrated step needs a >= 2");
  Derivation drv = derive_core(c, strategy);
  Candidate out = std::move(drv.derivative);
  out.z.a = c.z.a - 1;
  const std::uint64_t cap = divisor_h0(out.z.N, out.z.a, out.d);
  const std::uint64_t tr = config_trace_degree(out.z);
  if (tr > cap)
    throw TraceOverflow("the degree-" + std::to_string(out.z.a) +
                        " divisor cannot absorb a trace of " +
                        std::to_string(tr) + " (capacity " +
                        std::to_string(cap) + ")");
  return out;
}

Candidate derive_second_special(const Candidate& c, unsigned alpha,
                                Strategy strategy) {
  const unsigned a = c.z.a;
  if (alpha == 0 || alpha >= a)
    throw Error("need 0 < alpha < divisor degree");
  Derivation first = derive(c, strategy);
  Derivation second = derive_core(first.derivative, strategy);
  Candidate out = std::move(second.derivative);

  // The second divisor degenerates into a degree-alpha part through some of
  // the specialized points (freeing them) plus a residual divisor of degree
  // a - alpha.  A degree-alpha hypersurface passes through at most
  // h0(O(alpha)) - 1 generic points.
  std::vector<std::size_t> dps;
  for (std::size_t i = 0; i < out.z.components.size(); ++i)
    if (out.z.components[i].kind == ComponentKind::DivisorPoint)
      dps.push_back(i);
  std::stable_sort(dps.begin(), dps.end(), [&](std::size_t i, std::size_t j) {
    return out.z.components[i].m > out.z.components[j].m;
  });
  const std::uint64_t quota = proj_h0(c.z.N, alpha) - 1;
  const std::size_t freed = std::min<std::uint64_t>(quota, dps.size());
  for (std::size_t k = 0; k < freed; ++k)
    out.z.components[dps[k]] =
        Component::free_point(out.z.components[dps[k]].m);

  out.z.a = a - alpha;
  check_residual_trace(out);
  return out;
}

// ---- univariate layer ---------------------------------------------------

DenseMatrix collocation_matrix(const std::vector<std::uint64_t>& exponents,
                               const std::vector<unsigned>& mults,
                               const std::vector<std::uint64_t>& nodes,
                               const PrimeField& f) {
  if (mults.size() != nodes.size())
    throw Error("one node per multiplicity required");
  std::size_t rows = 0;
  for (unsigned m : mults) {
    if (m == 0) throw Error("multiplicities must be positive");
    rows += m;
  }
  DenseMatrix out(f, rows, exponents.size());
  std::size_t row = 0;
  for (std::size_t i = 0; i < mults.size(); ++i)
    for (unsigned beta = 0; beta < mults[i]; ++beta, ++row)
      for (std::size_t k = 0; k < exponents.size(); ++k) {
        std::uint64_t e = exponents[k];
        if (beta > e) continue;
        out.set(row, k,
                f.mul(binom_mod(e, beta, f), f.pow(nodes[i], e - beta)));
      }
  return out;
}

std::uint64_t wronskian_product(const std::vector<unsigned>& mults,
                                const std::vector<std::uint64_t>& nodes,
                                const PrimeField& f) {
  if (mults.size() != nodes.size())
    throw Error("one node per multiplicity required");
  std::uint64_t prod = 1;
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      std::uint64_t diff = f.sub(nodes[j], nodes[i]);
      prod = f.mul(prod, f.pow(diff, std::uint64_t(mults[i]) * mults[j]));
    }
  return prod;
}

namespace {

std::vector<std::uint64_t> distinct_nodes(std::size_t count,
                                          const PrimeField& f, Rng& rng) {
  if (f.modulus() < count)
    throw Error("field too small for " + std::to_string(count) +
                " distinct nodes");
  std::set<std::uint64_t> seen;
  std::vector<std::uint64_t> out;
  while (out.size() < count) {
    std::uint64_t t = rng.element(f);
    if (seen.insert(t).second) out.push_back(t);
  }
  return out;
}

}  // namespace

bool wronskian_check(const std::vector<unsigned>& mults, unsigned d,
                     std::uint64_t prime, std::uint64_t seed) {
  std::uint64_t total = 0;
  for (unsigned m : mults) total += m;
  if (total != std::uint64_t(d) + 1)
    throw Error("collocation is square only when sum(mults) == d+1");
  PrimeField f(prime);
  Rng rng(seed);
  std::vector<std::uint64_t> nodes = distinct_nodes(mults.size(), f, rng);

  std::uint64_t prod = wronskian_product(mults, nodes, f);
  std::vector<std::uint64_t> exponents(d + 1);
  for (unsigned e = 0; e <= d; ++e) exponents[e] = e;
  bool full = rank(collocation_matrix(exponents, mults, nodes, f)) == d + 1;
  if ((prod != 0) != full)
    throw Error("internal: collocation determinant and rank disagree");
  return full;
}

bool subspace_collocation_full_rank(const std::vector<std::uint64_t>& exponents,
                                    const std::vector<unsigned>& mults,
                                    std::uint64_t prime, std::uint64_t seed) {
  PrimeField f(prime);
  Rng rng(seed);
  std::vector<std::uint64_t> nodes = distinct_nodes(mults.size(), f, rng);
  DenseMatrix m = collocation_matrix(exponents, mults, nodes, f);
  return rank(m) == std::min(m.rows(), m.cols());
}

// ---- certification ------------------------------------------------------

namespace {

struct CertifyCtx {
  const CertifyOptions& opts;
  std::uint64_t counter = 0;

  std::uint64_t next_seed() { return Rng::mix(opts.seed, counter++); }

  unsigned base_degree_for(unsigned N) const {
    if (opts.base_degree) return *opts.base_degree;
    unsigned d = 0;
    while (proj_h0(N, d + 1) <= opts.brute_force_max_cols) ++d;
    return d;
  }
};

std::optional<std::string> full_kill_reason(const Component& c, unsigned d) {
  switch (c.kind) {
    case ComponentKind::FreePoint:
    case ComponentKind::DivisorPoint:
      if (c.m >= d + 1) return "a point multiplicity exceeds the degree";
      break;
    case ComponentKind::SimpleResidue:
      if (c.m >= d + 2)
        return "a residue contains a full jet beyond the degree";
      break;
    case ComponentKind::DivisorModel:
      break;
  }
  return std::nullopt;
}

// Length of the component as a subscheme of P^1 (any finite length-k scheme
// supported at a smooth curve point is the k-fold point).
std::vector<unsigned> p1_mults(const Configuration& z) {
  std::vector<unsigned> out;
  for (const auto& c : z.components) {
    unsigned m = 0;
    switch (c.kind) {
      case ComponentKind::FreePoint:
      case ComponentKind::DivisorPoint:
        m = c.m;
        break;
      case ComponentKind::SimpleResidue:
        m = c.m - 1;
        break;
      case ComponentKind::DivisorModel:
        m = static_cast<unsigned>(c.model->degree());
        break;
    }
    if (m > 0) out.push_back(m);
  }
  return out;
}

// Whether a reduction step could even produce a projective trace problem.
bool reducible_shape(const Configuration& z) {
  if (z.a != 1 || z.N < 2) return false;
  for (const auto& c : z.components)
    if (c.kind == ComponentKind::DivisorModel)
      if (auto t = trace(c, z.N); t && t->scheme) return false;
  return true;
}

CertNode certify_node(const Candidate& c, CertifyCtx& ctx) {
  validate_candidate(c);
  CertNode node;
  node.candidate = c;

  if (c.d == 0) {
    node.kind = CertNode::Kind::TrivialLeaf;
    node.reason = "degree 0: any point kills the constants";
    return node;
  }
  for (const auto& comp : c.z.components)
    if (auto why = full_kill_reason(comp, c.d)) {
      node.kind = CertNode::Kind::TrivialLeaf;
      node.reason = *why;
      return node;
    }

  if (c.z.N == 1) {
    node.kind = CertNode::Kind::WronskianLeaf;
    node.mults = p1_mults(c.z);
    // Trim to an exactly square sub-claim; a sub-scheme winning is enough.
    std::uint64_t total = 0;
    for (unsigned m : node.mults) total += m;
    while (total > std::uint64_t(c.d) + 1) {
      auto it = std::max_element(node.mults.begin(), node.mults.end());
      --*it;
      --total;
      if (*it == 0) node.mults.erase(it);
    }
    node.leaf_prime = ctx.opts.prime;
    node.leaf_seed = ctx.next_seed();
    if (!wronskian_check(node.mults, c.d, node.leaf_prime, node.leaf_seed))
      throw CertificationFailed("collocation degenerate on the line", c);
    return node;
  }

  if (c.d > ctx.base_degree_for(c.z.N) && reducible_shape(c.z)) {
    try {
      Derivation drv = derive(c, ctx.opts.strategy);
      Candidate trace_claim = dime_candidate(c, drv);
      node.kind = CertNode::Kind::HoraceStep;
      node.s = drv.s;
      node.r = drv.r;
      node.specialized = drv.specialized;
      node.consumed = drv.consumed;
      node.trace_child =
          std::make_unique<CertNode>(certify_node(trace_claim, ctx));
      node.residual_child =
          std::make_unique<CertNode>(certify_node(drv.derivative, ctx));
      return node;
    } catch (const NotDerivable&) {
    } catch (const CandidateViolation&) {
    }
  }

  const std::uint64_t cols = proj_h0(c.z.N, c.d);
  if (cols > 1500)
    throw CertificationFailed(
        "claim too large for a direct rank and not reducible", c);
  node.kind = CertNode::Kind::BruteForceLeaf;
  OracleOptions o{ctx.opts.trials, ctx.opts.prime, ctx.next_seed()};
  node.verdict = generic_h0(c.z, c.d, o);
  if (node.verdict->computed_h0 != 0)
    throw CertificationFailed("randomized rank found a nonzero kernel", c);
  return node;
}

nlohmann::json node_json(const CertNode& n) {
  nlohmann::json j;
  j["candidate"] = to_json(n.candidate);
  switch (n.kind) {
    case CertNode::Kind::HoraceStep:
      j["kind"] = "horace_step";
      j["s"] = n.s;
      j["r"] = n.r;
      j["specialized"] = n.specialized;
      j["consumed"] = n.consumed;
      j["trace"] = node_json(*n.trace_child);
      j["residual"] = node_json(*n.residual_child);
      break;
    case CertNode::Kind::BruteForceLeaf:
      j["kind"] = "brute_force";
      j["verdict"] = to_json(*n.verdict);
      break;
    case CertNode::Kind::WronskianLeaf:
      j["kind"] = "wronskian";
      j["mults"] = n.mults;
      j["prime"] = n.leaf_prime;
      j["seed"] = n.leaf_seed;
      break;
    case CertNode::Kind::TrivialLeaf:
      j["kind"] = "trivial";
      j["reason"] = n.reason;
      break;
  }
  return j;
}

}  // namespace

std::size_t node_count(const CertNode& n) {
  std::size_t total = 1;
  if (n.trace_child) total += node_count(*n.trace_child);
  if (n.residual_child) total += node_count(*n.residual_child);
  return total;
}

nlohmann::json to_json(const Certificate& c) {
  nlohmann::json opts = {
      {"prime", c.options.prime},
      {"seed", c.options.seed},
      {"trials", c.options.trials},
      {"strategy", strategy_name(c.options.strategy)},
      {"brute_force_max_cols", c.options.brute_force_max_cols},
      {"base_degree", c.options.base_degree
                          ? nlohmann::json(*c.options.base_degree)
                          : nlohmann::json()},
  };
  return {{"schema", "fatpoints/certificate/1"},
          {"options", opts},
          {"nodes", node_count(c.root)},
          {"root", node_json(c.root)}};
}

Certificate certify(const Candidate& c, const CertifyOptions& opts) {
  if (opts.prime <= c.d)
    throw Error("prime must exceed the certified degree");
  CertifyCtx ctx{opts};
  Certificate cert;
  cert.options = opts;
  cert.root = certify_node(c, ctx);
  return cert;
}

// ---- schedule / threshold helpers --------------------------------------

unsigned stability_threshold(unsigned m, unsigned n) {
  if (m < 2 || n < 1)
    throw Error("stability threshold needs m >= 2 and n >= 1");
  for (unsigned a = 1;; ++a)
    if (std::uint64_t(m - 1) * a < std::uint64_t(a - 1) * (m + n - 1))
      return a;
}

unsigned alpha_for(std::uint64_t npoints, unsigned N) {
  for (unsigned alpha = 1;; ++alpha)
    if (proj_h0(N, alpha) - 1 >= npoints) return alpha;
}

long long curve_threshold(unsigned m, unsigned g, long long degL,
                          long long degM) {
  if (m < 1) throw Error("multiplicity must be positive");
  if (degL < 1) throw Error("the moving class must have positive degree");
  const long long load =
      (static_cast<long long>(m) * (m - 1) / 2) * (static_cast<long long>(g) - 1);
  for (long long d = 0;; ++d) {
    const long long total = degM + d * degL;
    if (total + 1 - static_cast<long long>(g) > load &&
        total > 2 * static_cast<long long>(g) - 2)
      return d;
  }
}

nlohmann::json to_json(const PlanReport& r) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : r.steps)
    steps.push_back({{"name", s.name},
                     {"inequality", s.inequality},
                     {"existential", s.existential},
                     {"note", s.note}});
  return {{"schema", "fatpoints/plan/1"},
          {"m", r.m},
          {"n", r.n},
          {"ambient_N", r.n + 1},
          {"trivial", r.trivial},
          {"stability_a", r.stability_a},
          {"per_point_trace", r.per_point_trace},
          {"steps", steps}};
}

PlanReport plan_schedule(unsigned m, unsigned n) {
  if (m == 0 || n == 0) throw Error("need m >= 1 and n >= 1");
  PlanReport r;
  r.m = m;
  r.n = n;
  r.trivial = (m == 1);
  r.per_point_trace = binomial(m + n - 1, n);
  r.stability_a = r.trivial ? 1 : stability_threshold(m, n);
  r.steps = {
      {"descent", "(m-1)*a < (a-1)*(m+n-1)", false,
       "with a at least the stability threshold, each reduction step lowers "
       "the degree by a while the divisor keeps absorbing the trace"},
      {"concentrated", "a >= 2", false,
       "the divisor degree itself is lowered one step at a time until the "
       "hyperplane regime is reached"},
      {"second-special", "freed <= h0(O(alpha)) - 1", false,
       "the second divisor degenerates into a degree-alpha part through "
       "once-specialized points, freeing them"},
      {"base-cases", "d <= d0", true,
       "finitely many low-degree wins seed the induction; they are checked "
       "numerically, not constructed"},
      {"divisor-existence", "deg(M + d L) > 2g - 2", true,
       "smooth divisors of the scheduled degree through the prescribed "
       "points are assumed to exist generically"},
  };
  return r;
}

}  // namespace fatpoints
