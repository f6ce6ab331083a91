#include "fatpoints/formal.hpp"

#include <algorithm>

#include "fatpoints/errors.hpp"
#include "fatpoints/geom.hpp"

namespace fatpoints {

namespace {

MultiIndex strip_last(const MultiIndex& e) {
  return MultiIndex(e.begin(), e.end() - 1);
}

bool pure_x(const TruncPoly& p) {
  for (const auto& [e, c] : p.terms())
    if (e.back() != 0) return false;
  return true;
}

}  // namespace

void validate_deformation(const Deformation& def) {
  const unsigned h = def.model.height();
  if (def.gens.size() != h + 1)
    throw Error("deformation needs height+1 coefficient sequences, got " +
                std::to_string(def.gens.size()));
  for (unsigned i = 0; i <= h; ++i)
    for (const auto& [lambda, a] : def.gens[i]) {
      if (lambda > def.trunc)
        throw Error("coefficient t-exponent exceeds the truncation order");
      if (a.nvars() != def.model.tangential_vars() + 1)
        throw Error("coefficients live in the chart ring (x..., y)");
      if (!pure_x(a))
        throw Error("coefficients must not involve the normal variable");
      if (i == h) continue;  // tail layer is the full ring
      for (const auto& [e, c] : a.terms())
        if (!def.model.layer(i).contains(strip_last(e)))
          throw Error("coefficient a_" + std::to_string(i) + "," +
                      std::to_string(lambda) + " leaves its layer");
    }
}

TruncSeries build_member(const Deformation& def) {
  const unsigned h = def.model.height();
  if (def.gens.size() != h + 1)
    throw Error("deformation needs height+1 coefficient sequences");
  if (def.trunc < def.rate * h)
    throw TruncationTooSmall("truncation " + std::to_string(def.trunc) +
                             " below rate*height = " +
                             std::to_string(def.rate * h));
  const PrimeField& f = def.field;
  const unsigned nvars = def.model.tangential_vars() + 1;

  TruncSeries F{f, nvars, def.maxdeg, def.trunc, {}};
  // y^beta as reusable factors
  std::vector<TruncPoly> ypow;
  {
    TruncPoly one = TruncPoly::constant(f, nvars, def.maxdeg, 1);
    TruncPoly y = TruncPoly::variable(f, nvars, def.maxdeg, nvars - 1);
    ypow.push_back(one);
    for (unsigned b = 1; b <= h; ++b) ypow.push_back(ypow.back() * y);
  }

  for (unsigned i = 0; i <= h; ++i)
    for (const auto& [lambda, a] : def.gens[i]) {
      if (a.is_zero()) continue;
      for (unsigned beta = 0; beta <= i; ++beta) {
        const unsigned tpow = lambda + def.rate * (i - beta);
        if (tpow > def.trunc) continue;
        std::uint64_t c = binom_mod(i, beta, f);
        if ((i - beta) % 2 == 1) c = f.neg(c);
        TruncPoly term = (a * ypow[beta]).scaled(c);
        if (term.is_zero()) continue;
        auto it = F.coeffs.find(tpow);
        if (it == F.coeffs.end())
          F.coeffs.emplace(tpow, term);
        else
          it->second = it->second + term;
      }
    }
  for (auto it = F.coeffs.begin(); it != F.coeffs.end();)
    it = it->second.is_zero() ? F.coeffs.erase(it) : std::next(it);
  return F;
}

TruncPoly series_coefficient(const TruncSeries& F, unsigned alpha,
                             unsigned beta) {
  TruncPoly out(F.field, F.nvars, F.maxdeg);
  auto it = F.coeffs.find(alpha);
  if (it == F.coeffs.end()) return out;
  for (const auto& [e, c] : it->second.terms())
    if (e.back() == beta) {
      MultiIndex x = e;
      x.back() = 0;
      out.add_term(x, c);
    }
  return out;
}

TruncPoly coefficient_formula(const Deformation& def, unsigned alpha,
                              unsigned beta) {
  const PrimeField& f = def.field;
  const unsigned nvars = def.model.tangential_vars() + 1;
  TruncPoly out(f, nvars, def.maxdeg);
  for (unsigned nu = 0; beta + nu <= def.model.height(); ++nu) {
    if (std::uint64_t(nu) * def.rate > alpha) break;
    const unsigned lambda = alpha - nu * def.rate;
    const auto& seq = def.gens[beta + nu];
    auto it = seq.find(lambda);
    if (it == seq.end() || it->second.is_zero()) continue;
    std::uint64_t c = binom_mod(beta + nu, beta, f);
    if (nu % 2 == 1) c = f.neg(c);
    out = out + it->second.scaled(c);
  }
  return out;
}

bool check_coefficient_membership(const TruncSeries& F, const VgModel& model,
                                  unsigned rate) {
  if (rate == 0) throw Error("rate must be positive");
  const unsigned h = model.height();
  for (const auto& [alpha, poly] : F.coeffs)
    for (const auto& [e, c] : poly.terms()) {
      const unsigned beta = e.back();
      const unsigned idx = beta + alpha / rate;
      if (idx >= h) continue;  // full ring
      if (!model.layer(idx).contains(strip_last(e))) return false;
    }
  return true;
}

const char* slicing_outcome_name(SlicingOutcome o) {
  switch (o) {
    case SlicingOutcome::Holds:
      return "holds";
    case SlicingOutcome::Violated:
      return "violated";
    case SlicingOutcome::PreconditionUnmet:
      return "precondition-unmet";
  }
  return "?";
}

SlicingOutcome check_slicing(const TruncSeries& F, const VgModel& model,
                             unsigned rate, unsigned p) {
  const unsigned h = model.height();
  if (p >= h) throw Error("sliced layer must be below the height");
  for (unsigned k = 0; k <= p; ++k) {
    auto it = F.coeffs.find(k * rate);
    if (it == F.coeffs.end()) continue;
    for (const auto& [e, c] : it->second.terms())
      if (e.back() == 0) return SlicingOutcome::PreconditionUnmet;
  }
  auto it = F.coeffs.find(0);
  if (it == F.coeffs.end()) return SlicingOutcome::Holds;
  for (const auto& [e, c] : it->second.terms()) {
    const unsigned beta = e.back();
    if (beta >= h) continue;
    // Layer p is sliced out: powers up to y^p answer to the layer below.
    const unsigned idx = beta <= p ? beta - 1 : beta;
    if (!model.layer(idx).contains(strip_last(e)))
      return SlicingOutcome::Violated;
  }
  return SlicingOutcome::Holds;
}

// ---- corpus -------------------------------------------------------------

namespace {

MultiIndex random_monomial(unsigned nvars, unsigned maxper, Rng& rng) {
  MultiIndex e(nvars, 0);
  for (unsigned v = 0; v < nvars; ++v)
    e[v] = static_cast<unsigned>(rng.below(maxper + 1));
  return e;
}

}  // namespace

Deformation random_deformation(const FormalParams& p, Rng& rng) {
  const PrimeField f(p.prime);
  const unsigned tang =
      1 + static_cast<unsigned>(rng.below(std::max(1u, p.max_tangential_vars)));
  // Jointly bounded so that build_member's precondition rate*height <= trunc
  // is satisfiable by construction.
  const unsigned height = 1 + static_cast<unsigned>(rng.below(
                                  std::min(p.max_height, std::max(1u, p.trunc))));
  const unsigned rate_cap = std::max(1u, std::min(p.max_rate, p.trunc / height));
  const unsigned rate = 1 + static_cast<unsigned>(rng.below(rate_cap));

  // Nested proper layers: start from a box of pure powers and only ever add
  // generators of positive degree (so 1 never enters any layer).
  std::vector<MonomialIdeal> layers;
  {
    std::vector<MultiIndex> gens;
    for (unsigned v = 0; v < tang; ++v) {
      MultiIndex e(tang, 0);
      e[v] = 1 + static_cast<unsigned>(rng.below(2));
      gens.push_back(e);
    }
    layers.emplace_back(tang, gens);
  }
  for (unsigned i = 1; i < height; ++i) {
    std::vector<MultiIndex> gens = layers.back().gens();
    if (rng.below(2) == 0) {
      MultiIndex e = random_monomial(tang, 2, rng);
      if (total_degree(e) == 0) e[0] = 1;
      gens.push_back(e);
    }
    layers.emplace_back(tang, gens);
  }
  VgModel model(tang, layers);

  Deformation def{model, rate, f, p.trunc, p.maxdeg, {}};
  def.gens.resize(height + 1);
  const unsigned nvars = tang + 1;
  // Keep every a-monomial degree within maxdeg - height so that multiplying
  // by y^beta never truncates: the closed-form coefficient route must match
  // the expansion exactly.
  const unsigned cap = p.maxdeg > height ? p.maxdeg - height : 0;
  const bool tail_only = rng.below(3) == 0;  // slicing hypothesis holds

  auto add_piece = [&](unsigned i, unsigned lambda, const MultiIndex& xexp) {
    if (total_degree(xexp) > cap) return;
    MultiIndex e(xexp);
    e.push_back(0);  // y-degree zero
    auto& seq = def.gens[i];
    auto [it, fresh] =
        seq.try_emplace(lambda, TruncPoly(f, nvars, p.maxdeg));
    it->second.add_term(e, rng.nonzero(f));
    if (it->second.is_zero()) seq.erase(it);
  };

  for (unsigned i = 0; i <= height; ++i) {
    if (tail_only && i < height) continue;
    const unsigned pieces = static_cast<unsigned>(rng.below(3));
    for (unsigned k = 0; k < pieces; ++k) {
      const unsigned lambda =
          static_cast<unsigned>(rng.below(std::min(p.trunc, 4u) + 1));
      if (i == height) {
        add_piece(i, lambda, random_monomial(tang, 1, rng));
      } else {
        const auto& g = model.layer(i).gens();
        if (g.empty()) continue;
        MultiIndex e = g[rng.below(g.size())];
        if (rng.below(2) == 0) e[rng.below(tang)] += 1;
        add_piece(i, lambda, e);
      }
    }
  }
  // Ensure the member is interesting: give the tail a unit if it is empty.
  if (def.gens[height].empty())
    add_piece(height, static_cast<unsigned>(rng.below(2)),
              MultiIndex(tang, 0));
  return def;
}

nlohmann::json to_json(const FormalSummary& s) {
  return {{"schema", "fatpoints/formal_summary/1"},
          {"count", s.count},
          {"membership_passes", s.membership_passes},
          {"formula_matches", s.formula_matches},
          {"slicing_holds", s.slicing_holds},
          {"slicing_unmet", s.slicing_unmet},
          {"violations", s.violations},
          {"mutants_injected", s.mutants_injected},
          {"mutants_detected", s.mutants_detected},
          {"all_good", s.all_good()}};
}

FormalSummary run_formal_corpus(const FormalParams& p) {
  FormalSummary sum;
  sum.count = p.count;
  for (unsigned k = 0; k < p.count; ++k) {
    Rng rng = Rng::for_trial(p.seed, k);
    Deformation def = random_deformation(p, rng);
    validate_deformation(def);
    TruncSeries F = build_member(def);

    bool ok = check_coefficient_membership(F, def.model, def.rate);
    if (ok)
      ++sum.membership_passes;
    else
      ++sum.violations;

    bool formula_ok = true;
    for (const auto& [alpha, poly] : F.coeffs) {
      unsigned top = 0;
      for (const auto& [e, c] : poly.terms()) top = std::max(top, e.back());
      for (unsigned beta = 0; beta <= top; ++beta)
        if (!(series_coefficient(F, alpha, beta) ==
              coefficient_formula(def, alpha, beta))) {
          formula_ok = false;
          break;
        }
      if (!formula_ok) break;
    }
    if (formula_ok)
      ++sum.formula_matches;
    else
      ++sum.violations;

    const unsigned pslice =
        static_cast<unsigned>(rng.below(def.model.height()));
    switch (check_slicing(F, def.model, def.rate, pslice)) {
      case SlicingOutcome::Holds:
        ++sum.slicing_holds;
        break;
      case SlicingOutcome::PreconditionUnmet:
        ++sum.slicing_unmet;
        break;
      case SlicingOutcome::Violated:
        ++sum.violations;
        break;
    }

    if (p.inject_mutants) {
      // Bump a constant into a proper layer; membership must notice.
      Deformation mutant = def;
      const unsigned layer =
          static_cast<unsigned>(rng.below(mutant.model.height()));
      auto& seq = mutant.gens[layer];
      auto [it, fresh] = seq.try_emplace(
          0, TruncPoly(mutant.field, mutant.model.tangential_vars() + 1,
                       mutant.maxdeg));
      it->second.add_term(MultiIndex(mutant.model.tangential_vars() + 1, 0), 1);
      ++sum.mutants_injected;
      TruncSeries mf = build_member(mutant);
      if (!check_coefficient_membership(mf, mutant.model, mutant.rate))
        ++sum.mutants_detected;
    }
  }
  return sum;
}

}  // namespace fatpoints
