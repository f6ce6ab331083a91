#include "fatpoints/schemes.hpp"

#include <algorithm>

#include "fatpoints/errors.hpp"
#include "fatpoints/trunc_poly.hpp"

namespace fatpoints {

Component Component::free_point(unsigned m) {
  if (m == 0) throw Error("multiplicity must be positive");
  return Component{ComponentKind::FreePoint, m, std::nullopt, std::nullopt};
}

Component Component::divisor_point(unsigned m) {
  if (m == 0) throw Error("multiplicity must be positive");
  return Component{ComponentKind::DivisorPoint, m, std::nullopt, std::nullopt};
}

Component Component::simple_residue(unsigned m) {
  if (m < 2) throw Error("simple residue needs multiplicity >= 2");
  return Component{ComponentKind::SimpleResidue, m, std::nullopt,
                   std::nullopt};
}

Component Component::divisor_model(VgModel model) {
  if (model.empty()) throw Error("divisor model must have a layer");
  unsigned h = model.height();
  return Component{ComponentKind::DivisorModel, h, std::move(model),
                   std::nullopt};
}

Component Component::with_support(ProjPoint p) const {
  Component c = *this;
  c.support = std::move(p);
  return c;
}

bool Configuration::has_constrained() const {
  return std::any_of(components.begin(), components.end(),
                     [](const Component& c) { return c.constrained(); });
}

std::uint64_t component_degree(const Component& c, unsigned N) {
  switch (c.kind) {
    case ComponentKind::FreePoint:
    case ComponentKind::DivisorPoint:
      return binomial(c.m - 1 + N, N);
    case ComponentKind::SimpleResidue:
      return binomial(c.m - 1 + N, N) - 1;
    case ComponentKind::DivisorModel:
      return c.model->degree();
  }
  throw Error("unreachable");
}

std::uint64_t config_degree(const Configuration& z) {
  std::uint64_t s = 0;
  for (const Component& c : z.components) s += component_degree(c, z.N);
  return s;
}

std::uint64_t Trace::degree(unsigned N) const {
  if (scheme) return scheme->colength();
  return binomial(multiplicity - 1 + N - 1, N - 1);
}

std::optional<Trace> trace(const Component& c, unsigned /*N*/) {
  switch (c.kind) {
    case ComponentKind::FreePoint:
      throw FreeComponent("trace of a free component");
    case ComponentKind::DivisorPoint:
    case ComponentKind::SimpleResidue:
      // Both cut the full multiplicity-m fat point on the divisor: the
      // removed condition of a simple residue is purely normal.
      return Trace{c.m, std::nullopt};
    case ComponentKind::DivisorModel: {
      MonomialIdeal i0 = c.model->trace();
      if (i0.is_full()) return std::nullopt;
      return Trace{0, std::move(i0)};
    }
  }
  throw Error("unreachable");
}

std::optional<Component> residual(const Component& c) {
  switch (c.kind) {
    case ComponentKind::FreePoint:
      return c;  // untouched by the divisor
    case ComponentKind::DivisorPoint:
      if (c.m == 1) return std::nullopt;
      return Component::divisor_point(c.m - 1);
    case ComponentKind::SimpleResidue:
      if (c.m == 2) return std::nullopt;
      return Component::simple_residue(c.m - 1);
    case ComponentKind::DivisorModel: {
      if (c.model->height() == 1) return std::nullopt;
      return Component::divisor_model(c.model->residual());
    }
  }
  throw Error("unreachable");
}

std::uint64_t trace_degree(const Component& c, unsigned N) {
  auto t = trace(c, N);
  return t ? t->degree(N) : 0;
}

std::uint64_t config_trace_degree(const Configuration& z) {
  std::uint64_t s = 0;
  for (const Component& c : z.components)
    if (c.constrained()) s += trace_degree(c, z.N);
  return s;
}

namespace {

// Dehomogenize the exponent vector by dropping the chart slot.
MultiIndex dehomogenize(const MultiIndex& gamma, unsigned chart) {
  MultiIndex g;
  g.reserve(gamma.size() - 1);
  for (std::size_t i = 0; i < gamma.size(); ++i)
    if (i != chart) g.push_back(gamma[i]);
  return g;
}

// Jets this component constrains, as affine exponents in frame coordinates
// (tangential first, normal last).
std::vector<MultiIndex> condition_jets(const Component& c, unsigned N) {
  switch (c.kind) {
    case ComponentKind::FreePoint:
    case ComponentKind::DivisorPoint:
      return jet_basis(N, c.m - 1);
    case ComponentKind::SimpleResidue: {
      MultiIndex removed(N, 0);
      removed[N - 1] = c.m - 1;
      std::vector<MultiIndex> jets;
      for (MultiIndex& b : jet_basis(N, c.m - 1))
        if (b != removed) jets.push_back(std::move(b));
      return jets;
    }
    case ComponentKind::DivisorModel:
      return c.model->standard_monomials();
  }
  throw Error("unreachable");
}

}  // namespace

DenseMatrix conditions_matrix(const Configuration& z, unsigned d,
                              const std::optional<Hypersurface>& divisor,
                              const PrimeField& f) {
  const unsigned N = z.N;
  const std::vector<MultiIndex> basis = monomial_basis(N, d);
  std::size_t total_rows = 0;
  std::vector<std::vector<MultiIndex>> jets_per(z.components.size());
  for (std::size_t ci = 0; ci < z.components.size(); ++ci) {
    if (z.components[ci].kind == ComponentKind::DivisorModel && z.a != 1)
      throw Error("divisor models are only supported on hyperplanes");
    jets_per[ci] = condition_jets(z.components[ci], N);
    total_rows += jets_per[ci].size();
  }

  DenseMatrix mat(f, total_rows, basis.size());
  std::size_t row = 0;
  for (std::size_t ci = 0; ci < z.components.size(); ++ci) {
    const Component& c = z.components[ci];
    if (!c.support)
      throw UnassignedSupport("component " + std::to_string(ci) +
                              " has no support point");
    const std::vector<MultiIndex>& jets = jets_per[ci];

    if (!c.constrained()) {
      unsigned chart = c.support->chart();
      std::vector<std::uint64_t> q = c.support->affine(f);
      for (const MultiIndex& beta : jets) {
        for (std::size_t bj = 0; bj < basis.size(); ++bj)
          mat.set(row, bj,
                  hasse_eval(dehomogenize(basis[bj], chart), beta, q, f));
        ++row;
      }
      continue;
    }

    if (!divisor) throw Error("constrained component without a divisor");
    if (divisor->eval(c.support->x, f) != 0)
      throw Error("support does not lie on the divisor");
    Frame fr;
    try {
      fr = frame_at(*divisor, *c.support, f);
    } catch (const SingularPoint& e) {
      throw SingularSupport(e.what());
    }

    unsigned order = 0;
    for (const MultiIndex& beta : jets)
      order = std::max(order, total_degree(beta));

    // Frame-variable expansion of every affine chart coordinate.
    std::vector<TruncPoly> chart_vars;
    for (unsigned i = 0; i < N; ++i) {
      TruncPoly lin = TruncPoly::constant(f, N, order, fr.origin[i]);
      for (unsigned j = 0; j < N; ++j) {
        if (fr.a[i][j] == 0) continue;
        lin = lin + TruncPoly::variable(f, N, order, j).scaled(fr.a[i][j]);
      }
      chart_vars.push_back(lin);
    }

    for (std::size_t bj = 0; bj < basis.size(); ++bj) {
      MultiIndex g = dehomogenize(basis[bj], fr.chart);
      TruncPoly val = TruncPoly::constant(f, N, order, 1);
      for (unsigned i = 0; i < N; ++i)
        if (g[i] > 0) val = val * chart_vars[i].pow(g[i]);
      for (std::size_t k = 0; k < jets.size(); ++k)
        mat.set(row + k, bj, val.coeff(jets[k]));
    }
    row += jets.size();
  }
  return mat;
}

IntMatrix conditions_matrix_int(const Configuration& z, unsigned d,
                                const PrimeField& f) {
  const unsigned N = z.N;
  const std::vector<MultiIndex> basis = monomial_basis(N, d);
  std::size_t total_rows = 0;
  for (const Component& c : z.components) {
    if (c.constrained())
      throw Error("integer conditions only lift free-point configurations");
    total_rows += jet_basis(N, c.m - 1).size();
  }
  IntMatrix mat(total_rows, basis.size());
  std::size_t row = 0;
  for (const Component& c : z.components) {
    if (!c.support) throw UnassignedSupport("free point without support");
    unsigned chart = c.support->chart();
    // Lift of the affine coordinates: representatives in [0, p).
    std::vector<std::uint64_t> q = c.support->affine(f);
    for (const MultiIndex& beta : jet_basis(N, c.m - 1)) {
      for (std::size_t bj = 0; bj < basis.size(); ++bj) {
        MultiIndex g = dehomogenize(basis[bj], chart);
        BigInt v = 1;
        bool zero = false;
        for (unsigned i = 0; i < N; ++i) {
          if (beta[i] > g[i]) {
            zero = true;
            break;
          }
          v *= binomial(g[i], beta[i]);
          for (unsigned e = 0; e < g[i] - beta[i]; ++e) v *= q[i];
        }
        mat.set(row, bj, zero ? BigInt(0) : v);
      }
      ++row;
    }
  }
  return mat;
}

namespace {

std::string kind_name(ComponentKind k) {
  switch (k) {
    case ComponentKind::FreePoint: return "free_point";
    case ComponentKind::DivisorPoint: return "divisor_point";
    case ComponentKind::SimpleResidue: return "simple_residue";
    case ComponentKind::DivisorModel: return "divisor_model";
  }
  throw Error("unreachable");
}

ComponentKind kind_from(const std::string& s) {
  if (s == "free_point") return ComponentKind::FreePoint;
  if (s == "divisor_point") return ComponentKind::DivisorPoint;
  if (s == "simple_residue") return ComponentKind::SimpleResidue;
  if (s == "divisor_model") return ComponentKind::DivisorModel;
  throw Error("unknown component kind: " + s);
}

}  // namespace

nlohmann::json to_json(const Configuration& z) {
  nlohmann::json comps = nlohmann::json::array();
  for (const Component& c : z.components) {
    nlohmann::json jc;
    jc["kind"] = kind_name(c.kind);
    jc["m"] = c.m;
    if (c.kind == ComponentKind::DivisorModel) {
      nlohmann::json layers = nlohmann::json::array();
      for (const MonomialIdeal& l : c.model->layers()) {
        nlohmann::json gens = nlohmann::json::array();
        for (const MultiIndex& g : l.gens()) gens.push_back(g);
        layers.push_back(gens);
      }
      jc["layers"] = layers;
    }
    if (c.support) jc["support"] = c.support->x;
    comps.push_back(jc);
  }
  return nlohmann::json{{"schema", "fatpoints/configuration/1"},
                        {"N", z.N},
                        {"a", z.a},
                        {"components", comps}};
}

Configuration configuration_from_json(const nlohmann::json& j) {
  if (j.value("schema", "") != "fatpoints/configuration/1")
    throw Error("unsupported configuration schema");
  Configuration z;
  z.N = j.at("N").get<unsigned>();
  z.a = j.at("a").get<unsigned>();
  for (const nlohmann::json& jc : j.at("components")) {
    ComponentKind kind = kind_from(jc.at("kind").get<std::string>());
    Component c = [&] {
      switch (kind) {
        case ComponentKind::FreePoint:
          return Component::free_point(jc.at("m").get<unsigned>());
        case ComponentKind::DivisorPoint:
          return Component::divisor_point(jc.at("m").get<unsigned>());
        case ComponentKind::SimpleResidue:
          return Component::simple_residue(jc.at("m").get<unsigned>());
        case ComponentKind::DivisorModel: {
          std::vector<MonomialIdeal> layers;
          for (const nlohmann::json& jl : jc.at("layers")) {
            std::vector<MultiIndex> gens;
            for (const nlohmann::json& jg : jl)
              gens.push_back(jg.get<MultiIndex>());
            layers.emplace_back(z.N - 1, std::move(gens));
          }
          return Component::divisor_model(VgModel(z.N - 1, std::move(layers)));
        }
      }
      throw Error("unreachable");
    }();
    if (jc.contains("support")) {
      ProjPoint p{jc.at("support").get<std::vector<std::uint64_t>>()};
      c = c.with_support(std::move(p));
    }
    z.components.push_back(std::move(c));
  }
  return z;
}

}  // namespace fatpoints
