#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fatpoints/geom.hpp"
#include "fatpoints/matrix.hpp"
#include "fatpoints/monomial_ideal.hpp"

namespace fatpoints {

enum class ComponentKind { FreePoint, DivisorPoint, SimpleResidue,
                           DivisorModel };

// One member of a configuration.  Free points sit anywhere; the other kinds
// are supported on the configuration's divisor.  A simple residue of
// multiplicity m is the fat point m with its deepest normal condition
// removed (degree one less); multiplicity 1 would be the empty scheme and is
// rejected here -- callers drop it instead.
struct Component {
  ComponentKind kind;
  unsigned m = 0;                      // multiplicity; height for models
  std::optional<VgModel> model;        // DivisorModel only
  std::optional<ProjPoint> support;

  static Component free_point(unsigned m);
  static Component divisor_point(unsigned m);
  static Component simple_residue(unsigned m);
  static Component divisor_model(VgModel model);

  bool constrained() const { return kind != ComponentKind::FreePoint; }
  Component with_support(ProjPoint p) const;

  bool operator==(const Component&) const = default;
};

// Union of components in P^N, the constrained ones tied to a (generic)
// divisor of degree a.
struct Configuration {
  unsigned N = 2;
  unsigned a = 1;
  std::vector<Component> components;

  bool has_constrained() const;
  bool operator==(const Configuration&) const = default;
};

std::uint64_t component_degree(const Component& c, unsigned N);
std::uint64_t config_degree(const Configuration& z);

// What a constrained component cuts on the divisor: a fat point of the
// divisor (multiplicity m), or for models the monomial scheme of I_0.
// Empty optional = empty trace (e.g. model with full first layer).
struct Trace {
  unsigned multiplicity = 0;             // > 0 for point traces
  std::optional<MonomialIdeal> scheme;   // model traces

  std::uint64_t degree(unsigned N) const;
};

// Throws FreeComponent for free points: generically they miss the divisor.
std::optional<Trace> trace(const Component& c, unsigned N);

// Conductor-side residual with respect to the divisor; empty optional when
// the component dissolves (simple point on the divisor, residue of
// multiplicity 2, model of height 1).
std::optional<Component> residual(const Component& c);

std::uint64_t trace_degree(const Component& c, unsigned N);
std::uint64_t config_trace_degree(const Configuration& z);

// Conditions matrix of the configuration against the degree-d monomial
// basis of P^N: one row per condition (component order, jets by total
// degree then lex-descending), one column per basis monomial.  Constrained
// components need `divisor`; every support must be assigned
// (UnassignedSupport) and constrained supports must be smooth points of the
// divisor (SingularSupport).
DenseMatrix conditions_matrix(const Configuration& z, unsigned d,
                              const std::optional<Hypersurface>& divisor,
                              const PrimeField& f);

// Same rows over Z for free-point configurations (supports lifted to
// integers); this is the independent exact-arithmetic path.
IntMatrix conditions_matrix_int(const Configuration& z, unsigned d,
                                const PrimeField& f);

// JSON round-trip ("fatpoints/configuration/1"); serialization is canonical,
// so parse-then-dump is the identity on dumps.
nlohmann::json to_json(const Configuration& z);
Configuration configuration_from_json(const nlohmann::json& j);

}  // namespace fatpoints
