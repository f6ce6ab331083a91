#include <doctest.h>

#include <cstdint>
#include <optional>
#include <vector>

#include "fatpoints/errors.hpp"
#include "fatpoints/geom.hpp"
#include "fatpoints/matrix.hpp"
#include "fatpoints/oracle.hpp"
#include "fatpoints/rng.hpp"
#include "fatpoints/schemes.hpp"

using namespace fatpoints;

namespace {

Configuration doubles(unsigned N, unsigned count) {
  Configuration z{N, 1, {}};
  for (unsigned i = 0; i < count; ++i)
    z.components.push_back(Component::free_point(2));
  return z;
}

}  // namespace

TEST_CASE("five double points miss one quartic condition") {
  Verdict v = generic_h0(doubles(2, 5), 4, {.seed = 11});
  CHECK(v.expected_h0 == 0);
  CHECK(v.computed_h0 == 1);  // the double conic survives
  CHECK_FALSE(v.maximal_rank);

  // Exact rational arithmetic on the witness instance: rank stays 14.
  Configuration z = doubles(2, 5);
  for (std::size_t i = 0; i < z.components.size(); ++i)
    z.components[i].support = v.witness.supports[i];
  IntMatrix m = conditions_matrix_int(z, 4, PrimeField(v.prime));
  CHECK(m.rows() == 15);
  CHECK(rank(m) == 14);
}

TEST_CASE("four double points behave generically in degree four") {
  Verdict v = generic_h0(doubles(2, 4), 4, {.seed = 11});
  CHECK(v.expected_h0 == 3);
  CHECK(v.computed_h0 == 3);
  CHECK(v.maximal_rank);
}

TEST_CASE("two double points against conics and cubics") {
  Verdict conics = generic_h0(doubles(2, 2), 2, {.seed = 5});
  CHECK(conics.expected_h0 == 0);
  CHECK(conics.computed_h0 == 1);  // the double line
  CHECK_FALSE(conics.maximal_rank);

  Verdict cubics = generic_h0(doubles(2, 2), 3, {.seed = 5});
  CHECK(cubics.expected_h0 == 4);
  CHECK(cubics.computed_h0 == 4);
  CHECK(cubics.maximal_rank);
}

TEST_CASE("winning means empty kernel") {
  Configuration simple3{2, 1,
                        {Component::free_point(1), Component::free_point(1),
                         Component::free_point(1)}};
  CHECK(is_winning(simple3, 1, {.seed = 2}));
  CHECK_FALSE(is_winning(doubles(2, 2), 2, {.seed = 2}));
  CHECK_FALSE(is_winning(doubles(2, 5), 4, {.seed = 2}));
}

TEST_CASE("verdicts are deterministic in the seed") {
  Configuration z{3, 1, {Component::free_point(3), Component::free_point(2),
                         Component::free_point(2), Component::free_point(1)}};
  Verdict a = generic_h0(z, 4, {.trials = 3, .seed = 99});
  Verdict b = generic_h0(z, 4, {.trials = 3, .seed = 99});
  CHECK(to_json(a) == to_json(b));
  CHECK(a.expected_h0 == 35 - 10 - 4 - 4 - 1);
  CHECK(a.computed_h0 == a.expected_h0);  // generic fat points in P^3
}

TEST_CASE("constrained configurations carry the divisor in the witness") {
  Configuration z{2, 1,
                  {Component::divisor_point(2), Component::free_point(2),
                   Component::free_point(1)}};
  Verdict v = generic_h0(z, 4, {.seed = 8});
  REQUIRE(v.witness.divisor.has_value());
  CHECK(v.witness.divisor->degree() == 1);
  CHECK(v.witness.supports.size() == 3);
  // The constrained support really lies on the sampled divisor.
  PrimeField f(v.prime);
  CHECK(v.witness.divisor->eval(v.witness.supports[0].x, f) == 0);
  CHECK(v.maximal_rank);

  nlohmann::json j = to_json(v);
  CHECK(j["schema"] == "fatpoints/verdict/1");
  CHECK(j["witness"]["divisor"]["degree"] == 1);
  CHECK(j["classification"] == "maximal-rank");
}

TEST_CASE("adding components never shrinks the rank") {
  Rng rng(4);
  for (int t = 0; t < 25; ++t) {
    unsigned N = 2 + rng.below(2);
    unsigned d = 2 + rng.below(4);
    Configuration z{N, 1, {}};
    unsigned count = 1 + rng.below(4);
    for (unsigned i = 0; i < count; ++i)
      z.components.push_back(Component::free_point(1 + rng.below(3)));
    Configuration bigger = z;
    bigger.components.push_back(Component::free_point(1 + rng.below(3)));

    // Same seed: the sampled supports of the shared prefix coincide, so the
    // comparison is between nested matrices.
    OracleOptions o{.trials = 1, .seed = rng.next()};
    std::uint64_t cols = proj_h0(N, d);
    Verdict a = generic_h0(z, d, o);
    Verdict b = generic_h0(bigger, d, o);
    std::uint64_t rank_a = cols - a.computed_h0;
    std::uint64_t rank_b = cols - b.computed_h0;
    CHECK(rank_b >= rank_a);
    for (std::size_t i = 0; i < a.witness.supports.size(); ++i)
      CHECK(a.witness.supports[i] == b.witness.supports[i]);
  }
}

TEST_CASE("oracle input validation") {
  CHECK_THROWS_AS(generic_h0(doubles(2, 1), 2, {.trials = 0}), Error);
  CHECK_THROWS_AS(generic_h0(doubles(2, 1), 8, {.prime = 7}), Error);
  CHECK_NOTHROW(generic_h0(doubles(2, 1), 6, {.prime = 7}));
}

TEST_CASE("characteristic-p curve defeats the dimension count") {
  // p = 3, d = 2: six monomials t^{2i+3j}, all distinct -> dim 6, yet the
  // six vanishing conditions are dependent.
  CuspidalReport r = cuspidal_counterexample(3, 2, 1);
  CHECK(r.h0_formula == 6);
  CHECK(r.dim_vd == 6);
  CHECK(r.conditions == 6);
  CHECK(r.kernel_dim >= 1);
  CHECK(r.parameters.size() == 2);

  CuspidalReport r5 = cuspidal_counterexample(5, 3, 1);
  CHECK(r5.h0_formula == 10);
  CHECK(r5.dim_vd == 10);
  CHECK(r5.kernel_dim >= 1);

  // The exponent set {2i+pj} collapses for small d, and the formula tracks
  // the collapse threshold d >= p-2.
  for (std::uint64_t p : {3ull, 5ull, 7ull})
    for (unsigned d = static_cast<unsigned>(p) - 2;
         d < static_cast<unsigned>(p) + 2; ++d) {
      CuspidalReport rep = cuspidal_counterexample(p, d, 7);
      CHECK(rep.dim_vd == rep.h0_formula);
      CHECK(rep.kernel_dim >= 1);
      CHECK(rep.conditions == d * p);
    }

  // Repeated parameter draws merge into deeper vanishing and the kernel
  // persists; d > p-1 forces repeats.
  CuspidalReport deep = cuspidal_counterexample(3, 5, 2);
  CHECK(deep.kernel_dim >= 1);
  CHECK(deep.dim_vd == deep.h0_formula);

  CHECK_THROWS_AS(cuspidal_counterexample(2, 3, 0), BadCharacteristic);
  CHECK_THROWS_AS(cuspidal_counterexample(9, 3, 0), BadCharacteristic);
  CHECK_THROWS_AS(cuspidal_counterexample(5, 2, 0), Error);  // d < p-2

  nlohmann::json j = to_json(r);
  CHECK(j["schema"] == "fatpoints/cuspidal/1");
  CHECK(j["h0_formula"] == 6);
}

TEST_CASE("verdict matches a from-scratch matrix on the witness") {
  Configuration z = doubles(2, 3);
  Verdict v = generic_h0(z, 3, {.seed = 123});
  Configuration zi = z;
  for (std::size_t i = 0; i < zi.components.size(); ++i)
    zi.components[i].support = v.witness.supports[i];
  PrimeField f(v.prime);
  DenseMatrix m = conditions_matrix(zi, 3, std::nullopt, f);
  CHECK(m.cols() - rank(m) == v.computed_h0);
  CHECK(v.expected_h0 == 1);
  CHECK(v.computed_h0 == 1);  // 9 conditions on 10 coefficients, independent
  CHECK(v.maximal_rank);
}
