#include <doctest.h>

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fatpoints/errors.hpp"
#include "fatpoints/horace.hpp"
#include "fatpoints/oracle.hpp"
#include "fatpoints/schemes.hpp"

using namespace fatpoints;

namespace {

Configuration frees(unsigned N, unsigned a, std::vector<unsigned> mults) {
  Configuration z{N, a, {}};
  for (unsigned m : mults) z.components.push_back(Component::free_point(m));
  return z;
}

// Multiset view of a configuration: (kind, m) -> count.
std::map<std::pair<ComponentKind, unsigned>, unsigned> shape(
    const Configuration& z) {
  std::map<std::pair<ComponentKind, unsigned>, unsigned> s;
  for (const auto& c : z.components) ++s[{c.kind, c.m}];
  return s;
}

using Shape = std::vector<std::pair<ComponentKind, unsigned>>;

std::map<std::pair<ComponentKind, unsigned>, unsigned> shape_of(Shape items) {
  std::map<std::pair<ComponentKind, unsigned>, unsigned> s;
  for (auto& it : items) ++s[it];
  return s;
}

constexpr auto FP = ComponentKind::FreePoint;
constexpr auto DP = ComponentKind::DivisorPoint;
constexpr auto SR = ComponentKind::SimpleResidue;

}  // namespace

TEST_CASE("candidate normalization") {
  // Empty config against lines: three simple points fill h0 = 3.
  Candidate c = make_candidate(Configuration{2, 1, {}}, 1);
  CHECK(c.z.components.size() == 3);
  CHECK(config_degree(c.z) == 3);

  // One double point against conics: pad with three more simples.
  Candidate c2 = make_candidate(frees(2, 1, {2}), 2);
  CHECK(config_degree(c2.z) == 6);
  CHECK(c2.z.components.size() == 4);

  // Nothing to do when the claim is already over-determined.
  Candidate c3 = make_candidate(frees(2, 1, {9}), 4);
  CHECK(c3.z.components.size() == 1);

  // A constrained part that already overloads the divisor is unfixable.
  Configuration heavy{2, 1, {Component::divisor_point(5)}};
  CHECK_THROWS_AS(make_candidate(heavy, 1), TraceOverflow);

  // Under-determined or overloaded candidates fail validation directly.
  CHECK_THROWS_AS(validate_candidate(Candidate{frees(2, 1, {2}), 2}),
                  CandidateViolation);
  CHECK_NOTHROW(validate_candidate(Candidate{frees(2, 1, {2, 2}), 2}));
}

TEST_CASE("candidate JSON round trip") {
  Candidate c = make_candidate(frees(2, 1, {2, 2, 2}), 3);
  nlohmann::json j = to_json(c);
  CHECK(j["d"] == 3);
  Candidate back = candidate_from_json(j);
  CHECK(back == c);

  // Parsing re-validates.
  nlohmann::json bad = j;
  bad["d"] = 9;
  CHECK_THROWS_AS(candidate_from_json(bad), CandidateViolation);
}

TEST_CASE("strategy names") {
  CHECK(std::string(strategy_name(Strategy::SmallestFirst)) ==
        "smallest-first");
  CHECK(strategy_from_name("biggest-first") == Strategy::BiggestFirst);
  CHECK_THROWS_AS(strategy_from_name("fastest-first"), Error);
}

TEST_CASE("one reduction step on five double points") {
  // Five double points against quartics; the line absorbs h0(P^1, 4) = 5
  // conditions: two full points (s = 2) and one differential point (r = 1).
  Candidate c{frees(2, 1, {2, 2, 2, 2, 2}), 4};
  Derivation drv = derive(c);
  CHECK(drv.s == 2);
  CHECK(drv.r == 1);
  CHECK(drv.specialized == std::vector<std::size_t>{0, 1});
  CHECK(drv.consumed == std::vector<std::size_t>{2});
  CHECK(drv.dime_mults == std::vector<unsigned>{2, 2, 1});
  CHECK(drv.dime_schemes.empty());

  CHECK(drv.derivative.d == 3);
  CHECK(shape(drv.derivative.z) ==
        shape_of({{DP, 1}, {DP, 1}, {SR, 2}, {FP, 2}, {FP, 2}}));
  // The step consumes exactly the divisor sections.
  CHECK(config_degree(drv.derivative.z) + divisor_h0(2, 1, 4) ==
        config_degree(c.z));

  // The trace problem is exactly square on the line.
  Candidate dime = dime_candidate(c, drv);
  CHECK(dime.z.N == 1);
  CHECK(dime.d == 4);
  CHECK(config_degree(dime.z) == 5);
  CHECK(shape(dime.z) == shape_of({{FP, 2}, {FP, 2}, {FP, 1}}));
}

TEST_CASE("reduction of simple points only") {
  // Ten simple points against cubics: the line absorbs four of them.
  Candidate c{frees(2, 1, std::vector<unsigned>(10, 1)), 3};
  Derivation drv = derive(c);
  CHECK(drv.s == 4);
  CHECK(drv.r == 0);
  CHECK(drv.derivative.d == 2);
  CHECK(drv.derivative.z.components.size() == 6);
  CHECK(shape(drv.derivative.z) == shape_of(Shape(6, {FP, 1})));
}

TEST_CASE("derivation fails when free points cannot fill the divisor") {
  // One multiplicity-4 point against conics: its trace alone (4) exceeds
  // the line capacity (3), and there is nothing else to absorb.
  Candidate c{frees(2, 1, {4}), 2};
  CHECK_THROWS_AS(derive(c), NotDerivable);
}

TEST_CASE("the two strategies can absorb different points") {
  Candidate c{frees(2, 1, {1, 1, 1, 3}), 2};

  Derivation small = derive(c, Strategy::SmallestFirst);
  CHECK(small.s == 3);
  CHECK(small.r == 0);
  CHECK(small.dime_mults == std::vector<unsigned>{1, 1, 1});
  CHECK(shape(small.derivative.z) == shape_of({{FP, 3}}));

  Derivation big = derive(c, Strategy::BiggestFirst);
  CHECK(big.s == 1);
  CHECK(big.r == 0);
  CHECK(big.dime_mults == std::vector<unsigned>{3});
  CHECK(shape(big.derivative.z) ==
        shape_of({{DP, 2}, {FP, 1}, {FP, 1}, {FP, 1}}));

  // Same conditions consumed either way.
  CHECK(config_degree(small.derivative.z) == config_degree(big.derivative.z));
}

TEST_CASE("derivation keeps constrained components as residuals") {
  Configuration z{2, 1,
                  {Component::divisor_point(2), Component::free_point(2),
                   Component::free_point(2), Component::free_point(2)}};
  Candidate c{z, 3};  // degree 3 + 9 = 12 >= 10; trace 2 <= 4
  Derivation drv = derive(c);
  // Divisor point's trace (2 conditions) plus one specialized double (2)
  // fills the P^1 capacity of 4.
  CHECK(drv.s == 1);
  CHECK(drv.r == 0);
  CHECK(drv.dime_mults == std::vector<unsigned>{2, 2});
  CHECK(shape(drv.derivative.z) ==
        shape_of({{DP, 1}, {DP, 1}, {FP, 2}, {FP, 2}}));
  CHECK(drv.derivative.d == 2);
}

TEST_CASE("trace problems exist only under a hyperplane") {
  // Conic divisor: the reduction itself works, but its trace is a claim on
  // the conic, not on a projective space.
  Candidate conic{frees(2, 2, std::vector<unsigned>(15, 1)), 4};
  Derivation drv = derive(conic);
  CHECK(drv.s == 9);
  CHECK_THROWS_AS(dime_candidate(conic, drv), Error);

  // On P^1 the divisor is a point and there is no lower trace space.
  Candidate line{frees(1, 1, {1, 1, 1}), 2};
  Derivation drv1 = derive(line);
  CHECK(drv1.s == 1);
  CHECK(drv1.derivative.d == 1);
  CHECK_THROWS_AS(dime_candidate(line, drv1), Error);
}

TEST_CASE("concentrated step lowers the divisor degree") {
  // Fifteen simple points against quartics with a conic divisor: the conic
  // absorbs 9 points, the residual claim lives on a line.
  Candidate c{frees(2, 2, std::vector<unsigned>(15, 1)), 4};
  Candidate out = derive_concentrated(c);
  CHECK(out.z.a == 1);
  CHECK(out.d == 2);
  CHECK(out.z.components.size() == 6);
  CHECK(shape(out.z) == shape_of(Shape(6, {FP, 1})));

  // Five double points with a conic divisor: the residual trace (6) cannot
  // fit a line's capacity at degree 2 (3).
  Candidate bad{frees(2, 2, {2, 2, 2, 2, 2}), 4};
  CHECK_THROWS_AS(derive_concentrated(bad), TraceOverflow);

  // Hyperplane divisors have nowhere lower to go.
  Candidate flat{frees(2, 1, {2, 2, 2, 2, 2}), 4};
  CHECK_THROWS_AS(derive_concentrated(flat), NotDerivable);
}

TEST_CASE("second-step degeneration frees specialized points") {
  // Two triples and six simples against quartics with a conic divisor.
  // Step 1 absorbs the six simples and one triple; step 2 specializes the
  // remaining triple; the degree-1 part of the degenerating conic frees
  // both divisor points (quota h0(O(1)) - 1 = 2).
  Candidate c{frees(2, 2, {3, 3, 1, 1, 1, 1, 1, 1}), 4};
  Candidate out = derive_second_special(c, 1);
  CHECK(out.z.a == 1);
  CHECK(out.d == 0);
  CHECK(shape(out.z) == shape_of({{FP, 1}, {FP, 2}}));

  // Three doubles and a triple, exactly square: after two steps a single
  // divisor point remains and the quota (2) is not binding.
  Candidate c2{frees(2, 2, {2, 2, 2, 3}), 4};
  Candidate out2 = derive_second_special(c2, 1);
  CHECK(out2.z.a == 1);
  CHECK(out2.d == 0);
  CHECK(shape(out2.z) == shape_of({{FP, 1}}));

  // Simple points never leave divisor points behind, so nothing is freed.
  Candidate c3{frees(2, 2, std::vector<unsigned>(15, 1)), 4};
  Candidate out3 = derive_second_special(c3, 1);
  CHECK(shape(out3.z) == shape_of({{FP, 1}}));
  CHECK(out3.z.a == 1);

  CHECK_THROWS_AS(derive_second_special(c, 0), Error);
  CHECK_THROWS_AS(derive_second_special(c, 2), Error);
}

TEST_CASE("collocation matrices and the node-difference product") {
  PrimeField f7(7);
  CHECK(wronskian_product({1, 1, 1}, {0, 1, 2}, f7) == 2);
  PrimeField f101(101);
  CHECK(wronskian_product({2, 3}, {1, 4}, f101) == 729 % 101);
  CHECK(wronskian_product({2, 3}, {4, 4}, f101) == 0);  // coincident nodes

  CHECK_THROWS_AS(wronskian_product({1, 2}, {0}, f7), Error);
  CHECK_THROWS_AS(collocation_matrix({0, 1}, {1, 0}, {0, 1}, f7), Error);

  // Full triple point on quadrics: triangular with unit diagonal, so it
  // wins in every characteristic, including p = 2.
  CHECK(wronskian_check({3}, 2, 101, 0));
  CHECK(wronskian_check({3}, 2, 2, 0));
  CHECK(wronskian_check({2, 1}, 2, 2, 0));
  CHECK(wronskian_check({1, 1}, 1, 2, 0));
  CHECK_THROWS_AS(wronskian_check({2, 2}, 2, 101, 0), Error);  // not square

  // Large prime: distinct nodes force a nonzero product; the internal
  // product/rank cross-check would throw if the routes ever disagreed.
  Rng rng(13);
  for (int t = 0; t < 10; ++t) {
    std::vector<unsigned> mults;
    unsigned total = 0;
    while (total < 8) {
      unsigned m = 1 + rng.below(3);
      mults.push_back(m);
      total += m;
    }
    CHECK(wronskian_check(mults, total - 1, 2147483647, rng.next()));
  }
}

TEST_CASE("exponent subspaces can degenerate in small characteristic") {
  // span{1, t^2} with a double node: the derivative row 2t dies mod 2.
  CHECK_FALSE(subspace_collocation_full_rank({0, 2}, {2}, 2, 0));
  CHECK(subspace_collocation_full_rank({0, 1}, {2}, 2, 0));

  // span{1, t, t^3} with a triple node: rows C(3,1) t^2 and C(3,2) t both
  // vanish mod 3 at every node.
  CHECK_FALSE(subspace_collocation_full_rank({0, 1, 3}, {3}, 3, 0));
  CHECK(subspace_collocation_full_rank({0, 1, 3}, {2}, 5, 0));
}

TEST_CASE("certification closes simple claims with one leaf") {
  // Single high-multiplicity point: settled by inspection.
  Certificate triv = certify(make_candidate(frees(2, 1, {9}), 4));
  CHECK(triv.root.kind == CertNode::Kind::TrivialLeaf);
  CHECK(node_count(triv.root) == 1);

  // Degree zero.
  Certificate d0 = certify(make_candidate(frees(2, 1, {1}), 0));
  CHECK(d0.root.kind == CertNode::Kind::TrivialLeaf);

  // P^1 claims go straight to collocation; excess length is trimmed to a
  // square sub-claim by shaving the largest multiplicity.
  Certificate w = certify(Candidate{frees(1, 1, {3, 4}), 5});
  CHECK(w.root.kind == CertNode::Kind::WronskianLeaf);
  CHECK(w.root.mults == std::vector<unsigned>{3, 3});

  // Low-degree plane claims fall to the randomized rank.
  Certificate bf = certify(make_candidate(frees(2, 1, {2, 2}), 3));
  CHECK(bf.root.kind == CertNode::Kind::BruteForceLeaf);
  REQUIRE(bf.root.verdict.has_value());
  CHECK(bf.root.verdict->computed_h0 == 0);
}

TEST_CASE("certification refuses losing claims and reports the culprit") {
  Candidate lose{frees(2, 1, {2, 2}), 2};
  CHECK_THROWS_AS(certify(lose), CertificationFailed);
  try {
    certify(lose);
  } catch (const CertificationFailed& e) {
    CHECK(e.failing == lose);
  }

  Candidate quintic{frees(2, 1, {2, 2, 2, 2, 2}), 4};
  CHECK_THROWS_AS(certify(quintic), CertificationFailed);

  CertifyOptions even_field;
  even_field.prime = 2;
  CHECK_THROWS_AS(certify(Candidate{frees(2, 1, {2, 2}), 2}, even_field),
                  Error);
}

TEST_CASE("a full reduction tree for seven double points") {
  // Quintics through seven double points, forced through reduction steps by
  // a low brute-force ceiling.
  Candidate c{frees(2, 1, std::vector<unsigned>(7, 2)), 5};
  CertifyOptions opts;
  opts.base_degree = 2;
  opts.seed = 3;
  Certificate cert = certify(c, opts);
  CHECK(node_count(cert.root) == 7);

  // Level 1: the line absorbs three doubles fully.
  const CertNode& n1 = cert.root;
  CHECK(n1.kind == CertNode::Kind::HoraceStep);
  CHECK(n1.s == 3);
  CHECK(n1.r == 0);
  REQUIRE(n1.trace_child);
  CHECK(n1.trace_child->kind == CertNode::Kind::WronskianLeaf);
  CHECK(n1.trace_child->mults == std::vector<unsigned>{2, 2, 2});

  // Level 2: three reduced points plus one specialized double.
  const CertNode& n2 = *n1.residual_child;
  CHECK(n2.kind == CertNode::Kind::HoraceStep);
  CHECK(n2.s == 1);
  CHECK(n2.r == 0);
  CHECK(n2.candidate.d == 4);
  CHECK(n2.trace_child->mults == std::vector<unsigned>{1, 1, 1, 2});

  // Level 3: one differential point appears.
  const CertNode& n3 = *n2.residual_child;
  CHECK(n3.kind == CertNode::Kind::HoraceStep);
  CHECK(n3.s == 1);
  CHECK(n3.r == 1);
  CHECK(n3.candidate.d == 3);
  CHECK(n3.trace_child->mults == std::vector<unsigned>{1, 2, 1});

  // Level 4: the remaining conic claim is settled numerically.
  const CertNode& n4 = *n3.residual_child;
  CHECK(n4.kind == CertNode::Kind::BruteForceLeaf);
  CHECK(n4.candidate.d == 2);
  CHECK(shape(n4.candidate.z) == shape_of({{DP, 1}, {SR, 2}, {FP, 2}}));
  REQUIRE(n4.verdict.has_value());
  CHECK(n4.verdict->computed_h0 == 0);

  // The reduction engine and the randomized oracle agree on the root.
  CHECK(is_winning(c.z, c.d, {.seed = 17}));

  // Bit-for-bit reproducible.
  Certificate again = certify(c, opts);
  CHECK(to_json(again) == to_json(cert));

  nlohmann::json j = to_json(cert);
  CHECK(j["schema"] == "fatpoints/certificate/1");
  CHECK(j["nodes"] == 7);
  CHECK(j["root"]["kind"] == "horace_step");
  CHECK(j["root"]["trace"]["kind"] == "wronskian");
  CHECK(j["options"]["strategy"] == "smallest-first");
  CHECK(j["options"]["base_degree"] == 2);
}

TEST_CASE("oversized irreducible claims fail loudly") {
  // A conic-divisor claim cannot take hyperplane reduction steps, and at
  // degree 60 it is far beyond any direct rank computation.
  Candidate big = make_candidate(frees(2, 2, {60}), 60);
  try {
    certify(big);
    CHECK(false);
  } catch (const CertificationFailed& e) {
    CHECK(e.failing.d == 60);
  }
}

TEST_CASE("stability thresholds") {
  CHECK(stability_threshold(2, 1) == 3);
  CHECK(stability_threshold(3, 1) == 4);
  CHECK(stability_threshold(4, 1) == 5);
  CHECK(stability_threshold(2, 2) == 2);
  CHECK(stability_threshold(3, 2) == 3);
  CHECK_THROWS_AS(stability_threshold(1, 1), Error);
  CHECK_THROWS_AS(stability_threshold(2, 0), Error);

  // From the threshold on, the inequality holds for every larger a.
  for (unsigned m = 2; m <= 6; ++m)
    for (unsigned n = 1; n <= 3; ++n) {
      unsigned A = stability_threshold(m, n);
      for (unsigned a = A; a <= A + 5; ++a)
        CHECK(std::uint64_t(m - 1) * a < std::uint64_t(a - 1) * (m + n - 1));
      if (A > 1)
        CHECK_FALSE(std::uint64_t(m - 1) * (A - 1) <
                    std::uint64_t(A - 2) * (m + n - 1));
    }
}

TEST_CASE("degeneration degree for a point quota") {
  CHECK(alpha_for(2, 2) == 1);
  CHECK(alpha_for(3, 2) == 2);
  CHECK(alpha_for(5, 2) == 2);
  CHECK(alpha_for(6, 2) == 3);
  CHECK(alpha_for(1, 3) == 1);
  CHECK(alpha_for(0, 2) == 1);
}

TEST_CASE("curve degree threshold") {
  CHECK(curve_threshold(2, 2, 1, 0) == 3);
  CHECK(curve_threshold(2, 0, 1, 0) == 0);
  CHECK(curve_threshold(3, 1, 2, 0) == 1);
  CHECK(curve_threshold(5, 2, 1, 0) == 12);
  CHECK_THROWS_AS(curve_threshold(2, 1, 0, 5), Error);
}

TEST_CASE("reduction schedules") {
  PlanReport triv = plan_schedule(1, 2);
  CHECK(triv.trivial);
  CHECK(triv.stability_a == 1);
  CHECK(triv.per_point_trace == 1);

  PlanReport p = plan_schedule(3, 1);
  CHECK_FALSE(p.trivial);
  CHECK(p.stability_a == 4);
  CHECK(p.per_point_trace == 3);
  CHECK(p.steps.size() == 5);
  unsigned existential = 0;
  for (const auto& s : p.steps) existential += s.existential ? 1 : 0;
  CHECK(existential == 2);

  nlohmann::json j = to_json(p);
  CHECK(j["schema"] == "fatpoints/plan/1");
  CHECK(j["ambient_N"] == 2);
  CHECK(j["steps"].size() == 5);

  CHECK_THROWS_AS(plan_schedule(0, 1), Error);
  CHECK_THROWS_AS(plan_schedule(2, 0), Error);
}
