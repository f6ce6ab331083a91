#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fatpoints/formal.hpp"
#include "fatpoints/horace.hpp"
#include "fatpoints/oracle.hpp"

namespace py = pybind11;
using namespace fatpoints;

// The bindings speak JSON strings: every structured value crossing the
// boundary uses the same documents the CLI persists, so the Python layer
// stays schema-checked and version-stable.
namespace {

std::string dim_json(const std::string& config_json, unsigned d,
                     unsigned trials, std::uint64_t prime,
                     std::uint64_t seed) {
  Configuration z =
      configuration_from_json(nlohmann::json::parse(config_json));
  Verdict v = generic_h0(z, d, OracleOptions{trials, prime, seed});
  return to_json(v).dump();
}

std::string certify_json(const std::string& config_json, unsigned d,
                         unsigned trials, std::uint64_t prime,
                         std::uint64_t seed, const std::string& strategy,
                         int base_degree) {
  Configuration z =
      configuration_from_json(nlohmann::json::parse(config_json));
  Candidate cand = make_candidate(std::move(z), d);
  CertifyOptions o;
  o.trials = trials;
  o.prime = prime;
  o.seed = seed;
  o.strategy = strategy_from_name(strategy);
  if (base_degree >= 0) o.base_degree = static_cast<unsigned>(base_degree);
  try {
    return to_json(certify(cand, o)).dump();
  } catch (const CertificationFailed& e) {
    nlohmann::json j = {{"schema", "fatpoints/certify_failure/1"},
                        {"message", e.what()},
                        {"failing", to_json(e.failing)}};
    return j.dump();
  }
}

std::string counterexample_json(std::uint64_t p, unsigned d,
                                std::uint64_t seed) {
  return to_json(cuspidal_counterexample(p, d, seed)).dump();
}

std::string plan_json(unsigned m, unsigned n) {
  return to_json(plan_schedule(m, n)).dump();
}

std::string formal_corpus_json(unsigned count, std::uint64_t seed,
                               bool mutate) {
  FormalParams p;
  p.count = count;
  p.seed = seed;
  p.inject_mutants = mutate;
  return to_json(run_formal_corpus(p)).dump();
}

std::string make_candidate_json(const std::string& config_json, unsigned d) {
  Configuration z =
      configuration_from_json(nlohmann::json::parse(config_json));
  return to_json(make_candidate(std::move(z), d)).dump();
}

std::uint64_t config_degree_json(const std::string& config_json) {
  return config_degree(
      configuration_from_json(nlohmann::json::parse(config_json)));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "maximal-rank decisions for generic unions of fat points";
  m.def("dim", &dim_json, py::arg("config_json"), py::arg("d"),
        py::arg("trials") = 2,
        py::arg("prime") = PrimeField::kDefaultPrime, py::arg("seed") = 0,
        "Verdict JSON for a configuration at degree d");
  m.def("certify", &certify_json, py::arg("config_json"), py::arg("d"),
        py::arg("trials") = 2,
        py::arg("prime") = PrimeField::kDefaultPrime, py::arg("seed") = 0,
        py::arg("strategy") = "smallest-first", py::arg("base_degree") = -1,
        "Certificate JSON (or a certify_failure document)");
  m.def("counterexample", &counterexample_json, py::arg("p"), py::arg("d"),
        py::arg("seed") = 0, "Characteristic-p failure report JSON");
  m.def("plan", &plan_json, py::arg("m"), py::arg("n"),
        "Induction schedule JSON");
  m.def("formal_corpus", &formal_corpus_json, py::arg("count") = 100,
        py::arg("seed") = 0, py::arg("mutate") = false,
        "Deformation corpus summary JSON");
  m.def("make_candidate", &make_candidate_json, py::arg("config_json"),
        py::arg("d"), "Pad a configuration into a candidate; candidate JSON");
  m.def("config_degree", &config_degree_json, py::arg("config_json"),
        "Total degree (length) of the configuration");
  m.def("proj_h0",
        [](unsigned N, long long d) { return proj_h0(N, d); },
        py::arg("N"), py::arg("d"), "h0 of O(d) on P^N");
}
