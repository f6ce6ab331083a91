#include "fatpoints/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "fatpoints/errors.hpp"
#include "fatpoints/formal.hpp"
#include "fatpoints/horace.hpp"
#include "fatpoints/oracle.hpp"

namespace fatpoints::cli {

namespace {

namespace fs = std::filesystem;

std::uint64_t env_prime() {
  if (const char* s = std::getenv("FATPOINTS_PRIME")) {
    char* end = nullptr;
    std::uint64_t v = std::strtoull(s, &end, 10);
    if (end && *end == '\0' && v != 0) return v;
    throw Error("FATPOINTS_PRIME is not a number");
  }
  return PrimeField::kDefaultPrime;
}

unsigned env_threads() {
  if (const char* s = std::getenv("FATPOINTS_THREADS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(s, &end, 10);
    if (end && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
  }
  return 1;
}

Configuration build_config(unsigned N, unsigned a,
                           const std::vector<unsigned>& free_mults,
                           const std::vector<unsigned>& divisor_mults) {
  Configuration z;
  z.N = N;
  z.a = a;
  for (unsigned m : divisor_mults)
    z.components.push_back(Component::divisor_point(m));
  for (unsigned m : free_mults)
    z.components.push_back(Component::free_point(m));
  return z;
}

std::string write_record(const std::string& dir,
                         const std::vector<std::string>& args,
                         const nlohmann::json& record) {
  fs::create_directories(dir);
  const std::string name = record_name(args) + ".json";
  const fs::path final_path = fs::path(dir) / name;
  const fs::path tmp_path = fs::path(dir) / (name + ".tmp");
  {
    std::ofstream out(tmp_path);
    out << record.dump(2) << "\n";
  }
  fs::rename(tmp_path, final_path);
  return final_path.string();
}

void print_tree(const CertNode& n, unsigned depth) {
  std::string pad(2 * depth, ' ');
  std::cout << pad;
  const auto& c = n.candidate;
  switch (n.kind) {
    case CertNode::Kind::HoraceStep:
      std::cout << "horace_step N=" << c.z.N << " d=" << c.d << " s=" << n.s
                << " r=" << n.r << "\n";
      print_tree(*n.trace_child, depth + 1);
      print_tree(*n.residual_child, depth + 1);
      break;
    case CertNode::Kind::BruteForceLeaf:
      std::cout << "brute_force N=" << c.z.N << " d=" << c.d
                << " kernel=" << n.verdict->computed_h0 << "\n";
      break;
    case CertNode::Kind::WronskianLeaf: {
      std::cout << "wronskian d=" << c.d << " mults=[";
      for (std::size_t i = 0; i < n.mults.size(); ++i)
        std::cout << (i ? "," : "") << n.mults[i];
      std::cout << "]\n";
      break;
    }
    case CertNode::Kind::TrivialLeaf:
      std::cout << "trivial N=" << c.z.N << " d=" << c.d << " (" << n.reason
                << ")\n";
      break;
  }
}

struct CommonOpts {
  unsigned N = 2;
  unsigned d = 0;
  unsigned a = 1;
  std::string mults_text;
  std::string divisor_mults_text;
  std::uint64_t prime = 0;  // 0 = env/default
  unsigned trials = 2;
  std::uint64_t seed = 0;
};

}  // namespace

std::vector<unsigned> parse_mults(const std::string& text) {
  std::vector<unsigned> out;
  if (text.empty()) return out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string tok = text.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      std::size_t xat = tok.find('x');
      if (xat == std::string::npos) {
        std::size_t used = 0;
        int m = std::stoi(tok, &used);
        if (used != tok.size() || m < 1) throw Error("bad multiplicity");
        out.push_back(static_cast<unsigned>(m));
      } else {
        std::size_t used = 0;
        int m = std::stoi(tok.substr(0, xat), &used);
        bool ok = used == xat;
        int k = std::stoi(tok.substr(xat + 1), &used);
        ok = ok && used == tok.size() - xat - 1;
        if (!ok || m < 1 || k < 1) throw Error("bad multiplicity");
        for (int i = 0; i < k; ++i) out.push_back(static_cast<unsigned>(m));
      }
    } catch (const std::exception&) {
      throw Error("cannot parse multiplicity token '" + tok +
                  "' (want e.g. '3' or '2x7')");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string record_name(const std::vector<std::string>& args) {
  std::uint64_t h = 1469598103934665603ull;
  auto eat = [&](unsigned char c) {
    h ^= c;
    h *= 1099511628211ull;
  };
  for (const std::string& a : args) {
    for (char c : a) eat(static_cast<unsigned char>(c));
    eat(0);
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

RunResult run(const std::vector<std::string>& args) {
  const auto t0 = std::chrono::steady_clock::now();
  CLI::App app{"maximal-rank decisions and certificates for generic unions "
               "of fat points"};
  app.fallthrough(true);
  app.require_subcommand(1);
  std::string results_dir = "results";
  app.add_option("--results-dir", results_dir,
                 "where run records are persisted");

  CommonOpts c;
  std::string strategy_text = "smallest-first";
  int base_degree = -1;

  auto add_common = [&](CLI::App* sub, bool with_mults) {
    sub->add_option("--n", c.N, "ambient projective dimension N")->required();
    sub->add_option("--d", c.d, "degree of the forms")->required();
    if (with_mults) {
      sub->add_option("--mults", c.mults_text,
                      "free-point multiplicities, e.g. 2,2,3 or 2x7");
      sub->add_option("--a", c.a, "divisor degree for constrained points");
      sub->add_option("--divisor-mults", c.divisor_mults_text,
                      "multiplicities of points constrained to the divisor");
    }
    sub->add_option("--prime", c.prime, "field characteristic");
    sub->add_option("--trials", c.trials, "oracle trials");
    sub->add_option("--seed", c.seed, "random seed");
  };

  CLI::App* dim = app.add_subcommand(
      "dim", "decide maximal rank of a generic configuration");
  add_common(dim, true);

  CLI::App* certify_cmd = app.add_subcommand(
      "certify", "build a reduction certificate that a candidate wins");
  add_common(certify_cmd, true);
  certify_cmd->add_option("--strategy", strategy_text,
                          "smallest-first or biggest-first");
  certify_cmd->add_option("--base-degree", base_degree,
                          "force direct rank at and below this degree");

  CLI::App* cex = app.add_subcommand(
      "counterexample", "reproduce the characteristic-p failure on the "
                        "cuspidal curve");
  std::uint64_t cex_p = 3;
  cex->add_option("--p", cex_p, "odd prime characteristic")->required();
  cex->add_option("--d", c.d, "degree (at least p-2)")->required();
  cex->add_option("--seed", c.seed, "random seed");

  CLI::App* formal = app.add_subcommand(
      "formal-check", "run the deformation-coefficient corpus");
  FormalParams fp;
  bool mutate = false;
  formal->add_option("--seeds", fp.count, "corpus size");
  formal->add_option("--trunc", fp.trunc, "truncation order in t");
  formal->add_option("--height", fp.max_height, "max model height");
  formal->add_option("--rate", fp.max_rate, "max deformation rate");
  formal->add_option("--seed", fp.seed, "base seed");
  formal->add_option("--prime", c.prime, "field characteristic");
  formal->add_flag("--mutate", mutate,
                   "also inject out-of-layer mutants and require detection");

  CLI::App* plan = app.add_subcommand(
      "plan", "print the induction schedule and its thresholds");
  unsigned plan_m = 2, plan_n = 1;
  plan->add_option("--m", plan_m, "point multiplicity")->required();
  plan->add_option("--n", plan_n, "divisor dimension n (ambient P^(n+1))")
      ->required();

  std::vector<const char*> argv;
  argv.push_back("fatpoints");
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return {app.exit(e), {}, {}};
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return {1, {}, {}};
  }

  RunResult result;
  try {
    const std::uint64_t prime = c.prime ? c.prime : env_prime();
    std::string command;
    nlohmann::json payload;
    int code = 0;

    if (dim->parsed()) {
      command = "dim";
      Configuration z = build_config(c.N, c.a, parse_mults(c.mults_text),
                                     parse_mults(c.divisor_mults_text));
      if (z.components.empty()) throw Error("no components given");
      Verdict v = generic_h0(z, c.d, OracleOptions{c.trials, prime, c.seed});
      std::cout << "expected_h0 = " << v.expected_h0 << "\n"
                << "computed_h0 = " << v.computed_h0 << "\n"
                << "classification = "
                << (v.maximal_rank ? "maximal-rank" : "special") << "\n";
      payload = to_json(v);
      code = v.maximal_rank ? 0 : 2;
    } else if (certify_cmd->parsed()) {
      command = "certify";
      Configuration z = build_config(c.N, c.a, parse_mults(c.mults_text),
                                     parse_mults(c.divisor_mults_text));
      if (z.components.empty()) throw Error("no components given");
      Candidate cand = make_candidate(std::move(z), c.d);
      CertifyOptions o;
      o.trials = c.trials;
      o.prime = prime;
      o.seed = c.seed;
      o.strategy = strategy_from_name(strategy_text);
      if (base_degree >= 0) o.base_degree = static_cast<unsigned>(base_degree);
      try {
        Certificate cert = certify(cand, o);
        print_tree(cert.root, 0);
        std::cout << "nodes = " << node_count(cert.root) << "\n"
                  << "verdict = winning\n";
        payload = to_json(cert);
        code = 0;
      } catch (const CertificationFailed& e) {
        std::cout << "verdict = failed\n"
                  << "reason = " << e.what() << "\n";
        payload = {{"schema", "fatpoints/certify_failure/1"},
                   {"message", e.what()},
                   {"failing", to_json(e.failing)}};
        code = 2;
      }
    } else if (cex->parsed()) {
      command = "counterexample";
      CuspidalReport rep = cuspidal_counterexample(cex_p, c.d, c.seed);
      std::cout << "h0_formula = " << rep.h0_formula << "\n"
                << "dim_vd = " << rep.dim_vd << "\n"
                << "conditions = " << rep.conditions << "\n"
                << "kernel_dim = " << rep.kernel_dim << "\n";
      payload = to_json(rep);
      code = (rep.kernel_dim >= 1 && rep.dim_vd == rep.h0_formula) ? 0 : 2;
    } else if (formal->parsed()) {
      command = "formal-check";
      fp.prime = c.prime ? c.prime : env_prime();
      fp.inject_mutants = mutate;
      FormalSummary sum = run_formal_corpus(fp);
      std::cout << "count = " << sum.count << "\n"
                << "membership_passes = " << sum.membership_passes << "\n"
                << "formula_matches = " << sum.formula_matches << "\n"
                << "slicing_holds = " << sum.slicing_holds << "\n"
                << "slicing_unmet = " << sum.slicing_unmet << "\n"
                << "violations = " << sum.violations << "\n";
      if (mutate)
        std::cout << "mutants_detected = " << sum.mutants_detected << " / "
                  << sum.mutants_injected << "\n";
      payload = to_json(sum);
      code = sum.all_good() ? 0 : 2;
    } else if (plan->parsed()) {
      command = "plan";
      PlanReport rep = plan_schedule(plan_m, plan_n);
      std::cout << "m = " << rep.m << ", n = " << rep.n << " (ambient P^"
                << rep.n + 1 << ")\n"
                << "trivial = " << (rep.trivial ? "yes" : "no") << "\n"
                << "stability_a = " << rep.stability_a << "\n"
                << "per_point_trace = " << rep.per_point_trace << "\n";
      for (const auto& s : rep.steps)
        std::cout << "  [" << (s.existential ? "existential" : "checked")
                  << "] " << s.name << ": " << s.inequality << "\n";
      payload = to_json(rep);
      code = 0;
    }

    const auto t1 = std::chrono::steady_clock::now();
    const double wall_ms =
        std::chrono::duration<double, std::milli>(t1 - t0).count();
    result.record = {{"schema", "fatpoints/run_record/1"},
                     {"command", command},
                     {"argv", args},
                     {"seed", c.seed},
                     {"prime", c.prime ? c.prime : env_prime()},
                     {"threads", env_threads()},
                     {"wall_ms", wall_ms},
                     {"exit_code", code},
                     {"payload", payload}};
    result.record_path = write_record(results_dir, args, result.record);
    std::cout << "record = " << result.record_path << "\n";
    result.exit_code = code;
    return result;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return {1, {}, {}};
  }
}

int main_entry(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args).exit_code;
}

}  // namespace fatpoints::cli
