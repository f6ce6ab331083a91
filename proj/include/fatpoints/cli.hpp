#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace fatpoints::cli {

// Exit codes: 0 = success / maximal rank, 2 = definitive negative (special
// system, failed certification, failed corpus), 1 = operational error.
struct RunResult {
  int exit_code = 1;
  nlohmann::json record;     // the run record (empty on operational errors)
  std::string record_path;   // where it was persisted ("" if not written)
};

// Parses `args` (without the program name), executes one subcommand, prints
// a human summary to stdout, persists the run record.  Never throws; errors
// become exit code 1 with a message on stderr.
RunResult run(const std::vector<std::string>& args);

// Thin argv adapter for main().
int main_entry(int argc, char** argv);

// "2x7" (seven points of multiplicity 2), "3", or comma lists mixing both.
std::vector<unsigned> parse_mults(const std::string& text);

// FNV-1a-64 over the argument vector; names record files.
std::string record_name(const std::vector<std::string>& args);

}  // namespace fatpoints::cli
