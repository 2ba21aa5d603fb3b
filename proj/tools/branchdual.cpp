// SPDX-License-Identifier: Apache-2.0
// branchdual command-line front end. Builds a JSON job, hands it to the shared
// library and prints the report.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "branchdual/branchdual.h"

using nlohmann::json;

namespace {

const char* kCommands[] = {"analyze",    "inverse-system", "check-af",   "annihilate", "filtration",
                           "derivations", "gorenstein",    "semigroup",  "saturation", "transport",
                           "blowup-chain", "canonical",    "verify"};

bool is_scalar_list(const json& j) {
  if (!j.is_array()) return false;
  for (const auto& x : j)
    if (x.is_structured()) return false;
  return true;
}

std::string scalar(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

void print_human(const json& j, int indent, std::ostream& out) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    // Operators and series print as their expression.
    if (j.contains("expression") && j.contains("coefficients")) {
      out << pad << j["expression"].get<std::string>() << "\n";
      return;
    }
    for (const auto& [key, value] : j.items()) {
      if (value.is_object() && value.contains("expression") && value.contains("coefficients")) {
        out << pad << key << ": " << value["expression"].get<std::string>() << "\n";
      } else if (!value.is_structured()) {
        out << pad << key << ": " << scalar(value) << "\n";
      } else if (is_scalar_list(value)) {
        out << pad << key << ": [";
        bool first = true;
        for (const auto& x : value) {
          out << (first ? "" : ", ") << scalar(x);
          first = false;
        }
        out << "]\n";
      } else {
        out << pad << key << ":\n";
        print_human(value, indent + 2, out);
      }
    }
  } else if (j.is_array()) {
    std::size_t i = 0;
    for (const auto& x : j) {
      if (x.is_object() && !(x.contains("expression") && x.contains("coefficients"))) {
        out << pad << "[" << i << "]\n";
        print_human(x, indent + 2, out);
      } else if (is_scalar_list(x)) {
        out << pad;
        bool first = true;
        for (const auto& y : x) {
          out << (first ? "" : "  ") << scalar(y);
          first = false;
        }
        out << "\n";
      } else {
        print_human(x, indent, out);
      }
      ++i;
    }
  } else {
    out << pad << scalar(j) << "\n";
  }
}

void print_report(const json& report, std::ostream& out, std::ostream& err) {
  if (report.contains("jobs")) {
    for (const auto& r : report["jobs"]) {
      out << "== " << scalar(r["command"]) << "\n";
      print_report(r, out, err);
    }
    return;
  }
  if (report.contains("error")) {
    err << "error (" << report["error"]["code"].get<std::string>() << "): " << report["error"]["message"].get<std::string>()
        << "\n";
    return;
  }
  if (report.value("status", "ok") != "ok") out << "status: " << report["status"].get<std::string>() << "\n";
  print_human(report["result"], 0, out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-codimension subalgebras of k[[t]] over Q: invariants and inverse systems"};
  app.set_help_flag("--help", "print this help and exit");
  app.set_version_flag("--version", std::string(bd_version()));

  std::string command;
  std::string gens;
  std::string ops;
  std::string h;
  std::string characteristic;
  std::string file;
  int trunc = 0;
  int conductor = 0;
  bool as_json = false;
  bool inverse = false;

  std::string command_help = "one of:";
  for (const char* c : kCommands) command_help += std::string(" ") + c;
  app.add_option("command", command, command_help)->check(CLI::IsMember(std::vector<std::string>(std::begin(kCommands), std::end(kCommands))));
  app.add_option("--gens", gens, "comma-separated generators, e.g. \"t^3+t^4, t^5\"");
  app.add_option("--v", ops, "semicolon-separated operators in u, e.g. \"u; u^3 - 1/4 u^4\"");
  app.add_option("--h", h, "uniformizer for transport, e.g. \"t + t^2\"");
  app.add_option("--char", characteristic, "characteristic exponents \"e0;b1,b2,...\"");
  app.add_option("--c", conductor, "bound c for transport (defaults to the conductor of --gens)")->check(CLI::PositiveNumber);
  app.add_flag("--inverse", inverse, "transport in the inverse direction");
  app.add_option("--trunc", trunc, "truncation ceiling (default 512)")->check(CLI::PositiveNumber);
  app.add_option("--file", file, "JSON job file (an object, or an array for a batch)");
  app.add_flag("--json", as_json, "print the JSON report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help and version requests exit 0; usage errors exit 1.
    return app.exit(e) == 0 ? 0 : 1;
  }

  std::string job_text;
  if (!file.empty()) {
    std::ifstream in(file);
    if (!in) {
      std::cerr << "error: cannot read " << file << "\n";
      return 1;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    job_text = ss.str();
  } else {
    if (command.empty()) {
      std::cerr << app.help();
      return 1;
    }
    json job = {{"command", command}, {"generators", json::array()}, {"options", json::object()}};
    if (!gens.empty()) job["generators"].push_back(gens);
    if (!ops.empty()) job["options"]["v"] = ops;
    if (!h.empty()) job["options"]["h"] = h;
    if (!characteristic.empty()) job["options"]["char"] = characteristic;
    if (conductor > 0) job["options"]["c"] = conductor;
    if (inverse) job["options"]["inverse"] = true;
    if (trunc > 0) job["options"]["trunc"] = trunc;
    job_text = job.dump();
  }

  char* report_text = nullptr;
  int exit_code = 1;
  if (bd_run_job(job_text.c_str(), &report_text, &exit_code) != BD_OK) {
    std::cerr << "error: " << bd_last_error() << "\n";
    return 1;
  }
  const json report = json::parse(report_text);
  bd_string_free(report_text);
  if (as_json)
    std::cout << report.dump(2) << "\n";
  else
    print_report(report, std::cout, std::cerr);
  return exit_code;
}
