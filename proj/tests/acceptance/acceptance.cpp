// Runs every acceptance criterion and prints one PASS/FAIL line each.
// Usage: acceptance [--quick] [--seed S] [--threads N] [--only ID ...]

#include <cstdlib>
#include <iostream>
#include <string>

#include "quasihyper/validation.hpp"

int main(int argc, char** argv) {
  quasihyper::AcceptanceOptions opts;
  for (int a = 1; a < argc; ++a) {
    std::string arg = argv[a];
    if (arg == "--quick") {
      opts.full = false;
    } else if (arg == "--seed" && a + 1 < argc) {
      opts.seed = std::strtoull(argv[++a], nullptr, 10);
    } else if (arg == "--threads" && a + 1 < argc) {
      opts.threads = static_cast<unsigned>(std::strtoul(argv[++a], nullptr, 10));
    } else if (arg == "--only" && a + 1 < argc) {
      opts.only.push_back(std::atoi(argv[++a]));
    } else {
      std::cerr << "unknown argument " << arg << "\n";
      return 2;
    }
  }
  int failed = 0;
  quasihyper::run_acceptance(opts, [&](const quasihyper::CriterionResult& r) {
    std::cout << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << " [" << r.kind << "] " << r.name << " ("
              << r.seconds << " s): " << r.detail << std::endl;
    failed += r.passed ? 0 : 1;
  });
  std::cout << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criterion/criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
