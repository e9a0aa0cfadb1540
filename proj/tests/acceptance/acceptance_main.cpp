// Runs every acceptance check and prints one PASS/FAIL line per check.
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "cli/checks.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> only(argv + 1, argv + argc);
  pompeiu::cli::CheckOptions options;
  bool all = true;
  int index = 0;
  for (const auto& r : pompeiu::cli::run_checks(only, options)) {
    std::printf("[%s] %d %-15s %-45s %7.2f s\n", r.passed ? "PASS" : "FAIL", ++index,
                r.name.c_str(), r.title.c_str(), r.seconds);
    for (const std::string& f : r.failures) std::printf("       - %s\n", f.c_str());
    all = all && r.passed;
  }
  std::printf("%s\n", all ? "all acceptance criteria passed" : "acceptance criteria FAILED");
  return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
