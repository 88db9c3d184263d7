// Runs the twelve acceptance criteria and prints one PASS/FAIL line per
// criterion. Exit status is the number of failures (capped at 1).

#include <fmt/format.h>

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>

#include "crown/verify.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 0;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  int failed = 0;
  for (const auto& check : crown::acceptance_checks()) {
    const auto r = crown::run_check(check, seed);
    if (!r.pass) ++failed;
    std::cout << fmt::format("{}  {:<32} {}\n", r.pass ? "PASS" : "FAIL", check.name, r.detail) << std::flush;
  }
  std::cout << fmt::format("{} criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
