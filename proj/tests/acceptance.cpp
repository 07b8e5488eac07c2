// Prints one PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <iostream>

#include "ccmm/harness/acceptance.hpp"

int main() {
  const auto results = ccmm::harness::run_acceptance({});
  bool ok = true;
  for (const auto& r : results) {
    std::cout << (r.passed ? "PASS" : "FAIL") << " criterion " << r.id << ": " << r.name;
    if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
    std::cout << "\n";
    ok = ok && r.passed;
  }
  return ok ? 0 : 1;
}
