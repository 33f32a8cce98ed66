// Runs the acceptance checks and prints one verdict line per check.
// Exit code 0 when every check passes, 1 otherwise.
#include <cstdio>
#include <string>

#include "hcount/harness.hpp"

int main(int argc, char** argv) {
  std::string filter = argc > 1 ? argv[1] : "";
  int failures = 0;
  for (const auto& res : hcount::verify_suite(filter)) {
    std::printf("%s %-22s %s (%.1fs)\n", res.pass ? "PASS" : "FAIL",
                res.name.c_str(), res.detail.c_str(), res.seconds);
    std::fflush(stdout);
    if (!res.pass) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
