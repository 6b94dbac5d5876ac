// Acceptance suite: one check per release criterion, each printing a single
// pass/fail line.  Run all, or a single one with --only N.

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include "acceptance_criteria.hpp"

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
      only = std::atoi(argv[i + 1]);
    }
  }

  const std::vector<acceptance::Criterion>& criteria = acceptance::all_criteria();
  bool all_pass = true;
  for (const acceptance::Criterion& c : criteria) {
    if (only != 0 && c.number != only) continue;
    acceptance::Result res;
    try {
      res = c.run();
    } catch (const std::exception& e) {
      res.pass = false;
      res.detail = std::string("exception: ") + e.what();
    }
    std::printf("[%s] %02d %-24s %s\n", res.pass ? "PASS" : "FAIL", c.number, c.name,
                res.detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && res.pass;
  }
  return all_pass ? 0 : 1;
}
