// Release gate: runs every verification criterion and prints one line per
// criterion. Exit 0 when all pass, 2 otherwise (same contract as the
// `verify` CLI subcommand).

#include <cstdio>

#include "wlab/verify.hpp"

int main() {
  bool all = true;
  for (const wlab::CriterionResult& r : wlab::run_acceptance()) {
    std::printf("%-40s %s %s\n", r.name.c_str(), r.pass ? "PASS" : "FAIL",
                r.detail.c_str());
    all = all && r.pass;
  }
  return all ? 0 : 2;
}
