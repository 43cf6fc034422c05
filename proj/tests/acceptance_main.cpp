// Acceptance suite: one line per criterion, nonzero exit if any fails.
#include <cstdlib>
#include <iostream>
#include <string>

#include "dqd/acceptance.hpp"
#include "dqd/io.hpp"

int main(int argc, char** argv) {
  dqd::AcceptanceOptions opts;
  for (int i = 1; i < argc; ++i) opts.only.push_back(std::atoi(argv[i]));
  std::cout << "# dqdcorr " << dqd::version() << " acceptance\n" << std::flush;
  int failed = 0;
  const auto res = dqd::run_acceptance(opts, [&](const dqd::CriterionResult& r) {
    std::cout << dqd::format_result(r) << std::endl;
    failed += r.pass ? 0 : 1;
  });
  std::cout << "# " << res.size() - failed << "/" << res.size() << " passed\n";
  return failed ? 4 : 0;
}
