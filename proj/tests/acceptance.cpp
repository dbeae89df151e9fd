// Runs the acceptance criteria; `acceptance 3 7` runs only criteria 3 and 7.

#include <cstdlib>
#include <iostream>

#include "acceptance_suite.hpp"

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i)
    only.insert(std::atoi(argv[i]));
  return acceptance::run_all(std::cout, only) ? 0 : 1;
}
