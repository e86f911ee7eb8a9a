// C0_effective(201) within 25% of C0_effective(101).  Exit status 1 when not.

#include "sharpturn/construction.hpp"

#include <cmath>
#include <cstdio>

int main() {
  using namespace sharpturn;
  const double a = construct_example(101).params.C0_effective;
  const double b = construct_example(201).params.C0_effective;
  const double rel = std::fabs(b - a) / a;
  std::printf("C0_effective: n=101 %.6f, n=201 %.6f, relative difference %.4f (limit 0.25)\n", a, b, rel);
  return rel <= 0.25 ? 0 : 1;
}
