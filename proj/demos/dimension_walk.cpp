// Prescribed dimension -> partition -> normal partition, and how fast a_n settles.

#include <cstdio>

#include "unitri/unitri.hpp"

using namespace unitri;

int main(int argc, char** argv) {
  const auto alpha = AlphaTarget::parse(argc > 1 ? argv[1] : "const:pi-inv");
  const auto mu = partition_for_alpha(alpha, 20);
  const auto nu = monotone_normalize(mu);
  std::printf("alpha      %s\n", alpha.to_string().c_str());
  std::printf("partition  %s\n", to_string(mu).c_str());
  std::printf("normalized %s  normal=%s\n", to_string(nu).c_str(), is_normal(nu) ? "yes" : "no");

  for (int N : {20, 100, 1000, 10000}) {
    const auto s = dim_sequence_partition(partition_for_alpha(alpha, N), N);
    const Rational& a = s.at(N);
    std::printf("a_%-6d = %s  (%s)\n", N, to_decimal(a, 10).c_str(),
                N <= 100 ? a.str().c_str() : (std::to_string(s.counts.back().convert_to<long long>()) + " squares").c_str());
  }
}
