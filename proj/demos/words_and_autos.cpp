// Words in the free product of two cyclic groups of order p, their unitriangular
// images, and a sweep of automorphism checks on a small window.

#include <cstdio>
#include <random>

#include "unitri/unitri.hpp"

using namespace unitri;

int main() {
  const std::uint64_t p = 3;
  auto R = Ring::prime_field(p);

  for (const char* text : {"x y", "x^2 y x y^2", "y x y"}) {
    const auto w = parse_word(text, p);
    const auto img = phi(w, R, 9);
    const auto len = read_length(img);
    std::printf("%-12s -> %zu nonzero entries, read back as length %d (case %s)\n", text, img.entries().size(),
                len.length, to_string(len.which).c_str());
  }
  for (int n = 3; n <= 7; ++n) {
    const std::vector<UniTriWindow> st{s_power(R, n, 1), t_power(R, n, 1)};
    std::printf("n=%d  |<s,t>| = %llu = 3^%d\n", n, static_cast<unsigned long long>(closure_order(st)), xi(n));
  }

  std::mt19937_64 rng(5);
  auto F9 = Ring::ext_field(p, 2);
  const int n = 5;
  for (const auto& aut : {AutDescriptor::tau(), AutDescriptor::field(1), AutDescriptor::inner(random_element(F9, n, rng)),
                          AutDescriptor::central_scalar(2, *F9, 1), AutDescriptor::extremal(1, Side::left)}) {
    const auto rep = verify_automorphism(aut, F9, n, 200, rng());
    std::printf("%-9s over F_9 at n=%d: %s\n", kind_name(aut.kind).c_str(), n, rep.ok() ? "automorphism" : "FAILED");
  }
  std::printf("central/extremal subgroup: 3^%d\n", central_extremal_log_order(F9, n));
}
