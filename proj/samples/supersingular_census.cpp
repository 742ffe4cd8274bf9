// Prints the supersingular j-invariants over F_{p^2} for a few primes with
// their automorphism weights, and checks the Eichler-Deuring mass.

#include <cstdio>

#include "hdrflow.hpp"

int main()
{
    using namespace hdrflow;
    for (std::uint64_t p : {11u, 13u, 37u, 101u}) {
        const SupersingularLocus locus = enumerate_supersingular(p);
        ExactRational mass;
        std::printf("p = %llu: %zu supersingular j\n", static_cast<unsigned long long>(p), locus.size());
        for (std::size_t i = 0; i < locus.size(); ++i) {
            mass += ExactRational(1, locus.aut_orders[i]);
            std::printf("  j = %-10s #Aut = %d\n", locus.j_values[i].to_string().c_str(), locus.aut_orders[i]);
        }
        const ExactRational expected(static_cast<long long>(p) - 1, 24);
        std::printf("  mass %s, (p-1)/24 = %s\n", mass.to_string().c_str(), expected.to_string().c_str());
        const ClumpReport clump = verify_clump(p, 2);
        std::printf("  Phi_2 clump: closed %d, regular %d, connected %d\n", clump.closed, clump.regular, clump.connected);
    }
}
