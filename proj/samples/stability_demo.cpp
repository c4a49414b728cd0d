// Packing stability bounds for CP^n and H^n_d, and the chain behind one of them.

#include <ellipack/ellipack.hpp>

#include <iostream>

using namespace ellipack;

int main() {
    for (std::size_t n = 2; n <= 6; ++n) std::cout << "N_stab(CP^" << n << ") <= " << nstab_cpn(n).bound << '\n';
    for (std::size_t d = 1; d <= 4; ++d) std::cout << "N_stab(H^3_" << d << ") <= " << nstab_hnd(3, d).bound << '\n';

    const Certificate c = cpn_chain(3, 27, true);
    std::cout << "\n27 balls into CP^3:\n";
    for (const auto& s : c.steps) {
        std::cout << "  " << s.source.to_string() << " -> " << s.target.to_string() << "  ["
                  << to_string(s.suspension ? s.suspension->inner.rule : s.justification.rule) << "]\n";
    }
    std::cout << "verified: " << (verify(c).ok() ? "yes" : "no") << '\n';
}
