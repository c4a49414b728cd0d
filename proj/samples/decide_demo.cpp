// Decide a few four-dimensional embeddings and print the outcome with its reason.

#include <ellipack/ellipack.hpp>

#include <iostream>

using namespace ellipack;

int main() {
    const Surd r28 = Surd::parse("28^(1/2)");
    const std::pair<Ellipsoid, Ellipsoid> cases[] = {
        {Ellipsoid{1, 1}, Ellipsoid{1, 2}},
        {Ellipsoid{1, 1}, Ellipsoid{Surd(Rat(9, 10)), Surd(Rat(6, 5))}},
        {Ellipsoid{1, 28}, Ellipsoid{r28, r28}},
        {Ellipsoid{1, 4}, Ellipsoid{2, 2}},
    };
    for (const auto& [dom, tgt] : cases) {
        const Decision d = decide(dom, tgt, DecideOptions{2000});
        std::cout << dom.to_string() << " -> " << tgt.to_string() << ": " << to_string(d.outcome);
        if (d.justification) std::cout << " by " << to_string(d.justification->rule);
        if (d.witness)
            std::cout << " at k=" << d.witness->k << " (" << d.witness->lhs.to_string() << " > " << d.witness->rhs.to_string()
                      << ")";
        if (d.outcome == Decision::Outcome::verified_up_to) std::cout << " (" << d.verified_terms << " terms)";
        std::cout << '\n';
    }
}
