// Build E2, check it, pair it with the Poincare tower and evaluate the potential
// at b = T^1/2 x. Exits nonzero if any step disagrees with the expected value.

#include "ainf/potential.hpp"
#include "ainf/reference.hpp"

#include <iostream>

using namespace ainf;

int main() {
    const Rational E(3);
    Algebra A = e2(E);

    auto rel = check_ainfty(A, 6);
    std::cout << "A-infinity relations: " << (rel.pass() ? "hold" : "fail") << " on " << rel.checked << " tuples\n";
    if (!rel.pass()) return 1;

    auto built = build_phi(A, table_tower(A, {reference::poincare_e1(A)}), 4);
    if (!built.phi) return 1;
    const InfinityInnerProduct& phi = *built.phi;
    std::cout << "closed: " << (check_closed(phi, 4).pass() ? "yes" : "no") << "\n";

    Element<RingElement> b;
    add_term(b, A.basis.index("x"), parse_ring("T^1/2", E));
    RingElement v = infty_cyclic_potential(A, phi, b);
    std::cout << "Phi'(T^1/2 x) = " << to_string(v) << "\n";

    // only m0 contributes: Phi'(a T^1/2 x) = a T^3/2 e
    return v == parse_ring("T^3/2 e", E) ? 0 : 1;
}
