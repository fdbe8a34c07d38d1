#pragma once

// Single-sign mutants of an algebra, for measuring how sharply `check` detects sign errors.

#include "hochschild.hpp"

namespace ainf {

struct Mutant {
    std::string label;
    Algebra algebra;
    SignMutation flip;
    // provably still a strictly unital A-infinity algebra, so no check can kill it
    bool equivalent = false;
};

// negate one output coefficient of one structure constant
inline std::vector<Mutant> structure_constant_mutants(const Algebra& A) {
    std::vector<Mutant> out;
    for (std::size_t i = 0; i < A.entries.size(); ++i)
        for (const auto& [o, c] : A.entries[i].output) {
            Mutant m{A.name + " m" + A.basis.word_name(A.entries[i].inputs) + "->" + A.basis.names[static_cast<std::size_t>(o)] + " beta=" +
                         std::to_string(A.entries[i].beta),
                     A, {}, false};
            m.algebra.entries[i].output[o] = -c;
            m.algebra.finalize();
            // a multiple of the unit in m0 drops out of every relation under a strict unit
            m.equivalent = A.entries[i].inputs.empty() && o == A.basis.unit;
            out.push_back(std::move(m));
        }
    return out;
}

// negate the coderivation sign for one (inserted arity, position) pair; only pairs
// that reach an outer operation within kmax inputs are listed
inline std::vector<Mutant> coderivation_mutants(const Algebra& A, int kmax) {
    std::vector<Mutant> out;
    const auto& ar = A.arities();
    for (int k : ar)
        for (int pos = 0; pos <= kmax; ++pos) {
            bool live = false;
            for (int n = std::max(k, pos + k); n <= kmax && !live; ++n) live = ar.count(n - k + 1) > 0;
            if (!live) continue;
            Mutant m{A.name + " coderivation k=" + std::to_string(k) + " pos=" + std::to_string(pos), A, {}, false};
            m.flip.flips.insert({k, pos});
            out.push_back(std::move(m));
        }
    return out;
}

// negate one Koszul sign of the Hochschild b on chains of up to `slots` slots
inline std::vector<Mutant> hochschild_mutants(const Algebra& A, int slots) {
    std::vector<Mutant> out;
    for (int k : A.arities()) {
        if (k >= 1 && k <= slots)
            for (int i = 0; i < k; ++i) {
                Mutant m{A.name + " b wrap k=" + std::to_string(k) + " tail=" + std::to_string(i), A, {}, false};
                m.flip.b_wrap.insert({k, i});
                out.push_back(std::move(m));
            }
        for (int st = 0; st + k <= slots - 1; ++st) {
            Mutant m{A.name + " b interior k=" + std::to_string(k) + " start=" + std::to_string(st), A, {}, false};
            m.flip.b_interior.insert({k, st});
            out.push_back(std::move(m));
        }
    }
    return out;
}

// killed when the A-infinity relations, the strict unit or a chain identity on the given chains fail
inline bool killed(const Mutant& m, int kmax, const std::vector<LinComb<RingElement>>& chains = {}) {
    const SignMutation* f = m.flip.empty() ? nullptr : &m.flip;
    if (!check_ainfty(m.algebra, kmax, f).pass()) return true;
    if (!check_strict_unit(m.algebra, kmax).pass()) return true;
    return !chains.empty() && !check_chain_identities(m.algebra, chains, f).pass();
}

}  // namespace ainf
