#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "speclab/mobius.hpp"
#include "speclab/word.hpp"

namespace speclab::fuchsian {

// Cocompact torsion-free Fuchsian group with the canonical one-relator
// surface presentation <a1,b1,a2,b2 | [a1,b1][a2,b2]>.
struct SurfaceGroup {
    int genus = 2;
    std::vector<Mobius> generators;       // a1, b1, a2, b2
    Word relator;                         // a b A B c d C D
    std::vector<Word> relator_variants;   // all rotations of relator and inverse
    std::string preset = "octagon";

    int num_generators() const { return 2 * genus; }
    int alphabet_size() const { return 4 * genus; }

    Mobius letter_matrix(Letter l) const {
        return l < num_generators() ? generators[l]
                                    : generators[l - num_generators()].inverse();
    }
};

// The regular-octagon genus-2 surface (Bolza). All four generators are
// systolic translations with |trace| = 2(1+sqrt 2).
SurfaceGroup build_genus2_octagon();

Mobius word_matrix(const SurfaceGroup& g, const Word& w);

// Dehn reduction to a freely reduced word of minimal length representing the
// same group element. Returns the empty word iff w is the identity.
Word reduce(const SurfaceGroup& g, const Word& w);

// Deterministic canonical representative of the conjugacy class of w:
// minimum under (length, lex) over the cyclic-rotation / relator-substitution
// orbit. Throws on identity input.
Word cyclic_canonical(const SurfaceGroup& g, const Word& w);

// Same orbit exploration, returning every minimal-length cyclically reduced
// representative (used by the primitivity test).
std::vector<Word> cyclic_canonical_orbit(const SurfaceGroup& g, const Word& w);

bool is_primitive(const SurfaceGroup& g, const Word& canonical_cyclic);

// Minimization over conjugations by all words of length <= radius combined
// with element-level Dehn reduction; the complete conjugacy canonicalizer
// (the rotation/half-swap orbit alone is not: some same-length conjugates
// share no half-relator subword). Optionally returns the final equal-length
// plateau. Also serves as the stage-2 verification oracle.
Word conjugation_minimize(const SurfaceGroup& g, const Word& w, int radius = 4,
                          std::set<Word>* plateau_out = nullptr);

struct PrimitiveClass {
    Word canonical_word;
    double length = 0.0;
    bool primitive = true;
    int inverse_pair = -1;   // index of the class of the inverse
    bool p0_representative = false;
};

struct GeodesicTable {
    double cutoff = 0.0;
    std::vector<PrimitiveClass> classes;  // sorted by (length, word)
    std::string preset = "octagon";
    int genus = 2;

    double systole() const;
};

struct EnumerateOptions {
    std::size_t class_ceiling = 5'000'000;  // resource guard
    double stage2_verify_up_to = 8.0;       // conjugation-ball check cutoff
    int workers = 1;
};

// Complete table of primitive conjugacy classes with length <= T.
GeodesicTable enumerate_primitives(const SurfaceGroup& g, double T,
                                   const EnumerateOptions& opt = {});

// Independent enumeration strategy (wider ball, conjugation-orbit dedup);
// used as a cross-check oracle against enumerate_primitives.
GeodesicTable enumerate_primitives_dual(const SurfaceGroup& g, double T);

// N0(T) primitive count and N(T) including powers via
// N(T) = N0(T) + sum_{k>=2} N0(T/k).
struct GeodesicCounts {
    std::int64_t primitive = 0;
    std::int64_t total = 0;
};
GeodesicCounts count(const GeodesicTable& table, double T);

}  // namespace speclab::fuchsian
