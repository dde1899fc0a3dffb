#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace speclab {

// Letters index the alphabet {a, b, c, d, A, B, C, D} as 0..7 for genus 2;
// generally 0..2g-1 are generators and l ^ INV_BIT-style arithmetic does not
// apply, so we keep an explicit rule: letter l has inverse inverse_letter(l).
using Letter = std::uint8_t;
using Word = std::vector<Letter>;

constexpr int kGenus2Alphabet = 8;

inline Letter inverse_letter(Letter l, int num_generators = 4) {
    return l < num_generators ? Letter(l + num_generators)
                              : Letter(l - num_generators);
}

std::string word_to_string(const Word& w, int num_generators = 4);
Word word_from_string(const std::string& s, int num_generators = 4);

Word inverse_word(const Word& w, int num_generators = 4);

// Cancel adjacent letter/inverse pairs until none remain.
Word free_reduce(const Word& w, int num_generators = 4);

// Free reduction plus removal of inverse first/last pairs (conjugation).
Word cyclic_reduce(const Word& w, int num_generators = 4);

bool is_freely_reduced(const Word& w, int num_generators = 4);
bool is_cyclically_reduced(const Word& w, int num_generators = 4);

// Lexicographically smallest cyclic rotation (letters compared by index).
Word min_rotation(const Word& w);

// Total order used everywhere: length first, then lexicographic.
inline bool word_less(const Word& x, const Word& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
}

Word concat(const Word& x, const Word& y);

}  // namespace speclab
