#include "speclab/word.hpp"

#include <algorithm>
#include <cstring>
#include <stdexcept>

namespace speclab {

static const char* kLetterChars = "abcdABCD";

std::string word_to_string(const Word& w, int num_generators) {
    if (num_generators != 4)
        throw std::invalid_argument("word_to_string: only genus 2 alphabet");
    std::string s;
    s.reserve(w.size());
    for (Letter l : w) s.push_back(kLetterChars[l]);
    return s;
}

Word word_from_string(const std::string& s, int num_generators) {
    if (num_generators != 4)
        throw std::invalid_argument("word_from_string: only genus 2 alphabet");
    Word w;
    w.reserve(s.size());
    for (char c : s) {
        const char* p = std::strchr(kLetterChars, c);
        if (!p || c == '\0')
            throw std::invalid_argument("word_from_string: bad letter");
        w.push_back(Letter(p - kLetterChars));
    }
    return w;
}

Word inverse_word(const Word& w, int num_generators) {
    Word out;
    out.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it)
        out.push_back(inverse_letter(*it, num_generators));
    return out;
}

Word free_reduce(const Word& w, int num_generators) {
    Word out;
    out.reserve(w.size());
    for (Letter l : w) {
        if (!out.empty() && out.back() == inverse_letter(l, num_generators))
            out.pop_back();
        else
            out.push_back(l);
    }
    return out;
}

Word cyclic_reduce(const Word& w, int num_generators) {
    Word out = free_reduce(w, num_generators);
    while (out.size() >= 2 &&
           out.front() == inverse_letter(out.back(), num_generators)) {
        out.erase(out.begin());
        out.pop_back();
        out = free_reduce(out, num_generators);
    }
    return out;
}

bool is_freely_reduced(const Word& w, int num_generators) {
    for (size_t i = 1; i < w.size(); i++)
        if (w[i] == inverse_letter(w[i - 1], num_generators)) return false;
    return true;
}

bool is_cyclically_reduced(const Word& w, int num_generators) {
    if (!is_freely_reduced(w, num_generators)) return false;
    if (w.size() >= 2 && w.front() == inverse_letter(w.back(), num_generators))
        return false;
    return true;
}

Word min_rotation(const Word& w) {
    if (w.empty()) return w;
    Word best = w;
    Word cur = w;
    for (size_t r = 1; r < w.size(); r++) {
        std::rotate(cur.begin(), cur.begin() + 1, cur.end());
        if (cur < best) best = cur;
    }
    return best;
}

Word concat(const Word& x, const Word& y) {
    Word out = x;
    out.insert(out.end(), y.begin(), y.end());
    return out;
}

}  // namespace speclab
