#include "speclab/fuchsian.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <thread>

namespace speclab::fuchsian {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Circumradius of the fundamental octagon, arccosh(3 + 2 sqrt 2).
const double kOctagonCircumradius = std::acosh(3.0 + 2.0 * std::sqrt(2.0));

// Match of a relator-variant prefix inside a word.
struct Match {
    size_t pos;      // start position in the (possibly doubled) word
    size_t len;      // matched length, 4..7
    Word replacement;  // inverse of the variant suffix, length 8 - len
};

// All matches of length k starting anywhere in w (linear, no wrap).
void find_linear_matches(const Word& w, const std::vector<Word>& variants,
                         size_t k, std::vector<Match>& out) {
    if (w.size() < k) return;
    for (const Word& v : variants) {
        for (size_t pos = 0; pos + k <= w.size(); pos++) {
            bool ok = true;
            for (size_t j = 0; j < k; j++)
                if (w[pos + j] != v[j]) {
                    ok = false;
                    break;
                }
            if (ok) {
                Word suffix(v.begin() + k, v.end());
                out.push_back({pos, k, inverse_word(suffix)});
            }
        }
    }
}

Word apply_linear(const Word& w, const Match& m, int ng) {
    Word out(w.begin(), w.begin() + m.pos);
    out.insert(out.end(), m.replacement.begin(), m.replacement.end());
    out.insert(out.end(), w.begin() + m.pos + m.len, w.end());
    return free_reduce(out, ng);
}

// Matches in the cyclic word (positions wrap); w must be cyclically reduced.
void find_cyclic_matches(const Word& w, const std::vector<Word>& variants,
                         size_t k, std::vector<Match>& out) {
    size_t n = w.size();
    if (n < k) return;
    for (const Word& v : variants) {
        for (size_t pos = 0; pos < n; pos++) {
            bool ok = true;
            for (size_t j = 0; j < k; j++)
                if (w[(pos + j) % n] != v[j]) {
                    ok = false;
                    break;
                }
            if (ok) {
                Word suffix(v.begin() + k, v.end());
                out.push_back({pos, k, inverse_word(suffix)});
            }
        }
    }
}

Word apply_cyclic(const Word& w, const Match& m, int ng) {
    size_t n = w.size();
    // rotate so the match starts at 0, then splice
    Word rot(w.begin() + m.pos, w.end());
    rot.insert(rot.end(), w.begin(), w.begin() + m.pos);
    Word out = m.replacement;
    out.insert(out.end(), rot.begin() + m.len, rot.end());
    return cyclic_reduce(out, ng);
}

constexpr size_t kOrbitCap = 500000;
constexpr size_t kReduceSwapCap = 4096;

// strict Dehn shrinking only: replace >half relator subwords until none
Word dehn_shrink_linear(Word w, const std::vector<Word>& variants, int ng) {
    w = free_reduce(w, ng);
    for (;;) {
        std::vector<Match> ms;
        for (size_t k = 7; k >= 5; k--) {
            find_linear_matches(w, variants, k, ms);
            if (!ms.empty()) break;
        }
        if (ms.empty()) return w;
        w = apply_linear(w, ms.front(), ng);
    }
}

Word dehn_shrink_cyclic(Word w, const std::vector<Word>& variants, int ng) {
    w = cyclic_reduce(w, ng);
    for (;;) {
        if (w.empty()) return w;
        std::vector<Match> ms;
        for (size_t k = 7; k >= 5; k--) {
            find_cyclic_matches(w, variants, k, ms);
            if (!ms.empty()) break;
        }
        if (ms.empty()) return w;
        w = apply_cyclic(w, ms.front(), ng);
    }
}

bool has_big_cyclic_match(const Word& w, const std::vector<Word>& variants) {
    std::vector<Match> ms;
    for (size_t k = 7; k >= 5; k--) {
        find_cyclic_matches(w, variants, k, ms);
        if (!ms.empty()) return true;
    }
    return false;
}

}  // namespace

SurfaceGroup build_genus2_octagon() {
    // Central translations of the regular octagon: axis through the origin of
    // the disk model at angle k*pi/4, translation length 2 arccosh(1+sqrt 2).
    const double c = 1.0 + std::sqrt(2.0);
    const double s = std::sqrt(c * c - 1.0);
    Mobius t[4];
    for (int k = 0; k < 4; k++) {
        double phi = k * kPi / 4.0;
        t[k] = {c + s * std::cos(phi), -s * std::sin(phi), -s * std::sin(phi),
                c - s * std::cos(phi)};
    }
    // The central translations satisfy the octagon relation
    // t0 t1^-1 t2 t3^-1 t0^-1 t1 t2^-1 t3 = 1, not the canonical one.
    // These systolic words do satisfy [a1,b1][a2,b2] = 1 and generate.
    SurfaceGroup g;
    g.genus = 2;
    g.generators = {t[0], t[1], t[1] * t[3].inverse() * t[0].inverse(),
                    t[0] * t[2] * t[1].inverse()};
    g.relator = {0, 1, 4, 5, 2, 3, 6, 7};

    for (const Mobius& m : g.generators) {
        if (std::fabs(m.det() - 1.0) > 1e-12)
            throw std::runtime_error("octagon: generator determinant drift");
        if (std::fabs(m.trace()) <= 2.0)
            throw std::runtime_error("octagon: non-hyperbolic generator");
    }
    Mobius rel = word_matrix(g, g.relator);
    if (frob_dist_projective_identity(rel) > 1e-9)
        throw std::runtime_error("octagon: surface relator check failed");

    Word r = g.relator;
    Word ri = inverse_word(r);
    for (int i = 0; i < 8; i++) {
        g.relator_variants.push_back(r);
        g.relator_variants.push_back(ri);
        std::rotate(r.begin(), r.begin() + 1, r.end());
        std::rotate(ri.begin(), ri.begin() + 1, ri.end());
    }
    return g;
}

Mobius word_matrix(const SurfaceGroup& g, const Word& w) {
    Mobius m;
    for (Letter l : w) m = m * g.letter_matrix(l);
    return m;
}

Word reduce(const SurfaceGroup& g, const Word& w) {
    const int ng = g.num_generators();
    Word cur = dehn_shrink_linear(w, g.relator_variants, ng);
    // Search the half-swap orbit for further strict shrinks.
    for (;;) {
        bool shrunk = false;
        std::set<Word> visited{cur};
        std::deque<Word> queue{cur};
        while (!queue.empty()) {
            Word x = queue.front();
            queue.pop_front();
            std::vector<Match> ms;
            find_linear_matches(x, g.relator_variants, 4, ms);
            for (const Match& m : ms) {
                Word y = apply_linear(x, m, ng);
                if (y.size() < x.size() ||
                    dehn_shrink_linear(y, g.relator_variants, ng).size() <
                        y.size()) {
                    cur = dehn_shrink_linear(y, g.relator_variants, ng);
                    shrunk = true;
                    break;
                }
                if (visited.size() < kReduceSwapCap && visited.insert(y).second)
                    queue.push_back(y);
            }
            if (shrunk) break;
        }
        if (!shrunk) {
            // minimal length reached; deterministic representative
            return *std::min_element(visited.begin(), visited.end(),
                                     word_less);
        }
    }
}

namespace {

// Orbit of the cyclic word under rotations and length-preserving relator
// substitutions, restarting whenever length drops. States are stored in
// min-rotation normal form.
std::vector<Word> cyclic_orbit(const SurfaceGroup& g, Word start) {
    const int ng = g.num_generators();
    Word cur = dehn_shrink_cyclic(start, g.relator_variants, ng);
    if (cur.empty())
        throw std::invalid_argument("cyclic_canonical: identity input");
    for (;;) {
        bool shrunk = false;
        Word seed = min_rotation(cur);
        std::set<Word> visited{seed};
        std::deque<Word> queue{seed};
        while (!queue.empty()) {
            Word x = queue.front();
            queue.pop_front();
            std::vector<Match> ms;
            find_cyclic_matches(x, g.relator_variants, 4, ms);
            for (const Match& m : ms) {
                Word y = apply_cyclic(x, m, ng);
                if (y.size() < x.size() ||
                    has_big_cyclic_match(y, g.relator_variants)) {
                    cur = dehn_shrink_cyclic(y, g.relator_variants, ng);
                    if (cur.empty())
                        throw std::invalid_argument(
                            "cyclic_canonical: identity input");
                    shrunk = true;
                    break;
                }
                y = min_rotation(y);
                if (visited.insert(y).second) {
                    if (visited.size() > kOrbitCap)
                        throw std::runtime_error(
                            "cyclic_canonical: orbit cap exceeded");
                    queue.push_back(y);
                }
            }
            if (shrunk) break;
        }
        if (!shrunk) return {visited.begin(), visited.end()};
    }
}

}  // namespace

std::vector<Word> cyclic_canonical_orbit(const SurfaceGroup& g, const Word& w) {
    return cyclic_orbit(g, w);
}

namespace {

// min of the rotation/half-swap orbit; fast but not a complete conjugacy
// invariant (same-length conjugates exist that share no half-relator subword)
Word orbit_canonical(const SurfaceGroup& g, const Word& w) {
    auto orbit = cyclic_orbit(g, w);
    return *std::min_element(orbit.begin(), orbit.end(), word_less);
}

}  // namespace

Word cyclic_canonical(const SurfaceGroup& g, const Word& w) {
    return conjugation_minimize(g, orbit_canonical(g, w), 4);
}

bool is_primitive(const SurfaceGroup& g, const Word& canonical_cyclic) {
    std::set<Word> reps;
    for (const Word& u : cyclic_orbit(g, canonical_cyclic)) reps.insert(u);
    std::set<Word> plateau;
    conjugation_minimize(g, canonical_cyclic, 4, &plateau);
    reps.insert(plateau.begin(), plateau.end());
    for (const Word& u : reps) {
        size_t n = u.size();
        for (size_t d = 1; d <= n / 2; d++) {
            if (n % d != 0) continue;
            bool rep = true;
            for (size_t i = d; i < n && rep; i++)
                if (u[i] != u[i - d]) rep = false;
            if (rep) return false;
        }
    }
    return true;
}

Word conjugation_minimize(const SurfaceGroup& g, const Word& w, int radius,
                          std::set<Word>* plateau_out) {
    const int ng = g.num_generators();
    const int na = g.alphabet_size();
    // all freely reduced conjugators of length <= radius
    std::vector<Word> conjugators;
    Word stackw;
    auto rec = [&](auto&& self, int depth) -> void {
        if (depth > 0) conjugators.push_back(stackw);
        if (depth == radius) return;
        for (Letter l = 0; l < na; l++) {
            if (!stackw.empty() && stackw.back() == inverse_letter(l, ng)) continue;
            stackw.push_back(l);
            self(self, depth + 1);
            stackw.pop_back();
        }
    };
    rec(rec, 0);

    Word best = min_rotation(cyclic_reduce(reduce(g, w), ng));
    if (best.empty())
        throw std::invalid_argument("conjugation_minimize: identity input");
    // The element-level reduce of u x u^-1 is what can cross relator moves;
    // conjugators with no boundary cancellation are vacuous after cyclic
    // reduction and are skipped. Equal-length forms are explored as a plateau.
    for (;;) {
        bool shrunk = false;
        std::set<Word> visited{best};
        std::deque<Word> queue{best};
        while (!queue.empty()) {
            Word x = queue.front();
            queue.pop_front();
            for (const Word& u : conjugators) {
                Word raw = concat(concat(u, x), inverse_word(u, ng));
                Word v = free_reduce(raw, ng);
                if (v.size() == raw.size()) continue;
                v = min_rotation(cyclic_reduce(reduce(g, v), ng));
                if (v.empty())
                    throw std::invalid_argument(
                        "conjugation_minimize: identity input");
                if (v.size() < best.size()) {
                    best = v;
                    shrunk = true;
                    break;
                }
                if (v.size() == best.size() && visited.insert(v).second) {
                    if (visited.size() > 20000)
                        throw std::runtime_error(
                            "conjugation_minimize: plateau cap exceeded");
                    queue.push_back(v);
                }
            }
            if (shrunk) break;
        }
        if (!shrunk) {
            if (plateau_out) *plateau_out = visited;
            return *std::min_element(visited.begin(), visited.end(), word_less);
        }
    }
}

double GeodesicTable::systole() const {
    return classes.empty() ? std::numeric_limits<double>::infinity()
                           : classes.front().length;
}

namespace {

// Shared post-processing for both strategies. `canonicalize` must be the
// complete conjugacy canonical form used to key `found`. Proper powers are
// detected numerically (length ratio against shorter classes, confirmed by
// canonicalizing the candidate root power) and dropped.
GeodesicTable finalize_table(
    const SurfaceGroup& g, double T, const std::map<Word, double>& found,
    const std::function<Word(const Word&)>& canonicalize) {
    struct Entry {
        Word word;
        double length;
    };
    std::vector<Entry> all;
    all.reserve(found.size());
    for (const auto& [w, len] : found) all.push_back({w, len});
    std::sort(all.begin(), all.end(), [](const Entry& x, const Entry& y) {
        if (x.length != y.length) return x.length < y.length;
        return word_less(x.word, y.word);
    });

    GeodesicTable table;
    table.cutoff = T;
    table.preset = g.preset;
    table.genus = g.genus;
    std::map<Word, int> index;  // primitive classes only
    for (const Entry& e : all) {
        bool primitive = true;
        for (int k = 2; primitive && !table.classes.empty(); k++) {
            double lroot = e.length / k;
            if (lroot < table.classes.front().length - 1e-6) break;
            // roots are strictly shorter, hence already classified
            auto lo = std::lower_bound(
                table.classes.begin(), table.classes.end(), lroot - 1e-6,
                [](const PrimitiveClass& c, double v) { return c.length < v; });
            for (auto it = lo;
                 it != table.classes.end() && it->length <= lroot + 1e-6; ++it) {
                Word power;
                for (int rep = 0; rep < k; rep++)
                    power = concat(power, it->canonical_word);
                if (canonicalize(power) == e.word) {
                    primitive = false;
                    break;
                }
            }
        }
        if (primitive) {
            // backstop: a visibly block-shaped canonical with no matching
            // root means the enumeration lost the root class
            size_t n = e.word.size();
            for (size_t d = 1; d <= n / 2; d++) {
                if (n % d != 0) continue;
                bool block = true;
                for (size_t i = d; i < n && block; i++)
                    if (e.word[i] != e.word[i - d]) block = false;
                if (block)
                    throw std::runtime_error(
                        "enumerate: power class without its root");
            }
            PrimitiveClass c;
            c.canonical_word = e.word;
            c.length = e.length;
            c.primitive = true;
            index[c.canonical_word] = (int)table.classes.size();
            table.classes.push_back(std::move(c));
        }
    }

    for (size_t i = 0; i < table.classes.size(); i++) {
        Word invcan = canonicalize(inverse_word(table.classes[i].canonical_word));
        auto it = index.find(invcan);
        if (it == index.end())
            throw std::runtime_error("enumerate: inverse class missing");
        int j = it->second;
        if (j == (int)i)
            throw std::runtime_error("enumerate: self-inverse class");
        table.classes[i].inverse_pair = j;
        table.classes[i].p0_representative =
            word_less(table.classes[i].canonical_word,
                      table.classes[j].canonical_word);
    }
    for (size_t i = 0; i < table.classes.size(); i++) {
        int j = table.classes[i].inverse_pair;
        if (table.classes[j].inverse_pair != (int)i)
            throw std::runtime_error("enumerate: pairing not an involution");
    }
    return table;
}

// DFS over freely reduced words collecting cyclically reduced candidates with
// displacement and trace bounds, deduplicated by min-rotation. Prefixes must
// gain displacement at a linear rate (drift_rate * k - drift_slack): minimal
// class representatives fellow-travel their axis and satisfy this with a wide
// margin, while aimless low-displacement paths (whose count explodes with the
// length cap) are cut early. Workers split over first-letter subtrees; the
// set-union merge makes the result independent of the worker count.
std::set<Word> collect_candidates(const SurfaceGroup& g, double T,
                                  double ball_radius, size_t max_len,
                                  size_t candidate_ceiling, double drift_rate,
                                  double drift_slack, int workers = 1) {
    const double cosh_ball = std::cosh(ball_radius);
    const double trace_bound = 2.0 * std::cosh(T / 2.0) * (1.0 + 1e-12) + 1e-9;
    const int na = g.alphabet_size();
    const int ng = g.num_generators();

    std::vector<double> cosh_floor(max_len + 1, 1.0);
    for (size_t k = 0; k <= max_len; k++)
        cosh_floor[k] = std::cosh(std::max(0.0, drift_rate * k - drift_slack));

    auto subtree = [&](Letter first, std::set<Word>& seen) {
        Word w{first};
        std::vector<Mobius> mats;
        mats.reserve(max_len + 2);
        mats.push_back(g.letter_matrix(first));
        if (cosh_displacement(mats.back()) > cosh_ball) return;
        auto rec = [&](auto&& self) -> void {
            const Mobius m = mats.back();  // by value: push_back reallocates
            if (w.front() != inverse_letter(w.back(), ng)) {
                double tr = std::fabs(m.trace());
                if (tr > 2.0 + 1e-9 && tr <= trace_bound) {
                    if (seen.size() >= candidate_ceiling)
                        throw std::runtime_error(
                            "enumerate: candidate ceiling exceeded");
                    seen.insert(min_rotation(w));
                }
            }
            if (w.size() >= max_len) return;
            for (Letter l = 0; l < na; l++) {
                if (w.back() == inverse_letter(l, ng)) continue;
                Mobius child = m * g.letter_matrix(l);
                double cd = cosh_displacement(child);
                if (cd > cosh_ball || cd < cosh_floor[w.size() + 1]) continue;
                w.push_back(l);
                mats.push_back(child);
                self(self);
                mats.pop_back();
                w.pop_back();
            }
        };
        rec(rec);
    };

    std::set<Word> seen;
    if (workers <= 1) {
        for (Letter first = 0; first < na; first++) subtree(first, seen);
    } else {
        std::vector<std::set<Word>> parts(na);
        std::vector<std::thread> threads;
        std::atomic<int> next{0};
        int nthreads = std::min(workers, na);
        for (int t = 0; t < nthreads; t++)
            threads.emplace_back([&] {
                for (;;) {
                    int first = next.fetch_add(1);
                    if (first >= na) return;
                    subtree((Letter)first, parts[first]);
                }
            });
        for (auto& th : threads) th.join();
        for (const auto& part : parts) seen.insert(part.begin(), part.end());
    }

    // close under inversion: a class and its inverse always appear together
    // even when the pruning treats their word paths asymmetrically
    std::set<Word> out = seen;
    for (const Word& key : seen)
        out.insert(min_rotation(inverse_word(key, ng)));
    return out;
}

// Two-tier classification: the fast rotation/half-swap orbit groups most
// representatives; a conjugation-ball merge pass then folds together the
// orbit-inequivalent same-class forms and fixes the final canonical words.
std::map<Word, double> classify_by_canonical(const SurfaceGroup& g,
                                             const std::set<Word>& keys,
                                             std::map<Word, Word>* canon_cache) {
    const int ng = g.num_generators();
    std::set<Word> orbit_canonicals;
    std::map<Word, Word> plateau_to_canonical;  // orbit cache
    for (const Word& key : keys) {
        // Dehn-shrink first: long representatives collapse onto plateau
        // words, which the orbit cache already covers for known classes.
        Word skey =
            min_rotation(dehn_shrink_cyclic(key, g.relator_variants, ng));
        auto cached = plateau_to_canonical.find(skey);
        if (cached != plateau_to_canonical.end()) continue;
        auto orbit = cyclic_orbit(g, skey);
        Word canon = *std::min_element(orbit.begin(), orbit.end(), word_less);
        for (const Word& u : orbit) plateau_to_canonical.emplace(u, canon);
        plateau_to_canonical.emplace(skey, canon);
        orbit_canonicals.insert(canon);
    }
    std::map<Word, double> found;
    for (const Word& oc : orbit_canonicals) {
        Word canon = conjugation_minimize(g, oc, 4);
        if (canon_cache) canon_cache->emplace(oc, canon);
        if (!found.count(canon))
            found.emplace(canon, translation_length(word_matrix(g, canon)));
    }
    return found;
}

}  // namespace

GeodesicTable enumerate_primitives(const SurfaceGroup& g, double T,
                                   const EnumerateOptions& opt) {
    if (T <= 0) throw std::invalid_argument("enumerate: T must be positive");
    double projected = std::exp(T) / std::max(T, 1.0) * 8.0;
    if (projected > (double)opt.class_ceiling)
        throw std::runtime_error("enumerate: projected class count too large");

    const double slack = 3.0;
    double radius = T + 2.0 * kOctagonCircumradius + slack;
    size_t max_len = (size_t)std::ceil(T / 0.7) + 2;
    auto keys = collect_candidates(g, T, radius, max_len, opt.class_ceiling,
                                   /*drift_rate=*/0.65, /*drift_slack=*/2.0,
                                   opt.workers);
    std::map<Word, Word> cache;
    auto found = classify_by_canonical(g, keys, &cache);
    auto canonicalize = [&](const Word& w) {
        Word oc = orbit_canonical(g, w);
        auto it = cache.find(oc);
        if (it != cache.end()) return it->second;
        Word canon = conjugation_minimize(g, oc, 4);
        cache.emplace(oc, canon);
        return canon;
    };
    GeodesicTable table = finalize_table(g, T, found, canonicalize);

    if (T <= opt.stage2_verify_up_to) {
        // fixpoint property of the stage-2 minimizer on every stored class
        for (const auto& c : table.classes) {
            Word stage2 = conjugation_minimize(g, c.canonical_word, 4);
            if (stage2 != c.canonical_word)
                throw std::runtime_error(
                    "enumerate: stage-2 canonicalization mismatch");
        }
    }
    return table;
}

GeodesicTable enumerate_primitives_dual(const SurfaceGroup& g, double T) {
    if (T <= 0) throw std::invalid_argument("enumerate: T must be positive");
    const double slack = 4.5;
    double radius = T + 2.0 * kOctagonCircumradius + slack;
    size_t max_len = (size_t)std::ceil(T / 0.7) + 4;
    auto keys = collect_candidates(g, T, radius, max_len, 50'000'000,
                                   /*drift_rate=*/0.5, /*drift_slack=*/3.5);

    // pure conjugation-orbit dedup: per-key canonical via the conjugation-ball
    // minimizer, with no rotation/half-swap orbit machinery involved
    const int ng = g.num_generators();
    std::map<Word, double> found;
    std::map<Word, Word> shrunk_to_class;
    auto canonicalize = [&](const Word& w) {
        Word skey = min_rotation(dehn_shrink_cyclic(w, g.relator_variants, ng));
        auto cached = shrunk_to_class.find(skey);
        if (cached != shrunk_to_class.end()) return cached->second;
        Word canon = conjugation_minimize(g, skey, 4);
        shrunk_to_class.emplace(skey, canon);
        return canon;
    };
    for (const Word& key : keys) {
        Word canon = canonicalize(key);
        if (!found.count(canon))
            found.emplace(canon, translation_length(word_matrix(g, canon)));
    }
    return finalize_table(g, T, found, canonicalize);
}

GeodesicCounts count(const GeodesicTable& table, double T) {
    if (T > table.cutoff + 1e-9)
        throw std::invalid_argument("count: T beyond table cutoff");
    GeodesicCounts out;
    for (const auto& c : table.classes)
        if (c.length <= T + 1e-9) out.primitive++;
    out.total = out.primitive;
    for (int k = 2;; k++) {
        double Tk = T / k;
        if (!table.classes.empty() && Tk < table.classes.front().length - 1e-9)
            break;
        if (table.classes.empty()) break;
        for (const auto& c : table.classes)
            if (c.length <= Tk + 1e-9) out.total++;
    }
    return out;
}

}  // namespace speclab::fuchsian
