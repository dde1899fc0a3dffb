#pragma once

#include <cstdint>
#include <vector>

#include "speclab/fuchsian.hpp"
#include "speclab/rng.hpp"
#include "speclab/word.hpp"

namespace speclab::covers {

using Permutation = std::vector<int>;  // img[i] = image of i

Permutation identity_perm(int n);
Permutation compose(const Permutation& p, const Permutation& q);  // p after q
Permutation inverse(const Permutation& p);

// One random cover: images of a1, b1, a2, b2 in S_n with
// [phi(a1),phi(b1)][phi(a2),phi(b2)] = id.
struct HomSample {
    int n = 0;
    std::vector<Permutation> images;  // size 2g

    bool relator_holds(const fuchsian::SurfaceGroup& g) const;
};

struct SampleOptions {
    std::uint64_t trial_ceiling = 1ull << 36;
};

// Exactly uniform over Hom(Gamma, S_n) by rejection against the relator.
// Deterministic given (seed via rng stream). Feasible for n <= 12.
HomSample sample_hom(const fuchsian::SurfaceGroup& g, int n, CounterRng& rng,
                     const SampleOptions& opt = {});

// |Hom(Gamma, S_n)| by exhaustive enumeration; n <= 3.
std::int64_t count_homs_exhaustive(const fuchsian::SurfaceGroup& g, int n);

Permutation permutation_of_word(const HomSample& hom, const Word& w);

// F_n(gamma^k): fixed points of phi(w)^k.
int fixed_points(const HomSample& hom, const Word& w, int k);

// number of d-cycles of phi(w)
int cycle_count(const HomSample& hom, const Word& w, int d);

bool is_connected(const HomSample& hom);

int divisor_count(int k);

// V(k1,k2) = sum of common divisors of k1 and k2 (limit covariance).
std::int64_t vcov_limit(int k1, int k2);

// Empirical fixed-point and cycle statistics over M uniform covers.
struct FixStats {
    int n = 0;
    std::int64_t samples = 0;
    std::vector<Word> words;
    std::vector<int> powers;

    // indexed by (word i, power j) flattened as i * powers.size() + j
    std::vector<double> mean_fix;
    std::vector<double> se_fix;
    // covariance matrix over the same flattened index, with delta-method SEs
    std::vector<std::vector<double>> cov;
    std::vector<std::vector<double>> cov_se;

    // per word: mean/variance of C_{n,d} for d = 1..max_cycle_d
    int max_cycle_d = 3;
    std::vector<std::vector<double>> cycle_mean;     // [word][d-1]
    std::vector<std::vector<double>> cycle_var;
    std::vector<std::vector<double>> cycle_mean_se;
    std::vector<std::vector<double>> cycle_var_se;

    std::size_t index(std::size_t word_i, std::size_t power_j) const {
        return word_i * powers.size() + power_j;
    }
};

// words must be primitive and pairwise non-conjugate up to inversion
// (checked via cyclic_canonical). M >= 100. Deterministic given (seed, M).
FixStats fix_moment_experiment(const fuchsian::SurfaceGroup& g,
                               const std::vector<Word>& words,
                               const std::vector<int>& powers, int n,
                               std::int64_t M, std::uint64_t seed,
                               int workers = 1);

}  // namespace speclab::covers
