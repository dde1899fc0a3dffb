#include "speclab/covers.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

namespace speclab::covers {

Permutation identity_perm(int n) {
    Permutation p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

Permutation compose(const Permutation& p, const Permutation& q) {
    Permutation out(p.size());
    for (size_t i = 0; i < p.size(); i++) out[i] = p[q[i]];
    return out;
}

Permutation inverse(const Permutation& p) {
    Permutation out(p.size());
    for (size_t i = 0; i < p.size(); i++) out[p[i]] = (int)i;
    return out;
}

bool HomSample::relator_holds(const fuchsian::SurfaceGroup& g) const {
    Permutation r = permutation_of_word(*this, g.relator);
    for (size_t i = 0; i < r.size(); i++)
        if (r[i] != (int)i) return false;
    return true;
}

namespace {

// Hot path of the rejection sampler: raw arrays, early-exit relator check.
// The relator [a,b][c,d] = id is tested pointwise as [a,b](x) == [d,c](x).
struct RawSampler {
    int n;
    std::uint8_t perm[4][16];
    std::uint8_t inv[4][16];

    void draw(CounterRng& rng) {
        for (int gidx = 0; gidx < 4; gidx++) {
            std::uint8_t* q = perm[gidx];
            for (int i = 0; i < n; i++) q[i] = (std::uint8_t)i;
            for (int i = n - 1; i > 0; i--) {
                int j = (int)rng.next_below((std::uint32_t)(i + 1));
                std::swap(q[i], q[j]);
            }
            for (int i = 0; i < n; i++) inv[gidx][q[i]] = (std::uint8_t)i;
        }
    }

    bool relator_ok() const {
        for (int x = 0; x < n; x++) {
            int l = perm[0][perm[1][inv[0][inv[1][x]]]];
            int r = perm[3][perm[2][inv[3][inv[2][x]]]];
            if (l != r) return false;
        }
        return true;
    }
};

}  // namespace

HomSample sample_hom(const fuchsian::SurfaceGroup& g, int n, CounterRng& rng,
                     const SampleOptions& opt) {
    if (g.genus != 2)
        throw std::invalid_argument("sample_hom: genus-2 sampler");
    if (n < 2 || n > 12)
        throw std::invalid_argument("sample_hom: n outside rejection regime");
    RawSampler s;
    s.n = n;
    for (std::uint64_t trial = 0; trial < opt.trial_ceiling; trial++) {
        s.draw(rng);
        if (s.relator_ok()) {
            HomSample hom;
            hom.n = n;
            hom.images.resize(4);
            for (int gidx = 0; gidx < 4; gidx++) {
                hom.images[gidx].resize(n);
                for (int i = 0; i < n; i++) hom.images[gidx][i] = s.perm[gidx][i];
            }
            return hom;
        }
    }
    throw std::runtime_error("sample_hom: trial ceiling exceeded");
}

std::int64_t count_homs_exhaustive(const fuchsian::SurfaceGroup& g, int n) {
    if (n < 1 || n > 3)
        throw std::invalid_argument("count_homs_exhaustive: n <= 3 only");
    std::vector<Permutation> perms;
    Permutation p = identity_perm(n);
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));

    std::int64_t count = 0;
    HomSample hom;
    hom.n = n;
    hom.images.resize(4);
    for (const auto& pa : perms)
        for (const auto& pb : perms)
            for (const auto& pc : perms)
                for (const auto& pd : perms) {
                    hom.images[0] = pa;
                    hom.images[1] = pb;
                    hom.images[2] = pc;
                    hom.images[3] = pd;
                    if (hom.relator_holds(g)) count++;
                }
    return count;
}

Permutation permutation_of_word(const HomSample& hom, const Word& w) {
    // phi(uv) = phi(u) o phi(v): apply letters right to left
    Permutation out = identity_perm(hom.n);
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        Letter l = *it;
        const Permutation& img =
            l < 4 ? hom.images[l] : hom.images[l - 4];
        if (l < 4)
            out = compose(img, out);
        else
            out = compose(inverse(img), out);
    }
    return out;
}

namespace {

// cycle type: counts[d-1] = number of d-cycles
std::vector<int> cycle_type(const Permutation& p) {
    int n = (int)p.size();
    std::vector<int> counts(n, 0);
    std::vector<bool> seen(n, false);
    for (int i = 0; i < n; i++) {
        if (seen[i]) continue;
        int len = 0, x = i;
        do {
            seen[x] = true;
            x = p[x];
            len++;
        } while (x != i);
        counts[len - 1]++;
    }
    return counts;
}

int fixed_points_of_power(const std::vector<int>& counts, int k) {
    int f = 0;
    for (int d = 1; d <= (int)counts.size(); d++)
        if (k % d == 0) f += d * counts[d - 1];
    return f;
}

}  // namespace

int fixed_points(const HomSample& hom, const Word& w, int k) {
    if (k < 1) throw std::invalid_argument("fixed_points: k >= 1");
    auto counts = cycle_type(permutation_of_word(hom, w));
    return fixed_points_of_power(counts, k);
}

int cycle_count(const HomSample& hom, const Word& w, int d) {
    if (d < 1) throw std::invalid_argument("cycle_count: d >= 1");
    auto counts = cycle_type(permutation_of_word(hom, w));
    return d <= (int)counts.size() ? counts[d - 1] : 0;
}

bool is_connected(const HomSample& hom) {
    int n = hom.n;
    if (n <= 1) return true;
    std::vector<int> uf(n);
    std::iota(uf.begin(), uf.end(), 0);
    auto find = [&](int x) {
        while (uf[x] != x) x = uf[x] = uf[uf[x]];
        return x;
    };
    for (const auto& img : hom.images)
        for (int i = 0; i < n; i++) {
            int a = find(i), b = find(img[i]);
            if (a != b) uf[a] = b;
        }
    int root = find(0);
    for (int i = 1; i < n; i++)
        if (find(i) != root) return false;
    return true;
}

int divisor_count(int k) {
    if (k < 1) throw std::invalid_argument("divisor_count: k >= 1");
    int c = 0;
    for (int d = 1; d <= k; d++)
        if (k % d == 0) c++;
    return c;
}

std::int64_t vcov_limit(int k1, int k2) {
    if (k1 < 1 || k2 < 1) throw std::invalid_argument("vcov_limit: args >= 1");
    std::int64_t s = 0;
    for (int d = 1; d <= std::min(k1, k2); d++)
        if (k1 % d == 0 && k2 % d == 0) s += d;
    return s;
}

namespace {

struct MomentAccum {
    // raw sums over samples; F values are small integers so int64 is exact
    std::vector<std::int64_t> s1;                 // sum x_i
    std::vector<std::vector<std::int64_t>> s11;   // sum x_i x_j
    std::vector<std::vector<std::int64_t>> s21;   // sum x_i^2 x_j
    std::vector<std::vector<std::int64_t>> s12;   // sum x_i x_j^2
    std::vector<std::vector<std::int64_t>> s22;   // sum x_i^2 x_j^2
    // cycle counts per word, power sums up to 4th
    std::vector<std::vector<std::array<std::int64_t, 4>>> cyc;

    void init(size_t P, size_t W, int dmax) {
        s1.assign(P, 0);
        s11.assign(P, std::vector<std::int64_t>(P, 0));
        s21.assign(P, std::vector<std::int64_t>(P, 0));
        s12.assign(P, std::vector<std::int64_t>(P, 0));
        s22.assign(P, std::vector<std::int64_t>(P, 0));
        cyc.assign(W, std::vector<std::array<std::int64_t, 4>>(
                          dmax, {0, 0, 0, 0}));
    }
    void merge(const MomentAccum& o) {
        for (size_t i = 0; i < s1.size(); i++) {
            s1[i] += o.s1[i];
            for (size_t j = 0; j < s1.size(); j++) {
                s11[i][j] += o.s11[i][j];
                s21[i][j] += o.s21[i][j];
                s12[i][j] += o.s12[i][j];
                s22[i][j] += o.s22[i][j];
            }
        }
        for (size_t w = 0; w < cyc.size(); w++)
            for (size_t d = 0; d < cyc[w].size(); d++)
                for (int m = 0; m < 4; m++) cyc[w][d][m] += o.cyc[w][d][m];
    }
};

}  // namespace

FixStats fix_moment_experiment(const fuchsian::SurfaceGroup& g,
                               const std::vector<Word>& words,
                               const std::vector<int>& powers, int n,
                               std::int64_t M, std::uint64_t seed,
                               int workers) {
    if (M < 100)
        throw std::invalid_argument("fix_moment_experiment: M >= 100");
    // precondition: primitive, pairwise non-conjugate up to inversion
    std::vector<Word> canons;
    for (const Word& w : words) {
        Word c = fuchsian::cyclic_canonical(g, w);
        if (!fuchsian::is_primitive(g, c))
            throw std::invalid_argument("fix_moment_experiment: word not primitive");
        canons.push_back(c);
    }
    for (size_t i = 0; i < canons.size(); i++)
        for (size_t j = i + 1; j < canons.size(); j++) {
            Word invj = fuchsian::cyclic_canonical(g, inverse_word(canons[j]));
            if (canons[i] == canons[j] || canons[i] == invj)
                throw std::invalid_argument(
                    "fix_moment_experiment: words conjugate up to inversion");
        }

    const size_t W = words.size();
    const size_t K = powers.size();
    const size_t P = W * K;
    const int dmax = 3;

    auto run_block = [&](std::int64_t lo, std::int64_t hi, MomentAccum& acc) {
        std::vector<int> fvals(P);
        for (std::int64_t s = lo; s < hi; s++) {
            CounterRng rng = CounterRng::for_sample(seed, (std::uint64_t)s);
            HomSample hom = sample_hom(g, n, rng);
            for (size_t wi = 0; wi < W; wi++) {
                auto counts = cycle_type(permutation_of_word(hom, words[wi]));
                for (size_t kj = 0; kj < K; kj++)
                    fvals[wi * K + kj] =
                        fixed_points_of_power(counts, powers[kj]);
                for (int d = 1; d <= dmax; d++) {
                    std::int64_t c = d <= (int)counts.size() ? counts[d - 1] : 0;
                    std::int64_t cp = c;
                    for (int m = 0; m < 4; m++) {
                        acc.cyc[wi][d - 1][m] += cp;
                        cp *= c;
                    }
                }
            }
            for (size_t i = 0; i < P; i++) {
                std::int64_t xi = fvals[i];
                acc.s1[i] += xi;
                for (size_t j = 0; j < P; j++) {
                    std::int64_t xj = fvals[j];
                    acc.s11[i][j] += xi * xj;
                    acc.s21[i][j] += xi * xi * xj;
                    acc.s12[i][j] += xi * xj * xj;
                    acc.s22[i][j] += xi * xi * xj * xj;
                }
            }
        }
    };

    MomentAccum total;
    total.init(P, W, dmax);
    if (workers <= 1) {
        run_block(0, M, total);
    } else {
        std::vector<MomentAccum> parts(workers);
        std::vector<std::thread> threads;
        std::int64_t chunk = (M + workers - 1) / workers;
        for (int t = 0; t < workers; t++) {
            parts[t].init(P, W, dmax);
            std::int64_t lo = t * chunk, hi = std::min<std::int64_t>(M, lo + chunk);
            if (lo >= hi) continue;
            threads.emplace_back([&, lo, hi, t] { run_block(lo, hi, parts[t]); });
        }
        for (auto& th : threads) th.join();
        for (auto& part : parts) total.merge(part);
    }

    FixStats out;
    out.n = n;
    out.samples = M;
    out.words = words;
    out.powers = powers;
    out.max_cycle_d = dmax;
    out.mean_fix.resize(P);
    out.se_fix.resize(P);
    out.cov.assign(P, std::vector<double>(P, 0.0));
    out.cov_se.assign(P, std::vector<double>(P, 0.0));
    double Md = (double)M;
    for (size_t i = 0; i < P; i++) {
        double mean = total.s1[i] / Md;
        out.mean_fix[i] = mean;
        double var =
            (total.s11[i][i] - Md * mean * mean) / (Md - 1.0);
        out.se_fix[i] = std::sqrt(std::max(0.0, var) / Md);
    }
    for (size_t i = 0; i < P; i++)
        for (size_t j = 0; j < P; j++) {
            double mi = out.mean_fix[i], mj = out.mean_fix[j];
            double cov = (total.s11[i][j] - Md * mi * mj) / (Md - 1.0);
            out.cov[i][j] = cov;
            // delta method: Var(cov_hat) ~ (mu22 - cov^2)/M with central mu22
            double m22 = total.s22[i][j] / Md - 2.0 * mi * (total.s12[i][j] / Md) -
                         2.0 * mj * (total.s21[i][j] / Md) +
                         mi * mi * (total.s11[j][j] / Md) +
                         mj * mj * (total.s11[i][i] / Md) +
                         4.0 * mi * mj * (total.s11[i][j] / Md) -
                         3.0 * mi * mi * mj * mj;
            out.cov_se[i][j] = std::sqrt(std::max(0.0, m22 - cov * cov) / Md);
        }
    out.cycle_mean.assign(W, std::vector<double>(dmax, 0.0));
    out.cycle_var.assign(W, std::vector<double>(dmax, 0.0));
    out.cycle_mean_se.assign(W, std::vector<double>(dmax, 0.0));
    out.cycle_var_se.assign(W, std::vector<double>(dmax, 0.0));
    for (size_t w = 0; w < W; w++)
        for (int d = 0; d < dmax; d++) {
            double m1 = total.cyc[w][d][0] / Md;
            double m2 = total.cyc[w][d][1] / Md;
            double m3 = total.cyc[w][d][2] / Md;
            double m4 = total.cyc[w][d][3] / Md;
            double var = (m2 - m1 * m1) * Md / (Md - 1.0);
            out.cycle_mean[w][d] = m1;
            out.cycle_var[w][d] = var;
            out.cycle_mean_se[w][d] = std::sqrt(std::max(0.0, var) / Md);
            // central 4th moment
            double c2 = m2 - m1 * m1;
            double c4 = m4 - 4.0 * m1 * m3 + 6.0 * m1 * m1 * m2 -
                        3.0 * m1 * m1 * m1 * m1;
            double varvar = (c4 - c2 * c2 * (Md - 3.0) / (Md - 1.0)) / Md;
            out.cycle_var_se[w][d] = std::sqrt(std::max(0.0, varvar));
        }
    return out;
}

}  // namespace speclab::covers
