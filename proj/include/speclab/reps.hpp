#pragma once

#include <array>
#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "speclab/covers.hpp"
#include "speclab/fuchsian.hpp"
#include "speclab/rng.hpp"
#include "speclab/word.hpp"

namespace speclab::reps {

using Complex = std::complex<double>;

// signed letter counts per generator; every abelian character factors
// through this map
std::vector<int> abelianization(const fuchsian::SurfaceGroup& g, const Word& w);

// theta in [0,1)^{2g}: character exp(2 pi i <theta, ab(w)>)
struct AbelianCharacter {
    std::array<double, 4> theta{0, 0, 0, 0};
};

Complex char_value(const AbelianCharacter& chi, const fuchsian::SurfaceGroup& g,
                   const Word& w, int k = 1);

// true iff chi^2 = 1, i.e. every theta_i in {0, 1/2}
bool is_involutive(const AbelianCharacter& chi);

enum class GroupKind { U, SU, SO, Sp };

struct MatrixRep {
    GroupKind kind = GroupKind::SU;
    int dim = 2;                                // N
    std::vector<Eigen::MatrixXcd> images;       // images of a1,b1,a2,b2
    double relator_defect = 0.0;

    Eigen::MatrixXcd letter_image(Letter l) const {
        return l < 4 ? images[l] : images[l - 4].adjoint();
    }
    Eigen::MatrixXcd word_image(const Word& w) const;
};

// a1, b1 Haar on SU(N); (a2, b2) built constructively so the relator holds:
// diagonalize the commutator target, realize it as [P,Q] with P a cyclic
// shift and Q cumulative-product diagonal, conjugate back, and randomize by
// a torus twist. N >= 2.
MatrixRep sample_su_rep(const fuchsian::SurfaceGroup& g, int N, CounterRng& rng);

// a1, b1 Haar on SO(N); (a2, b2) solve the commutator equation numerically
// (projected descent plus Gauss-Newton polish, random restarts). N >= 3.
MatrixRep sample_so_rep(const fuchsian::SurfaceGroup& g, int N, CounterRng& rng);

// Tr(rho(w)^k)
Complex rep_trace(const MatrixRep& rep, const fuchsian::SurfaceGroup& g,
                  const Word& w, int k = 1);

// Twisting data for the spectral pipeline: abelian character or matrix rep.
struct CharacterSpec {
    enum class Kind { Abelian, Matrix } kind = Kind::Abelian;
    AbelianCharacter abelian;
    std::shared_ptr<const MatrixRep> rep;

    int dim() const { return kind == Kind::Abelian ? 1 : rep->dim; }
    Complex trace_of(const fuchsian::SurfaceGroup& g, const Word& w,
                     int k = 1) const;
};

// "abelian:t1,t2,t3,t4" | "su:N:seed" | "so:N:seed"
CharacterSpec parse_character_spec(const std::string& text,
                                   const fuchsian::SurfaceGroup& g);

// Explicit induced-representation check: returns (trace of the n*dim block
// matrix [rho~(g_i gamma g_j^-1)], chi(gamma) * F_n(gamma)). The two agree
// within 1e-9 whenever the construction is correct. Requires n*dim <= 256.
std::pair<Complex, Complex> induced_trace_oracle(
    const CharacterSpec& chi, const fuchsian::SurfaceGroup& g,
    const covers::HomSample& hom, const Word& w);

Eigen::MatrixXcd haar_sample(GroupKind kind, int N, CounterRng& rng);

struct HaarMoments {
    std::int64_t samples = 0;
    double abs_trace_sq = 0.0;       // estimate of int |Tr g|^2
    double abs_trace_sq_se = 0.0;
    Complex trace_sq{0.0, 0.0};      // estimate of int (Tr g)^2
    double trace_sq_se = 0.0;        // per-component standard error
    // int f dg for f = (Tr + conj Tr)^2 = 2 Re int (Tr)^2 + 2 int |Tr|^2
    double f_moment = 0.0;
    double f_moment_se = 0.0;
};

HaarMoments haar_trace_moments(GroupKind kind, int N, std::int64_t M,
                               CounterRng& rng);

// f = sum_j coeff_j * Tr^k_j * conj(Tr)^l_j
struct TracePolynomial {
    struct Term {
        int k = 0, l = 0;
        Complex coeff{1.0, 0.0};
    };
    std::vector<Term> terms;

    Complex eval(Complex z) const;

    static TracePolynomial one() { return {{{0, 0, {1.0, 0.0}}}}; }
    static TracePolynomial trace() { return {{{1, 0, {1.0, 0.0}}}}; }
    // (Tr + conj Tr)^2
    static TracePolynomial symmetrized_square() {
        return {{{2, 0, {1.0, 0.0}}, {1, 1, {2.0, 0.0}}, {0, 2, {1.0, 0.0}}}};
    }
};

struct ChebotarevSum {
    Complex sum{0.0, 0.0};
    Complex normalized{0.0, 0.0};  // sum / li(e^x)
    double li = 0.0;
    std::int64_t terms = 0;
};

// sum over primitive classes of length <= x of f(rho(gamma)),
// normalized by li(e^x)
ChebotarevSum chebotarev_sum(const fuchsian::GeodesicTable& table,
                             const CharacterSpec& chi,
                             const fuchsian::SurfaceGroup& g,
                             const TracePolynomial& f, double x);

}  // namespace speclab::reps
