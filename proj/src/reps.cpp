#include "speclab/reps.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "speclab/quadrature.hpp"

namespace speclab::reps {

namespace {
constexpr double kTwoPi = 6.28318530717958647692;
}

std::vector<int> abelianization(const fuchsian::SurfaceGroup& g, const Word& w) {
    std::vector<int> out(g.num_generators(), 0);
    for (Letter l : w) {
        if (l < g.num_generators())
            out[l]++;
        else
            out[l - g.num_generators()]--;
    }
    return out;
}

Complex char_value(const AbelianCharacter& chi, const fuchsian::SurfaceGroup& g,
                   const Word& w, int k) {
    if (k < 1) throw std::invalid_argument("char_value: k >= 1");
    auto ab = abelianization(g, w);
    double phase = 0.0;
    for (size_t i = 0; i < ab.size(); i++) phase += chi.theta[i] * ab[i];
    phase *= k;
    phase -= std::floor(phase);
    return std::polar(1.0, kTwoPi * phase);
}

bool is_involutive(const AbelianCharacter& chi) {
    for (double t : chi.theta) {
        if (std::fabs(t) > 1e-12 && std::fabs(t - 0.5) > 1e-12) return false;
    }
    return true;
}

Eigen::MatrixXcd MatrixRep::word_image(const Word& w) const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim, dim);
    for (Letter l : w) m = m * letter_image(l);
    return m;
}

namespace {

Eigen::MatrixXcd haar_unitary(int N, CounterRng& rng) {
    Eigen::MatrixXcd z(N, N);
    for (int i = 0; i < N; i++)
        for (int j = 0; j < N; j++)
            z(i, j) = Complex(rng.next_gaussian(), rng.next_gaussian());
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < N; j++) {
        Complex d = r(j, j);
        q.col(j) *= d / std::abs(d);
    }
    return q;
}

Eigen::MatrixXcd haar_special_unitary(int N, CounterRng& rng) {
    Eigen::MatrixXcd u = haar_unitary(N, rng);
    Complex det = u.determinant();
    u *= std::polar(1.0, -std::arg(det) / N);
    return u;
}

Eigen::MatrixXd haar_special_orthogonal(int N, CounterRng& rng) {
    Eigen::MatrixXd z(N, N);
    for (int i = 0; i < N; i++)
        for (int j = 0; j < N; j++) z(i, j) = rng.next_gaussian();
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(z);
    Eigen::MatrixXd q = qr.householderQ();
    Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < N; j++)
        if (r(j, j) < 0) q.col(j) *= -1.0;
    if (q.determinant() < 0) q.col(N - 1) *= -1.0;
    return q;
}

// Haar on Sp(N) inside U(2N): quaternionic Gram-Schmidt. Columns j and N+j
// are tied by col_{N+j} = -J conj(col_j) with J = [[0, I], [-I, 0]].
Eigen::MatrixXcd haar_symplectic(int N, CounterRng& rng) {
    int M = 2 * N;
    auto tau = [N, M](const Eigen::VectorXcd& x) {
        Eigen::VectorXcd out(M);
        for (int i = 0; i < N; i++) {
            out(i) = std::conj(x(N + i));
            out(N + i) = -std::conj(x(i));
        }
        return out;
    };
    Eigen::MatrixXcd u(M, N);
    for (int j = 0; j < N; j++) {
        Eigen::VectorXcd w(M);
        for (int i = 0; i < M; i++)
            w(i) = Complex(rng.next_gaussian(), rng.next_gaussian());
        for (int i = 0; i < j; i++) {
            w -= u.col(i).dot(w) * u.col(i);
            Eigen::VectorXcd t = tau(u.col(i));
            w -= t.dot(w) * t;
        }
        u.col(j) = w / w.norm();
    }
    Eigen::MatrixXcd out(M, M);
    for (int j = 0; j < N; j++) {
        out.col(j) = u.col(j);
        out.col(N + j) = -tau(u.col(j));
    }
    return out;
}

double group_membership_defect(GroupKind kind, const Eigen::MatrixXcd& m) {
    int M = (int)m.rows();
    double unitary =
        (m.adjoint() * m - Eigen::MatrixXcd::Identity(M, M)).norm();
    switch (kind) {
        case GroupKind::U:
            return unitary;
        case GroupKind::SU:
            return std::max(unitary, std::abs(m.determinant() - Complex(1, 0)));
        case GroupKind::SO: {
            double realness = m.imag().norm();
            return std::max({unitary, realness,
                             std::abs(m.determinant() - Complex(1, 0))});
        }
        case GroupKind::Sp: {
            int N = M / 2;
            Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(M, M);
            for (int i = 0; i < N; i++) {
                J(i, N + i) = 1.0;
                J(N + i, i) = -1.0;
            }
            return std::max(unitary, (m.transpose() * J * m - J).norm());
        }
    }
    return unitary;
}

Eigen::MatrixXcd commutator(const Eigen::MatrixXcd& a,
                            const Eigen::MatrixXcd& b) {
    return a * b * a.adjoint() * b.adjoint();
}

double rep_relator_defect(const std::vector<Eigen::MatrixXcd>& images) {
    int N = (int)images[0].rows();
    Eigen::MatrixXcd r = commutator(images[0], images[1]) *
                         commutator(images[2], images[3]);
    return (r - Eigen::MatrixXcd::Identity(N, N)).norm();
}

}  // namespace

MatrixRep sample_su_rep(const fuchsian::SurfaceGroup& g, int N,
                        CounterRng& rng) {
    if (N < 2) throw std::invalid_argument("sample_su_rep: N >= 2");
    for (int attempt = 0; attempt < 64; attempt++) {
        Eigen::MatrixXcd a1 = haar_special_unitary(N, rng);
        Eigen::MatrixXcd b1 = haar_special_unitary(N, rng);
        // relator [a1,b1][a2,b2] = 1 forces [a2,b2] = t
        Eigen::MatrixXcd t = commutator(a1, b1).adjoint();

        Eigen::ComplexSchur<Eigen::MatrixXcd> schur(t);
        Eigen::MatrixXcd v = schur.matrixU();
        Eigen::VectorXcd d = schur.matrixT().diagonal();
        for (int i = 0; i < N; i++) d(i) /= std::abs(d(i));

        double sep = 2.0;
        for (int i = 0; i < N; i++)
            for (int j = i + 1; j < N; j++)
                sep = std::min(sep, std::abs(d(i) - d(j)));
        if (sep < 1e-8) continue;  // clustered spectrum, resample

        // cyclic shift P and cumulative-product diagonal Q with [P,Q] = diag(d)
        Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(N, N);
        for (int i = 0; i < N; i++) p((i + 1) % N, i) = 1.0;
        // scalar factors do not change commutators; pull P into SU(N)
        if (N % 2 == 0) p *= std::polar(1.0, kTwoPi / (2.0 * N));
        Eigen::VectorXcd q(N);
        Complex run(1.0, 0.0);
        q(0) = run;
        for (int i = 1; i < N; i++) {
            run /= d(i);
            q(i) = run;
        }
        Eigen::MatrixXcd Q = q.asDiagonal();
        Complex detq = Q.determinant();
        Q *= std::polar(1.0, -std::arg(detq) / N);

        // torus twist for genericity; diagonal conjugation fixes diag(d)
        Eigen::VectorXcd lam(N);
        for (int i = 0; i < N; i++)
            lam(i) = std::polar(1.0, kTwoPi * rng.next_double());
        Eigen::MatrixXcd L = lam.asDiagonal();
        Eigen::MatrixXcd a2 = v * L * p * L.adjoint() * v.adjoint();
        Eigen::MatrixXcd b2 = v * L * Q * L.adjoint() * v.adjoint();

        MatrixRep rep;
        rep.kind = GroupKind::SU;
        rep.dim = N;
        rep.images = {a1, b1, a2, b2};
        rep.relator_defect = rep_relator_defect(rep.images);
        if (rep.relator_defect > 1e-8) continue;
        for (const auto& m : rep.images)
            if (group_membership_defect(GroupKind::SU, m) > 1e-10)
                throw std::runtime_error("sample_su_rep: image left SU(N)");
        return rep;
    }
    throw std::runtime_error("sample_su_rep: retries exhausted");
}

namespace {

// exp of a small real matrix by scaling and squaring with a Taylor core
Eigen::MatrixXd expm(const Eigen::MatrixXd& x) {
    double nrm = x.norm();
    int s = 0;
    Eigen::MatrixXd y = x;
    while (nrm > 0.5) {
        y *= 0.5;
        nrm *= 0.5;
        s++;
    }
    int N = (int)x.rows();
    Eigen::MatrixXd out = Eigen::MatrixXd::Identity(N, N);
    Eigen::MatrixXd term = Eigen::MatrixXd::Identity(N, N);
    for (int k = 1; k <= 14; k++) {
        term = term * y / (double)k;
        out += term;
    }
    for (int i = 0; i < s; i++) out = out * out;
    return out;
}

// skew-symmetric basis of so(N)
std::vector<Eigen::MatrixXd> so_basis(int N) {
    std::vector<Eigen::MatrixXd> basis;
    for (int i = 0; i < N; i++)
        for (int j = i + 1; j < N; j++) {
            Eigen::MatrixXd e = Eigen::MatrixXd::Zero(N, N);
            e(i, j) = 1.0;
            e(j, i) = -1.0;
            basis.push_back(e);
        }
    return basis;
}

double so_commutator_residual(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                              const Eigen::MatrixXd& t) {
    return (a * b * a.transpose() * b.transpose() - t).squaredNorm();
}

// Minimize |[A,B] - t|_F^2 over SO(N)^2 by Armijo descent along the Lie
// algebra directions; converges to machine residual from generic starts.
bool solve_so_commutator(const Eigen::MatrixXd& t, int N, CounterRng& rng,
                         Eigen::MatrixXd& A, Eigen::MatrixXd& B) {
    auto basis = so_basis(N);
    int D = (int)basis.size();
    A = haar_special_orthogonal(N, rng);
    B = haar_special_orthogonal(N, rng);

    double f = so_commutator_residual(A, B, t);
    for (int iter = 0; iter < 4000 && f > 1e-22; iter++) {
        Eigen::MatrixXd C = A * B * A.transpose() * B.transpose() - t;
        Eigen::VectorXd gA(D), gB(D);
        for (int i = 0; i < D; i++) {
            const Eigen::MatrixXd& X = basis[i];
            Eigen::MatrixXd dA = A * X * B * A.transpose() * B.transpose() -
                                 A * B * X * A.transpose() * B.transpose();
            Eigen::MatrixXd dB = A * B * X * A.transpose() * B.transpose() -
                                 A * B * A.transpose() * X * B.transpose();
            gA(i) = 2.0 * (C.array() * dA.array()).sum();
            gB(i) = 2.0 * (C.array() * dB.array()).sum();
        }
        double gnorm2 = gA.squaredNorm() + gB.squaredNorm();
        if (gnorm2 < 1e-26) break;
        Eigen::MatrixXd XA = Eigen::MatrixXd::Zero(N, N);
        Eigen::MatrixXd XB = Eigen::MatrixXd::Zero(N, N);
        for (int i = 0; i < D; i++) {
            XA -= gA(i) * basis[i];
            XB -= gB(i) * basis[i];
        }
        double step = 1.0;
        bool moved = false;
        for (int ls = 0; ls < 50; ls++) {
            Eigen::MatrixXd A2 = A * expm(step * XA);
            Eigen::MatrixXd B2 = B * expm(step * XB);
            double f2 = so_commutator_residual(A2, B2, t);
            if (f2 < f - 1e-4 * step * gnorm2) {
                A = A2;
                B = B2;
                f = f2;
                moved = true;
                break;
            }
            step *= 0.5;
        }
        if (!moved) break;
    }
    return f <= 1e-18;
}

}  // namespace

MatrixRep sample_so_rep(const fuchsian::SurfaceGroup& g, int N,
                        CounterRng& rng) {
    if (N < 3) throw std::invalid_argument("sample_so_rep: N >= 3");
    Eigen::MatrixXd a1 = haar_special_orthogonal(N, rng);
    Eigen::MatrixXd b1 = haar_special_orthogonal(N, rng);
    Eigen::MatrixXd t =
        (a1 * b1 * a1.transpose() * b1.transpose()).transpose();

    Eigen::MatrixXd a2, b2;
    bool ok = false;
    for (int restart = 0; restart < 200 && !ok; restart++)
        ok = solve_so_commutator(t, N, rng, a2, b2);
    if (!ok)
        throw std::runtime_error("sample_so_rep: commutator solve failed");

    MatrixRep rep;
    rep.kind = GroupKind::SO;
    rep.dim = N;
    rep.images = {a1.cast<Complex>(), b1.cast<Complex>(), a2.cast<Complex>(),
                  b2.cast<Complex>()};
    rep.relator_defect = rep_relator_defect(rep.images);
    if (rep.relator_defect > 1e-6)
        throw std::runtime_error("sample_so_rep: relator defect too large");
    for (const auto& m : rep.images)
        if (group_membership_defect(GroupKind::SO, m) > 1e-10)
            throw std::runtime_error("sample_so_rep: image left SO(N)");
    return rep;
}

Complex rep_trace(const MatrixRep& rep, const fuchsian::SurfaceGroup& g,
                  const Word& w, int k) {
    if (k < 1) throw std::invalid_argument("rep_trace: k >= 1");
    (void)g;
    Eigen::MatrixXcd m = rep.word_image(w);
    Eigen::MatrixXcd p = m;
    for (int i = 1; i < k; i++) p = p * m;
    return p.trace();
}

Complex CharacterSpec::trace_of(const fuchsian::SurfaceGroup& g, const Word& w,
                                int k) const {
    if (kind == Kind::Abelian) return char_value(abelian, g, w, k);
    return rep_trace(*rep, g, w, k);
}

CharacterSpec parse_character_spec(const std::string& text,
                                   const fuchsian::SurfaceGroup& g) {
    CharacterSpec spec;
    auto bad = [&] {
        throw std::invalid_argument("character spec: expected "
                                    "abelian:t1,t2,t3,t4 | su:N:seed | so:N:seed, got '" +
                                    text + "'");
    };
    auto colon = text.find(':');
    if (colon == std::string::npos) bad();
    std::string head = text.substr(0, colon);
    std::string rest = text.substr(colon + 1);
    if (head == "abelian") {
        spec.kind = CharacterSpec::Kind::Abelian;
        std::stringstream ss(rest);
        std::string tok;
        for (int i = 0; i < 4; i++) {
            if (!std::getline(ss, tok, ',')) bad();
            spec.abelian.theta[i] = std::stod(tok);
            if (spec.abelian.theta[i] < 0.0 || spec.abelian.theta[i] >= 1.0)
                throw std::invalid_argument("character spec: theta in [0,1)");
        }
        if (std::getline(ss, tok, ',')) bad();
        return spec;
    }
    if (head == "su" || head == "so") {
        auto colon2 = rest.find(':');
        if (colon2 == std::string::npos) bad();
        int N = std::stoi(rest.substr(0, colon2));
        std::uint64_t seed = std::stoull(rest.substr(colon2 + 1));
        CounterRng rng(seed, 0);
        spec.kind = CharacterSpec::Kind::Matrix;
        spec.rep = std::make_shared<MatrixRep>(
            head == "su" ? sample_su_rep(g, N, rng) : sample_so_rep(g, N, rng));
        return spec;
    }
    bad();
    return spec;
}

std::pair<Complex, Complex> induced_trace_oracle(const CharacterSpec& chi,
                                                 const fuchsian::SurfaceGroup& g,
                                                 const covers::HomSample& hom,
                                                 const Word& w) {
    int n = hom.n;
    int d = chi.dim();
    if (n * d > 256)
        throw std::invalid_argument("induced_trace_oracle: dimension guard");

    auto image_of = [&](const Word& u) -> Eigen::MatrixXcd {
        if (chi.kind == CharacterSpec::Kind::Abelian) {
            Eigen::MatrixXcd m(1, 1);
            m(0, 0) = char_value(chi.abelian, g, u, 1);
            return m;
        }
        return chi.rep->word_image(u);
    };

    // coset words per orbit: u_i with phi(u_i)(rep) = i, then g_i = u_i^{-1}
    covers::Permutation pw = covers::permutation_of_word(hom, w);
    std::vector<Word> coset_u(n);
    std::vector<int> orbit_rep(n, -1);
    std::vector<bool> seen(n, false);
    for (int r = 0; r < n; r++) {
        if (seen[r]) continue;
        // BFS over generator actions from r
        std::vector<int> queue{r};
        seen[r] = true;
        orbit_rep[r] = r;
        coset_u[r] = {};
        for (size_t qi = 0; qi < queue.size(); qi++) {
            int x = queue[qi];
            for (Letter l = 0; l < (Letter)g.alphabet_size(); l++) {
                const covers::Permutation& img =
                    l < 4 ? hom.images[l] : hom.images[l - 4];
                int y = l < 4 ? img[x] : (int)(std::find(img.begin(), img.end(), x) -
                                               img.begin());
                if (!seen[y]) {
                    seen[y] = true;
                    orbit_rep[y] = r;
                    coset_u[y] = concat({l}, coset_u[x]);  // phi(l u_x)(r) = y
                    queue.push_back(y);
                }
            }
        }
    }

    Eigen::MatrixXcd big = Eigen::MatrixXcd::Zero(n * d, n * d);
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) {
            if (orbit_rep[i] != orbit_rep[j]) continue;
            // g_i gamma g_j^{-1} = u_i^{-1} gamma u_j; nonzero iff it fixes
            // the orbit representative, i.e. phi(gamma)(j) == i
            if (pw[j] != i) continue;
            Word conj = concat(concat(inverse_word(coset_u[i]), w), coset_u[j]);
            big.block(i * d, j * d, d, d) = image_of(conj);
        }
    Complex lhs = big.trace();
    int F = covers::fixed_points(hom, w, 1);
    Complex rhs = chi.trace_of(g, w, 1) * (double)F;
    return {lhs, rhs};
}

Eigen::MatrixXcd haar_sample(GroupKind kind, int N, CounterRng& rng) {
    switch (kind) {
        case GroupKind::U:
            return haar_unitary(N, rng);
        case GroupKind::SU:
            return haar_special_unitary(N, rng);
        case GroupKind::SO:
            return haar_special_orthogonal(N, rng).cast<Complex>();
        case GroupKind::Sp:
            return haar_symplectic(N, rng);
    }
    throw std::invalid_argument("haar_sample: bad kind");
}

HaarMoments haar_trace_moments(GroupKind kind, int N, std::int64_t M,
                               CounterRng& rng) {
    if (M < 1000)
        throw std::invalid_argument("haar_trace_moments: M >= 1000");
    double s_abs2 = 0.0, s_abs4 = 0.0;
    Complex s_sq{0, 0};
    double s_sq_re2 = 0.0, s_sq_im2 = 0.0;
    double s_f = 0.0, s_f2 = 0.0;
    for (std::int64_t i = 0; i < M; i++) {
        Complex tr = haar_sample(kind, N, rng).trace();
        double a2 = std::norm(tr);
        Complex sq = tr * tr;
        double f = std::norm(tr + std::conj(tr));
        s_abs2 += a2;
        s_abs4 += a2 * a2;
        s_sq += sq;
        s_sq_re2 += sq.real() * sq.real();
        s_sq_im2 += sq.imag() * sq.imag();
        s_f += f;
        s_f2 += f * f;
    }
    double Md = (double)M;
    HaarMoments out;
    out.samples = M;
    out.abs_trace_sq = s_abs2 / Md;
    out.abs_trace_sq_se = std::sqrt(
        std::max(0.0, s_abs4 / Md - out.abs_trace_sq * out.abs_trace_sq) / Md);
    out.trace_sq = s_sq / Md;
    double vre = s_sq_re2 / Md - out.trace_sq.real() * out.trace_sq.real();
    double vim = s_sq_im2 / Md - out.trace_sq.imag() * out.trace_sq.imag();
    out.trace_sq_se = std::sqrt(std::max(0.0, std::max(vre, vim)) / Md);
    out.f_moment = s_f / Md;
    out.f_moment_se =
        std::sqrt(std::max(0.0, s_f2 / Md - out.f_moment * out.f_moment) / Md);
    return out;
}

Complex TracePolynomial::eval(Complex z) const {
    Complex out{0.0, 0.0};
    for (const Term& t : terms) {
        Complex v = t.coeff;
        for (int i = 0; i < t.k; i++) v *= z;
        for (int i = 0; i < t.l; i++) v *= std::conj(z);
        out += v;
    }
    return out;
}

ChebotarevSum chebotarev_sum(const fuchsian::GeodesicTable& table,
                             const CharacterSpec& chi,
                             const fuchsian::SurfaceGroup& g,
                             const TracePolynomial& f, double x) {
    if (x > table.cutoff + 1e-9)
        throw std::invalid_argument("chebotarev_sum: x beyond table cutoff");
    ChebotarevSum out;
    for (const auto& c : table.classes) {
        if (c.length > x + 1e-9) continue;
        Complex z = chi.trace_of(g, c.canonical_word, 1);
        out.sum += f.eval(z);
        out.terms++;
    }
    out.li = log_integral(x);
    out.normalized = out.li > 0 ? out.sum / out.li : Complex{0, 0};
    return out;
}

}  // namespace speclab::reps
