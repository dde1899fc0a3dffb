#include "speclab/cli.hpp"

#include <Eigen/Eigenvalues>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "speclab/covers.hpp"
#include "speclab/quadrature.hpp"
#include "speclab/rmt.hpp"
#include "speclab/rng.hpp"
#include "speclab/table_io.hpp"

namespace speclab::cli {

namespace {

std::string hex64(std::uint64_t x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "0x%016llx", (unsigned long long)x);
    return buf;
}

struct CheckList {
    Json checks = Json::array();
    bool all_pass = true;

    void add(const std::string& name, double value, double target,
             double tolerance) {
        bool pass = std::fabs(value - target) <= tolerance;
        checks.push_back({{"name", name},
                          {"value", value},
                          {"target", target},
                          {"tolerance", tolerance},
                          {"pass", pass}});
        all_pass &= pass;
    }
    void add_bound(const std::string& name, double value, double bound) {
        bool pass = value <= bound;
        checks.push_back({{"name", name},
                          {"value", value},
                          {"bound", bound},
                          {"pass", pass}});
        all_pass &= pass;
    }
    void add_flag(const std::string& name, bool pass) {
        checks.push_back({{"name", name}, {"pass", pass}});
        all_pass &= pass;
    }
};

// worker count is deliberately absent: reports are byte-identical for fixed
// (config, seed, cache) regardless of parallelism
Json config_echo(const ExperimentConfig& cfg) {
    Json j;
    j["command"] = cfg.command;
    j["preset"] = cfg.preset;
    j["seed"] = cfg.seed;
    if (!cfg.table_path.empty()) j["table"] = cfg.table_path;
    return j;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
    return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, sep)) out.push_back(tok);
    return out;
}

fuchsian::GeodesicTable load_table(const ExperimentConfig& cfg,
                                   const fuchsian::SurfaceGroup& g,
                                   Json& provenance) {
    std::string path = cfg.table_path.empty()
                           ? default_table_path(cfg.preset, cfg.max_length)
                           : cfg.table_path;
    fuchsian::GeodesicTable table = table_io::read_table(path, g);
    provenance["table_path"] = path;
    provenance["table_hash"] = hex64(table_io::file_hash(path));
    provenance["table_cutoff"] = table.cutoff;
    return table;
}

reps::TracePolynomial parse_poly(const std::string& s) {
    if (s == "one") return reps::TracePolynomial::one();
    if (s == "chi") return reps::TracePolynomial::trace();
    if (s == "sym2") return reps::TracePolynomial::symmetrized_square();
    throw std::invalid_argument("chebotarev: f must be one | chi | sym2");
}

}  // namespace

std::string default_table_path(const std::string& preset, double max_length) {
    const char* dir = std::getenv("SPECLAB_CACHE_DIR");
    std::string base = dir ? dir : ".";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%s_T%.6g.lspec", preset.c_str(), max_length);
    return base + "/" + buf;
}

spectral::CharFn make_char_fn(const fuchsian::GeodesicTable& table,
                              const reps::CharacterSpec& spec,
                              const fuchsian::SurfaceGroup& g) {
    using Complex = std::complex<double>;
    const auto* base = table.classes.data();
    if (spec.kind == reps::CharacterSpec::Kind::Abelian) {
        auto phases = std::make_shared<std::vector<double>>();
        phases->reserve(table.classes.size());
        for (const auto& c : table.classes) {
            auto ab = reps::abelianization(g, c.canonical_word);
            double phase = 0.0;
            for (size_t i = 0; i < ab.size(); i++)
                phase += spec.abelian.theta[i] * ab[i];
            phases->push_back(phase);
        }
        return [base, phases](const fuchsian::PrimitiveClass& c, int k) {
            size_t idx = &c - base;
            return std::polar(1.0, 2.0 * 3.14159265358979323846 * k *
                                       (*phases)[idx]);
        };
    }
    auto eigs = std::make_shared<std::vector<Eigen::VectorXcd>>();
    eigs->reserve(table.classes.size());
    for (const auto& c : table.classes) {
        Eigen::MatrixXcd m = spec.rep->word_image(c.canonical_word);
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
        eigs->push_back(es.eigenvalues());
    }
    return [base, eigs](const fuchsian::PrimitiveClass& c, int k) {
        size_t idx = &c - base;
        const Eigen::VectorXcd& lam = (*eigs)[idx];
        Complex t{0.0, 0.0};
        for (int i = 0; i < lam.size(); i++) t += std::pow(lam(i), k);
        return t;
    };
}

spectral::FixFn make_hom_fix_fn(const fuchsian::GeodesicTable& table,
                                const covers::HomSample& hom) {
    const auto* base = table.classes.data();
    auto types = std::make_shared<std::vector<std::vector<int>>>();
    types->reserve(table.classes.size());
    for (const auto& c : table.classes) {
        covers::Permutation p = covers::permutation_of_word(hom, c.canonical_word);
        std::vector<int> counts(hom.n, 0);
        std::vector<bool> seen(hom.n, false);
        for (int i = 0; i < hom.n; i++) {
            if (seen[i]) continue;
            int len = 0, x = i;
            do {
                seen[x] = true;
                x = p[x];
                len++;
            } while (x != i);
            counts[len - 1]++;
        }
        types->push_back(std::move(counts));
    }
    return [base, types](const fuchsian::PrimitiveClass& c, int k) {
        size_t idx = &c - base;
        const auto& counts = (*types)[idx];
        int f = 0;
        for (int d = 1; d <= (int)counts.size(); d++)
            if (k % d == 0) f += d * counts[d - 1];
        return (double)f;
    };
}

bool goe_side(const reps::CharacterSpec& spec) {
    if (spec.kind == reps::CharacterSpec::Kind::Abelian)
        return reps::is_involutive(spec.abelian);
    return spec.rep->kind == reps::GroupKind::SO ||
           spec.rep->kind == reps::GroupKind::Sp;
}

namespace {

RunResult run_enumerate(const ExperimentConfig& cfg) {
    auto g = fuchsian::build_genus2_octagon();
    fuchsian::EnumerateOptions opt;
    opt.workers = cfg.workers;
    auto table = fuchsian::enumerate_primitives(g, cfg.max_length, opt);
    std::string path = cfg.table_path.empty()
                           ? default_table_path(cfg.preset, cfg.max_length)
                           : cfg.table_path;
    table_io::write_table(table, path);

    RunResult rr;
    rr.report["results"]["classes"] = table.classes.size();
    rr.report["results"]["systole"] =
        table.classes.empty() ? 0.0 : table.systole();
    auto counts = fuchsian::count(table, cfg.max_length);
    rr.report["results"]["N0"] = counts.primitive;
    rr.report["results"]["N"] = counts.total;
    rr.report["results"]["cache_path"] = path;
    rr.report["results"]["cache_hash"] = hex64(table_io::file_hash(path));
    return rr;
}

RunResult run_verify_table(const ExperimentConfig& cfg) {
    auto g = fuchsian::build_genus2_octagon();
    RunResult rr;
    Json prov;
    auto table = load_table(cfg, g, prov);  // read_table already validates
    rr.report["table_provenance"] = prov;
    CheckList cl;
    cl.add_flag("read_and_revalidate", true);

    // inverse pairing is a fixed-point-free involution with half p0 marks
    size_t p0 = 0;
    for (const auto& c : table.classes) p0 += c.p0_representative ? 1 : 0;
    cl.add_flag("p0_half", 2 * p0 == table.classes.size());

    double dual_T = cfg.dual_up_to;
    if (dual_T > 0) {
        if (dual_T > 8.0 + 1e-9)
            throw std::invalid_argument("verify-table: dual check limited to T <= 8");
        auto a = fuchsian::enumerate_primitives(g, dual_T);
        auto b = fuchsian::enumerate_primitives_dual(g, dual_T);
        bool same = a.classes.size() == b.classes.size();
        for (size_t i = 0; same && i < a.classes.size(); i++)
            same = a.classes[i].canonical_word == b.classes[i].canonical_word &&
                   std::fabs(a.classes[i].length - b.classes[i].length) < 1e-9;
        cl.add_flag("dual_enumeration_agreement", same);
    }
    rr.report["checks"] = cl.checks;
    rr.exit_code = cl.all_pass ? 0 : 2;
    return rr;
}

RunResult run_homcount(const ExperimentConfig& cfg) {
    auto g = fuchsian::build_genus2_octagon();
    RunResult rr;
    CheckList cl;
    if (cfg.n <= 3) {
        auto count = covers::count_homs_exhaustive(g, cfg.n);
        rr.report["results"]["hom_count"] = count;
        if (cfg.n == 2) cl.add("hom_count_n2", (double)count, 16.0, 0.0);
        if (cfg.n == 3) cl.add("hom_count_n3", (double)count, 486.0, 0.0);
    }
    if (cfg.trials > 0) {
        // rejection acceptance rate against the exhaustive value
        CounterRng rng(cfg.seed, 0);
        std::int64_t accepts = 0;
        for (std::int64_t t = 0; t < cfg.trials; t++) {
            covers::HomSample hom;
            hom.n = cfg.n;
            hom.images.resize(4);
            for (int k = 0; k < 4; k++) {
                covers::Permutation p = covers::identity_perm(cfg.n);
                for (int i = cfg.n - 1; i > 0; i--)
                    std::swap(p[i], p[rng.next_below(i + 1)]);
                hom.images[k] = p;
            }
            if (hom.relator_holds(g)) accepts++;
        }
        double rate = (double)accepts / cfg.trials;
        rr.report["results"]["trials"] = cfg.trials;
        rr.report["results"]["acceptance_rate"] = rate;
        if (cfg.n == 3) {
            double p = 486.0 / 1296.0;
            double se = std::sqrt(p * (1 - p) / cfg.trials);
            rr.report["results"]["acceptance_se"] = se;
            cl.add("acceptance_rate_n3", rate, p, 3.0 * se);
        }
    }
    rr.report["checks"] = cl.checks;
    rr.exit_code = cl.all_pass ? 0 : 2;
    return rr;
}

RunResult run_fixstats(const ExperimentConfig& cfg) {
    auto g = fuchsian::build_genus2_octagon();
    std::vector<Word> words;
    for (const auto& s : split(cfg.words, ',')) words.push_back(word_from_string(s));
    std::vector<int> powers;
    for (double p : parse_list(cfg.powers)) powers.push_back((int)p);

    auto stats = covers::fix_moment_experiment(g, words, powers, cfg.n,
                                               cfg.samples, cfg.seed,
                                               cfg.workers);
    RunResult rr;
    Json res;
    res["n"] = cfg.n;
    res["samples"] = cfg.samples;
    Json per = Json::array();
    for (size_t wi = 0; wi < words.size(); wi++)
        for (size_t kj = 0; kj < powers.size(); kj++) {
            size_t idx = stats.index(wi, kj);
            per.push_back({{"word", word_to_string(words[wi])},
                           {"k", powers[kj]},
                           {"mean_fix", stats.mean_fix[idx]},
                           {"se", stats.se_fix[idx]},
                           {"d_k", covers::divisor_count(powers[kj])},
                           {"var", stats.cov[idx][idx]},
                           {"var_se", stats.cov_se[idx][idx]}});
        }
    res["fixed_points"] = per;
    Json cyc = Json::array();
    for (size_t wi = 0; wi < words.size(); wi++)
        for (int d = 1; d <= stats.max_cycle_d; d++)
            cyc.push_back({{"word", word_to_string(words[wi])},
                           {"d", d},
                           {"mean", stats.cycle_mean[wi][d - 1]},
                           {"mean_se", stats.cycle_mean_se[wi][d - 1]},
                           {"var", stats.cycle_var[wi][d - 1]},
                           {"var_se", stats.cycle_var_se[wi][d - 1]}});
    res["cycles"] = cyc;
    rr.report["results"] = res;
    return rr;
}

RunResult run_connectivity(const ExperimentConfig& cfg) {
    auto g = fuchsian::build_genus2_octagon();
    std::int64_t connected = 0;
    for (std::int64_t i = 0; i < cfg.samples; i++) {
        CounterRng rng = CounterRng::for_sample(cfg.seed, i);
        auto hom = covers::sample_hom(g, cfg.n, rng);
        if (covers::is_connected(hom)) connected++;
    }
    double frac = (double)connected / cfg.samples;
    RunResult rr;
    rr.report["results"]["n"] = cfg.n;
    rr.report["results"]["samples"] = cfg.samples;
    rr.report["results"]["connected_fraction"] = frac;
    CheckList cl;
    cl.add_flag("connected_fraction_ge_0.9", frac >= 0.9);
    rr.report["checks"] = cl.checks;
    rr.exit_code = cl.all_pass ? 0 : 2;
    return rr;
}

RunResult run_variance_limit(const ExperimentConfig& cfg) {
    auto g = fuchsian::build_genus2_octagon();
    RunResult rr;
    Json prov;
    auto table = load_table(cfg, g, prov);
    rr.report["table_provenance"] = prov;
    auto spec = reps::parse_character_spec(cfg.char_spec, g);
    auto chi = make_char_fn(table, spec, g);
    auto tf = spectral::TestFunction::standard_bump();

    bool goe = goe_side(spec);
    double target = goe ? spectral::goe_sigma2(tf) : spectral::gue_sigma2(tf);
    int max_k = 0;
    if (cfg.kmax != "auto") max_k = std::stoi(cfg.kmax);
    std::vector<double> Ls = cfg.L_values.empty()
                                 ? std::vector<double>{cfg.max_length}
                                 : cfg.L_values;
    Json rows = Json::array();
    std::ofstream csv;
    if (!cfg.csv_path.empty()) {
        csv.open(cfg.csv_path);
        csv << "L,S,S11,SNP,target,ratio\n";
    }
    std::vector<double> ratios;
    for (double L : Ls) {
        spectral::Window w{cfg.alpha, L};
        auto vt = spectral::limit_variance(table, chi, tf, w, max_k);
        double ratio = vt.total / target;
        ratios.push_back(ratio);
        rows.push_back({{"L", L},
                        {"S", vt.total},
                        {"S11", vt.s11},
                        {"SNP", vt.s_np},
                        {"k_max", vt.k_max},
                        {"target", target},
                        {"baseline", goe ? "GOE" : "GUE"},
                        {"ratio", ratio}});
        if (csv.is_open())
            csv << L << "," << vt.total << "," << vt.s11 << "," << vt.s_np << ","
                << target << "," << ratio << "\n";
    }
    bool trend = true;
    for (size_t i = 1; i < ratios.size(); i++)
        trend &= std::fabs(ratios[i] - 1.0) <= std::fabs(ratios[i - 1] - 1.0);
    rr.report["results"]["rows"] = rows;
    rr.report["results"]["ratio_trend_monotone"] = trend;
    return rr;
}

RunResult run_variance_mc(const ExperimentConfig& cfg) {
    auto g = fuchsian::build_genus2_octagon();
    RunResult rr;
    Json prov;
    auto table = load_table(cfg, g, prov);
    rr.report["table_provenance"] = prov;
    auto spec = reps::parse_character_spec(cfg.char_spec, g);
    auto chi = make_char_fn(table, spec, g);
    auto tf = spectral::TestFunction::standard_bump();
    double L = cfg.L_values.empty() ? 5.0 : cfg.L_values.front();
    spectral::Window w{cfg.alpha, L};

    double sum = 0.0, sum2 = 0.0, sum4 = 0.0;
    std::vector<double> vals;
    vals.reserve(cfg.samples);
    for (std::int64_t i = 0; i < cfg.samples; i++) {
        CounterRng rng = CounterRng::for_sample(cfg.seed, i);
        auto hom = covers::sample_hom(g, cfg.n, rng);
        auto fix = make_hom_fix_fn(table, hom);
        vals.push_back(spectral::geometric_sum(table, chi, fix, tf, w));
    }
    double M = (double)cfg.samples;
    for (double v : vals) sum += v;
    double mean = sum / M;
    for (double v : vals) {
        double d = v - mean;
        sum2 += d * d;
        sum4 += d * d * d * d;
    }
    double var = sum2 / (M - 1.0);
    double m2 = sum2 / M, m4 = sum4 / M;
    double var_se =
        std::sqrt(std::max(0.0, m4 - m2 * m2 * (M - 3.0) / (M - 1.0)) / M);

    auto limit = spectral::limit_variance(table, chi, tf, w);
    rr.report["results"]["n"] = cfg.n;
    rr.report["results"]["L"] = L;
    rr.report["results"]["samples"] = cfg.samples;
    rr.report["results"]["empirical_mean"] = mean;
    rr.report["results"]["empirical_variance"] = var;
    rr.report["results"]["variance_se"] = var_se;
    rr.report["results"]["limit_S"] = limit.total;
    rr.report["results"]["gap"] = std::fabs(var - limit.total);
    return rr;
}

RunResult run_chebotarev(const ExperimentConfig& cfg) {
    auto g = fuchsian::build_genus2_octagon();
    RunResult rr;
    Json prov;
    auto table = load_table(cfg, g, prov);
    rr.report["table_provenance"] = prov;
    auto spec = reps::parse_character_spec(cfg.char_spec, g);
    auto poly = parse_poly(cfg.f_spec);

    std::vector<double> xs = cfg.x_values.empty()
                                 ? std::vector<double>{table.cutoff}
                                 : cfg.x_values;
    Json rows = Json::array();
    std::ofstream csv;
    if (!cfg.csv_path.empty()) {
        csv.open(cfg.csv_path);
        csv << "x,sum_re,sum_im,abs_sum,li,abs_normalized,N0\n";
    }
    for (double x : xs) {
        auto s = reps::chebotarev_sum(table, spec, g, poly, x);
        auto counts = fuchsian::count(table, x);
        rows.push_back({{"x", x},
                        {"sum_re", s.sum.real()},
                        {"sum_im", s.sum.imag()},
                        {"abs_sum", std::abs(s.sum)},
                        {"li", s.li},
                        {"normalized_re", s.normalized.real()},
                        {"abs_normalized", std::abs(s.normalized)},
                        {"N0", counts.primitive},
                        {"abs_sum_over_N0",
                         counts.primitive > 0
                             ? std::abs(s.sum) / counts.primitive
                             : 0.0}});
        if (csv.is_open())
            csv << x << "," << s.sum.real() << "," << s.sum.imag() << ","
                << std::abs(s.sum) << "," << s.li << "," << std::abs(s.normalized)
                << "," << counts.primitive << "\n";
    }
    rr.report["results"]["rows"] = rows;
    return rr;
}

RunResult run_equi1(const ExperimentConfig& cfg) {
    auto g = fuchsian::build_genus2_octagon();
    RunResult rr;
    Json prov;
    auto table = load_table(cfg, g, prov);
    rr.report["table_provenance"] = prov;
    auto spec = reps::parse_character_spec(cfg.char_spec, g);
    auto chi = make_char_fn(table, spec, g);
    auto tf = spectral::TestFunction::standard_bump();
    double kappa = goe_side(spec) ? 2.0 : 1.0;

    std::vector<double> Ts = cfg.T_values.empty()
                                 ? std::vector<double>{table.cutoff}
                                 : cfg.T_values;
    Json rows = Json::array();
    for (double T : Ts) {
        auto r = spectral::equi1_check(table, chi, cfg.alpha, tf, T, kappa);
        auto r0 = spectral::equi1_check(table, chi, 0.0, tf, T, kappa);
        rows.push_back({{"T", T},
                        {"sum", r.sum},
                        {"predicted", r.predicted},
                        {"ratio", r.ratio},
                        {"alpha0_predicted", r0.predicted}});
    }
    rr.report["results"]["kappa"] = kappa;
    rr.report["results"]["rows"] = rows;
    return rr;
}

RunResult run_haar(const ExperimentConfig& cfg) {
    reps::GroupKind kind;
    if (cfg.ensemble == "u")
        kind = reps::GroupKind::U;
    else if (cfg.ensemble == "su")
        kind = reps::GroupKind::SU;
    else if (cfg.ensemble == "so")
        kind = reps::GroupKind::SO;
    else if (cfg.ensemble == "sp")
        kind = reps::GroupKind::Sp;
    else
        throw std::invalid_argument("haar: --ensemble u|su|so|sp");
    CounterRng rng(cfg.seed, 0);
    auto m = reps::haar_trace_moments(kind, cfg.dim, cfg.samples, rng);
    RunResult rr;
    rr.report["results"] = {{"group", cfg.ensemble},
                            {"dim", cfg.dim},
                            {"samples", m.samples},
                            {"abs_trace_sq", m.abs_trace_sq},
                            {"abs_trace_sq_se", m.abs_trace_sq_se},
                            {"trace_sq_re", m.trace_sq.real()},
                            {"trace_sq_im", m.trace_sq.imag()},
                            {"trace_sq_se", m.trace_sq_se},
                            {"f_moment", m.f_moment},
                            {"f_moment_se", m.f_moment_se}};
    CheckList cl;
    cl.add("abs_trace_sq", m.abs_trace_sq, 1.0, 3.0 * m.abs_trace_sq_se);
    rr.report["checks"] = cl.checks;
    rr.exit_code = cl.all_pass ? 0 : 2;
    return rr;
}

RunResult run_rmt(const ExperimentConfig& cfg) {
    rmt::EnsembleConfig ec;
    ec.kind = cfg.ensemble == "goe" ? rmt::Ensemble::GOE : rmt::Ensemble::GUE;
    ec.dim = cfg.dim;
    ec.samples = (int)cfg.samples;
    ec.window = cfg.window;
    ec.bulk_center = cfg.bulk_center;
    ec.seed = cfg.seed;
    auto tf = spectral::TestFunction::standard_bump();
    auto est = rmt::smoothed_count_variance(ec, tf);
    RunResult rr;
    rr.report["results"] = {{"ensemble", cfg.ensemble},
                            {"N", ec.dim},
                            {"M", ec.samples},
                            {"W", ec.window},
                            {"mean", est.mean},
                            {"variance", est.variance},
                            {"variance_se", est.variance_se},
                            {"sigma2_goe", spectral::goe_sigma2(tf)},
                            {"sigma2_gue", spectral::gue_sigma2(tf)}};
    if (cfg.ensemble == "gue")
        rr.report["results"]["sine_kernel_oracle"] =
            rmt::gue_sine_kernel_variance(tf, ec.window);
    return rr;
}

RunResult run_report_merge(const ExperimentConfig& cfg) {
    RunResult rr;
    Json merged = Json::array();
    for (const auto& path : cfg.merge_inputs) {
        std::ifstream f(path);
        if (!f) throw std::runtime_error("report-merge: cannot open " + path);
        Json j;
        f >> j;
        merged.push_back(j);
    }
    rr.report["results"]["merged"] = merged;
    return rr;
}

}  // namespace

RunResult run(const ExperimentConfig& cfg) {
    auto start = std::chrono::steady_clock::now();
    RunResult rr;
    if (cfg.command == "enumerate")
        rr = run_enumerate(cfg);
    else if (cfg.command == "verify-table")
        rr = run_verify_table(cfg);
    else if (cfg.command == "homcount")
        rr = run_homcount(cfg);
    else if (cfg.command == "fixstats")
        rr = run_fixstats(cfg);
    else if (cfg.command == "connectivity")
        rr = run_connectivity(cfg);
    else if (cfg.command == "variance-limit")
        rr = run_variance_limit(cfg);
    else if (cfg.command == "variance-mc")
        rr = run_variance_mc(cfg);
    else if (cfg.command == "chebotarev")
        rr = run_chebotarev(cfg);
    else if (cfg.command == "equi1")
        rr = run_equi1(cfg);
    else if (cfg.command == "haar")
        rr = run_haar(cfg);
    else if (cfg.command == "rmt")
        rr = run_rmt(cfg);
    else if (cfg.command == "report-merge")
        rr = run_report_merge(cfg);
    else
        throw std::invalid_argument("unknown command: " + cfg.command);

    Json full;
    full["config"] = config_echo(cfg);
    for (auto& [k, v] : rr.report.items()) full[k] = v;
    if (cfg.timing) {
        auto end = std::chrono::steady_clock::now();
        full["timing_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(end - start)
                .count();
    }
    rr.report = full;

    if (!cfg.out_path.empty()) {
        std::ofstream f(cfg.out_path);
        if (!f) throw std::runtime_error("cannot open report path " + cfg.out_path);
        f << rr.report.dump(2) << "\n";
    }
    return rr;
}

}  // namespace speclab::cli
