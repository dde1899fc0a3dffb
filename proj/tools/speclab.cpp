// speclab: experiment runner for geodesic enumeration, random covers,
// twisted trace-formula variance, and random-matrix baselines.
#include <CLI11.hpp>

#include <iostream>

#include "speclab/cli.hpp"

using speclab::cli::ExperimentConfig;

int main(int argc, char** argv) {
    CLI::App app{"spectral statistics lab for random covers of the octagon surface"};
    app.require_subcommand(1);

    ExperimentConfig cfg;
    std::string L_list, x_list, T_list;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--preset", cfg.preset, "surface preset (octagon)");
        sub->add_option("--seed", cfg.seed, "master seed");
        sub->add_option("--workers", cfg.workers, "worker count");
        sub->add_option("--out", cfg.out_path, "report JSON path");
        sub->add_option("--csv", cfg.csv_path, "CSV series path");
        sub->add_flag("--timing", cfg.timing, "include timing in the report");
    };

    auto* enumerate = app.add_subcommand("enumerate", "build a geodesic table");
    enumerate->add_option("--max-length", cfg.max_length)->required();
    enumerate->add_option("--table", cfg.table_path, "cache output path");
    add_common(enumerate);

    auto* verify = app.add_subcommand("verify-table", "validate a cache file");
    verify->add_option("--table", cfg.table_path)->required();
    verify->add_option("--dual-up-to", cfg.dual_up_to,
                       "also run the dual-enumeration oracle up to T");
    add_common(verify);

    auto* homcount = app.add_subcommand("homcount", "count/sample Hom(Gamma,S_n)");
    homcount->add_option("--n", cfg.n)->required();
    homcount->add_option("--trials", cfg.trials, "acceptance-rate trials");
    add_common(homcount);

    auto* fixstats = app.add_subcommand("fixstats", "fixed-point statistics");
    fixstats->add_option("--n", cfg.n)->required();
    fixstats->add_option("--samples", cfg.samples)->required();
    fixstats->add_option("--words", cfg.words, "comma list of words");
    fixstats->add_option("--powers", cfg.powers, "comma list of powers");
    add_common(fixstats);

    auto* connectivity = app.add_subcommand("connectivity", "connected fraction");
    connectivity->add_option("--n", cfg.n)->required();
    connectivity->add_option("--samples", cfg.samples)->required();
    add_common(connectivity);

    auto* vlimit = app.add_subcommand("variance-limit",
                                      "deterministic n->infinity variance S(L)");
    vlimit->add_option("--table", cfg.table_path)->required();
    vlimit->add_option("--char", cfg.char_spec);
    vlimit->add_option("--alpha", cfg.alpha);
    vlimit->add_option("--L", L_list, "comma list of L values")->required();
    vlimit->add_option("--kmax", cfg.kmax);
    add_common(vlimit);

    auto* vmc = app.add_subcommand("variance-mc", "finite-n Monte Carlo variance");
    vmc->add_option("--table", cfg.table_path)->required();
    vmc->add_option("--char", cfg.char_spec);
    vmc->add_option("--alpha", cfg.alpha);
    vmc->add_option("--L", L_list)->required();
    vmc->add_option("--n", cfg.n)->required();
    vmc->add_option("--samples", cfg.samples)->required();
    add_common(vmc);

    auto* cheb = app.add_subcommand("chebotarev", "trace-polynomial sums");
    cheb->add_option("--table", cfg.table_path)->required();
    cheb->add_option("--char", cfg.char_spec);
    cheb->add_option("--f", cfg.f_spec, "one | chi | sym2");
    cheb->add_option("--x", x_list, "comma list of cutoffs")->required();
    add_common(cheb);

    auto* equi1 = app.add_subcommand("equi1", "equidistribution lemma check");
    equi1->add_option("--table", cfg.table_path)->required();
    equi1->add_option("--char", cfg.char_spec);
    equi1->add_option("--alpha", cfg.alpha);
    equi1->add_option("--T", T_list, "comma list of T values")->required();
    add_common(equi1);

    auto* haar = app.add_subcommand("haar", "Haar trace moments");
    haar->add_option("--group", cfg.ensemble, "u | su | so | sp")->required();
    haar->add_option("--dim", cfg.dim)->required();
    haar->add_option("--samples", cfg.samples)->required();
    add_common(haar);

    auto* rmtc = app.add_subcommand("rmt", "GOE/GUE smoothed count variance");
    rmtc->add_option("--ensemble", cfg.ensemble, "goe | gue")->required();
    rmtc->add_option("--dim", cfg.dim);
    rmtc->add_option("--samples", cfg.samples);
    rmtc->add_option("--window", cfg.window);
    rmtc->add_option("--u0", cfg.bulk_center);
    add_common(rmtc);

    auto* merge = app.add_subcommand("report-merge", "merge report files");
    merge->add_option("inputs", cfg.merge_inputs)->required();
    add_common(merge);

    CLI11_PARSE(app, argc, argv);

    auto parse_list = [](const std::string& s) {
        std::vector<double> out;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
        return out;
    };
    if (!L_list.empty()) cfg.L_values = parse_list(L_list);
    if (!x_list.empty()) cfg.x_values = parse_list(x_list);
    if (!T_list.empty()) cfg.T_values = parse_list(T_list);
    cfg.command = app.get_subcommands().front()->get_name();

    try {
        auto result = speclab::cli::run(cfg);
        std::cout << result.report.dump(2) << std::endl;
        return result.exit_code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
}
