#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "speclab/cli.hpp"
#include "speclab/table_io.hpp"

using namespace speclab;
using namespace speclab::cli;

namespace {
const fuchsian::SurfaceGroup& octagon() {
    static auto g = fuchsian::build_genus2_octagon();
    return g;
}

std::string tmp_path(const std::string& name) {
    return std::string("/tmp/speclab_test_") + name;
}
}  // namespace

TEST_CASE("table cache round trip") {
    const auto& g = octagon();
    auto table = fuchsian::enumerate_primitives(g, 6.0);
    std::string path = tmp_path("t6.lspec");
    table_io::write_table(table, path);

    auto back = table_io::read_table(path, g);
    CHECK(back.cutoff == table.cutoff);
    REQUIRE(back.classes.size() == table.classes.size());
    for (size_t i = 0; i < table.classes.size(); i++) {
        CHECK(back.classes[i].canonical_word == table.classes[i].canonical_word);
        CHECK(back.classes[i].length == table.classes[i].length);  // bit exact
        CHECK(back.classes[i].inverse_pair == table.classes[i].inverse_pair);
        CHECK(back.classes[i].p0_representative ==
              table.classes[i].p0_representative);
    }
    // lossless re-serialization
    CHECK(table_io::serialize_table(back) == table_io::serialize_table(table));

    // querying below the cutoff matches direct enumeration
    auto c5 = fuchsian::count(back, 5.0);
    auto direct = fuchsian::count(fuchsian::enumerate_primitives(g, 5.0), 5.0);
    CHECK(c5.primitive == direct.primitive);
    CHECK(c5.total == direct.total);
}

TEST_CASE("empty table below the systole round-trips with a valid header") {
    ExperimentConfig cfg;
    cfg.command = "enumerate";
    cfg.max_length = 1.0;
    cfg.table_path = tmp_path("t1.lspec");
    auto rr = run(cfg);
    CHECK(rr.exit_code == 0);
    CHECK(rr.report["results"]["N0"].get<long>() == 0);

    std::ifstream f(tmp_path("t1.lspec"));
    std::string header;
    std::getline(f, header);
    CHECK(header == "LSPEC v1 preset=octagon genus=2 maxlen=1");
    auto back = table_io::read_table(tmp_path("t1.lspec"), octagon());
    CHECK(back.classes.empty());
    CHECK(back.cutoff == 1.0);
}

TEST_CASE("table cache rejects corruption") {
    const auto& g = octagon();
    auto table = fuchsian::enumerate_primitives(g, 4.0);
    std::string path = tmp_path("t4.lspec");
    table_io::write_table(table, path);

    auto mangle = [&](const std::string& from, const std::string& to) {
        std::ifstream in(path);
        std::stringstream buf;
        buf << in.rdbuf();
        std::string text = buf.str();
        auto pos = text.find(from);
        REQUIRE(pos != std::string::npos);
        text.replace(pos, from.size(), to);
        std::string out = tmp_path("mangled.lspec");
        std::ofstream o(out);
        o << text;
        return out;
    };

    CHECK_THROWS(table_io::read_table(mangle("LSPEC v1", "LSPEC v2"), g));
    CHECK_THROWS(table_io::read_table(mangle("preset=octagon", "preset=other"), g));
    // corrupt one stored length
    CHECK_THROWS(table_io::read_table(mangle("len=3.05", "len=3.15"), g));
    CHECK_THROWS(table_io::read_table(mangle("pair=", "pair=9999 x="), g));
}

TEST_CASE("default table path respects the cache dir variable") {
    setenv("SPECLAB_CACHE_DIR", "/tmp/speclab_cache", 1);
    CHECK(default_table_path("octagon", 6.0) ==
          "/tmp/speclab_cache/octagon_T6.lspec");
    unsetenv("SPECLAB_CACHE_DIR");
    CHECK(default_table_path("octagon", 6.0) == "./octagon_T6.lspec");
}

TEST_CASE("run: homcount") {
    ExperimentConfig cfg;
    cfg.command = "homcount";
    cfg.n = 3;
    cfg.trials = 20000;
    cfg.seed = 12;
    auto rr = run(cfg);
    CHECK(rr.exit_code == 0);
    CHECK(rr.report["results"]["hom_count"] == 486);
    CHECK(rr.report["results"]["acceptance_rate"].get<double>() > 0.3);
    bool found_check = false;
    for (auto& c : rr.report["checks"])
        if (c["name"] == "hom_count_n3") {
            found_check = true;
            CHECK(c["pass"].get<bool>());
        }
    CHECK(found_check);
}

TEST_CASE("run: enumerate then variance-limit through the cache") {
    ExperimentConfig ecfg;
    ecfg.command = "enumerate";
    ecfg.max_length = 6.0;
    ecfg.table_path = tmp_path("cli_t6.lspec");
    auto er = run(ecfg);
    CHECK(er.exit_code == 0);
    CHECK(er.report["results"]["N0"].get<long>() == 96);

    ExperimentConfig vcfg;
    vcfg.command = "variance-limit";
    vcfg.table_path = ecfg.table_path;
    vcfg.char_spec = "abelian:0,0,0,0";
    vcfg.alpha = 1.0;
    vcfg.L_values = {5.0, 6.0};
    vcfg.csv_path = tmp_path("vl.csv");
    auto vr = run(vcfg);
    CHECK(vr.exit_code == 0);
    CHECK(vr.report["results"]["rows"].size() == 2);
    CHECK(vr.report["results"]["rows"][0]["baseline"] == "GOE");
    CHECK(vr.report["table_provenance"]["table_hash"].get<std::string>().size() ==
          18);
    std::ifstream csv(tmp_path("vl.csv"));
    std::string header;
    std::getline(csv, header);
    CHECK(header == "L,S,S11,SNP,target,ratio");

    // generic character switches the baseline to GUE
    vcfg.char_spec = "abelian:0.31,0.07,0.53,0.19";
    auto vg = run(vcfg);
    CHECK(vg.report["results"]["rows"][0]["baseline"] == "GUE");
}

TEST_CASE("run: reports are byte-identical for fixed config and seed") {
    ExperimentConfig cfg;
    cfg.command = "fixstats";
    cfg.n = 4;
    cfg.samples = 500;
    cfg.seed = 77;
    cfg.words = "a,b";
    cfg.powers = "1,2";
    auto r1 = run(cfg);
    auto r2 = run(cfg);
    CHECK(r1.report.dump() == r2.report.dump());
    cfg.workers = 2;
    auto r3 = run(cfg);
    CHECK(r1.report.dump() == r3.report.dump());
}

TEST_CASE("run: equi1 and chebotarev plumbing") {
    ExperimentConfig ecfg;
    ecfg.command = "enumerate";
    ecfg.max_length = 6.0;
    ecfg.table_path = tmp_path("cli_t6b.lspec");
    run(ecfg);

    ExperimentConfig q;
    q.command = "equi1";
    q.table_path = ecfg.table_path;
    q.char_spec = "abelian:0,0,0,0";
    q.alpha = 1.0;
    q.T_values = {5.0, 6.0};
    auto qr = run(q);
    CHECK(qr.exit_code == 0);
    CHECK(qr.report["results"]["kappa"] == 2.0);
    auto rows = qr.report["results"]["rows"];
    REQUIRE(rows.size() == 2);
    for (auto& row : rows) {
        CHECK(row["alpha0_predicted"].get<double>() ==
              doctest::Approx(2.0 * row["predicted"].get<double>()));
    }

    ExperimentConfig c;
    c.command = "chebotarev";
    c.table_path = ecfg.table_path;
    c.char_spec = "abelian:0,0,0,0";
    c.f_spec = "one";
    c.x_values = {6.0};
    auto cr = run(c);
    CHECK(cr.exit_code == 0);
    CHECK(cr.report["results"]["rows"][0]["N0"].get<long>() == 96);
    CHECK(cr.report["results"]["rows"][0]["sum_re"].get<double>() ==
          doctest::Approx(96.0));
}

TEST_CASE("run: report-merge") {
    ExperimentConfig cfg;
    cfg.command = "homcount";
    cfg.n = 2;
    cfg.out_path = tmp_path("r1.json");
    run(cfg);
    cfg.out_path = tmp_path("r2.json");
    run(cfg);

    ExperimentConfig m;
    m.command = "report-merge";
    m.merge_inputs = {tmp_path("r1.json"), tmp_path("r2.json")};
    auto mr = run(m);
    CHECK(mr.exit_code == 0);
    CHECK(mr.report["results"]["merged"].size() == 2);
}
