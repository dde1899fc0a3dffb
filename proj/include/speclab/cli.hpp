#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "speclab/fuchsian.hpp"
#include "speclab/reps.hpp"
#include "speclab/spectral.hpp"

namespace speclab::cli {

using Json = nlohmann::ordered_json;

struct ExperimentConfig {
    std::string command;
    std::string preset = "octagon";

    double max_length = 10.0;          // enumerate / table default
    std::string table_path;            // empty: derived from cache dir
    std::string char_spec = "abelian:0,0,0,0";
    int n = 8;
    std::int64_t samples = 10000;
    std::uint64_t seed = 1;
    double alpha = 1.0;
    std::vector<double> L_values;      // variance-limit / variance-mc
    std::string kmax = "auto";
    std::string ensemble = "gue";
    int dim = 800;
    double window = 12.0;
    double bulk_center = 0.0;
    int workers = 1;
    std::string out_path;
    std::string csv_path;
    bool timing = false;
    std::string f_spec = "one";        // chebotarev: one | chi | sym2
    std::vector<double> x_values;      // chebotarev
    std::vector<double> T_values;      // equi1
    std::string words = "a";
    std::string powers = "1,2";
    double dual_up_to = 0.0;           // verify-table
    std::vector<std::string> merge_inputs;
    std::int64_t trials = 0;           // homcount acceptance-rate trials
};

struct RunResult {
    int exit_code = 0;  // 0 pass, 2 tolerance failure (errors throw)
    Json report;
};

RunResult run(const ExperimentConfig& cfg);

// default cache location: $SPECLAB_CACHE_DIR or current directory
std::string default_table_path(const std::string& preset, double max_length);

// Per-class character evaluator chi(gamma^k) backed by the spec
// (abelian phases or cached eigenvalues of the word images).
spectral::CharFn make_char_fn(const fuchsian::GeodesicTable& table,
                              const reps::CharacterSpec& spec,
                              const fuchsian::SurfaceGroup& g);

// F_n(gamma^k) evaluator for one sampled cover (cycle types precomputed).
spectral::FixFn make_hom_fix_fn(const fuchsian::GeodesicTable& table,
                                const covers::HomSample& hom);

// GOE side (time reversal symmetric): involutive abelian characters and
// real-trace matrix targets.
bool goe_side(const reps::CharacterSpec& spec);

}  // namespace speclab::cli
