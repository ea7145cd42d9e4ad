#pragma once

/******************************************************************************
 * Experiment orchestration: one validated config in, one result record out.
 *
 * A record echoes the full config (so any persisted file can be re-run), a
 * version string and a schema version, plus the mode-specific payload.
 * Persisted output carries no clock-derived content: identical config and
 * seed reproduce identical bytes.
 ******************************************************************************/

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "rfidcap/channel_io.hpp"
#include "rfidcap/prob.hpp"
#include "rfidcap/rng.hpp"

namespace rfidcap {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kArtifactVersion = "rfidcap 0.1.0";

enum class Mode {
    region_discrete,
    region_gaussian,
    simulate_discrete,
    simulate_gaussian,
    sweep,
    rfid_report,
};

enum class OutFormat { json, csv };

Mode parse_mode(const std::string& name);
const char* mode_name(Mode mode);

struct ExperimentConfig {
    Mode mode = Mode::region_gaussian;
    std::vector<std::string> channel_files;
    std::string system; // path or inline k=v Gaussian description

    std::vector<double> rates; // r1_id r2_id r1_data r2_data, in `unit`
    LogBase unit = LogBase::bits;
    std::vector<std::size_t> n_list;
    std::uint64_t trials = 1000;
    double epsilon = -1; // < 0 picks the mode default (0.1 discrete, 0.2 gaussian)
    RngSeed seed = kDefaultSeed;
    bool entropy_seed = false;

    std::string out_path; // empty writes to stdout only
    OutFormat format = OutFormat::json;

    std::size_t grid = 101;    // alpha grid for Gaussian frontier work
    std::size_t budget = 2000; // witness-search evaluation budget
    std::size_t aux_u = 0, aux_v = 0; // 0 defaults to |X|
    bool ml_decoder = false;
    bool allow_alpha_one = false;
    double alpha = 0.5;        // fixed split for Gaussian simulation
    double power_backoff = -1; // < 0 picks epsilon/2
    unsigned threads = 1;

    std::string sweep_axis;          // n, r1-id, r2-id, r1-data, r2-data,
                                     // alpha, crossover, n1, n2, n3
    std::vector<double> sweep_values;

    nlohmann::ordered_json echo() const;
};

struct ResultRecord {
    int schema_version = kSchemaVersion;
    std::string version = kArtifactVersion;
    nlohmann::ordered_json config;
    nlohmann::ordered_json payload;

    nlohmann::ordered_json to_json() const;
    std::string to_csv() const; // payload rows only, fixed column sets
};

// Validates, dispatches on mode, computes the payload.
ResultRecord run(const ExperimentConfig& cfg);

// Inverse of ExperimentConfig::echo(): rebuilds a runnable config from a
// persisted record, so any result file can be reproduced bit for bit.
ExperimentConfig config_from_echo(const nlohmann::ordered_json& echo);

// Serializes per cfg.format and writes to cfg.out_path (or stdout).
void write_record(const ResultRecord& rec, const ExperimentConfig& cfg);

// Floats in CSV output: 12 significant digits.
std::string csv_double(double x);

} // namespace rfidcap
