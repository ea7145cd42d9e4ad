// Command line front end: rate regions, Monte Carlo error estimates and
// tag-population limits for a two-unit backscatter link.

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

#include "rfidcap/errors.hpp"
#include "rfidcap/experiment.hpp"

namespace {

void add_common_options(CLI::App* sub, rfidcap::ExperimentConfig& cfg,
                        std::string& unit, std::string& format,
                        std::vector<std::size_t>& aux) {
    sub->add_option("--channel-file", cfg.channel_files,
                    "channel description file, repeatable");
    sub->add_option("--system", cfg.system,
                    "system bundle file, or inline gaussian form "
                    "P=...,N1=...,N2=...,N3=...,alpha1=...,alpha2=...");
    sub->add_option("--rates", cfg.rates,
                    "rate point: r1-id r2-id r1-data r2-data")
        ->expected(4);
    sub->add_option("--unit", unit, "unit for rates in and out (bits|nats)")
        ->check(CLI::IsMember({"bits", "nats"}));
    sub->add_option("--n", cfg.n_list, "block length, repeatable for a list");
    sub->add_option("--trials", cfg.trials, "Monte Carlo trials per row");
    sub->add_option("--epsilon", cfg.epsilon,
                    "typicality slack; defaults to 0.1 (discrete) or 0.2 "
                    "(gaussian, relative)");
    sub->add_option("--seed", cfg.seed, "RNG seed; runs are reproducible");
    sub->add_flag("--entropy-seed", cfg.entropy_seed,
                  "draw the seed from the OS entropy pool instead");
    sub->add_option("--out", cfg.out_path, "output file; stdout if omitted");
    sub->add_option("--format", format, "output format (json|csv)")
        ->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--grid", cfg.grid, "alpha grid size for gaussian tables");
    sub->add_option("--budget", cfg.budget, "witness search budget");
    sub->add_option("--aux-cards", aux,
                    "auxiliary alphabet sizes |U| |V|; 0 means |X|")
        ->expected(2);
    sub->add_flag("--ml-decoder", cfg.ml_decoder,
                  "use max-likelihood downlink decoding instead of typicality");
    sub->add_flag("--allow-alpha-one", cfg.allow_alpha_one,
                  "accept reflection coefficients equal to one");
    sub->add_option("--alpha", cfg.alpha, "downlink power split in [0,1]");
    sub->add_option("--power-backoff", cfg.power_backoff,
                    "per-symbol power margin; defaults to epsilon/2");
    sub->add_option("--threads", cfg.threads, "worker threads for simulation");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"achievable-rate tables and random-coding simulation for a "
                 "reader/tag backscatter system"};
    app.require_subcommand(1);

    rfidcap::ExperimentConfig cfg;
    std::string unit = "bits";
    std::string format = "json";
    std::vector<std::size_t> aux;

    const struct {
        const char* name;
        const char* help;
    } modes[] = {
        {"region-discrete",
         "discrete rate bounds: witness membership or frontier search"},
        {"region-gaussian", "gaussian rate bounds over the power-split grid"},
        {"simulate-discrete", "Monte Carlo error rates for the discrete chain"},
        {"simulate-gaussian", "Monte Carlo error rates for the gaussian chain"},
        {"sweep", "repeat an estimate along one axis"},
        {"rfid-report", "tag population and uplink limits"},
    };
    for (const auto& m : modes) {
        CLI::App* sub = app.add_subcommand(m.name, m.help);
        add_common_options(sub, cfg, unit, format, aux);
        if (std::string(m.name) == "sweep") {
            sub->add_option("--axis", cfg.sweep_axis,
                            "one of: n, r1-id, r2-id, r1-data, r2-data, alpha, "
                            "crossover, n1, n2, n3");
            sub->add_option("--values", cfg.sweep_values,
                            "axis values (n takes its values from --n)");
        }
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        cfg.mode = rfidcap::parse_mode(app.get_subcommands().at(0)->get_name());
        cfg.unit = unit == "bits" ? rfidcap::LogBase::bits : rfidcap::LogBase::nats;
        cfg.format = format == "json" ? rfidcap::OutFormat::json
                                      : rfidcap::OutFormat::csv;
        if (!aux.empty()) {
            cfg.aux_u = aux[0];
            cfg.aux_v = aux[1];
        }

        const rfidcap::ResultRecord rec = rfidcap::run(cfg);
        rfidcap::write_record(rec, cfg);
    } catch (const rfidcap::InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
