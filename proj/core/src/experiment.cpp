#include "rfidcap/experiment.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <utility>

#include "rfidcap/errors.hpp"
#include "rfidcap/regions.hpp"
#include "rfidcap/rfid.hpp"
#include "rfidcap/sim_discrete.hpp"
#include "rfidcap/sim_gaussian.hpp"

namespace rfidcap {

namespace {

using ordered = nlohmann::ordered_json;

const char* unit_name(LogBase u) { return u == LogBase::bits ? "bits" : "nats"; }

RateQuadruple rates_in_nats(const ExperimentConfig& cfg) {
    if (cfg.rates.size() != 4)
        throw UsageError(
            "rates: need four values (r1-id, r2-id, r1-data, r2-data)");
    RateQuadruple r{to_nats(cfg.rates[0], cfg.unit), to_nats(cfg.rates[1], cfg.unit),
                    to_nats(cfg.rates[2], cfg.unit),
                    to_nats(cfg.rates[3], cfg.unit)};
    r.validate();
    return r;
}

ordered make_payload(const char* kind, LogBase unit, ordered columns, ordered rows) {
    ordered p;
    p["kind"] = kind;
    p["unit"] = unit_name(unit);
    p["columns"] = std::move(columns);
    p["rows"] = std::move(rows);
    p["extra"] = ordered::object();
    return p;
}

// Loadable back as a witness spec file.
ordered witness_json(const JointPmf& p_uvx, const Pmf& q1, const Pmf& q2) {
    ordered w;
    w["kind"] = "witness";
    w["dims"] = p_uvx.dims();
    w["p_uvx"] = std::vector<double>(p_uvx.probs().begin(), p_uvx.probs().end());
    w["p_q1"] = std::vector<double>(q1.probs().begin(), q1.probs().end());
    w["p_q2"] = std::vector<double>(q2.probs().begin(), q2.probs().end());
    return w;
}

const GaussianSystem& gaussian_of(const LoadedInputs& in, bool allow_alpha_one) {
    if (!in.gaussian)
        throw UsageError("a gaussian system is required; pass --system with a file "
                         "or an inline P=...,N1=... description");
    in.gaussian->validate(allow_alpha_one);
    return *in.gaussian;
}

void need_witness(const LoadedInputs& in) {
    if (!in.has_witness())
        throw UsageError(
            "a witness block (p_uvx, p_q1, p_q2) is required for this mode");
}

double resolve_epsilon(ExperimentConfig& cfg, bool gaussian_flavor) {
    if (cfg.epsilon < 0) cfg.epsilon = gaussian_flavor ? 0.2 : 0.1;
    if (!(cfg.epsilon > 0))
        throw ValidationError("epsilon: must be positive");
    return cfg.epsilon;
}

const ordered kSimColumns = {
    "n", "trials",
    "bcc_errors", "bcc_rate", "bcc_ci_lo", "bcc_ci_hi",
    "mac_trials", "mac_errors", "mac_rate", "mac_ci_lo", "mac_ci_hi",
    "overall_errors", "overall_rate", "overall_ci_lo", "overall_ci_hi",
    "encode_failures", "miss_type", "wrong_message"};

ordered sim_row(std::size_t n, const SimResult& s) {
    return ordered::array(
        {n, s.trials,
         s.bcc.errors, s.bcc.hat, s.bcc.ci.lo, s.bcc.ci.hi,
         s.mac.total, s.mac.errors, s.mac.hat, s.mac.ci.lo, s.mac.ci.hi,
         s.overall.errors, s.overall.hat, s.overall.ci.lo, s.overall.ci.hi,
         s.encode_failures, s.miss_type, s.wrong_message});
}

ordered run_region_discrete(ExperimentConfig& cfg, const LoadedInputs& inputs) {
    const DiscreteSystem sys = inputs.discrete_system();
    const LogBase u = cfg.unit;

    if (!cfg.rates.empty()) {
        need_witness(inputs);
        const RateQuadruple r = rates_in_nats(cfg);
        const DiscreteBounds b =
            discrete_bounds(*inputs.p_uvx, sys.bcc, *inputs.p_q1, *inputs.p_q2,
                            sys.imp1, sys.imp2, sys.mac);
        const bool inside = admits(b, r);
        ordered payload = make_payload(
            "discrete-membership", u,
            {"r1_id", "r2_id", "r1_data", "r2_data", "inside"},
            ordered::array({ordered::array({cfg.rates[0], cfg.rates[1], cfg.rates[2],
                                            cfg.rates[3], inside ? 1 : 0})}));
        ordered bounds;
        bounds["id1"] = from_nats(b.id1, u);
        bounds["id2"] = from_nats(b.id2, u);
        bounds["id_sum"] = from_nats(b.id_sum, u);
        bounds["data1"] = from_nats(b.data1, u);
        bounds["data2"] = from_nats(b.data2, u);
        bounds["data_sum"] = from_nats(b.data_sum, u);
        payload["extra"]["bounds"] = std::move(bounds);
        return payload;
    }

    if (inputs.has_witness()) {
        const DiscreteBounds b =
            discrete_bounds(*inputs.p_uvx, sys.bcc, *inputs.p_q1, *inputs.p_q2,
                            sys.imp1, sys.imp2, sys.mac);
        return make_payload(
            "discrete-bounds", u,
            {"id1", "id2", "id_sum", "data1", "data2", "data_sum"},
            ordered::array({ordered::array(
                {from_nats(b.id1, u), from_nats(b.id2, u), from_nats(b.id_sum, u),
                 from_nats(b.data1, u), from_nats(b.data2, u),
                 from_nats(b.data_sum, u)})}));
    }

    // No witness: hunt for one.
    Rng rng(cfg.seed);
    const std::size_t ucard = cfg.aux_u ? cfg.aux_u : sys.bcc.x_size();
    const std::size_t vcard = cfg.aux_v ? cfg.aux_v : sys.bcc.x_size();
    const auto frontier =
        discrete_frontier_search(sys, ucard, vcard, cfg.budget, rng);

    ordered rows = ordered::array();
    ordered witnesses = ordered::array();
    for (const auto& p : frontier) {
        const auto& b = p.witness.bounds;
        rows.push_back(ordered::array(
            {from_nats(p.rates.r1_id, u), from_nats(p.rates.r2_id, u),
             from_nats(p.rates.r1_data, u), from_nats(p.rates.r2_data, u),
             from_nats(b.id1, u), from_nats(b.id2, u), from_nats(b.id_sum, u),
             from_nats(b.data1, u), from_nats(b.data2, u),
             from_nats(b.data_sum, u)}));
        witnesses.push_back(
            witness_json(p.witness.p_uvx, p.witness.p_q1, p.witness.p_q2));
    }
    ordered payload = make_payload(
        "discrete-frontier", u,
        {"r1_id", "r2_id", "r1_data", "r2_data", "id1", "id2", "id_sum", "data1",
         "data2", "data_sum"},
        std::move(rows));
    payload["extra"]["witnesses"] = std::move(witnesses);
    return payload;
}

ordered gaussian_frontier_rows(const GaussianSystem& g,
                               const std::vector<double>& alphas) {
    ordered rows = ordered::array();
    for (const double a : alphas) {
        const GaussianBounds b = gaussian_bounds(g, a);
        rows.push_back(
            ordered::array({a, b.id1, b.id2, b.data1, b.data2, b.data_sum}));
    }
    return rows;
}

// Bounds columns converted to the configured unit in place.
void convert_bound_rows(ordered& rows, LogBase u, std::size_t first_col) {
    if (u == LogBase::nats) return;
    for (auto& row : rows)
        for (std::size_t c = first_col; c < row.size(); ++c)
            row[c] = from_nats(row[c].get<double>(), u);
}

std::vector<double> grid_alphas(std::size_t grid) {
    if (grid < 2) throw UsageError("grid needs at least two points");
    std::vector<double> alphas(grid);
    for (std::size_t k = 0; k < grid; ++k)
        alphas[k] = double(k) / double(grid - 1);
    return alphas;
}

ordered run_region_gaussian(ExperimentConfig& cfg, const LoadedInputs& inputs) {
    const GaussianSystem& g = gaussian_of(inputs, cfg.allow_alpha_one);
    const LogBase u = cfg.unit;

    if (!cfg.rates.empty()) {
        const RateQuadruple r = rates_in_nats(cfg);
        const AlphaInterval iv = gaussian_membership(r, g);
        return make_payload(
            "gaussian-membership", u,
            {"r1_id", "r2_id", "r1_data", "r2_data", "alpha_lo", "alpha_hi",
             "inside"},
            ordered::array({ordered::array({cfg.rates[0], cfg.rates[1], cfg.rates[2],
                                            cfg.rates[3], iv.lo, iv.hi,
                                            iv.empty() ? 0 : 1})}));
    }

    ordered rows = gaussian_frontier_rows(g, grid_alphas(cfg.grid));
    convert_bound_rows(rows, u, 1);
    return make_payload("gaussian-frontier", u,
                        {"alpha", "id1", "id2", "data1", "data2", "data_sum"},
                        std::move(rows));
}

ordered run_simulate_discrete(ExperimentConfig& cfg, const LoadedInputs& inputs) {
    const DiscreteSystem sys = inputs.discrete_system();
    need_witness(inputs);
    const RateQuadruple r = rates_in_nats(cfg);
    if (cfg.n_list.empty()) throw UsageError("simulate: --n is required");
    const double eps_nats = to_nats(resolve_epsilon(cfg, false), cfg.unit);

    const Rng master(cfg.seed);
    ordered rows = ordered::array();
    for (const std::size_t n : cfg.n_list) {
        DiscreteSimConfig sc;
        sc.rates = r;
        sc.n = n;
        sc.trials = cfg.trials;
        sc.epsilon = eps_nats;
        sc.ml_decoder = cfg.ml_decoder;
        sc.threads = cfg.threads;
        Rng rng = master.derive(5, n); // one stream per block length
        rows.push_back(sim_row(
            n, estimate_error_rates_discrete(sys, *inputs.p_uvx, *inputs.p_q1,
                                             *inputs.p_q2, sc, rng)));
    }
    return make_payload("discrete-sim", cfg.unit, kSimColumns, std::move(rows));
}

ordered run_simulate_gaussian(ExperimentConfig& cfg, const LoadedInputs& inputs) {
    const GaussianSystem& g = gaussian_of(inputs, cfg.allow_alpha_one);
    const RateQuadruple r = rates_in_nats(cfg);
    if (cfg.n_list.empty()) throw UsageError("simulate: --n is required");
    const double eps = resolve_epsilon(cfg, true); // relative, not unit-scaled
    if (cfg.power_backoff < 0) cfg.power_backoff = eps / 2;

    const Rng master(cfg.seed);
    ordered rows = ordered::array();
    for (const std::size_t n : cfg.n_list) {
        GaussianSimConfig sc;
        sc.alpha = cfg.alpha;
        sc.rates = r;
        sc.n = n;
        sc.trials = cfg.trials;
        sc.epsilon = eps;
        sc.power_backoff = cfg.power_backoff;
        sc.threads = cfg.threads;
        Rng rng = master.derive(5, n);
        rows.push_back(sim_row(n, estimate_error_rates_gaussian(g, sc, rng)));
    }
    return make_payload("gaussian-sim", cfg.unit, kSimColumns, std::move(rows));
}

ordered run_sweep(ExperimentConfig& cfg, const LoadedInputs& inputs) {
    const std::string& axis = cfg.sweep_axis;
    if (axis.empty()) throw UsageError("sweep: --axis is required");
    const LogBase u = cfg.unit;

    if (axis == "alpha") {
        const GaussianSystem& g = gaussian_of(inputs, cfg.allow_alpha_one);
        const std::vector<double> alphas =
            cfg.sweep_values.empty() ? grid_alphas(cfg.grid) : cfg.sweep_values;
        ordered rows = gaussian_frontier_rows(g, alphas);
        convert_bound_rows(rows, u, 1);
        ordered payload = make_payload(
            "sweep", u, {"alpha", "id1", "id2", "data1", "data2", "data_sum"},
            std::move(rows));
        payload["extra"]["axis"] = axis;
        return payload;
    }

    // Everything else sweeps the simulator.
    const bool is_n = axis == "n";
    std::vector<double> values;
    if (is_n) {
        if (cfg.n_list.empty()) throw UsageError("sweep over n: --n is required");
        if (!cfg.sweep_values.empty())
            throw UsageError("sweep over n takes its values from --n, not --values");
        for (const std::size_t n : cfg.n_list) values.push_back(double(n));
    } else {
        if (cfg.sweep_values.empty())
            throw UsageError("sweep: --values is required for axis " + axis);
        if (cfg.n_list.size() != 1)
            throw UsageError(
                "sweep: exactly one --n value is required when the axis is not n");
        values = cfg.sweep_values;
    }

    const bool gaussian_axis = axis == "n1" || axis == "n2" || axis == "n3";
    const bool discrete_axis = axis == "crossover";
    int rate_index = -1;
    if (axis == "r1-id") rate_index = 0;
    if (axis == "r2-id") rate_index = 1;
    if (axis == "r1-data") rate_index = 2;
    if (axis == "r2-data") rate_index = 3;
    if (!is_n && !gaussian_axis && !discrete_axis && rate_index < 0)
        throw UsageError("sweep: unknown axis \"" + axis + "\"");

    bool use_gaussian;
    if (gaussian_axis) {
        use_gaussian = true;
    } else if (discrete_axis) {
        use_gaussian = false;
    } else if (inputs.gaussian && !inputs.has_discrete_system()) {
        use_gaussian = true;
    } else if (!inputs.gaussian && inputs.has_discrete_system()) {
        use_gaussian = false;
    } else if (inputs.gaussian) {
        throw UsageError(
            "sweep: both discrete and gaussian systems loaded; drop one");
    } else {
        throw UsageError("sweep: no system loaded");
    }

    const RateQuadruple base_rates = rates_in_nats(cfg);
    const double eps = resolve_epsilon(cfg, use_gaussian);
    const double eps_nats = use_gaussian ? eps : to_nats(eps, cfg.unit);
    if (use_gaussian && cfg.power_backoff < 0) cfg.power_backoff = eps / 2;
    if (!use_gaussian) need_witness(inputs);
    if (use_gaussian) gaussian_of(inputs, cfg.allow_alpha_one);

    const Rng master(cfg.seed);
    ordered rows = ordered::array();
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double v = values[i];
        RateQuadruple r = base_rates;
        if (rate_index == 0) r.r1_id = to_nats(v, cfg.unit);
        if (rate_index == 1) r.r2_id = to_nats(v, cfg.unit);
        if (rate_index == 2) r.r1_data = to_nats(v, cfg.unit);
        if (rate_index == 3) r.r2_data = to_nats(v, cfg.unit);
        r.validate();
        const std::size_t n = is_n ? std::size_t(v) : cfg.n_list[0];
        Rng rng = master.derive(6, i); // one stream per sweep row

        SimResult res;
        if (use_gaussian) {
            GaussianSystem g = *inputs.gaussian;
            if (axis == "n1") g.n1 = v;
            if (axis == "n2") g.n2 = v;
            if (axis == "n3") g.n3 = v;
            g.validate(cfg.allow_alpha_one);
            GaussianSimConfig sc;
            sc.alpha = cfg.alpha;
            sc.rates = r;
            sc.n = n;
            sc.trials = cfg.trials;
            sc.epsilon = eps;
            sc.power_backoff = cfg.power_backoff;
            sc.threads = cfg.threads;
            res = estimate_error_rates_gaussian(g, sc, rng);
        } else {
            DiscreteSystem sys = inputs.discrete_system();
            if (discrete_axis) {
                // The crossover axis rebuilds the downlink as a symmetric
                // binary pair; the rest of the bundle is reused as loaded.
                sys.bcc = BccChannel::bsc_pair(v, v);
                sys.validate_dims();
            }
            DiscreteSimConfig sc;
            sc.rates = r;
            sc.n = n;
            sc.trials = cfg.trials;
            sc.epsilon = eps_nats;
            sc.ml_decoder = cfg.ml_decoder;
            sc.threads = cfg.threads;
            res = estimate_error_rates_discrete(sys, *inputs.p_uvx, *inputs.p_q1,
                                                *inputs.p_q2, sc, rng);
        }

        ordered row = sim_row(n, res);
        if (!is_n) {
            ordered prefixed = ordered::array({v});
            for (auto& cell : row) prefixed.push_back(std::move(cell));
            row = std::move(prefixed);
        }
        rows.push_back(std::move(row));
    }

    ordered columns = kSimColumns;
    if (!is_n) {
        ordered prefixed = ordered::array({axis});
        for (auto& c : columns) prefixed.push_back(std::move(c));
        columns = std::move(prefixed);
    }
    ordered payload = make_payload("sweep", u, std::move(columns), std::move(rows));
    payload["extra"]["axis"] = axis;
    return payload;
}

ordered run_rfid_report(ExperimentConfig& cfg, const LoadedInputs& inputs) {
    if (cfg.n_list.size() > 1)
        throw UsageError("rfid-report: pass at most one --n value");
    const std::size_t n = cfg.n_list.empty() ? 1 : cfg.n_list[0];
    const LogBase u = cfg.unit;

    RfidLimits tdma, uni;
    if (inputs.has_discrete_system()) {
        const DiscreteSystem sys = inputs.discrete_system();
        Rng rng(cfg.seed);
        const std::size_t ucard = cfg.aux_u ? cfg.aux_u : sys.bcc.x_size();
        const std::size_t vcard = cfg.aux_v ? cfg.aux_v : sys.bcc.x_size();
        const auto frontier =
            discrete_frontier_search(sys, ucard, vcard, cfg.budget, rng);
        tdma = tdma_limit_report(frontier, n);
        uni = universal_limit_report(frontier, n);
    } else if (inputs.gaussian) {
        const GaussianSystem& g = gaussian_of(inputs, cfg.allow_alpha_one);
        const auto frontier = gaussian_frontier(g, cfg.grid);
        tdma = tdma_limit_report(frontier, n);
        uni = universal_limit_report(frontier, n);
    } else {
        throw UsageError("rfid-report: no system loaded");
    }

    // per_tag_id_rate is held in bits; route through nats into the output unit.
    const double per_tag =
        from_nats(to_nats(tdma.per_tag_id_rate, LogBase::bits), u);
    ordered payload = make_payload(
        "rfid-report", u,
        {"max_tags", "per_tag_id_rate", "tdma_uplink_rate",
         "universal_uplink_sum_rate", "n"},
        ordered::array({ordered::array(
            {tdma.max_tags, per_tag, from_nats(tdma.tdma_uplink_rate, u),
             from_nats(uni.universal_uplink_sum_rate, u), n})}));
    payload["extra"]["note"] =
        "universal mode still provisions one downlink identity per tag; only "
        "the uplink schedule differs between the two protocols";
    return payload;
}

} // namespace

Mode parse_mode(const std::string& name) {
    if (name == "region-discrete") return Mode::region_discrete;
    if (name == "region-gaussian") return Mode::region_gaussian;
    if (name == "simulate-discrete") return Mode::simulate_discrete;
    if (name == "simulate-gaussian") return Mode::simulate_gaussian;
    if (name == "sweep") return Mode::sweep;
    if (name == "rfid-report") return Mode::rfid_report;
    throw UsageError("unknown mode \"" + name + "\"");
}

const char* mode_name(Mode mode) {
    switch (mode) {
        case Mode::region_discrete: return "region-discrete";
        case Mode::region_gaussian: return "region-gaussian";
        case Mode::simulate_discrete: return "simulate-discrete";
        case Mode::simulate_gaussian: return "simulate-gaussian";
        case Mode::sweep: return "sweep";
        case Mode::rfid_report: return "rfid-report";
    }
    return "unknown";
}

nlohmann::ordered_json ExperimentConfig::echo() const {
    ordered j;
    j["mode"] = mode_name(mode);
    j["channel_files"] = channel_files;
    j["system"] = system;
    j["rates"] = rates;
    j["unit"] = unit_name(unit);
    j["n"] = n_list;
    j["trials"] = trials;
    j["epsilon"] = epsilon;
    j["seed"] = seed;
    j["format"] = format == OutFormat::json ? "json" : "csv";
    j["grid"] = grid;
    j["budget"] = budget;
    j["aux_cards"] = ordered::array({aux_u, aux_v});
    j["ml_decoder"] = ml_decoder;
    j["allow_alpha_one"] = allow_alpha_one;
    j["alpha"] = alpha;
    j["power_backoff"] = power_backoff;
    j["threads"] = threads;
    j["sweep_axis"] = sweep_axis;
    j["sweep_values"] = sweep_values;
    return j;
}

ExperimentConfig config_from_echo(const nlohmann::ordered_json& echo) {
    ExperimentConfig cfg;
    try {
        cfg.mode = parse_mode(echo.at("mode").get<std::string>());
        cfg.channel_files =
            echo.at("channel_files").get<std::vector<std::string>>();
        cfg.system = echo.at("system").get<std::string>();
        cfg.rates = echo.at("rates").get<std::vector<double>>();
        const std::string unit = echo.at("unit").get<std::string>();
        if (unit != "bits" && unit != "nats")
            throw ValidationError("config echo: unit must be bits or nats");
        cfg.unit = unit == "bits" ? LogBase::bits : LogBase::nats;
        cfg.n_list = echo.at("n").get<std::vector<std::size_t>>();
        cfg.trials = echo.at("trials").get<std::size_t>();
        cfg.epsilon = echo.at("epsilon").get<double>();
        cfg.seed = echo.at("seed").get<std::uint64_t>();
        const std::string format = echo.at("format").get<std::string>();
        if (format != "json" && format != "csv")
            throw ValidationError("config echo: format must be json or csv");
        cfg.format = format == "json" ? OutFormat::json : OutFormat::csv;
        cfg.grid = echo.at("grid").get<std::size_t>();
        cfg.budget = echo.at("budget").get<std::size_t>();
        const auto aux = echo.at("aux_cards").get<std::vector<std::size_t>>();
        if (aux.size() != 2)
            throw ValidationError("config echo: aux_cards must hold two sizes");
        cfg.aux_u = aux[0];
        cfg.aux_v = aux[1];
        cfg.ml_decoder = echo.at("ml_decoder").get<bool>();
        cfg.allow_alpha_one = echo.at("allow_alpha_one").get<bool>();
        cfg.alpha = echo.at("alpha").get<double>();
        cfg.power_backoff = echo.at("power_backoff").get<double>();
        cfg.threads = echo.at("threads").get<unsigned>();
        cfg.sweep_axis = echo.at("sweep_axis").get<std::string>();
        cfg.sweep_values = echo.at("sweep_values").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("config echo: ") + e.what());
    }
    return cfg;
}

nlohmann::ordered_json ResultRecord::to_json() const {
    ordered j;
    j["schema_version"] = schema_version;
    j["version"] = version;
    j["config"] = config;
    j["payload"] = payload;
    return j;
}

std::string csv_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string ResultRecord::to_csv() const {
    std::string out;
    const auto& cols = payload.at("columns");
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i) out += ',';
        out += cols[i].get<std::string>();
    }
    out += '\n';
    for (const auto& row : payload.at("rows")) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            const auto& cell = row[i];
            if (cell.is_string())
                out += cell.get<std::string>();
            else if (cell.is_number_unsigned())
                out += std::to_string(cell.get<std::uint64_t>());
            else if (cell.is_number_integer())
                out += std::to_string(cell.get<std::int64_t>());
            else
                out += csv_double(cell.get<double>());
        }
        out += '\n';
    }
    return out;
}

ResultRecord run(const ExperimentConfig& input) {
    ExperimentConfig cfg = input;
    if (cfg.entropy_seed) {
        std::random_device rd;
        cfg.seed = (std::uint64_t(rd()) << 32) ^ std::uint64_t(rd());
        cfg.entropy_seed = false;
    }

    LoadedInputs inputs;
    for (const auto& f : cfg.channel_files) load_channel_file(f, inputs);
    if (!cfg.system.empty()) load_system(cfg.system, inputs);
    if (inputs.gaussian && (inputs.bcc || inputs.imp1 || inputs.imp2 || inputs.mac))
        throw UsageError(
            "both a discrete channel set and a gaussian system are loaded; "
            "pass one or the other");

    ordered payload;
    switch (cfg.mode) {
        case Mode::region_discrete:
            payload = run_region_discrete(cfg, inputs);
            break;
        case Mode::region_gaussian:
            payload = run_region_gaussian(cfg, inputs);
            break;
        case Mode::simulate_discrete:
            payload = run_simulate_discrete(cfg, inputs);
            break;
        case Mode::simulate_gaussian:
            payload = run_simulate_gaussian(cfg, inputs);
            break;
        case Mode::sweep:
            payload = run_sweep(cfg, inputs);
            break;
        case Mode::rfid_report:
            payload = run_rfid_report(cfg, inputs);
            break;
    }

    ResultRecord rec;
    rec.config = cfg.echo();
    rec.payload = std::move(payload);
    return rec;
}

void write_record(const ResultRecord& rec, const ExperimentConfig& cfg) {
    const std::string text = cfg.format == OutFormat::json
                                 ? rec.to_json().dump(2) + "\n"
                                 : rec.to_csv();
    if (cfg.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f) throw ValidationError("cannot write output file: " + cfg.out_path);
    f << text;
    f.flush();
    if (!f) throw ValidationError("failed writing output file: " + cfg.out_path);
}

} // namespace rfidcap
