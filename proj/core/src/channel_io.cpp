#include "rfidcap/channel_io.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rfidcap/errors.hpp"

namespace rfidcap {

namespace {

using nlohmann::json;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open channel file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Byte offset -> "line:col" for parse diagnostics.
std::string line_col(const std::string& text, std::size_t byte) {
    std::size_t pos = std::min(byte, text.size());
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < pos; ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return std::to_string(line) + ":" + std::to_string(col);
}

json parse_document(const std::string& text, const std::string& path) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        throw ValidationError(path + ":" + line_col(text, byte) +
                              ": malformed JSON (" + e.what() + ")");
    }
}

const json& require(const json& doc, const char* key, const std::string& path) {
    const auto it = doc.find(key);
    if (it == doc.end())
        throw ValidationError(path + ": missing required key \"" + key + "\"");
    return *it;
}

std::size_t get_size(const json& doc, const char* key, const std::string& path) {
    const json& v = require(doc, key, path);
    if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0)
        throw ValidationError(path + ": \"" + key + "\" must be a positive integer");
    return v.get<std::size_t>();
}

double to_double(const json& v, const std::string& what, const std::string& path) {
    if (!v.is_number())
        throw ValidationError(path + ": \"" + what + "\" must be a number");
    return v.get<double>();
}

double get_double(const json& doc, const char* key, const std::string& path) {
    return to_double(require(doc, key, path), key, path);
}

std::vector<double> get_tensor(const json& doc, const char* key,
                               const std::string& path) {
    const json& v = require(doc, key, path);
    if (!v.is_array())
        throw ValidationError(path + ": \"" + key +
                              "\" must be a flat row-major array of numbers");
    std::vector<double> out;
    out.reserve(v.size());
    for (const auto& e : v) out.push_back(to_double(e, key, path));
    return out;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

BccChannel parse_bcc(const json& doc, const std::string& path) {
    if (doc.contains("builtin")) {
        const std::string name = require(doc, "builtin", path).get<std::string>();
        if (name == "bsc-pair")
            return BccChannel::bsc_pair(get_double(doc, "crossover1", path),
                                        get_double(doc, "crossover2", path));
        throw ValidationError(path + ": unknown bcc builtin \"" + name + "\"");
    }
    return BccChannel(get_size(doc, "x_size", path), get_size(doc, "y1_size", path),
                      get_size(doc, "y2_size", path), get_tensor(doc, "cond", path));
}

ImperfectionChannel parse_imperfection(const json& doc, const std::string& path) {
    if (doc.contains("builtin")) {
        const std::string name = require(doc, "builtin", path).get<std::string>();
        if (name == "identity")
            return ImperfectionChannel::identity(get_size(doc, "size", path));
        if (name == "bsc")
            return ImperfectionChannel::bsc(get_double(doc, "crossover", path));
        throw ValidationError(path + ": unknown imperfection builtin \"" + name +
                              "\"");
    }
    return ImperfectionChannel(get_size(doc, "q_size", path),
                               get_size(doc, "qhat_size", path),
                               get_tensor(doc, "cond", path));
}

MacChannel parse_mac(const json& doc, const std::string& path) {
    if (doc.contains("builtin")) {
        const std::string name = require(doc, "builtin", path).get<std::string>();
        if (name == "xor-erasure")
            return MacChannel::xor_erasure(get_double(doc, "erasure", path));
        if (name == "adder") return MacChannel::adder();
        throw ValidationError(path + ": unknown mac builtin \"" + name + "\"");
    }
    return MacChannel(get_size(doc, "qhat1_size", path),
                      get_size(doc, "qhat2_size", path), get_size(doc, "s_size", path),
                      get_tensor(doc, "cond", path));
}

GaussianSystem parse_gaussian_json(const json& doc, const std::string& path) {
    // Keys are matched case-insensitively; "P" and "power" are synonyms.
    const auto find = [&](std::initializer_list<const char*> names) -> const json* {
        for (const auto& [key, value] : doc.items())
            for (const char* name : names)
                if (lower(key) == name) return &value;
        return nullptr;
    };
    const auto fetch = [&](std::initializer_list<const char*> names) {
        const json* v = find(names);
        if (!v)
            throw ValidationError(path + ": missing gaussian key \"" +
                                  std::string(*names.begin()) + "\"");
        return to_double(*v, *names.begin(), path);
    };
    GaussianSystem sys;
    sys.power = fetch({"p", "power"});
    sys.n1 = fetch({"n1"});
    sys.n2 = fetch({"n2"});
    sys.n3 = fetch({"n3"});
    sys.alpha1 = fetch({"alpha1"});
    sys.alpha2 = fetch({"alpha2"});
    return sys;
}

void parse_witness(const json& doc, const std::string& path, LoadedInputs& into) {
    const json& dims_j = require(doc, "dims", path);
    if (!dims_j.is_array() || dims_j.size() != 3)
        throw ValidationError(path + ": \"dims\" must be [u_size, v_size, x_size]");
    std::vector<std::size_t> dims;
    for (const auto& d : dims_j) {
        if (!d.is_number_unsigned() || d.get<std::uint64_t>() == 0)
            throw ValidationError(path + ": \"dims\" entries must be positive");
        dims.push_back(d.get<std::size_t>());
    }
    into.p_uvx.emplace(dims, get_tensor(doc, "p_uvx", path));
    into.p_q1.emplace(get_tensor(doc, "p_q1", path));
    into.p_q2.emplace(get_tensor(doc, "p_q2", path));
}

void merge_document(const json& doc, const std::string& path, const std::string& dir,
                    LoadedInputs& into);

// A bundle block is either inline JSON or {"path": "relative.json"}.
json resolve_block(const json& block, const std::string& dir, std::string& path) {
    if (block.is_object() && block.contains("path") && block.size() == 1) {
        const std::string rel = block["path"].get<std::string>();
        const std::string full =
            (std::filesystem::path(dir) / rel).lexically_normal().string();
        path = full;
        const std::string text = slurp(full);
        return parse_document(text, full);
    }
    return block;
}

void merge_tagged(const json& block, const std::string& expected_kind,
                  const std::string& path, const std::string& dir,
                  LoadedInputs& into) {
    if (!block.is_object())
        throw ValidationError(path + ": \"" + expected_kind +
                              "\" block must be an object");
    if (block.contains("kind") &&
        block["kind"].get<std::string>() != expected_kind)
        throw ValidationError(path + ": block tagged \"" +
                              block["kind"].get<std::string>() + "\" where \"" +
                              expected_kind + "\" was expected");
    json tagged = block;
    tagged["kind"] = expected_kind;
    merge_document(tagged, path, dir, into);
}

void merge_document(const json& doc, const std::string& path, const std::string& dir,
                    LoadedInputs& into) {
    if (!doc.is_object())
        throw ValidationError(path + ": top level must be a JSON object");
    const std::string kind = require(doc, "kind", path).get<std::string>();

    if (kind == "bcc") {
        into.bcc = parse_bcc(doc, path);
    } else if (kind == "imperfection") {
        ImperfectionChannel ch = parse_imperfection(doc, path);
        int unit = 0;
        if (doc.contains("unit")) {
            if (!doc["unit"].is_number_integer())
                throw ValidationError(path + ": \"unit\" must be 1 or 2");
            unit = doc["unit"].get<int>();
            if (unit != 1 && unit != 2)
                throw ValidationError(path + ": \"unit\" must be 1 or 2");
        }
        if (unit == 1) {
            into.imp1 = std::move(ch);
        } else if (unit == 2) {
            into.imp2 = std::move(ch);
        } else if (!into.imp1) {
            into.imp1 = std::move(ch);
        } else if (!into.imp2) {
            into.imp2 = std::move(ch);
        } else {
            throw ValidationError(path +
                                  ": both imperfection slots are already filled; "
                                  "tag the block with \"unit\": 1 or 2");
        }
    } else if (kind == "mac") {
        into.mac = parse_mac(doc, path);
    } else if (kind == "gaussian") {
        into.gaussian = parse_gaussian_json(doc, path);
    } else if (kind == "witness") {
        parse_witness(doc, path, into);
    } else if (kind == "discrete-system") {
        for (const char* key : {"bcc", "imperfection1", "imperfection2", "mac"}) {
            std::string sub_path = path;
            json block = resolve_block(require(doc, key, path), dir, sub_path);
            // Referenced files resolve their own references relative to
            // themselves, not to this bundle.
            const std::string block_dir =
                sub_path == path
                    ? dir
                    : std::filesystem::path(sub_path).parent_path().string();
            const std::string expected = std::string(key).find("imperfection") == 0
                                             ? std::string("imperfection")
                                             : std::string(key);
            if (expected == "imperfection")
                block["unit"] = key == std::string("imperfection1") ? 1 : 2;
            merge_tagged(block, expected, sub_path, block_dir, into);
        }
        if (doc.contains("witness")) {
            std::string sub_path = path;
            const json block = resolve_block(doc["witness"], dir, sub_path);
            const std::string block_dir =
                sub_path == path
                    ? dir
                    : std::filesystem::path(sub_path).parent_path().string();
            merge_tagged(block, "witness", sub_path, block_dir, into);
        }
    } else {
        throw ValidationError(path + ": unknown kind \"" + kind + "\"");
    }
}

} // namespace

DiscreteSystem LoadedInputs::discrete_system() const {
    std::string missing;
    if (!bcc) missing += " bcc";
    if (!imp1) missing += " imperfection1";
    if (!imp2) missing += " imperfection2";
    if (!mac) missing += " mac";
    if (!missing.empty())
        throw UsageError("discrete system incomplete; missing:" + missing);
    DiscreteSystem sys{*bcc, *imp1, *imp2, *mac};
    sys.validate_dims();
    return sys;
}

void load_channel_file(const std::string& path, LoadedInputs& into) {
    const std::string text = slurp(path);
    const json doc = parse_document(text, path);
    const std::string dir = std::filesystem::path(path).parent_path().string();
    merge_document(doc, path, dir, into);
}

GaussianSystem parse_gaussian_inline(const std::string& kv) {
    GaussianSystem sys;
    bool seen[6] = {};
    const char* names[6] = {"p", "n1", "n2", "n3", "alpha1", "alpha2"};
    double* slots[6] = {&sys.power, &sys.n1, &sys.n2, &sys.n3, &sys.alpha1,
                        &sys.alpha2};

    std::stringstream ss(kv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw ValidationError("inline system: expected key=value, got \"" + item +
                                  "\"");
        std::string key = item.substr(0, eq);
        std::string val = item.substr(eq + 1);
        const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
        key.erase(std::remove_if(key.begin(), key.end(), is_space), key.end());
        val.erase(std::remove_if(val.begin(), val.end(), is_space), val.end());
        key = lower(key);
        if (key == "power") key = "p";

        std::size_t idx = 6;
        for (std::size_t i = 0; i < 6; ++i)
            if (key == names[i]) idx = i;
        if (idx == 6)
            throw ValidationError("inline system: unknown key \"" + key + "\"");
        if (seen[idx])
            throw ValidationError("inline system: duplicate key \"" + key + "\"");
        seen[idx] = true;

        std::size_t consumed = 0;
        double parsed = 0;
        try {
            parsed = std::stod(val, &consumed);
        } catch (const std::exception&) {
            throw ValidationError("inline system: \"" + key +
                                  "\" has a non-numeric value");
        }
        if (consumed != val.size())
            throw ValidationError("inline system: \"" + key +
                                  "\" has a non-numeric value");
        *slots[idx] = parsed;
    }
    for (std::size_t i = 0; i < 6; ++i)
        if (!seen[i])
            throw ValidationError(std::string("inline system: missing key \"") +
                                  names[i] + "\"");
    return sys;
}

void load_system(const std::string& path_or_inline, LoadedInputs& into) {
    if (std::filesystem::exists(path_or_inline)) {
        load_channel_file(path_or_inline, into);
        return;
    }
    if (path_or_inline.find('=') != std::string::npos) {
        into.gaussian = parse_gaussian_inline(path_or_inline);
        return;
    }
    throw ValidationError("system: \"" + path_or_inline +
                          "\" is neither a file nor an inline description");
}

} // namespace rfidcap
