#include "nkze/config.hpp"

#include "nkze/error.hpp"
#include "nkze/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace nkze {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::size_t parse_count(std::string_view key, std::string_view value) {
    std::size_t out = 0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
    if (value.empty() || res.ec != std::errc{} || res.ptr != value.data() + value.size())
        throw ConfigError("key '" + std::string(key) + "': expected a non-negative integer, got '" +
                          std::string(value) + "'");
    return out;
}

std::uint64_t parse_u64(std::string_view key, std::string_view value) {
    std::uint64_t out = 0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
    if (value.empty() || res.ec != std::errc{} || res.ptr != value.data() + value.size())
        throw ConfigError("key '" + std::string(key) + "': expected an unsigned 64-bit integer, got '" +
                          std::string(value) + "'");
    return out;
}

double parse_real(std::string_view key, std::string_view value) {
    double out = 0.0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), out);
    if (value.empty() || res.ec != std::errc{} || res.ptr != value.data() + value.size())
        throw ConfigError("key '" + std::string(key) + "': expected a number, got '" + std::string(value) + "'");
    return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw ConfigError("key '" + std::string(key) + "': expected true/false, got '" + std::string(value) + "'");
}

void validate_cell(const Cell& cell) {
    try {
        cell.config.validate();
    } catch (const ConfigError& ex) {
        throw ConfigError("cell '" + cell.id + "': " + ex.what());
    }
}

std::pair<std::string_view, std::string_view> split_setting(std::string_view line) {
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("expected key = value, got '" + std::string(line) + "'");
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError("missing key in '" + std::string(line) + "'");
    return {key, trim(line.substr(eq + 1))};
}

void apply_overrides(ExperimentSpec& spec, std::span<const std::string> overrides) {
    for (const auto& ov : overrides) {
        const auto [key, value] = split_setting(ov);
        for (auto& cell : spec.cells) apply_setting(cell.config, key, value);
    }
    for (const auto& cell : spec.cells) validate_cell(cell);
}

std::string real_label(double v) { return io::format_double(v); }

} // namespace

void apply_setting(SimulationConfig& config, std::string_view key, std::string_view value) {
    if (key == "model") config.model = parse_model(value);
    else if (key == "N") config.landscape.N = parse_count(key, value);
    else if (key == "K") config.landscape.K = parse_count(key, value);
    else if (key == "Z") config.landscape.Z = parse_count(key, value);
    else if (key == "E") config.landscape.E = parse_count(key, value);
    else if (key == "M") config.M = parse_count(key, value);
    else if (key == "beta") config.beta = parse_real(key, value);
    else if (key == "alpha") config.alpha = parse_real(key, value);
    else if (key == "theta") config.theta = parse_count(key, value);
    else if (key == "epsilon0") config.epsilon0 = parse_real(key, value);
    else if (key == "gamma") config.gamma = parse_real(key, value);
    else if (key == "omega_max") config.omega_max = parse_count(key, value);
    else if (key == "iterations") config.iterations = parse_count(key, value);
    else if (key == "runs") config.runs = parse_count(key, value);
    else if (key == "seed") config.master_seed = parse_u64(key, value);
    else if (key == "groups") config.compositions = parse_compositions(std::string(value));
    else if (key == "balanced") config.balanced = parse_bool(key, value);
    else if (key == "mutation") config.mutation = parse_mutation_rule(value);
    else throw ConfigError("unknown key '" + std::string(key) + "'");
}

ExperimentSpec parse_config_text(std::string_view text, std::span<const std::string> overrides) {
    SimulationConfig base;
    std::vector<std::pair<std::string, std::vector<std::string>>> sections;

    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        auto line = trim(raw);
        if (line.empty() || line.front() == '#' || line.front() == ';') continue;
        try {
            if (line.front() == '[') {
                if (line.back() != ']' || line.size() < 3) throw ConfigError("malformed section header");
                sections.emplace_back(std::string(trim(line.substr(1, line.size() - 2))), std::vector<std::string>{});
                continue;
            }
            const auto [key, value] = split_setting(line);
            if (sections.empty()) apply_setting(base, key, value);
            else sections.back().second.push_back(std::string(key) + "=" + std::string(value));
        } catch (const ConfigError& ex) {
            throw ConfigError("line " + std::to_string(line_no) + ": " + ex.what());
        }
    }

    ExperimentSpec spec;
    if (sections.empty()) {
        spec.cells.push_back({"default", base});
    } else {
        for (const auto& [name, settings] : sections) {
            Cell cell{name, base};
            for (const auto& s : settings) {
                const auto [key, value] = split_setting(s);
                apply_setting(cell.config, key, value);
            }
            spec.cells.push_back(std::move(cell));
        }
    }
    apply_overrides(spec, overrides);
    return spec;
}

ExperimentSpec parse_config(const std::filesystem::path& path, std::span<const std::string> overrides) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), overrides);
}

std::vector<double> preset_alpha_sweep() { return {0.1, 0.2, 0.4, 0.6, 0.8, 0.9}; }

ExperimentSpec preset(std::string_view name, std::span<const std::string> overrides) {
    ExperimentSpec spec;
    auto cell = [](Model model, std::size_t K, std::size_t E, std::string id) {
        Cell c{std::move(id), {}};
        c.config.model = model;
        c.config.landscape.K = K;
        c.config.landscape.E = E;
        return c;
    };
    auto ke = [](std::size_t K, std::size_t E) { return "K" + std::to_string(K) + "_E" + std::to_string(E); };

    if (name == "fig1") {
        for (auto [K, E] : {std::pair<std::size_t, std::size_t>{0, 0}, {5, 6}, {11, 12}})
            for (auto model : {Model::Standard, Model::StealthL}) spec.cells.push_back(cell(model, K, E, ke(K, E)));
    } else if (name == "fig2" || name == "fig3") {
        const bool vary_k = name == "fig2";
        for (std::size_t level : {std::size_t{0}, vary_k ? std::size_t{5} : std::size_t{6}, vary_k ? std::size_t{11} : std::size_t{12}}) {
            const std::size_t K = vary_k ? level : 11;
            const std::size_t E = vary_k ? 12 : level;
            for (double alpha : preset_alpha_sweep()) {
                auto c = cell(Model::StealthL, K, E, ke(K, E) + "_a" + real_label(alpha));
                c.config.alpha = alpha;
                spec.cells.push_back(std::move(c));
            }
        }
    } else if (name == "fig4") {
        spec.cells.push_back(cell(Model::StructC, 0, 0, ke(0, 0)));
    } else if (name == "fig5") {
        spec.cells.push_back(cell(Model::StructC, 11, 12, ke(11, 12)));
    } else {
        throw ConfigError("unknown preset '" + std::string(name) + "' (expected fig1..fig5)");
    }
    apply_overrides(spec, overrides);
    return spec;
}

} // namespace nkze
