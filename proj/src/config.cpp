#include "muskat/config.hpp"

#include "muskat/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace muskat {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
    if (!j.is_object()) throw InvalidArgument(where + ": expected an object");
    for (const auto& [key, value] : j.items())
        if (!allowed.count(key)) throw InvalidArgument(where + ": unknown key '" + key + "'");
}

double get_number(const json& j, const char* key, double fallback, const std::string& where) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_number()) throw InvalidArgument(where + "." + key + ": expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw InvalidArgument(where + "." + key + ": must be finite");
    return x;
}

int get_int(const json& j, const char* key, int fallback, const std::string& where) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_number_integer()) throw InvalidArgument(where + "." + key + ": expected an integer");
    return v.get<int>();
}

bool get_bool(const json& j, const char* key, bool fallback, const std::string& where) {
    if (!j.contains(key)) return fallback;
    const auto& v = j.at(key);
    if (!v.is_boolean()) throw InvalidArgument(where + "." + key + ": expected true or false");
    return v.get<bool>();
}

FluidParams parse_params(const json& j) {
    reject_unknown(j, {"k", "mu_minus", "mu_plus", "rho_minus", "rho_plus", "g", "gamma_f", "gamma_h", "d"}, "params");
    FluidParams p;
    p.k = get_number(j, "k", p.k, "params");
    p.mu_minus = get_number(j, "mu_minus", p.mu_minus, "params");
    p.mu_plus = get_number(j, "mu_plus", p.mu_plus, "params");
    p.rho_minus = get_number(j, "rho_minus", p.rho_minus, "params");
    p.rho_plus = get_number(j, "rho_plus", p.rho_plus, "params");
    p.g = get_number(j, "g", p.g, "params");
    p.gamma_f = get_number(j, "gamma_f", p.gamma_f, "params");
    p.gamma_h = get_number(j, "gamma_h", p.gamma_h, "params");
    p.d = get_number(j, "d", p.d, "params");
    return p;
}

FunctionSpec parse_function(const json& j, const FunctionSpec& fallback, const std::string& where) {
    if (j.is_number()) {
        const double c = j.get<double>();
        if (!std::isfinite(c)) throw InvalidArgument(where + ": must be finite");
        return {c, {}};
    }
    reject_unknown(j, {"constant", "modes"}, where);
    FunctionSpec s = fallback;
    s.constant = get_number(j, "constant", fallback.constant, where);
    if (j.contains("modes")) {
        const auto& modes = j.at("modes");
        if (!modes.is_array()) throw InvalidArgument(where + ".modes: expected an array");
        s.modes.clear();
        for (const auto& m : modes) {
            const std::string w = where + ".modes[]";
            reject_unknown(m, {"m", "cos", "sin"}, w);
            if (!m.contains("m")) throw InvalidArgument(w + ": missing 'm'");
            s.modes.push_back({get_int(m, "m", 1, w), get_number(m, "cos", 0.0, w), get_number(m, "sin", 0.0, w)});
        }
    }
    return s;
}

json function_to_json(const FunctionSpec& s) {
    json modes = json::array();
    for (const auto& t : s.modes) modes.push_back({{"m", t.m}, {"cos", t.cos_amp}, {"sin", t.sin_amp}});
    return {{"constant", s.constant}, {"modes", modes}};
}

}  // namespace

SimConfig parse_config(const json& j) {
    reject_unknown(j,
                   {"schema", "n_x", "n_y", "params", "f", "h", "b", "t_end", "rtol", "atol", "dt_max", "cfl_st",
                    "surface_tension", "stop_on_rt", "output_dir", "snapshot_stride"},
                   "config");
    if (!j.contains("schema")) throw InvalidArgument("config: missing 'schema'");
    if (get_int(j, "schema", 0, "config") != kConfigSchema)
        throw InvalidArgument("config: unsupported schema version (expected 1)");

    SimConfig c;
    c.n_x = get_int(j, "n_x", c.n_x, "config");
    c.n_y = get_int(j, "n_y", c.n_y, "config");
    if (j.contains("params")) c.params = parse_params(j.at("params"));
    if (j.contains("f")) c.f = parse_function(j.at("f"), c.f, "f");
    if (j.contains("h")) c.h = parse_function(j.at("h"), c.h, "h");
    if (j.contains("b")) c.b = parse_function(j.at("b"), c.b, "b");
    c.t_end = get_number(j, "t_end", c.t_end, "config");
    c.rtol = get_number(j, "rtol", c.rtol, "config");
    c.atol = get_number(j, "atol", c.atol, "config");
    c.dt_max = get_number(j, "dt_max", c.dt_max, "config");
    c.cfl_st = get_number(j, "cfl_st", c.cfl_st, "config");
    c.surface_tension = get_bool(j, "surface_tension", c.surface_tension, "config");
    c.stop_on_rt = get_bool(j, "stop_on_rt", c.stop_on_rt, "config");
    if (j.contains("output_dir")) {
        if (!j.at("output_dir").is_string()) throw InvalidArgument("config.output_dir: expected a string");
        c.output_dir = j.at("output_dir").get<std::string>();
    }
    c.snapshot_stride = get_int(j, "snapshot_stride", c.snapshot_stride, "config");
    c.validate();
    return c;
}

SimConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open config file " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InvalidArgument(std::string("malformed JSON: ") + e.what());
    }
    return parse_config(j);
}

json params_to_json(const FluidParams& p) {
    return {{"k", p.k},     {"mu_minus", p.mu_minus}, {"mu_plus", p.mu_plus}, {"rho_minus", p.rho_minus},
            {"rho_plus", p.rho_plus}, {"g", p.g}, {"gamma_f", p.gamma_f}, {"gamma_h", p.gamma_h}, {"d", p.d}};
}

json config_to_json(const SimConfig& c) {
    return {{"schema", kConfigSchema},
            {"n_x", c.n_x},
            {"n_y", c.n_y},
            {"params", params_to_json(c.params)},
            {"f", function_to_json(c.f)},
            {"h", function_to_json(c.h)},
            {"b", function_to_json(c.b)},
            {"t_end", c.t_end},
            {"rtol", c.rtol},
            {"atol", c.atol},
            {"dt_max", c.dt_max},
            {"cfl_st", c.cfl_st},
            {"surface_tension", c.surface_tension},
            {"stop_on_rt", c.stop_on_rt},
            {"output_dir", c.output_dir},
            {"snapshot_stride", c.snapshot_stride}};
}

json rt_to_json(const RTReport& r) {
    return {{"margin_f", r.margin_f}, {"margin_h", r.margin_h}, {"satisfied", r.satisfied}};
}

namespace {

std::string snapshot_name(std::size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "snapshot_%06zu.csv", index);
    return buf;
}

bool stored(std::size_t i, const Trajectory& traj, int stride) {
    return i % static_cast<std::size_t>(stride) == 0 || i + 1 == traj.points.size();
}

}  // namespace

json trajectory_metadata(const Trajectory& traj, const SimConfig& config) {
    json points = json::array();
    for (std::size_t i = 0; i < traj.points.size(); ++i) {
        const auto& p = traj.points[i];
        json entry = {{"t", p.t}, {"dt_used", p.dt_used}, {"rt", rt_to_json(p.rt)}};
        entry["snapshot"] = stored(i, traj, config.snapshot_stride) ? json(snapshot_name(i)) : json(nullptr);
        points.push_back(entry);
    }
    return {{"schema", kConfigSchema},
            {"termination", to_string(traj.reason)},
            {"message", traj.message},
            {"rejected_steps", traj.rejected_steps},
            {"config", config_to_json(config)},
            {"points", points}};
}

void write_trajectory(const Trajectory& traj, const SimConfig& config, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    for (std::size_t i = 0; i < traj.points.size(); ++i) {
        if (!stored(i, traj, config.snapshot_stride)) continue;
        const auto& p = traj.points[i];
        std::ofstream out(out_dir / snapshot_name(i));
        out.precision(17);
        out << "x,f,h\n";
        for (int k = 0; k < p.f.size(); ++k) out << p.f.grid().node(k) << ',' << p.f[k] << ',' << p.h[k] << '\n';
        if (!out) throw std::runtime_error("failed to write snapshot in " + out_dir.string());
    }
    std::ofstream meta(out_dir / "metadata.json");
    meta << trajectory_metadata(traj, config).dump(2) << '\n';
    if (!meta) throw std::runtime_error("failed to write metadata in " + out_dir.string());
}

}  // namespace muskat
