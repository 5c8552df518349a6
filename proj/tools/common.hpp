#pragma once

#include "copoly/env.hpp"
#include "copoly/transfer.hpp"

#include "json.hpp"

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

namespace cli {

using nlohmann::json;

struct Run {
    json config;
    std::uint64_t master_seed{0};
    int threads{0};
    std::filesystem::path dir;
    std::chrono::steady_clock::time_point t0{std::chrono::steady_clock::now()};

    std::ofstream csv(const std::string& name, const std::string& header) const {
        std::ofstream f(dir / name);
        f << header << "\n";
        return f;
    }

    void write_json(const std::string& name, const json& j) const {
        std::ofstream f(dir / name);
        f << j.dump(2) << "\n";
    }

    void finish(const json& summary) const {
        json manifest;
        manifest["schema_version"] = 1;
        manifest["config"] = config;
        manifest["master_seed"] = master_seed;
        manifest["wall_time_s"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        write_json("manifest.json", manifest);
        json out = summary;
        out["run_dir"] = dir.string();
        std::cout << out.dump() << std::endl;
    }
};

inline std::string config_hash(const json& j) {
    const std::string s = j.dump();
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return std::string(buf, 8);
}

inline Run make_run(const std::string& subcommand, const json& config,
                    const std::string& out_root, std::uint64_t seed, int threads) {
    Run r;
    r.config = config;
    r.master_seed = seed;
    r.threads = threads;
    r.dir = std::filesystem::path(out_root) / (subcommand + "-" + config_hash(config));
    std::filesystem::create_directories(r.dir);
    return r;
}

[[noreturn]] inline void config_error(const std::string& msg) {
    nlohmann::json err;
    err["error"] = msg;
    std::cerr << err.dump() << std::endl;
    std::exit(2);
}

inline json load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) config_error("cannot open config file: " + path);
    json j;
    try {
        f >> j;
    } catch (const std::exception& e) {
        config_error(std::string("config parse failure: ") + e.what());
    }
    return j;
}

inline copoly::ChargeLaw law_from_json(const json& j) {
    if (!j.contains("law")) config_error("config missing \"law\"");
    const auto& l = j["law"];
    if (l.is_string()) {
        const std::string s = l.get<std::string>();
        if (s == "binary") return copoly::ChargeLaw::binary();
        if (s == "gaussian") return copoly::ChargeLaw::gaussian();
        config_error("unknown law: " + s);
    }
    if (l.is_object() && l.contains("values") && l.contains("probs")) {
        return copoly::ChargeLaw::finite(l["values"].get<std::vector<double>>(),
                                         l["probs"].get<std::vector<double>>());
    }
    config_error("law must be \"binary\", \"gaussian\" or {values, probs}");
}

inline copoly::Window window_from_json(const json& j) {
    if (!j.contains("window")) return copoly::Window::full();
    const auto& w = j["window"];
    const std::string mode = w.value("mode", "full");
    if (mode == "full") return copoly::Window::full();
    if (mode == "restricted")
        return copoly::Window::restricted(w.value("A", 3.0), w.value("B", 8.0),
                                          w.value("N0", (long)1000));
    config_error("window mode must be full or restricted");
}

// subcommand entry points
int cmd_walk(const Run&);
int cmd_transfer(const Run&);
int cmd_testloc(const Run&);
int cmd_profile_distance(const Run&);
int cmd_critical_curve(const Run&);
int cmd_lower_bound(const Run&);
int cmd_periodic(const Run&);
int cmd_cocycle(const Run&);
int cmd_llt(const Run&);

} // namespace cli
