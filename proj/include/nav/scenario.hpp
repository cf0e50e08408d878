#pragma once

// Scripted scenario replay: a JSON file names the environment, an ordered
// command list and optional obstacle injections; run_scenario executes the
// sequence and writes the artifact set (trajectory/event CSVs, metrics,
// aggregate report, SVG plot, run metadata).

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "nav/environments.hpp"
#include "nav/metrics.hpp"
#include "nav/navigator.hpp"
#include "nav/svg.hpp"

namespace nav {

struct ObstacleAction {
    std::size_t command_index = 0;  // 0-based internally; 1-based in files
    double at_time = 0.0;           // seconds into that command
    Circle circle;
    bool remove = false;
};

struct Scenario {
    std::string environment;
    std::vector<std::string> commands;
    std::vector<ObstacleAction> obstacle_script;
    long long seed = 0;

    static Scenario from_json(const std::string& text) {
        nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
        if (j.is_discarded() || !j.is_object())
            throw ConfigError("scenario: not a JSON object");
        Scenario s;
        if (!j.contains("environment") || !j["environment"].is_string())
            throw ConfigError("scenario: missing string field 'environment'");
        s.environment = j["environment"].get<std::string>();
        if (!j.contains("commands") || !j["commands"].is_array() || j["commands"].empty())
            throw ConfigError("scenario: 'commands' must be a non-empty array");
        for (const auto& c : j["commands"]) {
            if (!c.is_string()) throw ConfigError("scenario: commands must be strings");
            s.commands.push_back(c.get<std::string>());
        }
        s.seed = j.value("seed", 0LL);
        for (const auto& o : j.value("obstacles", nlohmann::json::array())) {
            ObstacleAction a;
            const long long cmd = o.value("command", 1LL);
            if (cmd < 1 || cmd > static_cast<long long>(s.commands.size()))
                throw ConfigError("scenario: obstacle 'command' index out of range");
            a.command_index = static_cast<std::size_t>(cmd - 1);
            a.at_time = o.value("at", 0.0);
            a.circle.center = {detail::require_number(o, "x"), detail::require_number(o, "y")};
            a.circle.radius = detail::require_number(o, "radius");
            a.remove = o.value("action", std::string("add")) == "remove";
            s.obstacle_script.push_back(a);
        }
        return s;
    }

    static Scenario from_file(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) throw ConfigError("scenario: cannot open '" + path + "'");
        std::ostringstream buf;
        buf << in.rdbuf();
        return from_json(buf.str());
    }
};

inline EnvironmentMap resolve_environment(const std::string& name_or_path) {
    if (name_or_path == "env_a" || name_or_path == "env_b" || name_or_path == "env_c")
        return builtin_environment(name_or_path);
    std::ifstream in(name_or_path, std::ios::binary);
    if (!in) throw ConfigError("environment: unknown name and no such file: '" +
                               name_or_path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_environment_json(buf.str());
}

namespace detail {

inline void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << content;
}

}  // namespace detail

struct ScenarioRunResult {
    std::vector<CommandOutcome> outcomes;
    std::vector<CommandRecord> records;
    int exit_code = 0;
};

// Exit codes: 0 all commands completed, 1 a command failed, 3 the provider
// was unreachable. Configuration problems throw ConfigError (exit 2 at the
// CLI boundary).
inline ScenarioRunResult run_scenario(const Scenario& scenario, WaypointProvider& provider,
                                      NavConfigs cfg, const std::string& out_dir,
                                      bool continue_on_failure = false) {
    EnvironmentMap map = resolve_environment(scenario.environment);
    cfg.planner.max_waypoints = PlannerConfig::for_environment(map.name).max_waypoints;
    Navigator navigator(std::move(map), cfg);

    std::vector<bool> fired(scenario.obstacle_script.size(), false);
    auto hook = [&](std::size_t cmd_idx, double t, EnvironmentMap& m) {
        for (std::size_t i = 0; i < scenario.obstacle_script.size(); ++i) {
            const auto& a = scenario.obstacle_script[i];
            if (fired[i] || a.command_index != cmd_idx || t + 1e-9 < a.at_time) continue;
            fired[i] = true;
            if (a.remove) {
                auto& obs = m.dynamic_obstacles;
                for (auto it = obs.begin(); it != obs.end(); ++it) {
                    if (distance(it->center, a.circle.center) < 1e-9 &&
                        std::abs(it->radius - a.circle.radius) < 1e-9) {
                        obs.erase(it);
                        break;
                    }
                }
            } else {
                m.dynamic_obstacles.push_back(a.circle);
            }
        }
    };

    ScenarioRunResult result;
    for (std::size_t i = 0; i < scenario.commands.size(); ++i) {
        const CommandParse parsed = parse_command(scenario.commands[i], navigator.map());
        Command command{scenario.commands[i],
                        parsed.ok() ? parsed.command->target_name : std::string(),
                        navigator.sim_time()};
        auto tick = [&, i](double t, EnvironmentMap& m) { hook(i, t, m); };
        result.outcomes.push_back(navigator.run_command(command, provider, tick));
        if (result.outcomes.back().terminal.phase != Phase::completed && !continue_on_failure)
            break;
    }

    for (const auto& outcome : result.outcomes) {
        result.records.push_back({outcome.command.raw_text, outcome.command.target_name,
                                  provider.descriptor().to_string(), outcome.metrics});
    }

    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    for (std::size_t i = 0; i < result.outcomes.size(); ++i) {
        detail::write_file(fs::path(out_dir) / ("trajectory_" + std::to_string(i + 1) + ".csv"),
                           trajectory_csv(result.outcomes[i].trajectory));
        detail::write_file(fs::path(out_dir) / ("events_" + std::to_string(i + 1) + ".csv"),
                           events_csv(result.outcomes[i].events));
    }
    detail::write_file(fs::path(out_dir) / "metrics.csv", metrics_csv(result.records));
    const AggregateSummary summary = aggregate(result.records);
    detail::write_file(fs::path(out_dir) / "aggregate.csv", aggregate_csv(summary));
    detail::write_file(fs::path(out_dir) / "aggregate.txt", aggregate_text(summary));
    detail::write_file(fs::path(out_dir) / "path_plot.svg",
                       render_path_plot(navigator.map(), result.outcomes));

    // Timestamp lives only here so every other artifact is reproducible.
    const std::time_t now = std::time(nullptr);
    char stamp[32] = "unknown";
    if (std::tm tm_buf{}; gmtime_r(&now, &tm_buf) != nullptr)
        std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", &tm_buf);
    nlohmann::json meta{
        {"timestamp", stamp},
        {"environment", scenario.environment},
        {"seed", scenario.seed},
        {"provider", provider.descriptor().to_string()},
        {"commands", scenario.commands.size()},
    };
    detail::write_file(fs::path(out_dir) / "run_meta.json", meta.dump(2) + "\n");

    bool any_failed = false;
    bool provider_down = false;
    for (const auto& o : result.outcomes) {
        if (o.terminal.phase != Phase::completed) any_failed = true;
        if (o.terminal.reason == FailReason::provider_unavailable) provider_down = true;
    }
    if (result.outcomes.size() != scenario.commands.size()) any_failed = true;
    result.exit_code = provider_down ? 3 : (any_failed ? 1 : 0);
    return result;
}

}  // namespace nav
