// navsim: command-line harness for the corridor navigation simulator.
//
//   navsim run  --scenario <file> [--provider oracle|llm|stub] [...]
//   navsim repl --env <name|file> [--provider ...]
//
// Exit codes: 0 success, 1 command failure, 2 configuration error,
// 3 provider unreachable.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nav/environments.hpp"
#include "nav/navigator.hpp"
#include "nav/providers.hpp"
#include "nav/scenario.hpp"

namespace {

struct ProviderOptions {
    std::string provider = "oracle";
    std::string llm_url = "http://localhost:11434";
    std::string model = "llama3.1";
    double timeout_s = 60.0;
    std::string stub_script_file;
};

void add_provider_flags(CLI::App* cmd, ProviderOptions& opts) {
    cmd->add_option("--provider", opts.provider, "Waypoint provider")
        ->check(CLI::IsMember({"oracle", "llm", "stub"}))
        ->capture_default_str();
    cmd->add_option("--llm-url", opts.llm_url, "Chat-completion endpoint base URL")
        ->envname("NAV_LLM_URL")
        ->capture_default_str();
    cmd->add_option("--model", opts.model, "LLM model name")
        ->envname("NAV_LLM_MODEL")
        ->capture_default_str();
    cmd->add_option("--llm-timeout", opts.timeout_s, "LLM request timeout in seconds")
        ->capture_default_str();
    cmd->add_option("--stub-script", opts.stub_script_file,
                    "JSON array of canned provider replies (provider=stub)");
}

std::unique_ptr<nav::WaypointProvider> make_provider(const ProviderOptions& opts) {
    if (opts.provider == "oracle") return std::make_unique<nav::OracleProvider>();
    if (opts.provider == "llm") {
        nav::LlmEndpointConfig cfg;
        cfg.base_url = opts.llm_url;
        cfg.model_name = opts.model;
        cfg.request_timeout_s = opts.timeout_s;
        return std::make_unique<nav::LlmProvider>(cfg);
    }
    if (opts.stub_script_file.empty())
        throw nav::ConfigError("--provider stub requires --stub-script");
    std::ifstream in(opts.stub_script_file, std::ios::binary);
    if (!in) throw nav::ConfigError("cannot open stub script '" + opts.stub_script_file + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    nlohmann::json j = nlohmann::json::parse(buf.str(), nullptr, false);
    if (j.is_discarded() || !j.is_array())
        throw nav::ConfigError("stub script must be a JSON array of strings");
    std::vector<std::string> script;
    for (const auto& e : j) {
        if (!e.is_string()) throw nav::ConfigError("stub script entries must be strings");
        script.push_back(e.get<std::string>());
    }
    return std::make_unique<nav::StubProvider>(std::move(script));
}

void print_outcome(std::size_t index, const nav::CommandOutcome& outcome) {
    const auto& m = outcome.metrics;
    std::string state = nav::to_string(outcome.terminal.phase);
    if (outcome.terminal.phase == nav::Phase::failed)
        state += std::string("(") + nav::to_string(outcome.terminal.reason) + ")";
    std::printf("[%zu] %-24s %s\n", index, state.c_str(), outcome.command.raw_text.c_str());
    std::printf("    planning %.3f s | execution %.2f s | path %.2f m | "
                "WGSR %s | replans %d | collision events %d\n",
                m.planning_time_s, m.execution_time_s, m.path_length_m,
                m.wgsr_pct() ? (nav::fmt_fixed(*m.wgsr_pct(), 2) + "%").c_str() : "n/a",
                m.replan_attempts, m.collision_events);
}

int run_scenario_cmd(const std::string& scenario_file, const ProviderOptions& popts,
                     const std::string& out_dir, long long seed_override, bool has_seed,
                     bool continue_on_failure, const std::string& prompts_dir) {
    nav::Scenario scenario = nav::Scenario::from_file(scenario_file);
    if (has_seed) scenario.seed = seed_override;
    auto provider = make_provider(popts);
    nav::NavConfigs cfg;
    if (!prompts_dir.empty())
        cfg.planner.templates = nav::PromptTemplates::from_files(prompts_dir);
    const nav::ScenarioRunResult result =
        nav::run_scenario(scenario, *provider, cfg, out_dir, continue_on_failure);
    for (std::size_t i = 0; i < result.outcomes.size(); ++i)
        print_outcome(i + 1, result.outcomes[i]);
    std::printf("artifacts written to %s\n", out_dir.c_str());
    return result.exit_code;
}

int repl_cmd(const std::string& env_name, const ProviderOptions& popts,
             const std::string& prompts_dir) {
    nav::EnvironmentMap map = nav::resolve_environment(env_name);
    nav::NavConfigs cfg = nav::NavConfigs::for_environment(map.name);
    if (!prompts_dir.empty())
        cfg.planner.templates = nav::PromptTemplates::from_files(prompts_dir);
    auto provider = make_provider(popts);
    nav::Navigator navigator(std::move(map), cfg);

    std::printf("environment %s, provider %s. Commands: natural language, "
                "'inject <x> <y> <radius>', 'quit'.\n",
                navigator.map().name.c_str(), provider->descriptor().to_string().c_str());
    std::string line;
    while (true) {
        std::printf("> ");
        std::fflush(stdout);
        if (!std::getline(std::cin, line)) break;
        if (line.empty()) continue;
        if (line == "quit" || line == "exit") break;

        std::istringstream words(line);
        std::string head;
        words >> head;
        if (head == "inject") {
            double x, y, r;
            if (!(words >> x >> y >> r) || r <= 0.0) {
                std::printf("usage: inject <x> <y> <radius>\n");
                continue;
            }
            navigator.map().dynamic_obstacles.push_back({{x, y}, r});
            std::printf("obstacle added at (%g, %g) r=%g\n", x, y, r);
            continue;
        }

        const nav::CommandParse parsed = nav::parse_command(line, navigator.map());
        if (!parsed.ok()) {
            if (parsed.error == nav::CommandError::ambiguous_target) {
                std::printf("ambiguous target; candidates:");
                for (const auto& c : parsed.candidates) std::printf(" '%s'", c.c_str());
                std::printf("\n");
            } else {
                std::printf("unknown target in '%s'\n", line.c_str());
            }
            continue;
        }
        nav::Command command = *parsed.command;
        command.issued_at = navigator.sim_time();
        const nav::CommandOutcome outcome = navigator.run_command(command, *provider);
        print_outcome(1, outcome);
        if (outcome.metrics.replan_attempts > 0)
            std::printf("    replanning was triggered %d time(s)\n",
                        outcome.metrics.replan_attempts);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Corridor navigation simulator with LLM/oracle waypoint planning"};
    app.require_subcommand(1);

    ProviderOptions run_popts;
    std::string scenario_file;
    std::string out_dir = "out";
    std::string run_prompts_dir;
    long long seed = 0;
    bool continue_on_failure = false;
    auto* run = app.add_subcommand("run", "Replay a scenario file and write artifacts");
    run->add_option("--scenario", scenario_file, "Scenario JSON file")->required();
    run->add_option("--out-dir", out_dir, "Artifact directory")->capture_default_str();
    auto* seed_opt = run->add_option("--seed", seed, "Override the scenario seed");
    run->add_flag("--continue-on-failure", continue_on_failure,
                  "Keep running remaining commands after a failure");
    run->add_option("--prompts-dir", run_prompts_dir,
                    "Directory with system_prompt.txt / user_prompt.txt");
    add_provider_flags(run, run_popts);

    ProviderOptions repl_popts;
    std::string env_name;
    std::string repl_prompts_dir;
    auto* repl = app.add_subcommand("repl", "Interactive command session");
    repl->add_option("--env", env_name, "Built-in environment name or map file")->required();
    repl->add_option("--prompts-dir", repl_prompts_dir,
                     "Directory with system_prompt.txt / user_prompt.txt");
    add_provider_flags(repl, repl_popts);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return run_scenario_cmd(scenario_file, run_popts, out_dir, seed,
                                    seed_opt->count() > 0, continue_on_failure,
                                    run_prompts_dir);
        return repl_cmd(env_name, repl_popts, repl_prompts_dir);
    } catch (const nav::ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
