#pragma once

// WaypointProvider implementations: the local geometric oracle, a remote
// chat-completion-style LLM client, and a scriptable stub for tests.

#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "nav/planning.hpp"

namespace nav {

// Wraps oracle_plan behind the text interface: generate() serializes exactly
// the oracle's waypoint list as the wire-format JSON array.
class OracleProvider : public WaypointProvider {
  public:
    GenerateResult generate(const PromptPair&, double) override {
        GenerateResult out;
        if (!request_.map) {
            out.error = GenerateResult::Error::generation;
            out.message = "oracle provider was not bound to a plan request";
            return out;
        }
        const OraclePlanResult plan = oracle_plan(*request_.map, request_.pose,
                                                  request_.target, request_.cfg,
                                                  request_.avoid, request_.clearance);
        if (!plan.ok) {
            out.error = GenerateResult::Error::generation;
            out.message = plan.error;
            return out;
        }
        out.text = waypoints_to_json(plan.points);
        return out;
    }

    ProviderDescriptor descriptor() const override { return {ProviderKind::oracle, ""}; }
    bool deterministic() const override { return true; }
    bool repeats_output() const override { return true; }
    void bind(const PlanRequest& request) override { request_ = request; }

  private:
    PlanRequest request_;
};

// Returns canned texts in order; exhaustion repeats the last entry.
class StubProvider : public WaypointProvider {
  public:
    explicit StubProvider(std::vector<std::string> script)
        : script_(std::move(script)) {
        if (script_.empty())
            throw std::invalid_argument("StubProvider: script must not be empty");
    }

    GenerateResult generate(const PromptPair& prompts, double) override {
        history_.push_back(prompts);
        GenerateResult out;
        out.text = script_[next_];
        if (next_ + 1 < script_.size()) ++next_;
        return out;
    }

    ProviderDescriptor descriptor() const override { return {ProviderKind::stub, ""}; }
    bool deterministic() const override { return true; }

    // Prompts seen so far; lets tests inspect retry feedback.
    const std::vector<PromptPair>& history() const { return history_; }

  private:
    std::vector<std::string> script_;
    std::size_t next_ = 0;
    std::vector<PromptPair> history_;
};

struct LlmEndpointConfig {
    std::string base_url = "http://localhost:11434";
    std::string model_name = "llama3.1";
    double temperature = 0.0;
    double request_timeout_s = 60.0;
};

// One HTTP POST to {base_url}/api/chat with
//   {"model": ..., "messages": [{"role":"system",...},{"role":"user",...}],
//    "stream": false, "options": {"temperature": ...}}
// The assistant text is read from message.content (Ollama shape) or
// choices[0].message.content (OpenAI shape).
inline GenerateResult llm_generate(const LlmEndpointConfig& cfg, const PromptPair& prompts) {
    GenerateResult out;
    httplib::Client client(cfg.base_url);
    const auto timeout_s = static_cast<time_t>(cfg.request_timeout_s);
    const auto timeout_us =
        static_cast<time_t>((cfg.request_timeout_s - static_cast<double>(timeout_s)) * 1e6);
    client.set_connection_timeout(timeout_s, timeout_us);
    client.set_read_timeout(timeout_s, timeout_us);
    client.set_write_timeout(timeout_s, timeout_us);

    nlohmann::json body{
        {"model", cfg.model_name},
        {"messages",
         {{{"role", "system"}, {"content", prompts.system_prompt}},
          {{"role", "user"}, {"content", prompts.user_prompt}}}},
        {"stream", false},
        {"options", {{"temperature", cfg.temperature}}},
    };
    const httplib::Result res = client.Post("/api/chat", body.dump(), "application/json");
    if (!res) {
        out.error = GenerateResult::Error::unavailable;
        out.message = "LLM endpoint unreachable: " + httplib::to_string(res.error());
        return out;
    }
    if (res->status < 200 || res->status >= 300) {
        out.error = GenerateResult::Error::http;
        out.status = res->status;
        out.message = res->body;
        return out;
    }
    nlohmann::json j = nlohmann::json::parse(res->body, nullptr, false);
    if (!j.is_discarded()) {
        if (j.contains("message") && j["message"].contains("content") &&
            j["message"]["content"].is_string()) {
            out.text = j["message"]["content"].get<std::string>();
            return out;
        }
        if (j.contains("choices") && j["choices"].is_array() && !j["choices"].empty() &&
            j["choices"][0].contains("message") &&
            j["choices"][0]["message"].value("content", nlohmann::json()).is_string()) {
            out.text = j["choices"][0]["message"]["content"].get<std::string>();
            return out;
        }
    }
    // Last resort: treat the raw body as the assistant text.
    out.text = res->body;
    return out;
}

class LlmProvider : public WaypointProvider {
  public:
    explicit LlmProvider(LlmEndpointConfig cfg) : cfg_(std::move(cfg)) {}

    GenerateResult generate(const PromptPair& prompts, double timeout_s) override {
        LlmEndpointConfig cfg = cfg_;
        if (timeout_s > 0.0) cfg.request_timeout_s = std::min(cfg.request_timeout_s, timeout_s);
        return llm_generate(cfg, prompts);
    }

    ProviderDescriptor descriptor() const override {
        return {ProviderKind::llm, cfg_.model_name};
    }

    const LlmEndpointConfig& config() const { return cfg_; }

  private:
    LlmEndpointConfig cfg_;
};

}  // namespace nav
