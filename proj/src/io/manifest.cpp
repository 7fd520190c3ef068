#include "wtfb/io.hpp"

#include <cstdlib>
#include <ctime>

#include <json.hpp>

namespace wtfb::io {

const char* const kToolVersion = "wtfb 0.1.0";

namespace {

std::string iso8601_utc_now() {
    std::time_t t;
    if (const char* sde = std::getenv("SOURCE_DATE_EPOCH")) {
        t = static_cast<std::time_t>(std::strtoll(sde, nullptr, 10));
    } else {
        t = std::time(nullptr);
    }
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

RunManifest RunManifest::make(std::string command, std::map<std::string, std::string> parameters,
                              std::uint64_t seed) {
    RunManifest m;
    m.command = std::move(command);
    m.parameters = std::move(parameters);
    m.seed = seed;
    m.tool_version = kToolVersion;
    m.timestamp = iso8601_utc_now();
    return m;
}

std::string RunManifest::to_json() const {
    nlohmann::json j;
    j["command"] = command;
    j["parameters"] = parameters;
    j["seed"] = seed;
    j["tool_version"] = tool_version;
    j["timestamp"] = timestamp;
    return j.dump(2);
}

std::vector<std::string> RunManifest::comment_lines() const {
    std::vector<std::string> lines;
    lines.push_back("command: " + command);
    for (const auto& [k, v] : parameters) lines.push_back("param " + k + ": " + v);
    lines.push_back("seed: " + std::to_string(seed));
    lines.push_back("tool: " + tool_version);
    lines.push_back("timestamp: " + timestamp);
    return lines;
}

} // namespace wtfb::io
