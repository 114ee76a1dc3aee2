#include "bittp/remote.hpp"

#include <chrono>
#include <cstdlib>

#include <httplib.h>

namespace bittp {

namespace {

struct Url {
    std::string origin;
    std::string path;
};

Url split_url(const std::string& endpoint) {
    const std::string scheme = "http://";
    if (endpoint.rfind("https://", 0) == 0) {
        throw TransportError("https endpoints need TLS support, which this build does not include");
    }
    if (endpoint.rfind(scheme, 0) != 0) {
        throw TransportError("endpoint must start with http://: '" + endpoint + "'");
    }
    const auto slash = endpoint.find('/', scheme.size());
    if (slash == std::string::npos) {
        return {endpoint, "/"};
    }
    return {endpoint.substr(0, slash), endpoint.substr(slash)};
}

} // namespace

SampleSet sampleset_from_wire(const CqmModel& model, const nlohmann::json& response) {
    if (!response.is_object() || !response.contains("samples") || !response["samples"].is_array()) {
        throw MalformedResponseError("response has no 'samples' array");
    }
    std::vector<Sample> samples;
    std::size_t index = 0;
    for (const auto& entry : response["samples"]) {
        const std::string where = "sample " + std::to_string(index++);
        if (!entry.is_object() || !entry.contains("assignment") || !entry["assignment"].is_array()) {
            throw MalformedResponseError(where + " has no 'assignment' array");
        }
        const auto& values = entry["assignment"];
        if (values.size() != model.num_vars()) {
            throw MalformedResponseError(where + " assigns " + std::to_string(values.size()) + " variables, model has " +
                                         std::to_string(model.num_vars()));
        }
        Sample s;
        s.assignment.reserve(values.size());
        for (const auto& v : values) {
            if (!v.is_number_integer() || (v.get<long long>() != 0 && v.get<long long>() != 1)) {
                throw MalformedResponseError(where + " has a non-binary value");
            }
            s.assignment.push_back(static_cast<std::uint8_t>(v.get<long long>()));
        }
        s.objective = model.objective_value(s.assignment);
        s.energy = s.objective;
        s.feasible = model.is_feasible(s.assignment);
        samples.push_back(std::move(s));
    }
    SampleSet out(std::move(samples));
    out.info.backend = "remote";
    out.info.rounds = 1;
    out.info.lowered_vars = model.num_vars();
    return out;
}

SampleSet remote_sample(const CqmModel& model, const RemoteConfig& config) {
    if (config.endpoint.empty()) {
        throw TransportError("no remote endpoint configured");
    }
    const auto url = split_url(config.endpoint);
    httplib::Client client(url.origin);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(config.timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(config.timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());

    std::string token = config.token;
    if (token.empty()) {
        if (const char* env = std::getenv(kRemoteTokenEnv)) {
            token = env;
        }
    }
    httplib::Headers headers;
    if (!token.empty()) {
        headers.emplace("Authorization", "Bearer " + token);
    }

    const auto body = cqm_to_wire(model).dump();
    const auto start = std::chrono::steady_clock::now();
    auto result = client.Post(url.path, headers, body, "application/json");
    const auto elapsed = std::chrono::steady_clock::now() - start;
    if (!result) {
        const auto err = result.error();
        if (err == httplib::Error::ConnectionTimeout ||
            (err == httplib::Error::Read && elapsed >= config.timeout * 9 / 10)) {
            throw TimeoutError("remote sampler did not answer within " + std::to_string(config.timeout.count()) + " ms");
        }
        throw TransportError("request to " + config.endpoint + " failed: " + httplib::to_string(err));
    }
    if (result->status != 200) {
        throw TransportError("remote sampler answered HTTP " + std::to_string(result->status));
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(result->body);
    } catch (const nlohmann::json::parse_error& e) {
        throw MalformedResponseError(std::string("response is not JSON: ") + e.what());
    }
    auto out = sampleset_from_wire(model, doc);
    out.info.seconds = std::chrono::duration<double>(elapsed).count();
    return out;
}

} // namespace bittp
