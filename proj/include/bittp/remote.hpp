#pragma once

#include <chrono>
#include <string>

#include <json.hpp>

#include "bittp/cqm.hpp"
#include "bittp/error.hpp"

namespace bittp {

/// Environment variable holding the bearer token sent to remote endpoints.
inline constexpr const char* kRemoteTokenEnv = "BITTP_REMOTE_TOKEN";

/// Failures talking to a remote sampler. Submissions carry no server-side
/// state, so any of them can be retried with the same request.
class RemoteError : public Error {
public:
    using Error::Error;
};

class TransportError : public RemoteError {
public:
    using RemoteError::RemoteError;
};

class MalformedResponseError : public RemoteError {
public:
    using RemoteError::RemoteError;
};

class TimeoutError : public RemoteError {
public:
    using RemoteError::RemoteError;
};

struct RemoteConfig {
    /// http://host[:port]/path
    std::string endpoint;
    std::chrono::milliseconds timeout{30000};
    /// Empty means read kRemoteTokenEnv at call time.
    std::string token;
};

/// POST the model in wire format and convert the reply.
SampleSet remote_sample(const CqmModel& model, const RemoteConfig& config);

/// Validate a response document; energies and feasibility are recomputed from the model.
SampleSet sampleset_from_wire(const CqmModel& model, const nlohmann::json& response);

} // namespace bittp
