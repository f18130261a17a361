#pragma once

#include <nlohmann/json.hpp>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace mlie::cli {

enum ExitCode { ok = 0, usage_error = 1, check_failure = 2 };

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Report printed on standard output and the exit code of one command.
struct Outcome {
    nlohmann::json report;
    int code = ok;
};

/// Named reports of earlier experiment steps, referenced as "@id".
using Artifacts = std::map<std::string, nlohmann::json>;

/// Parse and run one command line (without the program name). Throws
/// UsageError for bad flags or inputs.
Outcome execute(const std::vector<std::string>& args, const Artifacts& artifacts = {});

/// Declarative experiment: {"name", "steps": [{"id", "command": [...]}],
/// "expectations": [{"path": "id.key.0", "equals": v} or {"path", "approx": x, "tol": t}]}.
Outcome run_experiment(const nlohmann::json& experiment, std::uint64_t seed, const std::string& field);

/// Closest candidate by edit distance, empty when nothing is close.
std::string suggest(const std::string& word, const std::vector<std::string>& candidates);

int run(int argc, char** argv);

}
