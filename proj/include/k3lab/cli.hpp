#pragma once

// Verification suites over every module, their JSON and text reports, and
// the command-line entry point behind the k3lab tool.

#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "k3lab/transcription.hpp"

namespace k3lab::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kUsage = 2, kDomain = 3 };

struct CheckRecord {
    std::string id;
    std::string description;
    bool passed = false;
    std::string witness;
};

struct VerificationReport {
    std::string suite;
    std::optional<std::string> mutation;
    std::vector<CheckRecord> checks; // sorted by id
    double elapsed_ms = 0;
    std::map<std::string, std::string> versions;

    bool passed() const;
    std::vector<std::string> failing() const;
};

// "all" first, then the module suites.
const std::vector<std::string>& suite_names();

struct SuiteOptions {
    std::optional<std::filesystem::path> cache_dir;
    std::optional<std::string> mutation; // recorded in the report only
};

// Throws std::invalid_argument for an unknown suite. Exceptions inside a
// check are caught and turn that check into a failure.
VerificationReport run_suite(std::string_view suite, const constants::Transcription& t = constants::transcribed(),
                             const SuiteOptions& options = {});

// Keys in fixed order: suite, status, checks, elapsed_ms, versions, and
// mutation when set.
std::string to_json(const VerificationReport& report);
std::string to_text(const VerificationReport& report);

// Whole command line, argv[0] included. Returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace k3lab::cli
