// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

namespace branchdual {

inline constexpr const char* kReportSchemaVersion = "1.0";

// Job object: {"command": ..., "generators": [...], "options": {...}}.
// Options: trunc, v (list of operator strings or one ';'-separated string),
// h, c, inverse, char ("e0;b1,b2" or {"e0":..,"betas":[..]}).
struct JobOutcome {
  nlohmann::json report;
  int exit_code = 0;
};

// A JSON array runs every element as an independent job; the batch exit code is
// the first nonzero job exit code.
JobOutcome run_job(const nlohmann::json& job);
// Parses text first; malformed JSON gives exit code 3.
JobOutcome run_job_text(std::string_view text);

// Exit code for an error code: 2, 3, 4, 5 for the specific failures, 1 otherwise.
int exit_code_for(int error_code);

}  // namespace branchdual
