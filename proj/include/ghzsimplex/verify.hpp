// Copyright 2026 The ghzsimplex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace ghz {

enum class CheckStatus { Pass, Deviation, Fail };

const char* check_status_name(CheckStatus s);

struct CheckResult {
    int id = 0;
    std::string title;
    bool soft = false;
    CheckStatus status = CheckStatus::Fail;
    std::string detail;
    double seconds = 0.0;

    /// Soft checks within their loose tolerance do not fail the suite.
    bool acceptable() const noexcept { return status == CheckStatus::Pass || (soft && status == CheckStatus::Deviation); }
};

nlohmann::json to_json(const CheckResult& r);

struct VerifyOptions {
    std::uint64_t seed = 0;
    int threads = 1;
};

inline constexpr int kCheckCount = 11;

CheckResult run_check(int id, const VerifyOptions& options);
std::vector<CheckResult> run_checks(const std::vector<int>& ids, const VerifyOptions& options);
std::vector<CheckResult> run_all_checks(const VerifyOptions& options);

} // namespace ghz
