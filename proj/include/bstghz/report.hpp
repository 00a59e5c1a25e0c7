// Copyright 2026 The bstghz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "bstghz/causal_model.hpp"
#include "bstghz/error.hpp"

namespace bst::cli {

enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitInput = 2 };

/// Machine-readable outcome of one command. Findings are one-line human
/// statements and carry the same counts as the payload.
struct Report {
    std::string command;
    Status status = Status::Pass;
    std::vector<std::string> findings;
    nlohmann::json payload = nlohmann::json::object();
    /// Extra text appended after the findings in text mode only.
    std::string text_body;

    void add(std::string finding) { findings.push_back(std::move(finding)); }
    /// Fail dominates; Waived never lowers a Pass.
    void merge_status(Status s);
};

/// Report for an input error; status fail, payload.error = {code, message}.
Report error_report(const std::string &command, const Error &e);

nlohmann::json to_json(const Report &r);
/// Sorted keys, two-space indent, trailing newline.
std::string render_json(const Report &r);
std::string render_text(const Report &r);

int exit_code(const Report &r);

}  // namespace bst::cli
