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

#include "bstghz/report.hpp"

namespace bst::cli {

void Report::merge_status(Status s) {
    if (s == Status::Fail) {
        status = Status::Fail;
    }
}

Report error_report(const std::string &command, const Error &e) {
    Report r;
    r.command = command;
    r.status = Status::Fail;
    r.add(e.what());
    r.payload["error"] = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
    return r;
}

nlohmann::json to_json(const Report &r) {
    return {{"command", r.command},
            {"status", std::string(to_string(r.status))},
            {"findings", r.findings},
            {"payload", r.payload}};
}

std::string render_json(const Report &r) { return to_json(r).dump(2) + "\n"; }

std::string render_text(const Report &r) {
    std::string out = r.command + ": " + std::string(to_string(r.status)) + "\n";
    for (const auto &f : r.findings) {
        out += "  " + f + "\n";
    }
    out += r.text_body;
    return out;
}

int exit_code(const Report &r) {
    if (r.payload.contains("error")) {
        return kExitInput;
    }
    return r.status == Status::Fail ? kExitFail : kExitPass;
}

}  // namespace bst::cli
