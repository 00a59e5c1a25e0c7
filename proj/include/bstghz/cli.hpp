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

#include <ostream>
#include <string>
#include <vector>

namespace bst::cli {

/// Runs one command line (without the program name) and returns the exit
/// code: 0 pass, 1 a checked property fails, 2 malformed input or flags.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace bst::cli
