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

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bstghz/causal_model.hpp"
#include "bstghz/events.hpp"

namespace bst {

inline constexpr int kDocumentVersion = 1;

struct SpreadSpec {
    std::string initial;
    std::vector<std::string> outcomes;

    bool operator==(const SpreadSpec &) const = default;
};

/// On-disk model description:
///
///   { "version": 1,
///     "points":   ["a", "b", ...],
///     "order":    [["a", "b"], ...],
///     "events":   { "E": ["a", ...] },
///     "spreads":  { "s": { "initial": "E", "outcomes": ["F", "G"] } },
///     "nspreads": { "N": ["s", ...] } }
struct ModelDocument {
    int version = kDocumentVersion;
    std::vector<std::string> points;
    std::vector<OrderPair> order;
    std::map<std::string, std::vector<std::string>> events;
    std::map<std::string, SpreadSpec> spreads;
    std::map<std::string, std::vector<std::string>> nspreads;

    bool operator==(const ModelDocument &) const = default;
};

/// Throws ParseError on malformed JSON, a missing or unsupported version, or
/// fields of the wrong type.
ModelDocument parse_document(std::string_view text);
ModelDocument load_document(const std::string &path);

nlohmann::json to_json(const ModelDocument &doc);
/// Sorted keys, two-space indent, trailing newline. Byte-stable.
std::string serialize_document(const ModelDocument &doc);

/// A document resolved against its model: every name is bound to an object.
class Scenario {
  public:
    /// Throws the model-building errors, plus UnknownReference for events,
    /// spreads or n-spreads that name undeclared points or objects.
    static Scenario load(const ModelDocument &doc);

    const CausalModel &model() const noexcept { return model_; }

    const Event &event(const std::string &name) const;
    const Spread &spread(const std::string &name) const;
    const NSpread &nspread(const std::string &name) const;

    const std::map<std::string, Event> &events() const noexcept { return events_; }
    const std::map<std::string, Spread> &spreads() const noexcept { return spreads_; }
    const std::map<std::string, NSpread> &nspreads() const noexcept { return nspreads_; }

  private:
    explicit Scenario(CausalModel model) : model_(std::move(model)) {}

    CausalModel model_;
    std::map<std::string, Event> events_;
    std::map<std::string, Spread> spreads_;
    std::map<std::string, NSpread> nspreads_;
};

}  // namespace bst
