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

#include "bstghz/document.hpp"

#include <fmt/format.h>

#include <fstream>
#include <sstream>

#include "bstghz/error.hpp"

namespace bst {

using nlohmann::json;

namespace {

template <typename T>
T field(const json &j, const char *key, T fallback) {
    if (!j.contains(key)) {
        return fallback;
    }
    try {
        return j.at(key).get<T>();
    } catch (const json::exception &e) {
        throw Error(ErrorCode::ParseError, fmt::format("field '{}': {}", key, e.what()));
    }
}

}  // namespace

ModelDocument parse_document(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw Error(ErrorCode::ParseError, e.what());
    }
    if (!j.is_object()) {
        throw Error(ErrorCode::ParseError, "model document must be a JSON object");
    }
    if (!j.contains("version")) {
        throw Error(ErrorCode::ParseError, "missing 'version' field");
    }
    ModelDocument doc;
    doc.version = field<int>(j, "version", 0);
    if (doc.version != kDocumentVersion) {
        throw Error(ErrorCode::ParseError, fmt::format("unsupported version {}", doc.version));
    }
    doc.points = field<std::vector<std::string>>(j, "points", {});
    for (const auto &pair : field<std::vector<std::vector<std::string>>>(j, "order", {})) {
        if (pair.size() != 2) {
            throw Error(ErrorCode::ParseError, "order entries must be [from, to] pairs");
        }
        doc.order.emplace_back(pair[0], pair[1]);
    }
    doc.events = field<std::map<std::string, std::vector<std::string>>>(j, "events", {});
    if (j.contains("spreads")) {
        const auto &spreads = j.at("spreads");
        if (!spreads.is_object()) {
            throw Error(ErrorCode::ParseError, "'spreads' must be an object");
        }
        for (const auto &[name, body] : spreads.items()) {
            if (!body.is_object() || !body.contains("initial") || !body.contains("outcomes")) {
                throw Error(ErrorCode::ParseError,
                            fmt::format("spread '{}' needs 'initial' and 'outcomes'", name));
            }
            doc.spreads[name] = SpreadSpec{field<std::string>(body, "initial", {}),
                                           field<std::vector<std::string>>(body, "outcomes", {})};
        }
    }
    doc.nspreads = field<std::map<std::string, std::vector<std::string>>>(j, "nspreads", {});
    return doc;
}

ModelDocument load_document(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::ParseError, fmt::format("cannot read '{}'", path));
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_document(buf.str());
}

json to_json(const ModelDocument &doc) {
    json j;
    j["version"] = doc.version;
    j["points"] = doc.points;
    j["order"] = json::array();
    for (const auto &[a, b] : doc.order) {
        j["order"].push_back({a, b});
    }
    j["events"] = json::object();
    for (const auto &[name, members] : doc.events) {
        j["events"][name] = members;
    }
    j["spreads"] = json::object();
    for (const auto &[name, s] : doc.spreads) {
        j["spreads"][name] = {{"initial", s.initial}, {"outcomes", s.outcomes}};
    }
    j["nspreads"] = json::object();
    for (const auto &[name, list] : doc.nspreads) {
        j["nspreads"][name] = list;
    }
    return j;
}

std::string serialize_document(const ModelDocument &doc) { return to_json(doc).dump(2) + "\n"; }

Scenario Scenario::load(const ModelDocument &doc) {
    Scenario sc(CausalModel::build(doc.points, doc.order));
    const auto &m = sc.model_;

    for (const auto &[name, members] : doc.events) {
        if (members.empty()) {
            throw Error(ErrorCode::UnknownReference, fmt::format("event '{}' is empty", name));
        }
        for (const auto &p : members) {
            if (!m.find(p)) {
                throw Error(ErrorCode::UnknownReference,
                            fmt::format("event '{}' names undeclared point '{}'", name, p));
            }
        }
        sc.events_.emplace(name, make_event(m, name, members));
    }

    auto lookup_event = [&](const std::string &owner, const std::string &name) -> const Event & {
        auto it = sc.events_.find(name);
        if (it == sc.events_.end()) {
            throw Error(ErrorCode::UnknownReference,
                        fmt::format("'{}' names undeclared event '{}'", owner, name));
        }
        return it->second;
    };
    for (const auto &[name, spec] : doc.spreads) {
        Spread s{name, lookup_event(name, spec.initial), {}};
        for (const auto &o : spec.outcomes) {
            s.outcomes.push_back(lookup_event(name, o));
        }
        sc.spreads_.emplace(name, std::move(s));
    }
    for (const auto &[name, list] : doc.nspreads) {
        NSpread ns{name, {}};
        for (const auto &s : list) {
            auto it = sc.spreads_.find(s);
            if (it == sc.spreads_.end()) {
                throw Error(ErrorCode::UnknownReference,
                            fmt::format("'{}' names undeclared spread '{}'", name, s));
            }
            ns.spreads.push_back(it->second);
        }
        sc.nspreads_.emplace(name, std::move(ns));
    }
    return sc;
}

const Event &Scenario::event(const std::string &name) const {
    auto it = events_.find(name);
    if (it == events_.end()) {
        throw Error(ErrorCode::UnknownReference, fmt::format("no event named '{}'", name));
    }
    return it->second;
}

const Spread &Scenario::spread(const std::string &name) const {
    auto it = spreads_.find(name);
    if (it == spreads_.end()) {
        throw Error(ErrorCode::UnknownReference, fmt::format("no spread named '{}'", name));
    }
    return it->second;
}

const NSpread &Scenario::nspread(const std::string &name) const {
    auto it = nspreads_.find(name);
    if (it == nspreads_.end()) {
        throw Error(ErrorCode::UnknownReference, fmt::format("no n-spread named '{}'", name));
    }
    return it->second;
}

}  // namespace bst
