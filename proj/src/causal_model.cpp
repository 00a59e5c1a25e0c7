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

#include "bstghz/causal_model.hpp"

#include <fmt/format.h>

#include <algorithm>

#include "bstghz/error.hpp"

namespace bst {

namespace {

// Maximal chains beyond this count are not scanned by check_infima_suprema.
constexpr std::size_t kMaxChainScan = 200000;

}  // namespace

std::string_view to_string(Status s) {
    switch (s) {
        case Status::Pass:
            return "pass";
        case Status::Fail:
            return "fail";
        case Status::Waived:
            return "waived";
    }
    return "unknown";
}

CausalModel CausalModel::build(std::vector<std::string> labels, std::span<const OrderPair> order) {
    if (labels.empty()) {
        throw Error(ErrorCode::EmptyModel, "a model needs at least one point event");
    }
    CausalModel m;
    m.labels_ = std::move(labels);
    const auto n = m.labels_.size();
    for (std::uint32_t i = 0; i < n; ++i) {
        const auto &l = m.labels_[i];
        if (l.empty()) {
            throw Error(ErrorCode::UnknownPoint, "point labels must be nonempty");
        }
        if (!m.index_.emplace(l, i).second) {
            throw Error(ErrorCode::DuplicatePoint, fmt::format("point '{}' declared twice", l));
        }
    }

    m.above_.assign(n, PointSet(n));
    for (const auto &[from, to] : order) {
        auto a = m.id(from);
        auto b = m.id(to);
        m.above_[a.value].insert(b);
    }

    // Warshall closure over bit rows.
    for (std::uint32_t k = 0; k < n; ++k) {
        for (std::uint32_t i = 0; i < n; ++i) {
            if (m.above_[i].contains(PointId{k})) {
                m.above_[i] |= m.above_[k];
            }
        }
    }
    for (std::uint32_t i = 0; i < n; ++i) {
        if (m.above_[i].contains(PointId{i})) {
            throw Error(ErrorCode::CycleDetected,
                        fmt::format("order is cyclic through '{}'", m.labels_[i]));
        }
    }

    m.below_.assign(n, PointSet(n));
    for (std::uint32_t i = 0; i < n; ++i) {
        m.above_[i].for_each([&](PointId j) { m.below_[j.value].insert(PointId{i}); });
    }

    for (auto top : m.maximal_points()) {
        m.histories_.push_back(History{m.down_closure(top), top});
    }
    return m;
}

PointId CausalModel::id(std::string_view label) const {
    if (auto p = find(label)) {
        return *p;
    }
    throw Error(ErrorCode::UnknownPoint, fmt::format("undeclared point '{}'", label));
}

std::optional<PointId> CausalModel::find(std::string_view label) const {
    auto it = index_.find(std::string(label));
    if (it == index_.end()) {
        return std::nullopt;
    }
    return PointId{it->second};
}

PointSet CausalModel::make_set(std::span<const std::string> labels) const {
    PointSet s(size());
    for (const auto &l : labels) {
        s.insert(id(l));
    }
    return s;
}

PointSet CausalModel::down_closure(PointId p) const {
    PointSet s = strictly_below(p);
    s.insert(p);
    return s;
}

std::vector<PointId> CausalModel::maximal_points() const {
    std::vector<PointId> out;
    for (std::uint32_t i = 0; i < size(); ++i) {
        if (above_[i].empty()) {
            out.push_back(PointId{i});
        }
    }
    return out;
}

std::vector<PointId> CausalModel::minimal_points() const {
    std::vector<PointId> out;
    for (std::uint32_t i = 0; i < size(); ++i) {
        if (below_[i].empty()) {
            out.push_back(PointId{i});
        }
    }
    return out;
}

std::vector<std::pair<PointId, PointId>> CausalModel::order_pairs() const {
    std::vector<std::pair<PointId, PointId>> out;
    for (std::uint32_t i = 0; i < size(); ++i) {
        above_[i].for_each([&](PointId j) { out.emplace_back(PointId{i}, j); });
    }
    return out;
}

std::vector<std::pair<PointId, PointId>> CausalModel::covering_pairs() const {
    std::vector<std::pair<PointId, PointId>> out;
    for (std::uint32_t i = 0; i < size(); ++i) {
        above_[i].for_each([&](PointId j) {
            // Nothing strictly between i and j.
            if (!above_[i].intersects(below_[j.value])) {
                out.emplace_back(PointId{i}, j);
            }
        });
    }
    return out;
}

bool CausalModel::is_chain(const PointSet &set) const {
    if (set.universe() != size()) {
        throw Error(ErrorCode::UnknownPoint, "point set does not belong to this model");
    }
    if (set.empty()) {
        return false;
    }
    auto members = set.members();
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            if (!comparable(members[i], members[j])) {
                return false;
            }
        }
    }
    return true;
}

PointSet CausalModel::choice_points(const History &h1, const History &h2) const {
    if (h1.members == h2.members) {
        throw Error(ErrorCode::SameHistory, "choice points need two distinct histories");
    }
    PointSet common = h1.members & h2.members;
    PointSet out(size());
    common.for_each([&](PointId p) {
        if (!above_[p.value].intersects(common)) {
            out.insert(p);
        }
    });
    return out;
}

std::string CausalModel::describe(const PointSet &set) const {
    std::string out = "{";
    bool first = true;
    set.for_each([&](PointId p) {
        if (!first) {
            out += ", ";
        }
        out += label(p);
        first = false;
    });
    out += "}";
    return out;
}

ValidationReport check_prior_choice(const CausalModel &model) {
    ValidationReport r;
    r.check = "prior_choice";
    r.note = "finite chains have a minimum, so singleton chains suffice";
    const auto &hs = model.histories();
    for (const auto &h1 : hs) {
        for (const auto &h2 : hs) {
            if (&h1 == &h2) {
                continue;
            }
            PointSet choices = model.choice_points(h1, h2);
            PointSet diff = h1.members - h2.members;
            diff.for_each([&](PointId e) {
                bool found = false;
                choices.for_each([&](PointId c) { found = found || model.precedes(c, e); });
                if (!found) {
                    r.violations.push_back(fmt::format(
                        "no choice point for histories [{}] and [{}] lies below '{}'",
                        model.label(h1.top), model.label(h2.top), model.label(e)));
                }
            });
        }
    }
    r.status = r.violations.empty() ? Status::Pass : Status::Fail;
    return r;
}

namespace {

/// Depth-first enumeration of maximal chains along covering pairs.
void collect_maximal_chains(const CausalModel &model,
                            const std::vector<std::vector<PointId>> &covers,
                            std::vector<PointId> &path,
                            std::vector<std::vector<PointId>> &out,
                            bool &truncated) {
    if (out.size() >= kMaxChainScan) {
        truncated = true;
        return;
    }
    const auto &next = covers[path.back().value];
    if (next.empty()) {
        out.push_back(path);
        return;
    }
    for (auto q : next) {
        path.push_back(q);
        collect_maximal_chains(model, covers, path, out, truncated);
        path.pop_back();
    }
}

/// Greatest element of `bounds` w.r.t. the model order, if any.
std::optional<PointId> greatest(const CausalModel &model, const PointSet &bounds) {
    std::optional<PointId> found;
    bounds.for_each([&](PointId g) {
        if (!found && bounds.is_subset_of(model.down_closure(g))) {
            found = g;
        }
    });
    return found;
}

std::optional<PointId> least(const CausalModel &model, const PointSet &bounds) {
    std::optional<PointId> found;
    bounds.for_each([&](PointId g) {
        PointSet up = model.strictly_above(g);
        up.insert(g);
        if (!found && bounds.is_subset_of(up)) {
            found = g;
        }
    });
    return found;
}

}  // namespace

ValidationReport check_infima_suprema(const CausalModel &model) {
    ValidationReport r;
    r.check = "infima_suprema";

    std::vector<std::vector<PointId>> covers(model.size());
    for (auto [a, b] : model.covering_pairs()) {
        covers[a.value].push_back(b);
    }
    std::vector<std::vector<PointId>> chains;
    bool truncated = false;
    for (auto root : model.minimal_points()) {
        std::vector<PointId> path{root};
        collect_maximal_chains(model, covers, path, chains, truncated);
    }

    const auto full = PointSet::full(model.size());
    for (const auto &chain : chains) {
        for (std::size_t i = 0; i < chain.size(); ++i) {
            for (std::size_t j = i; j < chain.size(); ++j) {
                PointSet lower = full;
                PointSet upper = full;
                PointSet members(model.size());
                for (std::size_t k = i; k <= j; ++k) {
                    lower &= model.down_closure(chain[k]);
                    PointSet up = model.strictly_above(chain[k]);
                    up.insert(chain[k]);
                    upper &= up;
                    members.insert(chain[k]);
                }
                if (!lower.empty() && !greatest(model, lower)) {
                    r.violations.push_back(
                        fmt::format("chain {} has no infimum", model.describe(members)));
                }
                if (upper.empty()) {
                    continue;
                }
                for (const auto &h : model.histories()) {
                    if (!members.is_subset_of(h.members)) {
                        continue;
                    }
                    if (!least(model, upper & h.members)) {
                        r.violations.push_back(
                            fmt::format("chain {} has no supremum in history [{}]",
                                        model.describe(members), model.label(h.top)));
                    }
                }
            }
        }
    }
    r.note = fmt::format("scanned {} maximal chains", chains.size());
    if (truncated) {
        r.note += " (truncated)";
    }
    r.status = r.violations.empty() ? Status::Pass : Status::Fail;
    return r;
}

ValidationReport check_density(const CausalModel &model) {
    ValidationReport r;
    r.check = "density";
    auto covering = model.covering_pairs();
    if (covering.empty()) {
        r.status = Status::Pass;
        r.note = "empty order: density holds vacuously";
        return r;
    }
    auto [a, b] = covering.front();
    r.status = Status::Waived;
    r.violations.push_back(
        fmt::format("no point lies strictly between '{}' and '{}'", model.label(a), model.label(b)));
    r.note = "a finite model with a nonempty order cannot be dense";
    return r;
}

}  // namespace bst
