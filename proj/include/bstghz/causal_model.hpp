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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bstghz/point_set.hpp"

namespace bst {

using OrderPair = std::pair<std::string, std::string>;

/// A maximal directed subset of the model. In a finite model it is the
/// down-closure of exactly one maximal point, recorded as `top`.
struct History {
    PointSet members;
    PointId top;

    bool operator==(const History &other) const { return members == other.members; }
};

enum class Status { Pass, Fail, Waived };

std::string_view to_string(Status s);

struct ValidationReport {
    std::string check;
    Status status = Status::Pass;
    std::vector<std::string> violations;
    std::string note;

    bool ok() const { return status != Status::Fail; }
};

/// A finite set of point events under a strict partial order. Immutable once
/// built; the order is stored fully closed and histories are precomputed.
class CausalModel {
  public:
    /// Closes `order` transitively. Throws EmptyModel, DuplicatePoint,
    /// UnknownPoint or CycleDetected.
    static CausalModel build(std::vector<std::string> labels, std::span<const OrderPair> order);

    std::size_t size() const noexcept { return labels_.size(); }
    const std::string &label(PointId p) const { return labels_.at(p.value); }
    const std::vector<std::string> &labels() const noexcept { return labels_; }

    /// Throws UnknownPoint for labels that were never declared.
    PointId id(std::string_view label) const;
    std::optional<PointId> find(std::string_view label) const;
    PointSet make_set(std::span<const std::string> labels) const;
    PointSet empty_set() const { return PointSet(size()); }

    /// a < b in the closed order.
    bool precedes(PointId a, PointId b) const { return above_.at(a.value).contains(b); }
    bool precedes_or_equal(PointId a, PointId b) const { return a == b || precedes(a, b); }
    bool comparable(PointId a, PointId b) const { return precedes_or_equal(a, b) || precedes(b, a); }

    const PointSet &strictly_below(PointId p) const { return below_.at(p.value); }
    const PointSet &strictly_above(PointId p) const { return above_.at(p.value); }
    PointSet down_closure(PointId p) const;

    std::vector<PointId> maximal_points() const;
    std::vector<PointId> minimal_points() const;

    /// Full closed relation, sorted by (from, to) index.
    std::vector<std::pair<PointId, PointId>> order_pairs() const;
    /// Pairs a < b with nothing strictly between them.
    std::vector<std::pair<PointId, PointId>> covering_pairs() const;

    /// One history per maximal point, ordered by that point's index.
    const std::vector<History> &histories() const noexcept { return histories_; }

    /// True iff `set` is nonempty and totally ordered. Throws UnknownPoint if
    /// the set was built for a different model.
    bool is_chain(const PointSet &set) const;

    /// Maximal elements of h1 ∩ h2. Throws SameHistory when h1 == h2.
    PointSet choice_points(const History &h1, const History &h2) const;

    std::string describe(const PointSet &set) const;

  private:
    CausalModel() = default;

    std::vector<std::string> labels_;
    std::unordered_map<std::string, std::uint32_t> index_;
    std::vector<PointSet> below_;
    std::vector<PointSet> above_;
    std::vector<History> histories_;
};

/// Prior choice principle. For finite models every nonempty chain has a
/// minimum, so it suffices to check singleton chains {e} for e in h1 - h2.
ValidationReport check_prior_choice(const CausalModel &model);

/// Infimum / supremum postulates, checked on every interval of every maximal
/// chain (suprema relative to each history containing the interval).
ValidationReport check_infima_suprema(const CausalModel &model);

/// Density cannot hold in a finite model with a nonempty order. Reported as
/// Waived with a covering-pair witness; Pass only for the empty order.
ValidationReport check_density(const CausalModel &model);

}  // namespace bst
