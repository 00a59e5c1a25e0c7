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
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bstghz/causal_model.hpp"
#include "bstghz/sweep.hpp"

namespace bst {

/// A named nonempty set of point events.
struct Event {
    std::string name;
    PointSet members;
};

/// Throws UnknownPoint for undeclared labels and InvalidArgument for an
/// empty member list.
Event make_event(const CausalModel &model, std::string name, std::span<const std::string> labels);

struct EventClassification {
    bool is_initial = false;
    bool is_outcome = false;
    bool is_stable = false;

    bool operator==(const EventClassification &) const = default;
};

/// initial: nonempty upper-bounded chain; outcome: nonempty lower-bounded
/// chain; stable: both, and contained in every history it overlaps.
EventClassification classify_event(const CausalModel &model, const Event &event);

bool overlaps(const History &h, const Event &e);
bool contains(const History &h, const Event &e);

using EventRefs = std::vector<const Event *>;

/// Index of the first history that contains every initial and overlaps every
/// outcome, if one exists. Throws MisclassifiedEvent when an initial is not
/// an initial event or an outcome is not an outcome event.
std::optional<std::size_t> consistency_witness(const CausalModel &model,
                                               const EventRefs &initials,
                                               const EventRefs &outcomes);

bool is_consistent(const CausalModel &model, const EventRefs &initials, const EventRefs &outcomes);

/// As is_consistent, without classifying the events first. For hot loops
/// over events already known to be well-formed.
bool consistent_unchecked(const CausalModel &model, const EventRefs &initials,
                          const EventRefs &outcomes) noexcept;

struct Spread {
    std::string name;
    Event initial;
    std::vector<Event> outcomes;
};

struct ConditionResult {
    bool holds = true;
    std::vector<std::string> witnesses;
};

struct SpreadReport {
    std::string spread;
    /// Initial is an initial event, outcomes are outcome events, outcomes nonempty.
    ConditionResult shape;
    /// (i) every point of the initial strictly below every point of each outcome.
    ConditionResult precedence;
    /// (ii) every history containing the initial overlaps some outcome.
    ConditionResult exhaustive;
    /// (iii) no history overlaps two distinct outcomes.
    ConditionResult exclusive;

    bool valid() const {
        return shape.holds && precedence.holds && exhaustive.holds && exclusive.holds;
    }
    ValidationReport to_report() const;
};

SpreadReport validate_spread(const CausalModel &model, const Spread &spread);

/// Every point of `earlier` strictly below every point of `later`.
bool causally_precedes(const CausalModel &model, const Event &earlier, const Event &later);

struct NSpread {
    std::string name;
    std::vector<Spread> spreads;

    EventRefs initials() const;
};

/// Term i is an index into spread i's outcome list.
struct OutcomeVector {
    std::vector<std::size_t> choice;

    bool operator==(const OutcomeVector &) const = default;
    auto operator<=>(const OutcomeVector &) const = default;
};

EventRefs terms(const NSpread &ns, const OutcomeVector &v);
std::string describe(const NSpread &ns, const OutcomeVector &v);

std::uint64_t outcome_vector_count(const NSpread &ns);
/// Lexicographic decoding: the last spread varies fastest.
OutcomeVector decode_outcome_vector(const NSpread &ns, std::uint64_t index);
std::vector<OutcomeVector> enumerate_outcome_vectors(const NSpread &ns);

/// Finds an outcome vector of `ns` by the names of its terms. Returns nullopt
/// when a name is not an outcome of the matching spread.
std::optional<OutcomeVector> find_outcome_vector(const NSpread &ns,
                                                 std::span<const std::string> names);

struct GradeReport {
    bool minimal = false;
    bool one = false;
    bool maximal = false;
    std::vector<OutcomeVector> inconsistent;
};

/// Throws InvalidSpread when any member spread fails validate_spread.
GradeReport consistency_grade(const CausalModel &model, const NSpread &ns,
                              Execution exec = Execution::Parallel);

/// Minimally consistent and no point of any initial strictly below any point
/// of an outcome of a different spread. Throws InvalidSpread.
bool is_spacelike(const CausalModel &model, const NSpread &ns);

bool is_outcome_vector_consistent(const CausalModel &model, const NSpread &ns,
                                  const OutcomeVector &v);

}  // namespace bst
