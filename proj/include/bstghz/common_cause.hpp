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
#include "bstghz/events.hpp"
#include "bstghz/ghz.hpp"
#include "bstghz/sweep.hpp"

namespace bst {

/// Necessary conditions for `sigma` to be a common cause of an inconsistent
/// outcome vector. Passing all three does not make sigma a common cause.
struct CommonCauseReport {
    /// CC1: sigma's initial causally precedes every outcome of every spread.
    ConditionResult cc1;
    /// CC2: each outcome of sigma is consistent with the set of initials.
    ConditionResult cc2;
    /// CC3: each outcome of sigma is inconsistent with some one term of the
    /// vector. Witnesses name the screening term, or its absence.
    ConditionResult cc3;
    std::vector<std::string> screening;

    bool passes() const { return cc1.holds && cc2.holds && cc3.holds; }
};

/// Throws PreconditionFailed unless `ns` is space-like and 1-consistent,
/// NotInconsistencyType when `c` is consistent, InvalidSpread when sigma is
/// not a spread.
CommonCauseReport check_common_cause(const CausalModel &model, const Spread &sigma,
                                     const NSpread &ns, const OutcomeVector &c);

/// An inconsistent outcome vector of the n-spread at `nspread` in the list
/// handed to search_common_causes.
struct TargetVector {
    std::size_t nspread = 0;
    OutcomeVector vector;
};

/// Point-initial, point-outcome spreads: for each point p, every set of
/// immediate successors of p whose history sets partition the histories
/// through p.
std::vector<Spread> atomic_spread_candidates(const CausalModel &model);

struct CommonCauseSearch {
    std::size_t candidates = 0;
    std::vector<Spread> passing;
    /// No target vectors were given, so every candidate passes trivially.
    bool vacuous = false;
};

/// Throws PreconditionFailed when an n-spread is not space-like and
/// 1-consistent or a target vector is consistent.
CommonCauseSearch search_common_causes(const CausalModel &model, std::span<const NSpread> nspreads,
                                       std::span<const TargetVector> targets,
                                       Execution exec = Execution::Parallel);

/// All inconsistent vectors of every listed n-spread, in list order.
std::vector<TargetVector> inconsistent_targets(const CausalModel &model,
                                               std::span<const NSpread> nspreads);

/// Which of the twelve outcome events a hypothetical common-cause outcome O
/// is consistent with. Bit k (k = ghz::outcome_index) set means consistent.
struct CandidateProfile {
    std::uint16_t flags = 0;

    bool consistent_with(std::size_t outcome) const { return ((flags >> outcome) & 1U) != 0; }
    std::string describe() const;

    auto operator<=>(const CandidateProfile &) const = default;
};

/// (A) every listed context has a parity-consistent vector whose terms are
/// all flagged, and (B) no parity-inconsistent vector of a listed context has
/// all terms flagged.
bool profile_survives(const ghz::GhzStructure &structure, std::span<const ghz::Context> contexts,
                      CandidateProfile profile);

enum class TraceRule {
    /// Branch on which consistent vector of a context O is consistent with.
    CaseSplit,
    /// CC3: an inconsistent vector with the other terms known consistent.
    Screening,
    /// CC2: O is consistent with a stable event, so with one of its outcomes.
    Existence,
    Contradiction,
};

std::string_view to_string(TraceRule rule);

struct TraceStep {
    TraceRule rule = TraceRule::Screening;
    /// Nesting level of case splits.
    int depth = 0;
    std::vector<ghz::Context> contexts;
    /// e.g. "O inconsistent with y+_3", "contradiction at y_2".
    std::string conclusion;
    std::vector<std::string> premises;
};

struct ReductioTrace {
    std::vector<TraceStep> steps;
    std::size_t branches = 0;

    std::string render() const;
};

/// Replays the impossibility argument for `contexts`: splits on the consistent
/// vectors of the first context whose CC2 requirement is not yet witnessed,
/// propagates CC3 screening and CC2 existence, and closes every branch with
/// the shortest contradiction found. Returns nullopt if some branch stays
/// open (a surviving profile exists).
std::optional<ReductioTrace> build_reductio_trace(const ghz::GhzStructure &structure,
                                                  std::span<const ghz::Context> contexts);

struct RefutationResult {
    std::uint64_t total = 0;
    std::uint64_t survivors = 0;
    std::vector<CandidateProfile> witnesses;
    std::optional<ReductioTrace> trace;
};

struct RefuteOptions {
    bool trace = false;
    Execution exec = Execution::Parallel;
    std::size_t witness_limit = 8;
};

/// Exhaustive sweep over all 2^12 candidate profiles. CC1 plays no part. A
/// survivor means only that the relaxation is satisfiable, not that a common
/// cause exists.
RefutationResult refute_joint_common_cause(const ghz::GhzStructure &structure,
                                           std::span<const ghz::Context> contexts,
                                           const RefuteOptions &options = {});

enum class Level { Deterministic, Indeterministic };

struct LevelReport {
    Level level = Level::Deterministic;
    std::size_t histories = 0;
    /// Filled only for indeterministic models: n-spreads whose inconsistent
    /// vectors admit no atomic common-cause candidate.
    std::vector<std::string> evidence;
    std::string note;

    bool level_three_evidence() const { return !evidence.empty(); }
};

/// Level I iff exactly one history. Evidence for strange correlations is
/// reported as evidence only. N-spreads that do not meet the common-cause
/// preconditions are skipped.
LevelReport classify_determinism(const CausalModel &model, std::span<const NSpread> nspreads = {});

}  // namespace bst
