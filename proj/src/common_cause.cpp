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

#include "bstghz/common_cause.hpp"

#include <fmt/format.h>

#include "bstghz/error.hpp"

namespace bst {

namespace {

// Exact covers tried per point in atomic_spread_candidates.
constexpr std::size_t kMaxCoversPerPoint = 4096;

CommonCauseReport evaluate(const CausalModel &model, const Spread &sigma, const NSpread &ns,
                           const OutcomeVector &c) {
    CommonCauseReport r;
    for (const auto &s : ns.spreads) {
        for (const auto &o : s.outcomes) {
            if (!causally_precedes(model, sigma.initial, o)) {
                r.cc1.holds = false;
                r.cc1.witnesses.push_back(
                    fmt::format("'{}' does not precede '{}'", sigma.initial.name, o.name));
            }
        }
    }

    const auto initials = ns.initials();
    const auto cterms = terms(ns, c);
    for (const auto &o : sigma.outcomes) {
        if (!consistent_unchecked(model, initials, {&o})) {
            r.cc2.holds = false;
            r.cc2.witnesses.push_back(
                fmt::format("'{}' is inconsistent with the initials of '{}'", o.name, ns.name));
        }
        const Event *screen = nullptr;
        for (const auto *t : cterms) {
            if (!consistent_unchecked(model, {}, {&o, t})) {
                screen = t;
                break;
            }
        }
        if (screen != nullptr) {
            r.screening.push_back(fmt::format("'{}' is inconsistent with '{}'", o.name, screen->name));
        } else {
            r.cc3.holds = false;
            r.cc3.witnesses.push_back(
                fmt::format("'{}' is consistent with every term of {}", o.name, describe(ns, c)));
        }
    }
    return r;
}

void require_correlation_setting(const CausalModel &model, const NSpread &ns) {
    if (!is_spacelike(model, ns)) {
        throw Error(ErrorCode::PreconditionFailed, fmt::format("'{}' is not space-like", ns.name));
    }
    if (!consistency_grade(model, ns).one) {
        throw Error(ErrorCode::PreconditionFailed, fmt::format("'{}' is not 1-consistent", ns.name));
    }
}

void require_inconsistent(const CausalModel &model, const NSpread &ns, const OutcomeVector &c) {
    if (consistent_unchecked(model, {}, terms(ns, c))) {
        throw Error(ErrorCode::NotInconsistencyType,
                    fmt::format("{} is a consistent outcome vector of '{}'", describe(ns, c), ns.name));
    }
}

/// Histories through each point, as bit rows over history indices.
std::vector<std::vector<std::uint8_t>> history_rows(const CausalModel &model) {
    const auto &hs = model.histories();
    std::vector<std::vector<std::uint8_t>> rows(model.size(), std::vector<std::uint8_t>(hs.size(), 0));
    for (std::size_t h = 0; h < hs.size(); ++h) {
        hs[h].members.for_each([&](PointId p) { rows[p.value][h] = 1; });
    }
    return rows;
}

void exact_covers(const std::vector<std::uint8_t> &target,
                  const std::vector<std::vector<std::uint8_t>> &rows,
                  const std::vector<PointId> &options, std::vector<std::uint8_t> &covered,
                  std::vector<PointId> &chosen, std::vector<std::vector<PointId>> &out) {
    if (out.size() >= kMaxCoversPerPoint) {
        return;
    }
    std::size_t first = target.size();
    for (std::size_t h = 0; h < target.size(); ++h) {
        if (target[h] != 0 && covered[h] == 0) {
            first = h;
            break;
        }
    }
    if (first == target.size()) {
        out.push_back(chosen);
        return;
    }
    for (auto q : options) {
        const auto &row = rows[q.value];
        if (row[first] == 0) {
            continue;
        }
        bool disjoint = true;
        for (std::size_t h = 0; h < row.size() && disjoint; ++h) {
            disjoint = !(row[h] != 0 && covered[h] != 0);
        }
        if (!disjoint) {
            continue;
        }
        for (std::size_t h = 0; h < row.size(); ++h) {
            covered[h] |= row[h];
        }
        chosen.push_back(q);
        exact_covers(target, rows, options, covered, chosen, out);
        chosen.pop_back();
        for (std::size_t h = 0; h < row.size(); ++h) {
            if (row[h] != 0) {
                covered[h] = 0;
            }
        }
    }
}

}  // namespace

CommonCauseReport check_common_cause(const CausalModel &model, const Spread &sigma,
                                     const NSpread &ns, const OutcomeVector &c) {
    if (!validate_spread(model, sigma).valid()) {
        throw Error(ErrorCode::InvalidSpread, fmt::format("'{}' is not a spread", sigma.name));
    }
    require_correlation_setting(model, ns);
    require_inconsistent(model, ns, c);
    return evaluate(model, sigma, ns, c);
}

std::vector<Spread> atomic_spread_candidates(const CausalModel &model) {
    const auto rows = history_rows(model);
    std::vector<std::vector<PointId>> covers(model.size());
    for (auto [a, b] : model.covering_pairs()) {
        covers[a.value].push_back(b);
    }

    std::vector<Spread> out;
    for (std::uint32_t i = 0; i < model.size(); ++i) {
        PointId p{i};
        if (covers[i].empty()) {
            continue;
        }
        std::vector<std::uint8_t> covered(model.histories().size(), 0);
        std::vector<PointId> chosen;
        std::vector<std::vector<PointId>> found;
        exact_covers(rows[i], rows, covers[i], covered, chosen, found);
        for (const auto &outcome_points : found) {
            Spread s;
            s.initial = Event{model.label(p), PointSet(model.size())};
            s.initial.members.insert(p);
            std::string names;
            for (auto q : outcome_points) {
                Event e{model.label(q), PointSet(model.size())};
                e.members.insert(q);
                names += (names.empty() ? "" : ", ") + e.name;
                s.outcomes.push_back(std::move(e));
            }
            s.name = fmt::format("{} -> {{{}}}", model.label(p), names);
            out.push_back(std::move(s));
        }
    }
    return out;
}

std::vector<TargetVector> inconsistent_targets(const CausalModel &model,
                                               std::span<const NSpread> nspreads) {
    std::vector<TargetVector> out;
    for (std::size_t i = 0; i < nspreads.size(); ++i) {
        for (auto &v : consistency_grade(model, nspreads[i]).inconsistent) {
            out.push_back(TargetVector{i, std::move(v)});
        }
    }
    return out;
}

CommonCauseSearch search_common_causes(const CausalModel &model, std::span<const NSpread> nspreads,
                                       std::span<const TargetVector> targets, Execution exec) {
    for (const auto &ns : nspreads) {
        require_correlation_setting(model, ns);
    }
    for (const auto &t : targets) {
        if (t.nspread >= nspreads.size()) {
            throw Error(ErrorCode::PreconditionFailed, "target names a missing n-spread");
        }
        const auto &ns = nspreads[t.nspread];
        if (consistent_unchecked(model, {}, terms(ns, t.vector))) {
            throw Error(ErrorCode::PreconditionFailed,
                        fmt::format("{} is consistent in '{}'", describe(ns, t.vector), ns.name));
        }
    }

    CommonCauseSearch result;
    auto candidates = atomic_spread_candidates(model);
    result.candidates = candidates.size();
    result.vacuous = targets.empty();

    auto passes = map_indices<std::uint8_t>(
        candidates.size(),
        [&](std::size_t k) -> std::uint8_t {
            for (const auto &t : targets) {
                if (!evaluate(model, candidates[k], nspreads[t.nspread], t.vector).passes()) {
                    return 0;
                }
            }
            return 1;
        },
        exec);
    for (std::size_t k = 0; k < candidates.size(); ++k) {
        if (passes[k] != 0) {
            result.passing.push_back(std::move(candidates[k]));
        }
    }
    return result;
}

std::string CandidateProfile::describe() const {
    std::string out = "{";
    for (std::size_t k = 0; k < ghz::kOutcomeEvents; ++k) {
        if (consistent_with(k)) {
            out += (out.size() > 1 ? ", " : "") + ghz::outcome_name(k);
        }
    }
    return out + "}";
}

bool profile_survives(const ghz::GhzStructure &structure, std::span<const ghz::Context> contexts,
                      CandidateProfile profile) {
    for (const auto &c : contexts) {
        bool witnessed = false;
        for (unsigned s = 0; s < 8; ++s) {
            ghz::GhzVector v{c, ghz::signs_from_index(s)};
            bool all = true;
            for (auto k : ghz::term_indices(v)) {
                all = all && profile.consistent_with(k);
            }
            if (!all) {
                continue;
            }
            if (!structure.consistent(v)) {
                return false;
            }
            witnessed = true;
        }
        if (!witnessed) {
            return false;
        }
    }
    return true;
}

RefutationResult refute_joint_common_cause(const ghz::GhzStructure &structure,
                                           std::span<const ghz::Context> contexts,
                                           const RefuteOptions &options) {
    auto sweep_result = sweep(
        std::uint64_t{1} << ghz::kOutcomeEvents,
        [&](std::uint64_t i) {
            return profile_survives(structure, contexts,
                                    CandidateProfile{static_cast<std::uint16_t>(i)});
        },
        options.witness_limit, options.exec);

    RefutationResult r;
    r.total = sweep_result.total;
    r.survivors = sweep_result.count;
    for (auto w : sweep_result.witnesses) {
        r.witnesses.push_back(CandidateProfile{static_cast<std::uint16_t>(w)});
    }
    if (options.trace && r.survivors == 0) {
        r.trace = build_reductio_trace(structure, contexts);
    }
    return r;
}

LevelReport classify_determinism(const CausalModel &model, std::span<const NSpread> nspreads) {
    LevelReport r;
    r.histories = model.histories().size();
    if (r.histories == 1) {
        r.level = Level::Deterministic;
        r.note = "Level I: exactly one history";
        return r;
    }
    r.level = Level::Indeterministic;
    r.note = "indeterministic: more than one history";

    const auto candidates = atomic_spread_candidates(model);
    for (const auto &ns : nspreads) {
        std::vector<OutcomeVector> vectors;
        try {
            require_correlation_setting(model, ns);
            vectors = consistency_grade(model, ns).inconsistent;
        } catch (const Error &) {
            continue;
        }
        for (const auto &v : vectors) {
            bool explained = false;
            for (const auto &cand : candidates) {
                if (evaluate(model, cand, ns, v).passes()) {
                    explained = true;
                    break;
                }
            }
            if (!explained) {
                r.evidence.push_back(fmt::format("{}: {} has no atomic candidate meeting CC1-CC3",
                                                 ns.name, describe(ns, v)));
            }
        }
    }
    if (!r.evidence.empty()) {
        r.note += "; Level III evidence only: the search covers atomic spreads and CC1-CC3 are "
                  "necessary conditions, so this does not establish Level III";
    }
    return r;
}

}  // namespace bst
