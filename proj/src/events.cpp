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

#include "bstghz/events.hpp"

#include <fmt/format.h>

#include <stdexcept>

#include "bstghz/error.hpp"

namespace bst {

namespace {

std::optional<std::size_t> first_history(const CausalModel &model, const EventRefs &initials,
                                         const EventRefs &outcomes) {
    const auto &hs = model.histories();
    for (std::size_t i = 0; i < hs.size(); ++i) {
        bool ok = true;
        for (const auto *e : initials) {
            ok = ok && contains(hs[i], *e);
        }
        for (const auto *e : outcomes) {
            ok = ok && overlaps(hs[i], *e);
        }
        if (ok) {
            return i;
        }
    }
    return std::nullopt;
}

bool has_upper_bound(const CausalModel &model, const PointSet &members) {
    PointSet bounds = PointSet::full(model.size());
    members.for_each([&](PointId m) {
        PointSet up = model.strictly_above(m);
        up.insert(m);
        bounds &= up;
    });
    return !bounds.empty();
}

bool has_lower_bound(const CausalModel &model, const PointSet &members) {
    PointSet bounds = PointSet::full(model.size());
    members.for_each([&](PointId m) { bounds &= model.down_closure(m); });
    return !bounds.empty();
}

void require_valid(const CausalModel &model, const NSpread &ns) {
    for (const auto &s : ns.spreads) {
        auto report = validate_spread(model, s);
        if (!report.valid()) {
            throw Error(ErrorCode::InvalidSpread,
                        fmt::format("spread '{}' of '{}' fails validation", s.name, ns.name));
        }
    }
    if (ns.spreads.empty()) {
        throw Error(ErrorCode::InvalidSpread, fmt::format("n-spread '{}' is empty", ns.name));
    }
}

}  // namespace

Event make_event(const CausalModel &model, std::string name, std::span<const std::string> labels) {
    if (labels.empty()) {
        throw Error(ErrorCode::InvalidArgument, fmt::format("event '{}' has no members", name));
    }
    return Event{std::move(name), model.make_set(labels)};
}

EventClassification classify_event(const CausalModel &model, const Event &event) {
    if (event.members.universe() != model.size()) {
        throw Error(ErrorCode::UnknownPoint,
                    fmt::format("event '{}' does not belong to this model", event.name));
    }
    EventClassification c;
    if (!model.is_chain(event.members)) {
        return c;
    }
    c.is_initial = has_upper_bound(model, event.members);
    c.is_outcome = has_lower_bound(model, event.members);
    if (c.is_initial && c.is_outcome) {
        c.is_stable = true;
        for (const auto &h : model.histories()) {
            if (overlaps(h, event) && !contains(h, event)) {
                c.is_stable = false;
                break;
            }
        }
    }
    return c;
}

bool overlaps(const History &h, const Event &e) { return h.members.intersects(e.members); }

bool contains(const History &h, const Event &e) { return e.members.is_subset_of(h.members); }

std::optional<std::size_t> consistency_witness(const CausalModel &model,
                                               const EventRefs &initials,
                                               const EventRefs &outcomes) {
    for (const auto *e : initials) {
        if (!classify_event(model, *e).is_initial) {
            throw Error(ErrorCode::MisclassifiedEvent,
                        fmt::format("'{}' is not an initial event", e->name));
        }
    }
    for (const auto *e : outcomes) {
        if (!classify_event(model, *e).is_outcome) {
            throw Error(ErrorCode::MisclassifiedEvent,
                        fmt::format("'{}' is not an outcome event", e->name));
        }
    }
    return first_history(model, initials, outcomes);
}

bool is_consistent(const CausalModel &model, const EventRefs &initials, const EventRefs &outcomes) {
    return consistency_witness(model, initials, outcomes).has_value();
}

bool consistent_unchecked(const CausalModel &model, const EventRefs &initials,
                          const EventRefs &outcomes) noexcept {
    return first_history(model, initials, outcomes).has_value();
}

ValidationReport SpreadReport::to_report() const {
    ValidationReport r;
    r.check = "spread:" + spread;
    auto add = [&](const char *tag, const ConditionResult &c) {
        for (const auto &w : c.witnesses) {
            r.violations.push_back(fmt::format("{}: {}", tag, w));
        }
    };
    add("shape", shape);
    add("i", precedence);
    add("ii", exhaustive);
    add("iii", exclusive);
    r.status = valid() ? Status::Pass : Status::Fail;
    return r;
}

bool causally_precedes(const CausalModel &model, const Event &earlier, const Event &later) {
    bool all = true;
    earlier.members.for_each([&](PointId a) {
        later.members.for_each([&](PointId b) { all = all && model.precedes(a, b); });
    });
    return all;
}

SpreadReport validate_spread(const CausalModel &model, const Spread &spread) {
    SpreadReport r;
    r.spread = spread.name;

    if (!classify_event(model, spread.initial).is_initial) {
        r.shape.holds = false;
        r.shape.witnesses.push_back(fmt::format("'{}' is not an initial event", spread.initial.name));
    }
    if (spread.outcomes.empty()) {
        r.shape.holds = false;
        r.shape.witnesses.push_back("no outcomes");
    }
    for (const auto &o : spread.outcomes) {
        if (!classify_event(model, o).is_outcome) {
            r.shape.holds = false;
            r.shape.witnesses.push_back(fmt::format("'{}' is not an outcome event", o.name));
        }
    }

    for (const auto &o : spread.outcomes) {
        if (!causally_precedes(model, spread.initial, o)) {
            r.precedence.holds = false;
            r.precedence.witnesses.push_back(
                fmt::format("'{}' does not precede '{}'", spread.initial.name, o.name));
        }
    }

    for (const auto &h : model.histories()) {
        if (contains(h, spread.initial)) {
            bool any = false;
            for (const auto &o : spread.outcomes) {
                any = any || overlaps(h, o);
            }
            if (!any) {
                r.exhaustive.holds = false;
                r.exhaustive.witnesses.push_back(
                    fmt::format("history [{}] contains '{}' but overlaps no outcome",
                                model.label(h.top), spread.initial.name));
            }
        }
        for (std::size_t i = 0; i < spread.outcomes.size(); ++i) {
            for (std::size_t j = i + 1; j < spread.outcomes.size(); ++j) {
                if (overlaps(h, spread.outcomes[i]) && overlaps(h, spread.outcomes[j])) {
                    r.exclusive.holds = false;
                    r.exclusive.witnesses.push_back(fmt::format(
                        "history [{}] overlaps both '{}' and '{}'", model.label(h.top),
                        spread.outcomes[i].name, spread.outcomes[j].name));
                }
            }
        }
    }
    return r;
}

EventRefs NSpread::initials() const {
    EventRefs out;
    for (const auto &s : spreads) {
        out.push_back(&s.initial);
    }
    return out;
}

EventRefs terms(const NSpread &ns, const OutcomeVector &v) {
    if (v.choice.size() != ns.spreads.size()) {
        throw Error(ErrorCode::InvalidArgument,
                    fmt::format("outcome vector length {} does not match n-spread '{}' of length {}",
                                v.choice.size(), ns.name, ns.spreads.size()));
    }
    EventRefs out;
    for (std::size_t i = 0; i < v.choice.size(); ++i) {
        out.push_back(&ns.spreads[i].outcomes.at(v.choice[i]));
    }
    return out;
}

std::string describe(const NSpread &ns, const OutcomeVector &v) {
    std::string out = "(";
    auto ts = terms(ns, v);
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (i != 0) {
            out += ", ";
        }
        out += ts[i]->name;
    }
    return out + ")";
}

std::uint64_t outcome_vector_count(const NSpread &ns) {
    std::uint64_t n = ns.spreads.empty() ? 0 : 1;
    for (const auto &s : ns.spreads) {
        n *= s.outcomes.size();
    }
    return n;
}

OutcomeVector decode_outcome_vector(const NSpread &ns, std::uint64_t index) {
    OutcomeVector v;
    v.choice.resize(ns.spreads.size());
    for (std::size_t k = ns.spreads.size(); k-- > 0;) {
        auto radix = ns.spreads[k].outcomes.size();
        v.choice[k] = static_cast<std::size_t>(index % radix);
        index /= radix;
    }
    return v;
}

std::vector<OutcomeVector> enumerate_outcome_vectors(const NSpread &ns) {
    std::vector<OutcomeVector> out;
    auto n = outcome_vector_count(ns);
    out.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) {
        out.push_back(decode_outcome_vector(ns, i));
    }
    return out;
}

std::optional<OutcomeVector> find_outcome_vector(const NSpread &ns,
                                                 std::span<const std::string> names) {
    if (names.size() != ns.spreads.size()) {
        return std::nullopt;
    }
    OutcomeVector v;
    for (std::size_t i = 0; i < names.size(); ++i) {
        const auto &outs = ns.spreads[i].outcomes;
        std::optional<std::size_t> hit;
        for (std::size_t j = 0; j < outs.size(); ++j) {
            if (outs[j].name == names[i]) {
                hit = j;
            }
        }
        if (!hit) {
            return std::nullopt;
        }
        v.choice.push_back(*hit);
    }
    return v;
}

bool is_outcome_vector_consistent(const CausalModel &model, const NSpread &ns,
                                  const OutcomeVector &v) {
    return is_consistent(model, {}, terms(ns, v));
}

GradeReport consistency_grade(const CausalModel &model, const NSpread &ns, Execution exec) {
    require_valid(model, ns);
    GradeReport g;
    const auto initials = ns.initials();
    g.minimal = first_history(model, initials, {}).has_value();

    g.one = true;
    for (const auto &s : ns.spreads) {
        for (const auto &o : s.outcomes) {
            g.one = g.one && first_history(model, initials, {&o}).has_value();
        }
    }

    auto inconsistent = sweep(
        outcome_vector_count(ns),
        [&](std::uint64_t i) {
            return !first_history(model, {}, terms(ns, decode_outcome_vector(ns, i))).has_value();
        },
        kAllWitnesses, exec);
    for (auto i : inconsistent.witnesses) {
        g.inconsistent.push_back(decode_outcome_vector(ns, i));
    }
    g.maximal = g.inconsistent.empty();

    // maximal => 1-consistent => minimal holds for validated spreads.
    if ((g.maximal && !g.one) || (g.one && !g.minimal)) {
        throw std::logic_error(fmt::format("consistency grades of '{}' are not nested", ns.name));
    }
    return g;
}

bool is_spacelike(const CausalModel &model, const NSpread &ns) {
    require_valid(model, ns);
    if (!first_history(model, ns.initials(), {}).has_value()) {
        return false;
    }
    for (std::size_t i = 0; i < ns.spreads.size(); ++i) {
        for (std::size_t j = 0; j < ns.spreads.size(); ++j) {
            if (i == j) {
                continue;
            }
            for (const auto &o : ns.spreads[j].outcomes) {
                bool below = false;
                ns.spreads[i].initial.members.for_each([&](PointId a) {
                    o.members.for_each([&](PointId b) { below = below || model.precedes(a, b); });
                });
                if (below) {
                    return false;
                }
            }
        }
    }
    return true;
}

}  // namespace bst
