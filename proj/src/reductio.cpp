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

// Derivation engine behind build_reductio_trace.
//
// Facts are "O consistent with e" / "O inconsistent with e" for the twelve
// outcome events e. Two rules generate facts:
//
//   screening (CC3)  an inconsistent vector of a listed context whose other
//                    two terms are known consistent makes the third
//                    inconsistent;
//   existence (CC2)  a stable event used by a listed context must be
//                    consistent with O, so if one of its outcomes is
//                    inconsistent the other is consistent.
//
// Within a branch the closure is computed breadth-first, so every fact keeps
// a shallowest justification. A branch closes when some required stable
// event has both outcomes inconsistent, or, failing that, when a screened
// vector has all terms consistent. The emitted proof is the post-order walk
// of the chosen contradiction's justification DAG.

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <optional>

#include "bstghz/common_cause.hpp"

namespace bst {

namespace {

using ghz::Axis;
using ghz::Context;
using ghz::GhzVector;
using ghz::Sign;

constexpr std::size_t kFacts = ghz::kOutcomeEvents * 2;

int fact(std::size_t outcome, bool inconsistent) {
    return static_cast<int>(outcome * 2 + (inconsistent ? 1 : 0));
}
std::size_t fact_outcome(int f) { return static_cast<std::size_t>(f) / 2; }
bool fact_inconsistent(int f) { return (f % 2) == 1; }

std::string fact_text(int f) {
    return fmt::format("O {} with {}", fact_inconsistent(f) ? "inconsistent" : "consistent",
                       ghz::outcome_name(fact_outcome(f)));
}

std::size_t sibling(std::size_t outcome) { return outcome ^ 1U; }

std::string stable_of(std::size_t outcome) {
    int station = static_cast<int>(outcome / 4) + 1;
    auto axis = (outcome / 2) % 2 == 0 ? Axis::X : Axis::Y;
    return ghz::stable_name(station, axis);
}

std::string vector_text(const GhzVector &v) {
    auto idx = ghz::term_indices(v);
    return fmt::format("({}, {}, {})", ghz::outcome_name(idx[0]), ghz::outcome_name(idx[1]),
                       ghz::outcome_name(idx[2]));
}

struct Justification {
    TraceRule rule = TraceRule::CaseSplit;
    int depth = 0;
    /// Position of the earliest cited context in the caller's list.
    std::size_t key = 0;
    std::vector<Context> contexts;
    std::vector<int> premises;
    std::string note;
};

struct Rule {
    TraceRule rule;
    std::size_t key;
    std::vector<Context> contexts;
    std::vector<int> premises;
    int conclusion;
    std::string note;
};

struct Contradiction {
    bool stable_form = true;
    std::string conclusion;
    std::vector<Context> contexts;
    std::vector<int> premises;
    std::string note;
};

class Engine {
  public:
    Engine(const ghz::GhzStructure &structure, std::span<const Context> contexts)
        : structure_(structure), contexts_(contexts.begin(), contexts.end()) {
        build_rules();
    }

    /// Returns the steps of a fully closed proof, or nullopt if a branch stays open.
    std::optional<std::vector<TraceStep>> prove(std::size_t &branches) {
        return close(std::vector<int>{}, 0, branches);
    }

  private:
    using Known = std::array<std::optional<Justification>, kFacts>;

    void build_rules() {
        for (std::size_t pos = 0; pos < contexts_.size(); ++pos) {
            const auto &c = contexts_[pos];
            for (unsigned s = 0; s < 8; ++s) {
                GhzVector v{c, ghz::signs_from_index(s)};
                if (structure_.consistent(v)) {
                    continue;
                }
                auto idx = ghz::term_indices(v);
                for (std::size_t t = 0; t < idx.size(); ++t) {
                    std::vector<int> premises;
                    for (std::size_t u = 0; u < idx.size(); ++u) {
                        if (u != t) {
                            premises.push_back(fact(idx[u], false));
                        }
                    }
                    rules_.push_back(Rule{TraceRule::Screening, pos, {c}, premises,
                                          fact(idx[t], true),
                                          fmt::format("{} is inconsistent", vector_text(v))});
                }
            }
        }
        for (std::size_t outcome = 0; outcome < ghz::kOutcomeEvents; ++outcome) {
            auto users = contexts_using(outcome);
            if (users.empty()) {
                continue;
            }
            rules_.push_back(Rule{TraceRule::Existence, users.front().first, contexts_of(users),
                                  {fact(outcome, true)}, fact(sibling(outcome), false),
                                  fmt::format("O is consistent with {}", stable_of(outcome))});
        }
    }

    /// Listed contexts (position, context) whose axis at the outcome's station
    /// matches the outcome's axis.
    std::vector<std::pair<std::size_t, Context>> contexts_using(std::size_t outcome) const {
        std::vector<std::pair<std::size_t, Context>> out;
        auto station = outcome / 4;
        auto axis = (outcome / 2) % 2 == 0 ? Axis::X : Axis::Y;
        for (std::size_t pos = 0; pos < contexts_.size(); ++pos) {
            if (contexts_[pos].axes[station] == axis) {
                out.emplace_back(pos, contexts_[pos]);
            }
        }
        return out;
    }

    static std::vector<Context> contexts_of(const std::vector<std::pair<std::size_t, Context>> &v) {
        std::vector<Context> out;
        for (const auto &[pos, c] : v) {
            out.push_back(c);
        }
        return out;
    }

    Known closure(const std::vector<int> &assumed) const {
        Known known;
        for (int f : assumed) {
            known[static_cast<std::size_t>(f)] = Justification{};
        }
        for (int depth = 1;; ++depth) {
            std::array<std::optional<Justification>, kFacts> fresh;
            for (const auto &r : rules_) {
                auto target = static_cast<std::size_t>(r.conclusion);
                if (known[target]) {
                    continue;
                }
                bool ready = std::all_of(r.premises.begin(), r.premises.end(), [&](int p) {
                    return known[static_cast<std::size_t>(p)].has_value();
                });
                if (!ready) {
                    continue;
                }
                if (!fresh[target] || r.key < fresh[target]->key) {
                    fresh[target] = Justification{r.rule, depth, r.key, r.contexts, r.premises, r.note};
                }
            }
            bool any = false;
            for (std::size_t f = 0; f < kFacts; ++f) {
                if (fresh[f]) {
                    known[f] = std::move(fresh[f]);
                    any = true;
                }
            }
            if (!any) {
                return known;
            }
        }
    }

    /// Post-order list of derived facts needed for `roots`.
    static void collect(const Known &known, int f, std::vector<int> &order,
                        std::array<bool, kFacts> &seen) {
        auto i = static_cast<std::size_t>(f);
        if (seen[i]) {
            return;
        }
        seen[i] = true;
        const auto &j = *known[i];
        for (int p : j.premises) {
            collect(known, p, order, seen);
        }
        if (j.rule != TraceRule::CaseSplit) {
            order.push_back(f);
        }
    }

    std::vector<Contradiction> contradictions(const Known &known) const {
        std::vector<Contradiction> out;
        auto has = [&](int f) { return known[static_cast<std::size_t>(f)].has_value(); };
        for (std::size_t outcome = 0; outcome < ghz::kOutcomeEvents; outcome += 2) {
            auto users = contexts_using(outcome);
            if (users.empty()) {
                continue;
            }
            int minus_inc = fact(outcome, true);
            int plus_inc = fact(outcome + 1, true);
            if (has(minus_inc) && has(plus_inc)) {
                auto stable = stable_of(outcome);
                out.push_back(Contradiction{
                    true, "contradiction at " + stable, contexts_of(users), {plus_inc, minus_inc},
                    fmt::format("O must be consistent with {} but is inconsistent with {} and {}",
                                stable, ghz::outcome_name(outcome + 1), ghz::outcome_name(outcome))});
            }
        }
        for (const auto &c : contexts_) {
            for (unsigned s = 0; s < 8; ++s) {
                GhzVector v{c, ghz::signs_from_index(s)};
                if (structure_.consistent(v)) {
                    continue;
                }
                auto idx = ghz::term_indices(v);
                if (std::all_of(idx.begin(), idx.end(), [&](std::size_t k) { return has(fact(k, false)); })) {
                    out.push_back(Contradiction{
                        false, fmt::format("contradiction: CC3 violated by {}", vector_text(v)),
                        {c},
                        {fact(idx[0], false), fact(idx[1], false), fact(idx[2], false)},
                        fmt::format("O is consistent with every term of inconsistent {}",
                                    vector_text(v))});
                }
            }
        }
        return out;
    }

    /// Best contradiction: stable-event form first, then fewest steps, then
    /// the step sequence that walks the context list earliest.
    std::optional<std::pair<Contradiction, std::vector<int>>> best_contradiction(const Known &known) const {
        std::optional<std::pair<Contradiction, std::vector<int>>> best;
        std::vector<std::size_t> best_keys;
        for (auto &c : contradictions(known)) {
            std::vector<int> order;
            std::array<bool, kFacts> seen{};
            for (int p : c.premises) {
                collect(known, p, order, seen);
            }
            std::vector<std::size_t> keys;
            for (int f : order) {
                keys.push_back(known[static_cast<std::size_t>(f)]->key);
            }
            auto better = [&] {
                if (!best) {
                    return true;
                }
                if (c.stable_form != best->first.stable_form) {
                    return c.stable_form;
                }
                if (order.size() != best->second.size()) {
                    return order.size() < best->second.size();
                }
                return keys < best_keys;
            };
            if (better()) {
                best = std::make_pair(std::move(c), std::move(order));
                best_keys = std::move(keys);
            }
        }
        return best;
    }

    std::optional<std::vector<TraceStep>> close(const std::vector<int> &assumed, int depth,
                                                std::size_t &branches) const {
        auto known = closure(assumed);
        if (auto found = best_contradiction(known)) {
            std::vector<TraceStep> steps;
            for (int f : found->second) {
                const auto &j = *known[static_cast<std::size_t>(f)];
                TraceStep step{j.rule, depth, j.contexts, fact_text(f), {}};
                step.premises.push_back(j.note);
                for (int p : j.premises) {
                    step.premises.push_back(fact_text(p));
                }
                steps.push_back(std::move(step));
            }
            TraceStep last{TraceRule::Contradiction, depth, found->first.contexts,
                           found->first.conclusion, {found->first.note}};
            steps.push_back(std::move(last));
            ++branches;
            return steps;
        }

        // No contradiction yet: split on the first context whose CC2
        // requirement has no fully consistent witness vector.
        auto is_known = [&](int f) { return known[static_cast<std::size_t>(f)].has_value(); };
        for (const auto &c : contexts_) {
            std::vector<GhzVector> options;
            std::vector<GhzVector> excluded;
            bool witnessed = false;
            for (unsigned s = 0; s < 8; ++s) {
                GhzVector v{c, ghz::signs_from_index(s)};
                if (!structure_.consistent(v)) {
                    continue;
                }
                auto idx = ghz::term_indices(v);
                if (std::all_of(idx.begin(), idx.end(), [&](std::size_t k) { return is_known(fact(k, false)); })) {
                    witnessed = true;
                    break;
                }
                if (std::any_of(idx.begin(), idx.end(), [&](std::size_t k) { return is_known(fact(k, true)); })) {
                    excluded.push_back(v);
                } else {
                    options.push_back(v);
                }
            }
            if (witnessed) {
                continue;
            }

            std::vector<TraceStep> steps;
            if (options.empty()) {
                // Every consistent vector of c has a term O is inconsistent with.
                std::vector<int> order;
                std::array<bool, kFacts> seen{};
                std::vector<std::string> notes;
                for (const auto &v : excluded) {
                    for (auto k : ghz::term_indices(v)) {
                        if (is_known(fact(k, true))) {
                            collect(known, fact(k, true), order, seen);
                            notes.push_back(fmt::format("{} excluded by {}", vector_text(v),
                                                        fact_text(fact(k, true))));
                            break;
                        }
                    }
                }
                for (int f : order) {
                    const auto &j = *known[static_cast<std::size_t>(f)];
                    TraceStep step{j.rule, depth, j.contexts, fact_text(f), {j.note}};
                    for (int p : j.premises) {
                        step.premises.push_back(fact_text(p));
                    }
                    steps.push_back(std::move(step));
                }
                steps.push_back(TraceStep{TraceRule::Contradiction, depth, {c},
                                          fmt::format("contradiction: no consistent vector of {} remains",
                                                      ghz::context_nspread_name(c)),
                                          notes});
                ++branches;
                return steps;
            }

            for (std::size_t k = 0; k < options.size(); ++k) {
                const auto &v = options[k];
                TraceStep split{TraceRule::CaseSplit, depth, {c},
                                fmt::format("O consistent with {}", vector_text(v)),
                                {fmt::format("case {} of {}: consistent vectors of {} that O may be "
                                             "consistent with",
                                             k + 1, options.size(), ghz::context_nspread_name(c))}};
                for (const auto &e : excluded) {
                    split.premises.push_back(fmt::format("{} excluded", vector_text(e)));
                }
                steps.push_back(std::move(split));
                auto next = assumed;
                for (auto t : ghz::term_indices(v)) {
                    next.push_back(fact(t, false));
                }
                auto sub = close(next, depth + 1, branches);
                if (!sub) {
                    return std::nullopt;
                }
                steps.insert(steps.end(), sub->begin(), sub->end());
            }
            return steps;
        }
        return std::nullopt;
    }

    const ghz::GhzStructure &structure_;
    std::vector<Context> contexts_;
    std::vector<Rule> rules_;
};

}  // namespace

std::string_view to_string(TraceRule rule) {
    switch (rule) {
        case TraceRule::CaseSplit:
            return "CC2 case";
        case TraceRule::Screening:
            return "CC3";
        case TraceRule::Existence:
            return "CC2";
        case TraceRule::Contradiction:
            return "reductio";
    }
    return "?";
}

std::string ReductioTrace::render() const {
    std::string out;
    for (const auto &s : steps) {
        std::string ctx;
        for (const auto &c : s.contexts) {
            ctx += (ctx.empty() ? "" : ",") + ghz::context_nspread_name(c);
        }
        std::string why;
        for (const auto &p : s.premises) {
            why += (why.empty() ? "" : "; ") + p;
        }
        out += fmt::format("{:{}}{}  [{} {}: {}]\n", "", s.depth * 2, s.conclusion, to_string(s.rule),
                           ctx, why);
    }
    return out;
}

std::optional<ReductioTrace> build_reductio_trace(const ghz::GhzStructure &structure,
                                                  std::span<const ghz::Context> contexts) {
    Engine engine(structure, contexts);
    ReductioTrace trace;
    auto steps = engine.prove(trace.branches);
    if (!steps) {
        return std::nullopt;
    }
    trace.steps = std::move(*steps);
    return trace;
}

}  // namespace bst
