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

// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "bstghz/common_cause.hpp"
#include "bstghz/document.hpp"
#include "bstghz/ghz.hpp"
#include "bstghz/quantum.hpp"
#include "support.hpp"

namespace {

using namespace bst;

constexpr double kEigenTol = 1e-12;
constexpr double kProbTol = 1e-12;
constexpr double kTimeLimitSeconds = 1.0;
constexpr int kFactModels = 120;
constexpr std::size_t kFactMaxPoints = 10;
constexpr int kHistoryModels = 50;
constexpr std::size_t kHistoryMaxPoints = 12;

struct Outcome {
    bool pass = true;
    std::string detail;
};

struct Criterion {
    int id;
    std::string title;
    std::function<Outcome()> run;
    bool timed = false;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome theorem() {
    auto s = ghz::build_abstract_structure();
    RefuteOptions opt;
    opt.trace = true;
    auto r = refute_joint_common_cause(s, ghz::parse_contexts("xxx,xxy,xyy,xyx"), opt);
    if (r.survivors != 0 || r.total != 4096 || !r.trace) {
        return {false, fmt::format("survivors {} of {}", r.survivors, r.total)};
    }
    const std::vector<std::string> expected{
        "O consistent with (x+_1, x-_2, x+_3)", "O inconsistent with y+_3", "O consistent with y-_3",
        "O inconsistent with y+_2",             "O inconsistent with y-_2", "contradiction at y_2"};
    const auto &steps = r.trace->steps;
    bool found = false;
    for (std::size_t k = 0; k + expected.size() <= steps.size() && !found; ++k) {
        found = true;
        for (std::size_t j = 0; j < expected.size(); ++j) {
            found = found && steps[k + j].conclusion == expected[j];
        }
    }
    bool ends = steps.back().conclusion == "contradiction at y_2";
    return {found && ends, fmt::format("survivors 0 of 4096, {} branches, derivation {}", r.trace->branches,
                                       found ? "matches" : "missing")};
}

Outcome omega_family() {
    auto r = refute_joint_common_cause(ghz::build_abstract_structure(), ghz::omega_contexts());
    return {r.survivors == 0 && r.total == 4096, fmt::format("survivors {} of {}", r.survivors, r.total)};
}

Outcome eigencheck() {
    auto r = quantum::omega_eigencheck();
    const double want[] = {1, 1, 1, -1};
    bool ok = r.omegas.size() == 4 && std::abs(r.product + 1) <= kEigenTol;
    std::string vals;
    for (std::size_t k = 0; k < r.omegas.size(); ++k) {
        ok = ok && std::abs(r.omegas[k].eigenvalue - want[k]) <= kEigenTol;
        vals += fmt::format("{}{:+g}", k == 0 ? "" : ",", r.omegas[k].eigenvalue);
    }
    return {ok, fmt::format("({}), product {:+g}", vals, r.product)};
}

Outcome values() {
    auto cs = ghz::ghz_product_constraints();
    auto all = ghz::value_assignment_search(cs).satisfying;
    bool ok = all == 0;
    std::string dropped;
    for (std::size_t d = 0; d < cs.size(); ++d) {
        auto sub = cs;
        sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(d));
        auto n = ghz::value_assignment_search(sub).satisfying;
        ok = ok && n == 8;
        dropped += fmt::format("{}{}", d == 0 ? "" : ",", n);
    }
    return {ok, fmt::format("{} of 64; dropping each constraint: {}", all, dropped)};
}

Outcome contextual() {
    auto r = ghz::contextual_assignment_search();
    return {r.satisfying == 256 && r.total == 4096, fmt::format("{} of {}", r.satisfying, r.total)};
}

Outcome concrete() {
    auto g = ghz::build_concrete_model();
    const auto &m = g.scenario.model();
    bool ok = m.size() == 53 && m.histories().size() == 32;
    ok = ok && is_spacelike(m, g.scenario.nspread(ghz::kSigmaStar123));
    ok = ok && consistency_grade(m, g.scenario.nspread(ghz::kSigma123)).maximal;
    for (auto c : ghz::theorem_contexts()) {
        auto gr = consistency_grade(m, g.scenario.nspread(ghz::context_nspread_name(c)));
        ok = ok && gr.one && gr.inconsistent.size() == 4;
    }
    const auto &star = g.scenario.nspread(ghz::kSigmaStar123);
    std::size_t agree = 0;
    for (const auto &v : enumerate_outcome_vectors(star)) {
        agree += is_outcome_vector_consistent(m, star, v) == ghz::parity_consistent(ghz::from_star_vector(v)) ? 1 : 0;
    }
    ok = ok && agree == 64;
    return {ok, fmt::format("{} points, {} histories, parity agreement {}/64", m.size(), m.histories().size(), agree)};
}

/// Violations of the four consistency facts for one model and its n-spreads.
std::size_t fact1_violations(const CausalModel &m, const std::vector<Spread> &spreads,
                             const std::vector<NSpread> &nspreads, const std::vector<Event> &events) {
    std::size_t bad = 0;
    for (const auto &s : spreads) {
        for (const auto &e : events) {
            bool any = false;
            for (const auto &o : s.outcomes) {
                any = any || consistent_unchecked(m, {}, {&e, &o});
            }
            bad += consistent_unchecked(m, {&s.initial}, {&e}) != any ? 1 : 0;
        }
    }
    for (const auto &ns : nspreads) {
        for (const auto &e : events) {
            bool any = false;
            for (const auto &v : enumerate_outcome_vectors(ns)) {
                auto t = terms(ns, v);
                t.push_back(&e);
                any = any || consistent_unchecked(m, {}, t);
            }
            bad += consistent_unchecked(m, ns.initials(), {&e}) != any ? 1 : 0;
        }
        auto g = consistency_grade(m, ns);
        bad += (g.maximal && !g.one) || (g.one && !g.minimal) ? 1 : 0;
    }
    // Monotonicity: every consistent set of outcome events stays consistent
    // when one member is dropped.
    std::vector<const Event *> outs;
    for (const auto &e : events) {
        if (classify_event(m, e).is_outcome && outs.size() < 15) {
            outs.push_back(&e);
        }
    }
    for (std::uint32_t mask = 0; mask < (1U << outs.size()); ++mask) {
        EventRefs set;
        for (std::size_t k = 0; k < outs.size(); ++k) {
            if (((mask >> k) & 1U) != 0) {
                set.push_back(outs[k]);
            }
        }
        if (!consistent_unchecked(m, {}, set)) {
            continue;
        }
        for (std::size_t k = 0; k < set.size(); ++k) {
            auto smaller = set;
            smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(k));
            bad += consistent_unchecked(m, {}, smaller) ? 0 : 1;
        }
    }
    return bad;
}

Outcome fact1() {
    auto g = ghz::build_concrete_model();
    std::vector<Spread> spreads;
    std::vector<NSpread> nspreads;
    std::vector<Event> events;
    for (const auto &[n, s] : g.scenario.spreads()) spreads.push_back(s);
    for (const auto &[n, s] : g.scenario.nspreads()) nspreads.push_back(s);
    for (const auto &[n, e] : g.scenario.events()) events.push_back(e);
    auto ghz_bad = fact1_violations(g.scenario.model(), spreads, nspreads, events);

    std::mt19937 rng(2026);
    std::size_t random_bad = 0;
    for (int t = 0; t < kFactModels; ++t) {
        auto m = testing::build(testing::random_model(rng, 2 + rng() % (kFactMaxPoints - 1), 0.35));
        auto cands = atomic_spread_candidates(m);
        std::vector<NSpread> ns;
        for (int k = 0; k < 3 && !cands.empty(); ++k) {
            ns.push_back(testing::random_nspread(rng, m, 1 + rng() % 3));
        }
        std::vector<Event> evs = testing::point_events(m);
        for (int k = 0; k < 6; ++k) {
            evs.push_back(testing::random_event(rng, m, "E" + std::to_string(k)));
        }
        random_bad += fact1_violations(m, cands, ns, evs);
    }
    return {ghz_bad == 0 && random_bad == 0,
            fmt::format("GHZ model {} violations; {} random models {} violations", ghz_bad, kFactModels,
                        random_bad)};
}

Outcome positive_control() {
    auto sc = Scenario::load(load_document(BSTGHZ_SOURCE_DIR "/data/toy_decay.json"));
    const auto &ns = sc.nspread("Sigma_AB");
    std::vector<std::string> names{"a+", "b-"};
    auto v = find_outcome_vector(ns, names);
    if (!v) {
        return {false, "vector (a+, b-) missing"};
    }
    auto r = check_common_cause(sc.model(), sc.spread("decay"), ns, *v);
    return {r.passes(), fmt::format("decay spread CC1 {} CC2 {} CC3 {}", r.cc1.holds, r.cc2.holds, r.cc3.holds)};
}

Outcome discrepancy() {
    auto r = quantum::compare_with_stipulation();
    bool ok = true;
    for (auto c : ghz::omega_contexts()) {
        ok = ok && r.count(c) == 0;
    }
    for (auto name : {"xxy", "xyx", "yxx", "yyy"}) {
        ok = ok && r.count(ghz::Context::parse(name)) == 4;
    }
    for (const auto &d : r.disagreements) {
        ok = ok && std::abs(d.probability - 0.125) <= kProbTol;
    }
    return {ok, fmt::format("{} disagreements, all on xxy/xyx/yxx/yyy at p=0.125", r.disagreements.size())};
}

Outcome histories() {
    std::mt19937 rng(1212);
    int mismatches = 0;
    for (int t = 0; t < kHistoryModels; ++t) {
        auto m = testing::build(testing::random_model(rng, 1 + rng() % kHistoryMaxPoints, 0.25));
        mismatches += testing::brute_histories(m) == testing::library_histories(m) ? 0 : 1;
    }
    return {mismatches == 0, fmt::format("{} models, {} mismatches", kHistoryModels, mismatches)};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "no joint common cause for xxx,xxy,xyy,xyx", theorem, true},
        {2, "no joint common cause for xyy,yxy,yyx,xxx", omega_family, true},
        {3, "Omega eigenvalues", eigencheck},
        {4, "value-assignment impossibility", values},
        {5, "contextual satisfiability", contextual},
        {6, "concrete GHZ model", concrete, true},
        {7, "consistency facts", fact1},
        {8, "positive control (toy decay)", positive_control},
        {9, "stipulation/oracle discrepancy", discrepancy},
        {10, "histories = maximal directed subsets", histories},
    };
    int failed = 0;
    for (const auto &c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = seconds_since(t0);
        if (c.timed && secs >= kTimeLimitSeconds) {
            o.pass = false;
            o.detail += fmt::format("; too slow ({:.3f} s)", secs);
        }
        failed += o.pass ? 0 : 1;
        fmt::print("[{}] criterion {:>2}: {}: {} ({:.3f} s)\n", o.pass ? "PASS" : "FAIL", c.id, c.title,
                   o.detail, secs);
    }
    fmt::print("{} of {} criteria passed\n", criteria.size() - static_cast<std::size_t>(failed), criteria.size());
    return failed == 0 ? 0 : 1;
}
