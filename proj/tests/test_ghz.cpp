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

#include <gtest/gtest.h>

#include <algorithm>
#include <array>

#include "bstghz/common_cause.hpp"
#include "bstghz/error.hpp"
#include "bstghz/ghz.hpp"

namespace bst::ghz {
namespace {

const ConcreteGhz &concrete() {
    static const ConcreteGhz g = build_concrete_model();
    return g;
}

TEST(Ghz, ContextEncoding) {
    EXPECT_EQ(Context::parse("xxy").index(), 1U);
    EXPECT_EQ(Context::from_index(6).str(), "yyx");
    EXPECT_FALSE(Context::parse("yyy").mixed());
    EXPECT_TRUE(Context::parse("xyx").mixed());
    EXPECT_THROW(Context::parse("xz"), Error);
    EXPECT_THROW(Context::parse("xzx"), Error);
    EXPECT_THROW(parse_contexts("xxx,"), Error);
    EXPECT_EQ(parse_contexts("xxx,yyy").size(), 2U);
    auto all = all_contexts();
    EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
}

TEST(Ghz, OutcomeIndexing) {
    EXPECT_EQ(outcome_name(0), "x-_1");
    EXPECT_EQ(outcome_name(11), "y+_3");
    EXPECT_EQ(outcome_index(2, Axis::Y, Sign::Minus), 6U);
    GhzVector v{Context::parse("xyx"), {Sign::Plus, Sign::Minus, Sign::Plus}};
    EXPECT_EQ(term_indices(v), (std::array<std::size_t, 3>{1, 6, 9}));
    EXPECT_EQ(v.str(), "(xyx; +,-,+)");
}

TEST(Ghz, ParityRuleFourOfEight) {
    for (auto c : all_contexts()) {
        int consistent = 0;
        for (unsigned s = 0; s < 8; ++s) {
            consistent += parity_consistent(GhzVector{c, signs_from_index(s)}) ? 1 : 0;
        }
        EXPECT_EQ(consistent, 4) << c.str();
    }
    EXPECT_TRUE(parity_consistent({Context::parse("xxx"), {Sign::Plus, Sign::Minus, Sign::Plus}}));
    EXPECT_FALSE(parity_consistent({Context::parse("xxx"), {Sign::Plus, Sign::Plus, Sign::Plus}}));
    EXPECT_TRUE(parity_consistent({Context::parse("xxy"), {Sign::Plus, Sign::Plus, Sign::Plus}}));
}

TEST(Ghz, AbstractStructure) {
    auto g = build_abstract_structure();
    EXPECT_EQ(g.initials.size(), 3U);
    EXPECT_EQ(g.stable_events.size(), 6U);
    EXPECT_EQ(g.outcome_events.size(), 12U);
    EXPECT_EQ(g.spreads.size(), 12U);
    EXPECT_EQ(g.nspreads.size(), 10U);
    std::size_t contexts = 0;
    for (const auto &[name, list] : g.nspreads) {
        contexts += name.size() == 9 && name.starts_with("Sigma_") && name != kSigma123 ? 1 : 0;
    }
    EXPECT_EQ(contexts, 8U);
}

TEST(Ghz, ConcreteModelShape) {
    const auto &m = concrete().scenario.model();
    EXPECT_EQ(m.size(), 53U);
    EXPECT_EQ(m.histories().size(), 32U);
    EXPECT_EQ(check_prior_choice(m).status, Status::Pass);
    EXPECT_EQ(check_infima_suprema(m).status, Status::Pass);
    EXPECT_EQ(check_density(m).status, Status::Waived);
    for (const auto &[name, s] : concrete().scenario.spreads()) {
        EXPECT_TRUE(validate_spread(m, s).valid()) << name;
    }
}

TEST(Ghz, ConcreteEventsClassified) {
    const auto &sc = concrete().scenario;
    for (int i = 1; i <= kStations; ++i) {
        EXPECT_TRUE(classify_event(sc.model(), sc.event(initial_name(i))).is_initial);
        for (auto a : {Axis::X, Axis::Y}) {
            EXPECT_TRUE(classify_event(sc.model(), sc.event(stable_name(i, a))).is_stable);
            for (auto s : {Sign::Minus, Sign::Plus}) {
                EXPECT_TRUE(classify_event(sc.model(), sc.event(outcome_name(i, a, s))).is_outcome);
            }
        }
    }
}

TEST(Ghz, ConcreteGrades) {
    const auto &sc = concrete().scenario;
    const auto &m = sc.model();
    EXPECT_TRUE(is_spacelike(m, sc.nspread(kSigmaStar123)));
    EXPECT_TRUE(consistency_grade(m, sc.nspread(kSigma123)).maximal);
    for (auto c : theorem_contexts()) {
        const auto &ns = sc.nspread(context_nspread_name(c));
        auto g = consistency_grade(m, ns);
        EXPECT_TRUE(g.one) << c.str();
        EXPECT_FALSE(g.maximal) << c.str();
        EXPECT_EQ(g.inconsistent.size(), 4U) << c.str();
        EXPECT_TRUE(is_spacelike(m, ns));
    }
}

TEST(Ghz, ModelConsistencyEqualsParityOnAll64) {
    const auto &sc = concrete().scenario;
    const auto &ns = sc.nspread(kSigmaStar123);
    std::array<bool, kOutcomeEvents> used{};
    ASSERT_EQ(outcome_vector_count(ns), 64U);
    for (const auto &v : enumerate_outcome_vectors(ns)) {
        auto g = from_star_vector(v);
        EXPECT_EQ(to_star_vector(g), v);
        bool model = is_outcome_vector_consistent(sc.model(), ns, v);
        ASSERT_EQ(model, parity_consistent(g)) << g.str();
        if (model) {
            for (auto k : term_indices(g)) {
                used[k] = true;
            }
        }
        const auto &cns = sc.nspread(context_nspread_name(g.context));
        EXPECT_EQ(is_outcome_vector_consistent(sc.model(), cns, to_context_vector(g)), model);
    }
    EXPECT_TRUE(std::all_of(used.begin(), used.end(), [](bool b) { return b; }));
}

// Consistency facts, exhaustively over the concrete model's events and spreads.
TEST(GhzConsistencyFacts, SpreadInitialIffSomeOutcome) {
    const auto &sc = concrete().scenario;
    for (const auto &[sn, s] : sc.spreads()) {
        for (const auto &[en, e] : sc.events()) {
            bool with_outcome = false;
            for (const auto &o : s.outcomes) {
                with_outcome = with_outcome || consistent_unchecked(sc.model(), {}, {&e, &o});
            }
            ASSERT_EQ(consistent_unchecked(sc.model(), {&s.initial}, {&e}), with_outcome) << sn << " " << en;
        }
    }
}

TEST(GhzConsistencyFacts, InitialsIffSomeOutcomeVector) {
    const auto &sc = concrete().scenario;
    for (const auto &[nn, ns] : sc.nspreads()) {
        for (const auto &[en, e] : sc.events()) {
            bool with_vector = false;
            for (const auto &v : enumerate_outcome_vectors(ns)) {
                auto t = terms(ns, v);
                t.push_back(&e);
                with_vector = with_vector || consistent_unchecked(sc.model(), {}, t);
            }
            ASSERT_EQ(consistent_unchecked(sc.model(), ns.initials(), {&e}), with_vector) << nn << " " << en;
        }
    }
}

TEST(GhzConsistencyFacts, Monotone) {
    const auto &sc = concrete().scenario;
    EventRefs pool;
    for (int i = 1; i <= kStations; ++i) {
        pool.push_back(&sc.event(initial_name(i)));
    }
    for (std::size_t k = 0; k < kOutcomeEvents; ++k) {
        pool.push_back(&sc.event(outcome_name(k)));
    }
    auto consistent = [&](std::uint32_t mask) {
        EventRefs in, out;
        for (std::size_t k = 0; k < pool.size(); ++k) {
            if (((mask >> k) & 1U) != 0) {
                (k < kStations ? in : out).push_back(pool[k]);
            }
        }
        return is_consistent(sc.model(), in, out);
    };
    std::size_t consistent_sets = 0;
    for (std::uint32_t mask = 0; mask < (1U << pool.size()); ++mask) {
        if (!consistent(mask)) {
            continue;
        }
        ++consistent_sets;
        // Dropping one member at a time covers every subset by induction.
        for (std::size_t k = 0; k < pool.size(); ++k) {
            if (((mask >> k) & 1U) != 0) {
                ASSERT_TRUE(consistent(mask & ~(1U << k)));
            }
        }
    }
    EXPECT_GT(consistent_sets, 32U);
}

TEST(GhzConsistencyFacts, GradesNest) {
    const auto &sc = concrete().scenario;
    for (const auto &[nn, ns] : sc.nspreads()) {
        auto g = consistency_grade(sc.model(), ns);
        EXPECT_TRUE(!g.maximal || g.one) << nn;
        EXPECT_TRUE(!g.one || g.minimal) << nn;
    }
}

TEST(Ghz, ValueSearch) {
    auto cs = ghz_product_constraints();
    auto r = value_assignment_search(cs);
    EXPECT_EQ(r.total, 64U);
    EXPECT_EQ(r.satisfying, 0U);
    for (std::size_t drop = 0; drop < cs.size(); ++drop) {
        auto fewer = cs;
        fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(drop));
        EXPECT_EQ(value_assignment_search(fewer).satisfying, 8U) << drop;
    }
    auto flipped = cs;
    flipped.back().target = Sign::Plus;
    EXPECT_EQ(value_assignment_search(flipped).satisfying, 8U);
}

TEST(Ghz, ValueSearchBruteForce) {
    // Direct product over named values, no index decoding.
    auto cs = ghz_product_constraints();
    int count = 0;
    for (int x1 : {-1, 1}) for (int y1 : {-1, 1}) for (int x2 : {-1, 1})
    for (int y2 : {-1, 1}) for (int x3 : {-1, 1}) for (int y3 : {-1, 1}) {
        bool ok = x1 * y2 * y3 == 1 && y1 * x2 * y3 == 1 && y1 * y2 * x3 == 1 && x1 * x2 * x3 == -1;
        count += ok ? 1 : 0;
    }
    EXPECT_EQ(count, 0);
    EXPECT_EQ(value_assignment_search(cs).satisfying, static_cast<std::uint64_t>(count));
}

TEST(Ghz, ValueSearchInvariantUnderRelabeling) {
    std::array<int, 3> perm{0, 1, 2};
    do {
        std::vector<ProductConstraint> cs;
        for (auto c : ghz_product_constraints()) {
            ProductConstraint p = c;
            for (std::size_t i = 0; i < 3; ++i) {
                p.context.axes[static_cast<std::size_t>(perm[i])] = c.context.axes[i];
            }
            cs.push_back(p);
        }
        EXPECT_EQ(value_assignment_search(cs).satisfying, 0U);
    } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST(Ghz, ContextualSearch) {
    auto r = contextual_assignment_search();
    EXPECT_EQ(r.total, 4096U);
    EXPECT_EQ(r.satisfying, 256U);
    ASSERT_EQ(r.witnesses.size(), 1U);
    // Least witness: each context takes its smallest sign triple with the
    // target product, (-,-,+) for +1 and (-,-,-) for -1.
    auto w = r.witnesses.front();
    ASSERT_EQ(w.size(), 4U);
    EXPECT_EQ(signs_index(w[0]), 1U);
    EXPECT_EQ(signs_index(w[1]), 1U);
    EXPECT_EQ(signs_index(w[2]), 1U);
    EXPECT_EQ(signs_index(w[3]), 0U);
    auto cs = ghz_product_constraints();
    for (std::size_t k = 0; k < cs.size(); ++k) {
        int product = value(w[k][0]) * value(w[k][1]) * value(w[k][2]);
        EXPECT_EQ(product, value(cs[k].target));
    }
}

TEST(Ghz, SerialAndParallelSearchesAgree) {
    auto cs = ghz_product_constraints();
    for (std::size_t drop = 0; drop <= cs.size(); ++drop) {
        auto sub = cs;
        if (drop < cs.size()) {
            sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
        }
        auto a = value_assignment_search(sub, Execution::Serial, 64);
        auto b = value_assignment_search(sub, Execution::Parallel, 64);
        EXPECT_EQ(a.satisfying, b.satisfying);
        EXPECT_EQ(a.witnesses, b.witnesses);
        auto c = contextual_assignment_search(sub, Execution::Serial, 16);
        auto d = contextual_assignment_search(sub, Execution::Parallel, 16);
        EXPECT_EQ(c.satisfying, d.satisfying);
        EXPECT_EQ(c.witnesses, d.witnesses);
    }
}

}  // namespace
}  // namespace bst::ghz
