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

// Random model generators and brute-force oracles shared by the tests. The
// oracles read only the closed order from the library and enumerate subsets
// as bitmasks.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "bstghz/causal_model.hpp"
#include "bstghz/common_cause.hpp"
#include "bstghz/events.hpp"

namespace bst::testing {

struct RandomModel {
    std::vector<std::string> labels;
    std::vector<OrderPair> order;
};

/// Random DAG: a hidden topological order, edges forward with probability
/// `density`, labels shuffled so index order is not a linear extension.
inline RandomModel random_model(std::mt19937 &rng, std::size_t n, double density) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    RandomModel m;
    for (std::size_t i = 0; i < n; ++i) {
        m.labels.push_back("p" + std::to_string(i));
    }
    std::bernoulli_distribution edge(density);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (edge(rng)) {
                m.order.emplace_back(m.labels[perm[i]], m.labels[perm[j]]);
            }
        }
    }
    return m;
}

inline CausalModel build(const RandomModel &m) { return CausalModel::build(m.labels, m.order); }

/// Closure from the raw input pairs, independent of the model's own closure.
inline std::vector<std::vector<bool>> brute_closure(const RandomModel &m) {
    auto n = m.labels.size();
    auto idx = [&](const std::string &s) {
        return static_cast<std::size_t>(std::find(m.labels.begin(), m.labels.end(), s) - m.labels.begin());
    };
    std::vector<std::vector<bool>> less(n, std::vector<bool>(n, false));
    for (const auto &[a, b] : m.order) {
        less[idx(a)][idx(b)] = true;
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (less[i][k] && less[k][j]) {
                    less[i][j] = true;
                }
            }
        }
    }
    return less;
}

using Mask = std::uint32_t;

/// Histories as maximal directed subsets, by enumerating every subset.
/// Directed: every two members have a common upper bound inside the subset.
inline std::set<Mask> brute_histories(const CausalModel &model) {
    auto n = model.size();
    auto leq = [&](std::size_t a, std::size_t b) {
        return model.precedes_or_equal(PointId{static_cast<std::uint32_t>(a)},
                                       PointId{static_cast<std::uint32_t>(b)});
    };
    std::vector<Mask> directed;
    for (Mask s = 1; s < (Mask{1} << n); ++s) {
        bool ok = true;
        for (std::size_t a = 0; a < n && ok; ++a) {
            for (std::size_t b = a + 1; b < n && ok; ++b) {
                if (!((s >> a) & 1U) || !((s >> b) & 1U)) {
                    continue;
                }
                bool bound = false;
                for (std::size_t c = 0; c < n && !bound; ++c) {
                    bound = ((s >> c) & 1U) && leq(a, c) && leq(b, c);
                }
                ok = bound;
            }
        }
        if (ok) {
            directed.push_back(s);
        }
    }
    std::set<Mask> maximal;
    for (auto s : directed) {
        bool dominated = std::any_of(directed.begin(), directed.end(),
                                     [&](Mask t) { return t != s && (s & t) == s; });
        if (!dominated) {
            maximal.insert(s);
        }
    }
    return maximal;
}

inline Mask to_mask(const PointSet &set) {
    Mask m = 0;
    set.for_each([&](PointId p) { m |= Mask{1} << p.value; });
    return m;
}

inline std::set<Mask> library_histories(const CausalModel &model) {
    std::set<Mask> out;
    for (const auto &h : model.histories()) {
        out.insert(to_mask(h.members));
    }
    return out;
}

/// Prior choice over every nonempty chain of h1 - h2, not just singletons.
inline bool brute_prior_choice(const CausalModel &model) {
    auto n = model.size();
    std::vector<std::vector<bool>> less(n, std::vector<bool>(n, false));
    for (std::uint32_t a = 0; a < n; ++a) {
        for (std::uint32_t b = 0; b < n; ++b) {
            less[a][b] = model.precedes(PointId{a}, PointId{b});
        }
    }
    auto hs = library_histories(model);
    for (auto h1 : hs) {
        for (auto h2 : hs) {
            if (h1 == h2) {
                continue;
            }
            Mask common = h1 & h2;
            std::vector<std::size_t> choices;
            for (std::size_t c = 0; c < n; ++c) {
                if (!((common >> c) & 1U)) {
                    continue;
                }
                bool top = true;
                for (std::size_t d = 0; d < n; ++d) {
                    top = top && !(((common >> d) & 1U) && less[c][d]);
                }
                if (top) {
                    choices.push_back(c);
                }
            }
            Mask diff = h1 & ~h2;
            for (Mask chain = diff; chain != 0; chain = (chain - 1) & diff) {
                bool is_chain = true;
                for (std::size_t a = 0; a < n && is_chain; ++a) {
                    for (std::size_t b = a + 1; b < n && is_chain; ++b) {
                        if (((chain >> a) & 1U) && ((chain >> b) & 1U)) {
                            is_chain = less[a][b] || less[b][a];
                        }
                    }
                }
                if (!is_chain) {
                    continue;
                }
                bool below_all = std::any_of(choices.begin(), choices.end(), [&](std::size_t c) {
                    for (std::size_t e = 0; e < n; ++e) {
                        if (((chain >> e) & 1U) && !less[c][e]) {
                            return false;
                        }
                    }
                    return true;
                });
                if (!below_all) {
                    return false;
                }
            }
        }
    }
    return true;
}

/// Consistency straight from the history masks: some history contains every
/// initial and meets every outcome.
inline bool brute_consistent(const CausalModel &model, const std::vector<Mask> &initials,
                             const std::vector<Mask> &outcomes) {
    for (auto h : library_histories(model)) {
        bool ok = true;
        for (auto i : initials) {
            ok = ok && (i & h) == i;
        }
        for (auto o : outcomes) {
            ok = ok && (o & h) != 0;
        }
        if (ok) {
            return true;
        }
    }
    return false;
}

inline Event random_event(std::mt19937 &rng, const CausalModel &model, const std::string &name) {
    std::uniform_int_distribution<std::uint32_t> pick(0, static_cast<std::uint32_t>(model.size() - 1));
    std::uniform_int_distribution<int> size(1, 3);
    Event e{name, model.empty_set()};
    for (int k = size(rng); k > 0; --k) {
        e.members.insert(PointId{pick(rng)});
    }
    return e;
}

/// Singleton events, one per point.
inline std::vector<Event> point_events(const CausalModel &model) {
    std::vector<Event> out;
    for (std::uint32_t i = 0; i < model.size(); ++i) {
        Event e{model.label(PointId{i}), model.empty_set()};
        e.members.insert(PointId{i});
        out.push_back(std::move(e));
    }
    return out;
}

/// Up to `k` atomic spreads of the model joined into one n-spread, or an
/// empty n-spread if the model has none.
inline NSpread random_nspread(std::mt19937 &rng, const CausalModel &model, std::size_t k) {
    auto candidates = atomic_spread_candidates(model);
    NSpread ns{"N", {}};
    if (candidates.empty()) {
        return ns;
    }
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    for (std::size_t i = 0; i < k; ++i) {
        ns.spreads.push_back(candidates[pick(rng)]);
    }
    return ns;
}

}  // namespace bst::testing
