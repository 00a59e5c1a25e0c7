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

#include "bstghz/ghz.hpp"

#include <fmt/format.h>

#include "bstghz/error.hpp"

namespace bst::ghz {

namespace {

constexpr std::array<Axis, 2> kAxes{Axis::X, Axis::Y};
constexpr std::array<Sign, 2> kSigns{Sign::Minus, Sign::Plus};

std::string spread_name(int station) { return fmt::format("sigma_{}", station); }
std::string axis_spread_name(int station, Axis a) {
    return fmt::format("sigma_{}_{}", to_char(a), station);
}
std::string star_spread_name(int station) { return fmt::format("sigma_star_{}", station); }
std::string terminal_name(const GhzVector &v) {
    std::string s;
    for (auto sign : v.signs) {
        s += to_char(sign);
    }
    return fmt::format("w_{}_{}", v.context.str(), s);
}

void add_spreads(std::map<std::string, SpreadSpec> &spreads,
                 std::map<std::string, std::vector<std::string>> &nspreads) {
    std::vector<std::string> sigma, star;
    for (int i = 1; i <= kStations; ++i) {
        spreads[spread_name(i)] = {initial_name(i), {stable_name(i, Axis::X), stable_name(i, Axis::Y)}};
        SpreadSpec star_spec{initial_name(i), {}};
        for (auto a : kAxes) {
            SpreadSpec s{stable_name(i, a), {}};
            for (auto sign : kSigns) {
                s.outcomes.push_back(outcome_name(i, a, sign));
                star_spec.outcomes.push_back(outcome_name(i, a, sign));
            }
            spreads[axis_spread_name(i, a)] = std::move(s);
        }
        spreads[star_spread_name(i)] = std::move(star_spec);
        sigma.push_back(spread_name(i));
        star.push_back(star_spread_name(i));
    }
    nspreads[kSigma123] = sigma;
    nspreads[kSigmaStar123] = star;
    for (auto c : all_contexts()) {
        std::vector<std::string> list;
        for (int i = 1; i <= kStations; ++i) {
            list.push_back(axis_spread_name(i, c.axes[static_cast<std::size_t>(i - 1)]));
        }
        nspreads[context_nspread_name(c)] = std::move(list);
    }
}

}  // namespace

char to_char(Axis a) { return a == Axis::X ? 'x' : 'y'; }
char to_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }

Context Context::parse(std::string_view text) {
    if (text.size() != kStations) {
        throw Error(ErrorCode::InvalidArgument, fmt::format("bad context '{}'", text));
    }
    Context c;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == 'x') {
            c.axes[i] = Axis::X;
        } else if (text[i] == 'y') {
            c.axes[i] = Axis::Y;
        } else {
            throw Error(ErrorCode::InvalidArgument, fmt::format("bad context '{}'", text));
        }
    }
    return c;
}

Context Context::from_index(unsigned index) {
    Context c;
    for (std::size_t i = 0; i < kStations; ++i) {
        c.axes[i] = ((index >> (kStations - 1 - i)) & 1U) != 0 ? Axis::Y : Axis::X;
    }
    return c;
}

unsigned Context::index() const {
    unsigned idx = 0;
    for (auto a : axes) {
        idx = (idx << 1) | static_cast<unsigned>(a);
    }
    return idx;
}

std::string Context::str() const {
    std::string s;
    for (auto a : axes) {
        s += to_char(a);
    }
    return s;
}

bool Context::mixed() const { return axes[0] != axes[1] || axes[1] != axes[2]; }

std::array<Context, 8> all_contexts() {
    std::array<Context, 8> out;
    for (unsigned i = 0; i < 8; ++i) {
        out[i] = Context::from_index(i);
    }
    return out;
}

std::vector<Context> theorem_contexts() {
    return {Context::parse("xxx"), Context::parse("xxy"), Context::parse("xyy"),
            Context::parse("xyx")};
}

std::vector<Context> omega_contexts() {
    return {Context::parse("xyy"), Context::parse("yxy"), Context::parse("yyx"),
            Context::parse("xxx")};
}

std::vector<Context> parse_contexts(std::string_view text) {
    std::vector<Context> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        auto end = text.find(',', start);
        if (end == std::string_view::npos) {
            end = text.size();
        }
        out.push_back(Context::parse(text.substr(start, end - start)));
        start = end + 1;
    }
    return out;
}

std::string GhzVector::str() const {
    return fmt::format("({}; {},{},{})", context.str(), to_char(signs[0]), to_char(signs[1]),
                       to_char(signs[2]));
}

Signs signs_from_index(unsigned index) {
    Signs s{};
    for (std::size_t i = 0; i < kStations; ++i) {
        s[i] = ((index >> (kStations - 1 - i)) & 1U) != 0 ? Sign::Plus : Sign::Minus;
    }
    return s;
}

unsigned signs_index(const Signs &signs) {
    unsigned idx = 0;
    for (auto s : signs) {
        idx = (idx << 1) | (s == Sign::Plus ? 1U : 0U);
    }
    return idx;
}

int minus_count(const Signs &signs) {
    int n = 0;
    for (auto s : signs) {
        n += s == Sign::Minus ? 1 : 0;
    }
    return n;
}

bool parity_consistent(const GhzVector &v) {
    bool odd = minus_count(v.signs) % 2 == 1;
    return v.context.mixed() ? !odd : odd;
}

std::string initial_name(int station) { return fmt::format("I_{}", station); }
std::string stable_name(int station, Axis axis) {
    return fmt::format("{}_{}", to_char(axis), station);
}
std::string outcome_name(int station, Axis axis, Sign sign) {
    return fmt::format("{}{}_{}", to_char(axis), to_char(sign), station);
}
std::string context_nspread_name(Context c) { return "Sigma_" + c.str(); }

std::size_t outcome_index(int station, Axis axis, Sign sign) {
    return static_cast<std::size_t>((station - 1) * 4 + static_cast<int>(axis) * 2 +
                                    (sign == Sign::Plus ? 1 : 0));
}

std::string outcome_name(std::size_t index) {
    int station = static_cast<int>(index / 4) + 1;
    auto axis = (index / 2) % 2 == 0 ? Axis::X : Axis::Y;
    auto sign = index % 2 == 0 ? Sign::Minus : Sign::Plus;
    return outcome_name(station, axis, sign);
}

std::array<std::size_t, kStations> term_indices(const GhzVector &v) {
    std::array<std::size_t, kStations> out{};
    for (std::size_t i = 0; i < kStations; ++i) {
        out[i] = outcome_index(static_cast<int>(i) + 1, v.context.axes[i], v.signs[i]);
    }
    return out;
}

GhzStructure build_abstract_structure() {
    GhzStructure g;
    for (int i = 1; i <= kStations; ++i) {
        g.initials.push_back(initial_name(i));
        for (auto a : kAxes) {
            g.stable_events.push_back(stable_name(i, a));
        }
    }
    for (std::size_t k = 0; k < kOutcomeEvents; ++k) {
        g.outcome_events.push_back(outcome_name(k));
    }
    add_spreads(g.spreads, g.nspreads);
    return g;
}

ModelDocument concrete_document() {
    ModelDocument doc;
    for (int i = 1; i <= kStations; ++i) {
        auto init = initial_name(i);
        doc.points.push_back(init);
        for (auto a : kAxes) {
            auto stable = stable_name(i, a);
            doc.points.push_back(stable);
            doc.order.emplace_back(init, stable);
            for (auto sign : kSigns) {
                auto out = outcome_name(i, a, sign);
                doc.points.push_back(out);
                doc.order.emplace_back(stable, out);
            }
        }
    }
    for (auto c : all_contexts()) {
        for (unsigned s = 0; s < 8; ++s) {
            GhzVector v{c, signs_from_index(s)};
            if (!parity_consistent(v)) {
                continue;
            }
            auto w = terminal_name(v);
            doc.points.push_back(w);
            for (std::size_t i = 0; i < kStations; ++i) {
                doc.order.emplace_back(outcome_name(static_cast<int>(i) + 1, c.axes[i], v.signs[i]), w);
            }
        }
    }
    // Every non-terminal point is a singleton event of the same name.
    for (const auto &p : doc.points) {
        if (!p.starts_with("w_")) {
            doc.events[p] = {p};
        }
    }
    add_spreads(doc.spreads, doc.nspreads);
    return doc;
}

ConcreteGhz build_concrete_model() {
    auto doc = concrete_document();
    auto scenario = Scenario::load(doc);
    return ConcreteGhz{std::move(doc), std::move(scenario), build_abstract_structure()};
}

OutcomeVector to_context_vector(const GhzVector &v) {
    OutcomeVector out;
    for (auto s : v.signs) {
        out.choice.push_back(s == Sign::Plus ? 1 : 0);
    }
    return out;
}

OutcomeVector to_star_vector(const GhzVector &v) {
    OutcomeVector out;
    for (std::size_t i = 0; i < kStations; ++i) {
        out.choice.push_back(static_cast<std::size_t>(v.context.axes[i]) * 2 +
                             (v.signs[i] == Sign::Plus ? 1 : 0));
    }
    return out;
}

GhzVector from_star_vector(const OutcomeVector &v) {
    GhzVector g;
    for (std::size_t i = 0; i < kStations; ++i) {
        g.context.axes[i] = v.choice.at(i) / 2 == 0 ? Axis::X : Axis::Y;
        g.signs[i] = v.choice.at(i) % 2 == 0 ? Sign::Minus : Sign::Plus;
    }
    return g;
}

std::vector<ProductConstraint> ghz_product_constraints() {
    return {{Context::parse("xyy"), Sign::Plus},
            {Context::parse("yxy"), Sign::Plus},
            {Context::parse("yyx"), Sign::Plus},
            {Context::parse("xxx"), Sign::Minus}};
}

ValueAssignment value_assignment_from_index(std::uint64_t index) {
    ValueAssignment v{};
    for (std::size_t k = 0; k < v.size(); ++k) {
        v[k] = ((index >> (v.size() - 1 - k)) & 1U) != 0 ? Sign::Plus : Sign::Minus;
    }
    return v;
}

ValueSearchResult value_assignment_search(std::span<const ProductConstraint> constraints,
                                          Execution exec, std::size_t witness_limit) {
    auto satisfies = [&](std::uint64_t index) {
        auto values = value_assignment_from_index(index);
        for (const auto &c : constraints) {
            int product = 1;
            for (std::size_t i = 0; i < kStations; ++i) {
                product *= value(values[i * 2 + static_cast<std::size_t>(c.context.axes[i])]);
            }
            if (product != value(c.target)) {
                return false;
            }
        }
        return true;
    };
    auto r = sweep(std::uint64_t{1} << (2 * kStations), satisfies, witness_limit, exec);
    ValueSearchResult out{r.total, r.count, {}};
    for (auto w : r.witnesses) {
        out.witnesses.push_back(value_assignment_from_index(w));
    }
    return out;
}

ContextualSearchResult contextual_assignment_search(std::span<const ProductConstraint> constraints,
                                                    Execution exec, std::size_t witness_limit) {
    const auto k = constraints.size();
    auto decode = [k](std::uint64_t index) {
        std::vector<Signs> triples(k);
        for (std::size_t c = k; c-- > 0;) {
            triples[c] = signs_from_index(static_cast<unsigned>(index & 7U));
            index >>= 3;
        }
        return triples;
    };
    auto satisfies = [&](std::uint64_t index) {
        for (std::size_t c = k; c-- > 0;) {
            auto triple = signs_from_index(static_cast<unsigned>(index & 7U));
            index >>= 3;
            if ((minus_count(triple) % 2 == 0 ? 1 : -1) != value(constraints[c].target)) {
                return false;
            }
        }
        return true;
    };
    auto r = sweep(std::uint64_t{1} << (3 * k), satisfies, witness_limit, exec);
    ContextualSearchResult out{r.total, r.count, {}};
    for (auto w : r.witnesses) {
        out.witnesses.push_back(decode(w));
    }
    return out;
}

ContextualSearchResult contextual_assignment_search() {
    auto constraints = ghz_product_constraints();
    return contextual_assignment_search(constraints);
}

}  // namespace bst::ghz
