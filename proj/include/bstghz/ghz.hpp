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

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bstghz/document.hpp"
#include "bstghz/sweep.hpp"

namespace bst::ghz {

inline constexpr int kStations = 3;
inline constexpr std::size_t kOutcomeEvents = 12;

enum class Axis : std::uint8_t { X = 0, Y = 1 };
enum class Sign : std::int8_t { Minus = -1, Plus = 1 };

char to_char(Axis a);
char to_char(Sign s);
inline int value(Sign s) { return static_cast<int>(s); }
inline Sign flip(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }

using Signs = std::array<Sign, kStations>;

/// Measurement axis per station, station 1 first.
struct Context {
    std::array<Axis, kStations> axes{};

    /// "xxy" -> {X, X, Y}. Throws InvalidArgument on anything else.
    static Context parse(std::string_view text);
    /// Index in [0, 8), station 1 most significant, x before y.
    static Context from_index(unsigned index);
    unsigned index() const;

    std::string str() const;
    bool mixed() const;

    auto operator<=>(const Context &) const = default;
};

/// The eight contexts in lexicographic order xxx, xxy, ..., yyy.
std::array<Context, 8> all_contexts();
/// xxx, xxy, xyy, xyx: the four 3-spreads of the no-common-cause theorem.
std::vector<Context> theorem_contexts();
/// xyy, yxy, yyx, xxx: the contexts of the four product observables.
std::vector<Context> omega_contexts();
/// Comma-separated context list ("xxx,xxy"). Throws InvalidArgument.
std::vector<Context> parse_contexts(std::string_view text);

struct GhzVector {
    Context context;
    Signs signs{};

    std::string str() const;
    auto operator<=>(const GhzVector &) const = default;
};

/// Signs decoded from 3 bits, station 1 most significant, 0 = minus.
Signs signs_from_index(unsigned index);
unsigned signs_index(const Signs &signs);
int minus_count(const Signs &signs);

/// The stipulated consistency rule: mixed axes with an even number of
/// minuses, or unmixed axes with an odd number of minuses.
bool parity_consistent(const GhzVector &v);

std::string initial_name(int station);
std::string stable_name(int station, Axis axis);
std::string outcome_name(int station, Axis axis, Sign sign);
std::string context_nspread_name(Context c);

/// Outcome events are numbered station-major, then axis, then sign (minus
/// first): 0 = x-_1, 1 = x+_1, 2 = y-_1, ..., 11 = y+_3.
std::size_t outcome_index(int station, Axis axis, Sign sign);
std::string outcome_name(std::size_t index);
/// Outcome-event indices of the three terms of `v`.
std::array<std::size_t, kStations> term_indices(const GhzVector &v);

/// Named events, spreads and 3-spreads of the three-station setup, with the
/// parity rule as its consistency oracle.
struct GhzStructure {
    std::vector<std::string> initials;        // I_i
    std::vector<std::string> stable_events;   // x_i, y_i
    std::vector<std::string> outcome_events;  // by outcome_index
    std::map<std::string, SpreadSpec> spreads;
    std::map<std::string, std::vector<std::string>> nspreads;

    bool consistent(const GhzVector &v) const { return parity_consistent(v); }
};

GhzStructure build_abstract_structure();

inline constexpr const char *kSigma123 = "Sigma_123";
inline constexpr const char *kSigmaStar123 = "Sigma_star_123";

struct ConcreteGhz {
    ModelDocument document;
    Scenario scenario;
    GhzStructure structure;
};

/// 3 x 7 station points plus one terminal point per parity-consistent
/// vector (32), each above exactly that vector's three outcome points.
ConcreteGhz build_concrete_model();
ModelDocument concrete_document();

/// Outcome vector of the context 3-spread (outcome order minus, plus).
OutcomeVector to_context_vector(const GhzVector &v);
/// Outcome vector of Sigma_star_123 (outcome order x-, x+, y-, y+).
OutcomeVector to_star_vector(const GhzVector &v);
GhzVector from_star_vector(const OutcomeVector &v);

struct ProductConstraint {
    Context context;
    Sign target;
};

/// xyy:+1, yxy:+1, yyx:+1, xxx:-1.
std::vector<ProductConstraint> ghz_product_constraints();

/// Non-contextual values V(x_1), V(y_1), V(x_2), V(y_2), V(x_3), V(y_3).
using ValueAssignment = std::array<Sign, 2 * kStations>;
ValueAssignment value_assignment_from_index(std::uint64_t index);

struct ValueSearchResult {
    std::uint64_t total = 0;
    std::uint64_t satisfying = 0;
    std::vector<ValueAssignment> witnesses;
};

/// All 2^6 station-value assignments whose three-factor products meet every
/// target.
ValueSearchResult value_assignment_search(std::span<const ProductConstraint> constraints,
                                          Execution exec = Execution::Parallel,
                                          std::size_t witness_limit = 8);

struct ContextualSearchResult {
    std::uint64_t total = 0;
    std::uint64_t satisfying = 0;
    /// One sign triple per constraint for each witness.
    std::vector<std::vector<Signs>> witnesses;
};

/// Each constraint gets its own sign triple (8^k joint assignments).
ContextualSearchResult contextual_assignment_search(std::span<const ProductConstraint> constraints,
                                                    Execution exec = Execution::Parallel,
                                                    std::size_t witness_limit = 1);
ContextualSearchResult contextual_assignment_search();

}  // namespace bst::ghz
