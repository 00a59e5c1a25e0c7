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

#include "bstghz/point_set.hpp"

#include <algorithm>
#include <bit>

#include "bstghz/error.hpp"

namespace bst {

namespace {

void require_same_universe(std::size_t a, std::size_t b) {
    if (a != b) {
        throw Error(ErrorCode::UnknownPoint, "point sets from different models");
    }
}

}  // namespace

PointSet::PointSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

PointSet PointSet::full(std::size_t universe) {
    PointSet s(universe);
    for (std::uint32_t i = 0; i < universe; ++i) {
        s.insert(PointId{i});
    }
    return s;
}

void PointSet::insert(PointId p) {
    if (p.value >= universe_) {
        throw Error(ErrorCode::UnknownPoint, "point index out of range");
    }
    words_[p.value >> 6] |= std::uint64_t{1} << (p.value & 63);
}

void PointSet::erase(PointId p) {
    if (p.value < universe_) {
        words_[p.value >> 6] &= ~(std::uint64_t{1} << (p.value & 63));
    }
}

std::size_t PointSet::count() const noexcept {
    std::size_t n = 0;
    for (auto w : words_) {
        n += static_cast<std::size_t>(std::popcount(w));
    }
    return n;
}

bool PointSet::empty() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

bool PointSet::intersects(const PointSet &other) const noexcept {
    auto n = std::min(words_.size(), other.words_.size());
    for (std::size_t i = 0; i < n; ++i) {
        if ((words_[i] & other.words_[i]) != 0) {
            return true;
        }
    }
    return false;
}

bool PointSet::is_subset_of(const PointSet &other) const noexcept {
    for (std::size_t i = 0; i < words_.size(); ++i) {
        std::uint64_t theirs = i < other.words_.size() ? other.words_[i] : 0;
        if ((words_[i] & ~theirs) != 0) {
            return false;
        }
    }
    return true;
}

PointSet &PointSet::operator&=(const PointSet &other) {
    require_same_universe(universe_, other.universe_);
    for (std::size_t i = 0; i < words_.size(); ++i) {
        words_[i] &= other.words_[i];
    }
    return *this;
}

PointSet &PointSet::operator|=(const PointSet &other) {
    require_same_universe(universe_, other.universe_);
    for (std::size_t i = 0; i < words_.size(); ++i) {
        words_[i] |= other.words_[i];
    }
    return *this;
}

PointSet &PointSet::operator-=(const PointSet &other) {
    require_same_universe(universe_, other.universe_);
    for (std::size_t i = 0; i < words_.size(); ++i) {
        words_[i] &= ~other.words_[i];
    }
    return *this;
}

std::vector<PointId> PointSet::members() const {
    std::vector<PointId> out;
    out.reserve(count());
    for_each([&](PointId p) { out.push_back(p); });
    return out;
}

}  // namespace bst
