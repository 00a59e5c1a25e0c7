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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace bst {

/// Index of a point event inside one CausalModel. Only meaningful together
/// with the model that issued it.
struct PointId {
    std::uint32_t value = 0;

    friend auto operator<=>(PointId, PointId) = default;
};

/// Fixed-universe bitset over the points of a model.
class PointSet {
  public:
    PointSet() = default;
    explicit PointSet(std::size_t universe);

    static PointSet full(std::size_t universe);

    std::size_t universe() const noexcept { return universe_; }

    bool contains(PointId p) const noexcept {
        return p.value < universe_ && ((words_[p.value >> 6] >> (p.value & 63)) & 1U) != 0;
    }
    void insert(PointId p);
    void erase(PointId p);

    std::size_t count() const noexcept;
    bool empty() const noexcept;

    bool intersects(const PointSet &other) const noexcept;
    bool is_subset_of(const PointSet &other) const noexcept;

    PointSet &operator&=(const PointSet &other);
    PointSet &operator|=(const PointSet &other);
    PointSet &operator-=(const PointSet &other);

    friend PointSet operator&(PointSet a, const PointSet &b) { return a &= b; }
    friend PointSet operator|(PointSet a, const PointSet &b) { return a |= b; }
    friend PointSet operator-(PointSet a, const PointSet &b) { return a -= b; }

    bool operator==(const PointSet &other) const = default;

    /// Members in ascending index order.
    std::vector<PointId> members() const;

    template <typename Fn>
    void for_each(Fn &&fn) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t bits = words_[w];
            while (bits != 0) {
                auto bit = static_cast<std::uint32_t>(__builtin_ctzll(bits));
                fn(PointId{static_cast<std::uint32_t>(w * 64 + bit)});
                bits &= bits - 1;
            }
        }
    }

  private:
    std::size_t universe_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace bst
