#pragma once

#include <array>
#include <span>

namespace rheaom {

constexpr int kMaxActions = 64;

// Fixed-capacity id set; avoids heap traffic in rollout loops.
struct ActionSet {
    int count = 0;
    std::array<int, kMaxActions> ids{};

    void add(int id) { ids[static_cast<size_t>(count++)] = id; }
    bool empty() const { return count == 0; }
    std::span<const int> view() const { return {ids.data(), static_cast<size_t>(count)}; }
    bool contains(int id) const {
        for (int i = 0; i < count; ++i)
            if (ids[static_cast<size_t>(i)] == id) return true;
        return false;
    }
};

}  // namespace rheaom
