// Disjoint-set forest with union by size and path halving.
#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace amc {

class UnionFind {
  public:
    explicit UnionFind(std::uint32_t count) : parent_(count), size_(count, 1) {
        std::iota(parent_.begin(), parent_.end(), 0u);
    }

    std::uint32_t find(std::uint32_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];  // path halving
            x = parent_[x];
        }
        return x;
    }

    // Returns true if the two elements were in different sets.
    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        return true;
    }

    std::uint32_t size_of(std::uint32_t x) { return size_[find(x)]; }
    std::uint32_t count() const { return static_cast<std::uint32_t>(parent_.size()); }

  private:
    std::vector<std::uint32_t> parent_;
    std::vector<std::uint32_t> size_;
};

}  // namespace amc
