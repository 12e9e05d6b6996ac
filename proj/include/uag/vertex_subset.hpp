#pragma once

#include <algorithm>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace uag {

// Strictly increasing set of vertex indices.
class VertexSubset {
  public:
    VertexSubset() = default;
    explicit VertexSubset(std::vector<int> members) : members_(std::move(members)) {
        std::sort(members_.begin(), members_.end());
        if (std::adjacent_find(members_.begin(), members_.end()) != members_.end())
            throw std::invalid_argument("VertexSubset: duplicate member");
        if (!members_.empty() && members_.front() < 1)
            throw std::invalid_argument("VertexSubset: vertex indices start at 1");
    }
    VertexSubset(std::initializer_list<int> members)
        : VertexSubset(std::vector<int>(members)) {}

    const std::vector<int>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    bool contains(int v) const {
        return std::binary_search(members_.begin(), members_.end(), v);
    }
    auto begin() const { return members_.begin(); }
    auto end() const { return members_.end(); }

    bool operator==(const VertexSubset&) const = default;

  private:
    std::vector<int> members_;
};

}  // namespace uag
