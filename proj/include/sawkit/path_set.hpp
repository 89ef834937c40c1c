#ifndef SAWKIT_PATH_SET_HPP
#define SAWKIT_PATH_SET_HPP

#include <cstddef>
#include <vector>

#include "sawkit/vertex.hpp"

namespace sawkit {

// Open-addressing vertex set for DFS path membership.  Insertions and
// removals follow strict stack (LIFO) order, which makes plain slot clearing
// on pop safe: while an element is present, every slot on its probe prefix is
// held by an element inserted earlier, hence popped later.
class PathSet {
public:
    explicit PathSet(std::size_t max_entries = 64) {
        std::size_t size = 16;
        while (size < 4 * (max_entries + 1)) size <<= 1;
        key_.resize(size);
        occ_.assign(size, 0);
        mask_ = size - 1;
        stack_.reserve(max_entries + 1);
    }

    bool contains(const VertexId& v) const {
        for (std::size_t i = VertexHash{}(v) & mask_; occ_[i]; i = (i + 1) & mask_)
            if (key_[i] == v) return true;
        return false;
    }

    // v must not be present
    void push(const VertexId& v) {
        std::size_t i = VertexHash{}(v) & mask_;
        while (occ_[i]) i = (i + 1) & mask_;
        occ_[i] = 1;
        key_[i] = v;
        stack_.push_back(i);
    }

    // removes the most recently pushed vertex
    void pop() {
        occ_[stack_.back()] = 0;
        stack_.pop_back();
    }

    std::size_t size() const { return stack_.size(); }

private:
    std::vector<VertexId> key_;
    std::vector<char> occ_;
    std::vector<std::size_t> stack_;
    std::size_t mask_ = 0;
};

} // namespace sawkit

#endif
