#pragma once

#include <cstddef>
#include <unordered_map>
#include <vector>

namespace ccd {

// Membership labels, one per node. Detector output uses contiguous labels
// 1..k; label 0 is reserved for grouped outliers (consensus output and
// benchmark ground truth only).
struct Partition {
    std::vector<int> membership;

    Partition() = default;
    explicit Partition(std::vector<int> m) : membership(std::move(m)) {}
    Partition(std::size_t n, int label) : membership(n, label) {}

    std::size_t size() const { return membership.size(); }
    int operator[](std::size_t i) const { return membership[i]; }
    int& operator[](std::size_t i) { return membership[i]; }

    bool operator==(const Partition& o) const = default;

    // Number of distinct labels (label 0 counts as its own group if present).
    int num_communities() const {
        std::vector<int> seen;
        for (int c : membership) {
            bool found = false;
            for (int s : seen) if (s == c) { found = true; break; }
            if (!found) seen.push_back(c);
        }
        return static_cast<int>(seen.size());
    }

    // Relabels to contiguous 1..k in first-appearance order. Label 0 is kept
    // as-is when preserve_zero is set.
    void normalize(bool preserve_zero = false) {
        std::unordered_map<int, int> remap;
        int next = 1;
        for (int& c : membership) {
            if (preserve_zero && c == 0) continue;
            auto it = remap.find(c);
            if (it == remap.end()) it = remap.emplace(c, next++).first;
            c = it->second;
        }
    }
};

// True when labels are exactly 1..k (every node labeled, no gaps).
inline bool is_contiguous_partition(const Partition& p) {
    if (p.size() == 0) return false;
    int k = 0;
    for (int c : p.membership) {
        if (c < 1) return false;
        if (c > k) k = c;
    }
    std::vector<bool> seen(static_cast<std::size_t>(k) + 1, false);
    for (int c : p.membership) seen[static_cast<std::size_t>(c)] = true;
    for (int c = 1; c <= k; ++c)
        if (!seen[static_cast<std::size_t>(c)]) return false;
    return true;
}

}  // namespace ccd
