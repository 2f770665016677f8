#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "orlicz/errors.hpp"

namespace orlicz {

// Finitely supported real sequence. Entries sorted by index, indices unique
// and >= 1, no stored zeros.
class SparseVector {
public:
    using Entry = std::pair<std::int64_t, double>;

    SparseVector() = default;

    // Sorts, drops zeros, rejects duplicates / nonpositive indices / nonfinite values.
    static SparseVector from_entries(std::vector<Entry> entries);

    const std::vector<Entry>& entries() const { return entries_; }
    std::size_t support() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }

    double max_abs() const;
    double lp_norm(double p) const;       // (sum |x_i|^p)^(1/p), p >= 1
    double l2_norm() const { return lp_norm(2.0); }

    SparseVector scaled(double c) const;
    static SparseVector subtract(const SparseVector& a, const SparseVector& b);

    bool operator==(const SparseVector& o) const { return entries_ == o.entries_; }

private:
    std::vector<Entry> entries_;
};

} // namespace orlicz
