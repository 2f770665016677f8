#include "orlicz/sparse_vector.hpp"

#include <algorithm>
#include <cmath>

namespace orlicz {

SparseVector SparseVector::from_entries(std::vector<Entry> entries) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.first < b.first; });
    SparseVector v;
    v.entries_.reserve(entries.size());
    std::int64_t prev = 0;
    for (const Entry& e : entries) {
        if (e.first < 1) throw DomainError("sparse vector index must be >= 1");
        if (!std::isfinite(e.second)) throw DomainError("sparse vector value must be finite");
        if (e.second == 0.0) continue;
        if (e.first == prev) throw DomainError("duplicate sparse vector index");
        prev = e.first;
        v.entries_.push_back(e);
    }
    return v;
}

double SparseVector::max_abs() const {
    double m = 0.0;
    for (const Entry& e : entries_) m = std::max(m, std::fabs(e.second));
    return m;
}

double SparseVector::lp_norm(double p) const {
    if (!(p >= 1.0)) throw DomainError("lp norm needs p >= 1");
    if (entries_.empty()) return 0.0;
    // scale by the max to avoid overflow for large p
    const double m = max_abs();
    double s = 0.0;
    for (const Entry& e : entries_) {
        const double r = std::fabs(e.second) / m;
        if (p == 2.0) s += r * r;
        else if (p == 1.0) s += r;
        else s += std::pow(r, p);
    }
    return m * std::pow(s, 1.0 / p);
}

SparseVector SparseVector::scaled(double c) const {
    if (!std::isfinite(c)) throw DomainError("scale factor must be finite");
    SparseVector v;
    if (c == 0.0) return v;
    v.entries_ = entries_;
    for (Entry& e : v.entries_) e.second *= c;
    return v;
}

SparseVector SparseVector::subtract(const SparseVector& a, const SparseVector& b) {
    SparseVector v;
    v.entries_.reserve(a.entries_.size() + b.entries_.size());
    std::size_t i = 0, j = 0;
    while (i < a.entries_.size() || j < b.entries_.size()) {
        if (j >= b.entries_.size() ||
            (i < a.entries_.size() && a.entries_[i].first < b.entries_[j].first)) {
            v.entries_.push_back(a.entries_[i++]);
        } else if (i >= a.entries_.size() || b.entries_[j].first < a.entries_[i].first) {
            v.entries_.push_back({b.entries_[j].first, -b.entries_[j].second});
            ++j;
        } else {
            const double d = a.entries_[i].second - b.entries_[j].second;
            if (d != 0.0) v.entries_.push_back({a.entries_[i].first, d});
            ++i;
            ++j;
        }
    }
    return v;
}

} // namespace orlicz
