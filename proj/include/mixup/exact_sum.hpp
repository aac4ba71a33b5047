#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace mixup {

// Correctly rounded floating-point sum (Shewchuk's non-overlapping partials, with the
// half-way correction used by Python's math.fsum). The result depends only on the exact
// real sum of the inputs, not on their order.
class ExactSum {
public:
    void add(double x)
    {
        std::size_t i = 0;
        for (double y : partials_) {
            if (std::fabs(x) < std::fabs(y)) std::swap(x, y);
            const double hi = x + y;
            const double lo = y - (hi - x);
            if (lo != 0.0) partials_[i++] = lo;
            x = hi;
        }
        partials_.resize(i);
        partials_.push_back(x);
    }

    double value() const
    {
        std::size_t n = partials_.size();
        if (n == 0) return 0.0;
        double hi = partials_[--n];
        double lo = 0.0;
        while (n > 0) {
            const double x = hi;
            const double y = partials_[--n];
            hi = x + y;
            const double yr = hi - x;
            lo = y - yr;
            if (lo != 0.0) break;
        }
        if (n > 0 && ((lo < 0.0 && partials_[n - 1] < 0.0) || (lo > 0.0 && partials_[n - 1] > 0.0))) {
            const double y = lo * 2.0;
            const double x = hi + y;
            const double yr = x - hi;
            if (y == yr) hi = x;
        }
        return hi;
    }

    // Adds another exact sum without rounding (its partials represent its value exactly).
    void add(const ExactSum& other)
    {
        for (double x : other.partials_) add(x);
    }

    void clear() { partials_.clear(); }

private:
    std::vector<double> partials_;
};

template <typename Range>
double exact_sum(const Range& values)
{
    ExactSum s;
    for (double v : values) s.add(v);
    return s.value();
}

}  // namespace mixup
