#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace hdtk {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            carry_ += (sum_ - t) + x;
        } else {
            carry_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    CompensatedSum& operator+=(double x) noexcept {
        add(x);
        return *this;
    }

    double value() const noexcept { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

inline double compensated_dot(std::span<const double> a, std::span<const double> b) noexcept {
    CompensatedSum s;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s.add(a[i] * b[i]);
    }
    return s.value();
}

inline double compensated_total(std::span<const double> a) noexcept {
    CompensatedSum s;
    for (double x : a) {
        s.add(x);
    }
    return s.value();
}

} // namespace hdtk
