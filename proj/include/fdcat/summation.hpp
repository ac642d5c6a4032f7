#pragma once

#include <cmath>

namespace fdcat {

/// Neumaier's variant of Kahan summation. Unlike plain Kahan it stays exact
/// when an addend is larger in magnitude than the running sum, which is the
/// normal situation in the first terms of an alternating series.
template <typename Scalar>
class CompensatedSum {
 public:
  CompensatedSum& operator+=(Scalar value) {
    using std::abs;
    const Scalar t = sum_ + value;
    if (abs(sum_) >= abs(value)) {
      compensation_ += (sum_ - t) + value;
    } else {
      compensation_ += (value - t) + sum_;
    }
    sum_ = t;
    return *this;
  }

  Scalar value() const { return sum_ + compensation_; }

 private:
  Scalar sum_ = Scalar(0);
  Scalar compensation_ = Scalar(0);
};

}  // namespace fdcat
