#pragma once

#include <complex>
#include <cstddef>
#include <span>

namespace waring {

// Neumaier variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

class CompensatedComplexSum {
 public:
  void add(std::complex<double> x) noexcept {
    re_.add(x.real());
    im_.add(x.imag());
  }
  std::complex<double> value() const noexcept { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

// Pairwise (tree) summation. The tree shape depends only on the length, so
// results are reproducible bit for bit.
double pairwise_sum(std::span<const double> xs) noexcept;
std::complex<double> pairwise_sum(std::span<const std::complex<double>> xs) noexcept;

}  // namespace waring
