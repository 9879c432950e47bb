#include "waring/summation.hpp"

namespace waring {
namespace {

constexpr std::size_t kLeaf = 32;

template <typename T>
T pairwise(std::span<const T> xs) noexcept {
  if (xs.size() <= kLeaf) {
    T acc{};
    for (const T& x : xs) acc += x;
    return acc;
  }
  const std::size_t half = xs.size() / 2;
  return pairwise(xs.first(half)) + pairwise(xs.subspan(half));
}

}  // namespace

double pairwise_sum(std::span<const double> xs) noexcept { return pairwise(xs); }

std::complex<double> pairwise_sum(std::span<const std::complex<double>> xs) noexcept {
  return pairwise(xs);
}

}  // namespace waring
