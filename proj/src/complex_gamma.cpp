#include "waring/complex_gamma.hpp"

#include <array>
#include <cmath>

#include "waring/errors.hpp"

namespace waring {
namespace {

constexpr double kLanczosShift = 5.2421875;  // g + 1/2 with g = 607/128
constexpr double kSqrtTwoPi = 2.5066282746310005;
constexpr double kLanczosC0 = 0.999999999999997092;
constexpr std::array<double, 14> kLanczos = {
    57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
    -0.491913816097620199,   .339946499848118887e-4,  .465236289270485756e-4,
    -.983744753048795646e-4, .158088703224912494e-3,  -.210264441724104883e-3,
    .217439618115212643e-3,  -.164318106536763890e-3, .844182239838527433e-4,
    -.261908384015814087e-4, .368991826595316234e-5};

}  // namespace

std::complex<double> log_gamma(std::complex<double> s) {
  if (!(s.real() > 0.0)) throw DomainError("log_gamma: requires Re s > 0");
  // Below Re s = 1/2 step up once: Gamma(s) = Gamma(s + 1) / s.
  if (s.real() < 0.5) return log_gamma(s + 1.0) - std::log(s);
  const std::complex<double> t = s + kLanczosShift;
  std::complex<double> series = kLanczosC0;
  std::complex<double> y = s;
  for (const double c : kLanczos) {
    y += 1.0;
    series += c / y;
  }
  return (s + 0.5) * std::log(t) - t + std::log(kSqrtTwoPi * series / s);
}

std::complex<double> gamma(std::complex<double> s) { return std::exp(log_gamma(s)); }

}  // namespace waring
