#include "swarmsim/types.hpp"

#include <string>

#include "swarmsim/errors.hpp"

namespace swarmsim {

BeliefMatrix BeliefMatrix::uniform(std::size_t n, double off_diagonal) {
  BeliefMatrix b{SquareMatrix(n, off_diagonal)};
  for (std::size_t a = 0; a < n; ++a) b.phi(a, a) = 1.0;
  return b;
}

void BeliefMatrix::check_bounds(double floor) const {
  const std::size_t n = size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const double v = phi(a, b);
      if (a == b) {
        if (v != 1.0)
          throw DomainError("belief diagonal (" + std::to_string(a) + "," +
                            std::to_string(a) + ") is " + std::to_string(v) +
                            ", expected 1");
      } else if (v < floor || v > 1.0) {
        throw DomainError("belief (" + std::to_string(a) + "," +
                          std::to_string(b) + ") = " + std::to_string(v) +
                          " outside [" + std::to_string(floor) + ", 1]");
      }
    }
  }
}

Environment Environment::uniform(std::size_t n, double off_diagonal) {
  Environment e{SquareMatrix(n, off_diagonal)};
  for (std::size_t a = 0; a < n; ++a) e.link(a, a) = 1.0;
  return e;
}

void Environment::validate() const {
  const std::size_t n = size();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const double v = link(a, b);
      if (!(v >= 0.0 && v <= 1.0))
        throw ConfigError("link efficiency (" + std::to_string(a) + "," +
                          std::to_string(b) + ") = " + std::to_string(v) +
                          " outside [0, 1]");
    }
  }
}

}  // namespace swarmsim
