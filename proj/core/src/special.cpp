#include "falva/special.hpp"

#include <cmath>
#include <sstream>

#include "falva/errors.hpp"

namespace falva {

double gamma_function(double x) {
  if (!std::isfinite(x)) {
    throw DomainError("gamma_function: argument must be finite");
  }
  if (x <= 0.0 && std::floor(x) == x) {
    std::ostringstream os;
    os << "gamma_function: pole at non-positive integer x=" << x;
    throw DomainError(os.str());
  }
  return std::tgamma(x);
}

}  // namespace falva
