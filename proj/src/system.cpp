#include "chazy/system.hpp"

#include <algorithm>

namespace chazy {

double residual(const SystemSpec& spec, const Triple& t, const Triple& dt) {
    const Triple rhs = system_rhs(spec, t);
    const double rp = std::abs(dt.P - rhs.P) / (1.0 + std::abs(rhs.P));
    const double rq = std::abs(dt.Q - rhs.Q) / (1.0 + std::abs(rhs.Q));
    const double rr = std::abs(dt.R - rhs.R) / (1.0 + std::abs(rhs.R));
    return std::max({rp, rq, rr});
}

}  // namespace chazy
