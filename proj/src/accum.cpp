#include "expsum/accum.hpp"

#include <cmath>
#include <string>

namespace expsum {

Complex stream_sum(std::span<const Complex> terms) {
    CompensatedAccumulator acc;
    for (size_t i = 0; i < terms.size(); ++i) {
        if (!std::isfinite(terms[i].real()) || !std::isfinite(terms[i].imag()))
            throw DomainError("stream_sum: non-finite term at index " + std::to_string(i));
        acc.add(terms[i]);
    }
    return acc.value();
}

} // namespace expsum
