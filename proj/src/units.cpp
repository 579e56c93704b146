#include "rotalign/units.hpp"

#include <cmath>
#include <string>

#include "rotalign/errors.hpp"

namespace rotalign::units {

double intensity_to_peak_field(double intensity_wcm2) {
    if (!std::isfinite(intensity_wcm2) || intensity_wcm2 < 0.0) {
        throw DomainError("intensity must be finite and non-negative, got " +
                          std::to_string(intensity_wcm2));
    }
    return std::sqrt(intensity_wcm2 / kAtomicIntensityWcm2);
}

double peak_field_to_intensity(double field_au) {
    return field_au * field_au * kAtomicIntensityWcm2;
}

} // namespace rotalign::units
