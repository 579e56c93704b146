#include <doctest.h>

#include <cmath>

#include "rotalign/errors.hpp"
#include "rotalign/molecule.hpp"
#include "rotalign/units.hpp"

using namespace rotalign;

TEST_CASE("atomic time unit") {
    CHECK(units::kAuTimeSeconds == doctest::Approx(2.4188843265857e-17).epsilon(1e-12));
}

TEST_CASE("HBr rotational period from B") {
    const double by_hand = 1.0 / (2.0 * 8.3482 * 2.99792458e10) * 1e12;
    const auto hbr = hbr_preset();
    CHECK(rotational_period_ps(hbr) == doctest::Approx(by_hand).epsilon(1e-14));
    CHECK(std::abs(rotational_period_ps(hbr) - 1.998) < 1e-3);
    CHECK(rotational_period_ps(convert_to_internal(hbr)) ==
          doctest::Approx(by_hand).epsilon(1e-12));
}

TEST_CASE("intensity and peak field") {
    CHECK(units::intensity_to_peak_field(3.50944552e16) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(units::intensity_to_peak_field(7e13) ==
          doctest::Approx(std::sqrt(7e13 / 3.50944552e16)).epsilon(1e-15));
    CHECK(units::peak_field_to_intensity(units::intensity_to_peak_field(2.5e13)) ==
          doctest::Approx(2.5e13).epsilon(1e-14));
    CHECK(units::intensity_to_peak_field(0.0) == 0.0);
    CHECK_THROWS_AS(units::intensity_to_peak_field(-1.0), DomainError);
    CHECK_THROWS_AS(units::intensity_to_peak_field(NAN), DomainError);
}

TEST_CASE("molecular unit conversions") {
    CHECK(units::debye_to_au(2.541746473) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(units::angstrom3_to_au(std::pow(0.529177210903, 3)) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(units::esu_to_hyperpolarizability_au(8.639220678e-33) == doctest::Approx(1.0));
    CHECK(units::wavenumber_to_au(219474.6313632) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(units::thermal_energy_inv_cm(1.0) == doctest::Approx(0.6950348004));
    for (double v : {0.828, 3.64, 1e-3, 17.0}) {
        CHECK(units::au_to_debye(units::debye_to_au(v)) == doctest::Approx(v).epsilon(1e-15));
        CHECK(units::au_to_angstrom5(units::angstrom5_to_au(v)) == doctest::Approx(v).epsilon(1e-15));
        CHECK(units::au_to_ps(units::ps_to_au(v)) == doctest::Approx(v).epsilon(1e-15));
    }
}
