#pragma once

#include <complex>
#include <map>
#include <string>

namespace lfr {

/// ITU-style material: eta' = a f^b, sigma = c f^d with f in GHz.
struct MaterialSpec {
    std::string name;
    double a = 1.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
    double f_min_ghz = 1.0;
    double f_max_ghz = 100.0;

    bool covers(double f_ghz) const { return f_ghz >= f_min_ghz && f_ghz <= f_max_ghz; }
};

/// eta = real_part - j * imag_part, imag_part >= 0.
struct ComplexPermittivity {
    double real_part = 1.0;
    double imag_part = 0.0;

    std::complex<double> value() const { return {real_part, -imag_part}; }
};

struct FresnelPair {
    std::complex<double> gamma_te;
    std::complex<double> gamma_tm;
};

enum class Polarization { te, tm, unpolarized };

namespace materials {

MaterialSpec metal();
MaterialSpec concrete();

/// Table of the built-in materials keyed by name.
std::map<std::string, MaterialSpec> builtin_table();

}  // namespace materials

// All three throw FrequencyOutOfRange outside the material's validity range.
double eval_eta_prime(const MaterialSpec& m, double f_ghz);
double eval_sigma(const MaterialSpec& m, double f_ghz);
ComplexPermittivity complex_permittivity(const MaterialSpec& m, double f_ghz);

/// Smooth half-space Fresnel coefficients. cos_theta_i is clamped into [0, 1].
FresnelPair fresnel_coefficients(const ComplexPermittivity& eta, double cos_theta_i);

/// Reflection factor applied to a path amplitude at one bounce. The
/// unpolarized variant has RMS magnitude of the two branches and the TE phase.
std::complex<double> bounce_coefficient(const ComplexPermittivity& eta, double cos_theta_i, Polarization pol);

std::string to_string(Polarization pol);
/// Accepts "te", "tm" and "unpolarized"; throws std::invalid_argument otherwise.
Polarization parse_polarization(const std::string& s);

}  // namespace lfr
