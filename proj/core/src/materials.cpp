#include "lfr/materials.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lfr/errors.hpp"

namespace lfr {

namespace materials {

MaterialSpec metal() { return {"metal", 1.0, 0.0, 1e7, 0.0, 1.0, 100.0}; }

MaterialSpec concrete() { return {"concrete", 5.24, 0.0, 0.0462, 0.7822, 1.0, 100.0}; }

std::map<std::string, MaterialSpec> builtin_table() {
    std::map<std::string, MaterialSpec> t;
    for (auto m : {metal(), concrete()}) t.emplace(m.name, m);
    return t;
}

}  // namespace materials

namespace {

void check_range(const MaterialSpec& m, double f_ghz) {
    if (!m.covers(f_ghz)) {
        throw FrequencyOutOfRange(m.name, f_ghz, m.f_min_ghz, m.f_max_ghz);
    }
}

}  // namespace

double eval_eta_prime(const MaterialSpec& m, double f_ghz) {
    check_range(m, f_ghz);
    return m.a * std::pow(f_ghz, m.b);
}

double eval_sigma(const MaterialSpec& m, double f_ghz) {
    check_range(m, f_ghz);
    return m.c * std::pow(f_ghz, m.d);
}

ComplexPermittivity complex_permittivity(const MaterialSpec& m, double f_ghz) {
    // 17.98 = 1 / (2 pi eps0 * 1e9), with f in GHz.
    return {eval_eta_prime(m, f_ghz), 17.98 * eval_sigma(m, f_ghz) / f_ghz};
}

FresnelPair fresnel_coefficients(const ComplexPermittivity& eta, double cos_theta_i) {
    const double c = std::clamp(cos_theta_i, 0.0, 1.0);
    const double sin2 = 1.0 - c * c;
    const std::complex<double> e = eta.value();
    // std::sqrt on complex returns the principal root (non-negative real part).
    const std::complex<double> root = std::sqrt(e - sin2);
    FresnelPair out;
    out.gamma_te = (c - root) / (c + root);
    out.gamma_tm = (e * c - root) / (e * c + root);
    return out;
}

std::complex<double> bounce_coefficient(const ComplexPermittivity& eta, double cos_theta_i, Polarization pol) {
    const FresnelPair g = fresnel_coefficients(eta, cos_theta_i);
    switch (pol) {
        case Polarization::te:
            return g.gamma_te;
        case Polarization::tm:
            return g.gamma_tm;
        case Polarization::unpolarized: {
            const double amp = std::sqrt(0.5 * (std::norm(g.gamma_te) + std::norm(g.gamma_tm)));
            const double te_mag = std::abs(g.gamma_te);
            if (te_mag == 0.0) return {amp, 0.0};
            return g.gamma_te * (amp / te_mag);
        }
    }
    return g.gamma_te;
}

std::string to_string(Polarization pol) {
    switch (pol) {
        case Polarization::te: return "te";
        case Polarization::tm: return "tm";
        case Polarization::unpolarized: return "unpolarized";
    }
    return "te";
}

Polarization parse_polarization(const std::string& s) {
    if (s == "te") return Polarization::te;
    if (s == "tm") return Polarization::tm;
    if (s == "unpolarized") return Polarization::unpolarized;
    throw std::invalid_argument("unknown polarization '" + s + "'");
}

}  // namespace lfr
