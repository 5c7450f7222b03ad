#pragma once

#include <numbers>
#include <string>

#include "qst/dynamics.hpp"
#include "qst/model.hpp"
#include "qst/protocol.hpp"

namespace qst {

/// Unit conversions between the quoted experimental conventions and the
/// internal rad/ns / 1/ns system.  "X/2pi = v MHz" stores X = 2pi * v * 1e-3
/// rad/ns; a lifetime of t us stores the rate 1/(1e3 * t) per ns.
namespace units {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

inline double mhz_to_rad_per_ns(double v) { return two_pi * v * 1e-3; }
inline double rad_per_ns_to_mhz(double w) { return w / (two_pi * 1e-3); }
inline double ghz_to_rad_per_ns(double v) { return two_pi * v; }
inline double rad_per_ns_to_ghz(double w) { return w / two_pi; }
inline double lifetime_us_to_rate_per_ns(double t) { return 1.0 / (1e3 * t); }
inline double rate_per_ns_to_lifetime_us(double r) { return 1.0 / (1e3 * r); }

}  // namespace units

/// Run configuration in the quoted experimental units.  The defaults are the
/// simulation's reference parameter set; any key may be overridden from a
/// flat JSON object (unknown keys are rejected).
struct RunConfig {
    double Omega_over_2pi_MHz = 100.0;
    double omega_c1_over_2pi_GHz = 4.5;
    double omega_c2_over_2pi_GHz = 7.0;
    double g_over_2pi_MHz = 100.0;
    double g12_ratio = 0.1;          ///< g12 = g12_ratio * g
    double delta_over_2pi_MHz = 0.0;
    double c = 1.0;                  ///< g_fg = c * g_eg
    double gamma_phi_e_inverse_us = 1.5;
    double gamma_phi_f_inverse_us = 0.5;
    double gamma_eg_inverse_us = 2.5;
    double gamma_fe_inverse_us = 2.5;
    double gamma_fg_inverse_us = 2.5;
    double kappa_inverse_us = 20.0;  ///< photon lifetime of both resonators

    // Input amplitudes; default is the balanced superposition 1/sqrt(3) each.
    double alpha_re = 0.5773502691896258;
    double alpha_im = 0.0;
    double beta_re = 0.5773502691896258;
    double beta_im = 0.0;
    double gamma_re = 0.5773502691896258;
    double gamma_im = 0.0;

    int n_max = 1;
    double dt_ns = 0.001;
    int refine_factor = 2;
    double convergence_tol = 1e-6;
    bool reset_clock = false;
    std::string out;  ///< output path; empty selects the subcommand default

    bool operator==(const RunConfig&) const = default;

    /// Throws a parse-style error naming the offending key.
    void validate() const;

    ModelParams to_model_params() const;
    InputState input_state() const;
    IntegratorConfig integrator_config() const;
};

/// Parse a flat JSON object from a file.  Unknown keys, non-numeric values
/// and violated invariants raise std::runtime_error naming the key.
RunConfig parse_config(const std::string& path);

/// Same grammar as parse_config, reading from a string.
RunConfig parse_config_text(const std::string& text);

/// Serialize every key; parse_config_text(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

}  // namespace qst
