#include "qst/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qst {

namespace {

using nlohmann::json;

struct DoubleKey {
    const char* name;
    double RunConfig::* field;
};

constexpr DoubleKey double_keys[] = {
    {"Omega_over_2pi_MHz", &RunConfig::Omega_over_2pi_MHz},
    {"omega_c1_over_2pi_GHz", &RunConfig::omega_c1_over_2pi_GHz},
    {"omega_c2_over_2pi_GHz", &RunConfig::omega_c2_over_2pi_GHz},
    {"g_over_2pi_MHz", &RunConfig::g_over_2pi_MHz},
    {"g12_ratio", &RunConfig::g12_ratio},
    {"delta_over_2pi_MHz", &RunConfig::delta_over_2pi_MHz},
    {"c", &RunConfig::c},
    {"gamma_phi_e_inverse_us", &RunConfig::gamma_phi_e_inverse_us},
    {"gamma_phi_f_inverse_us", &RunConfig::gamma_phi_f_inverse_us},
    {"gamma_eg_inverse_us", &RunConfig::gamma_eg_inverse_us},
    {"gamma_fe_inverse_us", &RunConfig::gamma_fe_inverse_us},
    {"gamma_fg_inverse_us", &RunConfig::gamma_fg_inverse_us},
    {"kappa_inverse_us", &RunConfig::kappa_inverse_us},
    {"alpha_re", &RunConfig::alpha_re},
    {"alpha_im", &RunConfig::alpha_im},
    {"beta_re", &RunConfig::beta_re},
    {"beta_im", &RunConfig::beta_im},
    {"gamma_re", &RunConfig::gamma_re},
    {"gamma_im", &RunConfig::gamma_im},
    {"dt_ns", &RunConfig::dt_ns},
    {"convergence_tol", &RunConfig::convergence_tol},
};

[[noreturn]] void key_error(const std::string& key, const std::string& what) {
    throw std::runtime_error("config key '" + key + "': " + what);
}

void require_positive(double v, const char* key) {
    if (!std::isfinite(v) || v <= 0.0) {
        key_error(key, "must be finite and > 0");
    }
}

RunConfig parse_json(const json& j) {
    if (!j.is_object()) {
        throw std::runtime_error("config: top level must be a JSON object");
    }
    RunConfig cfg;
    for (const auto& [key, value] : j.items()) {
        bool matched = false;
        for (const DoubleKey& dk : double_keys) {
            if (key == dk.name) {
                if (!value.is_number()) {
                    key_error(key, "expected a number");
                }
                cfg.*(dk.field) = value.get<double>();
                matched = true;
                break;
            }
        }
        if (matched) {
            continue;
        }
        if (key == "n_max") {
            if (!value.is_number_integer()) {
                key_error(key, "expected an integer");
            }
            cfg.n_max = value.get<int>();
        } else if (key == "refine_factor") {
            if (!value.is_number_integer()) {
                key_error(key, "expected an integer");
            }
            cfg.refine_factor = value.get<int>();
        } else if (key == "reset_clock") {
            if (!value.is_boolean()) {
                key_error(key, "expected a boolean");
            }
            cfg.reset_clock = value.get<bool>();
        } else if (key == "out") {
            if (!value.is_string()) {
                key_error(key, "expected a string");
            }
            cfg.out = value.get<std::string>();
        } else {
            key_error(key, "unknown key");
        }
    }
    cfg.validate();
    return cfg;
}

}  // namespace

void RunConfig::validate() const {
    require_positive(Omega_over_2pi_MHz, "Omega_over_2pi_MHz");
    require_positive(omega_c1_over_2pi_GHz, "omega_c1_over_2pi_GHz");
    require_positive(omega_c2_over_2pi_GHz, "omega_c2_over_2pi_GHz");
    require_positive(g_over_2pi_MHz, "g_over_2pi_MHz");
    require_positive(gamma_phi_e_inverse_us, "gamma_phi_e_inverse_us");
    require_positive(gamma_phi_f_inverse_us, "gamma_phi_f_inverse_us");
    require_positive(gamma_eg_inverse_us, "gamma_eg_inverse_us");
    require_positive(gamma_fe_inverse_us, "gamma_fe_inverse_us");
    require_positive(gamma_fg_inverse_us, "gamma_fg_inverse_us");
    require_positive(kappa_inverse_us, "kappa_inverse_us");
    require_positive(dt_ns, "dt_ns");
    require_positive(convergence_tol, "convergence_tol");
    if (!std::isfinite(g12_ratio) || g12_ratio < 0.0) {
        key_error("g12_ratio", "must be finite and >= 0");
    }
    if (!std::isfinite(c) || c < 0.0) {
        key_error("c", "must be finite and >= 0");
    }
    if (!std::isfinite(delta_over_2pi_MHz)) {
        key_error("delta_over_2pi_MHz", "must be finite");
    }
    if (n_max < 1) {
        key_error("n_max", "must be >= 1");
    }
    if (refine_factor < 2) {
        key_error("refine_factor", "must be >= 2");
    }
    const double norm2 = alpha_re * alpha_re + alpha_im * alpha_im +
                         beta_re * beta_re + beta_im * beta_im +
                         gamma_re * gamma_re + gamma_im * gamma_im;
    if (std::abs(norm2 - 1.0) > 1e-10) {
        key_error("alpha/beta/gamma", "amplitudes must be normalized within 1e-10");
    }
}

ModelParams RunConfig::to_model_params() const {
    validate();
    ModelParams p;
    const double g = units::mhz_to_rad_per_ns(g_over_2pi_MHz);
    p.g_eg_1 = p.g_eg_2 = g;
    p.g_fg_1 = p.g_fg_2 = c * g;
    p.g12 = g12_ratio * g;
    p.delta = units::mhz_to_rad_per_ns(delta_over_2pi_MHz);
    p.omega_c1 = units::ghz_to_rad_per_ns(omega_c1_over_2pi_GHz);
    p.omega_c2 = units::ghz_to_rad_per_ns(omega_c2_over_2pi_GHz);
    p.Delta = p.omega_c2 - p.omega_c1;
    p.Omega = units::mhz_to_rad_per_ns(Omega_over_2pi_MHz);
    p.kappa_1 = p.kappa_2 = units::lifetime_us_to_rate_per_ns(kappa_inverse_us);
    p.gamma_eg = units::lifetime_us_to_rate_per_ns(gamma_eg_inverse_us);
    p.gamma_fe = units::lifetime_us_to_rate_per_ns(gamma_fe_inverse_us);
    p.gamma_fg = units::lifetime_us_to_rate_per_ns(gamma_fg_inverse_us);
    p.gamma_phi_e = units::lifetime_us_to_rate_per_ns(gamma_phi_e_inverse_us);
    p.gamma_phi_f = units::lifetime_us_to_rate_per_ns(gamma_phi_f_inverse_us);
    p.layout = SpaceLayout(n_max);
    p.validate();
    return p;
}

InputState RunConfig::input_state() const {
    InputState s;
    s.alpha = Complex(alpha_re, alpha_im);
    s.beta = Complex(beta_re, beta_im);
    s.gamma = Complex(gamma_re, gamma_im);
    s.validate();
    return s;
}

IntegratorConfig RunConfig::integrator_config() const {
    IntegratorConfig cfg;
    cfg.dt = dt_ns;
    cfg.refine_factor = refine_factor;
    cfg.convergence_tol = convergence_tol;
    return cfg;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("config: cannot open " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str());
}

RunConfig parse_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& ex) {
        throw std::runtime_error(std::string("config: invalid JSON: ") + ex.what());
    }
    return parse_json(j);
}

std::string serialize_config(const RunConfig& config) {
    json j = json::object();
    for (const DoubleKey& dk : double_keys) {
        j[dk.name] = config.*(dk.field);
    }
    j["n_max"] = config.n_max;
    j["refine_factor"] = config.refine_factor;
    j["reset_clock"] = config.reset_clock;
    j["out"] = config.out;
    return j.dump(2) + "\n";
}

}  // namespace qst
