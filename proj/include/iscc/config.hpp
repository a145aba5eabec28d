#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace iscc {

struct PathLossSpec {
    double dis = 100.0;
    double dis_ref = 100.0;
    double exponent = 2.4;
};

struct PilotSpec {
    double duration = 1.0;  // symbols
    double power = 1.0;     // watts
};

struct NoiseSpec {
    // Noise variances (power units).
    double noise_uav = 0.25;
    double noise_user = 0.25;
    double noise_eave = 0.25;
    double noise_an = 4.75;  // variance of the artificial-noise symbols

    double var_uav() const { return noise_uav; }
    double var_user() const { return noise_user; }
    double var_eave() const { return noise_eave; }
    double var_z() const { return noise_an; }
};

enum class CovarianceMode { Isotropic, RankOne };
enum class LambdaMode { Fixed, LeastSquares };

struct SensingConfig {
    double theta0_deg = 0.0;
    int grid_points = 181;
    double delta = 0.5;  // normalized antenna spacing
    CovarianceMode mode = CovarianceMode::RankOne;
    LambdaMode lambda_mode = LambdaMode::Fixed;
};

struct MoeaConfig {
    int pop_size = 100;
    int budget = 20000;  // variation evaluations after the free initial population
    double de_cr = 0.9;
    double de_f_min = 0.4;
    double de_f_max = 0.9;
    double sbx_eta = 15.0;
    double pm_eta = 20.0;
    double restart_fraction = 0.2;
    std::array<bool, 4> operators = {true, true, true, true};
};

struct DqnConfig {
    int hidden = 64;
    double learning_rate = 1e-3;
    int batch = 32;
    int buffer = 512;
    int warmup_records = 32;  // stage-2 length; see decisions ledger
    int target_sync = 50;
    double discount = 0.9;
    double eps_start = 1.0;
    double eps_end = 0.05;
    double eps_decay_frac = 0.5;  // fraction of the budget spanned by the linear decay
    double w_con = 1.0;
    double w_fea = 1.0;
    double w_div = 1.0;
};

struct SystemConfig {
    // dims
    int n_bs = 64;
    int n_uav = 8;
    int n_eave = 8;
    int n_user = 4;

    // geometry
    double dis_bs_uav = 100.0;
    double dis_uav_user = 100.0;
    double dis_bs_eave = 100.0;
    double dis_uav_eave = 100.0;
    double dis_ref = 100.0;
    double path_loss_exp = 2.4;

    // power
    double p_sum = 2.0;
    double p_uav = 1.0;   // relay pilot/transmit power
    double p_user = 1.0;  // user pilot power
    double default_p_com = 0.8;
    double default_p_sens = 0.6;

    // timing (symbols)
    double t_c_uav = 196.0;
    double t_c_bs = 196.0;
    double t_uav = 15.0;
    double t_user = 4.0;
    double t_bs = 4.0;  // undefined in the source material; exposed as config

    NoiseSpec noise;
    SensingConfig sensing;

    // Monte Carlo
    int mc_samples = 1000;
    int mc_norm_draws = 1000;

    // objective weights
    double weight_secrecy = 1.0;   // sigma_1
    double weight_aoi = 0.01;      // sigma_2
    double weight_energy = 10.0;   // sigma_3

    // constraints
    double gamma_th = 0.1;
    double iota = 1e-6;

    // decision-variable box bounds
    double mu_min = 0.05;
    double mu_max = 5.0;

    MoeaConfig moea;
    DqnConfig dqn;

    PilotSpec pilot_uav() const { return {t_uav, p_uav}; }
    PilotSpec pilot_user() const { return {t_user, p_user}; }

    double gain_bs_uav() const;
    double gain_uav_user() const;
    double gain_bs_eave() const;
    double gain_uav_eave() const;

    void validate() const;  // throws ConfigError on physically invalid values
};

/// Loads a config file (JSON). Missing keys take defaults; unknown keys are a
/// hard error naming the key. An empty file yields all defaults.
SystemConfig load_config(const std::string& path);

/// Parses config from a JSON string (empty string -> defaults).
SystemConfig parse_config(const std::string& text);

/// Canonical serialization of the effective config (sorted keys, fixed float
/// formatting). Two configs hash equal iff every field is equal.
std::string canonical_config(const SystemConfig& cfg);
std::uint64_t config_hash(const SystemConfig& cfg);

}  // namespace iscc
