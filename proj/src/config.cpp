#include "iscc/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "iscc/errors.hpp"

namespace iscc {

namespace {

double pathloss(double dis, double dis_ref, double le) {
    return std::pow(dis / dis_ref, -le);
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

using nlohmann::json;

struct Reader {
    const json& root;

    const json* find(const std::string& section, const std::string& key) const {
        auto it = root.find(section);
        if (it == root.end()) return nullptr;
        auto jt = it->find(key);
        if (jt == it->end()) return nullptr;
        return &*jt;
    }

    void num(const std::string& sec, const std::string& key, double& out) const {
        if (const json* j = find(sec, key)) {
            if (!j->is_number()) throw ConfigError("config key " + sec + "." + key + " must be a number");
            out = j->get<double>();
        }
    }

    void num(const std::string& sec, const std::string& key, int& out) const {
        if (const json* j = find(sec, key)) {
            if (!j->is_number_integer()) throw ConfigError("config key " + sec + "." + key + " must be an integer");
            out = j->get<int>();
        }
    }

    void str(const std::string& sec, const std::string& key, std::string& out) const {
        if (const json* j = find(sec, key)) {
            if (!j->is_string()) throw ConfigError("config key " + sec + "." + key + " must be a string");
            out = j->get<std::string>();
        }
    }
};

const std::vector<std::pair<std::string, std::vector<std::string>>> kKnownKeys = {
    {"dims", {"n_bs", "n_uav", "n_eave", "n_user"}},
    {"geometry",
     {"dis_bs_uav", "dis_uav_user", "dis_bs_eave", "dis_uav_eave", "dis_ref", "path_loss_exp"}},
    {"power", {"p_sum", "p_uav", "p_user", "default_p_com", "default_p_sens"}},
    {"timing", {"t_c_uav", "t_c_bs", "t_uav", "t_user", "t_bs"}},
    {"channel", {"noise_uav", "noise_user", "noise_eave", "noise_an"}},
    {"sensing", {"theta0_deg", "grid_points", "delta", "mode", "lambda_mode"}},
    {"mc", {"samples", "norm_draws"}},
    {"weights", {"s1", "s2", "s3"}},
    {"constraints", {"gamma_th", "iota"}},
    {"bounds", {"mu_min", "mu_max"}},
    {"moea",
     {"pop_size", "budget", "de_cr", "de_f_min", "de_f_max", "sbx_eta", "pm_eta",
      "restart_fraction", "operators"}},
    {"dqn",
     {"hidden", "learning_rate", "batch", "buffer", "warmup_records", "target_sync", "discount",
      "eps_start", "eps_end", "eps_decay_frac", "w_con", "w_fea", "w_div"}},
};

void reject_unknown(const json& root) {
    if (!root.is_object()) throw ConfigError("config root must be an object");
    for (auto it = root.begin(); it != root.end(); ++it) {
        const auto* entry = [&]() -> const std::vector<std::string>* {
            for (const auto& [sec, keys] : kKnownKeys)
                if (sec == it.key()) return &keys;
            return nullptr;
        }();
        if (!entry) throw ConfigError("unknown config section: " + it.key());
        if (!it->is_object()) throw ConfigError("config section " + it.key() + " must be an object");
        for (auto jt = it->begin(); jt != it->end(); ++jt) {
            bool known = false;
            for (const auto& k : *entry)
                if (k == jt.key()) known = true;
            if (!known) throw ConfigError("unknown config key: " + it.key() + "." + jt.key());
        }
    }
}

}  // namespace

double SystemConfig::gain_bs_uav() const { return pathloss(dis_bs_uav, dis_ref, path_loss_exp); }
double SystemConfig::gain_uav_user() const { return pathloss(dis_uav_user, dis_ref, path_loss_exp); }
double SystemConfig::gain_bs_eave() const { return pathloss(dis_bs_eave, dis_ref, path_loss_exp); }
double SystemConfig::gain_uav_eave() const { return pathloss(dis_uav_eave, dis_ref, path_loss_exp); }

void SystemConfig::validate() const {
    auto require = [](bool ok, const std::string& msg) {
        if (!ok) throw ConfigError(msg);
    };
    require(n_bs >= 1 && n_uav >= 1 && n_eave >= 1 && n_user >= 1, "dims.* must be positive");
    require(n_user <= n_uav && n_user <= n_bs,
            "dims.n_user must not exceed dims.n_uav or dims.n_bs (zero-forcing requires it)");
    require(n_bs > n_user, "dims.n_bs must exceed dims.n_user (artificial-noise null space)");
    require(dis_bs_uav > 0 && dis_uav_user > 0 && dis_bs_eave > 0 && dis_uav_eave > 0 &&
                dis_ref > 0,
            "geometry distances must be positive");
    require(path_loss_exp >= 0, "geometry.path_loss_exp must be non-negative");
    require(p_sum > 0, "power.p_sum must be positive");
    require(p_uav >= 0 && p_user > 0, "power.p_uav/p_user must be non-negative/positive");
    require(default_p_com > 0 && default_p_sens > 0 && default_p_com + default_p_sens < p_sum,
            "power.default_p_com/default_p_sens must leave positive artificial-noise power");
    require(t_c_uav > t_uav && t_c_bs > t_bs, "timing: coherence must exceed pilot duration");
    require(t_uav > 0 && t_user > 0 && t_bs >= 0, "timing pilot durations must be positive");
    require(noise.noise_uav > 0 && noise.noise_user > 0 && noise.noise_eave > 0 &&
                noise.noise_an > 0,
            "channel.noise_* must be positive");
    require(sensing.grid_points >= 1, "sensing.grid_points must be >= 1");
    require(sensing.delta > 0, "sensing.delta must be positive");
    require(mc_samples >= 1 && mc_norm_draws >= 1, "mc.* must be >= 1");
    require(gamma_th >= 0, "constraints.gamma_th must be non-negative");
    require(mu_min > 0 && mu_max > mu_min, "bounds: need 0 < mu_min < mu_max");
    require(moea.pop_size >= 4, "moea.pop_size must be >= 4");
    require(moea.budget >= 0, "moea.budget must be non-negative");
    require(dqn.batch >= 1 && dqn.buffer >= dqn.batch, "dqn.buffer must hold at least one batch");
    require(dqn.discount >= 0 && dqn.discount < 1, "dqn.discount must lie in [0,1)");
    require(dqn.eps_start >= 0 && dqn.eps_start <= 1 && dqn.eps_end >= 0 && dqn.eps_end <= 1,
            "dqn epsilon values must lie in [0,1]");
}

SystemConfig parse_config(const std::string& text) {
    SystemConfig cfg;
    std::string trimmed;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) trimmed.push_back(c);
    if (trimmed.empty()) {
        cfg.validate();
        return cfg;
    }

    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    reject_unknown(root);
    Reader r{root};

    r.num("dims", "n_bs", cfg.n_bs);
    r.num("dims", "n_uav", cfg.n_uav);
    r.num("dims", "n_eave", cfg.n_eave);
    r.num("dims", "n_user", cfg.n_user);

    r.num("geometry", "dis_bs_uav", cfg.dis_bs_uav);
    r.num("geometry", "dis_uav_user", cfg.dis_uav_user);
    r.num("geometry", "dis_bs_eave", cfg.dis_bs_eave);
    r.num("geometry", "dis_uav_eave", cfg.dis_uav_eave);
    r.num("geometry", "dis_ref", cfg.dis_ref);
    r.num("geometry", "path_loss_exp", cfg.path_loss_exp);

    r.num("power", "p_sum", cfg.p_sum);
    r.num("power", "p_uav", cfg.p_uav);
    r.num("power", "p_user", cfg.p_user);
    r.num("power", "default_p_com", cfg.default_p_com);
    r.num("power", "default_p_sens", cfg.default_p_sens);

    r.num("timing", "t_c_uav", cfg.t_c_uav);
    r.num("timing", "t_c_bs", cfg.t_c_bs);
    r.num("timing", "t_uav", cfg.t_uav);
    r.num("timing", "t_user", cfg.t_user);
    r.num("timing", "t_bs", cfg.t_bs);

    r.num("channel", "noise_uav", cfg.noise.noise_uav);
    r.num("channel", "noise_user", cfg.noise.noise_user);
    r.num("channel", "noise_eave", cfg.noise.noise_eave);
    r.num("channel", "noise_an", cfg.noise.noise_an);

    r.num("sensing", "theta0_deg", cfg.sensing.theta0_deg);
    r.num("sensing", "grid_points", cfg.sensing.grid_points);
    r.num("sensing", "delta", cfg.sensing.delta);
    std::string mode = "rank_one", lambda_mode = "fixed";
    if (cfg.sensing.mode == CovarianceMode::Isotropic) mode = "isotropic";
    r.str("sensing", "mode", mode);
    r.str("sensing", "lambda_mode", lambda_mode);
    if (mode == "rank_one")
        cfg.sensing.mode = CovarianceMode::RankOne;
    else if (mode == "isotropic")
        cfg.sensing.mode = CovarianceMode::Isotropic;
    else
        throw ConfigError("sensing.mode must be rank_one or isotropic, got " + mode);
    if (lambda_mode == "fixed")
        cfg.sensing.lambda_mode = LambdaMode::Fixed;
    else if (lambda_mode == "least_squares")
        cfg.sensing.lambda_mode = LambdaMode::LeastSquares;
    else
        throw ConfigError("sensing.lambda_mode must be fixed or least_squares, got " + lambda_mode);

    r.num("mc", "samples", cfg.mc_samples);
    r.num("mc", "norm_draws", cfg.mc_norm_draws);

    r.num("weights", "s1", cfg.weight_secrecy);
    r.num("weights", "s2", cfg.weight_aoi);
    r.num("weights", "s3", cfg.weight_energy);

    r.num("constraints", "gamma_th", cfg.gamma_th);
    r.num("constraints", "iota", cfg.iota);

    r.num("bounds", "mu_min", cfg.mu_min);
    r.num("bounds", "mu_max", cfg.mu_max);

    r.num("moea", "pop_size", cfg.moea.pop_size);
    r.num("moea", "budget", cfg.moea.budget);
    r.num("moea", "de_cr", cfg.moea.de_cr);
    r.num("moea", "de_f_min", cfg.moea.de_f_min);
    r.num("moea", "de_f_max", cfg.moea.de_f_max);
    r.num("moea", "sbx_eta", cfg.moea.sbx_eta);
    r.num("moea", "pm_eta", cfg.moea.pm_eta);
    r.num("moea", "restart_fraction", cfg.moea.restart_fraction);
    if (const json* j = r.find("moea", "operators")) {
        if (!j->is_array() || j->size() != 4)
            throw ConfigError("moea.operators must be an array of 4 booleans");
        for (int i = 0; i < 4; ++i) cfg.moea.operators[static_cast<size_t>(i)] = (*j)[static_cast<size_t>(i)].get<bool>();
    }

    r.num("dqn", "hidden", cfg.dqn.hidden);
    r.num("dqn", "learning_rate", cfg.dqn.learning_rate);
    r.num("dqn", "batch", cfg.dqn.batch);
    r.num("dqn", "buffer", cfg.dqn.buffer);
    r.num("dqn", "warmup_records", cfg.dqn.warmup_records);
    r.num("dqn", "target_sync", cfg.dqn.target_sync);
    r.num("dqn", "discount", cfg.dqn.discount);
    r.num("dqn", "eps_start", cfg.dqn.eps_start);
    r.num("dqn", "eps_end", cfg.dqn.eps_end);
    r.num("dqn", "eps_decay_frac", cfg.dqn.eps_decay_frac);
    r.num("dqn", "w_con", cfg.dqn.w_con);
    r.num("dqn", "w_fea", cfg.dqn.w_fea);
    r.num("dqn", "w_div", cfg.dqn.w_div);

    cfg.validate();
    return cfg;
}

SystemConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string canonical_config(const SystemConfig& c) {
    std::ostringstream os;
    auto kv = [&os](const char* key, const std::string& val) { os << key << '=' << val << '\n'; };
    auto kd = [&](const char* key, double v) { kv(key, fmt_double(v)); };
    auto ki = [&](const char* key, int v) { kv(key, std::to_string(v)); };

    ki("dims.n_bs", c.n_bs);
    ki("dims.n_eave", c.n_eave);
    ki("dims.n_uav", c.n_uav);
    ki("dims.n_user", c.n_user);
    kd("geometry.dis_bs_eave", c.dis_bs_eave);
    kd("geometry.dis_bs_uav", c.dis_bs_uav);
    kd("geometry.dis_ref", c.dis_ref);
    kd("geometry.dis_uav_eave", c.dis_uav_eave);
    kd("geometry.dis_uav_user", c.dis_uav_user);
    kd("geometry.path_loss_exp", c.path_loss_exp);
    kd("power.default_p_com", c.default_p_com);
    kd("power.default_p_sens", c.default_p_sens);
    kd("power.p_sum", c.p_sum);
    kd("power.p_uav", c.p_uav);
    kd("power.p_user", c.p_user);
    kd("timing.t_bs", c.t_bs);
    kd("timing.t_c_bs", c.t_c_bs);
    kd("timing.t_c_uav", c.t_c_uav);
    kd("timing.t_uav", c.t_uav);
    kd("timing.t_user", c.t_user);
    kd("channel.noise_an", c.noise.noise_an);
    kd("channel.noise_eave", c.noise.noise_eave);
    kd("channel.noise_uav", c.noise.noise_uav);
    kd("channel.noise_user", c.noise.noise_user);
    kd("sensing.delta", c.sensing.delta);
    ki("sensing.grid_points", c.sensing.grid_points);
    kv("sensing.lambda_mode", c.sensing.lambda_mode == LambdaMode::Fixed ? "fixed" : "least_squares");
    kv("sensing.mode", c.sensing.mode == CovarianceMode::RankOne ? "rank_one" : "isotropic");
    kd("sensing.theta0_deg", c.sensing.theta0_deg);
    ki("mc.norm_draws", c.mc_norm_draws);
    ki("mc.samples", c.mc_samples);
    kd("weights.s1", c.weight_secrecy);
    kd("weights.s2", c.weight_aoi);
    kd("weights.s3", c.weight_energy);
    kd("constraints.gamma_th", c.gamma_th);
    kd("constraints.iota", c.iota);
    kd("bounds.mu_max", c.mu_max);
    kd("bounds.mu_min", c.mu_min);
    ki("moea.budget", c.moea.budget);
    kd("moea.de_cr", c.moea.de_cr);
    kd("moea.de_f_max", c.moea.de_f_max);
    kd("moea.de_f_min", c.moea.de_f_min);
    {
        std::string ops;
        for (bool b : c.moea.operators) ops += b ? '1' : '0';
        kv("moea.operators", ops);
    }
    kd("moea.pm_eta", c.moea.pm_eta);
    ki("moea.pop_size", c.moea.pop_size);
    kd("moea.restart_fraction", c.moea.restart_fraction);
    kd("moea.sbx_eta", c.moea.sbx_eta);
    ki("dqn.batch", c.dqn.batch);
    ki("dqn.buffer", c.dqn.buffer);
    kd("dqn.discount", c.dqn.discount);
    kd("dqn.eps_decay_frac", c.dqn.eps_decay_frac);
    kd("dqn.eps_end", c.dqn.eps_end);
    kd("dqn.eps_start", c.dqn.eps_start);
    ki("dqn.hidden", c.dqn.hidden);
    kd("dqn.learning_rate", c.dqn.learning_rate);
    ki("dqn.target_sync", c.dqn.target_sync);
    ki("dqn.warmup_records", c.dqn.warmup_records);
    kd("dqn.w_con", c.dqn.w_con);
    kd("dqn.w_div", c.dqn.w_div);
    kd("dqn.w_fea", c.dqn.w_fea);
    return os.str();
}

std::uint64_t config_hash(const SystemConfig& cfg) {
    // FNV-1a over the canonical serialization.
    std::string s = canonical_config(cfg);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace iscc
