#include "rqi/config.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "rqi/coefficients.hpp"
#include "rqi/examples.hpp"
#include "rqi/json_io.hpp"

namespace rqi {

using nlohmann::json;

nlohmann::json complex_to_json(const Complex& z) {
    return json::array({z.real(), z.imag()});
}

nlohmann::json vector_to_json(const CVector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
    return out;
}

nlohmann::json matrix_to_json(const CMatrix& m) {
    json out = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        out.push_back(row);
    }
    return out;
}

Complex complex_from_json(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw config_error(path + ": complex values must be [re, im] pairs");
    }
    return Complex(j[0].get<double>(), j[1].get<double>());
}

CVector vector_from_json(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) {
        throw config_error(path + ": expected a nonempty array of [re, im] pairs");
    }
    CVector v(Eigen::Index(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        v(Eigen::Index(i)) = complex_from_json(j[i], path + "[" + std::to_string(i) + "]");
    }
    return v;
}

CMatrix matrix_from_json(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) {
        throw config_error(path + ": expected a nonempty array of rows");
    }
    const std::size_t rows = j.size();
    if (!j[0].is_array() || j[0].empty()) {
        throw config_error(path + "[0]: expected a nonempty row");
    }
    const std::size_t cols = j[0].size();
    CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols) {
            throw config_error(path + "[" + std::to_string(i) + "]: ragged matrix rows");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            m(Eigen::Index(i), Eigen::Index(c)) = complex_from_json(
                j[i][c], path + "[" + std::to_string(i) + "][" + std::to_string(c) + "]");
        }
    }
    return m;
}

nlohmann::json coefficients_to_json(const LimitCoefficients& coeffs) {
    json out;
    out["channels"] = coeffs.channels;
    json n_blocks = json::array();
    for (int p = 0; p < coeffs.channels; ++p) {
        json row = json::array();
        for (int q = 0; q < coeffs.channels; ++q) row.push_back(matrix_to_json(coeffs.N[p][q]));
        n_blocks.push_back(row);
    }
    out["N"] = n_blocks;
    json m_blocks = json::array();
    json l_blocks = json::array();
    for (int p = 0; p < coeffs.channels; ++p) {
        m_blocks.push_back(matrix_to_json(coeffs.M[p]));
        l_blocks.push_back(matrix_to_json(coeffs.L[p]));
    }
    out["M"] = m_blocks;
    out["L"] = l_blocks;
    out["K"] = matrix_to_json(coeffs.K);
    return out;
}

namespace {

void expect_keys(const json& obj, const std::string& path,
                 const std::set<std::string>& allowed) {
    if (!obj.is_object()) throw config_error(path + ": expected an object");
    for (const auto& item : obj.items()) {
        if (allowed.count(item.key()) == 0) {
            throw config_error(path + ": unknown key \"" + item.key() + "\"");
        }
    }
}

double number_at(const json& obj, const std::string& key, const std::string& path,
                 double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) throw config_error(path + "." + key + ": expected a number");
    return obj[key].get<double>();
}

void check_hermitian_key(const CMatrix& m, const std::string& path) {
    if (m.rows() != m.cols()) {
        throw config_error(path + ": matrix must be square");
    }
    const double res = hermiticity_residual(m);
    if (res > default_tolerances().hermiticity) {
        std::ostringstream msg;
        msg << path << ": matrix must be Hermitian (relative residual " << res << ")";
        throw config_error(msg.str());
    }
}

CMatrix hermitian_matrix_at(const json& obj, const std::string& key,
                            const std::string& path, const CMatrix& fallback) {
    if (!obj.contains(key)) return fallback;
    const CMatrix m = matrix_from_json(obj[key], path + "." + key);
    check_hermitian_key(m, path + "." + key);
    return m;
}

std::vector<CMatrix> matrix_list_at(const json& obj, const std::string& key,
                                    const std::string& path, bool hermitian) {
    std::vector<CMatrix> out;
    if (!obj.contains(key)) return out;
    const json& arr = obj[key];
    if (!arr.is_array()) throw config_error(path + "." + key + ": expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string where = path + "." + key + "[" + std::to_string(i) + "]";
        out.push_back(matrix_from_json(arr[i], where));
        if (hermitian) check_hermitian_key(out.back(), where);
    }
    return out;
}

ModelSpec inline_model_from_json(const json& j, const std::string& path) {
    expect_keys(j, path,
                {"dim_initial", "dim_noise", "channels", "F_list", "lambda_list",
                 "G_list", "mu_list", "H_list", "nu_list", "chi"});
    ModelSpec model;
    for (const char* key : {"dim_initial", "dim_noise", "channels"}) {
        if (!j.contains(key) || !j[key].is_number_integer()) {
            throw config_error(path + "." + key + ": required integer");
        }
    }
    model.dim_initial = j["dim_initial"].get<Eigen::Index>();
    model.dim_noise = j["dim_noise"].get<Eigen::Index>();
    model.channels = j["channels"].get<int>();
    model.F_list = matrix_list_at(j, "F_list", path, true);
    model.lambda_list = matrix_list_at(j, "lambda_list", path, true);
    model.G_list = matrix_list_at(j, "G_list", path, true);
    model.mu_list = matrix_list_at(j, "mu_list", path, true);
    model.H_list = matrix_list_at(j, "H_list", path, true);
    model.nu_list = matrix_list_at(j, "nu_list", path, true);
    if (!j.contains("chi") || !j["chi"].is_array()) {
        throw config_error(path + ".chi: required array of vectors");
    }
    for (std::size_t i = 0; i < j["chi"].size(); ++i) {
        model.chi.push_back(
            vector_from_json(j["chi"][i], path + ".chi[" + std::to_string(i) + "]"));
    }
    try {
        check_structure(model);
    } catch (const std::invalid_argument& e) {
        throw config_error(path + ": " + e.what());
    }
    return model;
}

json inline_model_to_json(const ModelSpec& model) {
    json j;
    j["dim_initial"] = model.dim_initial;
    j["dim_noise"] = model.dim_noise;
    j["channels"] = model.channels;
    auto emit_list = [](const std::vector<CMatrix>& ops) {
        json arr = json::array();
        for (const CMatrix& m : ops) arr.push_back(matrix_to_json(m));
        return arr;
    };
    j["F_list"] = emit_list(model.F_list);
    j["lambda_list"] = emit_list(model.lambda_list);
    j["G_list"] = emit_list(model.G_list);
    j["mu_list"] = emit_list(model.mu_list);
    j["H_list"] = emit_list(model.H_list);
    j["nu_list"] = emit_list(model.nu_list);
    json chi = json::array();
    for (const CVector& v : model.chi) chi.push_back(vector_to_json(v));
    j["chi"] = chi;
    return j;
}

// Materializes the full parameter set of a named example, with overrides.
json resolve_example_params(const std::string& name, const json& params,
                            const std::string& path) {
    if (name == "spin_chain") {
        expect_keys(params, path, {"F", "G1", "G2", "H", "HK"});
        SpinChainParams p = default_spin_chain_params();
        p.F = hermitian_matrix_at(params, "F", path, p.F);
        p.G1 = hermitian_matrix_at(params, "G1", path, p.G1);
        p.G2 = hermitian_matrix_at(params, "G2", path, p.G2);
        p.H = hermitian_matrix_at(params, "H", path, p.H);
        p.HK = hermitian_matrix_at(params, "HK", path, p.HK);
        json out;
        out["F"] = matrix_to_json(p.F);
        out["G1"] = matrix_to_json(p.G1);
        out["G2"] = matrix_to_json(p.G2);
        out["H"] = matrix_to_json(p.H);
        out["HK"] = matrix_to_json(p.HK);
        return out;
    }
    if (name == "holevo_truncated") {
        expect_keys(params, path, {"F", "G", "H", "fock_cut"});
        HolevoParams p = default_holevo_params();
        p.F = hermitian_matrix_at(params, "F", path, p.F);
        if (params.contains("G")) p.G = matrix_from_json(params["G"], path + ".G");
        p.H = hermitian_matrix_at(params, "H", path, p.H);
        p.fock_cut = Eigen::Index(number_at(params, "fock_cut", path, double(p.fock_cut)));
        json out;
        out["F"] = matrix_to_json(p.F);
        out["G"] = matrix_to_json(p.G);
        out["H"] = matrix_to_json(p.H);
        out["fock_cut"] = p.fock_cut;
        return out;
    }
    if (name == "linear_system") {
        expect_keys(params, path, {"m", "mp", "ks", "osc_cut"});
        LinearSystemParams p = default_linear_system_params();
        if (params.contains("m")) p.m = complex_from_json(params["m"], path + ".m");
        if (params.contains("mp")) p.mp = complex_from_json(params["mp"], path + ".mp");
        if (params.contains("ks")) {
            const json& ks = params["ks"];
            if (!ks.is_array() || ks.size() != 6) {
                throw config_error(path + ".ks: expected six real coefficients");
            }
            for (std::size_t i = 0; i < 6; ++i) {
                if (!ks[i].is_number()) throw config_error(path + ".ks: entries must be numbers");
                p.ks[i] = ks[i].get<double>();
            }
        }
        p.osc_cut = Eigen::Index(number_at(params, "osc_cut", path, double(p.osc_cut)));
        json out;
        out["m"] = complex_to_json(p.m);
        out["mp"] = complex_to_json(p.mp);
        out["ks"] = p.ks;
        out["osc_cut"] = p.osc_cut;
        return out;
    }
    if (name == "finite_dim_approx") {
        expect_keys(params, path, {"H", "M", "growth_cap"});
        FiniteDimParams p = default_finite_dim_params();
        p.H = hermitian_matrix_at(params, "H", path, p.H);
        if (params.contains("M")) p.M = matrix_from_json(params["M"], path + ".M");
        p.growth_cap = Eigen::Index(number_at(params, "growth_cap", path, double(p.growth_cap)));
        json out;
        out["H"] = matrix_to_json(p.H);
        out["M"] = matrix_to_json(p.M);
        out["growth_cap"] = p.growth_cap;
        return out;
    }
    throw config_error(path + ": unknown example \"" + name + "\"");
}

}  // namespace

namespace {

ExampleBundle bundle_from_params_json(const std::string& name, const json& params) {
    const std::string path = "model.params";
    if (name == "spin_chain") {
        SpinChainParams p;
        p.F = matrix_from_json(params["F"], path);
        p.G1 = matrix_from_json(params["G1"], path);
        p.G2 = matrix_from_json(params["G2"], path);
        p.H = matrix_from_json(params["H"], path);
        p.HK = matrix_from_json(params["HK"], path);
        return make_bundle(p);
    }
    if (name == "holevo_truncated") {
        HolevoParams p;
        p.F = matrix_from_json(params["F"], path);
        p.G = matrix_from_json(params["G"], path);
        p.H = matrix_from_json(params["H"], path);
        p.fock_cut = params["fock_cut"].get<Eigen::Index>();
        return make_bundle(p);
    }
    if (name == "linear_system") {
        LinearSystemParams p;
        p.m = complex_from_json(params["m"], path);
        p.mp = complex_from_json(params["mp"], path);
        for (std::size_t i = 0; i < 6; ++i) p.ks[i] = params["ks"][i].get<double>();
        p.osc_cut = params["osc_cut"].get<Eigen::Index>();
        return make_bundle(p);
    }
    if (name == "finite_dim_approx") {
        FiniteDimParams p;
        p.H = matrix_from_json(params["H"], path);
        p.M = matrix_from_json(params["M"], path);
        p.growth_cap = params["growth_cap"].get<Eigen::Index>();
        return make_bundle(p);
    }
    throw config_error("unknown example \"" + name + "\"");
}

std::vector<CVector> default_witness_set(int channels) {
    const std::vector<Complex> scalars = {Complex(0, 0), Complex(1, 0), Complex(0, 1),
                                          Complex(1, 1)};
    std::vector<CVector> out;
    for (const Complex& s : scalars) {
        out.push_back(CVector::Constant(channels, s));
    }
    return out;
}

std::vector<CVector> witness_set_at(const json& obj, const std::string& key,
                                    int channels) {
    std::vector<CVector> out;
    const json& arr = obj[key];
    if (!arr.is_array() || arr.empty()) {
        throw config_error(std::string("config.") + key + ": expected a nonempty array");
    }
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string path = "config." + key + "[" + std::to_string(i) + "]";
        CVector v = vector_from_json(arr[i], path);
        if (v.size() != channels) {
            throw config_error(path + ": drive vector length must equal channels");
        }
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw config_error(std::string("config: not valid JSON: ") + e.what());
    }
    expect_keys(root, "config",
                {"model", "k_grid", "alphas", "betas", "t_max", "seed", "out",
                 "tolerances", "checks"});
    if (!root.contains("model")) throw config_error("config.model: required");

    RunConfig cfg;
    const json& model = root["model"];
    expect_keys(model, "config.model", {"example", "inline", "params"});
    if (model.contains("example") == model.contains("inline")) {
        throw config_error(
            "config.model: exactly one of \"example\" or \"inline\" is required");
    }
    if (model.contains("example")) {
        if (!model["example"].is_string()) {
            throw config_error("config.model.example: expected a string name");
        }
        cfg.example_name = model["example"].get<std::string>();
        const auto known = builtin_example_names();
        if (std::find(known.begin(), known.end(), cfg.example_name) == known.end()) {
            throw config_error("config.model.example: unknown example \"" +
                               cfg.example_name + "\"");
        }
        const json params = model.contains("params") ? model["params"] : json::object();
        const json full = resolve_example_params(cfg.example_name, params,
                                                 "config.model.params");
        cfg.example_params_json = full.dump();
        try {
            cfg.model = bundle_from_params_json(cfg.example_name, full).model;
        } catch (const std::invalid_argument& e) {
            throw config_error(std::string("config.model.params: ") + e.what());
        }
    } else {
        if (model.contains("params")) {
            throw config_error("config.model.params: only valid with \"example\"");
        }
        cfg.inline_model = inline_model_from_json(model["inline"], "config.model.inline");
        cfg.model = *cfg.inline_model;
        cfg.example_params_json = "{}";
    }

    if (root.contains("k_grid")) {
        const json& grid = root["k_grid"];
        if (!grid.is_array() || grid.empty()) {
            throw config_error("config.k_grid: expected a nonempty array");
        }
        cfg.k_grid.clear();
        for (const auto& item : grid) {
            if (!item.is_number_integer() || item.get<int>() < 0) {
                throw config_error("config.k_grid: entries must be integers >= 0");
            }
            cfg.k_grid.push_back(item.get<int>());
        }
        for (std::size_t i = 1; i < cfg.k_grid.size(); ++i) {
            if (cfg.k_grid[i] <= cfg.k_grid[i - 1]) {
                throw config_error("config.k_grid: must be strictly ascending");
            }
        }
    }

    cfg.alphas = root.contains("alphas") ? witness_set_at(root, "alphas", cfg.model.channels)
                                         : default_witness_set(cfg.model.channels);
    cfg.betas = root.contains("betas") ? witness_set_at(root, "betas", cfg.model.channels)
                                       : cfg.alphas;

    cfg.t_max = number_at(root, "t_max", "config", cfg.t_max);
    if (!(cfg.t_max > 0.0)) throw config_error("config.t_max: must be positive");
    if (root.contains("seed")) {
        if (!root["seed"].is_number_unsigned()) {
            throw config_error("config.seed: expected an unsigned integer");
        }
        cfg.seed = root["seed"].get<std::uint64_t>();
    }
    if (root.contains("out")) {
        if (!root["out"].is_string()) throw config_error("config.out: expected a string");
        cfg.out_dir = root["out"].get<std::string>();
    }

    if (root.contains("tolerances")) {
        const json& tol = root["tolerances"];
        expect_keys(tol, "config.tolerances",
                    {"spectral", "hermiticity", "unitarity", "orthonormality",
                     "contraction", "hp", "identity", "max_entries"});
        cfg.tol.spectral = number_at(tol, "spectral", "config.tolerances", cfg.tol.spectral);
        cfg.tol.hermiticity =
            number_at(tol, "hermiticity", "config.tolerances", cfg.tol.hermiticity);
        cfg.tol.unitarity = number_at(tol, "unitarity", "config.tolerances", cfg.tol.unitarity);
        cfg.tol.orthonormality =
            number_at(tol, "orthonormality", "config.tolerances", cfg.tol.orthonormality);
        cfg.tol.contraction =
            number_at(tol, "contraction", "config.tolerances", cfg.tol.contraction);
        cfg.tol.hp = number_at(tol, "hp", "config.tolerances", cfg.tol.hp);
        cfg.tol.identity = number_at(tol, "identity", "config.tolerances", cfg.tol.identity);
        cfg.tol.max_entries = std::size_t(
            number_at(tol, "max_entries", "config.tolerances", double(cfg.tol.max_entries)));
    }

    if (root.contains("checks")) {
        const json& checks = root["checks"];
        expect_keys(checks, "config.checks",
                    {"rate_window", "min_error_decrease", "jitter_allowance",
                     "semigroup_errors"});
        if (checks.contains("rate_window")) {
            const json& win = checks["rate_window"];
            if (!win.is_array() || win.size() != 2 || !win[0].is_number() ||
                !win[1].is_number()) {
                throw config_error("config.checks.rate_window: expected [lo, hi]");
            }
            cfg.checks.rate_window_lo = win[0].get<double>();
            cfg.checks.rate_window_hi = win[1].get<double>();
        }
        cfg.checks.min_error_decrease = number_at(
            checks, "min_error_decrease", "config.checks", cfg.checks.min_error_decrease);
        cfg.checks.jitter_allowance = int(number_at(checks, "jitter_allowance",
                                                    "config.checks",
                                                    cfg.checks.jitter_allowance));
        if (checks.contains("semigroup_errors")) {
            if (!checks["semigroup_errors"].is_boolean()) {
                throw config_error("config.checks.semigroup_errors: expected a boolean");
            }
            cfg.checks.semigroup_errors = checks["semigroup_errors"].get<bool>();
        }
    }
    return cfg;
}

std::string canonical_config(const RunConfig& cfg) {
    json root;
    json model;
    if (!cfg.example_name.empty()) {
        model["example"] = cfg.example_name;
        model["params"] = json::parse(cfg.example_params_json);
    } else {
        model["inline"] = inline_model_to_json(cfg.model);
    }
    root["model"] = model;
    root["k_grid"] = cfg.k_grid;
    json alphas = json::array();
    for (const CVector& a : cfg.alphas) alphas.push_back(vector_to_json(a));
    root["alphas"] = alphas;
    json betas = json::array();
    for (const CVector& b : cfg.betas) betas.push_back(vector_to_json(b));
    root["betas"] = betas;
    root["t_max"] = cfg.t_max;
    root["seed"] = cfg.seed;
    root["out"] = cfg.out_dir;
    root["tolerances"] = {{"spectral", cfg.tol.spectral},
                          {"hermiticity", cfg.tol.hermiticity},
                          {"unitarity", cfg.tol.unitarity},
                          {"orthonormality", cfg.tol.orthonormality},
                          {"contraction", cfg.tol.contraction},
                          {"hp", cfg.tol.hp},
                          {"identity", cfg.tol.identity},
                          {"max_entries", cfg.tol.max_entries}};
    root["checks"] = {{"rate_window", {cfg.checks.rate_window_lo, cfg.checks.rate_window_hi}},
                      {"min_error_decrease", cfg.checks.min_error_decrease},
                      {"jitter_allowance", cfg.checks.jitter_allowance},
                      {"semigroup_errors", cfg.checks.semigroup_errors}};
    return root.dump(2) + "\n";
}

RunConfig default_config_for_example(const std::string& name) {
    json root;
    root["model"] = {{"example", name}};
    if (name == "linear_system") {
        // Structured exponential actions per compressed-step column make the
        // full witness grid expensive; trim the default run.
        root["k_grid"] = {6, 7, 8, 9, 10, 11, 12};
        root["alphas"] = {{{0.0, 0.0}}, {{1.0, 0.0}}};
        root["checks"] = {{"rate_window", {-1.3, -0.3}}};
    }
    if (name == "holevo_truncated" || name == "finite_dim_approx") {
        // The default instances couple through parity-preserving drift terms,
        // so the half-order remainder cancels and the residual decays at first
        // order; accept anything at least half-order.
        root["checks"] = {{"rate_window", {-1.3, -0.3}}};
    }
    return parse_config(root.dump());
}

ExampleBundle resolve_bundle(const RunConfig& cfg) {
    if (!cfg.example_name.empty()) {
        return bundle_from_params_json(cfg.example_name,
                                       json::parse(cfg.example_params_json));
    }
    ExampleBundle bundle;
    bundle.name = "inline";
    bundle.model = cfg.model;
    bundle.expected = limit_coefficients(cfg.model, cfg.tol);
    bundle.u_basis_count = cfg.model.dim_initial;
    return bundle;
}

}  // namespace rqi
