#include <fstream>
#include <numbers>
#include <set>
#include <stdexcept>

#include "json.hpp"
#include "vbeam/cli.hpp"

namespace vbeam {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& why) {
    throw std::invalid_argument("config field '" + field + "': " + why);
}

void require_keys(const json& obj, const std::string& path,
                  const std::set<std::string>& known) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!known.count(it.key()))
            fail(path.empty() ? it.key() : path + "." + it.key(), "unknown");
}

const json* find(const json& obj, const std::string& key) {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

double get_double(const json& obj, const std::string& key,
                  const std::string& path, double fallback,
                  bool required = false) {
    const json* v = find(obj, key);
    if (!v) {
        if (required) fail(path, "missing");
        return fallback;
    }
    if (!v->is_number()) fail(path, "must be a number");
    return v->get<double>();
}

int get_int(const json& obj, const std::string& key, const std::string& path,
            int fallback, bool required = false) {
    const json* v = find(obj, key);
    if (!v) {
        if (required) fail(path, "missing");
        return fallback;
    }
    if (!v->is_number_integer()) fail(path, "must be an integer");
    return v->get<int>();
}

std::string get_string(const json& obj, const std::string& key,
                       const std::string& path, const std::string& fallback) {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_string()) fail(path, "must be a string");
    return v->get<std::string>();
}

std::vector<double> get_double_array(const json& v, const std::string& path) {
    if (!v.is_array()) fail(path, "must be an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) fail(path, "must be an array of numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

PatternSpec parse_pattern(const json& v, const std::string& path) {
    if (!v.is_object()) fail(path, "must be an object");
    require_keys(v, path, {"kind", "params", "file", "rotation_deg"});
    PatternSpec spec;
    spec.kind = get_string(v, "kind", path + ".kind", "");
    if (spec.kind.empty()) fail(path + ".kind", "missing");
    if (spec.kind == "file") {
        spec.file = get_string(v, "file", path + ".file", "");
        if (spec.file.empty()) fail(path + ".file", "missing");
    } else {
        pattern_kind_from_string(spec.kind);  // validates the name
        if (find(v, "file")) fail(path + ".file", "only valid for kind 'file'");
    }
    if (const json* params = find(v, "params")) {
        if (!params->is_object()) fail(path + ".params", "must be an object");
        for (auto it = params->begin(); it != params->end(); ++it) {
            if (!it.value().is_number())
                fail(path + ".params." + it.key(), "must be a number");
            spec.params[it.key()] = it.value().get<double>();
        }
    }
    spec.rotation_deg =
        get_double(v, "rotation_deg", path + ".rotation_deg", 0.0);
    return spec;
}

std::vector<PatternSpec> parse_pattern_list(const json& root,
                                            const std::string& key) {
    const json* v = find(root, key);
    if (!v) return {PatternSpec{"ideal_omni", {}, "", 0.0}};
    if (v->is_object()) return {parse_pattern(*v, key)};
    if (!v->is_array()) fail(key, "must be an object or array of objects");
    if (v->empty()) fail(key, "must not be empty");
    std::vector<PatternSpec> out;
    for (std::size_t i = 0; i < v->size(); ++i)
        out.push_back(parse_pattern((*v)[i], key + "[" + std::to_string(i) + "]"));
    return out;
}

}  // namespace

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("config '" + path + "': cannot open");
    json root;
    try {
        root = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("config '" + path + "': " + e.what());
    }
    if (!root.is_object())
        throw std::invalid_argument("config '" + path +
                                    "': top level must be an object");
    require_keys(root, "",
                 {"system", "scheme", "slopes", "tx_patterns", "rx_patterns",
                  "grid", "samples", "seed", "out", "cdf", "pep", "sweep"});

    ExperimentConfig cfg;

    const json* system = find(root, "system");
    if (!system) fail("system", "missing");
    if (!system->is_object()) fail("system", "must be an object");
    require_keys(*system, "system", {"K", "T", "Tm", "Ls", "Lr", "ports"});
    const int K = get_int(*system, "K", "system.K", 0, true);
    const double T = get_double(*system, "T", "system.T", 0.1);
    const double Tm = get_double(*system, "Tm", "system.Tm", T / 100.0);
    const int ls = get_int(*system, "Ls", "system.Ls", 1);
    const int lr = get_int(*system, "Lr", "system.Lr", 1);
    cfg.system = make_config(K, T, Tm, ls, lr);
    if (const json* ports = find(*system, "ports")) {
        if (!ports->is_array()) fail("system.ports", "must be an array");
        int total = 0;
        for (const auto& p : *ports) {
            if (!p.is_number_integer() || p.get<int>() < 1)
                fail("system.ports", "entries must be integers >= 1");
            cfg.ports.push_back(p.get<int>());
            total += p.get<int>();
        }
        if (total != lr)
            fail("system.ports", "sizes sum to " + std::to_string(total) +
                                     ", expected Lr = " + std::to_string(lr));
    }

    cfg.scheme = scheme_from_string(
        get_string(root, "scheme", "scheme", "abn"));

    if (const json* slopes = find(root, "slopes")) {
        if (!slopes->is_object()) fail("slopes", "must be an object");
        require_keys(*slopes, "slopes",
                     {"source", "variant", "Lrmax", "Lsmax", "tx", "rx"});
        cfg.slope_source =
            get_string(*slopes, "source", "slopes.source", "construct");
        if (cfg.slope_source != "construct" && cfg.slope_source != "explicit" &&
            cfg.slope_source != "search")
            fail("slopes.source", "must be construct, explicit or search");
        const std::string variant =
            get_string(*slopes, "variant", "slopes.variant", "primary");
        if (variant == "primary") {
            cfg.variant = ConstructVariant::Primary;
        } else if (variant == "reciprocal") {
            cfg.variant = ConstructVariant::Reciprocal;
        } else {
            fail("slopes.variant", "must be primary or reciprocal");
        }
        cfg.lrmax = get_int(*slopes, "Lrmax", "slopes.Lrmax", 0);
        cfg.lsmax = get_int(*slopes, "Lsmax", "slopes.Lsmax", 0);
        if (cfg.lrmax < 0 || cfg.lsmax < 0)
            fail("slopes.Lrmax", "must be >= 0");
        if (const json* tx = find(*slopes, "tx"))
            cfg.tx_slopes = get_double_array(*tx, "slopes.tx");
        if (const json* rx = find(*slopes, "rx"))
            cfg.rx_slopes = get_double_array(*rx, "slopes.rx");
        if (cfg.slope_source == "explicit") {
            if (cfg.rx_slopes.size() != static_cast<std::size_t>(lr))
                fail("slopes.rx", "needs exactly Lr = " + std::to_string(lr) +
                                      " values");
            if (!cfg.tx_slopes.empty() &&
                cfg.tx_slopes.size() != static_cast<std::size_t>(ls))
                fail("slopes.tx", "needs Ls = " + std::to_string(ls) +
                                      " values (or omit)");
        }
    }

    cfg.tx_patterns = parse_pattern_list(root, "tx_patterns");
    cfg.rx_patterns = parse_pattern_list(root, "rx_patterns");

    if (const json* grid = find(root, "grid")) {
        if (!grid->is_object()) fail("grid", "must be an object");
        require_keys(*grid, "grid",
                     {"psi_points", "slope_points", "slope_range",
                      "angle_points"});
        cfg.grid.psi_points =
            get_int(*grid, "psi_points", "grid.psi_points", 33);
        cfg.grid.slope_points =
            get_int(*grid, "slope_points", "grid.slope_points", 17);
        cfg.grid.angle_points =
            get_int(*grid, "angle_points", "grid.angle_points", 360);
        if (const json* range = find(*grid, "slope_range")) {
            auto vals = get_double_array(*range, "grid.slope_range");
            if (vals.size() != 2)
                fail("grid.slope_range", "needs exactly [lo, hi]");
            cfg.grid.slope_range = {vals[0], vals[1]};
        }
        validate_grid(cfg.grid);
    }

    {
        const json* v = find(root, "samples");
        if (v) {
            if (!v->is_number_integer() || v->get<long long>() < 1)
                fail("samples", "must be a positive integer");
            cfg.samples = v->get<std::size_t>();
        }
    }
    {
        const json* v = find(root, "seed");
        if (v) {
            if (!v->is_number_integer() || v->get<long long>() < 0)
                fail("seed", "must be a nonnegative integer");
            cfg.seed = v->get<std::uint64_t>();
        }
    }
    cfg.out_dir = get_string(root, "out", "out", "");

    if (const json* cdf = find(root, "cdf")) {
        if (!cdf->is_object()) fail("cdf", "must be an object");
        require_keys(*cdf, "cdf", {"schemes", "psi_policy"});
        if (const json* schemes = find(*cdf, "schemes")) {
            if (!schemes->is_array()) fail("cdf.schemes", "must be an array");
            for (const auto& s : *schemes) {
                if (!s.is_string()) fail("cdf.schemes", "entries must be strings");
                const std::string name = s.get<std::string>();
                if (name != "mrc") scheme_from_string(name);  // validates
                cfg.cdf_schemes.push_back(name);
            }
        }
        cfg.psi_policy = psi_policy_from_string(
            get_string(*cdf, "psi_policy", "cdf.psi_policy", "uniform"));
    }
    if (cfg.cdf_schemes.empty()) cfg.cdf_schemes = {to_string(cfg.scheme)};

    if (const json* pep = find(root, "pep")) {
        if (!pep->is_object()) fail("pep", "must be an object");
        require_keys(*pep, "pep", {"scale", "rho"});
        cfg.pep.scale = get_double(*pep, "scale", "pep.scale", 1.0);
        cfg.pep.rho = get_double(*pep, "rho", "pep.rho", 1.0);
        if (!(cfg.pep.scale > 0.0)) fail("pep.scale", "must be > 0");
        if (!(cfg.pep.rho > 0.0)) fail("pep.rho", "must be > 0");
    }

    if (const json* sweep = find(root, "sweep")) {
        if (!sweep->is_object()) fail("sweep", "must be an object");
        require_keys(*sweep, "sweep", {"min", "max", "points"});
        cfg.sweep_min = get_double(*sweep, "min", "sweep.min", 0.9);
        cfg.sweep_max = get_double(*sweep, "max", "sweep.max", 1.1);
        cfg.sweep_points = get_int(*sweep, "points", "sweep.points", 41);
        if (!(cfg.sweep_max >= cfg.sweep_min))
            fail("sweep.max", "must be >= sweep.min");
        if (cfg.sweep_points < 2) fail("sweep.points", "must be >= 2");
    }

    return cfg;
}

void apply_overrides(ExperimentConfig& cfg, const Overrides& o) {
    if (o.out_dir) cfg.out_dir = *o.out_dir;
    if (o.seed) cfg.seed = *o.seed;
    if (o.grid_psi) cfg.grid.psi_points = *o.grid_psi;
    if (o.grid_angle) cfg.grid.angle_points = *o.grid_angle;
    if (o.samples) cfg.samples = *o.samples;
    validate_grid(cfg.grid);
    if (cfg.samples < 1)
        throw std::invalid_argument("config field 'samples': must be >= 1");
}

std::vector<AntennaPattern> build_patterns(
    const std::vector<PatternSpec>& specs, int count, const char* side) {
    if (specs.empty())
        throw std::invalid_argument(std::string(side) +
                                    " patterns: list is empty");
    if (specs.size() != 1 && specs.size() != static_cast<std::size_t>(count))
        throw std::invalid_argument(
            std::string(side) + " patterns: " + std::to_string(specs.size()) +
            " entries for " + std::to_string(count) +
            " elements (use 1 shared entry or one per element)");
    std::vector<AntennaPattern> out;
    for (int i = 0; i < count; ++i) {
        const PatternSpec& spec = specs[specs.size() == 1 ? 0 : i];
        AntennaPattern p =
            spec.kind == "file"
                ? load_pattern(spec.file)
                : synthesize(pattern_kind_from_string(spec.kind), spec.params);
        if (spec.rotation_deg != 0.0)
            p = rotated(p, spec.rotation_deg * std::numbers::pi / 180.0);
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace vbeam
