// susydirac: spectra, Green's-function kernels and quasi-classical levels
// for supersymmetric Dirac Hamiltonians in 1+1 dimensions.
//
// Batch tool: JSON config in, JSON/CSV files out. Warnings go to stderr,
// data only to files. Exit codes: 0 success, 2 config/schema error, 3 SUSY
// condition violated, 4 box too small, 5 spectral parameter too close to an
// eigenvalue, 6 quantization regime mismatch, 1 other failure.

#include <algorithm>
#include <array>
#include <atomic>
#include <clocale>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "susydirac/dirac.hpp"
#include "susydirac/errors.hpp"
#include "susydirac/potential.hpp"
#include "susydirac/quasiclassical.hpp"
#include "susydirac/resolvent.hpp"
#include "susydirac/version.hpp"
#include "susydirac/witten.hpp"

namespace sd = susydirac;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSchema = 2;
constexpr int kExitSusyCondition = 3;
constexpr int kExitBoxTooSmall = 4;
constexpr int kExitNearPole = 5;
constexpr int kExitRegime = 6;

class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// formatting

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/// Tiny ordered JSON writer so numeric output stays at a fixed 17
/// significant digits independent of the JSON library's float policy.
class JsonWriter {
public:
    std::string str() const { return out_; }
    void begin_object() { out_ += '{'; fresh_ = true; }
    void end_object() { out_ += '}'; fresh_ = false; }
    void begin_array(const std::string& key) { comma(); out_ += quote(key) + ":["; fresh_ = true; }
    void end_array() { out_ += ']'; fresh_ = false; }
    void begin_item_object() { comma(); out_ += '{'; fresh_ = true; }
    void field(const std::string& key, const std::string& value) {
        comma();
        out_ += quote(key) + ":" + quote(value);
    }
    void field(const std::string& key, double value) {
        comma();
        out_ += quote(key) + ":" + fmt(value);
    }
    void field(const std::string& key, int value) {
        comma();
        out_ += quote(key) + ":" + std::to_string(value);
    }
    void field_null(const std::string& key) {
        comma();
        out_ += quote(key) + ":null";
    }
    void field_bool(const std::string& key, bool value) {
        comma();
        out_ += quote(key) + (value ? ":true" : ":false");
    }

private:
    static std::string quote(const std::string& s) { return "\"" + s + "\""; }
    void comma() {
        if (!fresh_) out_ += ',';
        fresh_ = false;
    }
    std::string out_;
    bool fresh_ = true;
};

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << content;
}

// ---------------------------------------------------------------------------
// config schema

void require_keys(const json& obj, const std::string& where,
                  const std::vector<std::string>& allowed) {
    if (!obj.is_object()) throw SchemaError(where + ": expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const auto& k : allowed)
            if (it.key() == k) ok = true;
        if (!ok) throw SchemaError(where + ": unknown key '" + it.key() + "'");
    }
}

double get_number(const json& obj, const std::string& where, const std::string& key,
                  std::optional<double> fallback = std::nullopt) {
    if (!obj.contains(key)) {
        if (fallback) return *fallback;
        throw SchemaError(where + ": missing '" + key + "'");
    }
    if (!obj[key].is_number()) throw SchemaError(where + ": '" + key + "' must be a number");
    return obj[key].get<double>();
}

struct RunConfig {
    sd::PhysicalConstants consts;
    sd::PotentialSpec spec = sd::PotentialSpec::oscillator(sd::PhysicalConstants{}, 1.0);
    bool spec_is_oscillator = false;
    double oscillator_omega = 0.0;
    std::optional<sd::Grid> grid;
    int stencil_order = 4;
    json task;
    std::string task_type;
    std::string config_hash;
    bool tabulated_short_tails = false;
};

std::function<double(double)> parse_profile(const json& j, const std::string& where) {
    require_keys(j, where, {"kind", "value", "slope"});
    const std::string kind = j.value("kind", "");
    if (kind == "constant") {
        const double v = get_number(j, where, "value");
        return [v](double) { return v; };
    }
    if (kind == "linear") {
        const double a = get_number(j, where, "slope");
        return [a](double x) { return a * x; };
    }
    throw SchemaError(where + ": kind must be 'constant' or 'linear'");
}

RunConfig parse_config(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw SchemaError("cannot open config file " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    const std::string raw = ss.str();

    json root;
    try {
        root = json::parse(raw);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("config is not valid JSON: ") + e.what());
    }
    require_keys(root, "config", {"constants", "potential", "grid", "solver", "task"});

    RunConfig cfg;
    cfg.config_hash = fnv1a_hex(raw);

    double m = 1.0, c = 1.0, hbar = 1.0;
    if (root.contains("constants")) {
        const json& jc = root["constants"];
        require_keys(jc, "constants", {"m", "c", "hbar"});
        m = get_number(jc, "constants", "m", 1.0);
        c = get_number(jc, "constants", "c", 1.0);
        hbar = get_number(jc, "constants", "hbar", 1.0);
    }
    // environment overrides
    if (const char* s = std::getenv("SUSYDIRAC_M")) m = std::atof(s);
    if (const char* s = std::getenv("SUSYDIRAC_C")) c = std::atof(s);
    if (const char* s = std::getenv("SUSYDIRAC_HBAR")) hbar = std::atof(s);
    try {
        cfg.consts = sd::PhysicalConstants(m, c, hbar);
    } catch (const std::invalid_argument& e) {
        throw SchemaError(std::string("constants: ") + e.what());
    }

    if (!root.contains("potential")) throw SchemaError("config: missing 'potential'");
    const json& jp = root["potential"];
    require_keys(jp, "potential",
                 {"family", "omega", "d", "signed", "strength", "x", "w", "file", "s", "v"});
    const std::string family = jp.value("family", "");
    try {
        if (family == "oscillator") {
            cfg.oscillator_omega = get_number(jp, "potential", "omega");
            cfg.spec = sd::PotentialSpec::oscillator(cfg.consts, cfg.oscillator_omega);
            cfg.spec_is_oscillator = true;
        } else if (family == "power") {
            const double d = get_number(jp, "potential", "d");
            const double strength = get_number(jp, "potential", "strength", 1.0);
            if (!jp.contains("signed") || !jp["signed"].is_boolean())
                throw SchemaError("potential: power family needs boolean 'signed'");
            cfg.spec = sd::PotentialSpec::power(cfg.consts, d, jp["signed"].get<bool>(), strength);
        } else if (family == "tabulated") {
            std::vector<double> xs, ws;
            if (jp.contains("file")) {
                std::ifstream t(jp["file"].get<std::string>());
                if (!t) throw SchemaError("potential: cannot open tabulated file");
                std::string line;
                while (std::getline(t, line)) {
                    if (line.empty() || line[0] == '#') continue;
                    std::replace(line.begin(), line.end(), ',', ' ');
                    std::istringstream ls(line);
                    double x, w;
                    if (ls >> x >> w) {
                        xs.push_back(x);
                        ws.push_back(w);
                    }
                }
            } else {
                if (!jp.contains("x") || !jp.contains("w"))
                    throw SchemaError("potential: tabulated family needs 'x' and 'w' arrays");
                xs = jp["x"].get<std::vector<double>>();
                ws = jp["w"].get<std::vector<double>>();
            }
            cfg.spec = sd::PotentialSpec::tabulated(std::move(xs), std::move(ws));
        } else {
            throw SchemaError("potential: family must be oscillator, power or tabulated");
        }
    } catch (const std::invalid_argument& e) {
        throw SchemaError(std::string("potential: ") + e.what());
    }
    if (jp.contains("s")) cfg.spec.with_scalar(parse_profile(jp["s"], "potential.s"));
    if (jp.contains("v")) cfg.spec.with_electrostatic(parse_profile(jp["v"], "potential.v"));

    if (root.contains("grid")) {
        const json& jg = root["grid"];
        require_keys(jg, "grid", {"x_min", "x_max", "n_points"});
        const double x_min = get_number(jg, "grid", "x_min");
        const double x_max = get_number(jg, "grid", "x_max");
        const double np = get_number(jg, "grid", "n_points");
        if (np < 16 || np != std::floor(np))
            throw SchemaError("grid: n_points must be an integer >= 16");
        try {
            cfg.grid.emplace(x_min, x_max, static_cast<std::size_t>(np));
        } catch (const std::invalid_argument& e) {
            throw SchemaError(std::string("grid: ") + e.what());
        }
    }

    if (root.contains("solver")) {
        const json& js = root["solver"];
        require_keys(js, "solver", {"stencil_order"});
        const double so = get_number(js, "solver", "stencil_order", 4.0);
        if (so != 2.0 && so != 4.0 && so != 6.0)
            throw SchemaError("solver: stencil_order must be 2, 4 or 6");
        cfg.stencil_order = static_cast<int>(so);
    }

    if (!root.contains("task")) throw SchemaError("config: missing 'task'");
    cfg.task = root["task"];
    if (!cfg.task.contains("type") || !cfg.task["type"].is_string())
        throw SchemaError("task: missing string 'type'");
    cfg.task_type = cfg.task["type"].get<std::string>();
    return cfg;
}

sd::Grid working_grid(const RunConfig& cfg) {
    if (cfg.grid) return *cfg.grid;
    return sd::make_default_grid(cfg.spec, cfg.consts);
}

// ---------------------------------------------------------------------------
// worker pool

void parallel_for(std::size_t n_tasks, unsigned threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || n_tasks <= 1) {
        for (std::size_t i = 0; i < n_tasks; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(n_tasks);
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    const unsigned use = std::min<unsigned>(threads, static_cast<unsigned>(n_tasks));
    for (unsigned t = 0; t < use; ++t)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n_tasks) return;
                try {
                    fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

// ---------------------------------------------------------------------------
// subcommands

struct CommonArgs {
    std::string config_path;
    std::string out_dir = ".";
    unsigned threads = 1;
    double tolerance = 0.0;  // 0 = per-task default
};

void meta_fields(JsonWriter& w, const RunConfig& cfg) {
    w.field("tool", "susydirac");
    w.field("version", sd::version);
    w.field("config_hash", cfg.config_hash);
}

std::string csv_meta_line(const RunConfig& cfg) {
    return std::string("# susydirac ") + sd::version + " config=" + cfg.config_hash + "\n";
}

int cmd_validate(const RunConfig& cfg, const CommonArgs& args) {
    require_keys(cfg.task, "task", {"type", "tolerance"});
    const double tol = args.tolerance > 0.0
                           ? args.tolerance
                           : get_number(cfg.task, "task", "tolerance", 1e-10);
    const sd::Grid grid = working_grid(cfg);
    const auto rep = sd::check_susy_condition(cfg.spec, cfg.consts, grid, tol);

    std::string susy = "indeterminate";
    bool trivial = false;
    try {
        const auto cls = sd::classify_susy(cfg.spec, cfg.consts, grid);
        trivial = cls.trivial;
        switch (cls.susy) {
            case sd::SusyClass::unbroken_minus: susy = "unbroken"; break;
            case sd::SusyClass::unbroken_plus_after_flip: susy = "unbroken_after_flip"; break;
            case sd::SusyClass::broken: susy = "broken"; break;
        }
    } catch (const sd::Indeterminate& e) {
        std::cerr << "warning: " << e.what() << "\n";
    }

    JsonWriter w;
    w.begin_object();
    meta_fields(w, cfg);
    w.field("susy_condition", rep.pass ? "pass" : "fail");
    w.field("max_abs_V", rep.max_abs_v);
    w.field("max_S_deviation", rep.max_s_deviation);
    w.field("effective_mass_energy", rep.effective_mass_energy);
    w.field("susy", susy);
    w.field_bool("trivial", trivial);
    w.end_object();
    write_file(args.out_dir + "/validate.json", w.str() + "\n");
    return rep.pass ? kExitOk : kExitSusyCondition;
}

int cmd_spectrum(const RunConfig& cfg, const CommonArgs& args) {
    require_keys(cfg.task, "task", {"type", "levels", "spinors"});
    const double k_levels = get_number(cfg.task, "task", "levels", 5.0);
    if (k_levels < 1 || k_levels != std::floor(k_levels))
        throw SchemaError("task: levels must be a positive integer");
    const bool want_spinors = cfg.task.value("spinors", false);

    const sd::Grid grid = working_grid(cfg);
    const auto pairs = sd::solve_pair_spectrum(cfg.spec, cfg.consts, grid,
                                               static_cast<std::size_t>(k_levels),
                                               cfg.stencil_order);
    const bool unbroken = pairs.susy != sd::SusyClass::broken;
    std::vector<double> eps;
    for (const auto& lvl : pairs.levels) eps.push_back(lvl.eps);
    const auto rel = sd::relativistic_energies(eps, cfg.consts, unbroken);

    JsonWriter w;
    w.begin_object();
    meta_fields(w, cfg);
    w.field("susy", unbroken ? (pairs.flipped ? "unbroken_after_flip" : "unbroken") : "broken");
    w.begin_array("levels");
    for (std::size_t j = 0; j < pairs.levels.size(); ++j) {
        w.begin_item_object();
        w.field("n", pairs.levels[j].n);
        w.field("epsilon", pairs.levels[j].eps);
        if (rel[j].has_plus) w.field("E_plus", rel[j].E_plus);
        else w.field_null("E_plus");
        w.field("E_minus", rel[j].E_minus);
        w.end_object();
    }
    w.end_array();
    w.end_object();
    write_file(args.out_dir + "/spectrum.json", w.str() + "\n");

    if (want_spinors) {
        const auto spinors = sd::dirac_eigenspinors(pairs, cfg.consts);
        std::string csv = csv_meta_line(cfg);
        csv += "x,n,branch,upper_re,upper_im,lower_re,lower_im\n";
        for (const auto& s : spinors) {
            const char* branch = (s.branch == sd::Branch::plus) ? "+" : "-";
            for (std::size_t i = 0; i < grid.size(); ++i) {
                csv += fmt(grid.x(i)) + "," + std::to_string(s.n) + "," + branch + "," +
                       fmt(s.psi.upper[i].real()) + "," + fmt(s.psi.upper[i].imag()) + "," +
                       fmt(s.psi.lower[i].real()) + "," + fmt(s.psi.lower[i].imag()) + "\n";
            }
        }
        write_file(args.out_dir + "/spinors.csv", csv);
    }
    return kExitOk;
}

int cmd_greens(const RunConfig& cfg, const CommonArgs& args) {
    require_keys(cfg.task, "task", {"type", "z", "points", "method", "truncation"});
    if (!cfg.task.contains("z") || !cfg.task["z"].is_array() || cfg.task["z"].empty())
        throw SchemaError("task: greens needs a non-empty 'z' array");
    if (!cfg.task.contains("points") || !cfg.task["points"].is_array() ||
        cfg.task["points"].empty())
        throw SchemaError("task: greens needs a non-empty 'points' array");

    std::vector<std::complex<double>> zs;
    for (const auto& jz : cfg.task["z"]) {
        require_keys(jz, "task.z[]", {"re", "im"});
        zs.emplace_back(get_number(jz, "task.z[]", "re", 0.0), get_number(jz, "task.z[]", "im", 0.0));
    }
    std::vector<std::pair<double, double>> points;
    for (const auto& jp : cfg.task["points"]) {
        if (!jp.is_array() || jp.size() != 2)
            throw SchemaError("task: each greens point must be [x2, x1]");
        points.emplace_back(jp[0].get<double>(), jp[1].get<double>());
    }
    const std::string method_name = cfg.task.value("method", "grid");
    sd::ResolventMethod method;
    if (method_name == "grid") method = sd::ResolventMethod::grid_inverse;
    else if (method_name == "spectral") method = sd::ResolventMethod::spectral_truncated;
    else if (method_name == "closed_form") method = sd::ResolventMethod::closed_form_oscillator;
    else throw SchemaError("task: method must be grid, spectral or closed_form");

    sd::ResolventOptions opt;
    opt.stencil_order = 6;
    if (cfg.task.contains("truncation"))
        opt.truncation = static_cast<std::size_t>(get_number(cfg.task, "task", "truncation"));
    if (args.tolerance > 0.0) opt.guard = args.tolerance;

    const sd::Grid grid = working_grid(cfg);

    std::vector<sd::ResolventKernel> kernels(zs.size());
    std::vector<std::vector<std::array<std::complex<double>, 4>>> closed(zs.size());
    parallel_for(zs.size(), args.threads, [&](std::size_t i) {
        kernels[i] = sd::dirac_resolvent(zs[i], cfg.spec, cfg.consts, grid, method, points, opt);
        if (cfg.spec_is_oscillator && method != sd::ResolventMethod::closed_form_oscillator) {
            closed[i].reserve(points.size());
            for (const auto& entry : kernels[i].entries) {
                // evaluate at the snapped coordinates reported by the kernel
                const double x2 = entry.x2, x1 = entry.x1;
                try {
                    closed[i].push_back(sd::oscillator_greens_closed_form(
                        zs[i], x2, x1, cfg.consts, cfg.oscillator_omega, opt.guard));
                } catch (const sd::Error&) {
                    closed[i].push_back({std::complex<double>(std::nan(""), std::nan("")),
                                         std::complex<double>(std::nan(""), std::nan("")),
                                         std::complex<double>(std::nan(""), std::nan("")),
                                         std::complex<double>(std::nan(""), std::nan(""))});
                }
            }
        }
    });

    std::string csv = csv_meta_line(cfg);
    csv += "z_re,z_im,x2,x1,g11_re,g11_im,g12_re,g12_im,g21_re,g21_im,g22_re,g22_im,method,"
           "identity_residual";
    const bool with_cf = cfg.spec_is_oscillator && method != sd::ResolventMethod::closed_form_oscillator;
    if (with_cf)
        csv += ",cf_g11_re,cf_g11_im,cf_g12_re,cf_g12_im,cf_g21_re,cf_g21_im,cf_g22_re,cf_g22_im";
    csv += "\n";
    for (std::size_t i = 0; i < zs.size(); ++i) {
        for (std::size_t p = 0; p < points.size(); ++p) {
            const auto& e = kernels[i].entries[p];
            csv += fmt(zs[i].real()) + "," + fmt(zs[i].imag()) + "," + fmt(e.x2) + "," + fmt(e.x1);
            for (int q = 0; q < 4; ++q)
                csv += "," + fmt(e.g[q].real()) + "," + fmt(e.g[q].imag());
            csv += "," + method_name;
            csv += (method == sd::ResolventMethod::grid_inverse)
                       ? "," + fmt(kernels[i].identity_residual)
                       : ",";
            if (with_cf) {
                for (int q = 0; q < 4; ++q) {
                    const auto v = closed[i][p][q];
                    if (std::isnan(v.real())) csv += ",,";
                    else csv += "," + fmt(v.real()) + "," + fmt(v.imag());
                }
            }
            csv += "\n";
        }
    }
    write_file(args.out_dir + "/greens.csv", csv);
    return kExitOk;
}

int cmd_quasiclassical(const RunConfig& cfg, const CommonArgs& args) {
    require_keys(cfg.task, "task", {"type", "n_min", "n_max", "compare_grid", "regime"});
    const int n_min = static_cast<int>(get_number(cfg.task, "task", "n_min", 0.0));
    const int n_max = static_cast<int>(get_number(cfg.task, "task", "n_max", 5.0));
    if (n_max < n_min) throw SchemaError("task: n_max must be >= n_min");
    const bool compare_grid = cfg.task.value("compare_grid", false);
    const std::string regime = cfg.task.value("regime", "auto");
    if (regime != "auto" && regime != "cbc" && regime != "eij")
        throw SchemaError("task: regime must be auto, cbc or eij");

    const sd::Grid grid = working_grid(cfg);
    sd::QcOptions opt;
    if (args.tolerance > 0.0) opt.quad_tol = args.tolerance;

    bool use_cbc;
    bool flip = false;
    if (regime == "auto") {
        const auto cls = sd::classify_susy(cfg.spec, cfg.consts, grid);
        use_cbc = cls.susy != sd::SusyClass::broken;
        flip = (cls.susy == sd::SusyClass::unbroken_plus_after_flip);
    } else {
        use_cbc = (regime == "cbc");
        opt.override_regime = true;
    }
    const sd::PotentialSpec working = flip ? cfg.spec.flipped() : cfg.spec;

    std::vector<int> ns;
    for (int n = std::max(n_min, use_cbc ? 0 : 1); n <= n_max; ++n) ns.push_back(n);

    std::vector<sd::QuantizationResult> nonrel(ns.size()), rel(ns.size());
    parallel_for(ns.size(), args.threads, [&](std::size_t i) {
        if (use_cbc) {
            nonrel[i] = sd::cbc_level(working, cfg.consts, grid, ns[i], opt);
            rel[i] = sd::relativistic_cbc_level(working, cfg.consts, grid, ns[i], opt);
        } else {
            nonrel[i] = sd::eij_level(working, cfg.consts, grid, ns[i], opt);
            rel[i] = sd::relativistic_eij_level(working, cfg.consts, grid, ns[i], opt);
        }
    });

    std::vector<double> eps_grid;
    if (compare_grid) {
        const auto pairs = sd::solve_pair_spectrum(working, cfg.consts, grid,
                                                   static_cast<std::size_t>(ns.size()),
                                                   cfg.stencil_order);
        for (const auto& lvl : pairs.levels) eps_grid.push_back(lvl.eps);
    }

    JsonWriter w;
    w.begin_object();
    meta_fields(w, cfg);
    w.field("formula", use_cbc ? "cbc" : "eij");
    w.begin_array("levels");
    for (std::size_t i = 0; i < ns.size(); ++i) {
        w.begin_item_object();
        w.field("n", ns[i]);
        w.field("epsilon_qc", nonrel[i].value);
        if (ns[i] == 0) w.field_null("E_plus_qc");
        else w.field("E_plus_qc", rel[i].E_plus);
        w.field("E_minus_qc", rel[i].E_minus);
        w.field("x_L", nonrel[i].x_left);
        w.field("x_R", nonrel[i].x_right);
        w.field("quadrature_error", nonrel[i].quadrature_error);
        if (compare_grid && i < eps_grid.size()) {
            w.field("epsilon_grid", eps_grid[i]);
            const double scale = std::max(1e-12, std::fabs(eps_grid[i]));
            w.field("rel_deviation", std::fabs(nonrel[i].value - eps_grid[i]) / scale);
        }
        w.end_object();
    }
    w.end_array();
    w.end_object();
    write_file(args.out_dir + "/qc.json", w.str() + "\n");
    return kExitOk;
}

int dispatch(const std::string& subcommand, const CommonArgs& args) {
    RunConfig cfg = parse_config(args.config_path);
    if (cfg.task_type != subcommand)
        throw SchemaError("task type '" + cfg.task_type + "' does not match subcommand '" +
                          subcommand + "'");
    if (subcommand == "validate") return cmd_validate(cfg, args);
    if (subcommand == "spectrum") return cmd_spectrum(cfg, args);
    if (subcommand == "greens") return cmd_greens(cfg, args);
    return cmd_quasiclassical(cfg, args);
}

} // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_NUMERIC, "C");
    CLI::App app{
        "susydirac: supersymmetric Dirac Hamiltonians in 1+1 dimensions.\n"
        "Spectra, Green's-function kernels and quasi-classical levels from a JSON config.\n"
        "Exit codes: 0 ok, 2 config/schema error, 3 SUSY condition violated,\n"
        "4 box too small, 5 spectral point too close to an eigenvalue,\n"
        "6 quantization regime mismatch, 1 other error.\n"
        "Environment: SUSYDIRAC_M, SUSYDIRAC_C, SUSYDIRAC_HBAR override the constants block."};
    app.set_version_flag("--version", std::string("susydirac ") + sd::version);
    app.require_subcommand(1);

    CommonArgs args;
    std::vector<CLI::App*> subs;
    for (const char* name : {"validate", "spectrum", "greens", "quasiclassical"}) {
        CLI::App* sub = app.add_subcommand(name);
        sub->add_option("--config", args.config_path, "JSON run configuration")->required();
        sub->add_option("--out", args.out_dir, "output directory (default .)");
        sub->add_option("--threads", args.threads, "worker threads for independent tasks");
        sub->add_option("--tolerance", args.tolerance,
                        "override the task tolerance (validation residual, pole guard or "
                        "quadrature target)");
        subs.push_back(sub);
    }

    CLI11_PARSE(app, argc, argv);

    const std::string sub = app.get_subcommands().front()->get_name();
    try {
        return dispatch(sub, args);
    } catch (const SchemaError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitSchema;
    } catch (const sd::BoxTooSmall& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBoxTooSmall;
    } catch (const sd::NearPole& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNearPole;
    } catch (const sd::RegimeMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRegime;
    } catch (const sd::Indeterminate& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRegime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
