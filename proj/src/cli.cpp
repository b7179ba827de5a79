#include "solgeo/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "solgeo/curvedsl.hpp"

namespace solgeo::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& text) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': not a number: '" + text + "'");
    }
    if (used != text.size() || !std::isfinite(v)) throw ConfigError("key '" + key + "': not a finite number: '" + text + "'");
    return v;
}

std::vector<double> to_doubles(const std::string& key, const std::string& text, std::size_t count) {
    std::istringstream in(text);
    std::vector<double> out;
    std::string word;
    while (in >> word) out.push_back(to_double(key, word));
    if (out.size() != count)
        throw ConfigError("key '" + key + "': expected " + std::to_string(count) + " numbers, got " +
                          std::to_string(out.size()));
    return out;
}

int to_int(const std::string& key, const std::string& text) {
    const double v = to_double(key, text);
    if (v != std::floor(v) || v < 1 || v > 1e6) throw ConfigError("key '" + key + "': expected a positive integer");
    return static_cast<int>(v);
}

const std::vector<std::string>& family_names() {
    static const std::vector<std::string> names{"zplane", "tplane", "vplane", "cylinder", "umbilical"};
    return names;
}

std::string join(const std::vector<std::string>& xs) {
    std::string s;
    for (const auto& x : xs) s += (s.empty() ? "" : ", ") + x;
    return s;
}

bool has_key(const JobConfig& cfg, const std::string& key) {
    return std::any_of(cfg.echo.begin(), cfg.echo.end(), [&](const auto& kv) { return kv.first == key; });
}

void add_checks(Report& r, const std::vector<oracles::OracleReport>& reports) {
    for (const auto& o : reports) r.checks.push_back({o.name, o.max_residual, o.tolerance, o.pass});
}

// Orient along cos(beta) E3 + sin(beta) E4 so that lambda = sin(beta).
Orientation umbilical_orientation(const Immersion& f, const UmbilicalProfile& profile, const Param& u) {
    const auto ref = umbilical_beta_normal(profile, u[2]);
    const auto n = unit_normal(f, u).comps;
    return dot(n, ref) >= 0.0 ? Orientation::Standard : Orientation::Flipped;
}

}  // namespace

KeyValues parse_key_values(const std::string& text) {
    KeyValues kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto colon = t.find(':');
        if (colon == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key: value'");
        const std::string key = trim(t.substr(0, colon));
        if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        kv.emplace_back(key, trim(t.substr(colon + 1)));
    }
    return kv;
}

void apply_key(JobConfig& cfg, const std::string& key, const std::string& value) {
    auto& tol = cfg.classify.tolerances;
    if (key == "family") {
        if (std::find(family_names().begin(), family_names().end(), value) == family_names().end())
            throw ConfigError("unknown family '" + value + "' (expected one of: " + join(family_names()) + ")");
        cfg.family = value;
    } else if (key == "c") {
        cfg.c = to_double(key, value);
    } else if (key == "a") {
        cfg.a = to_double(key, value);
    } else if (key == "b") {
        cfg.b = to_double(key, value);
    } else if (key == "beta0") {
        cfg.beta0 = to_double(key, value);
    } else if (key == "interval") {
        const auto v = to_doubles(key, value, 2);
        cfg.interval = {v[0], v[1]};
    } else if (key == "profile_step") {
        cfg.profile_step = to_double(key, value);
    } else if (key == "gamma1") {
        cfg.gamma1 = value;
    } else if (key == "gamma2") {
        cfg.gamma2 = value;
    } else if (key == "curve_interval") {
        const auto v = to_doubles(key, value, 2);
        cfg.curve_interval = {v[0], v[1]};
    } else if (key == "grid") {
        cfg.classify.grid.points_per_axis = to_int(key, value);
    } else if (key == "margin") {
        cfg.classify.grid.margin = to_double(key, value);
    } else if (key == "step") {
        cfg.classify.step = to_double(key, value);
    } else if (key == "tol_totally_geodesic") {
        tol.totally_geodesic = to_double(key, value);
    } else if (key == "tol_totally_umbilical") {
        tol.totally_umbilical = to_double(key, value);
    } else if (key == "tol_parallel") {
        tol.parallel = to_double(key, value);
    } else if (key == "tol_codazzi") {
        tol.codazzi = to_double(key, value);
    } else if (key == "orientation") {
        if (value == "standard")
            cfg.classify.orientation = Orientation::Standard;
        else if (value == "flipped")
            cfg.classify.orientation = Orientation::Flipped;
        else
            throw ConfigError("orientation must be 'standard' or 'flipped'");
    } else if (key == "jobs") {
        cfg.classify.jobs = to_int(key, value);
    } else if (key == "out") {
        cfg.out = value;
    } else {
        throw ConfigError("unknown key '" + key + "'");
    }
    cfg.echo.emplace_back(key, value);
}

void validate(const JobConfig& cfg) {
    if (cfg.family.empty()) throw ConfigError("missing key 'family'");
    const auto& tol = cfg.classify.tolerances;
    for (double t : {tol.totally_geodesic, tol.totally_umbilical, tol.parallel, tol.codazzi})
        if (!(t > 0.0)) throw ConfigError("tolerances must be positive");
    if (!(cfg.classify.step > 0.0)) throw ConfigError("step must be positive");
    if (!(cfg.classify.grid.margin >= 0.0 && cfg.classify.grid.margin < 0.5))
        throw ConfigError("margin must lie in [0, 0.5)");
    if (cfg.family == "vplane" && cfg.a == 0.0 && cfg.b == 0.0) throw ConfigError("vplane needs (a, b) != (0, 0)");
    if (cfg.family == "cylinder" && (cfg.gamma1.empty() || cfg.gamma2.empty()))
        throw ConfigError("cylinder needs gamma1 and gamma2");
    if (cfg.family == "umbilical") {
        if (!has_key(cfg, "beta0")) throw ConfigError("umbilical needs beta0");
        if (!(cfg.interval[0] < cfg.interval[1])) throw ConfigError("interval must satisfy lo < hi");
        if (!(cfg.profile_step > 0.0)) throw ConfigError("profile_step must be positive");
    }
    if (cfg.family == "cylinder" && !(cfg.curve_interval[0] < cfg.curve_interval[1]))
        throw ConfigError("curve_interval must satisfy lo < hi");
}

JobConfig parse_config(const std::string& text) {
    JobConfig cfg;
    for (const auto& [k, v] : parse_key_values(text)) apply_key(cfg, k, v);
    validate(cfg);
    return cfg;
}

Immersion build_immersion(const JobConfig& cfg) {
    try {
        if (cfg.family == "zplane") return family_z_plane(cfg.c);
        if (cfg.family == "tplane") return family_t_plane(cfg.c);
        if (cfg.family == "vplane") return family_vertical_plane(cfg.a, cfg.b, cfg.c);
        if (cfg.family == "cylinder") {
            const auto spec = curvedsl::make_curve(cfg.gamma1, cfg.gamma2, cfg.curve_interval[0], cfg.curve_interval[1]);
            return family_cylinder(curve_from_spec(spec));
        }
        if (cfg.family == "umbilical")
            return family_umbilical(umbilical_profile(cfg.beta0, cfg.interval[0], cfg.interval[1], cfg.profile_step));
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(cfg.family + ": " + e.what());
    }
    throw ConfigError("unknown family '" + cfg.family + "'");
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

bool Report::summary_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void Report::write(std::ostream& os) const {
    os << "tool: solgeo " << kVersion << "\n";
    os << "command: " << command << "\n";
    for (const auto& [k, v] : job) os << "job." << k << ": " << v << "\n";
    for (const auto& [k, v] : values) os << k << ": " << v << "\n";
    os << "summary: " << (summary_pass() ? "pass" : "fail") << "\n";
    if (checks.empty()) return;
    os << "# check residual tolerance pass\n";
    for (const auto& c : checks)
        os << c.name << " " << fmt(c.residual) << " " << fmt(c.tolerance) << " " << (c.pass ? 1 : 0) << "\n";
}

int default_jobs() {
    const char* env = std::getenv("SOLGEO_JOBS");
    if (!env) return 1;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 1 || v > 1024) return 1;
    return static_cast<int>(v);
}

int cmd_verify(const std::string& scope, std::ostream& out, std::ostream& err) {
    static const std::vector<std::string> scopes{"group", "connection", "curvature", "complex", "forms", "all"};
    if (std::find(scopes.begin(), scopes.end(), scope) == scopes.end()) {
        err << "error: unknown scope '" << scope << "' (expected one of: " << join(scopes) << ")\n";
        return kExitUsage;
    }
    Report r;
    r.command = "verify";
    r.job.emplace_back("scope", scope);
    const bool all = scope == "all";
    if (all || scope == "group") add_checks(r, oracles::verify_group());
    if (all || scope == "connection") add_checks(r, oracles::verify_connection());
    if (all || scope == "curvature") add_checks(r, oracles::verify_curvature());
    if (all || scope == "complex") add_checks(r, oracles::verify_complex());
    if (all || scope == "forms") add_checks(r, oracles::verify_forms());
    r.write(out);
    return r.summary_pass() ? kExitOk : kExitCheckFailed;
}

int cmd_curvature(const Point& p, const FrameComponents& u, const FrameComponents& v, std::ostream& out,
                  std::ostream& err) {
    if (!is_finite(p)) {
        err << "error: point must be finite\n";
        return kExitUsage;
    }
    const TangentVector tu{p, u}, tv{p, v};
    double k = 0.0;
    try {
        k = sectional_curvature(p, tu, tv);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    Report r;
    r.command = "curvature";
    r.job.emplace_back("point", fmt(p.x) + " " + fmt(p.y) + " " + fmt(p.z) + " " + fmt(p.t));
    r.job.emplace_back("u", fmt(u[0]) + " " + fmt(u[1]) + " " + fmt(u[2]) + " " + fmt(u[3]));
    r.job.emplace_back("v", fmt(v[0]) + " " + fmt(v[1]) + " " + fmt(v[2]) + " " + fmt(v[3]));
    r.values.emplace_back("sectional_curvature", fmt(k));
    r.write(out);
    // R(u, v)E_k in frame components, one row per k.
    out << "# k R1 R2 R3 R4\n";
    for (int kk = 1; kk <= 4; ++kk) {
        const auto rk = curvature_tensor(tu, tv, TangentVector{p, unit(kk)}).comps;
        out << kk << " " << fmt(rk[0]) << " " << fmt(rk[1]) << " " << fmt(rk[2]) << " " << fmt(rk[3]) << "\n";
    }
    return kExitOk;
}

int cmd_family(const std::string& name, const KeyValues& params, int grid_points, const std::string& out_path,
               std::ostream& out, std::ostream& err) {
    JobConfig cfg;
    std::optional<UmbilicalProfile> profile;
    std::optional<PlaneCurve> curve;
    Immersion f;
    try {
        apply_key(cfg, "family", name);
        for (const auto& [k, v] : params) apply_key(cfg, k, v);
        if (grid_points < 1) throw ConfigError("grid must be a positive integer");
        cfg.classify.grid.points_per_axis = grid_points;
        validate(cfg);
        f = build_immersion(cfg);
        if (name == "umbilical")
            profile = umbilical_profile(cfg.beta0, cfg.interval[0], cfg.interval[1], cfg.profile_step);
        if (name == "cylinder")
            curve = curve_from_spec(
                curvedsl::make_curve(cfg.gamma1, cfg.gamma2, cfg.curve_interval[0], cfg.curve_interval[1]));
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    std::ofstream file(out_path);
    if (!file) {
        err << "error: cannot open '" << out_path << "' for writing\n";
        return kExitUsage;
    }
    const auto points = sample_points(f.domain, cfg.classify.grid);
    std::ostringstream body;
    try {
        for (const auto& u : points) {
            const Orientation o = profile ? umbilical_orientation(f, *profile, u) : Orientation::Standard;
            const auto forms = second_fundamental_form(f, u, o);
            const auto& p = forms.point;
            const auto& n = forms.normal.comps;
            const auto& h = forms.second_form;
            body << fmt(u[0]) << " " << fmt(u[1]) << " " << fmt(u[2]) << " " << fmt(p.x) << " " << fmt(p.y) << " "
                 << fmt(p.z) << " " << fmt(p.t) << " " << fmt(n[0]) << " " << fmt(n[1]) << " " << fmt(n[2]) << " "
                 << fmt(n[3]) << " " << fmt(h(0, 0)) << " " << fmt(h(0, 1)) << " " << fmt(h(0, 2)) << " "
                 << fmt(h(1, 1)) << " " << fmt(h(1, 2)) << " " << fmt(h(2, 2)) << " " << fmt(forms.mean_curvature);
            if (curve) body << " " << fmt(plane_curve_curvature(*curve, u[0]));
            if (profile) {
                const double beta = profile->at(u[2]).beta;
                body << " " << fmt(beta) << " " << fmt(std::sin(beta));
            }
            body << "\n";
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    file << "tool: solgeo " << kVersion << "\n";
    file << "command: family\n";
    for (const auto& [k, v] : cfg.echo) file << "job." << k << ": " << v << "\n";
    file << "job.grid: " << grid_points << "\n";
    file << "records: " << points.size() << "\n";
    file << "# u1 u2 u3 x y z t N1 N2 N3 N4 h11 h12 h13 h22 h23 h33 lambda";
    if (curve) file << " kappa";
    if (profile) file << " beta sin_beta";
    file << "\n" << body.str();
    if (!file) {
        err << "error: failed writing '" << out_path << "'\n";
        return kExitUsage;
    }
    out << "wrote " << points.size() << " records to " << out_path << "\n";
    return kExitOk;
}

int cmd_classify(const std::string& config_path, const std::optional<std::string>& out_path, int jobs,
                 std::ostream& out, std::ostream& err) {
    std::ifstream in(config_path);
    if (!in) {
        err << "error: cannot read config '" << config_path << "'\n";
        return kExitUsage;
    }
    std::stringstream text;
    text << in.rdbuf();

    JobConfig cfg;
    Immersion f;
    try {
        cfg = parse_config(text.str());
        f = build_immersion(cfg);
    } catch (const std::exception& e) {
        err << "error: " << config_path << ": " << e.what() << "\n";
        return kExitUsage;
    }
    if (!has_key(cfg, "jobs")) cfg.classify.jobs = jobs;

    ClassificationReport rep;
    try {
        rep = classify(f, cfg.classify);
    } catch (const std::exception& e) {
        err << "error: classification failed: " << e.what() << "\n";
        return kExitUsage;
    }

    Report r;
    r.command = "classify";
    r.job = cfg.echo;
    auto yes = [](bool b) { return std::string(b ? "true" : "false"); };
    r.values = {{"samples", std::to_string(rep.samples)},
                {"totally_geodesic", yes(rep.verdicts.totally_geodesic)},
                {"parallel", yes(rep.verdicts.parallel)},
                {"codazzi", yes(rep.verdicts.codazzi)},
                {"totally_umbilical", yes(rep.verdicts.totally_umbilical)},
                {"residual.totally_geodesic", fmt(rep.residuals.totally_geodesic)},
                {"residual.parallel", fmt(rep.residuals.parallel)},
                {"residual.codazzi", fmt(rep.residuals.codazzi)},
                {"residual.totally_umbilical", fmt(rep.residuals.totally_umbilical)},
                {"residual.gauss_equation", fmt(rep.gauss_residual)},
                {"residual.codazzi_equation", fmt(rep.codazzi_eq_residual)}};

    const auto target = out_path ? out_path : cfg.out;
    if (target) {
        std::ofstream file(*target);
        if (!file) {
            err << "error: cannot open '" << *target << "' for writing\n";
            return kExitUsage;
        }
        r.write(file);
    } else {
        r.write(out);
    }
    return kExitOk;
}

}  // namespace solgeo::cli
