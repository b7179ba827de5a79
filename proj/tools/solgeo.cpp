#include <CLI11.hpp>

#include <iostream>

#include "solgeo/cli.hpp"

namespace cli = solgeo::cli;

int main(int argc, char** argv) {
    CLI::App app{"Geometry of Sol^4_0 and its hypersurfaces"};
    app.set_version_flag("--version", cli::kVersion);
    app.require_subcommand(1);

    int jobs = cli::default_jobs();
    app.add_option("--jobs", jobs, "Worker threads for grid sweeps (default: SOLGEO_JOBS or 1)")
        ->check(CLI::PositiveNumber);

    std::string scope = "all";
    auto* verify = app.add_subcommand("verify", "Run the oracle suites");
    verify->add_option("scope", scope, "group, connection, curvature, complex, forms or all");

    std::vector<double> point, u, v;
    auto* curvature = app.add_subcommand("curvature", "Sectional curvature of a plane in frame components");
    curvature->add_option("--point", point, "X Y Z T")->expected(4)->required();
    curvature->add_option("--u", u, "First vector, frame components")->expected(4)->required();
    curvature->add_option("--v", v, "Second vector, frame components")->expected(4)->required();

    std::string family_name, family_out;
    int grid = 5;
    std::string c, a, b, beta0, gamma1, gamma2, profile_step;
    std::vector<std::string> interval, curve_interval;
    auto* family = app.add_subcommand("family", "Sample a hypersurface family to a data file");
    family->add_option("name", family_name, "zplane, tplane, vplane, cylinder or umbilical")->required();
    family->add_option("--out", family_out, "Output path")->required();
    family->add_option("--grid", grid, "Points per parameter axis")->check(CLI::PositiveNumber);
    family->add_option("--c", c);
    family->add_option("--a", a);
    family->add_option("--b", b);
    family->add_option("--beta0", beta0);
    family->add_option("--interval", interval)->expected(2);
    family->add_option("--profile-step", profile_step);
    family->add_option("--gamma1", gamma1, "curve expression in u");
    family->add_option("--gamma2", gamma2, "curve expression in u");
    family->add_option("--curve-interval", curve_interval)->expected(2);

    std::string config;
    std::string classify_out;
    auto* classify = app.add_subcommand("classify", "Classify the immersion described by a config file");
    classify->add_option("--config", config, "Config path")->required();
    classify->add_option("--out", classify_out, "Report path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? cli::kExitOk : cli::kExitUsage;
    }

    try {
        if (verify->parsed()) return cli::cmd_verify(scope, std::cout, std::cerr);
        if (curvature->parsed()) {
            const solgeo::Point p{point[0], point[1], point[2], point[3]};
            return cli::cmd_curvature(p, {u[0], u[1], u[2], u[3]}, {v[0], v[1], v[2], v[3]}, std::cout, std::cerr);
        }
        if (family->parsed()) {
            cli::KeyValues params;
            auto add = [&](const char* key, const std::string& value) {
                if (!value.empty()) params.emplace_back(key, value);
            };
            add("c", c);
            add("a", a);
            add("b", b);
            add("beta0", beta0);
            if (!interval.empty()) params.emplace_back("interval", interval[0] + " " + interval[1]);
            add("profile_step", profile_step);
            add("gamma1", gamma1);
            add("gamma2", gamma2);
            if (!curve_interval.empty())
                params.emplace_back("curve_interval", curve_interval[0] + " " + curve_interval[1]);
            return cli::cmd_family(family_name, params, grid, family_out, std::cout, std::cerr);
        }
        if (classify->parsed()) {
            std::optional<std::string> out;
            if (!classify_out.empty()) out = classify_out;
            return cli::cmd_classify(config, out, jobs, std::cout, std::cerr);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kExitUsage;
    }
    return cli::kExitUsage;
}
