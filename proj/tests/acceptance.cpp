// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "solgeo/curvedsl.hpp"
#include "solgeo/families.hpp"
#include "solgeo/hypersurface.hpp"
#include "solgeo/oracles.hpp"

using namespace solgeo;

namespace {

const double kQuarterPi = 0.7853981633974483;

struct Outcome {
    bool pass = true;
    std::string detail;
};

void note(Outcome& o, bool ok, const std::string& what) {
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += what;
    o.pass = o.pass && ok;
}

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

int failures = 0;

void criterion(int n, const char* title, double time_limit, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (time_limit > 0) note(o, secs < time_limit, "time " + num(secs) + " s < " + num(time_limit) + " s");
    else o.detail += "; time " + num(secs) + " s";
    if (!o.pass) ++failures;
    std::printf("%s criterion %d: %s (%s)\n", o.pass ? "PASS" : "FAIL", n, title, o.detail.c_str());
    std::fflush(stdout);
}

std::vector<Point> grid4(int n) {
    std::vector<Point> pts;
    auto c = [n](int k) { return -1.0 + 2.0 * k / (n - 1); };
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int d = 0; d < n; ++d)
                for (int e = 0; e < n; ++e) pts.push_back({c(a), c(b), c(d), c(e)});
    return pts;
}

Orientation along(const Immersion& f, const Param& u, const FrameComponents& target) {
    return dot(unit_normal(f, u).comps, target) > 0 ? Orientation::Standard : Orientation::Flipped;
}

// Same bounded grammar walk as the unit tests.
std::string random_expr(std::mt19937& rng, int depth) {
    if (depth == 0 || std::uniform_int_distribution<int>(0, 5)(rng) == 0) {
        switch (std::uniform_int_distribution<int>(0, 4)(rng)) {
            case 0: return std::to_string(std::uniform_int_distribution<int>(1, 4)(rng));
            case 1: return "0.5";
            default: return "u";
        }
    }
    auto sub = [&] { return random_expr(rng, depth - 1); };
    auto safe = [&] { return "(2 + cos(" + sub() + "))"; };
    switch (std::uniform_int_distribution<int>(3, 11)(rng)) {
        case 3: return "(" + sub() + " + " + sub() + ")";
        case 4: return "(" + sub() + " - " + sub() + ")";
        case 5: return sub() + " * " + sub();
        case 6: return sub() + " / " + safe();
        case 7: return "-" + sub();
        case 8: return "sin(" + sub() + ")";
        case 9: return "cos(" + sub() + ")";
        case 10: return std::uniform_int_distribution<int>(0, 1)(rng) ? "exp(0.5 * sin(" + sub() + "))"
                                                                     : "log(" + safe() + ")";
        default: {
            const int n = std::uniform_int_distribution<int>(-2, 3)(rng);
            return (n < 0 ? safe() : "(" + sub() + ")") + "^" + std::to_string(n);
        }
    }
}

}  // namespace

int main() {
    criterion(1, "Koszul connection equals the frame table on 16 pairs", 1.0, [] {
        int mismatches = 0;
        for (int i = 1; i <= 4; ++i)
            for (int j = 1; j <= 4; ++j) mismatches += !(oracles::koszul_oracle(i, j) == nabla_frame(i, j));
        Outcome o;
        note(o, mismatches == 0, "mismatches " + std::to_string(mismatches) + "/16, exact");
        return o;
    });

    criterion(2, "curvature table, invariant formula and direct oracle agree on 64 triples", 1.0, [] {
        int mismatches = 0;
        const Point p{0.4, 0.1, -0.3, 0.8};
        for (int i = 1; i <= 4; ++i)
            for (int j = 1; j <= 4; ++j)
                for (int k = 1; k <= 4; ++k) {
                    const auto direct = oracles::curvature_direct_oracle(i, j, k);
                    const auto inv =
                        curvature_invariant(frame_vector(p, i), frame_vector(p, j), frame_vector(p, k)).comps;
                    mismatches += !(direct == curvature_table(i, j, k) && direct == inv);
                }
        Outcome o;
        note(o, mismatches == 0, "mismatches " + std::to_string(mismatches) + "/64, exact");
        return o;
    });

    criterion(3, "sectional curvatures (K12,K13,K14,K23,K24,K34) = (-1,2,-1,2,-1,-4)", 0, [] {
        const int pairs[6][2] = {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
        const double expected[6] = {-1, 2, -1, 2, -1, -4};
        const Point p{0.3, -0.7, 1.1, -0.5};
        std::string got;
        bool ok = true;
        for (int n = 0; n < 6; ++n) {
            const double table = frame_sectional_curvature(pairs[n][0], pairs[n][1]);
            const double at_p = sectional_curvature(p, frame_vector(p, pairs[n][0]), frame_vector(p, pairs[n][1]));
            ok = ok && table == expected[n] && at_p == expected[n];
            got += (n ? "," : "") + num(table);
        }
        Outcome o;
        note(o, ok, "got (" + got + "), exact");
        return o;
    });

    criterion(4, "d(e^{2t} Omega) closed on 5^4 grid, bare form not closed", 5.0, [] {
        double worst = 0;
        for (const auto& p : grid4(5))
            for (Sign s : {Sign::Plus, Sign::Minus}) worst = std::max(worst, oracles::dform_closedness_oracle(s, p, 1e-5));
        const double bare =
            oracles::dform_closedness_oracle(Sign::Plus, Point{0.0, 0.0, 0.0, 0.0}, 1e-5, oracles::FormScaling::Bare);
        Outcome o;
        note(o, worst < 1e-7, "max residual " + num(worst) + " < 1e-7");
        note(o, bare > 1e-2, "bare residual at t=0 " + num(bare) + " > 1e-2");
        return o;
    });

    criterion(5, "closed forms of nabla J+, J-, P and nabla E4 match the tensor oracle", 0, [] {
        int mismatches = 0;
        const Point p{-0.2, 0.9, 0.4, 0.6};
        auto e = [&](int i) { return frame_vector(p, i); };
        using oracles::FrameTensor;
        for (int i = 1; i <= 4; ++i) {
            for (int j = 1; j <= 4; ++j) {
                mismatches += !(oracles::nabla_tensor_oracle(FrameTensor::Jplus, i, j) ==
                                nabla_J(Sign::Plus, e(i), e(j)).comps);
                mismatches += !(oracles::nabla_tensor_oracle(FrameTensor::Jminus, i, j) ==
                                nabla_J(Sign::Minus, e(i), e(j)).comps);
                mismatches += !(oracles::nabla_tensor_oracle(FrameTensor::P, i, j) == nabla_P(e(i), e(j)).comps);
            }
            mismatches += !(oracles::koszul_oracle(i, 4) == nabla_E4(e(i)).comps);
        }
        Outcome o;
        note(o, mismatches == 0, "mismatches " + std::to_string(mismatches) + "/52, exact");
        return o;
    });

    criterion(6, "verdict matrix for the five families", 0, [] {
        Outcome o;
        auto timed = [&](const char* name, const std::function<void()>& run) {
            const auto start = std::chrono::steady_clock::now();
            run();
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            note(o, secs < 10.0, std::string(name) + " " + num(secs) + " s < 10 s");
        };

        timed("zplane", [&] {
            const auto r = classify(family_z_plane(0.0));
            note(o, r.residuals.totally_geodesic < 1e-10 && r.verdicts.totally_geodesic,
                 "zplane h " + num(r.residuals.totally_geodesic) + " < 1e-10");
        });

        timed("tplane", [&] {
            const auto f = family_t_plane(0.0);
            const auto r = classify(f);
            double worst = 0;
            for (const auto& u : sample_points(f.domain, {})) {
                const auto forms = second_fundamental_form(f, u);
                const double h33 = forms.second_form(2, 2) * std::exp(-4 * forms.point.t);
                worst = std::max(worst, std::abs(h33 + 2.0));
            }
            note(o, r.residuals.parallel < 1e-4 && r.verdicts.parallel,
                 "tplane nabla h " + num(r.residuals.parallel) + " < 1e-4");
            note(o, worst <= 1e-8, "tplane |h(E3,E3)+2| " + num(worst) + " <= 1e-8");
        });

        timed("vplane", [&] {
            const auto f = family_vertical_plane(1.0, 0.0, 0.0);
            const auto r = classify(f);
            double worst = 0;
            for (const auto& u : sample_points(f.domain, {})) {
                worst = std::max(worst, std::abs(induced_sectional_curvature(f, u, {0, 1, 0}, {0, 0, 1}) + 4.0));
                worst = std::max(worst, std::abs(induced_sectional_curvature(f, u, {1, 0, 0}, {0, 1, 0}) - 2.0));
            }
            note(o, r.residuals.totally_geodesic < 1e-8, "vplane h " + num(r.residuals.totally_geodesic) + " < 1e-8");
            note(o, worst <= 1e-6, "vplane {-4,2} off by " + num(worst) + " <= 1e-6");
        });

        timed("cylinder", [&] {
            const auto r = classify(family_cylinder(circle_curve(1.0)));
            note(o, r.residuals.codazzi < 1e-4, "cylinder codazzi " + num(r.residuals.codazzi) + " < 1e-4");
            note(o, r.residuals.parallel > 1e-2, "cylinder nabla h " + num(r.residuals.parallel) + " > 1e-2");
        });

        timed("umbilical", [&] {
            const auto p = umbilical_profile(kQuarterPi, 0.0, 0.25);
            const auto f = family_umbilical(p);
            const auto r = classify(f);
            double worst = 0;
            for (const auto& u : sample_points(f.domain, {})) {
                const auto forms = second_fundamental_form(f, u, along(f, u, umbilical_beta_normal(p, u[2])));
                worst = std::max(worst, std::abs(forms.mean_curvature - std::sin(p.at(u[2]).beta)));
            }
            note(o, r.residuals.totally_umbilical < 1e-5,
                 "umbilical " + num(r.residuals.totally_umbilical) + " < 1e-5");
            note(o, worst <= 1e-5, "umbilical |lambda - sin beta| " + num(worst) + " <= 1e-5");
        });
        return o;
    });

    criterion(7, "umbilical ODE: closed form, profile residual, degenerate profile", 0, [] {
        Outcome o;
        const auto s = solve_beta(0.1, 0.0, 0.5);
        double worst = 0;
        for (int k = 0; k <= 500; ++k) {
            const double u = 0.5 * k / 500;
            worst = std::max(worst, std::abs(s.at(u) - beta_closed_form(0.1, u)));
        }
        note(o, worst < 1e-8, "beta0=0.1 on [0,0.5] max error " + num(worst) + " < 1e-8");

        double ode = 0;
        for (const auto& [beta0, hi] : {std::pair{0.1, 0.5}, std::pair{kQuarterPi, 0.25}}) {
            const auto curve = umbilical_profile(beta0, 0.0, hi).curve();
            for (int k = 0; k <= 200; ++k) ode = std::max(ode, std::abs(ode_residual(curve, hi * k / 200)));
        }
        note(o, ode < 1e-6, "ode residual " + num(ode) + " < 1e-6");

        const auto flat = classify(family_umbilical(umbilical_profile(0.0, -0.5, 0.5)));
        note(o, flat.residuals.totally_geodesic < 1e-10,
             "beta0=0 h " + num(flat.residuals.totally_geodesic) + " < 1e-10");
        return o;
    });

    criterion(8, "left translation by (1,-2,0.5,0.3) keeps every residual", 0, [] {
        const Point by{1, -2, 0.5, 0.3};
        const std::vector<Immersion> families{family_z_plane(0.5), family_t_plane(0.2),
                                              family_vertical_plane(1.0, 2.0, 0.5),
                                              family_cylinder(circle_curve(1.0)),
                                              family_umbilical(umbilical_profile(kQuarterPi, 0.0, 0.25))};
        double worst = 0;
        for (const auto& f : families) {
            const auto a = classify(f), b = classify(left_translate(f, by));
            for (double d : {a.residuals.totally_geodesic - b.residuals.totally_geodesic,
                             a.residuals.totally_umbilical - b.residuals.totally_umbilical,
                             a.residuals.parallel - b.residuals.parallel, a.residuals.codazzi - b.residuals.codazzi,
                             a.gauss_residual - b.gauss_residual, a.codazzi_eq_residual - b.codazzi_eq_residual})
                worst = std::max(worst, std::abs(d));
        }
        Outcome o;
        note(o, worst < 1e-10, "max change " + num(worst) + " < 1e-10");
        return o;
    });

    criterion(9, "induced sectional curvature on 20 random planes: zplane -1, tplane 0", 0, [] {
        std::mt19937 rng(9);
        std::uniform_real_distribution<double> d(-1, 1), inner(-0.9, 0.9);
        const auto z = family_z_plane(0.3), t = family_t_plane(-0.4);
        double wz = 0, wt = 0;
        for (int n = 0; n < 20; ++n) {
            const Eigen::Vector3d a(d(rng), d(rng), d(rng)), b(d(rng), d(rng), d(rng));
            const Param u{inner(rng), inner(rng), inner(rng)};
            wz = std::max(wz, std::abs(induced_sectional_curvature(z, u, a, b) + 1.0));
            wt = std::max(wt, std::abs(induced_sectional_curvature(t, u, a, b)));
        }
        Outcome o;
        note(o, wz <= 1e-6, "zplane off by " + num(wz) + " <= 1e-6");
        note(o, wt <= 1e-6, "tplane off by " + num(wt) + " <= 1e-6");
        return o;
    });

    criterion(10, "DSL derivatives on 50 random expressions, parser error positions", 0, [] {
        using namespace curvedsl;
        std::mt19937 rng(2024);
        std::uniform_real_distribution<double> ud(-1.0, 1.0);
        int checked = 0, bad = 0;
        auto central = [](const Expr& e, double u) { return (eval(e, u + 1e-5) - eval(e, u - 1e-5)) / 2e-5; };
        while (checked < 50) {
            const std::string text = random_expr(rng, 3);
            if (text.find('u') == std::string::npos) continue;
            const Expr e = parse(text);
            const Expr d1 = differentiate(e);
            for (int k = 0; k < 3; ++k) {
                const double u = ud(rng), sym = eval(d1, u);
                bad += std::abs(sym - central(e, u)) > 1e-6 * (1 + std::abs(sym));
            }
            ++checked;
        }
        const std::pair<const char*, std::size_t> corpus[] = {{"1/(", 3},   {"", 0},      {"u +", 3},    {"sin u", 4},
                                                              {"2*)", 2},   {"(u", 2},    {"u u", 2},    {"cos(u))", 6},
                                                              {"u^x", 2},   {"tan(u)", 0}};
        int wrong = 0;
        for (const auto& [text, offset] : corpus) {
            try {
                parse(text);
                ++wrong;
            } catch (const SyntaxError& e) {
                wrong += e.offset() != offset;
            }
        }
        Outcome o;
        note(o, bad == 0, "derivative failures " + std::to_string(bad) + "/150 at 1e-6 relative");
        note(o, wrong == 0, "wrong error positions " + std::to_string(wrong) + "/10");
        return o;
    });

    std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
