#include "solgeo/families.hpp"

#include <cmath>
#include <stdexcept>

namespace solgeo {

namespace {

Jacobian constant_jacobian(const CoordComponents& a, const CoordComponents& b, const CoordComponents& c) {
    return {a, b, c};
}

Box3 box(std::array<double, 2> r1, std::array<double, 2> r2, std::array<double, 2> r3) {
    return {{r1[0], r2[0], r3[0]}, {r1[1], r2[1], r3[1]}};
}

double speed_squared(const std::array<Jet, 2>& j) { return j[0].d1 * j[0].d1 + j[1].d1 * j[1].d1; }

ProfileState rk4(const ProfileState& s, double h) {
    auto rhs = [](const ProfileState& p) {
        const double sb = std::sin(p.beta);
        return ProfileState{3.0 * sb, std::exp(-2.0 * p.gamma2) * sb, -std::cos(p.beta)};
    };
    auto axpy = [](const ProfileState& p, double a, const ProfileState& k) {
        return ProfileState{p.beta + a * k.beta, p.gamma1 + a * k.gamma1, p.gamma2 + a * k.gamma2};
    };
    const auto k1 = rhs(s);
    const auto k2 = rhs(axpy(s, 0.5 * h, k1));
    const auto k3 = rhs(axpy(s, 0.5 * h, k2));
    const auto k4 = rhs(axpy(s, h, k3));
    return {s.beta + h / 6.0 * (k1.beta + 2 * k2.beta + 2 * k3.beta + k4.beta),
            s.gamma1 + h / 6.0 * (k1.gamma1 + 2 * k2.gamma1 + 2 * k3.gamma1 + k4.gamma1),
            s.gamma2 + h / 6.0 * (k1.gamma2 + 2 * k2.gamma2 + 2 * k3.gamma2 + k4.gamma2)};
}

double rk4_beta(double beta, double h) {
    auto f = [](double b) { return 3.0 * std::sin(b); };
    const double k1 = f(beta);
    const double k2 = f(beta + 0.5 * h * k1);
    const double k3 = f(beta + 0.5 * h * k2);
    const double k4 = f(beta + h * k3);
    return beta + h / 6.0 * (k1 + 2 * k2 + 2 * k3 + k4);
}

struct NodeRange {
    long first = 0;
    long last = 0;
};

// Nodes k * step covering 0 and [lo, hi].
NodeRange node_range(double lo, double hi, double step) {
    if (!(lo < hi)) throw std::invalid_argument("profile interval must satisfy lo < hi");
    if (!(step > 0.0)) throw std::invalid_argument("profile step must be positive");
    NodeRange r;
    r.first = std::min(0L, static_cast<long>(std::ceil(lo / step)));
    r.last = std::max(0L, static_cast<long>(std::floor(hi / step)));
    return r;
}

// Integrates a state outward from node 0 in both directions.
template <class State, class Step>
std::vector<State> integrate_nodes(const State& start, NodeRange r, double step, Step advance) {
    std::vector<State> nodes(static_cast<std::size_t>(r.last - r.first + 1));
    const std::size_t zero = static_cast<std::size_t>(-r.first);
    nodes[zero] = start;
    for (std::size_t n = zero + 1; n < nodes.size(); ++n) nodes[n] = advance(nodes[n - 1], step);
    for (std::size_t n = zero; n-- > 0;) nodes[n] = advance(nodes[n + 1], -step);
    return nodes;
}

void guard(double beta, double u) {
    if (!(std::abs(std::cos(beta)) >= kCosGuard)) {
        throw std::domain_error("umbilical profile: |cos beta| < " + std::to_string(kCosGuard) + " at u = " +
                                std::to_string(u) + " (beta = " + std::to_string(beta) + ")");
    }
}

std::size_t node_below(double u, long first, std::size_t count, double step) {
    long k = static_cast<long>(std::floor(u / step)) - first;
    k = std::clamp(k, 0L, static_cast<long>(count) - 1);
    return static_cast<std::size_t>(k);
}

}  // namespace

PlaneCurve curve_from_spec(const curvedsl::CurveSpec& spec) {
    using namespace curvedsl;
    const Expr x1 = differentiate(spec.first), x2 = differentiate(x1);
    const Expr y1 = differentiate(spec.second), y2 = differentiate(y1);
    PlaneCurve c;
    c.lo = spec.lo;
    c.hi = spec.hi;
    c.label = print(spec.first) + ", " + print(spec.second);
    c.jet = [=, x0 = spec.first, y0 = spec.second](double u) {
        return std::array<Jet, 2>{Jet{eval(x0, u), eval(x1, u), eval(x2, u)}, Jet{eval(y0, u), eval(y1, u), eval(y2, u)}};
    };
    return c;
}

PlaneCurve line_curve(double dx, double dy, double lo, double hi) {
    PlaneCurve c;
    c.lo = lo;
    c.hi = hi;
    c.label = "line";
    c.jet = [dx, dy](double u) { return std::array<Jet, 2>{Jet{dx * u, dx, 0.0}, Jet{dy * u, dy, 0.0}}; };
    return c;
}

PlaneCurve circle_curve(double radius, double lo, double hi) {
    PlaneCurve c;
    c.lo = lo;
    c.hi = hi;
    c.label = "circle";
    c.jet = [radius](double u) {
        const double cu = std::cos(u), su = std::sin(u);
        return std::array<Jet, 2>{Jet{radius * cu, -radius * su, -radius * cu}, Jet{radius * su, radius * cu, -radius * su}};
    };
    return c;
}

PlaneCurve reversed(const PlaneCurve& c) {
    PlaneCurve r = c;
    r.label = c.label + " (reversed)";
    r.jet = [j = c.jet, s = c.lo + c.hi](double u) {
        auto out = j(s - u);
        for (auto& comp : out) comp.d1 = -comp.d1;
        return out;
    };
    return r;
}

double plane_curve_curvature(const PlaneCurve& c, double u) {
    const auto j = c.jet(u);
    const double s2 = speed_squared(j);
    if (!(s2 > 0.0)) throw DegenerateError("plane curve is irregular at u = " + std::to_string(u));
    return (j[0].d2 * j[1].d1 - j[0].d1 * j[1].d2) / std::pow(s2, 1.5);
}

Immersion family_z_plane(double c, const Box3& domain) {
    Immersion f;
    f.name = "zplane";
    f.domain = domain;
    f.map = [c](const Param& u) { return Point{u[0], u[1], c, u[2]}; };
    f.jacobian = [](const Param&) { return constant_jacobian({1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}); };
    f.hessian = [](const Param&) { return Hessian{}; };
    return f;
}

Immersion family_t_plane(double c, const Box3& domain) {
    Immersion f;
    f.name = "tplane";
    f.domain = domain;
    f.map = [c](const Param& u) { return Point{u[0], u[1], u[2], c}; };
    f.jacobian = [](const Param&) { return constant_jacobian({1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}); };
    f.hessian = [](const Param&) { return Hessian{}; };
    return f;
}

Immersion family_vertical_plane(double a, double b, double c, const Box3& domain) {
    const double n2 = a * a + b * b;
    if (!(n2 > 0.0)) throw std::invalid_argument("vertical plane needs (a, b) != (0, 0)");
    const double x0 = c * a / n2, y0 = c * b / n2;
    Immersion f;
    f.name = "vplane";
    f.domain = domain;
    f.map = [=](const Param& u) { return Point{x0 + b * u[0], y0 - a * u[0], u[1], u[2]}; };
    f.jacobian = [=](const Param&) { return constant_jacobian({b, -a, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}); };
    f.hessian = [](const Param&) { return Hessian{}; };
    return f;
}

Immersion family_cylinder(const PlaneCurve& curve, std::array<double, 2> u2_range, std::array<double, 2> u3_range) {
    Immersion f;
    f.name = "cylinder";
    f.domain = box({curve.lo, curve.hi}, u2_range, u3_range);
    auto regular_jet = [j = curve.jet](double u) {
        const auto jet = j(u);
        if (!(speed_squared(jet) > 0.0)) throw DegenerateError("cylinder: curve irregular at u1 = " + std::to_string(u));
        return jet;
    };
    f.map = [regular_jet](const Param& u) {
        const auto j = regular_jet(u[0]);
        return Point{j[0].value, j[1].value, u[1], u[2]};
    };
    f.jacobian = [regular_jet](const Param& u) {
        const auto j = regular_jet(u[0]);
        return constant_jacobian({j[0].d1, j[1].d1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1});
    };
    f.hessian = [regular_jet](const Param& u) {
        const auto j = regular_jet(u[0]);
        Hessian h{};
        h[0][0] = {j[0].d2, j[1].d2, 0, 0};
        return h;
    };
    return f;
}

double cylinder_second_form_closed_form(const PlaneCurve& curve, double u1, double t) {
    return std::exp(t) * plane_curve_curvature(curve, u1);
}

double beta_closed_form(double beta0, double u) { return 2.0 * std::atan(std::tan(0.5 * beta0) * std::exp(3.0 * u)); }

double BetaSolution::at(double u) const {
    const std::size_t n = node_below(u, first_index, beta.size(), step);
    return rk4_beta(beta[n], u - node_u(n));
}

BetaSolution solve_beta(double beta0, double lo, double hi, double step) {
    const NodeRange r = node_range(lo, hi, step);
    BetaSolution sol;
    sol.beta0 = beta0;
    sol.step = step;
    sol.first_index = r.first;
    sol.beta = integrate_nodes(beta0, r, step, rk4_beta);
    for (std::size_t n = 0; n < sol.beta.size(); ++n) guard(sol.beta[n], sol.node_u(n));
    guard(sol.at(lo), lo);
    guard(sol.at(hi), hi);
    return sol;
}

ProfileState UmbilicalProfile::at(double u) const {
    if (!(u >= lo && u <= hi))
        throw std::domain_error("umbilical profile evaluated at u = " + std::to_string(u) + " outside [" +
                                std::to_string(lo) + ", " + std::to_string(hi) + "]");
    const std::size_t n = node_below(u, first_index, nodes.size(), step);
    return rk4(nodes[n], u - (first_index + static_cast<long>(n)) * step);
}

std::array<Jet, 2> UmbilicalProfile::jet(double u) const {
    const ProfileState s = at(u);
    const double sb = std::sin(s.beta), cb = std::cos(s.beta), e = std::exp(-2.0 * s.gamma2);
    return {Jet{s.gamma1, e * sb, 5.0 * e * cb * sb}, Jet{s.gamma2, -cb, 3.0 * sb * sb}};
}

PlaneCurve UmbilicalProfile::curve() const {
    PlaneCurve c;
    c.lo = lo;
    c.hi = hi;
    c.label = "umbilical profile";
    c.jet = [self = *this](double u) { return self.jet(u); };
    return c;
}

UmbilicalProfile umbilical_profile(double beta0, double lo, double hi, double step) {
    const NodeRange r = node_range(lo, hi, step);
    UmbilicalProfile p;
    p.beta0 = beta0;
    p.lo = lo;
    p.hi = hi;
    p.step = step;
    p.first_index = r.first;
    p.nodes = integrate_nodes(ProfileState{beta0, 0.0, 0.0}, r, step, rk4);
    for (std::size_t n = 0; n < p.nodes.size(); ++n) guard(p.nodes[n].beta, (r.first + static_cast<long>(n)) * step);
    guard(p.at(lo).beta, lo);
    guard(p.at(hi).beta, hi);
    return p;
}

Immersion family_umbilical(const UmbilicalProfile& profile, std::array<double, 2> u1_range,
                           std::array<double, 2> u2_range) {
    Immersion f;
    f.name = "umbilical";
    f.domain = box(u1_range, u2_range, {profile.lo, profile.hi});
    f.map = [profile](const Param& u) {
        const auto s = profile.at(u[2]);
        return Point{u[0], u[1], s.gamma1, s.gamma2};
    };
    f.jacobian = [profile](const Param& u) {
        const auto j = profile.jet(u[2]);
        return constant_jacobian({1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, j[0].d1, j[1].d1});
    };
    f.hessian = [profile](const Param& u) {
        const auto j = profile.jet(u[2]);
        Hessian h{};
        h[2][2] = {0, 0, j[0].d2, j[1].d2};
        return h;
    };
    return f;
}

double ode_residual(const PlaneCurve& zt_curve, double u) {
    const auto j = zt_curve.jet(u);
    const double g1p = j[0].d1, g1pp = j[0].d2, g2 = j[1].value, g2p = j[1].d1, g2pp = j[1].d2;
    return g1pp * g2p - g1p * g2pp + 5.0 * g1p * g2p * g2p + 3.0 * std::exp(4.0 * g2) * g1p * g1p * g1p;
}

double mean_curvature_closed_form(const PlaneCurve& zt_curve, double u) {
    const auto j = zt_curve.jet(u);
    const double g1p = j[0].d1, g1pp = j[0].d2, g2 = j[1].value, g2p = j[1].d1, g2pp = j[1].d2;
    const double e4 = std::exp(4.0 * g2);
    const double s2 = g1p * g1p * e4 + g2p * g2p;
    if (!(s2 > 0.0)) throw DegenerateError("zt-plane curve irregular at u = " + std::to_string(u));
    const double numer = g1pp * g2p - g1p * g2pp + 4.0 * g1p * g2p * g2p + 2.0 * e4 * g1p * g1p * g1p;
    return std::exp(2.0 * g2) * numer / std::pow(s2, 1.5);
}

FrameComponents umbilical_reference_normal(const PlaneCurve& zt_curve, double u) {
    const auto j = zt_curve.jet(u);
    const double g1p = j[0].d1, g2 = j[1].value, g2p = j[1].d1;
    const double e2 = std::exp(2.0 * g2);
    const double len = std::sqrt(g1p * g1p * e2 * e2 + g2p * g2p);
    if (!(len > 0.0)) throw DegenerateError("zt-plane curve irregular at u = " + std::to_string(u));
    return {0.0, 0.0, g2p / len, -g1p * e2 / len};
}

FrameComponents umbilical_beta_normal(const UmbilicalProfile& profile, double u) {
    const double beta = profile.at(u).beta;
    return {0.0, 0.0, std::cos(beta), std::sin(beta)};
}

}  // namespace solgeo
