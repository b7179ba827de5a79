#pragma once

// Hypersurface families of Sol^4_0 with known second fundamental forms:
//   z = c            totally geodesic, intrinsic curvature -1
//   t = c            parallel, flat, h = diag(1, 1, -2) against E4
//   a x + b y = c    totally geodesic, non-constant intrinsic curvature
//   cylinders (g1(u1), g2(u1), u2, u3) over a plane curve: Codazzi
//   (u1, u2, g1(u3), g2(u3)) over an umbilical profile: totally umbilical
// and the profile machinery: beta' = 3 sin(beta), g1' = e^{-2 g2} sin(beta),
// g2' = -cos(beta).

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "solgeo/curvedsl.hpp"
#include "solgeo/hypersurface.hpp"

namespace solgeo {

/// Value and first two derivatives of a scalar function of one variable.
struct Jet {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

struct PlaneCurve {
    std::function<std::array<Jet, 2>(double)> jet;
    double lo = 0.0;
    double hi = 1.0;
    std::string label;
};

PlaneCurve curve_from_spec(const curvedsl::CurveSpec& spec);
PlaneCurve line_curve(double dx, double dy, double lo = -1.0, double hi = 1.0);
PlaneCurve circle_curve(double radius, double lo = -1.0, double hi = 1.0);
/// Same trace traversed backwards: u -> curve(lo + hi - u).
PlaneCurve reversed(const PlaneCurve& c);

/// (g1'' g2' - g1' g2'') / (g1'^2 + g2'^2)^{3/2}. Throws DegenerateError at an
/// irregular point.
double plane_curve_curvature(const PlaneCurve& c, double u);

Immersion family_z_plane(double c, const Box3& domain = {});
Immersion family_t_plane(double c, const Box3& domain = {});
/// Plane a x + b y = c, parametrized by (p0 + u1 (b, -a), u2, u3).
Immersion family_vertical_plane(double a, double b, double c, const Box3& domain = {});
/// (g1(u1), g2(u1), u2, u3); u1 ranges over the curve interval, (u2, u3)
/// over the given box.
Immersion family_cylinder(const PlaneCurve& curve, std::array<double, 2> u2_range = {-1.0, 1.0},
                          std::array<double, 2> u3_range = {-1.0, 1.0});

/// e^{t} kappa, the closed-form h(W, W) of a cylinder against the normal
/// (g2' E1 - g1' E2) / |g'|.
double cylinder_second_form_closed_form(const PlaneCurve& curve, double u1, double t);

// ---------------------------------------------------------------------------
// Umbilical profile curves

inline constexpr double kProfileStep = 1e-3;
/// |cos beta| below this is refused; the classification breaks down at cos beta = 0.
inline constexpr double kCosGuard = 0.01;

/// Separable solution of beta' = 3 sin(beta): tan(beta/2) = tan(beta0/2) e^{3u}.
double beta_closed_form(double beta0, double u);

struct BetaSolution {
    double beta0 = 0.0;
    double step = kProfileStep;
    long first_index = 0;  ///< node n sits at u = (first_index + n) * step
    std::vector<double> beta;

    double at(double u) const;
    double node_u(std::size_t n) const { return (first_index + static_cast<long>(n)) * step; }
};

/// Classical fixed-step RK4 for beta' = 3 sin(beta), anchored at beta(0) =
/// beta0 and covering [lo, hi]. Throws std::domain_error if |cos beta| drops
/// below kCosGuard on the interval.
BetaSolution solve_beta(double beta0, double lo, double hi, double step = kProfileStep);

struct ProfileState {
    double beta = 0.0;
    double gamma1 = 0.0;
    double gamma2 = 0.0;
};

struct UmbilicalProfile {
    double beta0 = 0.0;
    double lo = 0.0;
    double hi = 0.0;
    double step = kProfileStep;
    long first_index = 0;
    std::vector<ProfileState> nodes;

    /// State at u from a partial RK4 step off the node below u. Throws
    /// std::domain_error outside [lo, hi].
    ProfileState at(double u) const;
    /// (gamma1, gamma2) with derivatives from the defining relations.
    std::array<Jet, 2> jet(double u) const;
    PlaneCurve curve() const;
};

/// Integrates (beta, gamma1, gamma2) from (beta0, 0, 0) at u = 0.
UmbilicalProfile umbilical_profile(double beta0, double lo, double hi, double step = kProfileStep);

/// (u1, u2, gamma1(u3), gamma2(u3)) with u3 over the profile interval.
Immersion family_umbilical(const UmbilicalProfile& profile, std::array<double, 2> u1_range = {-1.0, 1.0},
                           std::array<double, 2> u2_range = {-1.0, 1.0});

/// g1'' g2' - g1' g2'' + 5 g1' g2'^2 + 3 e^{4 g2} g1'^3 for a zt-plane curve.
double ode_residual(const PlaneCurve& zt_curve, double u);

/// Scalar factor of the mean curvature vector of (u1, u2, g1(u3), g2(u3))
/// against N = (g2' E3 - g1' e^{2 g2} E4) / sqrt(g1'^2 e^{4 g2} + g2'^2).
/// For umbilical profiles it is also the common value of h(E1,E1), h(E2,E2)
/// and h(W,W).
double mean_curvature_closed_form(const PlaneCurve& zt_curve, double u);

/// The normal used by mean_curvature_closed_form, in frame components.
FrameComponents umbilical_reference_normal(const PlaneCurve& zt_curve, double u);

/// cos(beta) E3 + sin(beta) E4 at profile parameter u. Against this normal
/// lambda = sin(beta); on the profile it is minus the reference normal above.
FrameComponents umbilical_beta_normal(const UmbilicalProfile& profile, double u);

}  // namespace solgeo
