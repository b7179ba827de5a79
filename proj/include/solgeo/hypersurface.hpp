#pragma once

// Extrinsic geometry of hypersurfaces of Sol^4_0 given as parametrized maps
// from a box in R^3: induced metric, unit normal, second fundamental form,
// shape operator, covariant derivative of h, the Gauss and Codazzi equations,
// and the four classes
//   totally geodesic (h = 0), parallel (nabla h = 0),
//   Codazzi (nabla h totally symmetric), totally umbilical (h = lambda g).
//
// The second fundamental form is scalar, taken against the unit normal N.

#include <Eigen/Dense>
#include <array>
#include <functional>
#include <string>
#include <vector>

#include "solgeo/solgroup.hpp"

namespace solgeo {

using Param = std::array<double, 3>;
/// Column i is dF/du_i in the coordinate basis.
using Jacobian = std::array<CoordComponents, 3>;
/// Entry (i,j) is d^2F/du_i du_j in the coordinate basis.
using Hessian = std::array<std::array<CoordComponents, 3>, 3>;

struct Box3 {
    Param lo{-1.0, -1.0, -1.0};
    Param hi{1.0, 1.0, 1.0};

    bool contains(const Param& u, double margin = 0.0) const;
};

struct Immersion {
    std::function<Point(const Param&)> map;
    std::function<Jacobian(const Param&)> jacobian;  // optional
    std::function<Hessian(const Param&)> hessian;    // optional
    Box3 domain;
    std::string name;
};

/// Steps used when an immersion lacks exact derivatives.
inline constexpr double kJacobianStep = 1e-5;
inline constexpr double kHessianStep = 1e-4;
/// Step for differences of induced quantities (metric, h) in parameter space.
inline constexpr double kInducedStep = 1e-4;

Jacobian jacobian_at(const Immersion& f, const Param& u);
Hessian hessian_at(const Immersion& f, const Param& u);

enum class Orientation { Standard, Flipped };

/// Coordinate tangents dF/du_i in frame components at F(u).
/// Throws DegenerateError if they are linearly dependent.
std::array<TangentVector, 3> coordinate_tangents(const Immersion& f, const Param& u);

/// Frame-component generalized cross product: the unique vector n with
/// n . w = det(a, b, c, w) for all w.
FrameComponents cross4(const FrameComponents& a, const FrameComponents& b, const FrameComponents& c);

/// Unit normal with det(T1, T2, T3, N) > 0 (Standard) or < 0 (Flipped).
TangentVector unit_normal(const Immersion& f, const Param& u, Orientation o = Orientation::Standard);

struct FundamentalForms {
    Point point;
    std::array<TangentVector, 3> tangents;
    Eigen::Matrix3d induced_metric;
    Eigen::Matrix3d second_form;  ///< h(d_i, d_j) = g(nabla_{d_i} d_j, N)
    TangentVector normal;
    double mean_curvature = 0.0;  ///< lambda = g(H, N) = tr(g^{-1} h) / 3
};

FundamentalForms second_fundamental_form(const Immersion& f, const Param& u,
                                         Orientation o = Orientation::Standard);

/// A = g^{-1} h.
Eigen::Matrix3d shape_operator(const FundamentalForms& forms);

/// Eigenvalues of the shape operator (principal curvatures), ascending.
Eigen::Vector3d principal_curvatures(const FundamentalForms& forms);

/// h(X, Y) for parameter-space vectors X = X^i d_i.
double second_form_on(const FundamentalForms& forms, const Eigen::Vector3d& x, const Eigen::Vector3d& y);

/// Christoffel symbols Gamma^m_{ij} of the induced metric, as the tangential
/// part of the ambient second derivative. Indexed [m][i][j].
using Christoffel = std::array<std::array<std::array<double, 3>, 3>, 3>;
Christoffel induced_christoffel(const Immersion& f, const Param& u, double step = kInducedStep);

struct NablaH {
    std::array<std::array<std::array<double, 3>, 3>, 3> v{};  ///< (nabla h)(d_i, d_j, d_k)

    double operator()(int i, int j, int k) const { return v[i][j][k]; }
};

NablaH nabla_h(const Immersion& f, const Param& u, double step = kInducedStep,
               Orientation o = Orientation::Standard);

/// g-invariant norms of tensors in parameter coordinates.
double tensor_norm(const Eigen::Matrix3d& g_inverse, const Eigen::Matrix3d& t);
double tensor_norm(const Eigen::Matrix3d& g_inverse, const NablaH& t);

/// g-invariant norms of the defect tensors
///   g(R~(X,Y)Z, W) - R(X,Y,Z,W) + h(Y,Z)h(X,W) - h(X,Z)h(Y,W)
///   g(R~(X,Y)Z, N) - (nabla h)(X,Y,Z) + (nabla h)(Y,X,Z).
struct GaussCodazziResidual {
    double gauss = 0.0;
    double codazzi = 0.0;
};

/// Both equations checked on all coordinate tangent triples at u. The
/// intrinsic curvature comes from differences of induced_christoffel.
GaussCodazziResidual gauss_codazzi_check(const Immersion& f, const Param& u, double step = kInducedStep);

/// Intrinsic sectional curvature of the plane spanned by parameter-space
/// vectors a, b, via the Gauss equation.
double induced_sectional_curvature(const Immersion& f, const Param& u, const Eigen::Vector3d& a,
                                   const Eigen::Vector3d& b);

struct Tolerances {
    double totally_geodesic = 1e-6;
    double totally_umbilical = 1e-6;
    double parallel = 1e-4;
    double codazzi = 1e-4;
};

struct SampleGrid {
    int points_per_axis = 5;
    double margin = 0.05;  ///< fraction of each side left out at both ends
};

struct ClassifyOptions {
    SampleGrid grid;
    Tolerances tolerances;
    double step = kInducedStep;
    Orientation orientation = Orientation::Standard;
    int jobs = 1;
};

struct ClassResiduals {
    double totally_geodesic = 0.0;   ///< max |h|
    double totally_umbilical = 0.0;  ///< max |h - lambda g|
    double parallel = 0.0;           ///< max |nabla h|
    double codazzi = 0.0;            ///< max |(nabla h)(X,Y,Z) - (nabla h)(Y,X,Z)|
};

struct ClassVerdicts {
    bool totally_geodesic = false;
    bool totally_umbilical = false;
    bool parallel = false;
    bool codazzi = false;
};

struct ClassificationReport {
    ClassResiduals residuals;
    ClassVerdicts verdicts;
    double gauss_residual = 0.0;
    double codazzi_eq_residual = 0.0;
    long samples = 0;
};

std::vector<Param> sample_points(const Box3& domain, const SampleGrid& grid);

ClassificationReport classify(const Immersion& f, const ClassifyOptions& options = {});

// Immersion transforms.

/// u -> a . F(u) for a fixed group element a.
Immersion left_translate(const Immersion& f, const Point& a);

/// v -> F(A v + b) on the given domain in v.
Immersion affine_reparametrize(const Immersion& f, const Eigen::Matrix3d& a, const Eigen::Vector3d& b,
                               const Box3& domain);

/// Drops exact derivatives so that they are recovered by differences.
Immersion without_exact_derivatives(const Immersion& f);

}  // namespace solgeo
