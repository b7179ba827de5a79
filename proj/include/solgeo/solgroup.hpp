#pragma once

// Closed-form Riemannian geometry of the solvable Lie group Sol^4_0.
//
// Points are coordinate 4-tuples (x, y, z, t) with group law
//   (a,b,c,d) . (x,y,z,t) = (a + e^d x, b + e^d y, c + e^{-2d} z, d + t)
// and left-invariant metric e^{-2t}(dx^2 + dy^2) + e^{4t} dz^2 + dt^2.
//
// Tangent vectors are stored by their components in the orthonormal
// left-invariant frame E1 = e^t d/dx, E2 = e^t d/dy, E3 = e^{-2t} d/dz,
// E4 = d/dt. In that frame the bracket, connection and curvature tables are
// constant, so everything here is exact up to floating point rounding.
// Frame indices in the public API are 1-based (E1..E4).

#include <array>
#include <functional>
#include <stdexcept>
#include <string>
#include <variant>

namespace solgeo {

using FrameComponents = std::array<double, 4>;
using CoordComponents = std::array<double, 4>;

struct Point {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    double t = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

struct TangentVector {
    Point base;
    FrameComponents comps{};
};

/// Raised for degenerate geometric input: a collapsed plane, a rank-deficient
/// set of tangent vectors, a singular induced metric.
class DegenerateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a computation produces or receives a non-finite value.
class NonFiniteError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when vectors attached to different points are combined.
class BasePointMismatch : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr double kDefaultStep = 1e-5;
inline constexpr double kDegeneratePlaneThreshold = 1e-12;

// ---------------------------------------------------------------------------
// Frame-component arithmetic

FrameComponents operator+(const FrameComponents& a, const FrameComponents& b);
FrameComponents operator-(const FrameComponents& a, const FrameComponents& b);
FrameComponents operator*(double s, const FrameComponents& a);
double dot(const FrameComponents& a, const FrameComponents& b);
FrameComponents unit(int i);

// ---------------------------------------------------------------------------
// Group structure

Point group_mul(const Point& p, const Point& q);
Point group_inv(const Point& p);
inline Point identity() { return {}; }

bool is_finite(const Point& p);

// ---------------------------------------------------------------------------
// Frame and metric

/// Coordinate-basis scale of the frame at p: E_i = s_i d/dx^i with
/// s = (e^t, e^t, e^{-2t}, 1).
CoordComponents frame_scale(const Point& p);

/// E1..E4 at p, each expressed in the coordinate basis (d/dx, d/dy, d/dz, d/dt).
std::array<CoordComponents, 4> frame_at(const Point& p);

TangentVector frame_vector(const Point& p, int i);

CoordComponents to_coordinates(const TangentVector& v);
TangentVector from_coordinates(const Point& p, const CoordComponents& c);

/// Diagonal of the coordinate-basis metric matrix at p.
CoordComponents metric_diagonal(const Point& p);

double metric_eval(const Point& p, const TangentVector& v, const TangentVector& w);
/// Metric applied to coordinate-basis component vectors at p.
double metric_eval_coords(const Point& p, const CoordComponents& v, const CoordComponents& w);
double norm(const TangentVector& v);

// ---------------------------------------------------------------------------
// Structure constants, connection, curvature (frame tables)

/// [E_i, E_j] in frame components.
FrameComponents lie_bracket_frame(int i, int j);

/// nabla_{E_i} E_j in frame components.
FrameComponents nabla_frame(int i, int j);

/// R(E_i, E_j) E_k with R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z.
/// Only the six sectional values are stored; the rest follows from the
/// symmetries of the curvature tensor.
FrameComponents curvature_table(int i, int j, int k);

/// Sectional curvature of span{E_i, E_j}, i != j.
double frame_sectional_curvature(int i, int j);

/// Connection applied to arbitrary (constant-coefficient) frame vectors:
/// sum_ij X^i Y^j nabla_{E_i} E_j.
FrameComponents nabla_frame_bilinear(const FrameComponents& x, const FrameComponents& y);

/// R(X,Y)Z by multilinear expansion of curvature_table.
TangentVector curvature_tensor(const TangentVector& x, const TangentVector& y, const TangentVector& z);

/// R(X,Y)Z from the invariant expression in terms of the metric, J+, J- and
/// the projection P onto E4.
TangentVector curvature_invariant(const TangentVector& x, const TangentVector& y, const TangentVector& z);

/// g(R(v,w)w, v) / (|v|^2 |w|^2 - g(v,w)^2). Throws DegenerateError when the
/// denominator drops below kDegeneratePlaneThreshold.
double sectional_curvature(const Point& p, const TangentVector& v, const TangentVector& w);

// ---------------------------------------------------------------------------
// Complex structures and the E4 projection

enum class Sign { Plus, Minus };

FrameComponents apply_J(Sign s, const FrameComponents& v);
TangentVector apply_J(Sign s, const TangentVector& v);
TangentVector apply_Jplus(const TangentVector& v);
TangentVector apply_Jminus(const TangentVector& v);
TangentVector apply_P(const TangentVector& v);

/// (nabla J)(X, Y) = nabla_X (J Y) - J(nabla_X Y), closed form.
TangentVector nabla_J(Sign s, const TangentVector& x, const TangentVector& y);
/// (nabla P)(X, Y), closed form.
TangentVector nabla_P(const TangentVector& x, const TangentVector& y);
/// nabla_X E4 = X/2 - 2 PX + (3/2) J+ J- X.
TangentVector nabla_E4(const TangentVector& x);

// ---------------------------------------------------------------------------
// Vector fields and covariant differentiation

struct VectorFieldFn {
    std::function<FrameComponents(const Point&)> eval;
    /// Optional: derivative of the frame components of the field along the
    /// coordinate-basis direction `dir` at p.
    std::function<FrameComponents(const Point&, const CoordComponents& dir)> directional;
};

VectorFieldFn constant_field(const FrameComponents& comps);

/// nabla_X Y at p = X(Y^i) E_i + Y^i nabla_X E_i. Directional derivatives of
/// the component functions use the exact callback when present, else central
/// differences with step h along the coordinate direction of X(p).
TangentVector covariant_derivative(const VectorFieldFn& x, const VectorFieldFn& y, const Point& p,
                                   double h = kDefaultStep);

// ---------------------------------------------------------------------------
// Isometries

struct LeftTranslation {
    Point by;
};
struct XYRotation {
    double theta = 0.0;
};
struct ZReflection {};

using Isometry = std::variant<LeftTranslation, XYRotation, ZReflection>;

Point apply_isometry(const Isometry& phi, const Point& p);
/// Coordinate Jacobian of phi at p applied to a coordinate vector.
CoordComponents isometry_differential(const Isometry& phi, const Point& p, const CoordComponents& v);
/// Push-forward of a tangent vector, result attached at phi(p).
TangentVector push_forward(const Isometry& phi, const TangentVector& v);

/// |g(d phi v, d phi w) - g(v, w)|.
double isometry_check(const Isometry& phi, const Point& p, const TangentVector& v, const TangentVector& w);

std::string to_string(const Point& p);

}  // namespace solgeo
