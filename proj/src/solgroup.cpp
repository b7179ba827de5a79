#include "solgeo/solgroup.hpp"

#include <cmath>
#include <cstdio>

namespace solgeo {

namespace {

void check_index(int i) {
    if (i < 1 || i > 4) {
        throw std::out_of_range("frame index " + std::to_string(i) + " outside 1..4");
    }
}

void check_same_base(const TangentVector& a, const TangentVector& b) {
    if (!(a.base == b.base)) {
        throw BasePointMismatch("tangent vectors attached at " + to_string(a.base) + " and " +
                                to_string(b.base));
    }
}

// Sectional curvatures K_ij, i < j, indexed by the unordered pair.
constexpr double kSectional[4][4] = {
    {0.0, -1.0, 2.0, -1.0},
    {-1.0, 0.0, 2.0, -1.0},
    {2.0, 2.0, 0.0, -4.0},
    {-1.0, -1.0, -4.0, 0.0},
};

}  // namespace

FrameComponents operator+(const FrameComponents& a, const FrameComponents& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}

FrameComponents operator-(const FrameComponents& a, const FrameComponents& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

FrameComponents operator*(double s, const FrameComponents& a) {
    return {s * a[0], s * a[1], s * a[2], s * a[3]};
}

double dot(const FrameComponents& a, const FrameComponents& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

FrameComponents unit(int i) {
    check_index(i);
    FrameComponents e{};
    e[i - 1] = 1.0;
    return e;
}

Point group_mul(const Point& p, const Point& q) {
    const double ed = std::exp(p.t);
    return {p.x + ed * q.x, p.y + ed * q.y, p.z + q.z / (ed * ed), p.t + q.t};
}

Point group_inv(const Point& p) {
    const double emt = std::exp(-p.t);
    return {-emt * p.x, -emt * p.y, -std::exp(2.0 * p.t) * p.z, -p.t};
}

bool is_finite(const Point& p) {
    return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z) && std::isfinite(p.t);
}

CoordComponents frame_scale(const Point& p) {
    const double et = std::exp(p.t);
    return {et, et, std::exp(-2.0 * p.t), 1.0};
}

std::array<CoordComponents, 4> frame_at(const Point& p) {
    const auto s = frame_scale(p);
    std::array<CoordComponents, 4> frame{};
    for (int i = 0; i < 4; ++i) frame[i][i] = s[i];
    return frame;
}

TangentVector frame_vector(const Point& p, int i) { return {p, unit(i)}; }

CoordComponents to_coordinates(const TangentVector& v) {
    const auto s = frame_scale(v.base);
    return {s[0] * v.comps[0], s[1] * v.comps[1], s[2] * v.comps[2], s[3] * v.comps[3]};
}

TangentVector from_coordinates(const Point& p, const CoordComponents& c) {
    const auto s = frame_scale(p);
    return {p, {c[0] / s[0], c[1] / s[1], c[2] / s[2], c[3] / s[3]}};
}

CoordComponents metric_diagonal(const Point& p) {
    const double e2 = std::exp(-2.0 * p.t);
    return {e2, e2, std::exp(4.0 * p.t), 1.0};
}

double metric_eval(const Point& p, const TangentVector& v, const TangentVector& w) {
    if (!(v.base == p) || !(w.base == p)) {
        throw BasePointMismatch("metric_eval at " + to_string(p) + " given vectors at " +
                                to_string(v.base) + " and " + to_string(w.base));
    }
    return dot(v.comps, w.comps);
}

double metric_eval_coords(const Point& p, const CoordComponents& v, const CoordComponents& w) {
    const auto g = metric_diagonal(p);
    return g[0] * v[0] * w[0] + g[1] * v[1] * w[1] + g[2] * v[2] * w[2] + g[3] * v[3] * w[3];
}

double norm(const TangentVector& v) { return std::sqrt(dot(v.comps, v.comps)); }

FrameComponents lie_bracket_frame(int i, int j) {
    check_index(i);
    check_index(j);
    // [E_a, E4] = c_a E_a with c = (-1, -1, 2); all other brackets vanish.
    constexpr double c[3] = {-1.0, -1.0, 2.0};
    FrameComponents out{};
    if (j == 4 && i != 4) out[i - 1] = c[i - 1];
    if (i == 4 && j != 4) out[j - 1] = -c[j - 1];
    return out;
}

FrameComponents nabla_frame(int i, int j) {
    check_index(i);
    check_index(j);
    static constexpr double table[4][4][4] = {
        {{0, 0, 0, 1}, {0, 0, 0, 0}, {0, 0, 0, 0}, {-1, 0, 0, 0}},
        {{0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 0, 0}, {0, -1, 0, 0}},
        {{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, -2}, {0, 0, 2, 0}},
        {{0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}},
    };
    const auto& e = table[i - 1][j - 1];
    return {e[0], e[1], e[2], e[3]};
}

double frame_sectional_curvature(int i, int j) {
    check_index(i);
    check_index(j);
    if (i == j) throw DegenerateError("sectional curvature of a degenerate frame plane");
    return kSectional[i - 1][j - 1];
}

FrameComponents curvature_table(int i, int j, int k) {
    check_index(i);
    check_index(j);
    check_index(k);
    FrameComponents out{};
    if (i == j) return out;
    const double kij = kSectional[i - 1][j - 1];
    // R_{ijkl} is nonzero only for {k,l} = {i,j}.
    if (k == j) out[i - 1] = kij;
    if (k == i) out[j - 1] = -kij;
    return out;
}

FrameComponents nabla_frame_bilinear(const FrameComponents& x, const FrameComponents& y) {
    FrameComponents out{};
    for (int i = 1; i <= 4; ++i) {
        if (x[i - 1] == 0.0) continue;
        for (int j = 1; j <= 4; ++j) {
            if (y[j - 1] == 0.0) continue;
            out = out + (x[i - 1] * y[j - 1]) * nabla_frame(i, j);
        }
    }
    return out;
}

TangentVector curvature_tensor(const TangentVector& x, const TangentVector& y, const TangentVector& z) {
    check_same_base(x, y);
    check_same_base(x, z);
    FrameComponents out{};
    for (int i = 1; i <= 4; ++i) {
        for (int j = 1; j <= 4; ++j) {
            if (i == j) continue;
            const double xy = x.comps[i - 1] * y.comps[j - 1];
            if (xy == 0.0) continue;
            for (int k = 1; k <= 4; ++k) {
                const double c = xy * z.comps[k - 1];
                if (c != 0.0) out = out + c * curvature_table(i, j, k);
            }
        }
    }
    return {x.base, out};
}

TangentVector curvature_invariant(const TangentVector& x, const TangentVector& y, const TangentVector& z) {
    check_same_base(x, y);
    check_same_base(x, z);
    const auto& X = x.comps;
    const auto& Y = y.comps;
    const auto& Z = z.comps;

    FrameComponents out = 2.0 * (dot(Y, Z) * X - dot(X, Z) * Y);

    for (Sign s : {Sign::Plus, Sign::Minus}) {
        const auto JX = apply_J(s, X);
        const auto JY = apply_J(s, Y);
        const auto JZ = apply_J(s, Z);
        out = out - 0.5 * (dot(JY, Z) * JX - dot(JX, Z) * JY + 2.0 * dot(X, JY) * JZ);
    }

    const FrameComponents PX{0, 0, 0, X[3]};
    const FrameComponents PY{0, 0, 0, Y[3]};
    out = out - 3.0 * (dot(PY, Z) * X + dot(Y, Z) * PX - dot(PX, Z) * Y - dot(X, Z) * PY);
    return {x.base, out};
}

double sectional_curvature(const Point& p, const TangentVector& v, const TangentVector& w) {
    const double vv = metric_eval(p, v, v);
    const double ww = metric_eval(p, w, w);
    const double vw = metric_eval(p, v, w);
    const double denom = vv * ww - vw * vw;
    if (!(denom >= kDegeneratePlaneThreshold)) {
        throw DegenerateError("sectional curvature: plane is degenerate (area^2 = " +
                              std::to_string(denom) + ")");
    }
    return metric_eval(p, curvature_tensor(v, w, w), v) / denom;
}

FrameComponents apply_J(Sign s, const FrameComponents& v) {
    // J+: E1->E2, E2->-E1, E3->E4, E4->-E3. J- flips the (E3,E4) block.
    if (s == Sign::Plus) return {-v[1], v[0], -v[3], v[2]};
    return {-v[1], v[0], v[3], -v[2]};
}

TangentVector apply_J(Sign s, const TangentVector& v) { return {v.base, apply_J(s, v.comps)}; }
TangentVector apply_Jplus(const TangentVector& v) { return apply_J(Sign::Plus, v); }
TangentVector apply_Jminus(const TangentVector& v) { return apply_J(Sign::Minus, v); }
TangentVector apply_P(const TangentVector& v) { return {v.base, {0.0, 0.0, 0.0, v.comps[3]}}; }

TangentVector nabla_J(Sign s, const TangentVector& x, const TangentVector& y) {
    check_same_base(x, y);
    const auto& X = x.comps;
    const auto& Y = y.comps;
    const auto E4 = unit(4);
    const auto JX = apply_J(s, X);
    const auto JY = apply_J(s, Y);
    const auto JE4 = apply_J(s, E4);
    FrameComponents out = -dot(JY, E4) * X + dot(Y, E4) * JX + dot(JY, X) * E4 - dot(Y, X) * JE4;
    return {x.base, out};
}

TangentVector nabla_P(const TangentVector& x, const TangentVector& y) {
    check_same_base(x, y);
    const auto& X = x.comps;
    const auto& Y = y.comps;
    const auto E4 = unit(4);
    const FrameComponents PX{0, 0, 0, X[3]};
    const auto JJX = apply_J(Sign::Plus, apply_J(Sign::Minus, X));
    FrameComponents out = 0.5 * (dot(Y, X) * E4 + dot(Y, E4) * X) - 4.0 * dot(Y, PX) * E4 +
                          1.5 * (dot(Y, JJX) * E4 + dot(Y, E4) * JJX);
    return {x.base, out};
}

TangentVector nabla_E4(const TangentVector& x) {
    const auto& X = x.comps;
    const FrameComponents PX{0, 0, 0, X[3]};
    const auto JJX = apply_J(Sign::Plus, apply_J(Sign::Minus, X));
    return {x.base, 0.5 * X - 2.0 * PX + 1.5 * JJX};
}

VectorFieldFn constant_field(const FrameComponents& comps) {
    VectorFieldFn f;
    f.eval = [comps](const Point&) { return comps; };
    f.directional = [](const Point&, const CoordComponents&) { return FrameComponents{}; };
    return f;
}

TangentVector covariant_derivative(const VectorFieldFn& x, const VectorFieldFn& y, const Point& p, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("covariant_derivative: step must be positive");
    const FrameComponents xp = x.eval(p);
    const FrameComponents yp = y.eval(p);
    const CoordComponents dir = to_coordinates({p, xp});

    FrameComponents dy{};
    if (y.directional) {
        dy = y.directional(p, dir);
    } else {
        const Point fwd{p.x + h * dir[0], p.y + h * dir[1], p.z + h * dir[2], p.t + h * dir[3]};
        const Point bwd{p.x - h * dir[0], p.y - h * dir[1], p.z - h * dir[2], p.t - h * dir[3]};
        dy = (1.0 / (2.0 * h)) * (y.eval(fwd) - y.eval(bwd));
    }

    const FrameComponents out = dy + nabla_frame_bilinear(xp, yp);
    for (double c : out) {
        if (!std::isfinite(c)) throw NonFiniteError("covariant_derivative: non-finite result at " + to_string(p));
    }
    return {p, out};
}

Point apply_isometry(const Isometry& phi, const Point& p) {
    return std::visit(
        [&](const auto& m) -> Point {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, LeftTranslation>) {
                return group_mul(m.by, p);
            } else if constexpr (std::is_same_v<T, XYRotation>) {
                const double c = std::cos(m.theta), s = std::sin(m.theta);
                return {c * p.x - s * p.y, s * p.x + c * p.y, p.z, p.t};
            } else {
                return {p.x, p.y, -p.z, p.t};
            }
        },
        phi);
}

CoordComponents isometry_differential(const Isometry& phi, const Point& /*p*/, const CoordComponents& v) {
    // All three maps are affine in coordinates, so the Jacobian is constant.
    return std::visit(
        [&](const auto& m) -> CoordComponents {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, LeftTranslation>) {
                const double ed = std::exp(m.by.t);
                return {ed * v[0], ed * v[1], v[2] / (ed * ed), v[3]};
            } else if constexpr (std::is_same_v<T, XYRotation>) {
                const double c = std::cos(m.theta), s = std::sin(m.theta);
                return {c * v[0] - s * v[1], s * v[0] + c * v[1], v[2], v[3]};
            } else {
                return {v[0], v[1], -v[2], v[3]};
            }
        },
        phi);
}

TangentVector push_forward(const Isometry& phi, const TangentVector& v) {
    const Point q = apply_isometry(phi, v.base);
    return from_coordinates(q, isometry_differential(phi, v.base, to_coordinates(v)));
}

double isometry_check(const Isometry& phi, const Point& p, const TangentVector& v, const TangentVector& w) {
    const double before = metric_eval(p, v, w);
    const TangentVector pv = push_forward(phi, v);
    const TangentVector pw = push_forward(phi, w);
    return std::abs(metric_eval(pv.base, pv, pw) - before);
}

std::string to_string(const Point& p) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "(%.6g, %.6g, %.6g, %.6g)", p.x, p.y, p.z, p.t);
    return buf;
}

}  // namespace solgeo
