#include "solgeo/hypersurface.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

namespace solgeo {

namespace {

// d/dt of log(frame scale): E_k = e^{sigma_k t} d/dx^k.
constexpr double kScaleRate[4] = {1.0, 1.0, -2.0, 0.0};

Param shifted(const Param& u, int axis, double delta) {
    Param v = u;
    v[axis] += delta;
    return v;
}

CoordComponents point_diff(const Point& a, const Point& b, double scale) {
    return {(a.x - b.x) * scale, (a.y - b.y) * scale, (a.z - b.z) * scale, (a.t - b.t) * scale};
}

void require_finite(const CoordComponents& c, const char* what) {
    for (double v : c)
        if (!std::isfinite(v)) throw NonFiniteError(std::string("non-finite ") + what);
}

void require_interior(const Immersion& f, const Param& u, double reach, const char* what) {
    if (!f.domain.contains(u, reach)) {
        throw std::domain_error(std::string(what) + ": parameter point closer than " + std::to_string(reach) +
                                " to the domain boundary");
    }
}

FrameComponents coord_to_frame(const Point& p, const CoordComponents& c) { return from_coordinates(p, c).comps; }

struct Tangents {
    Point point;
    std::array<FrameComponents, 3> frame;
    Jacobian jac;
};

Tangents tangents_at(const Immersion& f, const Param& u) {
    Tangents out;
    out.point = f.map(u);
    if (!is_finite(out.point)) throw NonFiniteError("immersion not finite at parameter point");
    out.jac = jacobian_at(f, u);
    for (int i = 0; i < 3; ++i) {
        require_finite(out.jac[i], "Jacobian");
        out.frame[i] = coord_to_frame(out.point, out.jac[i]);
    }
    return out;
}

Eigen::Matrix3d gram(const std::array<FrameComponents, 3>& t) {
    Eigen::Matrix3d g;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) g(i, j) = dot(t[i], t[j]);
    return g;
}

void require_nondegenerate(const Eigen::Matrix3d& g) {
    const double diag = g(0, 0) * g(1, 1) * g(2, 2);
    if (!(std::min({g(0, 0), g(1, 1), g(2, 2)}) > 1e-24) || !(g.determinant() / diag > 1e-10)) {
        throw DegenerateError("coordinate tangents are linearly dependent (rank deficient immersion)");
    }
}

FrameComponents normal_from(const std::array<FrameComponents, 3>& t, Orientation o) {
    FrameComponents n = cross4(t[0], t[1], t[2]);
    const double len = std::sqrt(dot(n, n));
    return (o == Orientation::Standard ? 1.0 : -1.0) / len * n;
}

// nabla~_{d_i} d_j in frame components, from the Jacobian and Hessian.
FrameComponents ambient_second_derivative(const Point& p, const Jacobian& jac, const Hessian& hess,
                                          const std::array<FrameComponents, 3>& frame, int i, int j) {
    const auto scale = frame_scale(p);
    FrameComponents d{};
    for (int k = 0; k < 4; ++k) d[k] = (hess[i][j][k] - kScaleRate[k] * jac[i][3] * jac[j][k]) / scale[k];
    return d + nabla_frame_bilinear(frame[i], frame[j]);
}

double raise3(const Eigen::Matrix3d& gi, const NablaH& a, const NablaH& b) {
    // sum g^{ip} g^{jq} g^{kr} a_ijk b_pqr
    double total = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                double inner = 0.0;
                for (int p = 0; p < 3; ++p)
                    for (int q = 0; q < 3; ++q)
                        for (int r = 0; r < 3; ++r) inner += gi(i, p) * gi(j, q) * gi(k, r) * b.v[p][q][r];
                total += a.v[i][j][k] * inner;
            }
    return total;
}

}  // namespace

bool Box3::contains(const Param& u, double margin) const {
    for (int i = 0; i < 3; ++i)
        if (!(u[i] - margin >= lo[i] && u[i] + margin <= hi[i])) return false;
    return true;
}

Jacobian jacobian_at(const Immersion& f, const Param& u) {
    if (f.jacobian) return f.jacobian(u);
    Jacobian jac;
    const double h = kJacobianStep;
    for (int i = 0; i < 3; ++i) jac[i] = point_diff(f.map(shifted(u, i, h)), f.map(shifted(u, i, -h)), 1.0 / (2 * h));
    return jac;
}

Hessian hessian_at(const Immersion& f, const Param& u) {
    if (f.hessian) return f.hessian(u);
    Hessian hess;
    if (f.jacobian) {
        const double h = kJacobianStep;
        for (int i = 0; i < 3; ++i) {
            const auto fwd = f.jacobian(shifted(u, i, h));
            const auto bwd = f.jacobian(shifted(u, i, -h));
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 4; ++k) hess[i][j][k] = (fwd[j][k] - bwd[j][k]) / (2 * h);
        }
        // Symmetrize the two difference estimates of the mixed partials.
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                for (int k = 0; k < 4; ++k) hess[i][j][k] = hess[j][i][k] = 0.5 * (hess[i][j][k] + hess[j][i][k]);
        return hess;
    }
    const double h = kHessianStep;
    const Point centre = f.map(u);
    for (int i = 0; i < 3; ++i) {
        const Point fwd = f.map(shifted(u, i, h)), bwd = f.map(shifted(u, i, -h));
        hess[i][i] = {(fwd.x - 2 * centre.x + bwd.x) / (h * h), (fwd.y - 2 * centre.y + bwd.y) / (h * h),
                      (fwd.z - 2 * centre.z + bwd.z) / (h * h), (fwd.t - 2 * centre.t + bwd.t) / (h * h)};
        for (int j = i + 1; j < 3; ++j) {
            const Point pp = f.map(shifted(shifted(u, i, h), j, h));
            const Point pm = f.map(shifted(shifted(u, i, h), j, -h));
            const Point mp = f.map(shifted(shifted(u, i, -h), j, h));
            const Point mm = f.map(shifted(shifted(u, i, -h), j, -h));
            const double s = 1.0 / (4 * h * h);
            hess[i][j] = {(pp.x - pm.x - mp.x + mm.x) * s, (pp.y - pm.y - mp.y + mm.y) * s,
                          (pp.z - pm.z - mp.z + mm.z) * s, (pp.t - pm.t - mp.t + mm.t) * s};
            hess[j][i] = hess[i][j];
        }
    }
    return hess;
}

std::array<TangentVector, 3> coordinate_tangents(const Immersion& f, const Param& u) {
    const auto t = tangents_at(f, u);
    require_nondegenerate(gram(t.frame));
    return {TangentVector{t.point, t.frame[0]}, TangentVector{t.point, t.frame[1]}, TangentVector{t.point, t.frame[2]}};
}

FrameComponents cross4(const FrameComponents& a, const FrameComponents& b, const FrameComponents& c) {
    Eigen::Matrix4d m;
    for (int k = 0; k < 4; ++k) {
        m(0, k) = a[k];
        m(1, k) = b[k];
        m(2, k) = c[k];
    }
    FrameComponents n{};
    for (int l = 0; l < 4; ++l) {
        m.row(3).setZero();
        m(3, l) = 1.0;
        n[l] = m.determinant();
    }
    return n;
}

TangentVector unit_normal(const Immersion& f, const Param& u, Orientation o) {
    const auto t = tangents_at(f, u);
    require_nondegenerate(gram(t.frame));
    return {t.point, normal_from(t.frame, o)};
}

FundamentalForms second_fundamental_form(const Immersion& f, const Param& u, Orientation o) {
    const auto t = tangents_at(f, u);
    FundamentalForms forms;
    forms.point = t.point;
    forms.induced_metric = gram(t.frame);
    require_nondegenerate(forms.induced_metric);
    for (int i = 0; i < 3; ++i) forms.tangents[i] = {t.point, t.frame[i]};
    forms.normal = {t.point, normal_from(t.frame, o)};

    const Hessian hess = hessian_at(f, u);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) require_finite(hess[i][j], "Hessian");

    for (int i = 0; i < 3; ++i) {
        for (int j = i; j < 3; ++j) {
            const double hij = dot(ambient_second_derivative(t.point, t.jac, hess, t.frame, i, j), forms.normal.comps);
            forms.second_form(i, j) = hij;
            forms.second_form(j, i) = hij;
        }
    }
    forms.mean_curvature = shape_operator(forms).trace() / 3.0;
    return forms;
}

Eigen::Matrix3d shape_operator(const FundamentalForms& forms) {
    return forms.induced_metric.ldlt().solve(forms.second_form);
}

Eigen::Vector3d principal_curvatures(const FundamentalForms& forms) {
    // Generalized symmetric problem h v = k g v.
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::Matrix3d> solver(forms.second_form, forms.induced_metric);
    return solver.eigenvalues();
}

double second_form_on(const FundamentalForms& forms, const Eigen::Vector3d& x, const Eigen::Vector3d& y) {
    return x.dot(forms.second_form * y);
}

Christoffel induced_christoffel(const Immersion& f, const Param& u, double step) {
    require_interior(f, u, step, "induced_christoffel");
    const auto t = tangents_at(f, u);
    const Hessian hess = hessian_at(f, u);
    const Eigen::Matrix3d g = gram(t.frame);
    require_nondegenerate(g);
    const Eigen::Matrix3d gi = g.inverse();

    // Gamma^m_ij = g^{ml} <nabla~_{d_i} d_j, d_l>, the tangential part of the ambient derivative.
    Christoffel gamma{};
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const auto d = ambient_second_derivative(t.point, t.jac, hess, t.frame, i, j);
            double first[3];
            for (int l = 0; l < 3; ++l) first[l] = dot(d, t.frame[l]);
            for (int m = 0; m < 3; ++m) gamma[m][i][j] = gi(m, 0) * first[0] + gi(m, 1) * first[1] + gi(m, 2) * first[2];
        }
    }
    return gamma;
}

NablaH nabla_h(const Immersion& f, const Param& u, double step, Orientation o) {
    require_interior(f, u, step, "nabla_h");
    const auto forms = second_fundamental_form(f, u, o);
    const auto gamma = induced_christoffel(f, u, step);
    const auto& h = forms.second_form;

    NablaH out;
    for (int i = 0; i < 3; ++i) {
        // The normal bundle is a trivial line bundle and N has unit length, so
        // nabla-perp of h(Y,Z) N reduces to the derivative of the scalar.
        const Eigen::Matrix3d dh = (second_fundamental_form(f, shifted(u, i, step), o).second_form -
                                    second_fundamental_form(f, shifted(u, i, -step), o).second_form) /
                                   (2 * step);
        for (int j = 0; j < 3; ++j) {
            for (int k = 0; k < 3; ++k) {
                double v = dh(j, k);
                for (int m = 0; m < 3; ++m) v -= gamma[m][i][j] * h(m, k) + gamma[m][i][k] * h(j, m);
                out.v[i][j][k] = v;
            }
        }
    }
    return out;
}

double tensor_norm(const Eigen::Matrix3d& g_inverse, const Eigen::Matrix3d& t) {
    return std::sqrt(std::max(0.0, (g_inverse * t * g_inverse * t.transpose()).trace()));
}

double tensor_norm(const Eigen::Matrix3d& g_inverse, const NablaH& t) {
    return std::sqrt(std::max(0.0, raise3(g_inverse, t, t)));
}

GaussCodazziResidual gauss_codazzi_check(const Immersion& f, const Param& u, double step) {
    require_interior(f, u, 2 * step, "gauss_codazzi_check");
    const auto forms = second_fundamental_form(f, u);
    const auto gamma = induced_christoffel(f, u, step);
    const auto dh = nabla_h(f, u, step);
    std::array<Christoffel, 3> dgamma{};
    for (int a = 0; a < 3; ++a) {
        const auto fwd = induced_christoffel(f, shifted(u, a, step), step);
        const auto bwd = induced_christoffel(f, shifted(u, a, -step), step);
        for (int m = 0; m < 3; ++m)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) dgamma[a][m][i][j] = (fwd[m][i][j] - bwd[m][i][j]) / (2 * step);
    }

    const auto& g = forms.induced_metric;
    const auto& h = forms.second_form;
    const auto& T = forms.tangents;
    double gauss[3][3][3][3];
    NablaH codazzi;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            for (int k = 0; k < 3; ++k) {
                const auto amb = curvature_tensor(T[i], T[j], T[k]).comps;
                // R(d_i,d_j)d_k = R^m_{ijk} d_m
                double R[3];
                for (int m = 0; m < 3; ++m) {
                    double v = dgamma[i][m][j][k] - dgamma[j][m][i][k];
                    for (int p = 0; p < 3; ++p) v += gamma[p][j][k] * gamma[m][i][p] - gamma[p][i][k] * gamma[m][j][p];
                    R[m] = v;
                }
                for (int l = 0; l < 3; ++l) {
                    const double intrinsic = g(l, 0) * R[0] + g(l, 1) * R[1] + g(l, 2) * R[2];
                    const double rhs = intrinsic - h(j, k) * h(i, l) + h(i, k) * h(j, l);
                    gauss[i][j][k][l] = dot(amb, T[l].comps) - rhs;
                }
                const double normal = dot(amb, forms.normal.comps);
                codazzi.v[i][j][k] = normal - (dh(i, j, k) - dh(j, i, k));
            }
        }
    }
    const Eigen::Matrix3d gi = g.inverse();
    double sq = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k)
                for (int l = 0; l < 3; ++l)
                    for (int a = 0; a < 3; ++a)
                        for (int b = 0; b < 3; ++b)
                            for (int c = 0; c < 3; ++c)
                                for (int d = 0; d < 3; ++d)
                                    sq += gi(i, a) * gi(j, b) * gi(k, c) * gi(l, d) * gauss[i][j][k][l] * gauss[a][b][c][d];
    GaussCodazziResidual res;
    res.gauss = std::sqrt(std::max(sq, 0.0));
    res.codazzi = tensor_norm(gi, codazzi);
    return res;
}

double induced_sectional_curvature(const Immersion& f, const Param& u, const Eigen::Vector3d& a,
                                   const Eigen::Vector3d& b) {
    const auto forms = second_fundamental_form(f, u);
    TangentVector x{forms.point, {}}, y{forms.point, {}};
    for (int i = 0; i < 3; ++i) {
        x.comps = x.comps + a[i] * forms.tangents[i].comps;
        y.comps = y.comps + b[i] * forms.tangents[i].comps;
    }
    const double xx = dot(x.comps, x.comps), yy = dot(y.comps, y.comps), xy = dot(x.comps, y.comps);
    const double denom = xx * yy - xy * xy;
    if (!(denom >= kDegeneratePlaneThreshold * std::max(1.0, xx * yy)))
        throw DegenerateError("induced_sectional_curvature: degenerate plane");
    const double ambient = dot(curvature_tensor(x, y, y).comps, x.comps);
    const double hxx = second_form_on(forms, a, a), hyy = second_form_on(forms, b, b), hxy = second_form_on(forms, a, b);
    return (ambient + hxx * hyy - hxy * hxy) / denom;
}

std::vector<Param> sample_points(const Box3& domain, const SampleGrid& grid) {
    const int n = grid.points_per_axis;
    if (n < 1) throw std::invalid_argument("sample grid needs at least one point per axis");
    if (!(grid.margin >= 0.0 && grid.margin < 0.5)) throw std::invalid_argument("sample margin must lie in [0, 0.5)");
    auto coord = [&](int axis, int k) {
        const double frac = n == 1 ? 0.5 : grid.margin + (1.0 - 2.0 * grid.margin) * k / (n - 1);
        return domain.lo[axis] + frac * (domain.hi[axis] - domain.lo[axis]);
    };
    std::vector<Param> pts;
    pts.reserve(static_cast<std::size_t>(n) * n * n);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) pts.push_back({coord(0, a), coord(1, b), coord(2, c)});
    return pts;
}

ClassificationReport classify(const Immersion& f, const ClassifyOptions& options) {
    const auto pts = sample_points(f.domain, options.grid);
    struct Sample {
        ClassResiduals r;
        double gauss = 0.0, codazzi_eq = 0.0;
    };
    std::vector<Sample> samples(pts.size());

    auto evaluate = [&](std::size_t n) {
        const Param& u = pts[n];
        const auto forms = second_fundamental_form(f, u, options.orientation);
        const Eigen::Matrix3d gi = forms.induced_metric.inverse();
        const auto dh = nabla_h(f, u, options.step, options.orientation);
        NablaH antisym;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) antisym.v[i][j][k] = dh(i, j, k) - dh(j, i, k);
        Sample s;
        s.r.totally_geodesic = tensor_norm(gi, forms.second_form);
        s.r.totally_umbilical =
            tensor_norm(gi, Eigen::Matrix3d(forms.second_form - forms.mean_curvature * forms.induced_metric));
        s.r.parallel = tensor_norm(gi, dh);
        s.r.codazzi = tensor_norm(gi, antisym);
        const auto gc = gauss_codazzi_check(f, u, options.step);
        s.gauss = gc.gauss;
        s.codazzi_eq = gc.codazzi;
        samples[n] = s;
    };

    const int jobs = std::max(1, std::min<int>(options.jobs, static_cast<int>(pts.size())));
    if (jobs == 1) {
        for (std::size_t n = 0; n < pts.size(); ++n) evaluate(n);
    } else {
        std::vector<std::exception_ptr> errors(jobs);
        std::vector<std::thread> workers;
        for (int w = 0; w < jobs; ++w) {
            workers.emplace_back([&, w] {
                try {
                    for (std::size_t n = w; n < pts.size(); n += jobs) evaluate(n);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& t : workers) t.join();
        for (auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    ClassificationReport report;
    report.samples = static_cast<long>(pts.size());
    for (const auto& s : samples) {
        auto& r = report.residuals;
        r.totally_geodesic = std::max(r.totally_geodesic, s.r.totally_geodesic);
        r.totally_umbilical = std::max(r.totally_umbilical, s.r.totally_umbilical);
        r.parallel = std::max(r.parallel, s.r.parallel);
        r.codazzi = std::max(r.codazzi, s.r.codazzi);
        report.gauss_residual = std::max(report.gauss_residual, s.gauss);
        report.codazzi_eq_residual = std::max(report.codazzi_eq_residual, s.codazzi_eq);
    }
    const auto& r = report.residuals;
    const auto& tol = options.tolerances;
    auto& v = report.verdicts;
    // Definition-level implications: h = 0 forces nabla h = 0 and h = 0 g;
    // nabla h = 0 is trivially symmetric.
    v.totally_geodesic = r.totally_geodesic <= tol.totally_geodesic;
    v.parallel = v.totally_geodesic || r.parallel <= tol.parallel;
    v.codazzi = v.parallel || r.codazzi <= tol.codazzi;
    v.totally_umbilical = v.totally_geodesic || r.totally_umbilical <= tol.totally_umbilical;
    return report;
}

Immersion left_translate(const Immersion& f, const Point& a) {
    const double ed = std::exp(a.t);
    const CoordComponents scale{ed, ed, 1.0 / (ed * ed), 1.0};
    auto scaled = [scale](CoordComponents c) {
        for (int k = 0; k < 4; ++k) c[k] *= scale[k];
        return c;
    };
    Immersion g;
    g.domain = f.domain;
    g.name = f.name + "+translated";
    g.map = [m = f.map, a](const Param& u) { return group_mul(a, m(u)); };
    if (f.jacobian) {
        g.jacobian = [j = f.jacobian, scaled](const Param& u) {
            Jacobian out = j(u);
            for (auto& col : out) col = scaled(col);
            return out;
        };
    }
    if (f.hessian) {
        g.hessian = [h = f.hessian, scaled](const Param& u) {
            Hessian out = h(u);
            for (auto& row : out)
                for (auto& entry : row) entry = scaled(entry);
            return out;
        };
    }
    return g;
}

Immersion affine_reparametrize(const Immersion& f, const Eigen::Matrix3d& a, const Eigen::Vector3d& b,
                               const Box3& domain) {
    auto to_u = [a, b](const Param& v) {
        const Eigen::Vector3d u = a * Eigen::Vector3d(v[0], v[1], v[2]) + b;
        return Param{u[0], u[1], u[2]};
    };
    Immersion g;
    g.domain = domain;
    g.name = f.name + "+reparametrized";
    g.map = [m = f.map, to_u](const Param& v) { return m(to_u(v)); };
    if (f.jacobian) {
        g.jacobian = [j = f.jacobian, to_u, a](const Param& v) {
            const Jacobian inner = j(to_u(v));
            Jacobian out{};
            for (int col = 0; col < 3; ++col)
                for (int i = 0; i < 3; ++i)
                    for (int k = 0; k < 4; ++k) out[col][k] += inner[i][k] * a(i, col);
            return out;
        };
    }
    if (f.hessian) {
        g.hessian = [h = f.hessian, to_u, a](const Param& v) {
            const Hessian inner = h(to_u(v));
            Hessian out{};
            for (int p = 0; p < 3; ++p)
                for (int q = 0; q < 3; ++q)
                    for (int i = 0; i < 3; ++i)
                        for (int j = 0; j < 3; ++j)
                            for (int k = 0; k < 4; ++k) out[p][q][k] += a(i, p) * a(j, q) * inner[i][j][k];
            return out;
        };
    }
    return g;
}

Immersion without_exact_derivatives(const Immersion& f) {
    Immersion g;
    g.map = f.map;
    g.domain = f.domain;
    g.name = f.name + "+differenced";
    return g;
}

}  // namespace solgeo
