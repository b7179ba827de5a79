#pragma once

// Independent recomputation of the closed-form ambient identities from more
// primitive data (brackets, orthonormality, the defining commutator of the
// curvature, coordinate expressions of differential forms).

#include <string>
#include <vector>

#include "solgeo/solgroup.hpp"

namespace solgeo::oracles {

struct OracleReport {
    std::string name;
    double max_residual = 0.0;
    long samples = 0;
    double tolerance = 0.0;
    bool pass = false;
};

OracleReport make_report(std::string name, double max_residual, long samples, double tolerance);

/// nabla_{E_i} E_j from Koszul's formula on an orthonormal left-invariant frame:
/// 2 g(nabla_X Y, Z) = g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y).
FrameComponents koszul_oracle(int i, int j);

/// R(E_i,E_j)E_k = nabla_i nabla_j E_k - nabla_j nabla_i E_k - nabla_[E_i,E_j] E_k,
/// evaluated from the connection and bracket tables.
FrameComponents curvature_direct_oracle(int i, int j, int k);

enum class FormScaling {
    Conformal,  ///< e^{2t} Omega
    Bare,       ///< Omega itself
};

/// Coordinate components omega(d_a, d_b) of Omega_s = g(., J_s .), optionally
/// scaled by e^{2t}.
std::array<std::array<double, 4>, 4> two_form_coords(Sign s, const Point& p, FormScaling scaling);

/// d omega on the four coordinate triples (012, 013, 023, 123), each by
/// cyclic central differences of the component functions.
std::array<double, 4> exterior_derivative(Sign s, const Point& p, double h, FormScaling scaling);

/// Max |d(e^{2t} Omega_s)| over the four independent triples at p
/// (or of d Omega_s for FormScaling::Bare).
double dform_closedness_oracle(Sign s, const Point& p, double h = kDefaultStep,
                               FormScaling scaling = FormScaling::Conformal);

enum class FrameTensor { Jplus, Jminus, P };

/// (nabla T)(E_i, E_j) = nabla_i (T E_j) - T(nabla_i E_j) for a tensor with
/// constant frame components.
FrameComponents nabla_tensor_oracle(FrameTensor which, int i, int j);

// Verification suites, grouped for the CLI.
std::vector<OracleReport> verify_group(unsigned seed = 7);
std::vector<OracleReport> verify_connection();
std::vector<OracleReport> verify_curvature();
std::vector<OracleReport> verify_complex();
std::vector<OracleReport> verify_forms();

}  // namespace solgeo::oracles
