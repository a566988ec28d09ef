#pragma once

#include <optional>
#include <span>
#include <vector>

#include "chexpm/errors.hpp"

namespace chexpm {

// The N vertices of a regular (N-1)-simplex embedded in the traceless
// hyperplane of E_N, rescaled to radius r. Gram relations:
// f_k . f_k = r^2 and f_k . f_m = r^2 / (1 - N) for k != m; the vertices sum
// to the zero vector.
struct SimplexVertexSet {
    int n = 0;
    double r = 0.0;
    std::vector<std::vector<double>> vertices;  // N vectors of length N
};

// A traceless real spectrum: sum lambda_k = 0, sum lambda_k^2 = r^2.
// Components follow the parameterization order, not sorted order.
struct EigenvalueVector {
    std::vector<double> components;

    int n() const { return static_cast<int>(components.size()); }
    double radius() const;
};

// Radius plus the N-2 polar angles of the eigenvalue direction on S_{N-2}.
// Angle order matches the component formulas: N=3 (theta), N=4 (theta, phi),
// N=5 (psi, theta, phi). gimbal is set when a locked axis made the dependent
// angles conventional zeros.
struct AngleParams {
    int n = 0;
    double r = 0.0;
    std::vector<double> angles;
    bool gimbal = false;
};

struct AngleInvariants {
    double tr_h2 = 0.0;
    double tr_h3 = 0.0;
    std::optional<double> tr_h4;
    std::optional<double> det_h;
};

// f_k = (e_k - n_vec/N) * r * sqrt(N/(N-1)); requires n >= 2, r > 0.
SimplexVertexSet simplex_vertices(int n, double r);

// lambda_k = sqrt((N-1)/N) * f_k . axis. The axis must be a unit vector in the
// traceless hyperplane.
EigenvalueVector project_spectrum(const SimplexVertexSet& vs, std::span<const double> axis);

// The component formulas for N = 3, 4, 5.
EigenvalueVector angles_to_spectrum(const AngleParams& p);

// Closed forms for the low trace invariants in terms of (r, angles); verified
// internally against the power sums of angles_to_spectrum.
AngleInvariants invariants_from_angles(const AngleParams& p);

// theta = arccos(3 sqrt6 det / r^3) / 3, mapped into [0, pi/3].
double su3_angle_from_invariants(double tr_h2, double det_h);

// Recovers (theta, phi) from (tr H^2, tr H^3, tr H^4) by damped Newton on
// (sin^2 theta, cos 2phi) from an 8x8 multi-start grid; a candidate is accepted
// only when its forward invariants match to 1e-9 relative. theta lands in
// [0, pi/2] and phi in [0, pi/2] (phi <= pi/4 exactly when tr H^3 >= 0).
AngleParams su4_angles_from_invariants(double tr_h2, double tr_h3, double tr_h4);

// Direct trigonometric inversion of the component formulas, consuming the
// components in parameterization order; the forward map reproduces the input
// componentwise. Locked axes yield conventional zero angles with gimbal set.
AngleParams spectrum_to_angles(const EigenvalueVector& ev);

}  // namespace chexpm
