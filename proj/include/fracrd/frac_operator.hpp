#pragma once

#include <Eigen/Dense>
#include <stdexcept>

#include "fracrd/mesh.hpp"

namespace fracrd {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

struct AssemblyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// P1 mass matrix on a uniform mesh: tridiag(h/6, 2h/3, h/6).
class MassMatrix {
  public:
    explicit MassMatrix(const Mesh1D& mesh) : n_(mesh.n), h_(mesh.h) {}

    int size() const { return n_; }
    double h() const { return h_; }
    double diagonal() const { return 2.0 * h_ / 3.0; }
    double off_diagonal() const { return h_ / 6.0; }

    Vector apply(const Vector& v) const;
    Matrix dense() const;
    /// Row sums M*1 (lumped weights): h away from the boundary, 5h/6 next to it.
    Vector lumped() const;

  private:
    int n_;
    double h_;
};

/// Stiffness matrix of the bilinear form of (-Delta)^s with homogeneous
/// exterior condition, piecewise-linear elements on a uniform mesh.
///
/// Element-pair integrals are reduced by a Duffy-type change of variables on
/// touching and identical pairs; the radial power factor then separates and is
/// integrated in closed form, the remaining smooth factor with tensor
/// Gauss-Legendre of the given order. Disjoint pairs use the tensor rule
/// directly. The exterior tail integral over R \ (a,b) is evaluated in closed
/// form per element. Result is symmetric bit-exactly and positive semidefinite.
Matrix assemble_stiffness(const Mesh1D& mesh, double s, int quad_order = 8);

MassMatrix assemble_mass(const Mesh1D& mesh);

/// The exterior-tail part of the stiffness matrix alone:
///   a_{1,s} * int phi_i phi_j(x) J(x) dx,
/// J(x) = ((x-a)^{-2s} + (b-x)^{-2s}) / (2s). Tridiagonal; part of
/// assemble_stiffness, exposed so verification code can perturb it.
Matrix exterior_tail_matrix(const Mesh1D& mesh, double s);

/// Assembled discretization of one diffusion operator d * (-Delta)^s.
/// Immutable after construction; safe for concurrent read-only use.
struct FracOperator {
    Mesh1D mesh;
    double s;
    double d;
    Matrix A;       // stiffness, includes the a_{1,s} normalization
    MassMatrix M;
    double a_ns;    // normalization constant a_{1,s}

    FracOperator(const Mesh1D& m, double s_in, double d_in, int quad_order = 8);

    /// Discrete H^s_0 seminorm of the P1 function with nodal values v:
    /// sqrt(2 v^T A v / a_{1,s}).
    double hs_seminorm(const Vector& v) const;
};

}  // namespace fracrd
