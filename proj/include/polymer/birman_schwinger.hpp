#pragma once

// Discretization of the Birman-Schwinger operator A(lambda) = v R_0(lambda)
// restricted to radial functions, and everything derived from it: the
// critical coupling beta_cr, the principal eigenvalue lambda_0(beta) of
// H_beta = (1/2)Laplacian + beta v, the ground state psi, the eigenfunctions
// psi_beta, the scaling constants gamma, c_d, kappa, and the subcritical
// corrector phi_beta.
//
// The radial reduction uses the exact spherical-surface kernel
// resolvent_surface_kernel(); quadrature is composite Gauss-Legendre with a
// product-integration correction in the cell containing the kernel's
// diagonal kink (see assemble_operator).

#include <Eigen/Dense>
#include <vector>

#include "polymer/field.hpp"
#include "polymer/potential.hpp"

namespace polymer {

struct DiscretizedOperator {
    int d = 0;
    double lambda = 0.0;
    double r_supp = 0.0;
    int cell_points = 0;            // Gauss points per cell
    std::vector<double> nodes;      // quadrature radii in (0, R_supp)
    std::vector<double> weights;    // Gauss weights (without surface factor)
    std::vector<double> surface;    // r_i^{d-1}
    Eigen::MatrixXd matrix;         // M approx A(lambda); -M is entrywise >= 0
};

// Nystrom matrix for A(lambda) with n = cells * 8 nodes (n rounded up to a
// multiple of 8, n >= 8). Throws on invalid lambda for the dimension.
DiscretizedOperator assemble_operator(const RadialPotential& v, double lambda, int n);

struct Eigenpair {
    double mu = 0.0;        // dominant eigenvalue
    Eigen::VectorXd vec;    // positive eigenvector, max-norm 1
    int iterations = 0;
    double residual = 0.0;
};

// Power iteration for the dominant eigenvalue of an entrywise-nonnegative
// matrix (Krein-Rutman); throws on non-convergence.
Eigenpair dominant_eigenpair(const Eigen::MatrixXd& a, double tol = 1e-12,
                             int max_iter = 100000);

// Dominant eigenpair of -op.matrix, i.e. the principal eigenvalue 1/beta(lambda).
Eigenpair principal_eigenvalue(const DiscretizedOperator& op);

// Applies -R_0(lambda) to nodal data h of the operator's quadrature:
//   out(r) = -int S(lambda; r, r') h(r') r'^{d-1} dr'
// with the same split-cell correction used during assembly, so pointwise
// values keep the assembly's accuracy.
double apply_neg_resolvent(const DiscretizedOperator& op, const Eigen::VectorXd& h,
                           double r);

struct ScalingConstants {
    double beta_cr = 0.0;
    double gamma = 0.0;    // d in {3,4,5}
    double c1 = 0.0;       // integral of v
    double c2 = 0.0;       // d = 2 law: lambda_0 ~ exp(-c2 / beta)
    double c_d = 0.0;      // c_3, c_4 or c_5 depending on the potential's d
    double kappa = 0.0;    // d = 3 only
};

class SpectralSolver {
  public:
    explicit SpectralSolver(RadialPotential v, int n = 256);

    const RadialPotential& potential() const { return v_; }
    int node_count() const { return n_; }

    // beta(lambda) = 1 / mu(lambda) at this node count.
    double beta_of_lambda(double lambda) const;

    // Critical coupling: Richardson extrapolation of 1/mu(0) over node counts
    // n and 2n. Returns 0 exactly for d in {1,2}.
    double critical_beta() const;
    // Same without extrapolation; scans use this so beta - beta_cr is
    // internally consistent with lambda0() at the same discretization.
    double critical_beta_raw() const;

    // Unique lambda > 0 with beta(lambda) = beta (0 for beta <= beta_cr),
    // by bisection; relative tolerance 1e-10.
    double lambda0(double beta) const;

    // Ground state psi = -R_0(0) h_0, d >= 3, normalized so that the
    // L^2-norm of beta_cr v psi with weight e^{|x|^2} is 1.
    const RadialField& ground_state() const;
    double psi_at(double r) const;   // ground state evaluated exactly

    // gamma: d=3 simplified formula; d=4,5 via the Q_d pairing of the
    // principal eigenvectors (see gamma notes in the implementation).
    double gamma_constant() const;

    ScalingConstants constants() const;

    // psi_beta = -R_0(lambda_0) h, L^2-normalized; beta > beta_cr required.
    RadialField eigenfunction(double beta) const;
    // L1 norm of the last eigenfunction and its value at 0 are often needed
    // together with the field; expose a bundled result.
    struct Eigenfunction {
        RadialField field;
        double lambda0 = 0.0;
        double l1_norm = 0.0;   // integral over R^d
        double at_zero = 0.0;
    };
    Eigenfunction eigenfunction_data(double beta) const;

    // Subcritical corrector phi_beta = R_0(0) (I + beta A(0))^{-1} (-beta v),
    // 0 <= beta < beta_cr.
    RadialField phi_beta(double beta) const;

  private:
    const DiscretizedOperator& op0() const;
    const Eigenpair& eig0() const;
    void build_ground_state() const;

    RadialPotential v_;
    int n_;
    mutable bool has_op0_ = false;
    mutable DiscretizedOperator op0_;
    mutable Eigenpair eig0_;
    mutable bool has_psi_ = false;
    mutable RadialField psi_;
    mutable Eigen::VectorXd h0_;          // normalized: h0 = beta_cr_raw v psi
    mutable double beta_cr_raw_ = 0.0;
    mutable double psi_scale_ = 1.0;      // applied to the raw eigenvector
};

// Convenience wrappers with the defaults used across tests and the CLI.
double critical_beta(const RadialPotential& v, int n = 256);
double lambda0(const RadialPotential& v, double beta, int n = 256);
RadialField ground_state(const RadialPotential& v, int n = 256);
RadialField eigenfunction_psi_beta(const RadialPotential& v, double beta, int n = 256);
// Simplified d=3 formula gamma = (int v psi)^2 / (sqrt(2) pi int v psi^2);
// rejects d != 3 (use SpectralSolver::gamma_constant for d = 4, 5).
double gamma_constant(const RadialPotential& v, const RadialField& psi);
ScalingConstants scaling_constants(const RadialPotential& v, int n = 256);
RadialField phi_beta(const RadialPotential& v, double beta, int n = 256);

}  // namespace polymer
