#include "polymer/birman_schwinger.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "polymer/greens.hpp"
#include "polymer/quadrature.hpp"

namespace polymer {
namespace {

constexpr int kCellPoints = 8;

// Reference Gauss-Legendre rule on [-1,1] plus barycentric weights for
// Lagrange interpolation through its nodes.
struct ReferenceCell {
    QuadratureRule rule;
    std::vector<double> bary;
};

const ReferenceCell& reference_cell() {
    static const ReferenceCell ref = [] {
        ReferenceCell r;
        r.rule = gauss_legendre(kCellPoints);
        r.bary.resize(kCellPoints);
        for (int j = 0; j < kCellPoints; ++j) {
            double w = 1.0;
            for (int k = 0; k < kCellPoints; ++k)
                if (k != j) w *= r.rule.nodes[j] - r.rule.nodes[k];
            r.bary[j] = 1.0 / w;
        }
        return r;
    }();
    return ref;
}

// Lagrange basis values L_j(xi) at a reference coordinate xi in [-1,1].
void lagrange_basis(double xi, double out[kCellPoints]) {
    const ReferenceCell& ref = reference_cell();
    double prod = 1.0;
    for (int k = 0; k < kCellPoints; ++k) {
        const double diff = xi - ref.rule.nodes[k];
        if (std::fabs(diff) < 1e-14) {
            for (int j = 0; j < kCellPoints; ++j) out[j] = (j == k) ? 1.0 : 0.0;
            return;
        }
        prod *= diff;
    }
    for (int j = 0; j < kCellPoints; ++j)
        out[j] = prod * ref.bary[j] / (xi - ref.rule.nodes[j]);
}

// Quadrature weights (against nodal values of a smooth factor h) for
//   int_a^b S(lambda; r, s) s^{d-1} h(s) ds
// over one cell [a,b] whose Gauss nodes interpolate h, with the integral
// split at the kernel kink s = r (a < r < b).  This is the product
// integration rule that keeps the Nystrom scheme high-order at the diagonal.
void kink_cell_weights(int d, double lambda, double r, double a, double b,
                       double out[kCellPoints]) {
    const ReferenceCell& ref = reference_cell();
    for (int j = 0; j < kCellPoints; ++j) out[j] = 0.0;
    const double halves[2][2] = {{a, r}, {r, b}};
    double basis[kCellPoints];
    for (const auto& h : halves) {
        const double mid = 0.5 * (h[0] + h[1]), half = 0.5 * (h[1] - h[0]);
        if (half <= 0.0) continue;
        for (int q = 0; q < kCellPoints; ++q) {
            const double s = mid + half * ref.rule.nodes[q];
            const double wq = half * ref.rule.weights[q];
            const double k = resolvent_surface_kernel(d, lambda, r, s) *
                             std::pow(s, d - 1);
            // reference coordinate of s within the full cell [a,b]
            const double xi = (2.0 * s - a - b) / (b - a);
            lagrange_basis(xi, basis);
            for (int j = 0; j < kCellPoints; ++j) out[j] += wq * k * basis[j];
        }
    }
}

}  // namespace

DiscretizedOperator assemble_operator(const RadialPotential& v, double lambda, int n) {
    const int d = v.dimension();
    require_dimension(d);
    if (lambda < 0.0) throw std::domain_error("assemble_operator: lambda < 0");
    if (lambda == 0.0 && d <= 2)
        throw std::domain_error("assemble_operator: lambda must be positive for d <= 2");
    if (n < 8) throw std::invalid_argument("assemble_operator: n >= 8 required");

    DiscretizedOperator op;
    op.d = d;
    op.lambda = lambda;
    op.r_supp = v.support_radius();
    op.cell_points = kCellPoints;
    const int cells = (n + kCellPoints - 1) / kCellPoints;
    const QuadratureRule q = composite_gauss(cells, kCellPoints, 0.0, op.r_supp);
    op.nodes = q.nodes;
    op.weights = q.weights;
    const int size = static_cast<int>(op.nodes.size());
    op.surface.resize(size);
    for (int i = 0; i < size; ++i) op.surface[i] = std::pow(op.nodes[i], d - 1);

    op.matrix.resize(size, size);
    for (int i = 0; i < size; ++i) {
        const double vi = v(op.nodes[i]);
        for (int j = 0; j <= i; ++j) {
            const double s = resolvent_surface_kernel(d, lambda, op.nodes[i], op.nodes[j]);
            op.matrix(i, j) = s;
            op.matrix(j, i) = s;  // surface kernel is symmetric
        }
        (void)vi;
    }
    // Column scaling by the quadrature weight and row scaling by v, plus the
    // split-cell correction in the cell holding each row's diagonal kink.
    const double cell_h = op.r_supp / cells;
    Eigen::MatrixXd m(size, size);
    double cw[kCellPoints];
    for (int i = 0; i < size; ++i) {
        const double vi = v(op.nodes[i]);
        for (int j = 0; j < size; ++j)
            m(i, j) = vi * op.matrix(i, j) * op.surface[j] * op.weights[j];
        const int c = std::min(static_cast<int>(op.nodes[i] / cell_h), cells - 1);
        const double a = c * cell_h, b = a + cell_h;
        if (op.nodes[i] > a && op.nodes[i] < b) {
            kink_cell_weights(d, lambda, op.nodes[i], a, b, cw);
            for (int j = 0; j < kCellPoints; ++j)
                m(i, c * kCellPoints + j) = vi * cw[j];
        }
    }
    op.matrix = std::move(m);
    return op;
}

Eigenpair dominant_eigenpair(const Eigen::MatrixXd& a, double tol, int max_iter) {
    const int n = static_cast<int>(a.rows());
    Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
    x.normalize();
    Eigenpair out;
    for (int it = 1; it <= max_iter; ++it) {
        Eigen::VectorXd y = a * x;
        const double mu = x.dot(y);
        const double res = (y - mu * x).norm();
        const double scale = std::max(std::fabs(mu), 1e-300);
        if (res <= tol * scale) {
            out.mu = mu;
            out.vec = y / y.cwiseAbs().maxCoeff();
            out.iterations = it;
            out.residual = res;
            return out;
        }
        const double norm = y.norm();
        if (norm == 0.0) throw std::runtime_error("dominant_eigenpair: matrix annihilated iterate");
        x = y / norm;
        out.residual = res;
        out.iterations = it;
    }
    throw std::runtime_error("dominant_eigenpair: no convergence, residual " +
                             std::to_string(out.residual));
}

Eigenpair principal_eigenvalue(const DiscretizedOperator& op) {
    return dominant_eigenpair(-op.matrix);
}

double apply_neg_resolvent(const DiscretizedOperator& op, const Eigen::VectorXd& h,
                           double r) {
    const int size = static_cast<int>(op.nodes.size());
    double sum = 0.0;
    for (int j = 0; j < size; ++j)
        sum += resolvent_surface_kernel(op.d, op.lambda, r, op.nodes[j]) *
               op.surface[j] * op.weights[j] * h[j];
    if (r > 0.0 && r < op.r_supp) {
        const int cells = size / op.cell_points;
        const double cell_h = op.r_supp / cells;
        const int c = std::min(static_cast<int>(r / cell_h), cells - 1);
        const double a = c * cell_h, b = a + cell_h;
        if (r > a && r < b) {
            double cw[kCellPoints];
            kink_cell_weights(op.d, op.lambda, r, a, b, cw);
            for (int j = 0; j < op.cell_points; ++j) {
                const int col = c * op.cell_points + j;
                sum -= resolvent_surface_kernel(op.d, op.lambda, r, op.nodes[col]) *
                       op.surface[col] * op.weights[col] * h[col];
                sum += cw[j] * h[col];
            }
        }
    }
    return -sum;
}

SpectralSolver::SpectralSolver(RadialPotential v, int n) : v_(std::move(v)), n_(n) {
    if (n_ < 8) throw std::invalid_argument("SpectralSolver: n >= 8 required");
}

const DiscretizedOperator& SpectralSolver::op0() const {
    if (!has_op0_) {
        op0_ = assemble_operator(v_, 0.0, n_);
        eig0_ = principal_eigenvalue(op0_);
        has_op0_ = true;
    }
    return op0_;
}

const Eigenpair& SpectralSolver::eig0() const {
    op0();
    return eig0_;
}

double SpectralSolver::beta_of_lambda(double lambda) const {
    if (lambda == 0.0 && v_.dimension() >= 3) return 1.0 / eig0().mu;
    const DiscretizedOperator op = assemble_operator(v_, lambda, n_);
    return 1.0 / principal_eigenvalue(op).mu;
}

double SpectralSolver::critical_beta_raw() const {
    if (v_.dimension() <= 2) return 0.0;
    return 1.0 / eig0().mu;
}

double SpectralSolver::critical_beta() const {
    if (v_.dimension() <= 2) return 0.0;
    const double b1 = critical_beta_raw();
    const DiscretizedOperator fine = assemble_operator(v_, 0.0, 2 * n_);
    const double b2 = 1.0 / principal_eigenvalue(fine).mu;
    // Richardson step assuming fourth-order quadrature convergence; the
    // observed b1 - b2 gap is ~1e-9 at n = 256 so the model barely matters.
    return b2 + (b2 - b1) / 15.0;
}

double SpectralSolver::lambda0(double beta) const {
    if (beta <= 0.0) throw std::domain_error("lambda0: beta must be positive");
    const int d = v_.dimension();
    if (d >= 3 && beta <= critical_beta_raw()) return 0.0;
    double lo = 0.0;
    double hi = beta * v_.sup();
    const auto excess = [&](double lambda) {
        return beta - beta_of_lambda(lambda);  // positive below lambda_0
    };
    if (excess(hi) > 0.0)
        throw std::runtime_error("lambda0: bracket failure at lambda_max = beta sup v");
    while (hi - lo > 1e-10 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (excess(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

void SpectralSolver::build_ground_state() const {
    if (has_psi_) return;
    require_dimension(v_.dimension(), 3);
    const DiscretizedOperator& op = op0();
    const Eigenpair& e = eig0();
    beta_cr_raw_ = 1.0 / e.mu;
    // At the nodes, beta_cr v psi_raw = h_raw by the eigenvalue relation, so
    // the weighted norm of beta_cr v psi is a plain quadrature sum over h.
    const double area = sphere_area(op.d);
    double norm2 = 0.0;
    for (std::size_t i = 0; i < op.nodes.size(); ++i)
        norm2 += e.vec[static_cast<int>(i)] * e.vec[static_cast<int>(i)] *
                 std::exp(op.nodes[i] * op.nodes[i]) * op.surface[i] * op.weights[i];
    norm2 *= area;
    psi_scale_ = 1.0 / std::sqrt(norm2);
    h0_ = psi_scale_ * e.vec;

    const double r_out = std::max(12.0, op.r_supp + 10.0);
    const int points = 2400;
    std::vector<double> radii(points), values(points);
    for (int i = 0; i < points; ++i) {
        radii[i] = r_out * i / (points - 1.0);
        values[i] = psi_scale_ * apply_neg_resolvent(op, e.vec, radii[i]);
    }
    psi_ = RadialField(std::move(radii), std::move(values));
    has_psi_ = true;
}

const RadialField& SpectralSolver::ground_state() const {
    build_ground_state();
    return psi_;
}

double SpectralSolver::psi_at(double r) const {
    build_ground_state();
    return psi_scale_ * apply_neg_resolvent(op0(), eig0_.vec, r);
}

double SpectralSolver::gamma_constant() const {
    build_ground_state();
    const int d = v_.dimension();
    const DiscretizedOperator& op = op0();
    const double area = sphere_area(d);
    // v psi at the nodes equals h0 / beta_cr_raw.
    Eigen::VectorXd vpsi = h0_ / beta_cr_raw_;
    double iv1 = 0.0, iv2 = 0.0;
    for (std::size_t i = 0; i < op.nodes.size(); ++i) {
        const int ii = static_cast<int>(i);
        const double w = op.surface[i] * op.weights[i];
        iv1 += vpsi[ii] * w;
        iv2 += vpsi[ii] * psi_scale_ * apply_neg_resolvent(op, eig0_.vec, op.nodes[i]) * w;
    }
    iv1 *= area;
    iv2 *= area;
    switch (d) {
        case 3:
            return iv1 * iv1 / (std::sqrt(2.0) * kPi * iv2);
        case 4:
            // Q_4 is the constant kernel -1/(4 pi^2).
            return iv1 * iv1 / (4.0 * kPi * kPi * iv2);
        default: {
            // d = 5: Q_5(x,y) = -a_5/|x-y|; gamma = a_5 <(1/rho) F, F> / int v psi^2
            // with F = v psi.  The surface integral of 1/rho over S^4 is the
            // polynomial moment int_delta^S (rho^2-delta^2)(S^2-rho^2) drho.
            const double a5 = 1.0 / (4.0 * kPi * kPi);
            const double omega3 = sphere_area(4);  // area of S^3
            double dbl = 0.0;
            const int size = static_cast<int>(op.nodes.size());
            for (int i = 0; i < size; ++i) {
                const double r = op.nodes[i];
                const double fi = vpsi[i] * op.surface[i] * op.weights[i];
                for (int j = 0; j < size; ++j) {
                    const double rp = op.nodes[j];
                    const double lo = std::fabs(r - rp), hi = r + rp;
                    const double A = lo * lo, B = hi * hi;
                    auto prim = [&](double x) {
                        return -std::pow(x, 5) / 5.0 + (A + B) * std::pow(x, 3) / 3.0 -
                               A * B * x;
                    };
                    const double moment = prim(hi) - prim(lo);
                    const double jsurf =
                        omega3 * moment / (4.0 * r * r * rp * rp * r * rp);
                    dbl += fi * vpsi[j] * op.surface[j] * op.weights[j] * jsurf;
                }
            }
            dbl *= area;  // outer S^4 factor
            return a5 * dbl / iv2;
        }
    }
}

ScalingConstants SpectralSolver::constants() const {
    ScalingConstants c;
    const int d = v_.dimension();
    c.c1 = v_.integral();
    c.beta_cr = critical_beta();
    if (d == 2) c.c2 = 2.0 * kPi / c.c1;
    if (d >= 3) {
        c.gamma = gamma_constant();
        const double b = c.beta_cr;
        c.c_d = (d == 3) ? 1.0 / (c.gamma * c.gamma * b * b * b * b)
                         : 1.0 / (c.gamma * b * b);
        if (d == 3) {
            // kappa = 1/(sqrt(2 pi) beta_cr int v psi)
            const DiscretizedOperator& op = op0();
            double iv1 = 0.0;
            for (std::size_t i = 0; i < op.nodes.size(); ++i)
                iv1 += h0_[static_cast<int>(i)] / beta_cr_raw_ * op.surface[i] *
                       op.weights[i];
            iv1 *= sphere_area(3);
            c.kappa = 1.0 / (std::sqrt(2.0 * kPi) * b * iv1);
        }
    }
    return c;
}

SpectralSolver::Eigenfunction SpectralSolver::eigenfunction_data(double beta) const {
    const int d = v_.dimension();
    if (d >= 3 && beta <= critical_beta_raw())
        throw std::domain_error("eigenfunction: beta must exceed beta_cr");
    const double l0 = lambda0(beta);
    if (l0 <= 0.0) throw std::domain_error("eigenfunction: lambda_0 = 0");
    const DiscretizedOperator op = assemble_operator(v_, l0, n_);
    const Eigenpair e = principal_eigenvalue(op);
    const double m = std::sqrt(2.0 * l0);
    const double r_norm = op.r_supp + 16.0 / m;
    const int cells = 32 + static_cast<int>(2.0 * r_norm);
    const QuadratureRule q = composite_gauss(cells, 8, 0.0, r_norm);
    const double area = sphere_area(d);
    double norm2 = 0.0, l1 = 0.0;
    std::vector<double> raw(q.nodes.size());
    for (std::size_t i = 0; i < q.nodes.size(); ++i) {
        raw[i] = apply_neg_resolvent(op, e.vec, q.nodes[i]);
        const double w = std::pow(q.nodes[i], d - 1) * q.weights[i];
        norm2 += raw[i] * raw[i] * w;
        l1 += raw[i] * w;
    }
    norm2 *= area;
    l1 *= area;
    const double s = 1.0 / std::sqrt(norm2);

    Eigenfunction out;
    out.lambda0 = l0;
    out.l1_norm = s * l1;
    out.at_zero = s * apply_neg_resolvent(op, e.vec, 0.0);
    const double r_out = std::min(std::max(12.0, op.r_supp + 10.0 / m), 80.0);
    const int points = 2000;
    std::vector<double> radii(points), values(points);
    for (int i = 0; i < points; ++i) {
        radii[i] = r_out * i / (points - 1.0);
        values[i] = s * apply_neg_resolvent(op, e.vec, radii[i]);
    }
    out.field = RadialField(std::move(radii), std::move(values));
    return out;
}

RadialField SpectralSolver::eigenfunction(double beta) const {
    return eigenfunction_data(beta).field;
}

RadialField SpectralSolver::phi_beta(double beta) const {
    require_dimension(v_.dimension(), 3);
    if (beta < 0.0) throw std::domain_error("phi_beta: beta < 0");
    const double bcr = critical_beta_raw();
    if (beta >= bcr * (1.0 - 1e-10))
        throw std::domain_error("phi_beta: beta too close to beta_cr (singular system)");
    const DiscretizedOperator& op = op0();
    const int size = static_cast<int>(op.nodes.size());
    Eigen::VectorXd rhs(size);
    for (int i = 0; i < size; ++i) rhs[i] = -beta * v_(op.nodes[i]);
    const Eigen::MatrixXd sys =
        Eigen::MatrixXd::Identity(size, size) + beta * op.matrix;
    const Eigen::VectorXd g = sys.partialPivLu().solve(rhs);

    const double r_out = std::max(12.0, op.r_supp + 10.0);
    const int points = 2400;
    std::vector<double> radii(points), values(points);
    for (int i = 0; i < points; ++i) {
        radii[i] = r_out * i / (points - 1.0);
        // phi = R_0(0) g; apply_neg_resolvent returns -R_0(0) g.
        values[i] = -apply_neg_resolvent(op, g, radii[i]);
    }
    return RadialField(std::move(radii), std::move(values));
}

double critical_beta(const RadialPotential& v, int n) {
    return SpectralSolver(v, n).critical_beta();
}

double lambda0(const RadialPotential& v, double beta, int n) {
    return SpectralSolver(v, n).lambda0(beta);
}

RadialField ground_state(const RadialPotential& v, int n) {
    return SpectralSolver(v, n).ground_state();
}

RadialField eigenfunction_psi_beta(const RadialPotential& v, double beta, int n) {
    return SpectralSolver(v, n).eigenfunction(beta);
}

double gamma_constant(const RadialPotential& v, const RadialField& psi) {
    if (v.dimension() != 3)
        throw std::invalid_argument("gamma_constant: simplified formula is d = 3 only");
    const double area = sphere_area(3);
    const double iv1 = area * integrate(
                                  [&](double r) { return v(r) * psi(r) * r * r; }, 0.0,
                                  v.support_radius(), 1e-12);
    const double iv2 = area * integrate(
                                  [&](double r) {
                                      const double p = psi(r);
                                      return v(r) * p * p * r * r;
                                  },
                                  0.0, v.support_radius(), 1e-12);
    return iv1 * iv1 / (std::sqrt(2.0) * kPi * iv2);
}

ScalingConstants scaling_constants(const RadialPotential& v, int n) {
    return SpectralSolver(v, n).constants();
}

RadialField phi_beta(const RadialPotential& v, double beta, int n) {
    return SpectralSolver(v, n).phi_beta(beta);
}

}  // namespace polymer
