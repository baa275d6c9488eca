#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace qam {

using Complex = std::complex<double>;
using Matrix  = Eigen::MatrixXcd;
using Vector  = Eigen::VectorXcd;

// Validated density operator on a truncated Fock space: unit trace (1e-10),
// Hermitian (1e-10), spectrum >= -1e-8. Construction throws solver_error
// if the candidate matrix violates any of these.
class DensityMatrix {
public:
    explicit DensityMatrix(Matrix rho);

    int dim() const { return static_cast<int>(mat_.rows()); }
    const Matrix& matrix() const { return mat_; }
    double purity() const { return (mat_ * mat_).trace().real(); }

    static constexpr double trace_tol = 1e-10;
    static constexpr double herm_tol = 1e-10;
    static constexpr double positivity_tol = 1e-8;

private:
    Matrix mat_;
};

Matrix annihilation(int dim);
Matrix creation(int dim);
Matrix number_operator(int dim);

// Normalized truncated coherent amplitudes e^{-|a|^2/2} a^k / sqrt(k!).
// Emits a truncation warning when the discarded Poisson tail exceeds 1e-9.
Vector coherent_vector(int dim, Complex alpha);
DensityMatrix coherent_state(int dim, Complex alpha);

// The n lobe states |beta_j> = |beta e^{i((2j+1)pi/n + theta)}>, j = 1..n.
std::vector<DensityMatrix> lobe_states(int dim, double beta, int n, double theta);
// Phase of lobe j in [0, 2pi).
double lobe_phase(int j, int n, double theta);

double trace_distance(const Matrix& a, const Matrix& b);
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);

Complex expectation(const Matrix& obs, const DensityMatrix& rho);
Complex expectation(const Matrix& obs, const Matrix& rho);

// Poisson(|beta|^2) mass above level dim-1.
double truncation_tail(double beta, int dim);
// Smallest dimension with truncation tail < 1e-9, plus a 20% margin.
int default_dim(double beta);

} // namespace qam
