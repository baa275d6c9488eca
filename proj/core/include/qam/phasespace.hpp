#pragma once

#include "qam/fock.hpp"

#include <string>

namespace qam {

struct WignerGrid {
    double x_min = -6, x_max = 6;
    double p_min = -6, p_max = 6;
    int points = 201;

    double x(int i) const { return x_min + (x_max - x_min) * i / (points - 1); }
    double p(int i) const { return p_min + (p_max - p_min) * i / (points - 1); }
    double cell_area() const {
        return (x_max - x_min) / (points - 1) * (p_max - p_min) / (points - 1);
    }

    // Symmetric grid sized to resolve lobes of amplitude beta.
    static WignerGrid centered(double extent, int points = 201);
};

struct WignerField {
    WignerGrid grid;
    Eigen::MatrixXd values;   // values(ix, ip) = W(x_i + i p_j)

    double min_value() const { return values.minCoeff(); }
    double max_value() const { return values.maxCoeff(); }
    // Grid quadrature of W; equals tr(op) up to grid truncation error.
    double integral() const { return values.sum() * grid.cell_area(); }
};

// W(alpha) in the Fock basis via the displaced-parity Laguerre sum,
// factorials handled in log space. Real output for Hermitian input; rows
// evaluated in parallel. Emits a coverage warning when the field does not
// decay at the grid boundary.
WignerField wigner(const Matrix& op, const WignerGrid& grid);
WignerField wigner(const DensityMatrix& rho, const WignerGrid& grid);

double min_negativity(const WignerField& field);

} // namespace qam
