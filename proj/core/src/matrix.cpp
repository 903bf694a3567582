#include "semcomm/matrix.hpp"

#include <cmath>
#include <string>

namespace semcomm {

void check_distribution(std::span<const double> p, const char* what, double tol) {
    double sum = 0.0;
    for (double v : p) {
        if (!(v >= 0.0)) throw config_error(std::string(what) + ": negative or NaN entry");
        sum += v;
    }
    if (std::abs(sum - 1.0) > tol)
        throw config_error(std::string(what) + ": probabilities sum to " + std::to_string(sum) +
                           ", expected 1");
}

void check_row_stochastic(const Matrix& m, const char* what, double tol) {
    for (std::size_t r = 0; r < m.rows(); ++r) check_distribution(m.row(r), what, tol);
}

void check_joint(const Matrix& m, const char* what, double tol) {
    double sum = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const double v = m(r, c);
            if (!(v >= 0.0)) throw config_error(std::string(what) + ": negative or NaN entry");
            sum += v;
        }
    }
    if (std::abs(sum - 1.0) > tol)
        throw config_error(std::string(what) + ": joint sums to " + std::to_string(sum) +
                           ", expected 1");
}

}  // namespace semcomm
