#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "semcomm/errors.hpp"

namespace semcomm {

/// Dense row-major matrix of doubles. All probability tables in the
/// toolkit (joint pmfs, conditional tables, channel transitions) are
/// small enough that a flat vector beats anything fancier.
class Matrix {
  public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    Matrix(std::initializer_list<std::initializer_list<double>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& r : init) {
            if (r.size() != cols_) throw config_error("Matrix: ragged initializer");
            data_.insert(data_.end(), r.begin(), r.end());
        }
    }

    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    std::span<const double> row(std::size_t r) const {
        return {data_.data() + r * cols_, cols_};
    }
    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

    double sum() const {
        double s = 0.0;
        for (double v : data_) s += v;
        return s;
    }

    double row_sum(std::size_t r) const {
        double s = 0.0;
        for (std::size_t c = 0; c < cols_; ++c) s += (*this)(r, c);
        return s;
    }

    double col_sum(std::size_t c) const {
        double s = 0.0;
        for (std::size_t r = 0; r < rows_; ++r) s += (*this)(r, c);
        return s;
    }

    std::vector<double> row_sums() const {
        std::vector<double> s(rows_);
        for (std::size_t r = 0; r < rows_; ++r) s[r] = row_sum(r);
        return s;
    }

    std::vector<double> col_sums() const {
        std::vector<double> s(cols_, 0.0);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) s[c] += (*this)(r, c);
        return s;
    }

    const std::vector<double>& data() const { return data_; }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

inline constexpr double kDistributionTol = 1e-12;

/// Throws config_error unless p is a probability vector: entries >= 0,
/// sum within `tol` of one.
void check_distribution(std::span<const double> p, const char* what,
                        double tol = kDistributionTol);

/// Throws config_error unless each row of `m` is a probability vector.
void check_row_stochastic(const Matrix& m, const char* what,
                          double tol = kDistributionTol);

/// Throws config_error unless `m` is a joint pmf (entries >= 0, total
/// sum within `tol` of one).
void check_joint(const Matrix& m, const char* what, double tol = kDistributionTol);

}  // namespace semcomm
