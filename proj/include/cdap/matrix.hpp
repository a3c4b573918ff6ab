#ifndef CDAP_MATRIX_HPP
#define CDAP_MATRIX_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace cdap {

// Dense row-major matrix, just enough for distance/flow tables.
template <typename T>
class Matrix {
public:
    Matrix() = default;

    Matrix(int rows, int cols, T fill = T{})
        : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, fill) {
        if (rows < 0 || cols < 0) throw std::invalid_argument("matrix dimensions must be non-negative");
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    T& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    const T& operator()(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }

    T& at(int r, int c) {
        check(r, c);
        return (*this)(r, c);
    }
    const T& at(int r, int c) const {
        check(r, c);
        return (*this)(r, c);
    }

    bool operator==(const Matrix& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
    }
    bool operator!=(const Matrix& other) const { return !(*this == other); }

    const std::vector<T>& data() const { return data_; }

private:
    void check(int r, int c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
            throw std::out_of_range("matrix index out of range");
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<T> data_;
};

}  // namespace cdap

#endif
