#ifndef WSD_MATRIX_HPP
#define WSD_MATRIX_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace wsd {

// Dense row-major float32 matrix. Embeddings and context vectors live in
// these; f32 matches the on-disk representation.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0f) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    std::span<float> row(std::size_t i) {
        return {data_.data() + i * cols_, cols_};
    }
    std::span<const float> row(std::size_t i) const {
        return {data_.data() + i * cols_, cols_};
    }

    float* data() { return data_.data(); }
    const float* data() const { return data_.data(); }
    std::size_t size() const { return data_.size(); }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<float> data_;
};

} // namespace wsd

#endif
