#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace hdcpd {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct NonFiniteError : Error {
    std::size_t row, col;
    NonFiniteError(std::size_t r, std::size_t c)
        : Error("non-finite value at row " + std::to_string(r) + ", col " + std::to_string(c)),
          row(r), col(c) {}
};

struct TooFewRowsError : Error {
    explicit TooFewRowsError(std::size_t n)
        : Error("need at least 2 rows, got " + std::to_string(n)) {}
};

struct DimensionMismatchError : Error {
    using Error::Error;
};

struct TooFewPointsError : Error {
    using Error::Error;
};

struct LengthMismatchError : Error {
    using Error::Error;
};

struct UnsupportedBlockSizeError : Error {
    using Error::Error;
};

struct EmptyClusterError : Error {
    using Error::Error;
};

struct DegenerateInputError : Error {
    using Error::Error;
};

struct TooLargeError : Error {
    using Error::Error;
};

struct CacheIOError : Error {
    using Error::Error;
};

struct IndexOutOfRangeError : Error {
    using Error::Error;
};

struct ConstantLabelingError : Error {
    using Error::Error;
};

struct TooShortError : Error {
    using Error::Error;
};

struct UnknownScenarioError : Error {
    using Error::Error;
};

struct BadCovarianceError : Error {
    using Error::Error;
};

struct BadRangeError : Error {
    using Error::Error;
};

struct BadParameterError : Error {
    using Error::Error;
};

struct ParseError : Error {
    std::size_t line, col;
    ParseError(std::size_t l, std::size_t c, const std::string& what)
        : Error("parse error at line " + std::to_string(l) + ", col " + std::to_string(c) +
                ": " + what),
          line(l), col(c) {}
};

struct RaggedRowsError : Error {
    using Error::Error;
};

struct BadConfigError : Error {
    using Error::Error;
};

// Dense row-major matrix of doubles. Sizes here stay small (n in the
// hundreds, d up to ~1e4), so no sparse or blocked storage.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    std::span<double> row(std::size_t i) { return {data.data() + i * cols, cols}; }
    std::span<const double> row(std::size_t i) const { return {data.data() + i * cols, cols}; }

    bool operator==(const Matrix&) const = default;
};

// Time-ordered sequence of n observations in R^d. Immutable after
// construction; all entries finite, n >= 2.
class DataSequence {
public:
    static DataSequence validate(Matrix raw);

    std::size_t n() const { return values_.rows; }
    std::size_t dim() const { return values_.cols; }
    const Matrix& values() const { return values_; }
    std::span<const double> row(std::size_t i) const { return values_.row(i); }

    // Rows [lo, hi], 0-based inclusive.
    DataSequence subsequence(std::size_t lo, std::size_t hi) const;
    // Rows at the given 0-based indices, in the given order.
    DataSequence select_rows(std::span<const std::size_t> idx) const;
    // Column j as a contiguous vector.
    std::vector<double> column(std::size_t j) const;

private:
    explicit DataSequence(Matrix m) : values_(std::move(m)) {}
    Matrix values_;
};

inline DataSequence validate_sequence(Matrix raw) { return DataSequence::validate(std::move(raw)); }

// Symmetric n x n matrix of pairwise dissimilarities, zero diagonal.
class DissimilarityMatrix {
public:
    static DissimilarityMatrix zeros(std::size_t n) { return DissimilarityMatrix(n); }
    // Validates symmetry, zero diagonal, finiteness, nonnegativity.
    static DissimilarityMatrix from_entries(const Matrix& entries);

    std::size_t size() const { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }
    void set(std::size_t i, std::size_t j, double v) {
        e_[i * n_ + j] = v;
        e_[j * n_ + i] = v;
    }

private:
    explicit DissimilarityMatrix(std::size_t n) : n_(n), e_(n * n, 0.0) {}
    std::size_t n_ = 0;
    std::vector<double> e_;
};

// Binary cluster labels for n observations. n1 counts label 0, n2 label 1.
// Which cluster is "0" is arbitrary; everything downstream must be invariant
// to a global swap.
struct Labeling {
    std::vector<std::uint8_t> labels;
    std::size_t n1 = 0;
    std::size_t n2 = 0;

    static Labeling from_labels(std::vector<std::uint8_t> labels);

    std::size_t size() const { return labels.size(); }
    bool constant() const { return n1 == 0 || n2 == 0; }
    Labeling swapped() const;

    bool operator==(const Labeling&) const = default;
};

}  // namespace hdcpd
