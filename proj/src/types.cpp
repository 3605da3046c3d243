#include "hdcpd/types.hpp"

#include <cmath>

namespace hdcpd {

DataSequence DataSequence::validate(Matrix raw) {
    if (raw.rows < 2) {
        throw TooFewRowsError(raw.rows);
    }
    for (std::size_t i = 0; i < raw.rows; ++i) {
        for (std::size_t j = 0; j < raw.cols; ++j) {
            if (!std::isfinite(raw(i, j))) {
                throw NonFiniteError(i, j);
            }
        }
    }
    if (raw.cols == 0) {
        throw DimensionMismatchError("observations need at least one coordinate");
    }
    return DataSequence(std::move(raw));
}

DataSequence DataSequence::subsequence(std::size_t lo, std::size_t hi) const {
    if (lo > hi || hi >= n()) {
        throw IndexOutOfRangeError("subsequence [" + std::to_string(lo) + ", " +
                                   std::to_string(hi) + "] out of range");
    }
    Matrix m(hi - lo + 1, dim());
    for (std::size_t i = lo; i <= hi; ++i) {
        auto src = values_.row(i);
        auto dst = m.row(i - lo);
        std::copy(src.begin(), src.end(), dst.begin());
    }
    return DataSequence(std::move(m));
}

DataSequence DataSequence::select_rows(std::span<const std::size_t> idx) const {
    Matrix m(idx.size(), dim());
    for (std::size_t k = 0; k < idx.size(); ++k) {
        if (idx[k] >= n()) {
            throw IndexOutOfRangeError("row index " + std::to_string(idx[k]) + " out of range");
        }
        auto src = values_.row(idx[k]);
        auto dst = m.row(k);
        std::copy(src.begin(), src.end(), dst.begin());
    }
    return DataSequence(std::move(m));
}

std::vector<double> DataSequence::column(std::size_t j) const {
    if (j >= dim()) {
        throw IndexOutOfRangeError("column index " + std::to_string(j) + " out of range");
    }
    std::vector<double> out(n());
    for (std::size_t i = 0; i < n(); ++i) {
        out[i] = values_(i, j);
    }
    return out;
}

DissimilarityMatrix DissimilarityMatrix::from_entries(const Matrix& entries) {
    if (entries.rows != entries.cols) {
        throw DimensionMismatchError("dissimilarity matrix must be square");
    }
    DissimilarityMatrix out(entries.rows);
    for (std::size_t i = 0; i < entries.rows; ++i) {
        if (entries(i, i) != 0.0) {
            throw Error("dissimilarity matrix must have zero diagonal");
        }
        for (std::size_t j = i + 1; j < entries.cols; ++j) {
            double v = entries(i, j);
            if (v != entries(j, i)) {
                throw Error("dissimilarity matrix must be symmetric");
            }
            if (!std::isfinite(v) || v < 0.0) {
                throw Error("dissimilarity entries must be finite and nonnegative");
            }
            out.set(i, j, v);
        }
    }
    return out;
}

Labeling Labeling::from_labels(std::vector<std::uint8_t> labels) {
    Labeling out;
    out.labels = std::move(labels);
    for (auto v : out.labels) {
        if (v > 1) {
            throw Error("labels must be 0 or 1");
        }
        if (v == 0) {
            ++out.n1;
        } else {
            ++out.n2;
        }
    }
    return out;
}

Labeling Labeling::swapped() const {
    Labeling out;
    out.labels.resize(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        out.labels[i] = static_cast<std::uint8_t>(1 - labels[i]);
    }
    out.n1 = n2;
    out.n2 = n1;
    return out;
}

}  // namespace hdcpd
