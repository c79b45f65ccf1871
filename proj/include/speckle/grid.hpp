#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "speckle/errors.hpp"

namespace speckle {

// Dense row-major grids. Row-major layout is part of the on-disk contracts
// (SPKC shards and SPKN checkpoints store raster order), so it is fixed here
// rather than left to Eigen's default.
template <typename Scalar>
using Grid = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using RealGrid = Grid<double>;
using ComplexGrid = Grid<std::complex<double>>;
using RealVec = Eigen::VectorXd;
using ComplexVec = Eigen::VectorXcd;

inline bool all_finite(const RealGrid& g) { return g.allFinite(); }

inline bool all_finite(const ComplexGrid& g) {
    return g.real().allFinite() && g.imag().allFinite();
}

// Raster-order (row-major) flatten and its inverse.
inline RealVec flatten(const RealGrid& g) {
    return Eigen::Map<const RealVec>(g.data(), g.size());
}

inline RealGrid reshape(const RealVec& v, Eigen::Index rows, Eigen::Index cols) {
    if (v.size() != rows * cols)
        throw DimensionError("reshape: vector length " + std::to_string(v.size()) +
                             " != " + std::to_string(rows) + "x" + std::to_string(cols));
    return Eigen::Map<const RealGrid>(v.data(), rows, cols);
}

// Circular shift: entry (r, c) of the result is g((r - dr) mod rows, (c - dc) mod cols),
// i.e. positive (dr, dc) moves content down and to the right.
template <typename Scalar>
Grid<Scalar> circshift(const Grid<Scalar>& g, Eigen::Index dr, Eigen::Index dc) {
    const Eigen::Index rows = g.rows(), cols = g.cols();
    Grid<Scalar> out(rows, cols);
    const Eigen::Index sr = ((dr % rows) + rows) % rows;
    const Eigen::Index sc = ((dc % cols) + cols) % cols;
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c)
            out((r + sr) % rows, (c + sc) % cols) = g(r, c);
    return out;
}

template <typename Scalar>
Grid<Scalar> fftshift(const Grid<Scalar>& g) {
    return circshift(g, g.rows() / 2, g.cols() / 2);
}

template <typename Scalar>
Grid<Scalar> ifftshift(const Grid<Scalar>& g) {
    return circshift(g, g.rows() - g.rows() / 2, g.cols() - g.cols() / 2);
}

// Zero-pad `inner` into the center of a side x side grid.
inline RealGrid embed_centered(const RealGrid& inner, Eigen::Index side) {
    if (inner.rows() > side || inner.cols() > side)
        throw DimensionError("embed_centered: inner grid larger than target");
    RealGrid out = RealGrid::Zero(side, side);
    out.block((side - inner.rows()) / 2, (side - inner.cols()) / 2, inner.rows(), inner.cols()) =
        inner;
    return out;
}

inline ComplexVec matvec(const ComplexGrid& m, const ComplexVec& v) {
    if (v.size() != m.cols())
        throw DimensionError("matvec: vector length " + std::to_string(v.size()) +
                             " != matrix cols " + std::to_string(m.cols()));
    return m * v;
}

// Pearson correlation over all pixels; throws on a constant input.
inline double pearson(const RealGrid& a, const RealGrid& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("pearson: shape mismatch");
    const double ma = a.mean(), mb = b.mean();
    const RealGrid da = a.array() - ma;
    const RealGrid db = b.array() - mb;
    const double va = da.squaredNorm(), vb = db.squaredNorm();
    if (va == 0.0 || vb == 0.0)
        throw DomainError("pearson: constant input has no correlation");
    return da.cwiseProduct(db).sum() / std::sqrt(va * vb);
}

}  // namespace speckle
