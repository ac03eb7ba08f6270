#pragma once

#include <cstdint>
#include <vector>

#include "hkq/poly.hpp"
#include "hkq/setup.hpp"

namespace hkq {

/** H_i = {x in k* : <n_i, x> = d_i}. */
struct Hyperplane
{
    std::size_t index = 0; ///< weight index i (0-based)
    RatVec normal;         ///< n_i, length N - d
    Rat offset;            ///< d_i
};

/**
 * The Gale dual arrangement in k* = Q^(N-d).
 *
 * Coordinates i with n_i = 0 (e_i in the image of t) give no hyperplane: on the whole of
 * k* the quantity <n_i, x> - d_i equals the constant -d_i, which genericity makes nonzero.
 * They are listed in `constant` together with that sign.
 */
struct Arrangement
{
    std::size_t n = 0;   ///< number of weights N
    std::size_t dim = 0; ///< N - d
    std::vector<Hyperplane> hyperplanes;
    std::vector<std::size_t> constant;    ///< indices with zero normal
    std::vector<int> constant_sign;       ///< sign of <n_i, x> - d_i for those
};

/// Throws DegenerateNormal when some n_i = 0 and d_i = 0 (the "hyperplane" would be all of k*).
Arrangement build_arrangement(const TorusSetup& s);

/// sigma_i in {-1, 0, +1}: the sign of <n_i, x> - d_i on the face.
using SignVector = std::vector<std::int8_t>;

struct Face
{
    SignVector sigma;
    std::size_t dim = 0;
};

/**
 * All bounded faces (relatively open cells) of the arrangement. Faces are enumerated per
 * independent set Z of hyperplanes (their affine hull), then per region of the restricted
 * arrangement inside that affine subspace. Throws NotSimple if a dependent set of
 * hyperplanes has a common point.
 */
std::vector<Face> bounded_faces(const Arrangement& arr);

/** d[k] = number of bounded k-dimensional faces, k = 0 .. dim. */
struct FaceCensus
{
    std::vector<std::size_t> d;

    friend bool operator==(const FaceCensus&, const FaceCensus&) = default;
};

FaceCensus face_census(const Arrangement& arr);

/// sum_k d_k (q - 1)^k
PoincarePoly poincare_from_census(const FaceCensus& census);

}  // namespace hkq
