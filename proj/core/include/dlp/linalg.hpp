#pragma once

#include <random>

#include "dlp/scalars.hpp"

namespace dlp {

using Rng = std::mt19937_64;

// A matrix whose columns are orthonormal.
using Frame = Matrix;

Frame gram_schmidt(const Matrix& raw);
Matrix gaussian_matrix(int rows, int cols, Field f, Rng& rng);
Frame haar_frame(int d, int n, Field f, Rng& rng);
bool is_orthonormal(const Frame& f, double tol = 1e-10);

Matrix projection(const Frame& f);
// Frame of the orthogonal complement of span(f) in the ambient space.
Frame complement_frame(const Frame& f);
Matrix compress(const Matrix& a, const Frame& q, const Frame& r);
double cos2(const Frame& f, const Frame& g);

struct Eigensystem {
  RVector values;  // ascending
  Frame vectors;
};
Eigensystem hermitian_eig(const Matrix& k);

Matrix oblique_projector(const Frame& q, const Frame& h);
int intersection_dim(const Frame& f, const Frame& w, double tol = 1e-8);

// Determinant over R or C (complex value), quaternion Hermitian via qdet.
cplx field_det(const Matrix& m);
// Real determinant of a Hermitian matrix over any field.
double hermitian_det(const Matrix& m);

// (-1)^{dim Q^perp} det(K - Pi_{Q^perp}), qdet over H.
double schur_density(const Matrix& k, const Frame& q);
// det(K Pi_Q + (1 - K) Pi_{Q^perp}); real and complex only.
double schur_density_direct(const Matrix& k, const Frame& q);

// Largest distance between the projections onto two subspaces.
double projection_distance(const Frame& f, const Frame& g);

}  // namespace dlp
