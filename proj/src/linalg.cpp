// srlink - short-range mmWave link configuration simulator
// Copyright (C) 2026 srlink contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "srlink/linalg.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <stdexcept>

#include "srlink/kernels.hpp"

namespace srlink {

namespace {

Eigen::MatrixXcd to_eigen(const CMat& m) {
    Eigen::MatrixXcd e(m.rows, m.cols);
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) e(r, c) = m(r, c);
    return e;
}

}  // namespace

SingularTriplet top_singular_triplet(const CMat& m) {
    if (m.rows == 0 || m.cols == 0) throw std::invalid_argument("top_singular_triplet: empty matrix");
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m), Eigen::ComputeThinU | Eigen::ComputeThinV);
    SingularTriplet t;
    t.sigma = svd.singularValues()(0);
    t.u.resize(m.rows);
    t.v.resize(m.cols);
    for (int r = 0; r < m.rows; ++r) t.u[r] = svd.matrixU()(r, 0);
    for (int c = 0; c < m.cols; ++c) t.v[c] = svd.matrixV()(c, 0);
    return t;
}

double spectral_norm(const CMat& m) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m));
    return svd.singularValues()(0);
}

double frobenius_norm(const CMat& m) { return std::sqrt(kernels::sum_abs2(m.data(), m.size())); }

std::vector<double> regularized_gram_inverse_diag(const CMat& m, double snr) {
    if (m.rows != m.cols) throw std::invalid_argument("regularized_gram_inverse_diag: matrix must be square");
    if (snr <= 0.0) throw std::invalid_argument("regularized_gram_inverse_diag: snr must be positive");
    const Eigen::MatrixXcd h = to_eigen(m);
    Eigen::MatrixXcd g = h.adjoint() * h;
    g += Eigen::MatrixXcd::Identity(m.rows, m.rows) / snr;
    const Eigen::MatrixXcd inv = g.inverse();
    std::vector<double> diag(m.rows);
    for (int k = 0; k < m.rows; ++k) diag[k] = inv(k, k).real();
    return diag;
}

}  // namespace srlink
