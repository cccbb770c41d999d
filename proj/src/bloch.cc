// Copyright 2026 The measure_steer Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "msteer/bloch.h"

#include <cmath>
#include <sstream>

#include "msteer/error.h"

namespace msteer {

namespace {

using cd = std::complex<double>;

std::string fmt_vec(const Vec3 &v) {
    std::ostringstream out;
    out.precision(17);
    out << "(" << v.x() << ", " << v.y() << ", " << v.z() << ")";
    return out.str();
}

Mat2 make_pauli(cd a, cd b, cd c, cd d) {
    Mat2 m;
    m << a, b, c, d;
    return m;
}

// Both projectors of a two-outcome measurement applied to rho.
Mat2 dephase(const Mat2 &p, const Mat2 &q, const Mat2 &rho) {
    return p * rho * p + q * rho * q;
}

}  // namespace

const Mat2 &pauli_x() {
    static const Mat2 m = make_pauli(0, 1, 1, 0);
    return m;
}

const Mat2 &pauli_y() {
    static const Mat2 m = make_pauli(0, cd(0, -1), cd(0, 1), 0);
    return m;
}

const Mat2 &pauli_z() {
    static const Mat2 m = make_pauli(1, 0, 0, -1);
    return m;
}

Mat2 sigma_dot(const Vec3 &v) {
    return v.x() * pauli_x() + v.y() * pauli_y() + v.z() * pauli_z();
}

StokesVector::StokesVector() : w_(Vec3::Zero()) {
}

StokesVector::StokesVector(const Vec3 &w) : w_(w) {
    if (!w.allFinite()) {
        throw Error(ErrorKind::InvalidState, "Stokes vector has non-finite components " + fmt_vec(w));
    }
    if (w.norm() > 1.0 + kBallTol) {
        throw Error(ErrorKind::InvalidState, "Stokes vector " + fmt_vec(w) + " lies outside the Bloch ball");
    }
}

StokesVector::StokesVector(double x, double y, double z) : StokesVector(Vec3(x, y, z)) {
}

DensityMatrix2::DensityMatrix2(const Mat2 &m) : m_(m) {
    if (!m.allFinite()) {
        throw Error(ErrorKind::InvalidState, "density matrix has non-finite entries");
    }
    double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (herm > kInputTol) {
        throw Error(ErrorKind::InvalidState, "density matrix is not Hermitian");
    }
    cd tr = m.trace();
    if (std::abs(tr - cd(1, 0)) > kInputTol) {
        throw Error(ErrorKind::InvalidState, "density matrix trace differs from 1");
    }
    // Closed-form eigenvalues of the Hermitian part.
    double a = m(0, 0).real();
    double d = m(1, 1).real();
    double off = std::abs(0.5 * (m(0, 1) + std::conj(m(1, 0))));
    double half_gap = std::hypot(0.5 * (a - d), off);
    if (0.5 * (a + d) - half_gap < -kInputTol) {
        throw Error(ErrorKind::InvalidState, "density matrix has a negative eigenvalue");
    }
}

BlochProjector::BlochProjector(const Vec3 &a) : a_(a) {
    if (!a.allFinite() || std::abs(a.norm() - 1.0) > kUnitTol) {
        throw Error(ErrorKind::InvalidAxis, "projector axis " + fmt_vec(a) + " is not a unit vector");
    }
}

BlochProjector::BlochProjector(double x, double y, double z) : BlochProjector(Vec3(x, y, z)) {
}

BlochProjector BlochProjector::from_direction(const Vec3 &direction) {
    double n = direction.norm();
    if (!(n > 0) || !std::isfinite(n)) {
        throw Error(ErrorKind::InvalidAxis, "cannot normalize direction " + fmt_vec(direction));
    }
    return BlochProjector(direction / n);
}

Mat2 BlochProjector::projector() const {
    return 0.5 * (Mat2::Identity() + sigma_dot(a_));
}

Mat2 BlochProjector::complement() const {
    return 0.5 * (Mat2::Identity() - sigma_dot(a_));
}

ObservableClass::ObservableClass(BlochProjector axis, double q, double q_tilde)
    : axis_(std::move(axis)), q_(q), q_tilde_(q_tilde) {
    if (!std::isfinite(q) || !std::isfinite(q_tilde)) {
        throw Error(ErrorKind::InvalidOperator, "observable eigenvalues must be finite");
    }
    if (q == q_tilde) {
        throw Error(ErrorKind::InvalidOperator, "observable with equal eigenvalues is measurement-trivial");
    }
}

Mat2 ObservableClass::matrix() const {
    return q_ * axis_.projector() + q_tilde_ * axis_.complement();
}

DensityMatrix2 ObservableClass::measure(const DensityMatrix2 &rho) const {
    // The eigenvalues are distinct, so the spectral projectors are exactly P and I - P.
    return DensityMatrix2(dephase(axis_.projector(), axis_.complement(), rho.matrix()));
}

TargetOperator::TargetOperator(double lambda0, const Vec3 &lambda) : lambda0(lambda0), lambda(lambda) {
    if (!std::isfinite(lambda0) || !lambda.allFinite()) {
        throw Error(ErrorKind::InvalidOperator, "target operator has non-finite coefficients");
    }
}

Mat2 TargetOperator::matrix() const {
    return lambda0 * Mat2::Identity() + sigma_dot(lambda);
}

DensityMatrix2 stokes_to_density(const StokesVector &w) {
    return DensityMatrix2(0.5 * (Mat2::Identity() + sigma_dot(w.vec())));
}

StokesVector density_to_stokes(const DensityMatrix2 &rho) {
    const Mat2 &m = rho.matrix();
    return StokesVector((m * pauli_x()).trace().real(), (m * pauli_y()).trace().real(),
                        (m * pauli_z()).trace().real());
}

StokesVector density_to_stokes(const Mat2 &m) {
    return density_to_stokes(DensityMatrix2(m));
}

StokesVector measure_channel_stokes(const BlochProjector &a, const StokesVector &w0) {
    return StokesVector(a.vec() * a.vec().dot(w0.vec()));
}

DensityMatrix2 measure_channel_matrix(const BlochProjector &a, const DensityMatrix2 &rho) {
    return DensityMatrix2(dephase(a.projector(), a.complement(), rho.matrix()));
}

std::vector<StokesVector> measure_sequence(std::span<const BlochProjector> axes, const StokesVector &w0) {
    std::vector<StokesVector> states;
    states.reserve(axes.size());
    StokesVector w = w0;
    for (const auto &a : axes) {
        w = measure_channel_stokes(a, w);
        states.push_back(w);
    }
    return states;
}

double target_expectation(const StokesVector &w, const TargetOperator &theta) {
    return theta.lambda0 + w.vec().dot(theta.lambda);
}

TargetOperator target_from_matrix(const Mat2 &theta_m) {
    if (!theta_m.allFinite() || (theta_m - theta_m.adjoint()).cwiseAbs().maxCoeff() > kInputTol) {
        throw Error(ErrorKind::InvalidOperator, "target matrix is not Hermitian");
    }
    return TargetOperator(0.5 * theta_m.trace().real(),
                          0.5 * Vec3((theta_m * pauli_x()).trace().real(), (theta_m * pauli_y()).trace().real(),
                                     (theta_m * pauli_z()).trace().real()));
}

Vec3 rotate(const Vec3 &v, const Vec3 &n, double theta) {
    if (!n.allFinite() || std::abs(n.norm() - 1.0) > kUnitTol) {
        throw Error(ErrorKind::InvalidAxis, "rotation axis " + fmt_vec(n) + " is not a unit vector");
    }
    double c = std::cos(theta);
    double s = std::sin(theta);
    return v * c + n.cross(v) * s + n * (n.dot(v) * (1.0 - c));
}

double angle_between(const Vec3 &u, const Vec3 &v) {
    return std::atan2(u.cross(v).norm(), u.dot(v));
}

}  // namespace msteer
