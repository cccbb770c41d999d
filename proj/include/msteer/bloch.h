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

#ifndef MSTEER_BLOCH_H
#define MSTEER_BLOCH_H

#include <Eigen/Dense>
#include <span>
#include <vector>

namespace msteer {

using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2cd;

/// Tolerance used when validating values handed to the library.
inline constexpr double kInputTol = 1e-10;
/// Tolerance on |w| <= 1 for Stokes vectors.
inline constexpr double kBallTol = 1e-9;
/// Tolerance on |a| = 1 for projector axes.
inline constexpr double kUnitTol = 1e-12;

/// Pauli matrices in the basis (|2>, |1>): the excited state |2> is the
/// sigma_z = +1 eigenvector, the ground state |1> the -1 eigenvector.
const Mat2 &pauli_x();
const Mat2 &pauli_y();
const Mat2 &pauli_z();
Mat2 sigma_dot(const Vec3 &v);

/// Real 3-vector inside the Bloch ball.
class StokesVector {
   public:
    StokesVector();
    /// Throws ErrorKind::InvalidState when |w| > 1 + kBallTol or w is not finite.
    explicit StokesVector(const Vec3 &w);
    StokesVector(double x, double y, double z);

    const Vec3 &vec() const {
        return w_;
    }
    double x() const {
        return w_.x();
    }
    double y() const {
        return w_.y();
    }
    double z() const {
        return w_.z();
    }
    double norm() const {
        return w_.norm();
    }

    bool operator==(const StokesVector &other) const {
        return w_ == other.w_;
    }

   private:
    Vec3 w_;
};

/// 2x2 Hermitian, unit-trace, positive matrix.
class DensityMatrix2 {
   public:
    /// Throws ErrorKind::InvalidState unless m is a density matrix within kInputTol.
    explicit DensityMatrix2(const Mat2 &m);

    const Mat2 &matrix() const {
        return m_;
    }

   private:
    Mat2 m_;
};

/// Unit Bloch vector a of the projector P = (I + a.sigma)/2.
class BlochProjector {
   public:
    /// Throws ErrorKind::InvalidAxis when | |a| - 1 | > kUnitTol.
    explicit BlochProjector(const Vec3 &a);
    BlochProjector(double x, double y, double z);
    /// Normalizes a nonzero direction.
    static BlochProjector from_direction(const Vec3 &direction);

    const Vec3 &vec() const {
        return a_;
    }
    Mat2 projector() const;
    Mat2 complement() const;

    bool operator==(const BlochProjector &other) const {
        return a_ == other.a_;
    }

   private:
    Vec3 a_;
};

/// Observable q P + q_tilde (I - P). Every member of the class with the same
/// axis induces the same non-selective measurement.
class ObservableClass {
   public:
    explicit ObservableClass(BlochProjector axis, double q = 1.0, double q_tilde = 0.0);

    const BlochProjector &axis() const {
        return axis_;
    }
    double q() const {
        return q_;
    }
    double q_tilde() const {
        return q_tilde_;
    }
    Mat2 matrix() const;
    /// sum_i P_i rho P_i over the spectral projectors of matrix().
    DensityMatrix2 measure(const DensityMatrix2 &rho) const;

   private:
    BlochProjector axis_;
    double q_;
    double q_tilde_;
};

/// Theta = lambda0 I + lambda.sigma.
struct TargetOperator {
    double lambda0 = 0.0;
    Vec3 lambda = Vec3::Zero();

    TargetOperator() = default;
    /// Throws ErrorKind::InvalidOperator on non-finite input.
    TargetOperator(double lambda0, const Vec3 &lambda);

    Mat2 matrix() const;
};

DensityMatrix2 stokes_to_density(const StokesVector &w);
StokesVector density_to_stokes(const DensityMatrix2 &rho);
/// Convenience overload validating a raw matrix first.
StokesVector density_to_stokes(const Mat2 &m);

/// Stokes form of the non-selective measurement: a (a . w0).
StokesVector measure_channel_stokes(const BlochProjector &a, const StokesVector &w0);
/// Matrix form P rho P + (I - P) rho (I - P).
DensityMatrix2 measure_channel_matrix(const BlochProjector &a, const DensityMatrix2 &rho);

/// Applies the measurements in order; returns the state after each one.
std::vector<StokesVector> measure_sequence(std::span<const BlochProjector> axes, const StokesVector &w0);

/// lambda0 + w . lambda
double target_expectation(const StokesVector &w, const TargetOperator &theta);
/// Throws ErrorKind::InvalidOperator when theta_m is not Hermitian within kInputTol.
TargetOperator target_from_matrix(const Mat2 &theta_m);

/// Right-handed rotation of v about the unit axis n (Rodrigues).
/// Throws ErrorKind::InvalidAxis when | |n| - 1 | > kUnitTol.
Vec3 rotate(const Vec3 &v, const Vec3 &n, double theta);

/// atan2(|u x v|, u . v); both vectors nonzero.
double angle_between(const Vec3 &u, const Vec3 &v);

}  // namespace msteer

#endif
