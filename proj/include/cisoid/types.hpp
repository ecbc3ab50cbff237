#ifndef CISOID_TYPES_HPP
#define CISOID_TYPES_HPP

#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace cisoid {

using Real    = double;
using Complex = std::complex<Real>;
using Index   = Eigen::Index;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using ComplexMatrix = DenseMatrix<Complex>;
using ComplexVector = DenseVector<Complex>;
using RealVector    = DenseVector<Real>;

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid arguments or violated model invariants (CLI exit code 1).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Numerical backend failures (CLI exit code 2).
class ComputationError : public Error {
public:
    using Error::Error;
};

/// The generalized eigenvalue pair is singular, so its eigenvalues carry no meaning.
class NotRegularError : public ComputationError {
public:
    using ComputationError::ComputationError;
};

/// A point of the extended complex plane: a finite value or the point at infinity.
template <typename RealScalar>
class BasicExtendedComplex {
public:
    using value_type = std::complex<RealScalar>;

    BasicExtendedComplex() = default;
    BasicExtendedComplex(value_type z) : value_(z) {} // NOLINT(google-explicit-constructor)

    static BasicExtendedComplex infinity()
    {
        BasicExtendedComplex p;
        p.infinite_ = true;
        return p;
    }

    bool is_infinite() const { return infinite_; }
    bool is_finite() const { return !infinite_; }

    /// Finite value; throws for the point at infinity.
    value_type value() const
    {
        if (infinite_) {
            throw ComputationError("value() requested for the point at infinity");
        }
        return value_;
    }

    friend bool operator==(const BasicExtendedComplex& a, const BasicExtendedComplex& b)
    {
        if (a.infinite_ || b.infinite_) {
            return a.infinite_ == b.infinite_;
        }
        return a.value_ == b.value_;
    }

private:
    value_type value_{};
    bool infinite_ = false;
};

using ExtendedComplex = BasicExtendedComplex<Real>;

inline constexpr Real kInfinity = std::numeric_limits<Real>::infinity();

} // namespace cisoid

#endif // CISOID_TYPES_HPP
