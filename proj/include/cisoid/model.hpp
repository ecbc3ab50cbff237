#ifndef CISOID_MODEL_HPP
#define CISOID_MODEL_HPP

#include <cstdint>
#include <vector>

#include "cisoid/types.hpp"

namespace cisoid {

///
/// A node z = exp(-d) exp(2 pi i f / Fs) of the cisoid model.
///
/// The complex value is the canonical storage; damping and frequency are
/// derived on demand, so the two forms can never drift apart.
///
class Node {
public:
    Node() = default;
    explicit Node(Complex z);

    /// Build from damping d >= 0 (nepers per sample) and frequency f (same unit as fs).
    static Node from_damping_frequency(Real d, Real f, Real fs);

    Complex z() const { return z_; }
    Real modulus() const { return std::abs(z_); }
    Real damping() const;
    /// Frequency in [0, fs).
    Real frequency(Real fs) const;

private:
    Complex z_{1.0, 0.0};
};

///
/// Ground truth x_n = sum_k alpha_k z_k^n, n = 0..N-1.
///
/// Construction enforces: K >= 1, N >= 2K, Fs > 0, nodes non-zero, inside the
/// closed unit disk and pairwise distinct, weights non-zero.
///
class SignalModel {
public:
    SignalModel(std::vector<Node> nodes, std::vector<Complex> weights, Index num_samples,
                Real sampling_frequency = 1.0);

    Index order() const { return static_cast<Index>(nodes_.size()); }
    Index num_samples() const { return num_samples_; }
    Real sampling_frequency() const { return fs_; }

    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<Complex>& weights() const { return weights_; }

    ComplexVector node_values() const;
    ComplexVector weight_values() const;
    std::vector<Real> frequencies() const;

    Real alpha_min() const;
    Real alpha_max() const;
    /// Smallest node modulus.
    Real a_min() const;
    Real d_max() const;

    /// Same nodes with every weight multiplied by `factor`.
    SignalModel scaled_weights(Complex factor) const;

private:
    std::vector<Node> nodes_;
    std::vector<Complex> weights_;
    Index num_samples_;
    Real fs_;
};

/// Noisy samples together with the clean signal and the noise record.
struct MeasurementVector {
    ComplexVector samples;
    ComplexVector noise;
    ComplexVector clean;
};

ComplexVector synthesize(const SignalModel& model);

///
/// Add a seeded pseudo-random noise vector rescaled to l2-norm `noise_energy`.
///
/// Real and imaginary parts are drawn independently from uniform(-1, 1).
/// The same (seed, energy, length) always yields the same noise.
///
MeasurementVector inject_noise(const ComplexVector& clean, Real noise_energy, std::uint64_t seed);

/// ||x||^2 / ||e||^2, +inf for zero noise.
Real snr(const MeasurementVector& mv);

} // namespace cisoid

#endif // CISOID_MODEL_HPP
