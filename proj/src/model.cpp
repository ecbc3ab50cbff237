#include "cisoid/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace cisoid {

namespace {

// |z| may exceed 1 by roundoff when built from d = 0.
constexpr Real kUnitDiskSlack = 1e-12;

} // namespace

Node::Node(Complex z) : z_(z)
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw ValidationError("node must be finite");
    }
    if (std::abs(z) == 0.0) {
        throw ValidationError("node must be non-zero");
    }
    if (std::abs(z) > 1.0 + kUnitDiskSlack) {
        std::ostringstream os;
        os << "node " << z << " lies outside the unit disk";
        throw ValidationError(os.str());
    }
}

Node Node::from_damping_frequency(Real d, Real f, Real fs)
{
    if (!(d >= 0.0) || !std::isfinite(d)) {
        throw ValidationError("damping must be finite and >= 0");
    }
    if (!(fs > 0.0)) {
        throw ValidationError("sampling frequency must be > 0");
    }
    const Real phase = 2.0 * std::numbers::pi * f / fs;
    return Node(std::exp(-d) * Complex(std::cos(phase), std::sin(phase)));
}

Real Node::damping() const { return std::max(Real(0), -std::log(std::abs(z_))); }

Real Node::frequency(Real fs) const
{
    Real f = fs * std::arg(z_) / (2.0 * std::numbers::pi);
    if (f < 0.0) {
        f += fs;
    }
    // arg slightly below 0 can round up to exactly fs
    return f >= fs ? Real(0) : f;
}

SignalModel::SignalModel(std::vector<Node> nodes, std::vector<Complex> weights,
                         Index num_samples, Real sampling_frequency)
    : nodes_(std::move(nodes)), weights_(std::move(weights)), num_samples_(num_samples),
      fs_(sampling_frequency)
{
    const auto K = static_cast<Index>(nodes_.size());
    if (K < 1) {
        throw ValidationError("model order K must be >= 1");
    }
    if (weights_.size() != nodes_.size()) {
        throw ValidationError("number of weights must equal number of nodes");
    }
    if (num_samples_ < 2 * K) {
        std::ostringstream os;
        os << "sample count N = " << num_samples_ << " violates N >= 2K (K = " << K << ")";
        throw ValidationError(os.str());
    }
    if (!(fs_ > 0.0) || !std::isfinite(fs_)) {
        throw ValidationError("sampling frequency must be finite and > 0");
    }
    for (const auto& a : weights_) {
        if (std::abs(a) == 0.0 || !std::isfinite(std::abs(a))) {
            throw ValidationError("weights must be finite and non-zero");
        }
    }
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        for (std::size_t j = i + 1; j < nodes_.size(); ++j) {
            if (nodes_[i].z() == nodes_[j].z()) {
                throw ValidationError("nodes must be pairwise distinct");
            }
        }
    }
}

ComplexVector SignalModel::node_values() const
{
    ComplexVector z(order());
    for (Index k = 0; k < order(); ++k) {
        z(k) = nodes_[static_cast<std::size_t>(k)].z();
    }
    return z;
}

ComplexVector SignalModel::weight_values() const
{
    return Eigen::Map<const ComplexVector>(weights_.data(), order());
}

std::vector<Real> SignalModel::frequencies() const
{
    std::vector<Real> f;
    f.reserve(nodes_.size());
    for (const auto& n : nodes_) {
        f.push_back(n.frequency(fs_));
    }
    return f;
}

Real SignalModel::alpha_min() const
{
    return std::abs(*std::ranges::min_element(
        weights_, {}, [](const Complex& a) { return std::abs(a); }));
}

Real SignalModel::alpha_max() const
{
    return std::abs(*std::ranges::max_element(
        weights_, {}, [](const Complex& a) { return std::abs(a); }));
}

Real SignalModel::a_min() const
{
    return std::ranges::min_element(nodes_, {}, &Node::modulus)->modulus();
}

Real SignalModel::d_max() const
{
    return std::ranges::max_element(nodes_, {}, &Node::damping)->damping();
}

SignalModel SignalModel::scaled_weights(Complex factor) const
{
    auto w = weights_;
    for (auto& a : w) {
        a *= factor;
    }
    return SignalModel(nodes_, std::move(w), num_samples_, fs_);
}

ComplexVector synthesize(const SignalModel& model)
{
    const Index N = model.num_samples();
    ComplexVector x = ComplexVector::Zero(N);
    for (Index k = 0; k < model.order(); ++k) {
        const Complex z = model.nodes()[static_cast<std::size_t>(k)].z();
        Complex term = model.weights()[static_cast<std::size_t>(k)];
        for (Index n = 0; n < N; ++n) {
            x(n) += term;
            term *= z;
        }
    }
    return x;
}

MeasurementVector inject_noise(const ComplexVector& clean, Real noise_energy, std::uint64_t seed)
{
    if (!(noise_energy >= 0.0) || !std::isfinite(noise_energy)) {
        throw ValidationError("noise energy must be finite and >= 0");
    }
    MeasurementVector mv;
    mv.clean = clean;
    mv.noise = ComplexVector::Zero(clean.size());
    if (noise_energy > 0.0 && clean.size() > 0) {
        std::mt19937_64 gen(seed);
        std::uniform_real_distribution<Real> uniform(-1.0, 1.0);
        for (Index n = 0; n < clean.size(); ++n) {
            const Real re = uniform(gen);
            const Real im = uniform(gen);
            mv.noise(n) = Complex(re, im);
        }
        const Real norm = mv.noise.norm();
        if (norm == 0.0) {
            throw ComputationError("degenerate noise draw");
        }
        mv.noise *= noise_energy / norm;
    }
    mv.samples = mv.clean + mv.noise;
    return mv;
}

Real snr(const MeasurementVector& mv)
{
    const Real e2 = mv.noise.squaredNorm();
    if (e2 == 0.0) {
        return kInfinity;
    }
    return mv.clean.squaredNorm() / e2;
}

} // namespace cisoid
