#pragma once

#include "enrec/image.hpp"
#include "enrec/rng.hpp"

namespace enrec {

// Observation-generating noise z = Z(Ay, zeta). Intensity parameters are in
// [0,1] units; the usual 0..255 noise levels divide by 255 at the call site.
// A model carries its own rng state, so identical seed + parameters yield a
// bit-identical observation.
class NoiseModel {
public:
    enum class Kind { Gaussian, Laplace, SaltPepper, Poisson, Mixture };

    static NoiseModel gaussian(double sigma, uint64_t seed) {
        require(sigma >= 0, "gaussian noise: sigma must be nonnegative");
        return NoiseModel(Kind::Gaussian, sigma, seed);
    }
    // sigma is the Laplace scale parameter b (variance 2 b^2).
    static NoiseModel laplace(double sigma, uint64_t seed) {
        require(sigma >= 0, "laplace noise: scale must be nonnegative");
        return NoiseModel(Kind::Laplace, sigma, seed);
    }
    static NoiseModel salt_pepper(double fraction, uint64_t seed) {
        require(fraction >= 0.0 && fraction <= 1.0, "salt_pepper: fraction must be in [0,1]");
        return NoiseModel(Kind::SaltPepper, fraction, seed);
    }
    // z = Pois(peak * y) / peak.
    static NoiseModel poisson(double peak, uint64_t seed) {
        require(peak > 0, "poisson noise: peak must be positive");
        return NoiseModel(Kind::Poisson, peak, seed);
    }
    // 10% uniform in [-25,25]/255, 20% Gaussian sigma = 1/255,
    // 70% Gaussian sigma = sqrt(0.1)/255.
    static NoiseModel mixture(uint64_t seed) { return NoiseModel(Kind::Mixture, 0.0, seed); }

    Kind kind() const { return kind_; }
    double parameter() const { return param_; }
    uint64_t seed() const { return seed_; }

    Image corrupt(const Image& clean) {
        Rng rng(seed_);
        Image out = clean;
        switch (kind_) {
            case Kind::Gaussian:
                for (double& v : out.data) v += param_ * rng.normal();
                break;
            case Kind::Laplace:
                for (double& v : out.data) v += rng.laplace(param_);
                break;
            case Kind::SaltPepper:
                for (double& v : out.data)
                    if (rng.uniform() < param_) v = rng.uniform() < 0.5 ? 0.0 : 1.0;
                break;
            case Kind::Poisson:
                for (double& v : out.data)
                    v = rng.poisson(param_ * std::max(v, 0.0)) / param_;
                break;
            case Kind::Mixture:
                for (double& v : out.data) {
                    const double u = rng.uniform();
                    if (u < 0.1)
                        v += rng.uniform(-25.0 / 255.0, 25.0 / 255.0);
                    else if (u < 0.3)
                        v += (1.0 / 255.0) * rng.normal();
                    else
                        v += (std::sqrt(0.1) / 255.0) * rng.normal();
                }
                break;
        }
        return out;
    }

    std::string name() const {
        switch (kind_) {
            case Kind::Gaussian: return "gaussian";
            case Kind::Laplace: return "laplace";
            case Kind::SaltPepper: return "salt-pepper";
            case Kind::Poisson: return "poisson";
            case Kind::Mixture: return "mixture";
        }
        return "?";
    }

    static NoiseModel parse(const std::string& name, double param, uint64_t seed) {
        if (name == "gaussian") return gaussian(param, seed);
        if (name == "laplace") return laplace(param, seed);
        if (name == "salt-pepper") return salt_pepper(param, seed);
        if (name == "poisson") return poisson(param, seed);
        if (name == "mixture") return mixture(seed);
        throw ConfigError("unknown noise model: " + name);
    }

    void reseed(uint64_t seed) { seed_ = seed; }

private:
    NoiseModel(Kind k, double p, uint64_t seed) : kind_(k), param_(p), seed_(seed) {}
    Kind kind_;
    double param_;
    uint64_t seed_;
};

} // namespace enrec
