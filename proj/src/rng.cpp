#include "notelab/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace notelab {

double Rng::normal(double mean, double stddev) {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mean + stddev * r * std::cos(2.0 * std::numbers::pi * u2);
}

std::size_t Rng::categorical(const std::vector<double>& weights) {
    if (weights.empty()) throw std::invalid_argument("categorical: empty weights");
    double total = 0.0;
    for (double w : weights) total += w;
    if (total <= 0.0) throw std::invalid_argument("categorical: non-positive total weight");
    double x = uniform() * total;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        x -= weights[i];
        if (x < 0.0) return i;
    }
    return weights.size() - 1;
}

}  // namespace notelab
