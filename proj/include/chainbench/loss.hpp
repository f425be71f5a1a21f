#pragma once

#include <functional>
#include <stdexcept>
#include <utility>

namespace chainbench {

// Regularity classes for losses over [0,1]:
//   Lipschitz1     |l(y) - l(y')| <= |y - y'|
//   SemiLipschitz  l(y + delta) >= l(y) - delta for delta >= 0
// (upward jumps to the right are free under SemiLipschitz).
enum class Regularity { Lipschitz1, SemiLipschitz };

// A per-round loss: an evaluator over action values in [0,1] with
// range in [0,1], plus its declared regularity.
class LossFunction {
public:
    LossFunction(std::function<double(double)> eval, Regularity tag)
        : eval_(std::move(eval)), tag_(tag) {
        if (!eval_) throw std::invalid_argument("LossFunction: missing evaluator");
    }

    double operator()(double y) const { return eval_(y); }
    Regularity regularity() const { return tag_; }

private:
    std::function<double(double)> eval_;
    Regularity tag_;
};

// Grid check of the declared regularity over all pairs of an equispaced
// grid with `resolution` points (resolution >= 2), up to `tolerance`.
bool verify_regularity(const LossFunction& loss, int resolution, double tolerance);

// The tolerance the rest of the project uses when it needs this check.
inline constexpr double kRegularityTolerance = 1e-12;

} // namespace chainbench
