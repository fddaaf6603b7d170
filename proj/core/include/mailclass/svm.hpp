// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mailclass Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "mailclass/features.hpp"

namespace mailclass::svm {

enum class KernelKind { Linear, Polynomial, Rbf, Sigmoid };

struct KernelParams {
    double gamma = 1.0;
    double r = 0.0;
    int degree = 3;
};

/// LINEAR x.y, POLYNOMIAL (g x.y + r)^d, RBF exp(-g |x-y|^2), SIGMOID tanh(g x.y + r).
/// Throws ConfigError on a dimension mismatch, on gamma <= 0 for POLYNOMIAL/RBF
/// and on degree < 1 for POLYNOMIAL.
double kernel_eval(KernelKind kind, const KernelParams& params, std::span<const double> x,
                   std::span<const double> y);

struct TrainConfig {
    double c = 1.0;
    double tolerance = 1e-4;
    int max_epochs = 200;
    std::uint64_t seed = 42;  // recorded for reproducibility; the solver itself is deterministic

    void validate() const;
};

struct ObjectiveCheckpoint {
    std::size_t iteration = 0;
    double primal = 0.0;       // at the optimal bias for the current w
    double best_primal = 0.0;  // best-so-far primal
    double dual = 0.0;
};

struct BinarySvmModel {
    std::vector<double> w;
    double b = 0.0;
    double objective = 0.0;  // 1/2 |w|^2 + C sum hinge
    double dual_objective = 0.0;
    bool converged = false;
    std::size_t iterations = 0;
    std::vector<ObjectiveCheckpoint> history;
};

/// Inner products x_i . x_j over one training set. Shared by the binary
/// subproblems of a one-vs-rest fit since their Gram matrices differ only by
/// label signs.
class GramMatrix {
public:
    explicit GramMatrix(std::span<const features::DocumentVector> xs);

    std::size_t size() const { return n_; }
    double at(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
    std::span<const double> row(std::size_t i) const { return {values_.data() + i * n_, n_}; }

private:
    std::size_t n_ = 0;
    std::vector<double> values_;
};

/// Soft-margin linear SVM, minimizing 1/2 |w|^2 + C sum max(0, 1 - y_i (w.x_i + b))
/// with an unregularized bias.
///
/// Solver: SMO on the dual with second-order working-set selection, w kept
/// explicitly. Every `epoch` (n updates) and at KKT convergence the optimal
/// bias for the current w is found exactly, and the run stops once the duality
/// gap is at most tolerance * (1 + dual), which bounds the primal suboptimality
/// by tolerance * (1 + optimum). Hitting max_epochs * n updates returns the best
/// iterate seen with converged = false.
///
/// Throws DataError unless |xs| = |ys| >= 2 and both labels occur.
BinarySvmModel train_binary(std::span<const features::DocumentVector> xs, std::span<const int> ys,
                            const TrainConfig& config);
BinarySvmModel train_binary(std::span<const features::DocumentVector> xs, std::span<const int> ys,
                            const TrainConfig& config, const GramMatrix& gram);

/// w.x + b. Throws ConfigError when x indexes past w.
double decision_value(const BinarySvmModel& model, const features::DocumentVector& x);
double decision_value(const BinarySvmModel& model, std::span<const double> x);

/// 1/2 |w|^2 + C sum max(0, 1 - y_i (w.x_i + b)).
double primal_objective(std::span<const double> w, double b, std::span<const features::DocumentVector> xs,
                        std::span<const int> ys, double c);

struct OvrSvmModel {
    std::vector<std::string> classes;  // lexicographic
    std::vector<BinarySvmModel> models;
    std::size_t dimension = 0;
};

/// One binary model per class (class vs rest). Throws DataError with fewer than two classes.
OvrSvmModel train_ovr(std::span<const features::DocumentVector> xs, std::span<const std::string> labels,
                      const TrainConfig& config);

std::vector<double> decision_values(const OvrSvmModel& model, const features::DocumentVector& x);

/// Argmax of decision values; ties go to the lowest class index.
std::size_t argmax_lowest(std::span<const double> values);
std::size_t predict_index(const OvrSvmModel& model, const features::DocumentVector& x);
const std::string& predict(const OvrSvmModel& model, const features::DocumentVector& x);

/// Class order, per-class w (sparse above 256 dimensions), b, objective, convergence flag.
std::string to_json(const OvrSvmModel& model);

}  // namespace mailclass::svm
