// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mailclass Authors

#include "mailclass/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <set>

#include "json.hpp"
#include "mailclass/error.hpp"

namespace mailclass::svm {

namespace {

constexpr double kTau = 1e-12;
constexpr std::size_t kMaxGramSize = 20000;

double dot(std::span<const double> x, std::span<const double> y) {
    double sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] * y[i];
    return sum;
}

void check_inputs(std::span<const features::DocumentVector> xs, std::span<const int> ys) {
    if (xs.size() != ys.size()) throw DataError("svm: inputs and labels differ in length");
    if (xs.size() < 2) throw DataError("svm: at least two training examples are required");
    bool has_pos = false;
    bool has_neg = false;
    for (const int y : ys) {
        if (y == 1) {
            has_pos = true;
        } else if (y == -1) {
            has_neg = true;
        } else {
            throw DataError("svm: labels must be +1 or -1");
        }
    }
    if (!has_pos || !has_neg) throw DataError("svm: both labels must be present");
    for (const auto& x : xs) {
        if (x.dimension != xs.front().dimension) throw DataError("svm: inputs use different vocabularies");
    }
}

// Interval of biases minimizing sum_i max(0, 1 - y_i (s_i + b)) for fixed scores s.
// Each breakpoint raises the slope by one, starting from -#positives, so the
// flat bottom lies between the P-th and (P+1)-th smallest breakpoints.
std::pair<double, double> optimal_bias_interval(std::span<const double> scores, std::span<const int> ys) {
    std::vector<double> breakpoints(scores.size());
    std::size_t positives = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (ys[i] > 0) ++positives;
        breakpoints[i] = static_cast<double>(ys[i]) - scores[i];
    }
    auto nth = breakpoints.begin() + static_cast<std::ptrdiff_t>(positives);
    std::nth_element(breakpoints.begin(), nth, breakpoints.end());
    const double hi = *nth;
    const double lo = *std::max_element(breakpoints.begin(), nth);
    return {lo, hi};
}

double hinge_sum(std::span<const double> scores, std::span<const int> ys, double b) {
    double sum = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        sum += std::max(0.0, 1.0 - static_cast<double>(ys[i]) * (scores[i] + b));
    }
    return sum;
}

class SmoSolver {
public:
    SmoSolver(std::span<const int> ys, const TrainConfig& config, const GramMatrix& gram)
        : ys_(ys), c_(config.c), tolerance_(config.tolerance), gram_(gram), n_(ys.size()),
          alpha_(n_, 0.0), grad_(n_, -1.0), scores_(n_, 0.0) {}

    struct Snapshot {
        std::vector<double> alpha;
        double b = 0.0;
        double primal = std::numeric_limits<double>::infinity();
        double dual = 0.0;
    };

    void run(std::size_t max_iterations, BinarySvmModel& model) {
        std::size_t iteration = 0;
        bool converged = false;
        while (true) {
            const auto pair = select_working_set();
            const bool kkt_met = !pair || violation_ < tolerance_;
            const bool epoch_end = iteration > 0 && iteration % n_ == 0;
            if (kkt_met || epoch_end || iteration >= max_iterations) {
                const auto point = evaluate();
                converged = point.gap_ok;
                const bool stop = converged || !pair || iteration >= max_iterations;
                if (epoch_end || stop) model.history.push_back({iteration, point.primal, best_.primal, point.dual});
                if (stop) break;
            }
            update(pair->first, pair->second);
            ++iteration;
        }
        model.converged = converged;
        model.iterations = iteration;
    }

    const Snapshot& best() const { return best_; }

private:
    bool in_up(std::size_t t) const { return ys_[t] > 0 ? alpha_[t] < c_ : alpha_[t] > 0.0; }
    bool in_low(std::size_t t) const { return ys_[t] > 0 ? alpha_[t] > 0.0 : alpha_[t] < c_; }

    // Second-order working set selection; sets violation_ = m(alpha) - M(alpha).
    std::optional<std::pair<std::size_t, std::size_t>> select_working_set() {
        double gmax = -std::numeric_limits<double>::infinity();
        std::size_t i = n_;
        for (std::size_t t = 0; t < n_; ++t) {
            if (!in_up(t)) continue;
            const double v = -ys_[t] * grad_[t];
            if (v >= gmax) {
                gmax = v;
                i = t;
            }
        }
        double gmax2 = -std::numeric_limits<double>::infinity();
        std::size_t j = n_;
        double best_obj = std::numeric_limits<double>::infinity();
        if (i != n_) {
            const auto row_i = gram_.row(i);
            const double kii = row_i[i];
            for (std::size_t t = 0; t < n_; ++t) {
                if (!in_low(t)) continue;
                const double v = ys_[t] * grad_[t];
                gmax2 = std::max(gmax2, v);
                const double diff = gmax + v;
                if (diff <= 0.0) continue;
                double quad = kii + gram_.at(t, t) - 2.0 * row_i[t];
                if (quad <= 0.0) quad = kTau;
                const double obj = -(diff * diff) / quad;
                if (obj <= best_obj) {
                    best_obj = obj;
                    j = t;
                }
            }
        }
        violation_ = gmax + gmax2;
        if (i == n_ || j == n_) {
            violation_ = std::max(violation_, 0.0);
            return std::nullopt;
        }
        return std::make_pair(i, j);
    }

    void update(std::size_t i, std::size_t j) {
        const double old_i = alpha_[i];
        const double old_j = alpha_[j];
        const auto row_i = gram_.row(i);
        const auto row_j = gram_.row(j);
        double quad = row_i[i] + row_j[j] - 2.0 * row_i[j];
        if (quad <= 0.0) quad = kTau;
        double& ai = alpha_[i];
        double& aj = alpha_[j];
        if (ys_[i] != ys_[j]) {
            const double delta = (-grad_[i] - grad_[j]) / quad;
            const double diff = ai - aj;
            ai += delta;
            aj += delta;
            if (diff > 0.0) {
                if (aj < 0.0) {
                    aj = 0.0;
                    ai = diff;
                }
            } else if (ai < 0.0) {
                ai = 0.0;
                aj = -diff;
            }
            if (diff > 0.0) {
                if (ai > c_) {
                    ai = c_;
                    aj = c_ - diff;
                }
            } else if (aj > c_) {
                aj = c_;
                ai = c_ + diff;
            }
        } else {
            const double delta = (grad_[i] - grad_[j]) / quad;
            const double sum = ai + aj;
            ai -= delta;
            aj += delta;
            if (sum > c_) {
                if (ai > c_) {
                    ai = c_;
                    aj = sum - c_;
                }
                if (aj > c_) {
                    aj = c_;
                    ai = sum - c_;
                }
            } else {
                if (aj < 0.0) {
                    aj = 0.0;
                    ai = sum;
                }
                if (ai < 0.0) {
                    ai = 0.0;
                    aj = sum;
                }
            }
        }
        const double di = (ai - old_i) * ys_[i];
        const double dj = (aj - old_j) * ys_[j];
        for (std::size_t k = 0; k < n_; ++k) grad_[k] += ys_[k] * (row_i[k] * di + row_j[k] * dj);
    }

    // Bias from the free multipliers, or the midpoint of the feasible range.
    double smo_bias() const {
        double sum = 0.0;
        std::size_t free = 0;
        double ub = std::numeric_limits<double>::infinity();
        double lb = -std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < n_; ++t) {
            const double yg = ys_[t] * grad_[t];
            const bool at_upper = alpha_[t] >= c_;
            const bool at_lower = alpha_[t] <= 0.0;
            if (at_upper) {
                if (ys_[t] == -1) ub = std::min(ub, yg); else lb = std::max(lb, yg);
            } else if (at_lower) {
                if (ys_[t] == 1) ub = std::min(ub, yg); else lb = std::max(lb, yg);
            } else {
                ++free;
                sum += yg;
            }
        }
        const double rho = free > 0 ? sum / static_cast<double>(free) : (ub + lb) / 2.0;
        return std::isfinite(rho) ? -rho : 0.0;
    }

    struct Evaluation {
        double primal = 0.0;
        double dual = 0.0;
        bool gap_ok = false;
    };

    // Objectives at the current iterate with the bias chosen optimally for the
    // current w; keeps the best iterate seen.
    Evaluation evaluate() {
        double w_sq = 0.0;
        double alpha_sum = 0.0;
        for (std::size_t t = 0; t < n_; ++t) {
            scores_[t] = ys_[t] * (grad_[t] + 1.0);  // w . x_t
            w_sq += alpha_[t] * (grad_[t] + 1.0);
            alpha_sum += alpha_[t];
        }
        w_sq = std::max(w_sq, 0.0);
        const auto [lo, hi] = optimal_bias_interval(scores_, ys_);
        const double b = std::clamp(smo_bias(), lo, hi);
        Evaluation point;
        point.primal = 0.5 * w_sq + c_ * hinge_sum(scores_, ys_, b);
        point.dual = alpha_sum - 0.5 * w_sq;
        point.gap_ok = point.primal - point.dual <= tolerance_ * (1.0 + std::max(point.dual, 0.0));
        if (point.primal < best_.primal) {
            best_.alpha = alpha_;
            best_.b = b;
            best_.primal = point.primal;
            best_.dual = point.dual;
        }
        return point;
    }

    std::span<const int> ys_;
    double c_;
    double tolerance_;
    const GramMatrix& gram_;
    std::size_t n_;
    std::vector<double> alpha_;
    std::vector<double> grad_;  // Q alpha - 1
    std::vector<double> scores_;
    double violation_ = 0.0;
    Snapshot best_;
};

}  // namespace

double kernel_eval(KernelKind kind, const KernelParams& params, std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw ConfigError("kernel: vectors differ in dimension");
    switch (kind) {
        case KernelKind::Linear:
            return dot(x, y);
        case KernelKind::Polynomial:
            if (params.gamma <= 0.0) throw ConfigError("kernel: polynomial kernel requires gamma > 0");
            if (params.degree < 1) throw ConfigError("kernel: polynomial kernel requires degree >= 1");
            return std::pow(params.gamma * dot(x, y) + params.r, params.degree);
        case KernelKind::Rbf: {
            if (params.gamma <= 0.0) throw ConfigError("kernel: RBF kernel requires gamma > 0");
            double dist_sq = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) dist_sq += (x[i] - y[i]) * (x[i] - y[i]);
            return std::exp(-params.gamma * dist_sq);
        }
        case KernelKind::Sigmoid:
            return std::tanh(params.gamma * dot(x, y) + params.r);
    }
    throw ConfigError("kernel: unknown kind");
}

void TrainConfig::validate() const {
    if (!(c > 0.0) || !std::isfinite(c)) throw ConfigError("svm: C must be a positive finite number");
    if (!(tolerance > 0.0)) throw ConfigError("svm: tolerance must be positive");
    if (max_epochs < 1) throw ConfigError("svm: max_epochs must be at least 1");
}

GramMatrix::GramMatrix(std::span<const features::DocumentVector> xs) : n_(xs.size()) {
    if (n_ > kMaxGramSize) {
        throw DataError("svm: " + std::to_string(n_) + " training examples exceed the supported " +
                        std::to_string(kMaxGramSize));
    }
    values_.assign(n_ * n_, 0.0);
    for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = i; j < n_; ++j) {
            const double k = xs[i].dot(xs[j]);
            values_[i * n_ + j] = k;
            values_[j * n_ + i] = k;
        }
    }
}

double primal_objective(std::span<const double> w, double b, std::span<const features::DocumentVector> xs,
                        std::span<const int> ys, double c) {
    std::vector<double> scores(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) scores[i] = xs[i].dot(w);
    return 0.5 * dot(w, w) + c * hinge_sum(scores, ys, b);
}

BinarySvmModel train_binary(std::span<const features::DocumentVector> xs, std::span<const int> ys,
                            const TrainConfig& config) {
    check_inputs(xs, ys);
    const GramMatrix gram(xs);
    return train_binary(xs, ys, config, gram);
}

BinarySvmModel train_binary(std::span<const features::DocumentVector> xs, std::span<const int> ys,
                            const TrainConfig& config, const GramMatrix& gram) {
    config.validate();
    check_inputs(xs, ys);
    if (gram.size() != xs.size()) throw ConfigError("svm: Gram matrix does not match the training set");

    BinarySvmModel model;
    SmoSolver solver(ys, config, gram);
    solver.run(static_cast<std::size_t>(config.max_epochs) * xs.size(), model);

    const auto& best = solver.best();
    model.w.assign(xs.front().dimension, 0.0);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (best.alpha[i] == 0.0) continue;
        const double coef = best.alpha[i] * ys[i];
        for (const auto& [index, weight] : xs[i].entries) model.w[index] += coef * weight;
    }
    model.b = best.b;
    model.objective = best.primal;
    model.dual_objective = best.dual;
    return model;
}

double decision_value(const BinarySvmModel& model, const features::DocumentVector& x) {
    if (x.dimension != model.w.size()) throw ConfigError("svm: input dimension does not match the model");
    return x.dot(model.w) + model.b;
}

double decision_value(const BinarySvmModel& model, std::span<const double> x) {
    if (x.size() != model.w.size()) throw ConfigError("svm: input dimension does not match the model");
    return dot(model.w, x) + model.b;
}

OvrSvmModel train_ovr(std::span<const features::DocumentVector> xs, std::span<const std::string> labels,
                      const TrainConfig& config) {
    config.validate();
    if (xs.size() != labels.size()) throw DataError("svm: inputs and labels differ in length");
    const std::set<std::string> present(labels.begin(), labels.end());
    if (present.size() < 2) throw DataError("svm: one-vs-rest needs at least two classes");

    OvrSvmModel model;
    model.classes.assign(present.begin(), present.end());
    model.dimension = xs.empty() ? 0 : xs.front().dimension;
    const GramMatrix gram(xs);
    std::vector<int> ys(xs.size());
    for (const auto& cls : model.classes) {
        for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = labels[i] == cls ? 1 : -1;
        model.models.push_back(train_binary(xs, ys, config, gram));
    }
    return model;
}

std::vector<double> decision_values(const OvrSvmModel& model, const features::DocumentVector& x) {
    std::vector<double> values;
    values.reserve(model.models.size());
    for (const auto& binary : model.models) values.push_back(decision_value(binary, x));
    return values;
}

std::size_t argmax_lowest(std::span<const double> values) {
    if (values.empty()) throw ConfigError("argmax of an empty sequence");
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[best]) best = i;
    }
    return best;
}

std::size_t predict_index(const OvrSvmModel& model, const features::DocumentVector& x) {
    return argmax_lowest(decision_values(model, x));
}

const std::string& predict(const OvrSvmModel& model, const features::DocumentVector& x) {
    return model.classes[predict_index(model, x)];
}

std::string to_json(const OvrSvmModel& model) {
    constexpr std::size_t kDenseLimit = 256;
    nlohmann::ordered_json doc;
    doc["type"] = "one_vs_rest_linear_svm";
    doc["dimension"] = model.dimension;
    doc["classes"] = model.classes;
    auto models = nlohmann::ordered_json::array();
    for (std::size_t c = 0; c < model.models.size(); ++c) {
        const auto& binary = model.models[c];
        nlohmann::ordered_json entry;
        entry["class"] = model.classes[c];
        if (binary.w.size() <= kDenseLimit) {
            entry["w"] = binary.w;
        } else {
            auto sparse = nlohmann::ordered_json::array();
            for (std::size_t i = 0; i < binary.w.size(); ++i) {
                if (binary.w[i] != 0.0) sparse.push_back({i, binary.w[i]});
            }
            entry["w_sparse"] = std::move(sparse);
        }
        entry["b"] = binary.b;
        entry["objective"] = binary.objective;
        entry["converged"] = binary.converged;
        entry["iterations"] = binary.iterations;
        models.push_back(std::move(entry));
    }
    doc["models"] = std::move(models);
    return doc.dump(2);
}

}  // namespace mailclass::svm
