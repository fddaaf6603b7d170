// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The mailclass Authors

#include <gtest/gtest.h>

#include <cmath>

#include "json.hpp"

#include "mailclass/error.hpp"
#include "mailclass/features.hpp"
#include "mailclass/rng.hpp"
#include "mailclass/svm.hpp"

using namespace mailclass;
using features::DocumentVector;

namespace {

DocumentVector dense(std::initializer_list<double> values) {
    DocumentVector v;
    v.dimension = values.size();
    std::uint32_t i = 0;
    for (const double x : values) {
        if (x != 0.0) v.entries.emplace_back(i, x);
        ++i;
    }
    return v;
}

struct Instance {
    std::vector<DocumentVector> xs;
    std::vector<int> ys;
};

Instance two_points() { return {{dense({0, 0}), dense({2, 2})}, {-1, 1}}; }

// Overlapping 2-D instance; optima below were solved offline with an interior
// point QP solver at 1e-12 gap and recognized as exact fractions.
Instance overlapping() {
    return {{dense({0, 0}), dense({1, 0}), dense({0, 1}), dense({2, 2}), dense({3, 1}), dense({1, 1}),
             dense({2, 0.5}), dense({0.5, 2})},
            {-1, -1, -1, 1, 1, 1, -1, 1}};
}

Instance counts3() {
    return {{dense({2, 0, 1}), dense({3, 1, 0}), dense({0, 2, 2}), dense({1, 3, 0}), dense({0, 0, 4}),
             dense({2, 2, 2}), dense({1, 0, 0}), dense({0, 1, 3})},
            {1, 1, -1, -1, -1, 1, 1, -1}};
}

struct Optimum {
    double c;
    double objective;
    std::vector<double> w;
};

svm::TrainConfig tight(double c) {
    svm::TrainConfig config;
    config.c = c;
    config.tolerance = 1e-10;
    config.max_epochs = 100000;
    return config;
}

void expect_optimum(const Instance& inst, const Optimum& opt) {
    const auto model = svm::train_binary(inst.xs, inst.ys, tight(opt.c));
    EXPECT_TRUE(model.converged);
    EXPECT_NEAR(model.objective, opt.objective, 1e-9 * (1 + opt.objective));
    // strong convexity in w: 1/2 |w - w*|^2 <= objective gap
    for (std::size_t k = 0; k < opt.w.size(); ++k) EXPECT_NEAR(model.w[k], opt.w[k], 1e-4) << k;
    EXPECT_NEAR(svm::primal_objective(model.w, model.b, inst.xs, inst.ys, opt.c), model.objective, 1e-12);
}

}  // namespace

TEST(Kernel, HandEvaluatedValues) {
    const std::vector<double> x = {1, 2}, y = {3, 4};
    svm::KernelParams p;
    EXPECT_EQ(svm::kernel_eval(svm::KernelKind::Linear, p, x, y), 11.0);
    p.degree = 2;
    EXPECT_NEAR(svm::kernel_eval(svm::KernelKind::Polynomial, p, x, y), 121.0, 1e-12);
    p.gamma = 0.5;
    p.r = 1.0;
    p.degree = 3;
    EXPECT_NEAR(svm::kernel_eval(svm::KernelKind::Polynomial, p, x, y), std::pow(6.5, 3), 1e-12);
    EXPECT_NEAR(svm::kernel_eval(svm::KernelKind::Rbf, p, x, x), 1.0, 1e-12);
    EXPECT_NEAR(svm::kernel_eval(svm::KernelKind::Rbf, p, x, y), std::exp(-0.5 * 8.0), 1e-12);
    const std::vector<double> a = {1, 0}, b = {0, 1};
    svm::KernelParams s;
    EXPECT_NEAR(svm::kernel_eval(svm::KernelKind::Sigmoid, s, a, b), 0.0, 1e-12);
    EXPECT_NEAR(svm::kernel_eval(svm::KernelKind::Sigmoid, s, x, y), std::tanh(11.0), 1e-12);
}

TEST(Kernel, SideConditions) {
    const std::vector<double> x = {1, 2}, y = {3};
    svm::KernelParams p;
    EXPECT_THROW(svm::kernel_eval(svm::KernelKind::Linear, p, x, y), ConfigError);
    p.gamma = 0.0;
    EXPECT_THROW(svm::kernel_eval(svm::KernelKind::Rbf, p, x, x), ConfigError);
    EXPECT_THROW(svm::kernel_eval(svm::KernelKind::Polynomial, p, x, x), ConfigError);
}

TEST(KernelProperty, LinearScalingAndRbfBounds) {
    DeterministicRng rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> x(5), y(5);
        for (auto& v : x) v = rng.unit() * 4 - 2;
        for (auto& v : y) v = rng.unit() * 4 - 2;
        const double alpha = rng.unit() * 10 - 5;
        std::vector<double> ax = x;
        for (auto& v : ax) v *= alpha;
        svm::KernelParams p;
        p.gamma = 0.1 + rng.unit();
        const double base = svm::kernel_eval(svm::KernelKind::Linear, p, x, y);
        EXPECT_NEAR(svm::kernel_eval(svm::KernelKind::Linear, p, ax, y), alpha * base, 1e-9);
        const double k = svm::kernel_eval(svm::KernelKind::Rbf, p, x, y);
        EXPECT_GT(k, 0.0);
        EXPECT_LT(k, 1.0);
    }
}

TEST(TrainBinary, TwoPointMaxMargin) {
    const auto inst = two_points();
    svm::TrainConfig config;
    config.c = 1000;
    const auto model = svm::train_binary(inst.xs, inst.ys, config);
    EXPECT_NEAR(model.w[0], 0.5, 1e-2);
    EXPECT_NEAR(model.w[1], 0.5, 1e-2);
    EXPECT_NEAR(model.b, -1.0, 1e-2);
    EXPECT_NEAR(model.objective, 0.25, 0.0025);
    for (std::size_t i = 0; i < inst.xs.size(); ++i) {
        EXPECT_GE(inst.ys[i] * svm::decision_value(model, inst.xs[i]), 1 - 1e-3);
    }
    EXPECT_NEAR(svm::decision_value(model, inst.xs[1]), 1.0, 1e-2);
}

TEST(TrainBinary, OverlappingInstanceOptima) {
    expect_optimum(overlapping(), {0.5, 319.0 / 160.0, {0.45, 1.1}});
    expect_optimum(overlapping(), {1.0, 759.0 / 232.0, {13.0 / 29.0, 65.0 / 58.0}});
    expect_optimum(overlapping(), {10.0, 154.0 / 9.0, {2.0 / 3.0, 8.0 / 3.0}});
}

TEST(TrainBinary, CountDataOptimum) {
    expect_optimum(counts3(), {1.0, 220.0 / 153.0, {26.0 / 17.0, -2.0 / 3.0, -2.0 / 17.0}});
}

TEST(TrainBinary, XorNeedsSlack) {
    const Instance xor_points{{dense({0, 0}), dense({1, 1}), dense({1, 0}), dense({0, 1})}, {1, 1, -1, -1}};
    for (const double c : {0.1, 1.0, 100.0}) {
        const auto model = svm::train_binary(xor_points.xs, xor_points.ys, tight(c));
        double max_slack = 0.0;
        for (std::size_t i = 0; i < 4; ++i) {
            max_slack = std::max(max_slack, 1 - xor_points.ys[i] * svm::decision_value(model, xor_points.xs[i]));
        }
        EXPECT_GT(max_slack, 0.0);
        EXPECT_NEAR(model.objective, 4.0 * c, 1e-6 * (1 + 4.0 * c));  // w = 0 is optimal
    }
}

TEST(TrainBinary, SupportVectorsOnTheMarginAtLargeC) {
    const auto inst = overlapping();
    // drop the two overlapping points to make the instance separable
    Instance sep{{inst.xs[0], inst.xs[1], inst.xs[2], inst.xs[3], inst.xs[4], inst.xs[5]}, {-1, -1, -1, 1, 1, 1}};
    svm::TrainConfig config;
    config.c = 1000;
    const auto model = svm::train_binary(sep.xs, sep.ys, config);
    std::size_t on_margin = 0;
    for (std::size_t i = 0; i < sep.xs.size(); ++i) {
        const double m = sep.ys[i] * svm::decision_value(model, sep.xs[i]);
        EXPECT_GE(m, 1 - 1e-2);
        on_margin += std::abs(m - 1) <= 1e-2;
    }
    EXPECT_GE(on_margin, 2u);
}

TEST(TrainBinary, BestObjectiveNeverIncreases) {
    const auto inst = counts3();
    const auto model = svm::train_binary(inst.xs, inst.ys, tight(1.0));
    ASSERT_FALSE(model.history.empty());
    for (std::size_t i = 1; i < model.history.size(); ++i) {
        EXPECT_LE(model.history[i].best_primal, model.history[i - 1].best_primal + 1e-12);
        EXPECT_LE(model.history[i].dual, model.history[i].primal + 1e-9);  // weak duality
    }
    EXPECT_EQ(model.objective, model.history.back().best_primal);
}

TEST(TrainBinary, IterationCapReportsNonConvergence) {
    const auto inst = overlapping();
    svm::TrainConfig config;
    config.c = 10;
    config.tolerance = 1e-15;
    config.max_epochs = 1;
    const auto model = svm::train_binary(inst.xs, inst.ys, config);
    EXPECT_FALSE(model.converged);
    EXPECT_TRUE(std::isfinite(model.objective));
    EXPECT_GE(model.objective, 154.0 / 9.0 - 1e-9);
}

TEST(TrainBinary, Deterministic) {
    const auto inst = counts3();
    const auto a = svm::train_binary(inst.xs, inst.ys, svm::TrainConfig{});
    const auto b = svm::train_binary(inst.xs, inst.ys, svm::TrainConfig{});
    EXPECT_EQ(a.w, b.w);
    EXPECT_EQ(a.b, b.b);
}

TEST(TrainBinary, InvalidInputs) {
    const auto inst = two_points();
    const std::vector<int> same = {1, 1};
    EXPECT_THROW(svm::train_binary(inst.xs, same, svm::TrainConfig{}), DataError);
    const std::vector<int> wrong = {1, 0};
    EXPECT_THROW(svm::train_binary(inst.xs, wrong, svm::TrainConfig{}), DataError);
    svm::TrainConfig bad;
    bad.c = 0;
    EXPECT_THROW(bad.validate(), ConfigError);
    bad = {};
    bad.tolerance = -1;
    EXPECT_THROW(bad.validate(), ConfigError);
}

TEST(DecisionValue, HandValues) {
    svm::BinarySvmModel model;
    model.w = {0.5, 0.5};
    model.b = -1;
    EXPECT_EQ(svm::decision_value(model, dense({4, 4})), 3.0);
    EXPECT_EQ(svm::decision_value(model, DocumentVector{2, {}}), -1.0);
    EXPECT_THROW(svm::decision_value(model, dense({1, 1, 1})), ConfigError);
}

TEST(Ovr, OneModelPerClassAndTwoClassSymmetry) {
    const auto inst = overlapping();
    std::vector<std::string> labels;
    for (const int y : inst.ys) labels.push_back(y > 0 ? "pos" : "neg");
    const auto model = svm::train_ovr(inst.xs, labels, tight(1.0));
    ASSERT_EQ(model.classes, (std::vector<std::string>{"neg", "pos"}));
    ASSERT_EQ(model.models.size(), 2u);
    for (std::size_t k = 0; k < 2; ++k) EXPECT_NEAR(model.models[0].w[k], -model.models[1].w[k], 1e-4);
    for (const auto& x : inst.xs) {
        const auto values = svm::decision_values(model, x);
        EXPECT_NEAR(values[0], -values[1], 1e-3);
    }
}

TEST(Ovr, ThreeClassesAndSeparatedPointsPredictThemselves) {
    const std::vector<DocumentVector> xs = {dense({3, 0, 0}), dense({4, 0, 0}), dense({0, 3, 0}),
                                            dense({0, 4, 0}), dense({0, 0, 3}), dense({0, 0, 4})};
    const std::vector<std::string> labels = {"a", "a", "b", "b", "c", "c"};
    const auto model = svm::train_ovr(xs, labels, svm::TrainConfig{});
    EXPECT_EQ(model.models.size(), 3u);
    for (std::size_t i = 0; i < xs.size(); ++i) EXPECT_EQ(svm::predict(model, xs[i]), labels[i]);
    EXPECT_THROW(svm::train_ovr(xs, std::vector<std::string>(6, "a"), svm::TrainConfig{}), DataError);
}

TEST(Ovr, ArgmaxTiesGoLow) {
    EXPECT_EQ(svm::argmax_lowest(std::vector<double>{2.0, -1.0}), 0u);
    EXPECT_EQ(svm::argmax_lowest(std::vector<double>{0.5, 0.5}), 0u);
    EXPECT_EQ(svm::argmax_lowest(std::vector<double>{0.1, 0.5, 0.5}), 1u);
}

TEST(Ovr, ZeroWeightFeatureDoesNotChangePredictions) {
    const auto inst = counts3();
    std::vector<std::string> labels = {"a", "a", "b", "b", "c", "a", "c", "b"};
    auto model = svm::train_ovr(inst.xs, labels, svm::TrainConfig{});
    std::vector<std::string> before;
    for (const auto& x : inst.xs) before.push_back(svm::predict(model, x));
    for (auto& m : model.models) m.w.push_back(0.0);
    model.dimension += 1;
    for (std::size_t i = 0; i < inst.xs.size(); ++i) {
        auto x = inst.xs[i];
        x.dimension += 1;
        x.entries.emplace_back(3, 7.0);
        EXPECT_EQ(svm::predict(model, x), before[i]);
    }
}

TEST(Ovr, JsonDump) {
    const auto inst = overlapping();
    std::vector<std::string> labels;
    for (const int y : inst.ys) labels.push_back(y > 0 ? "pos" : "neg");
    const auto doc = nlohmann::json::parse(svm::to_json(svm::train_ovr(inst.xs, labels, svm::TrainConfig{})));
    EXPECT_EQ(doc["classes"][1], "pos");
    EXPECT_EQ(doc["models"].size(), 2u);
}
