#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace eventseer {

// Dense row-major matrix; one row per window, width * f columns.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double* row(std::size_t i) { return data.data() + i * cols; }
    const double* row(std::size_t i) const { return data.data() + i * cols; }
    double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

struct FeatureMatrix {
    Matrix x;
    std::vector<double> y;  // op targets in [0, 1]
};

// Per-feature standardization statistics, frozen on the train split and
// reused everywhere else. Zero-variance features keep std 1 (pass-through).
struct ScalerStats {
    std::vector<double> mean;
    std::vector<double> std_dev;
};

ScalerStats standardize_fit(const Matrix& rows);
Matrix standardize_apply(const ScalerStats& stats, const Matrix& rows);

struct FfnConfig {
    std::vector<int> hidden_layers{20, 20};
    std::string activation = "relu";  // hidden nonlinearity: relu | tanh
    int epochs = 100;
    int batch_size = 256;
    double learning_rate = 1e-3;
    std::uint64_t seed = 0;
    int early_stop_patience = 10;
};

struct TrainReport {
    std::vector<double> train_loss;  // full-pass MSE after each epoch
    std::vector<double> val_loss;
    std::size_t best_epoch = 0;      // argmin of val_loss (first occurrence)
};

// Feed-forward net with a logistic output unit, so predictions are in [0, 1]
// structurally. Zero hidden layers gives a linear-logistic model.
class FfnModel {
public:
    FfnModel() = default;
    FfnModel(std::size_t input_dim, const FfnConfig& config);  // seeded init

    std::size_t input_dim() const { return sizes_.empty() ? 0 : sizes_.front(); }
    const std::vector<std::size_t>& layer_sizes() const { return sizes_; }
    const FfnConfig& config() const { return config_; }

    std::vector<double> predict(const Matrix& rows) const;
    double predict_row(const double* x) const;

    double loss(const Matrix& x, const std::vector<double>& y) const;
    // Full-batch MSE and its analytic gradient with respect to parameters()
    // order; used by training and by the finite-difference checks.
    double loss_and_gradient(const Matrix& x, const std::vector<double>& y,
                             std::vector<double>& grad) const;

    // Flattened parameters: per layer, weights row-major (out x in), then
    // biases. This order is also the persistence payload order.
    std::vector<double> parameters() const;
    void set_parameters(const std::vector<double>& flat);
    std::size_t parameter_count() const;

private:
    friend FfnModel fit_ffn(const FeatureMatrix&, const FeatureMatrix&, const FfnConfig&,
                            TrainReport*);

    void forward_row(const double* x, std::vector<std::vector<double>>& pre,
                     std::vector<std::vector<double>>& act) const;
    double hidden_act(double z) const;
    double hidden_act_grad(double z) const;

    FfnConfig config_;
    std::vector<std::size_t> sizes_;        // input, hidden..., 1
    std::vector<std::vector<double>> w_;    // per layer, out x in row-major
    std::vector<std::vector<double>> b_;
};

// Mini-batch gradient descent with adaptive-moment updates (0.9 / 0.999,
// eps 1e-8) minimizing MSE; deterministic for a given seed. Early stopping
// restores the best-validation-epoch parameters. Throws TrainingError when
// the loss goes non-finite.
FfnModel fit_ffn(const FeatureMatrix& train, const FeatureMatrix& val, const FfnConfig& config,
                 TrainReport* report = nullptr);

struct RidgeModel {
    std::vector<double> weights;
    double intercept = 0.0;

    std::size_t input_dim() const { return weights.size(); }
    std::vector<double> predict(const Matrix& rows) const;  // clamped to [0, 1]
    double predict_row(const double* x) const;
};

// Exact solve of the regularized normal equations (intercept unpenalized).
// Throws TrainingError on a singular system, advising lambda > 0.
RidgeModel fit_ridge(const Matrix& x, const std::vector<double>& y, double lambda);

}  // namespace eventseer
