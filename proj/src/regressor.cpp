#include "eventseer/regressor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "eventseer/errors.hpp"
#include "eventseer/rng.hpp"

namespace eventseer {

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

void validate(const FfnConfig& c) {
    for (int h : c.hidden_layers) {
        if (h < 1) throw ConfigError("hidden layer sizes must be >= 1");
    }
    if (c.epochs < 1) throw ConfigError("epochs must be >= 1");
    if (c.batch_size < 1) throw ConfigError("batch_size must be >= 1");
    if (!(c.learning_rate > 0.0)) throw ConfigError("learning_rate must be > 0");
    if (c.early_stop_patience < 0) throw ConfigError("early_stop_patience must be >= 0");
    if (c.activation != "relu" && c.activation != "tanh") {
        throw ConfigError("unknown activation '" + c.activation + "' (expected relu or tanh)");
    }
}

}  // namespace

ScalerStats standardize_fit(const Matrix& rows) {
    if (rows.rows == 0) throw DataError("cannot fit scaler statistics on an empty matrix");
    ScalerStats stats;
    stats.mean.assign(rows.cols, 0.0);
    stats.std_dev.assign(rows.cols, 0.0);
    const double n = static_cast<double>(rows.rows);
    for (std::size_t i = 0; i < rows.rows; ++i) {
        const double* r = rows.row(i);
        for (std::size_t j = 0; j < rows.cols; ++j) stats.mean[j] += r[j];
    }
    for (std::size_t j = 0; j < rows.cols; ++j) stats.mean[j] /= n;
    for (std::size_t i = 0; i < rows.rows; ++i) {
        const double* r = rows.row(i);
        for (std::size_t j = 0; j < rows.cols; ++j) {
            const double d = r[j] - stats.mean[j];
            stats.std_dev[j] += d * d;
        }
    }
    for (std::size_t j = 0; j < rows.cols; ++j) {
        stats.std_dev[j] = std::sqrt(stats.std_dev[j] / n);  // population sd
        if (stats.std_dev[j] == 0.0) stats.std_dev[j] = 1.0;
    }
    return stats;
}

Matrix standardize_apply(const ScalerStats& stats, const Matrix& rows) {
    if (rows.cols != stats.mean.size()) {
        throw DataError("scaler dimensionality mismatch: stats have " +
                        std::to_string(stats.mean.size()) + " features, rows have " +
                        std::to_string(rows.cols));
    }
    Matrix out(rows.rows, rows.cols);
    for (std::size_t i = 0; i < rows.rows; ++i) {
        const double* src = rows.row(i);
        double* dst = out.row(i);
        for (std::size_t j = 0; j < rows.cols; ++j) {
            dst[j] = (src[j] - stats.mean[j]) / stats.std_dev[j];
        }
    }
    return out;
}

FfnModel::FfnModel(std::size_t input_dim, const FfnConfig& config) : config_(config) {
    validate(config);
    if (input_dim == 0) throw ConfigError("FFN input dimensionality must be >= 1");
    sizes_.push_back(input_dim);
    for (int h : config.hidden_layers) sizes_.push_back(static_cast<std::size_t>(h));
    sizes_.push_back(1);

    DetRng rng(config.seed);
    w_.resize(sizes_.size() - 1);
    b_.resize(sizes_.size() - 1);
    for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
        const std::size_t fan_in = sizes_[l];
        const std::size_t fan_out = sizes_[l + 1];
        const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
        w_[l].resize(fan_out * fan_in);
        for (double& v : w_[l]) v = rng.uniform(-bound, bound);
        b_[l].assign(fan_out, 0.0);
    }
}

double FfnModel::hidden_act(double z) const {
    return config_.activation == "tanh" ? std::tanh(z) : (z > 0.0 ? z : 0.0);
}

double FfnModel::hidden_act_grad(double z) const {
    if (config_.activation == "tanh") {
        const double t = std::tanh(z);
        return 1.0 - t * t;
    }
    return z > 0.0 ? 1.0 : 0.0;
}

void FfnModel::forward_row(const double* x, std::vector<std::vector<double>>& pre,
                           std::vector<std::vector<double>>& act) const {
    const std::size_t layers = w_.size();
    pre.resize(layers);
    act.resize(layers);
    const double* in = x;
    std::size_t in_dim = sizes_[0];
    for (std::size_t l = 0; l < layers; ++l) {
        const std::size_t out_dim = sizes_[l + 1];
        pre[l].resize(out_dim);
        act[l].resize(out_dim);
        for (std::size_t o = 0; o < out_dim; ++o) {
            const double* wrow = w_[l].data() + o * in_dim;
            double z = b_[l][o];
            for (std::size_t k = 0; k < in_dim; ++k) z += wrow[k] * in[k];
            pre[l][o] = z;
            act[l][o] = (l + 1 == layers) ? sigmoid(z) : hidden_act(z);
        }
        in = act[l].data();
        in_dim = out_dim;
    }
}

double FfnModel::predict_row(const double* x) const {
    thread_local std::vector<std::vector<double>> pre, act;
    forward_row(x, pre, act);
    return act.back()[0];
}

std::vector<double> FfnModel::predict(const Matrix& rows) const {
    if (rows.cols != input_dim()) {
        throw DataError("FFN input dimensionality mismatch: model expects " +
                        std::to_string(input_dim()) + " features, rows have " +
                        std::to_string(rows.cols));
    }
    std::vector<double> out(rows.rows);
    std::vector<std::vector<double>> pre, act;
    for (std::size_t i = 0; i < rows.rows; ++i) {
        forward_row(rows.row(i), pre, act);
        out[i] = act.back()[0];
    }
    return out;
}

double FfnModel::loss(const Matrix& x, const std::vector<double>& y) const {
    const std::vector<double> pred = predict(x);
    double sum = 0.0;
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const double d = pred[i] - y[i];
        sum += d * d;
    }
    return sum / static_cast<double>(pred.size());
}

std::size_t FfnModel::parameter_count() const {
    std::size_t n = 0;
    for (std::size_t l = 0; l < w_.size(); ++l) n += w_[l].size() + b_[l].size();
    return n;
}

std::vector<double> FfnModel::parameters() const {
    std::vector<double> flat;
    flat.reserve(parameter_count());
    for (std::size_t l = 0; l < w_.size(); ++l) {
        flat.insert(flat.end(), w_[l].begin(), w_[l].end());
        flat.insert(flat.end(), b_[l].begin(), b_[l].end());
    }
    return flat;
}

void FfnModel::set_parameters(const std::vector<double>& flat) {
    if (flat.size() != parameter_count()) {
        throw DataError("parameter vector size mismatch: expected " +
                        std::to_string(parameter_count()) + ", got " + std::to_string(flat.size()));
    }
    std::size_t pos = 0;
    for (std::size_t l = 0; l < w_.size(); ++l) {
        std::copy(flat.begin() + pos, flat.begin() + pos + w_[l].size(), w_[l].begin());
        pos += w_[l].size();
        std::copy(flat.begin() + pos, flat.begin() + pos + b_[l].size(), b_[l].begin());
        pos += b_[l].size();
    }
}

double FfnModel::loss_and_gradient(const Matrix& x, const std::vector<double>& y,
                                   std::vector<double>& grad) const {
    if (x.rows == 0 || x.rows != y.size()) throw DataError("loss_and_gradient: bad batch shape");
    const std::size_t layers = w_.size();
    std::vector<std::vector<double>> gw(layers), gb(layers);
    for (std::size_t l = 0; l < layers; ++l) {
        gw[l].assign(w_[l].size(), 0.0);
        gb[l].assign(b_[l].size(), 0.0);
    }

    std::vector<std::vector<double>> pre, act, delta(layers);
    const double inv_n = 1.0 / static_cast<double>(x.rows);
    double loss_sum = 0.0;

    for (std::size_t i = 0; i < x.rows; ++i) {
        const double* in = x.row(i);
        forward_row(in, pre, act);
        const double p = act.back()[0];
        const double err = p - y[i];
        loss_sum += err * err;

        // output layer: d/dz of sigmoid composed with mean squared error
        delta[layers - 1].assign(1, 2.0 * err * inv_n * p * (1.0 - p));

        for (std::size_t l = layers; l-- > 0;) {
            const std::size_t out_dim = sizes_[l + 1];
            const std::size_t in_dim = sizes_[l];
            const double* below = (l == 0) ? in : act[l - 1].data();
            for (std::size_t o = 0; o < out_dim; ++o) {
                const double d = delta[l][o];
                double* gwrow = gw[l].data() + o * in_dim;
                for (std::size_t k = 0; k < in_dim; ++k) gwrow[k] += d * below[k];
                gb[l][o] += d;
            }
            if (l > 0) {
                delta[l - 1].assign(in_dim, 0.0);
                for (std::size_t o = 0; o < out_dim; ++o) {
                    const double d = delta[l][o];
                    const double* wrow = w_[l].data() + o * in_dim;
                    for (std::size_t k = 0; k < in_dim; ++k) delta[l - 1][k] += wrow[k] * d;
                }
                for (std::size_t k = 0; k < in_dim; ++k) {
                    delta[l - 1][k] *= hidden_act_grad(pre[l - 1][k]);
                }
            }
        }
    }

    grad.clear();
    grad.reserve(parameter_count());
    for (std::size_t l = 0; l < layers; ++l) {
        grad.insert(grad.end(), gw[l].begin(), gw[l].end());
        grad.insert(grad.end(), gb[l].begin(), gb[l].end());
    }
    return loss_sum * inv_n;
}

FfnModel fit_ffn(const FeatureMatrix& train, const FeatureMatrix& val, const FfnConfig& config,
                 TrainReport* report) {
    if (train.x.rows == 0 || val.x.rows == 0) throw DataError("fit_ffn: empty train or val split");
    if (train.x.rows != train.y.size() || val.x.rows != val.y.size()) {
        throw DataError("fit_ffn: row/target count mismatch");
    }

    FfnModel model(train.x.cols, config);
    DetRng rng(config.seed ^ 0x9e3779b97f4a7c15ULL);  // shuffling stream, separate from init

    const std::size_t layers = model.w_.size();
    std::vector<std::vector<double>> mw(layers), vw(layers), mb(layers), vb(layers);
    for (std::size_t l = 0; l < layers; ++l) {
        mw[l].assign(model.w_[l].size(), 0.0);
        vw[l].assign(model.w_[l].size(), 0.0);
        mb[l].assign(model.b_[l].size(), 0.0);
        vb[l].assign(model.b_[l].size(), 0.0);
    }

    constexpr double beta1 = 0.9, beta2 = 0.999, eps = 1e-8;
    long step = 0;

    std::vector<std::size_t> order(train.x.rows);
    std::iota(order.begin(), order.end(), 0);

    TrainReport rep;
    double best_val = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> best_w = model.w_, best_b = model.b_;

    std::vector<std::vector<double>> pre, act, delta(layers);
    std::vector<std::vector<double>> gw(layers), gb(layers);

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        rng.shuffle(order);
        const std::size_t bs = static_cast<std::size_t>(config.batch_size);
        for (std::size_t start = 0; start < order.size(); start += bs) {
            const std::size_t stop = std::min(order.size(), start + bs);
            const double inv_n = 1.0 / static_cast<double>(stop - start);
            for (std::size_t l = 0; l < layers; ++l) {
                gw[l].assign(model.w_[l].size(), 0.0);
                gb[l].assign(model.b_[l].size(), 0.0);
            }
            for (std::size_t r = start; r < stop; ++r) {
                const double* in = train.x.row(order[r]);
                model.forward_row(in, pre, act);
                const double p = act.back()[0];
                const double err = p - train.y[order[r]];
                delta[layers - 1].assign(1, 2.0 * err * inv_n * p * (1.0 - p));
                for (std::size_t l = layers; l-- > 0;) {
                    const std::size_t out_dim = model.sizes_[l + 1];
                    const std::size_t in_dim = model.sizes_[l];
                    const double* below = (l == 0) ? in : act[l - 1].data();
                    for (std::size_t o = 0; o < out_dim; ++o) {
                        const double d = delta[l][o];
                        double* gwrow = gw[l].data() + o * in_dim;
                        for (std::size_t k = 0; k < in_dim; ++k) gwrow[k] += d * below[k];
                        gb[l][o] += d;
                    }
                    if (l > 0) {
                        delta[l - 1].assign(in_dim, 0.0);
                        for (std::size_t o = 0; o < out_dim; ++o) {
                            const double d = delta[l][o];
                            const double* wrow = model.w_[l].data() + o * in_dim;
                            for (std::size_t k = 0; k < in_dim; ++k) delta[l - 1][k] += wrow[k] * d;
                        }
                        for (std::size_t k = 0; k < in_dim; ++k) {
                            delta[l - 1][k] *= model.hidden_act_grad(pre[l - 1][k]);
                        }
                    }
                }
            }
            ++step;
            const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(step));
            const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(step));
            for (std::size_t l = 0; l < layers; ++l) {
                for (std::size_t k = 0; k < model.w_[l].size(); ++k) {
                    const double g = gw[l][k];
                    mw[l][k] = beta1 * mw[l][k] + (1.0 - beta1) * g;
                    vw[l][k] = beta2 * vw[l][k] + (1.0 - beta2) * g * g;
                    model.w_[l][k] -=
                        config.learning_rate * (mw[l][k] / bc1) / (std::sqrt(vw[l][k] / bc2) + eps);
                }
                for (std::size_t k = 0; k < model.b_[l].size(); ++k) {
                    const double g = gb[l][k];
                    mb[l][k] = beta1 * mb[l][k] + (1.0 - beta1) * g;
                    vb[l][k] = beta2 * vb[l][k] + (1.0 - beta2) * g * g;
                    model.b_[l][k] -=
                        config.learning_rate * (mb[l][k] / bc1) / (std::sqrt(vb[l][k] / bc2) + eps);
                }
            }
        }

        const double train_mse = model.loss(train.x, train.y);
        const double val_mse = model.loss(val.x, val.y);
        if (!std::isfinite(train_mse) || !std::isfinite(val_mse)) {
            throw TrainingError("diverged: non-finite loss at epoch " + std::to_string(epoch));
        }
        rep.train_loss.push_back(train_mse);
        rep.val_loss.push_back(val_mse);
        if (val_mse < best_val) {
            best_val = val_mse;
            rep.best_epoch = static_cast<std::size_t>(epoch);
            best_w = model.w_;
            best_b = model.b_;
        }
        if (static_cast<std::size_t>(epoch) - rep.best_epoch >
            static_cast<std::size_t>(config.early_stop_patience)) {
            break;
        }
    }

    model.w_ = std::move(best_w);
    model.b_ = std::move(best_b);
    if (report) *report = std::move(rep);
    return model;
}

namespace {

// Cholesky solve of the SPD system m x = rhs; m is (d x d) row-major and is
// destroyed. Returns false when a pivot collapses (singular system).
bool cholesky_solve(std::vector<double>& m, std::vector<double>& rhs, std::size_t d) {
    double max_diag = 0.0;
    for (std::size_t j = 0; j < d; ++j) max_diag = std::max(max_diag, std::abs(m[j * d + j]));
    const double tol = std::max(max_diag, 1.0) * 1e-13;
    for (std::size_t j = 0; j < d; ++j) {
        double diag = m[j * d + j];
        for (std::size_t k = 0; k < j; ++k) diag -= m[j * d + k] * m[j * d + k];
        if (!(diag > tol)) return false;
        const double ljj = std::sqrt(diag);
        m[j * d + j] = ljj;
        for (std::size_t i = j + 1; i < d; ++i) {
            double v = m[i * d + j];
            for (std::size_t k = 0; k < j; ++k) v -= m[i * d + k] * m[j * d + k];
            m[i * d + j] = v / ljj;
        }
    }
    for (std::size_t i = 0; i < d; ++i) {  // forward: L y = rhs
        double v = rhs[i];
        for (std::size_t k = 0; k < i; ++k) v -= m[i * d + k] * rhs[k];
        rhs[i] = v / m[i * d + i];
    }
    for (std::size_t i = d; i-- > 0;) {  // backward: L^T x = y
        double v = rhs[i];
        for (std::size_t k = i + 1; k < d; ++k) v -= m[k * d + i] * rhs[k];
        rhs[i] = v / m[i * d + i];
    }
    return true;
}

}  // namespace

RidgeModel fit_ridge(const Matrix& x, const std::vector<double>& y, double lambda) {
    if (x.rows == 0 || x.rows != y.size()) throw DataError("fit_ridge: bad training shape");
    if (lambda < 0.0) throw ConfigError("ridge lambda must be >= 0");

    const std::size_t d = x.cols;
    const std::size_t m = d + 1;  // weights + unpenalized intercept
    std::vector<double> normal(m * m, 0.0);
    std::vector<double> rhs(m, 0.0);

    for (std::size_t i = 0; i < x.rows; ++i) {
        const double* r = x.row(i);
        for (std::size_t a = 0; a < d; ++a) {
            for (std::size_t b = a; b < d; ++b) normal[a * m + b] += r[a] * r[b];
            normal[a * m + d] += r[a];
            rhs[a] += r[a] * y[i];
        }
        rhs[d] += y[i];
    }
    normal[d * m + d] = static_cast<double>(x.rows);
    for (std::size_t a = 0; a < d; ++a) normal[a * m + a] += lambda;
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < a; ++b) normal[a * m + b] = normal[b * m + a];
    }

    if (!cholesky_solve(normal, rhs, m)) {
        throw TrainingError("ridge normal equations are singular; use lambda > 0");
    }

    RidgeModel model;
    model.weights.assign(rhs.begin(), rhs.begin() + static_cast<std::ptrdiff_t>(d));
    model.intercept = rhs[d];
    return model;
}

double RidgeModel::predict_row(const double* x) const {
    double v = intercept;
    for (std::size_t j = 0; j < weights.size(); ++j) v += weights[j] * x[j];
    return std::clamp(v, 0.0, 1.0);
}

std::vector<double> RidgeModel::predict(const Matrix& rows) const {
    if (rows.cols != weights.size()) {
        throw DataError("ridge input dimensionality mismatch: model expects " +
                        std::to_string(weights.size()) + " features, rows have " +
                        std::to_string(rows.cols));
    }
    std::vector<double> out(rows.rows);
    for (std::size_t i = 0; i < rows.rows; ++i) out[i] = predict_row(rows.row(i));
    return out;
}

}  // namespace eventseer
