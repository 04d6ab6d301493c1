#include "eventseer/ensemble.hpp"

#include <algorithm>
#include <exception>
#include <set>
#include <thread>

#include "eventseer/errors.hpp"

namespace eventseer {

std::vector<BaseConfig> default_stack() {
    BaseConfig small;
    small.kind = BaseKind::ffn;
    small.ffn.hidden_layers = {20, 20};

    BaseConfig wide;
    wide.kind = BaseKind::ffn;
    wide.ffn.hidden_layers = {40, 40};

    BaseConfig ridge;
    ridge.kind = BaseKind::ridge;
    ridge.ridge_lambda = 1.0;

    return {small, wide, ridge};
}

FfnConfig default_meta_config() {
    FfnConfig config;
    config.hidden_layers = {8};
    return config;
}

std::vector<double> BaseModel::predict(const Matrix& standardized_rows) const {
    return kind == BaseKind::ffn ? ffn.predict(standardized_rows)
                                 : ridge.predict(standardized_rows);
}

namespace {

std::string auto_name(const BaseConfig& config) {
    if (!config.name.empty()) return config.name;
    if (config.kind == BaseKind::ridge) {
        std::string lambda = std::to_string(config.ridge_lambda);
        lambda.erase(lambda.find_last_not_of('0') + 1);
        if (!lambda.empty() && lambda.back() == '.') lambda.pop_back();
        return "ridge_l" + lambda;
    }
    std::string name = "ffn";
    if (config.ffn.hidden_layers.empty()) {
        name += "_linear";
    } else {
        for (std::size_t i = 0; i < config.ffn.hidden_layers.size(); ++i) {
            name += (i == 0 ? "_" : "x") + std::to_string(config.ffn.hidden_layers[i]);
        }
    }
    return name;
}

// Expand instance counts and make names unique, in declaration order.
std::vector<BaseConfig> expand_configs(const std::vector<BaseConfig>& configs) {
    std::vector<BaseConfig> expanded;
    for (const BaseConfig& c : configs) {
        if (c.count < 1) throw ConfigError("base model count must be >= 1");
        for (int i = 0; i < c.count; ++i) {
            BaseConfig inst = c;
            inst.count = 1;
            inst.name = auto_name(c);
            expanded.push_back(inst);
        }
    }
    std::set<std::string> seen;
    for (BaseConfig& c : expanded) {
        std::string name = c.name;
        int suffix = 2;
        while (seen.count(name)) name = c.name + "_" + std::to_string(suffix++);
        c.name = name;
        seen.insert(name);
    }
    return expanded;
}

}  // namespace

StackedModel train_stack(const FeatureMatrix& train, const FeatureMatrix& val,
                         const std::vector<BaseConfig>& configs, CombinerKind combiner,
                         const WindowSpec& spec, std::uint64_t seed,
                         std::vector<LossRecord>* losses, const FfnConfig& meta_config) {
    if (configs.empty()) throw ConfigError("at least one base model is required");
    if (train.x.rows == 0 || val.x.rows == 0) {
        throw DataError("train_stack needs non-empty train and val splits");
    }

    StackedModel model;
    model.spec = spec;
    model.scaler = standardize_fit(train.x);

    FeatureMatrix std_train{standardize_apply(model.scaler, train.x), train.y};
    FeatureMatrix std_val{standardize_apply(model.scaler, val.x), val.y};

    const std::vector<BaseConfig> expanded = expand_configs(configs);
    model.bases.resize(expanded.size());
    std::vector<LossRecord> records(expanded.size());
    std::vector<std::exception_ptr> failures(expanded.size());

    const auto train_one = [&](std::size_t i) {
        try {
            const BaseConfig& config = expanded[i];
            BaseModel& base = model.bases[i];
            base.name = config.name;
            base.kind = config.kind;
            records[i].model_name = config.name;
            if (config.kind == BaseKind::ffn) {
                FfnConfig ffn_config = config.ffn;
                ffn_config.seed = seed + i;
                base.ffn = fit_ffn(std_train, std_val, ffn_config, &records[i].report);
            } else {
                base.ridge = fit_ridge(std_train.x, std_train.y, config.ridge_lambda);
                double tr = 0.0, va = 0.0;
                const std::vector<double> pt = base.ridge.predict(std_train.x);
                for (std::size_t r = 0; r < pt.size(); ++r) {
                    tr += (pt[r] - std_train.y[r]) * (pt[r] - std_train.y[r]);
                }
                const std::vector<double> pv = base.ridge.predict(std_val.x);
                for (std::size_t r = 0; r < pv.size(); ++r) {
                    va += (pv[r] - std_val.y[r]) * (pv[r] - std_val.y[r]);
                }
                records[i].report.train_loss = {tr / static_cast<double>(pt.size())};
                records[i].report.val_loss = {va / static_cast<double>(pv.size())};
            }
        } catch (...) {
            failures[i] = std::current_exception();
        }
    };

    std::vector<std::thread> workers;
    workers.reserve(expanded.size());
    for (std::size_t i = 0; i < expanded.size(); ++i) workers.emplace_back(train_one, i);
    for (std::thread& t : workers) t.join();

    for (std::size_t i = 0; i < failures.size(); ++i) {
        if (!failures[i]) continue;
        try {
            std::rethrow_exception(failures[i]);
        } catch (const ConfigError& e) {
            throw ConfigError("base model '" + expanded[i].name + "': " + e.what());
        } catch (const std::exception& e) {
            throw TrainingError("base model '" + expanded[i].name + "' failed: " + e.what());
        }
    }

    model.combiner = combiner;
    if (combiner == CombinerKind::meta_ffn) {
        Matrix meta_x(std_val.x.rows, model.bases.size());
        for (std::size_t b = 0; b < model.bases.size(); ++b) {
            const std::vector<double> pred = model.bases[b].predict(std_val.x);
            for (std::size_t r = 0; r < pred.size(); ++r) meta_x.at(r, b) = pred[r];
        }
        FfnConfig config = meta_config;
        config.seed = seed + model.bases.size();
        LossRecord meta_record;
        meta_record.model_name = "meta_ffn";
        model.meta = fit_meta(meta_x, std_val.y, config, &meta_record.report);
        records.push_back(std::move(meta_record));
    }

    if (losses) *losses = std::move(records);
    return model;
}

FfnModel fit_meta(const Matrix& base_predictions, const std::vector<double>& targets,
                  const FfnConfig& config, TrainReport* report) {
    if (base_predictions.rows < 4) {
        throw DataError("meta training needs at least 4 validation rows");
    }
    const std::size_t n = base_predictions.rows;
    const std::size_t n_train = n - n / 4;  // chronological 75/25 holdout

    FeatureMatrix head{Matrix(n_train, base_predictions.cols), {}};
    FeatureMatrix tail{Matrix(n - n_train, base_predictions.cols), {}};
    std::copy_n(base_predictions.data.begin(), n_train * base_predictions.cols,
                head.x.data.begin());
    std::copy(base_predictions.data.begin() +
                  static_cast<std::ptrdiff_t>(n_train * base_predictions.cols),
              base_predictions.data.end(), tail.x.data.begin());
    head.y.assign(targets.begin(), targets.begin() + static_cast<std::ptrdiff_t>(n_train));
    tail.y.assign(targets.begin() + static_cast<std::ptrdiff_t>(n_train), targets.end());

    return fit_ffn(head, tail, config, report);
}

std::vector<double> StackedModel::predict_rows(const Matrix& raw_rows) const {
    const Matrix standardized = standardize_apply(scaler, raw_rows);
    std::vector<std::vector<double>> base_preds(bases.size());
    for (std::size_t b = 0; b < bases.size(); ++b) {
        base_preds[b] = bases[b].predict(standardized);
    }

    std::vector<double> out(raw_rows.rows, 0.0);
    if (combiner == CombinerKind::average) {
        const double inv = 1.0 / static_cast<double>(bases.size());
        for (std::size_t b = 0; b < bases.size(); ++b) {
            for (std::size_t r = 0; r < out.size(); ++r) out[r] += base_preds[b][r];
        }
        for (double& v : out) v *= inv;
    } else {
        Matrix meta_x(raw_rows.rows, bases.size());
        for (std::size_t b = 0; b < bases.size(); ++b) {
            for (std::size_t r = 0; r < raw_rows.rows; ++r) meta_x.at(r, b) = base_preds[b][r];
        }
        out = meta.predict(meta_x);
    }
    return out;
}

Matrix build_feature_matrix(const std::vector<Window>& windows) {
    if (windows.empty()) return {};
    Matrix m(windows.size(), windows.front().features.size());
    for (std::size_t i = 0; i < windows.size(); ++i) {
        std::copy(windows[i].features.begin(), windows[i].features.end(), m.row(i));
    }
    return m;
}

OpSignal predict_stack(const StackedModel& model, const std::vector<Window>& windows) {
    OpSignal signal;
    signal.mid_times.reserve(windows.size());
    for (const Window& w : windows) signal.mid_times.push_back(w.mid_time);
    signal.values = model.predict_rows(build_feature_matrix(windows));
    return signal;
}

}  // namespace eventseer
