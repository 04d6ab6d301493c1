#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eventseer/extraction.hpp"
#include "eventseer/regressor.hpp"
#include "eventseer/windowing.hpp"

namespace eventseer {

enum class BaseKind { ffn, ridge };
enum class CombinerKind { average, meta_ffn };

struct BaseConfig {
    BaseKind kind = BaseKind::ffn;
    std::string name;         // auto-derived from the config when empty
    FfnConfig ffn;            // kind == ffn
    double ridge_lambda = 1.0;  // kind == ridge
    int count = 1;            // instances; each gets a derived seed
};

// FFN(20,20) + FFN(40,40) + ridge(lambda=1), averaged.
std::vector<BaseConfig> default_stack();
FfnConfig default_meta_config();  // one hidden layer of 8 units

struct BaseModel {
    std::string name;
    BaseKind kind = BaseKind::ffn;
    FfnModel ffn;
    RidgeModel ridge;

    std::vector<double> predict(const Matrix& standardized_rows) const;
    std::size_t input_dim() const { return kind == BaseKind::ffn ? ffn.input_dim() : ridge.input_dim(); }
};

struct LossRecord {
    std::string model_name;
    TrainReport report;  // ridge gets a single epoch-0 entry
};

struct StackedModel {
    std::vector<BaseModel> bases;
    CombinerKind combiner = CombinerKind::average;
    FfnModel meta;  // combiner == meta_ffn
    ScalerStats scaler;
    WindowSpec spec;
    ExtractionParams extraction;

    // Raw (unstandardized) rows in, combined op predictions in [0, 1] out.
    std::vector<double> predict_rows(const Matrix& raw_rows) const;
};

// Trains every base on the train split (val drives early stopping), then the
// combiner: Average needs nothing; MetaFfn trains on the val-split base
// predictions against the val targets. Bases train concurrently with seeds
// derived as seed + base index. A base failure aborts with the model named.
StackedModel train_stack(const FeatureMatrix& train, const FeatureMatrix& val,
                         const std::vector<BaseConfig>& configs, CombinerKind combiner,
                         const WindowSpec& spec, std::uint64_t seed,
                         std::vector<LossRecord>* losses = nullptr,
                         const FfnConfig& meta_config = default_meta_config());

// Meta-learner over base-prediction columns; inputs are already in [0, 1] so
// no scaler is fitted. The last quarter of the rows (chronologically) is held
// out for the meta's own early stopping.
FfnModel fit_meta(const Matrix& base_predictions, const std::vector<double>& targets,
                  const FfnConfig& config, TrainReport* report = nullptr);

OpSignal predict_stack(const StackedModel& model, const std::vector<Window>& windows);

Matrix build_feature_matrix(const std::vector<Window>& windows);

}  // namespace eventseer
