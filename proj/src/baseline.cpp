// Copyright 2026 The Solidarity Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "solidarity/baseline.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>

#include "json.hpp"

#include "solidarity/error.hpp"
#include "solidarity/metrics.hpp"
#include "solidarity/rng.hpp"

namespace solidarity {

using nlohmann::json;

LabelCoarse argmax(const Distribution& p) {
  std::size_t best = 0;
  for (std::size_t c = 1; c < kNumCoarse; ++c) {
    if (p[c] > p[best]) best = c;
  }
  return static_cast<LabelCoarse>(best);
}

Distribution softmax(const std::array<double, kNumCoarse>& logits) {
  const double m = *std::max_element(logits.begin(), logits.end());
  Distribution p{};
  double z = 0.0;
  for (std::size_t c = 0; c < kNumCoarse; ++c) {
    p[c] = std::exp(logits[c] - m);
    z += p[c];
  }
  for (auto& v : p) v /= z;
  return p;
}

BaselineModel::BaselineModel(std::uint32_t dim, FeatureMode mode)
    : dim_(dim), mode_(mode), weights_(std::size_t{kNumCoarse} * dim, 0.0) {
  if (!is_power_of_two(dim)) {
    throw UsageError("BaselineModel: dim must be a power of two");
  }
}

std::array<double, kNumCoarse> BaselineModel::logits(
    const SparseVector& x) const {
  std::array<double, kNumCoarse> z = bias_;
  for (std::size_t c = 0; c < kNumCoarse; ++c) {
    const double* w = weights_.data() + c * dim_;
    for (const auto& [j, v] : x.entries) z[c] += w[j] * v;
  }
  return z;
}

Distribution BaselineModel::predict_proba(const SparseVector& x) const {
  return softmax(logits(x));
}

Distribution BaselineModel::predict_proba(const Tweet& t) const {
  return predict_proba(featurize(t, mode_, dim_));
}

ObjectiveValue objective(const BaselineModel& model,
                         std::span<const SparseVector> xs,
                         std::span<const LabelCoarse> ys, double l2) {
  if (xs.size() != ys.size() || xs.empty()) {
    throw UsageError("objective: need equally many, non-zero examples/labels");
  }
  const std::size_t dim = model.dim();
  const auto n = static_cast<double>(xs.size());
  ObjectiveValue out;
  out.grad_weights.assign(model.weights().size(), 0.0);
  double ce = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto p = model.predict_proba(xs[i]);
    const auto y = index(ys[i]);
    ce -= std::log(p[y]);
    for (std::size_t c = 0; c < kNumCoarse; ++c) {
      const double g = (p[c] - (c == y ? 1.0 : 0.0)) / n;
      out.grad_bias[c] += g;
      for (const auto& [j, v] : xs[i].entries) {
        out.grad_weights[c * dim + j] += g * v;
      }
    }
  }
  double sq = 0.0;
  const auto w = model.weights();
  for (std::size_t k = 0; k < w.size(); ++k) {
    sq += w[k] * w[k];
    out.grad_weights[k] += l2 * w[k];
  }
  out.loss = ce / n + 0.5 * l2 * sq;
  return out;
}

namespace {

struct Featurized {
  std::vector<SparseVector> xs;
  std::vector<LabelCoarse> ys;
};

Featurized featurize_all(const LabeledDataset& d, const BaselineHyperparams& hp) {
  Featurized f;
  f.xs.reserve(d.size());
  f.ys.reserve(d.size());
  for (const auto& e : d) {
    f.xs.push_back(featurize(e.tweet, hp.mode, hp.dim));
    f.ys.push_back(e.label);
  }
  return f;
}

double dev_macro_f1(const BaselineModel& model, const Featurized& dev) {
  metrics::ConfusionMatrix m(kNumCoarse);
  for (std::size_t i = 0; i < dev.xs.size(); ++i) {
    m.add(index(dev.ys[i]), index(argmax(model.predict_proba(dev.xs[i]))));
  }
  return metrics::macro_f1(m).macro_f1;
}

}  // namespace

BaselineModel train_baseline(const LabeledDataset& train,
                             const LabeledDataset& dev,
                             const BaselineHyperparams& hp) {
  if (train.empty()) throw TrainingError("training set is empty");
  if (dev.empty()) throw TrainingError("dev set is empty");
  const auto& counts = train.class_counts();
  if (std::count(counts.begin(), counts.end(), std::size_t{0}) >=
      static_cast<std::ptrdiff_t>(kNumCoarse - 1)) {
    throw TrainingError("training set contains a single class");
  }
  if (hp.batch_size == 0 || hp.max_epochs == 0) {
    throw TrainingError("batch_size and max_epochs must be positive");
  }
  if (!(hp.learning_rate > 0.0) || hp.l2 < 0.0 ||
      hp.learning_rate * hp.l2 >= 1.0) {
    throw TrainingError("need learning_rate > 0, l2 >= 0, learning_rate*l2 < 1");
  }

  const Featurized tr = featurize_all(train, hp);
  const Featurized dv = featurize_all(dev, hp);
  const std::size_t dim = hp.dim;

  // Weights are kept as scale * v so the L2 shrink is O(1) per batch.
  BaselineModel model(hp.dim, hp.mode);
  std::vector<double> v(model.weights().size(), 0.0);
  double scale = 1.0;
  auto materialize = [&] {
    auto w = model.weights();
    for (std::size_t k = 0; k < v.size(); ++k) w[k] = scale * v[k];
  };

  BaselineModel best = model;
  double best_f1 = -std::numeric_limits<double>::infinity();
  std::size_t best_epoch = 0;
  TrainingInfo info;
  info.hyperparams = hp;

  Rng rng(hp.seed);
  std::vector<std::size_t> order(tr.xs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const double decay = 1.0 - hp.learning_rate * hp.l2;

  for (std::size_t epoch = 1; epoch <= hp.max_epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    double ce_sum = 0.0;
    for (std::size_t start = 0; start < order.size(); start += hp.batch_size) {
      const std::size_t end = std::min(order.size(), start + hp.batch_size);
      const auto b = static_cast<double>(end - start);

      std::vector<std::array<double, kNumCoarse>> residuals;
      residuals.reserve(end - start);
      for (std::size_t k = start; k < end; ++k) {
        const auto& x = tr.xs[order[k]];
        std::array<double, kNumCoarse> z = model.bias();
        for (std::size_t c = 0; c < kNumCoarse; ++c) {
          const double* vc = v.data() + c * dim;
          double dot = 0.0;
          for (const auto& [j, val] : x.entries) dot += vc[j] * val;
          z[c] += scale * dot;
        }
        auto p = softmax(z);
        const auto y = index(tr.ys[order[k]]);
        const double ce = -std::log(p[y]);
        if (!std::isfinite(ce)) {
          throw TrainingError("non-finite loss in epoch " +
                              std::to_string(epoch) + " at example '" +
                              train[order[k]].tweet.id +
                              "'; lower the learning rate");
        }
        ce_sum += ce;
        p[y] -= 1.0;
        residuals.push_back(p);
      }

      scale *= decay;
      if (scale < 1e-9) {
        for (auto& x : v) x *= scale;
        scale = 1.0;
      }
      const double step = hp.learning_rate / (b * scale);
      std::array<double, kNumCoarse> bias_grad{};
      for (std::size_t k = start; k < end; ++k) {
        const auto& r = residuals[k - start];
        const auto& x = tr.xs[order[k]];
        for (std::size_t c = 0; c < kNumCoarse; ++c) {
          bias_grad[c] += r[c];
          double* vc = v.data() + c * dim;
          for (const auto& [j, val] : x.entries) vc[j] -= step * r[c] * val;
        }
      }
      for (std::size_t c = 0; c < kNumCoarse; ++c) {
        model.bias()[c] -= hp.learning_rate * bias_grad[c] / b;
      }
    }

    materialize();
    double sq = 0.0;
    for (double w : model.weights()) sq += w * w;
    const double loss =
        ce_sum / static_cast<double>(order.size()) + 0.5 * hp.l2 * sq;
    if (!std::isfinite(loss)) {
      throw TrainingError("non-finite loss after epoch " + std::to_string(epoch));
    }
    const double f1 = dev_macro_f1(model, dv);
    info.history.push_back({epoch, loss, f1});
    info.epochs_run = epoch;
    if (f1 > best_f1) {
      best_f1 = f1;
      best_epoch = epoch;
      best = model;
    } else if (epoch - best_epoch > hp.patience) {
      break;
    }
  }

  info.best_epoch = best_epoch;
  info.dev_macro_f1 = best_f1;
  best.info() = std::move(info);
  return best;
}

std::string BaselineClassifier::describe() const {
  return "baseline(mode=" + std::string(to_string(model_.mode())) +
         ", dim=" + std::to_string(model_.dim()) + ")";
}

void save_model(std::ostream& out, const BaselineModel& model) {
  json j;
  j["format"] = "solidarity-baseline";
  j["version"] = 1;
  j["dim"] = model.dim();
  j["mode"] = std::string(to_string(model.mode()));
  j["bias"] = model.bias();
  json rows = json::array();
  const auto w = model.weights();
  for (std::uint32_t idx = 0; idx < model.dim(); ++idx) {
    const double a = w[idx];
    const double b = w[model.dim() + idx];
    const double c = w[2 * std::size_t{model.dim()} + idx];
    if (a != 0.0 || b != 0.0 || c != 0.0) rows.push_back({idx, a, b, c});
  }
  j["weights"] = std::move(rows);

  const auto& info = model.info();
  const auto& hp = info.hyperparams;
  json training;
  training["seed"] = hp.seed;
  training["learning_rate"] = hp.learning_rate;
  training["l2"] = hp.l2;
  training["max_epochs"] = hp.max_epochs;
  training["batch_size"] = hp.batch_size;
  training["patience"] = hp.patience;
  training["epochs_run"] = info.epochs_run;
  training["best_epoch"] = info.best_epoch;
  training["dev_macro_f1"] = info.dev_macro_f1;
  json history = json::array();
  for (const auto& e : info.history) {
    history.push_back({{"epoch", e.epoch},
                       {"train_loss", e.train_loss},
                       {"dev_macro_f1", e.dev_macro_f1}});
  }
  training["history"] = std::move(history);
  j["training"] = std::move(training);
  out << j.dump() << '\n';
}

BaselineModel load_model(std::istream& in, const std::string& source) {
  try {
    const json j = json::parse(in);
    if (j.at("format") != "solidarity-baseline") {
      throw DataError(source + ": not a baseline model file");
    }
    if (j.at("version").get<int>() != 1) {
      throw DataError(source + ": unsupported model version");
    }
    const auto mode = parse_feature_mode(j.at("mode").get<std::string>());
    if (!mode) throw DataError(source + ": bad feature mode");
    const auto dim = j.at("dim").get<std::uint32_t>();
    BaselineModel model(dim, *mode);
    model.bias() = j.at("bias").get<std::array<double, kNumCoarse>>();
    auto w = model.weights();
    for (const auto& row : j.at("weights")) {
      const auto idx = row.at(0).get<std::uint32_t>();
      if (idx >= dim) throw DataError(source + ": weight index out of range");
      for (std::size_t c = 0; c < kNumCoarse; ++c) {
        w[c * dim + idx] = row.at(c + 1).get<double>();
      }
    }
    for (double x : w) {
      if (!std::isfinite(x)) throw DataError(source + ": non-finite weight");
    }
    const auto& t = j.at("training");
    auto& info = model.info();
    info.hyperparams.seed = t.at("seed").get<std::uint64_t>();
    info.hyperparams.learning_rate = t.at("learning_rate").get<double>();
    info.hyperparams.l2 = t.at("l2").get<double>();
    info.hyperparams.max_epochs = t.at("max_epochs").get<std::size_t>();
    info.hyperparams.batch_size = t.at("batch_size").get<std::size_t>();
    info.hyperparams.patience = t.at("patience").get<std::size_t>();
    info.hyperparams.dim = dim;
    info.hyperparams.mode = *mode;
    info.epochs_run = t.at("epochs_run").get<std::size_t>();
    info.best_epoch = t.at("best_epoch").get<std::size_t>();
    info.dev_macro_f1 = t.at("dev_macro_f1").get<double>();
    for (const auto& e : t.at("history")) {
      info.history.push_back({e.at("epoch").get<std::size_t>(),
                              e.at("train_loss").get<double>(),
                              e.at("dev_macro_f1").get<double>()});
    }
    return model;
  } catch (const json::exception& e) {
    throw DataError(source + ": malformed model file: " + e.what());
  }
}

}  // namespace solidarity
