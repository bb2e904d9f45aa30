#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "egvqc/encoding.hpp"
#include "egvqc/errors.hpp"
#include "egvqc/graph.hpp"
#include "egvqc/pauli.hpp"
#include "egvqc/pca.hpp"
#include "egvqc/rng.hpp"
#include "egvqc/simulator.hpp"

namespace egvqc {

enum class Pipeline { eg_vqc, pca_vqc };
enum class Multiclass { native_binary, one_vs_rest };

inline const char* to_string(Pipeline p) {
  return p == Pipeline::eg_vqc ? "eg-vqc" : "pca-vqc";
}
inline const char* to_string(Multiclass m) {
  return m == Multiclass::native_binary ? "native-binary" : "one-vs-rest";
}

/// Probability that the circuit assigns class 1 to an encoded graph:
/// p = (1 + <psi(theta)| H |psi(theta)>) / 2 with |psi(theta)> the ansatz
/// applied to the uniform superposition. Requires the Hamiltonian spectrum
/// inside [-1, 1], which is what makes p a probability.
inline double forward_eg(const GraphHamiltonian& h, const AnsatzParams& params,
                         EntanglerTopology topology = EntanglerTopology::ring) {
  auto [lo, hi] = h.spectral_bounds();
  if (lo < -1.0 - 1e-9 || hi > 1.0 + 1e-9) {
    throw contract_error("Hamiltonian spectrum [" + std::to_string(lo) + ", " +
                         std::to_string(hi) +
                         "] leaves [-1, 1]; encode with strict or exact "
                         "normalization before classifying");
  }
  StateVector state = StateVector::plus_state(h.n_qubits());
  state.apply_ansatz(params, topology);
  const double z = state.expectation_diagonal(h.diagonal());
  return std::clamp(0.5 * (1.0 + z), 0.0, 1.0);
}

/// <Z> on qubit 0.
inline double expectation_z0(const StateVector& state) {
  double z = 0.0;
  const auto amps = state.amplitudes();
  for (std::size_t x = 0; x < amps.size(); ++x) {
    z += (x & 1) ? -std::norm(amps[x]) : std::norm(amps[x]);
  }
  return z;
}

/// Baseline head: angle-encode the feature vector, run the same ansatz,
/// read out p = (1 + <Z_0>) / 2.
inline double forward_pca(const std::vector<double>& features, const AnsatzParams& params,
                          EntanglerTopology topology = EntanglerTopology::ring) {
  StateVector state = angle_encode(features, params.n_qubits);
  state.apply_ansatz(params, topology);
  return std::clamp(0.5 * (1.0 + expectation_z0(state)), 0.0, 1.0);
}

/// Probabilities are clamped into [kProbClamp, 1 - kProbClamp] before logs.
inline constexpr double kProbClamp = 1e-7;

inline double clamp_probability(double p) {
  return std::clamp(p, kProbClamp, 1.0 - kProbClamp);
}

/// Mean binary cross-entropy.
inline double bce_loss(std::span<const double> probabilities, std::span<const int> labels) {
  if (probabilities.empty() || probabilities.size() != labels.size()) {
    throw std::invalid_argument("loss needs equal, non-zero sample counts");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    const double p = clamp_probability(probabilities[i]);
    sum += labels[i] == 1 ? -std::log(p) : -std::log(1.0 - p);
  }
  return sum / static_cast<double>(probabilities.size());
}

/// d(BCE_i)/dp at the clamped probability.
inline double bce_derivative(double p, int label) {
  const double pc = clamp_probability(p);
  return (pc - static_cast<double>(label)) / (pc * (1.0 - pc));
}

/// Exact gradient of a raw expectation with respect to each RY angle:
/// grad = (eval(theta + pi/2) - eval(theta - pi/2)) / 2. The caller applies
/// the chain rule to whatever loss sits on top.
template <typename EvalFn>
std::vector<double> parameter_shift_gradient(const EvalFn& eval, AnsatzParams params) {
  constexpr double shift = std::numbers::pi / 2.0;
  std::vector<double> grad(params.parameter_count());
  for (std::size_t i = 0; i < grad.size(); ++i) {
    const double original = params.angles[i];
    params.angles[i] = original + shift;
    const double plus = eval(params);
    params.angles[i] = original - shift;
    const double minus = eval(params);
    params.angles[i] = original;
    grad[i] = 0.5 * (plus - minus);
  }
  return grad;
}

/// Adam with standard constants and bias correction.
struct AdamState {
  std::vector<double> first_moment;
  std::vector<double> second_moment;
  long step_count = 0;

  static constexpr double kBeta1 = 0.9;
  static constexpr double kBeta2 = 0.999;
  static constexpr double kEpsilon = 1e-8;

  static AdamState zeros(std::size_t parameter_count) {
    return {std::vector<double>(parameter_count, 0.0),
            std::vector<double>(parameter_count, 0.0), 0};
  }
};

inline void adam_update(std::vector<double>& params, std::span<const double> grads,
                        AdamState& state, double learning_rate) {
  if (params.size() != grads.size() || params.size() != state.first_moment.size()) {
    throw std::invalid_argument("adam: parameter/gradient shape mismatch");
  }
  for (double g : grads) {
    if (!std::isfinite(g)) throw training_error("non-finite gradient");
  }
  ++state.step_count;
  const double bias1 = 1.0 - std::pow(AdamState::kBeta1, state.step_count);
  const double bias2 = 1.0 - std::pow(AdamState::kBeta2, state.step_count);
  for (std::size_t i = 0; i < params.size(); ++i) {
    auto& m = state.first_moment[i];
    auto& v = state.second_moment[i];
    m = AdamState::kBeta1 * m + (1.0 - AdamState::kBeta1) * grads[i];
    v = AdamState::kBeta2 * v + (1.0 - AdamState::kBeta2) * grads[i] * grads[i];
    params[i] -= learning_rate * (m / bias1) / (std::sqrt(v / bias2) + AdamState::kEpsilon);
  }
}

/// Threshold rule: p >= 0.5 predicts class 1 (ties inclusive).
inline int predict_label(double probability) { return probability >= 0.5 ? 1 : 0; }

inline double accuracy(std::span<const double> probabilities, std::span<const int> labels) {
  if (probabilities.empty() || probabilities.size() != labels.size()) {
    throw std::invalid_argument("accuracy needs equal, non-zero sample counts");
  }
  std::size_t correct = 0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    if (predict_label(probabilities[i]) == labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(probabilities.size());
}

struct TrainConfig {
  int layers = 3;
  double learning_rate = 0.01;
  int epochs = 100;
  std::uint64_t seed = 1;
  double test_fraction = 0.1;
  NormMode norm_mode = NormMode::exact;
  Pipeline pipeline = Pipeline::eg_vqc;
  int n_qubits = 0;  // 0 = auto: smallest N that fits the largest graph
  Multiclass multiclass = Multiclass::native_binary;
  EntanglerTopology entangler = EntanglerTopology::ring;
  SpectralMatrix spectral_matrix = SpectralMatrix::adjacency;

  void validate() const {
    if (layers < 1) throw std::invalid_argument("layers must be >= 1");
    if (epochs < 1) throw std::invalid_argument("epochs must be >= 1");
    if (!(learning_rate > 0.0)) throw std::invalid_argument("learning rate must be > 0");
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
      throw std::invalid_argument("test fraction must be in (0, 1)");
    }
    if (n_qubits < 0 || n_qubits > kMaxStateQubits) {
      throw std::invalid_argument("n_qubits must be 0 (auto) or in [1, " +
                                  std::to_string(kMaxStateQubits) + "]");
    }
  }

  nlohmann::json to_json() const {
    return {{"layers", layers},
            {"learning_rate", learning_rate},
            {"epochs", epochs},
            {"seed", seed},
            {"test_fraction", test_fraction},
            {"norm_mode", to_string(norm_mode)},
            {"pipeline", to_string(pipeline)},
            {"n_qubits", n_qubits},
            {"multiclass", to_string(multiclass)},
            {"entangler", to_string(entangler)},
            {"spectral_matrix", to_string(spectral_matrix)}};
  }
};

/// Per-run record: epoch series, the final test metric, and enough context
/// to reproduce the run. Wall time is serialized outside the deterministic
/// block so reruns compare byte-identical.
struct TrainReport {
  std::string dataset;
  Pipeline pipeline = Pipeline::eg_vqc;
  TrainConfig config;
  int n_qubits_used = 0;
  int excluded_graphs = 0;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  std::vector<double> train_loss;
  std::vector<double> val_loss;
  std::vector<double> val_accuracy;
  double final_test_accuracy = 0.0;
  double wall_time_seconds = 0.0;

  nlohmann::json deterministic_json() const {
    return {{"dataset", dataset},
            {"pipeline", to_string(pipeline)},
            {"config", config.to_json()},
            {"n_qubits", n_qubits_used},
            {"excluded_graphs", excluded_graphs},
            {"train_size", train_size},
            {"test_size", test_size},
            {"train_loss", train_loss},
            {"val_loss", val_loss},
            {"val_accuracy", val_accuracy},
            {"final_test_accuracy", final_test_accuracy}};
  }

  nlohmann::json to_json() const {
    return {{"report", deterministic_json()},
            {"timing", {{"wall_time_seconds", wall_time_seconds}}}};
  }

  /// epoch,train_loss,val_loss,val_acc rows for plotting.
  std::string series_csv() const {
    std::string out = "epoch,train_loss,val_loss,val_acc\n";
    char row[128];
    for (std::size_t e = 0; e < train_loss.size(); ++e) {
      std::snprintf(row, sizeof(row), "%zu,%.17g,%.17g,%.17g\n", e + 1, train_loss[e],
                    val_loss[e], val_accuracy[e]);
      out += row;
    }
    return out;
  }
};

namespace detail {

/// Uniform in (-pi, pi], flat index order.
inline AnsatzParams init_params(int layers, int n_qubits, std::uint64_t init_seed) {
  AnsatzParams params = AnsatzParams::zeros(layers, n_qubits);
  SplitMix64 rng(init_seed);
  for (auto& angle : params.angles) angle = rng.next_angle();
  return params;
}

/// One split's worth of prepared inputs: encoded Hamiltonians for the
/// graph-encoding pipeline, scaled spectral features for the baseline.
struct PreparedSamples {
  Pipeline pipeline = Pipeline::eg_vqc;
  EntanglerTopology topology = EntanglerTopology::ring;
  std::vector<EncodedGraph> encoded;          // eg-vqc
  std::vector<std::vector<double>> features;  // pca-vqc
  std::vector<int> labels;

  std::size_t size() const noexcept { return labels.size(); }

  /// Raw observable expectation for sample i at the given angles.
  double expectation(std::size_t i, const AnsatzParams& params) const {
    if (pipeline == Pipeline::eg_vqc) {
      const auto& h = encoded[i].hamiltonian;
      StateVector state = StateVector::plus_state(h.n_qubits());
      state.apply_ansatz(params, topology);
      return state.expectation_diagonal(h.diagonal());
    }
    StateVector state = angle_encode(features[i], params.n_qubits);
    state.apply_ansatz(params, topology);
    return expectation_z0(state);
  }

  double probability(std::size_t i, const AnsatzParams& params) const {
    if (pipeline == Pipeline::eg_vqc) {
      return forward_eg(encoded[i].hamiltonian, params, topology);
    }
    return forward_pca(features[i], params, topology);
  }
};

inline PreparedSamples prepare_eg(const LabeledGraphSet& ds, const EncodingConfig& enc,
                                  EntanglerTopology topology) {
  PreparedSamples out;
  out.pipeline = Pipeline::eg_vqc;
  out.topology = topology;
  out.labels = ds.labels;
  out.encoded.reserve(ds.size());
  for (const auto& g : ds.graphs) {
    out.encoded.push_back(encode_graph(g, enc));
    out.encoded.back().hamiltonian.spectral_bounds();  // build caches up front
  }
  return out;
}

inline PreparedSamples prepare_pca(const LabeledGraphSet& ds, int n_qubits,
                                   const PcaScaler& scaler, EntanglerTopology topology) {
  PreparedSamples out;
  out.pipeline = Pipeline::pca_vqc;
  out.topology = topology;
  out.labels = ds.labels;
  out.features.reserve(ds.size());
  for (const auto& g : ds.graphs) {
    out.features.push_back(pca_features(g, n_qubits, scaler));
  }
  return out;
}

struct TrainOutcome {
  TrainReport report;
  AnsatzParams params;
  std::vector<double> test_probabilities;
};

/// Full-batch Adam loop over prepared samples. Binary labels only; the
/// series are recorded as (train loss before the update, validation
/// metrics after it).
inline TrainOutcome train_on_prepared(const PreparedSamples& train_set,
                                      const PreparedSamples& test_set,
                                      const TrainConfig& cfg, int n_qubits,
                                      std::uint64_t init_seed) {
  const auto t0 = std::chrono::steady_clock::now();
  if (train_set.size() == 0 || test_set.size() == 0) {
    throw std::invalid_argument("training needs non-empty train and test sets");
  }

  AnsatzParams params = init_params(cfg.layers, n_qubits, init_seed);
  AdamState adam = AdamState::zeros(params.parameter_count());

  TrainReport report;
  report.pipeline = cfg.pipeline;
  report.config = cfg;
  report.n_qubits_used = n_qubits;
  report.train_size = train_set.size();
  report.test_size = test_set.size();

  const double m = static_cast<double>(train_set.size());
  std::vector<double> grad(params.parameter_count());
  std::vector<double> train_probs(train_set.size());
  std::vector<double> test_probs(test_set.size());

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::fill(grad.begin(), grad.end(), 0.0);
    for (std::size_t i = 0; i < train_set.size(); ++i) {
      train_probs[i] = train_set.probability(i, params);
      // dL/dtheta = (1/M) * dL/dp * (1/2) * d<O>/dtheta
      const double weight =
          bce_derivative(train_probs[i], train_set.labels[i]) * 0.5 / m;
      auto sample_grad = parameter_shift_gradient(
          [&](const AnsatzParams& p) { return train_set.expectation(i, p); }, params);
      for (std::size_t k = 0; k < grad.size(); ++k) grad[k] += weight * sample_grad[k];
    }
    report.train_loss.push_back(bce_loss(train_probs, train_set.labels));
    try {
      adam_update(params.angles, grad, adam, cfg.learning_rate);
    } catch (const training_error& e) {
      throw training_error(std::string(e.what()) + " at epoch " +
                           std::to_string(epoch + 1));
    }
    for (std::size_t i = 0; i < test_set.size(); ++i) {
      test_probs[i] = test_set.probability(i, params);
    }
    report.val_loss.push_back(bce_loss(test_probs, test_set.labels));
    report.val_accuracy.push_back(accuracy(test_probs, test_set.labels));
  }

  report.final_test_accuracy = report.val_accuracy.back();
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {std::move(report), std::move(params), std::move(test_probs)};
}

/// Resolves auto qubit count, drops oversized graphs, splits, prepares both
/// sides for the configured pipeline.
struct PreparedRun {
  PreparedSamples train_set;
  PreparedSamples test_set;
  int n_qubits = 0;
  int excluded = 0;
};

inline PreparedRun prepare_run(const LabeledGraphSet& ds, const TrainConfig& cfg) {
  if (ds.size() == 0) throw std::invalid_argument("dataset is empty");
  int n_qubits = cfg.n_qubits;
  if (n_qubits == 0) {
    int max_vertices = 0;
    for (const auto& g : ds.graphs) max_vertices = std::max(max_vertices, g.n_vertices());
    n_qubits = required_qubits(max_vertices);
  }
  auto [kept, excluded] = exclude_oversized(ds, n_qubits);
  if (kept.size() == 0) {
    throw std::invalid_argument("no graph fits in " + std::to_string(n_qubits) +
                                " qubits");
  }
  auto [train_ds, test_ds] =
      stratified_split(kept, cfg.test_fraction, derive_seed(cfg.seed, 0));

  PreparedRun run;
  run.n_qubits = n_qubits;
  run.excluded = excluded;
  if (cfg.pipeline == Pipeline::eg_vqc) {
    const EncodingConfig enc{n_qubits, cfg.norm_mode, true};
    run.train_set = prepare_eg(train_ds, enc, cfg.entangler);
    run.test_set = prepare_eg(test_ds, enc, cfg.entangler);
  } else {
    // scaling constant fitted on the training split only
    const PcaScaler scaler = PcaScaler::fit(train_ds.graphs, cfg.spectral_matrix);
    run.train_set = prepare_pca(train_ds, n_qubits, scaler, cfg.entangler);
    run.test_set = prepare_pca(test_ds, n_qubits, scaler, cfg.entangler);
  }
  return run;
}

}  // namespace detail

/// Trains one binary classifier end to end: encode (or extract features),
/// stratified split, uniform angle init, full-batch parameter-shift
/// gradients with Adam. Deterministic function of (dataset, config, seed).
inline TrainReport train(const LabeledGraphSet& ds, const TrainConfig& cfg) {
  cfg.validate();
  if (cfg.multiclass == Multiclass::native_binary && ds.class_count != 2) {
    throw std::invalid_argument(
        "dataset has " + std::to_string(ds.class_count) +
        " classes; native-binary training needs exactly 2 (use one-vs-rest)");
  }
  auto run = detail::prepare_run(ds, cfg);
  auto outcome = detail::train_on_prepared(run.train_set, run.test_set, cfg,
                                           run.n_qubits, derive_seed(cfg.seed, 1));
  outcome.report.dataset = ds.name;
  outcome.report.excluded_graphs = run.excluded;
  return std::move(outcome.report);
}

/// Baseline pipeline entry point: identical loop, PCA features + angle
/// encoding in place of the graph Hamiltonian.
inline TrainReport pca_pipeline(const LabeledGraphSet& ds, TrainConfig cfg) {
  cfg.pipeline = Pipeline::pca_vqc;
  return train(ds, cfg);
}

/// Multi-class ensemble: one binary head per class (class k vs rest) on a
/// shared split, prediction by argmax over head probabilities, ties to the
/// lowest class id.
struct OneVsRestReport {
  std::string dataset;
  std::vector<TrainReport> heads;
  double final_test_accuracy = 0.0;
  double wall_time_seconds = 0.0;

  nlohmann::json deterministic_json() const {
    nlohmann::json heads_json = nlohmann::json::array();
    for (const auto& h : heads) heads_json.push_back(h.deterministic_json());
    return {{"dataset", dataset},
            {"multiclass", "one-vs-rest"},
            {"heads", std::move(heads_json)},
            {"final_test_accuracy", final_test_accuracy}};
  }

  nlohmann::json to_json() const {
    return {{"report", deterministic_json()},
            {"timing", {{"wall_time_seconds", wall_time_seconds}}}};
  }
};

inline OneVsRestReport one_vs_rest_train(const LabeledGraphSet& ds, const TrainConfig& cfg) {
  cfg.validate();
  if (ds.class_count < 3) {
    throw std::invalid_argument("one-vs-rest needs at least 3 classes");
  }
  const auto t0 = std::chrono::steady_clock::now();
  auto run = detail::prepare_run(ds, cfg);

  OneVsRestReport report;
  report.dataset = ds.name;
  const std::size_t n_test = run.test_set.size();
  std::vector<std::vector<double>> head_probs;

  const std::vector<int> true_train_labels = run.train_set.labels;
  const std::vector<int> true_test_labels = run.test_set.labels;
  for (int k = 0; k < ds.class_count; ++k) {
    for (std::size_t i = 0; i < run.train_set.labels.size(); ++i) {
      run.train_set.labels[i] = true_train_labels[i] == k ? 1 : 0;
    }
    for (std::size_t i = 0; i < n_test; ++i) {
      run.test_set.labels[i] = true_test_labels[i] == k ? 1 : 0;
    }
    auto outcome =
        detail::train_on_prepared(run.train_set, run.test_set, cfg, run.n_qubits,
                                  derive_seed(cfg.seed, 2 + static_cast<std::uint64_t>(k)));
    outcome.report.dataset = ds.name + "#class" + std::to_string(k);
    outcome.report.excluded_graphs = run.excluded;
    head_probs.push_back(std::move(outcome.test_probabilities));
    report.heads.push_back(std::move(outcome.report));
  }

  std::size_t correct = 0;
  for (std::size_t i = 0; i < n_test; ++i) {
    int best = 0;
    for (int k = 1; k < ds.class_count; ++k) {
      if (head_probs[static_cast<std::size_t>(k)][i] >
          head_probs[static_cast<std::size_t>(best)][i]) {
        best = k;
      }
    }
    if (best == true_test_labels[i]) ++correct;
  }
  report.final_test_accuracy = static_cast<double>(correct) / static_cast<double>(n_test);
  report.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

}  // namespace egvqc
