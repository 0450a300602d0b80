#pragma once

// Three-layer perceptron with a gain-scaled sigmoid, online backpropagation
// and a per-pattern adaptive gain.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace paddy {

struct MlpTopology {
  std::size_t n_inputs = 1;
  std::size_t n_hidden = 8;
  std::size_t n_outputs = 1;

  /// Throws InvalidArgument when any layer is empty.
  void validate() const;

  bool operator==(const MlpTopology&) const = default;
};

/// Dense row-major matrix of weights.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::span<double> values() noexcept { return data_; }
  std::span<const double> values() const noexcept { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Weights and gain of a single-hidden-layer perceptron.
///
/// Column 0 of each weight matrix multiplies a constant bias input of 1, so
/// the hidden matrix is n_hidden x (n_inputs + 1) and the output matrix is
/// n_outputs x (n_hidden + 1). A single gain is shared by every node.
class Mlp {
 public:
  /// All weights zero, gain 1.
  explicit Mlp(const MlpTopology& topology);
  Mlp(const MlpTopology& topology, Matrix hidden, Matrix output, double gain = 1.0);

  const MlpTopology& topology() const noexcept { return topology_; }

  Matrix& hidden_weights() noexcept { return hidden_; }
  const Matrix& hidden_weights() const noexcept { return hidden_; }
  Matrix& output_weights() noexcept { return output_; }
  const Matrix& output_weights() const noexcept { return output_; }

  double gain() const noexcept { return gain_; }
  void set_gain(double g);

  std::size_t weight_count() const noexcept {
    return hidden_.values().size() + output_.values().size();
  }

  bool operator==(const Mlp&) const = default;

 private:
  MlpTopology topology_;
  Matrix hidden_;
  Matrix output_;
  double gain_ = 1.0;
};

/// One training pair, both sides already normalized to [0, 1].
struct Pattern {
  std::vector<double> input;
  std::vector<double> target;
};

/// Fixed-bound min-max scaling onto [0, 1].
class Normalizer {
 public:
  /// Throws InvalidNormalizer unless hi > lo and both are finite.
  Normalizer(double lo, double hi);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }

  /// (x - lo) / (hi - lo), clamped to [0, 1].
  double normalize(double x) const;
  /// lo + u * (hi - lo); not clamped.
  double denormalize(double u) const;

  bool operator==(const Normalizer&) const = default;

 private:
  double lo_;
  double hi_;
};

double normalize(double x, const Normalizer& nz);
double denormalize(double u, const Normalizer& nz);

struct TrainConfig {
  int epochs = 1000;
  double learning_rate = 0.2;
  std::uint64_t seed = 0;
  double init_half_width = 0.5;

  void validate() const;
};

/// 1 / (1 + exp(-g * y)).
double sigmoid_gain(double y, double g);

/// Activations of one forward pass.
struct ForwardState {
  std::vector<double> hidden;
  std::vector<double> output;
};

ForwardState forward_state(const Mlp& net, std::span<const double> input);
std::vector<double> forward(const Mlp& net, std::span<const double> input);

/// max_k |target_k - output_k|.
double pattern_error(std::span<const double> target, std::span<const double> output);

/// Gain for a pattern whose error is e_p: with Ap = 2 e_p, 1/Ap when Ap > 1
/// and 1 otherwise.
double adaptive_gain(double e_p);

/// Gradient of 0.5 * sum_k (t_k - o_k)^2 with respect to every weight,
/// evaluated at the network's current gain.
struct Gradients {
  Matrix hidden;
  Matrix output;
};

Gradients compute_gradients(const Mlp& net, const Pattern& p);

/// Summed squared error sum_k (t_k - o_k)^2 at the current weights and gain.
double squared_error(const Mlp& net, const Pattern& p);

struct StepResult {
  double squared_error = 0.0;  ///< measured before the gain change and the update
  double pattern_error = 0.0;  ///< e_p that selected the gain
  double applied_gain = 1.0;
};

/// One online update: forward pass, gain adaptation from the pattern error,
/// backward pass at the adapted gain, then w -= lr * dE/dw.
StepResult backprop_step(Mlp& net, const Pattern& p, double lr);

struct TraceEvent {
  int epoch = 0;
  std::size_t pattern_index = 0;
  StepResult step;
};

using TraceSink = std::function<void(const TraceEvent&)>;

struct TrainOutcome {
  Mlp net;
  std::vector<double> loss_history;  ///< mean squared error per epoch
};

/// Uniform weights in [-half_width, half_width] from a generator seeded
/// with `seed`. Gain is reset to 1.
void initialize_weights(Mlp& net, std::uint64_t seed, double half_width);

/// Initializes `net` from cfg.seed and runs cfg.epochs passes over the
/// patterns in stored order.
TrainOutcome train(Mlp net, std::span<const Pattern> patterns, const TrainConfig& cfg,
                   const TraceSink& trace = {});

/// Throws Dimension unless the pattern fits the topology.
void check_pattern(const MlpTopology& topology, const Pattern& p);

}  // namespace paddy
