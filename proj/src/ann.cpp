#include "paddy/ann.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "paddy/error.hpp"

namespace paddy {

void MlpTopology::validate() const {
  require(n_inputs >= 1 && n_hidden >= 1 && n_outputs >= 1, ErrorCode::InvalidArgument,
          "topology layers must each have at least one node");
}

Mlp::Mlp(const MlpTopology& topology)
    : topology_(topology),
      hidden_(topology.n_hidden, topology.n_inputs + 1),
      output_(topology.n_outputs, topology.n_hidden + 1) {
  topology_.validate();
}

Mlp::Mlp(const MlpTopology& topology, Matrix hidden, Matrix output, double gain)
    : topology_(topology), hidden_(std::move(hidden)), output_(std::move(output)) {
  topology_.validate();
  require(hidden_.rows() == topology.n_hidden && hidden_.cols() == topology.n_inputs + 1,
          ErrorCode::Dimension, "hidden weight matrix does not match topology");
  require(output_.rows() == topology.n_outputs && output_.cols() == topology.n_hidden + 1,
          ErrorCode::Dimension, "output weight matrix does not match topology");
  set_gain(gain);
}

void Mlp::set_gain(double g) {
  require(std::isfinite(g) && g > 0.0, ErrorCode::InvalidArgument, "gain must be positive");
  gain_ = g;
}

Normalizer::Normalizer(double lo, double hi) : lo_(lo), hi_(hi) {
  require(std::isfinite(lo) && std::isfinite(hi) && hi > lo, ErrorCode::InvalidNormalizer,
          "normalizer requires finite bounds with hi > lo (got lo=" + std::to_string(lo) +
              ", hi=" + std::to_string(hi) + ")");
}

double Normalizer::normalize(double x) const {
  return std::clamp((x - lo_) / (hi_ - lo_), 0.0, 1.0);
}

double Normalizer::denormalize(double u) const { return lo_ + u * (hi_ - lo_); }

double normalize(double x, const Normalizer& nz) { return nz.normalize(x); }
double denormalize(double u, const Normalizer& nz) { return nz.denormalize(u); }

void TrainConfig::validate() const {
  require(epochs >= 1, ErrorCode::InvalidArgument, "epochs must be >= 1");
  require(std::isfinite(learning_rate) && learning_rate > 0.0, ErrorCode::InvalidArgument,
          "learning rate must be positive");
  require(std::isfinite(init_half_width) && init_half_width > 0.0,
          ErrorCode::InvalidArgument, "init half width must be positive");
}

double sigmoid_gain(double y, double g) {
  require(std::isfinite(y), ErrorCode::InvalidArgument, "sigmoid input must be finite");
  require(std::isfinite(g) && g > 0.0, ErrorCode::InvalidArgument, "gain must be positive");
  return 1.0 / (1.0 + std::exp(-g * y));
}

namespace {

// Bias-augmented weighted sum of one row against `in`.
double weighted_sum(std::span<const double> w, std::span<const double> in) {
  double y = w[0];
  for (std::size_t i = 0; i < in.size(); ++i) y += w[i + 1] * in[i];
  return y;
}

}  // namespace

ForwardState forward_state(const Mlp& net, std::span<const double> input) {
  const auto& topo = net.topology();
  require(input.size() == topo.n_inputs, ErrorCode::Dimension,
          "input length " + std::to_string(input.size()) + " != n_inputs " +
              std::to_string(topo.n_inputs));
  const double g = net.gain();
  ForwardState s;
  s.hidden.resize(topo.n_hidden);
  for (std::size_t j = 0; j < topo.n_hidden; ++j)
    s.hidden[j] = sigmoid_gain(weighted_sum(net.hidden_weights().row(j), input), g);
  s.output.resize(topo.n_outputs);
  for (std::size_t k = 0; k < topo.n_outputs; ++k)
    s.output[k] = sigmoid_gain(weighted_sum(net.output_weights().row(k), s.hidden), g);
  return s;
}

std::vector<double> forward(const Mlp& net, std::span<const double> input) {
  return forward_state(net, input).output;
}

double pattern_error(std::span<const double> target, std::span<const double> output) {
  require(target.size() == output.size(), ErrorCode::Dimension,
          "target and output lengths differ");
  double e = 0.0;
  for (std::size_t k = 0; k < target.size(); ++k) e = std::max(e, std::abs(target[k] - output[k]));
  return e;
}

double adaptive_gain(double e_p) {
  require(std::isfinite(e_p) && e_p >= 0.0, ErrorCode::InvalidArgument,
          "pattern error must be non-negative");
  const double ap = 2.0 * e_p;
  return ap > 1.0 ? 1.0 / ap : 1.0;
}

void check_pattern(const MlpTopology& topology, const Pattern& p) {
  require(p.input.size() == topology.n_inputs, ErrorCode::Dimension,
          "pattern input length " + std::to_string(p.input.size()) + " != n_inputs " +
              std::to_string(topology.n_inputs));
  require(p.target.size() == topology.n_outputs, ErrorCode::Dimension,
          "pattern target length " + std::to_string(p.target.size()) + " != n_outputs " +
              std::to_string(topology.n_outputs));
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  require(std::all_of(p.input.begin(), p.input.end(), in_unit) &&
              std::all_of(p.target.begin(), p.target.end(), in_unit),
          ErrorCode::InvalidArgument, "pattern components must lie in [0, 1]");
}

namespace {

Gradients gradients_from(const Mlp& net, const Pattern& p, const ForwardState& s) {
  const auto& topo = net.topology();
  const double g = net.gain();
  Gradients grad{Matrix(topo.n_hidden, topo.n_inputs + 1),
                 Matrix(topo.n_outputs, topo.n_hidden + 1)};

  // dE/dy at each output node, with dsigma/dy = g * o * (1 - o).
  std::vector<double> delta_out(topo.n_outputs);
  for (std::size_t k = 0; k < topo.n_outputs; ++k) {
    const double o = s.output[k];
    delta_out[k] = (o - p.target[k]) * g * o * (1.0 - o);
    grad.output(k, 0) = delta_out[k];
    for (std::size_t j = 0; j < topo.n_hidden; ++j) grad.output(k, j + 1) = delta_out[k] * s.hidden[j];
  }

  for (std::size_t j = 0; j < topo.n_hidden; ++j) {
    double back = 0.0;
    for (std::size_t k = 0; k < topo.n_outputs; ++k) back += delta_out[k] * net.output_weights()(k, j + 1);
    const double h = s.hidden[j];
    const double delta = back * g * h * (1.0 - h);
    grad.hidden(j, 0) = delta;
    for (std::size_t i = 0; i < topo.n_inputs; ++i) grad.hidden(j, i + 1) = delta * p.input[i];
  }
  return grad;
}

double summed_squares(std::span<const double> target, std::span<const double> output) {
  double sse = 0.0;
  for (std::size_t k = 0; k < target.size(); ++k) {
    const double d = target[k] - output[k];
    sse += d * d;
  }
  return sse;
}

}  // namespace

Gradients compute_gradients(const Mlp& net, const Pattern& p) {
  check_pattern(net.topology(), p);
  return gradients_from(net, p, forward_state(net, p.input));
}

double squared_error(const Mlp& net, const Pattern& p) {
  check_pattern(net.topology(), p);
  return summed_squares(p.target, forward(net, p.input));
}

StepResult backprop_step(Mlp& net, const Pattern& p, double lr) {
  check_pattern(net.topology(), p);
  require(std::isfinite(lr) && lr >= 0.0, ErrorCode::InvalidArgument,
          "learning rate must be non-negative");

  ForwardState s = forward_state(net, p.input);
  StepResult r;
  r.squared_error = summed_squares(p.target, s.output);
  r.pattern_error = pattern_error(p.target, s.output);
  r.applied_gain = adaptive_gain(r.pattern_error);

  if (r.applied_gain != net.gain()) {
    net.set_gain(r.applied_gain);
    s = forward_state(net, p.input);
  }
  if (lr == 0.0) return r;

  const Gradients grad = gradients_from(net, p, s);
  auto apply = [lr](std::span<double> w, std::span<const double> dw) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] -= lr * dw[i];
  };
  apply(net.hidden_weights().values(), grad.hidden.values());
  apply(net.output_weights().values(), grad.output.values());
  return r;
}

void initialize_weights(Mlp& net, std::uint64_t seed, double half_width) {
  require(std::isfinite(half_width) && half_width > 0.0, ErrorCode::InvalidArgument,
          "init half width must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-half_width, half_width);
  for (double& w : net.hidden_weights().values()) w = dist(rng);
  for (double& w : net.output_weights().values()) w = dist(rng);
  net.set_gain(1.0);
}

TrainOutcome train(Mlp net, std::span<const Pattern> patterns, const TrainConfig& cfg,
                   const TraceSink& trace) {
  cfg.validate();
  require(!patterns.empty(), ErrorCode::InvalidArgument, "training requires at least one pattern");
  for (const auto& p : patterns) check_pattern(net.topology(), p);

  initialize_weights(net, cfg.seed, cfg.init_half_width);
  TrainOutcome out{std::move(net), {}};
  out.loss_history.reserve(static_cast<std::size_t>(cfg.epochs));

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    double total = 0.0;
    for (std::size_t i = 0; i < patterns.size(); ++i) {
      const StepResult r = backprop_step(out.net, patterns[i], cfg.learning_rate);
      total += r.squared_error;
      if (trace) trace(TraceEvent{epoch, i, r});
    }
    out.loss_history.push_back(total / static_cast<double>(patterns.size()));
  }
  return out;
}

}  // namespace paddy
