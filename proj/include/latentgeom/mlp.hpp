#pragma once

#include <cstddef>
#include <vector>

#include "latentgeom/rng.hpp"
#include "latentgeom/vec.hpp"

namespace latentgeom::toygan {

using numerics::RngStream;

enum class Activation { ReLU, LeakyReLU, Tanh, Sigmoid, Identity };

const char* activation_name(Activation a);
Activation activation_from_name(const std::string& name);

inline constexpr double kLeakySlope = 0.2;

double activate(Activation a, double pre);
// Derivative with respect to the pre-activation; `post` is the already
// computed activation value (used by Tanh/Sigmoid).
double activate_grad(Activation a, double pre, double post);

struct Layer {
    int in = 0;
    int out = 0;
    std::vector<double> w; // row-major [out][in]
    std::vector<double> b; // [out]
    Activation act = Activation::Identity;
};

struct Mlp {
    std::vector<Layer> layers;

    int input_dim() const { return layers.front().in; }
    int output_dim() const { return layers.back().out; }
    std::size_t parameter_count() const;
    bool parameters_finite() const;

    // widths = {in, h1, ..., out}; one activation per layer.
    // input_rms rescales the first layer's He init so the pre-activation
    // variance does not depend on the input's coordinate scale (inputs with
    // per-coordinate RMS far from 1 would otherwise start the network in a
    // vanishing or exploding regime).
    static Mlp create(const std::vector<int>& widths, const std::vector<Activation>& acts,
                      RngStream& rng, double input_rms = 1.0);
};

// Per-layer pre- and post-activation values for a batch (row-major,
// batch x width).
struct ForwardCache {
    std::vector<std::vector<double>> pre;
    std::vector<std::vector<double>> post;
};

// X is row-major (batch x input_dim); returns the last post-activation in
// cache.post.back().
void forward(const Mlp& mlp, const std::vector<double>& x, int batch, ForwardCache& cache);

LatentVector forward_one(const Mlp& mlp, std::span<const double> x);

struct Gradients {
    std::vector<std::vector<double>> w;
    std::vector<std::vector<double>> b;

    static Gradients zeros_like(const Mlp& mlp);
    void clear();
};

// Backpropagation from a delta on the last layer. With
// `delta_is_preactivation` the delta is taken with respect to the last
// pre-activation (the fused sigmoid + cross-entropy path); otherwise with
// respect to the network output. Parameter gradients accumulate into
// `grads`; when `input_grad` is non-null the gradient with respect to x is
// written there (batch x input_dim).
void backward(const Mlp& mlp, const std::vector<double>& x, int batch, const ForwardCache& cache,
              std::vector<double> delta, bool delta_is_preactivation, Gradients& grads,
              std::vector<double>* input_grad);

struct RmsProp {
    double lr = 3e-4;
    double decay = 0.9;
    double eps = 1e-8;
    std::vector<std::vector<double>> cache_w;
    std::vector<std::vector<double>> cache_b;

    void init(const Mlp& mlp);
    void step(Mlp& mlp, const Gradients& grads);
};

} // namespace latentgeom::toygan
