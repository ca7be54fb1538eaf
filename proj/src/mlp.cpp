#include "latentgeom/mlp.hpp"

#include <cmath>
#include <string>

#include "latentgeom/errors.hpp"

namespace latentgeom::toygan {

const char* activation_name(Activation a) {
    switch (a) {
        case Activation::ReLU: return "relu";
        case Activation::LeakyReLU: return "leaky_relu";
        case Activation::Tanh: return "tanh";
        case Activation::Sigmoid: return "sigmoid";
        default: return "identity";
    }
}

Activation activation_from_name(const std::string& name) {
    if (name == "relu") return Activation::ReLU;
    if (name == "leaky_relu") return Activation::LeakyReLU;
    if (name == "tanh") return Activation::Tanh;
    if (name == "sigmoid") return Activation::Sigmoid;
    if (name == "identity") return Activation::Identity;
    throw InvalidConfig("unknown activation: " + name);
}

double activate(Activation a, double pre) {
    switch (a) {
        case Activation::ReLU: return pre > 0.0 ? pre : 0.0;
        case Activation::LeakyReLU: return pre > 0.0 ? pre : kLeakySlope * pre;
        case Activation::Tanh: return std::tanh(pre);
        case Activation::Sigmoid: return 1.0 / (1.0 + std::exp(-pre));
        default: return pre;
    }
}

double activate_grad(Activation a, double pre, double post) {
    switch (a) {
        case Activation::ReLU: return pre > 0.0 ? 1.0 : 0.0;
        case Activation::LeakyReLU: return pre > 0.0 ? 1.0 : kLeakySlope;
        case Activation::Tanh: return 1.0 - post * post;
        case Activation::Sigmoid: return post * (1.0 - post);
        default: return 1.0;
    }
}

std::size_t Mlp::parameter_count() const {
    std::size_t n = 0;
    for (const auto& l : layers) n += l.w.size() + l.b.size();
    return n;
}

bool Mlp::parameters_finite() const {
    for (const auto& l : layers) {
        for (double v : l.w)
            if (!std::isfinite(v)) return false;
        for (double v : l.b)
            if (!std::isfinite(v)) return false;
    }
    return true;
}

Mlp Mlp::create(const std::vector<int>& widths, const std::vector<Activation>& acts,
                RngStream& rng, double input_rms) {
    if (widths.size() < 2 || acts.size() != widths.size() - 1)
        throw InvalidConfig("Mlp::create: need one activation per layer");
    if (!(input_rms > 0.0)) throw InvalidConfig("Mlp::create: input_rms must be positive");
    Mlp mlp;
    for (std::size_t l = 0; l + 1 < widths.size(); ++l) {
        Layer layer;
        layer.in = widths[l];
        layer.out = widths[l + 1];
        layer.act = acts[l];
        // He initialization, corrected for the input scale on layer 0.
        const double s = std::sqrt(2.0 / double(layer.in)) / (l == 0 ? input_rms : 1.0);
        layer.w.resize(std::size_t(layer.out) * std::size_t(layer.in));
        for (auto& v : layer.w) v = s * rng.normal();
        layer.b.assign(std::size_t(layer.out), 0.0);
        mlp.layers.push_back(std::move(layer));
    }
    return mlp;
}

void forward(const Mlp& mlp, const std::vector<double>& x, int batch, ForwardCache& cache) {
    const std::size_t n_layers = mlp.layers.size();
    cache.pre.resize(n_layers);
    cache.post.resize(n_layers);
    const std::vector<double>* input = &x;
    for (std::size_t l = 0; l < n_layers; ++l) {
        const Layer& layer = mlp.layers[l];
        auto& pre = cache.pre[l];
        auto& post = cache.post[l];
        pre.assign(std::size_t(batch) * std::size_t(layer.out), 0.0);
        post.resize(pre.size());
        for (int s = 0; s < batch; ++s) {
            const double* row = input->data() + std::size_t(s) * std::size_t(layer.in);
            double* out = pre.data() + std::size_t(s) * std::size_t(layer.out);
            for (int o = 0; o < layer.out; ++o) {
                const double* wrow = layer.w.data() + std::size_t(o) * std::size_t(layer.in);
                double acc = layer.b[std::size_t(o)];
                for (int i = 0; i < layer.in; ++i) acc += wrow[i] * row[i];
                out[o] = acc;
            }
        }
        for (std::size_t i = 0; i < pre.size(); ++i) post[i] = activate(layer.act, pre[i]);
        input = &post;
    }
}

LatentVector forward_one(const Mlp& mlp, std::span<const double> x) {
    if (int(x.size()) != mlp.input_dim())
        throw DimensionMismatch("forward_one: input width mismatch");
    std::vector<double> cur(x.begin(), x.end());
    std::vector<double> next;
    for (const Layer& layer : mlp.layers) {
        next.resize(std::size_t(layer.out));
        for (int o = 0; o < layer.out; ++o) {
            const double* wrow = layer.w.data() + std::size_t(o) * std::size_t(layer.in);
            double acc = layer.b[std::size_t(o)];
            for (int i = 0; i < layer.in; ++i) acc += wrow[i] * cur[std::size_t(i)];
            next[std::size_t(o)] = activate(layer.act, acc);
        }
        cur.swap(next);
    }
    return cur;
}

Gradients Gradients::zeros_like(const Mlp& mlp) {
    Gradients g;
    for (const auto& l : mlp.layers) {
        g.w.emplace_back(l.w.size(), 0.0);
        g.b.emplace_back(l.b.size(), 0.0);
    }
    return g;
}

void Gradients::clear() {
    for (auto& v : w) std::fill(v.begin(), v.end(), 0.0);
    for (auto& v : b) std::fill(v.begin(), v.end(), 0.0);
}

void backward(const Mlp& mlp, const std::vector<double>& x, int batch, const ForwardCache& cache,
              std::vector<double> delta, bool delta_is_preactivation, Gradients& grads,
              std::vector<double>* input_grad) {
    const int n_layers = int(mlp.layers.size());
    std::vector<double> delta_prev;
    for (int l = n_layers - 1; l >= 0; --l) {
        const Layer& layer = mlp.layers[std::size_t(l)];
        const auto& pre = cache.pre[std::size_t(l)];
        const auto& post = cache.post[std::size_t(l)];

        // delta w.r.t. this layer's pre-activation
        if (!(l == n_layers - 1 && delta_is_preactivation))
            for (std::size_t i = 0; i < delta.size(); ++i)
                delta[i] *= activate_grad(layer.act, pre[i], post[i]);

        const std::vector<double>& below =
            l == 0 ? x : cache.post[std::size_t(l - 1)];
        auto& gw = grads.w[std::size_t(l)];
        auto& gb = grads.b[std::size_t(l)];
        for (int s = 0; s < batch; ++s) {
            const double* drow = delta.data() + std::size_t(s) * std::size_t(layer.out);
            const double* xrow = below.data() + std::size_t(s) * std::size_t(layer.in);
            for (int o = 0; o < layer.out; ++o) {
                const double d = drow[o];
                if (d == 0.0) continue;
                double* grow = gw.data() + std::size_t(o) * std::size_t(layer.in);
                for (int i = 0; i < layer.in; ++i) grow[i] += d * xrow[i];
                gb[std::size_t(o)] += d;
            }
        }

        const bool need_below = l > 0 || input_grad != nullptr;
        if (!need_below) break;
        delta_prev.assign(std::size_t(batch) * std::size_t(layer.in), 0.0);
        for (int s = 0; s < batch; ++s) {
            const double* drow = delta.data() + std::size_t(s) * std::size_t(layer.out);
            double* prow = delta_prev.data() + std::size_t(s) * std::size_t(layer.in);
            for (int o = 0; o < layer.out; ++o) {
                const double d = drow[o];
                if (d == 0.0) continue;
                const double* wrow = layer.w.data() + std::size_t(o) * std::size_t(layer.in);
                for (int i = 0; i < layer.in; ++i) prow[i] += d * wrow[i];
            }
        }
        delta.swap(delta_prev);
    }
    if (input_grad) *input_grad = std::move(delta);
}

void RmsProp::init(const Mlp& mlp) {
    cache_w.clear();
    cache_b.clear();
    for (const auto& l : mlp.layers) {
        cache_w.emplace_back(l.w.size(), 0.0);
        cache_b.emplace_back(l.b.size(), 0.0);
    }
}

void RmsProp::step(Mlp& mlp, const Gradients& grads) {
    for (std::size_t l = 0; l < mlp.layers.size(); ++l) {
        auto& layer = mlp.layers[l];
        auto& cw = cache_w[l];
        auto& cb = cache_b[l];
        for (std::size_t i = 0; i < layer.w.size(); ++i) {
            const double g = grads.w[l][i];
            cw[i] = decay * cw[i] + (1.0 - decay) * g * g;
            layer.w[i] -= lr * g / (std::sqrt(cw[i]) + eps);
        }
        for (std::size_t i = 0; i < layer.b.size(); ++i) {
            const double g = grads.b[l][i];
            cb[i] = decay * cb[i] + (1.0 - decay) * g * g;
            layer.b[i] -= lr * g / (std::sqrt(cb[i]) + eps);
        }
    }
}

} // namespace latentgeom::toygan
